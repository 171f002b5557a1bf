//! Capacity-weighted multigraph with undoable edge contraction.
//!
//! Capacities live in a dense symmetric matrix indexed by supernode slot, so
//! contracting a pair and undoing that contraction are both linear in the
//! number of live supernodes. Parallel edges are merged by summing capacity
//! and self-loops are dropped the moment they form.

mod cut;
mod format;
mod generate;

use std::sync::Arc;

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::rng::RandomSource;

pub use cut::{cut_value, Cut};
pub use format::{parse_graph, serialize_graph};
pub use generate::{generate, Generated, GeneratorKind};

/// Largest vertex count accepted by [`build_graph`].
pub const DEFAULT_DENSE_LIMIT: usize = 4096;

const DEAD: usize = usize::MAX;

#[derive(Debug)]
struct Original<C> {
    n: usize,
    /// Merged positive-capacity edges with `u < v`, sorted.
    edges: Vec<(usize, usize, C)>,
}

#[derive(Debug, Clone)]
pub struct ContractibleGraph<C = u64> {
    original: Arc<Original<C>>,
    dim: usize,
    cap: Vec<C>,
    degree: Vec<C>,
    live: Vec<usize>,
    position: Vec<usize>,
    total: C,
    /// Slot that each original vertex occupied at the last compaction.
    base_slot: Vec<usize>,
    /// Some original vertex contained in each slot.
    representative: Vec<usize>,
    /// `(into, from)` pairs applied since the last compaction, oldest first.
    merges: Vec<(usize, usize)>,
}

/// Token returned by [`ContractibleGraph::contract`]; pass it back to
/// [`ContractibleGraph::undo`] in last-in, first-out order.
#[derive(Debug, Clone, Copy)]
#[must_use]
pub struct Contraction<C> {
    into: usize,
    from: usize,
    live_index: usize,
    removed: C,
}

impl<C> Contraction<C> {
    pub fn into(&self) -> usize {
        self.into
    }

    pub fn from(&self) -> usize {
        self.from
    }
}

pub fn build_graph<C: Capacity>(n: usize, edges: &[(usize, usize, C)]) -> Result<ContractibleGraph<C>> {
    ContractibleGraph::with_limit(n, edges, DEFAULT_DENSE_LIMIT)
}

impl<C: Capacity> ContractibleGraph<C> {
    pub fn new(n: usize, edges: &[(usize, usize, C)]) -> Result<Self> {
        Self::with_limit(n, edges, DEFAULT_DENSE_LIMIT)
    }

    /// Builds a graph, merging parallel edges and dropping zero capacities.
    /// `limit` bounds `n` since memory is quadratic in it.
    pub fn with_limit(n: usize, edges: &[(usize, usize, C)], limit: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        if n > limit {
            return Err(Error::TooManyVertices { n, limit });
        }
        let mut cap = vec![C::ZERO; n * n];
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if w.is_negative() {
                return Err(Error::NegativeCapacity { u, v, capacity: w.to_string() });
            }
            cap[u * n + v] = cap[u * n + v] + w;
            cap[v * n + u] = cap[u * n + v];
        }

        let mut merged = Vec::new();
        let mut degree = vec![C::ZERO; n];
        let mut total = C::ZERO;
        for u in 0..n {
            for v in 0..n {
                let w = cap[u * n + v];
                if u != v && w.is_positive() {
                    degree[u] = degree[u] + w;
                    if u < v {
                        total = total + w;
                        merged.push((u, v, w));
                    }
                }
            }
        }

        Ok(Self {
            original: Arc::new(Original { n, edges: merged }),
            dim: n,
            cap,
            degree,
            live: (0..n).collect(),
            position: (0..n).collect(),
            total,
            base_slot: (0..n).collect(),
            representative: (0..n).collect(),
            merges: Vec::new(),
        })
    }

    pub fn n_original(&self) -> usize {
        self.original.n
    }

    pub fn n_current(&self) -> usize {
        self.live.len()
    }

    /// Total capacity `U` over unordered live pairs.
    pub fn total_capacity(&self) -> C {
        self.total
    }

    /// Live supernode ids.
    pub fn live(&self) -> &[usize] {
        &self.live
    }

    pub fn is_live(&self, a: usize) -> bool {
        a < self.dim && self.position[a] != DEAD
    }

    /// Capacity between two supernodes; zero for `a == b`.
    pub fn capacity(&self, a: usize, b: usize) -> C {
        if a == b {
            C::ZERO
        } else {
            self.cap[a * self.dim + b]
        }
    }

    /// Weighted degree of a live supernode.
    pub fn degree(&self, a: usize) -> C {
        self.degree[a]
    }

    /// An original vertex belonging to supernode `a`.
    /// Number of slots in the capacity matrix, live or not.
    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub fn representative(&self, a: usize) -> usize {
        self.representative[a]
    }

    /// Positive-capacity edges of the uncontracted graph, `u < v`, sorted.
    pub fn original_edges(&self) -> &[(usize, usize, C)] {
        &self.original.edges
    }

    /// Draws a live pair with probability `u(a, b) / U`.
    ///
    /// A single draw in `[0, 2U)` first selects an endpoint in proportion to
    /// its weighted degree, then walks that endpoint's row. Each unordered
    /// pair is reachable from both endpoints, which gives the exact
    /// proportionality in `O(n_current)` time.
    pub fn sample_pair(&self, rng: &mut RandomSource) -> Result<(usize, usize)> {
        if !self.total.is_positive() {
            return Err(Error::NoContractibleEdge);
        }
        let mut r = C::draw_below(self.total + self.total, rng);
        let mut fallback = None;
        for &a in &self.live {
            let d = self.degree[a];
            if r < d {
                let row = &self.cap[a * self.dim..(a + 1) * self.dim];
                for &b in &self.live {
                    let w = if a == b { C::ZERO } else { row[b] };
                    if !w.is_positive() {
                        continue;
                    }
                    if r < w {
                        return Ok((a, b));
                    }
                    r = r - w;
                    fallback = Some((a, b));
                }
                break;
            }
            r = r - d;
        }
        // Only reachable through floating-point rounding.
        fallback
            .or_else(|| self.any_positive_pair())
            .ok_or(Error::NoContractibleEdge)
    }

    fn any_positive_pair(&self) -> Option<(usize, usize)> {
        self.live.iter().find_map(|&a| {
            self.live
                .iter()
                .find(|&&b| b != a && self.capacity(a, b).is_positive())
                .map(|&b| (a, b))
        })
    }

    /// Merges `from` into `into` in place. `into` keeps its id.
    pub fn contract(&mut self, into: usize, from: usize) -> Result<Contraction<C>> {
        if into == from || !self.is_live(into) || !self.is_live(from) {
            return Err(Error::InvalidPair(into, from));
        }
        if self.live.len() <= 2 {
            return Err(Error::LastPair);
        }
        let dim = self.dim;
        let removed = self.cap[into * dim + from];
        for &c in &self.live {
            if c == into || c == from {
                continue;
            }
            let merged = self.cap[into * dim + c] + self.cap[from * dim + c];
            self.cap[into * dim + c] = merged;
            self.cap[c * dim + into] = merged;
        }
        self.degree[into] = (self.degree[into] + self.degree[from]) - (removed + removed);
        self.total = self.total - removed;

        let live_index = self.position[from];
        self.live.swap_remove(live_index);
        if let Some(&moved) = self.live.get(live_index) {
            self.position[moved] = live_index;
        }
        self.position[from] = DEAD;
        self.merges.push((into, from));

        Ok(Contraction { into, from, live_index, removed })
    }

    /// Reverts the most recent contraction.
    pub fn undo(&mut self, c: Contraction<C>) {
        let Contraction { into, from, live_index, removed } = c;
        debug_assert_eq!(self.merges.last(), Some(&(into, from)));
        self.merges.pop();

        self.live.push(from);
        let last = self.live.len() - 1;
        self.live.swap(live_index, last);
        self.position[self.live[last]] = last;
        self.position[from] = live_index;

        let dim = self.dim;
        for &c in &self.live {
            if c == into || c == from {
                continue;
            }
            let restored = self.cap[into * dim + c] - self.cap[from * dim + c];
            self.cap[into * dim + c] = restored;
            self.cap[c * dim + into] = restored;
        }
        self.degree[into] = (self.degree[into] + removed + removed) - self.degree[from];
        self.total = self.total + removed;
    }

    /// Non-mutating contraction.
    pub fn contracted(&self, into: usize, from: usize) -> Result<Self> {
        let mut g = self.clone();
        let _ = g.contract(into, from)?;
        Ok(g)
    }

    /// Supernode slot holding each original vertex.
    pub fn membership(&self) -> Vec<usize> {
        let mut slot_of: Vec<usize> = (0..self.dim).collect();
        for &(into, from) in self.merges.iter().rev() {
            slot_of[from] = slot_of[into];
        }
        self.base_slot.iter().map(|&s| slot_of[s]).collect()
    }

    /// Original vertices contained in supernode `a`, ascending.
    pub fn members(&self, a: usize) -> Vec<usize> {
        self.membership()
            .into_iter()
            .enumerate()
            .filter_map(|(v, s)| (s == a).then_some(v))
            .collect()
    }

    /// Copy whose matrix covers only the live supernodes, relabeled
    /// `0..n_current` in increasing id order. Membership is preserved.
    pub fn compacted(&self) -> Self {
        let mut order = self.live.clone();
        order.sort_unstable();
        let k = order.len();
        let mut rank = vec![DEAD; self.dim];
        for (i, &a) in order.iter().enumerate() {
            rank[a] = i;
        }
        let mut cap = vec![C::ZERO; k * k];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                if i != j {
                    cap[i * k + j] = self.cap[a * self.dim + b];
                }
            }
        }
        Self {
            original: Arc::clone(&self.original),
            dim: k,
            cap,
            degree: order.iter().map(|&a| self.degree[a]).collect(),
            live: (0..k).collect(),
            position: (0..k).collect(),
            total: self.total,
            base_slot: self.membership().into_iter().map(|s| rank[s]).collect(),
            representative: order.iter().map(|&a| self.representative[a]).collect(),
            merges: Vec::new(),
        }
    }

    /// The cut left once two supernodes remain, valued on the original graph.
    pub fn cut_of_supernode(&self) -> Result<Cut<C>> {
        if self.live.len() != 2 {
            return Err(Error::NotFullyContracted(self.live.len()));
        }
        let slot = self.live[0];
        let in_side: Vec<bool> = self.membership().into_iter().map(|s| s == slot).collect();
        Cut::from_mask(self, in_side)
    }

    /// Same as [`Self::cut_of_supernode`] but valued by the remaining pair
    /// capacity, which skips the pass over the original edges.
    pub(crate) fn leaf_cut(&self) -> Cut<C> {
        debug_assert_eq!(self.live.len(), 2);
        let slot = self.live[0];
        let in_side = self.membership().into_iter().map(|s| s == slot).collect();
        Cut::new_unchecked(in_side, self.capacity(self.live[0], self.live[1]))
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.live.first() else {
            return true;
        };
        let mut seen = vec![false; self.dim];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(a) = stack.pop() {
            for &b in &self.live {
                if !seen[b] && self.capacity(a, b).is_positive() {
                    seen[b] = true;
                    reached += 1;
                    stack.push(b);
                }
            }
        }
        reached == self.live.len()
    }

    /// Live positive pairs relabeled by live rank, `u < v`, sorted.
    pub fn canonical_edges(&self) -> Vec<(usize, usize, C)> {
        let mut order = self.live.clone();
        order.sort_unstable();
        let mut edges = Vec::new();
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate().skip(i + 1) {
                let w = self.capacity(a, b);
                if w.is_positive() {
                    edges.push((i, j, w));
                }
            }
        }
        edges
    }
}

impl<C: Capacity> PartialEq for ContractibleGraph<C> {
    fn eq(&self, other: &Self) -> bool {
        self.n_current() == other.n_current() && self.canonical_edges() == other.canonical_edges()
    }
}
