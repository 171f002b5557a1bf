use std::f64::consts::SQRT_2;

use crate::capacity::Capacity;
use crate::error::Result;
use crate::graph::{ContractibleGraph, Cut};
use crate::rng::RandomSource;

use super::{Outcome, RunOptions, RunStats};

/// Graphs this small are solved by exhaustive search.
pub const BASE_CASE: usize = 6;

struct Search<'a, C> {
    rng: &'a mut RandomSource,
    target: Option<&'a [bool]>,
    stats: RunStats,
    best: Option<Cut<C>>,
}

pub(crate) fn run<C: Capacity>(
    g: &ContractibleGraph<C>,
    rng: &mut RandomSource,
    opts: &RunOptions<'_>,
) -> Result<Outcome<C>> {
    let mut search = Search { rng, target: opts.target, stats: RunStats::default(), best: None };
    search.recurse(g.compacted(), true, 0)?;
    Ok(Outcome { cut: search.best.expect("base case always yields a cut"), stats: search.stats })
}

impl<C: Capacity> Search<'_, C> {
    fn recurse(&mut self, g: ContractibleGraph<C>, alive: bool, depth: usize) -> Result<()> {
        let n = g.n_current();
        if n <= BASE_CASE {
            self.stats.leaves += 1;
            if self.target.is_some() && alive {
                self.stats.survival_leaves += 1;
            }
            let cut = exhaustive(&g);
            if self.best.as_ref().is_none_or(|b| cut.value() < b.value()) {
                self.best = Some(cut);
            }
            return Ok(());
        }
        let size = (n as f64 / SQRT_2 + 1.0).ceil() as usize;
        for _ in 0..2 {
            let mut h = g.clone();
            let mut child_alive = alive;
            while h.n_current() > size {
                let (a, b) = h.sample_pair(self.rng)?;
                if let Some(t) = self.target {
                    child_alive &= t[h.representative(a)] == t[h.representative(b)];
                }
                let _ = h.contract(a, b)?;
                self.stats.contractions += 1;
            }
            self.stats.recursive_calls += 1;
            if depth == 0 {
                self.stats.root_children += 1;
                if self.target.is_some() && child_alive {
                    self.stats.top_level_surviving_children += 1;
                }
            }
            self.recurse(h.compacted(), child_alive, depth + 1)?;
        }
        Ok(())
    }
}

/// Minimum over every bipartition of the live supernodes. Ties go to the
/// first side found, enumerating subsets that contain the first live node.
fn exhaustive<C: Capacity>(g: &ContractibleGraph<C>) -> Cut<C> {
    let live = g.live();
    let k = live.len();
    let mut best: Option<(C, u32)> = None;
    for mask in 0..(1u32 << (k - 1)) - 1 {
        let inside = |i: usize| i == 0 || mask & (1 << (i - 1)) != 0;
        let mut value = C::ZERO;
        for i in 0..k {
            for j in 0..k {
                if inside(i) && !inside(j) {
                    value = value + g.capacity(live[i], live[j]);
                }
            }
        }
        if best.is_none_or(|(v, _)| value < v) {
            best = Some((value, mask));
        }
    }
    let (value, mask) = best.expect("at least one bipartition");
    let side_slots: Vec<usize> = (0..k)
        .filter(|&i| i == 0 || mask & (1 << (i - 1)) != 0)
        .map(|i| live[i])
        .collect();
    let in_side = g.membership().into_iter().map(|s| side_slots.contains(&s)).collect();
    Cut::new_unchecked(in_side, value)
}
