//! Depth-first walk of a contraction recursion tree.
//!
//! All calls share one working graph: a child contracts a sampled pair in
//! place and the parent undoes it once the child's subtree is finished. A
//! call therefore costs time linear in its size and the explicit stack is
//! never deeper than the vertex count.
//!
//! Once a call is left with at most half of its matrix's slots live, it
//! works on a compacted copy for its subtree. Row scans then stay dense and
//! the working set shrinks with the graph, at a cost per call of the same
//! order as the calls that created it.

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{Contraction, ContractibleGraph, Cut};
use crate::rng::RandomSource;

use super::{p_n, BranchingPolicy, Outcome, RunOptions, RunStats};

/// How a node decides on its number of children.
#[derive(Debug, Clone, Copy)]
pub(crate) enum ChildRule {
    /// Draw the count from the policy before the first child.
    Upfront(BranchingPolicy),
    /// After each child, stop with probability `p_n`, else call again on the
    /// same graph.
    CoinFlip,
}

enum Budget {
    Count(usize),
    Flip { p: f64, stop: bool },
}

/// Sizes below this never compact; their matrices already fit in cache.
const COMPACT_MIN: usize = 64;

struct Frame<C> {
    budget: Budget,
    children: usize,
    pending: Option<(Contraction<C>, bool)>,
    /// Whether this call pushed its own compacted layer.
    layered: bool,
}

struct Walk<'a, C> {
    /// Working graphs; each call contracts the last one.
    layers: Vec<ContractibleGraph<C>>,
    rng: &'a mut RandomSource,
    target: Option<&'a [bool]>,
    repeat_cap: usize,
    crossed: usize,
    stats: RunStats,
    best: Option<Cut<C>>,
}

pub(crate) fn run<C: Capacity>(
    g: &ContractibleGraph<C>,
    rng: &mut RandomSource,
    rule: ChildRule,
    opts: &RunOptions<'_>,
) -> Result<Outcome<C>> {
    let mut walk = Walk {
        layers: vec![g.clone()],
        rng,
        target: opts.target,
        repeat_cap: opts.repeat_cap,
        crossed: 0,
        stats: RunStats::default(),
        best: None,
    };
    walk.descend(rule)?;
    let cut = walk.best.expect("every tree has a leaf");
    Ok(Outcome { cut, stats: walk.stats })
}

impl<C: Capacity> Walk<'_, C> {
    fn graph(&self) -> &ContractibleGraph<C> {
        self.layers.last().expect("base layer")
    }

    fn graph_mut(&mut self) -> &mut ContractibleGraph<C> {
        self.layers.last_mut().expect("base layer")
    }

    fn frame(&mut self, rule: ChildRule) -> Result<Frame<C>> {
        let n = self.graph().n_current();
        let budget = match rule {
            ChildRule::Upfront(policy) => Budget::Count(policy.draw(n, self.rng, self.repeat_cap)?),
            ChildRule::CoinFlip => Budget::Flip { p: p_n(n)?, stop: false },
        };
        let layered = n >= COMPACT_MIN && 2 * n <= self.graph().dim();
        if layered {
            let compact = self.graph().compacted();
            self.layers.push(compact);
        }
        Ok(Frame { budget, children: 0, pending: None, layered })
    }

    fn descend(&mut self, rule: ChildRule) -> Result<()> {
        if self.graph().n_current() == 2 {
            self.leaf();
            return Ok(());
        }
        let mut stack = vec![self.frame(rule)?];
        while let Some(top) = stack.last_mut() {
            if let Some((c, crossed)) = top.pending.take() {
                self.graph_mut().undo(c);
                self.crossed -= usize::from(crossed);
            }
            let another = match &mut top.budget {
                Budget::Count(k) => top.children < *k,
                Budget::Flip { p, stop } => {
                    if top.children > 0 && *stop {
                        false
                    } else {
                        if top.children >= self.repeat_cap {
                            return Err(Error::RepeatCapExceeded(self.repeat_cap));
                        }
                        if top.children > 0 {
                            // re-invocation on the same graph
                            self.stats.recursive_calls += 1;
                        }
                        *stop = self.rng.uniform() <= *p;
                        true
                    }
                }
            };
            if !another {
                if top.layered {
                    self.layers.pop();
                }
                stack.pop();
                continue;
            }
            top.children += 1;

            let graph = self.layers.last_mut().expect("base layer");
            let (a, b) = graph.sample_pair(self.rng)?;
            let crossed = self
                .target
                .is_some_and(|t| t[graph.representative(a)] != t[graph.representative(b)]);
            let c = graph.contract(a, b)?;
            self.crossed += usize::from(crossed);
            top.pending = Some((c, crossed));
            self.stats.contractions += 1;
            self.stats.recursive_calls += 1;
            if stack.len() == 1 {
                self.stats.root_children += 1;
                if self.target.is_some() && self.crossed == 0 {
                    self.stats.top_level_surviving_children += 1;
                }
            }

            if self.graph().n_current() == 2 {
                self.leaf();
            } else {
                let child = self.frame(rule)?;
                stack.push(child);
            }
        }
        Ok(())
    }

    fn leaf(&mut self) {
        self.stats.leaves += 1;
        if self.target.is_some() && self.crossed == 0 {
            self.stats.survival_leaves += 1;
        }
        let graph = self.graph();
        let live = graph.live();
        let value = graph.capacity(live[0], live[1]);
        if self.best.as_ref().is_none_or(|b| value < b.value()) {
            self.best = Some(graph.leaf_cut());
        }
    }
}
