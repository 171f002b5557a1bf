//! Contraction-based minimum cut algorithms.
//!
//! Every randomized algorithm here can track a fixed target cut. Tracking is
//! independent of which cut gets returned: [`RunStats::survival_leaves`]
//! counts the leaves whose partition is the target, even when a co-minimum
//! cut from another branch wins the final comparison.

mod engine;
mod karger_stein;
mod policy;

use std::fmt;
use std::str::FromStr;

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{ContractibleGraph, Cut};
use crate::oracle;
use crate::rng::RandomSource;

use engine::ChildRule;
pub use karger_stein::BASE_CASE as KARGER_STEIN_BASE_CASE;
pub use policy::BranchingPolicy;

/// Default cap on the child count of a single node.
pub const DEFAULT_REPEAT_CAP: usize = 10_000;

/// Per-contraction survival bound `1 - 2/n`.
pub fn p_n(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    Ok(1.0 - 2.0 / n as f64)
}

/// Counters for one recursion tree.
///
/// `recursive_calls` excludes the top-level invocation, so a two-vertex input
/// reports one leaf and zero calls.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunStats {
    pub recursive_calls: u64,
    pub contractions: u64,
    pub leaves: u64,
    /// Leaves whose partition equals the tracked cut.
    pub survival_leaves: u64,
    /// Children of the root in which the tracked cut survived that child's
    /// first contraction (for Karger–Stein, its whole contraction chain).
    pub top_level_surviving_children: u64,
    /// Children of the root.
    pub root_children: u64,
}

impl RunStats {
    pub fn survived(&self) -> bool {
        self.survival_leaves > 0
    }

    fn absorb(&mut self, other: &RunStats) {
        self.recursive_calls += other.recursive_calls;
        self.contractions += other.contractions;
        self.leaves += other.leaves;
        self.survival_leaves += other.survival_leaves;
        self.top_level_surviving_children += other.top_level_surviving_children;
        self.root_children += other.root_children;
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions<'a> {
    /// Side membership of a cut to track, indexed by original vertex.
    pub target: Option<&'a [bool]>,
    pub repeat_cap: usize,
}

impl Default for RunOptions<'_> {
    fn default() -> Self {
        Self { target: None, repeat_cap: DEFAULT_REPEAT_CAP }
    }
}

impl<'a> RunOptions<'a> {
    pub fn tracking<C: Capacity>(target: &'a Cut<C>) -> Self {
        Self { target: Some(target.mask()), ..Self::default() }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome<C = u64> {
    pub cut: Cut<C>,
    pub stats: RunStats,
}

fn check_target<C: Capacity>(g: &ContractibleGraph<C>, opts: &RunOptions<'_>) -> Result<()> {
    match opts.target {
        Some(t) if t.len() != g.n_original() => Err(Error::InvalidArgument(format!(
            "target mask has {} entries for {} vertices",
            t.len(),
            g.n_original()
        ))),
        _ => Ok(()),
    }
}

fn require_connected<C: Capacity>(g: &ContractibleGraph<C>) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Contracts sampled pairs down to two supernodes: `n - 2` contractions.
/// Fails with [`Error::NoContractibleEdge`] if the remainder runs out of edges.
pub fn karger_single_run<C: Capacity>(
    g: &ContractibleGraph<C>,
    rng: &mut RandomSource,
    opts: &RunOptions<'_>,
) -> Result<Outcome<C>> {
    check_target(g, opts)?;
    engine::run(g, rng, ChildRule::Upfront(BranchingPolicy::Fixed(1)), opts)
}

/// Best of `repetitions` independent single runs on one stream.
pub fn karger_repeated<C: Capacity>(
    g: &ContractibleGraph<C>,
    repetitions: usize,
    rng: &mut RandomSource,
    opts: &RunOptions<'_>,
) -> Result<Outcome<C>> {
    repeat(repetitions, |rng| karger_single_run(g, rng, opts), rng)
}

fn repeat<C: Capacity>(
    repetitions: usize,
    mut once: impl FnMut(&mut RandomSource) -> Result<Outcome<C>>,
    rng: &mut RandomSource,
) -> Result<Outcome<C>> {
    if repetitions == 0 {
        return Err(Error::InvalidArgument("repetitions must be at least 1".into()));
    }
    let mut best = once(rng)?;
    for _ in 1..repetitions {
        let next = once(rng)?;
        best.stats.absorb(&next.stats);
        if next.cut.value() < best.cut.value() {
            best.cut = next.cut;
        }
    }
    Ok(best)
}

/// Classic recursive contraction: two independent contractions to
/// `ceil(n / sqrt(2) + 1)` supernodes, recurse on each, keep the better cut.
/// Graphs with at most six supernodes are solved exhaustively.
pub fn karger_stein<C: Capacity>(
    g: &ContractibleGraph<C>,
    rng: &mut RandomSource,
    opts: &RunOptions<'_>,
) -> Result<Outcome<C>> {
    check_target(g, opts)?;
    require_connected(g)?;
    karger_stein::run(g, rng, opts)
}

/// Geometric branching, child count drawn before the first child.
pub fn fpz_v1<C: Capacity>(
    g: &ContractibleGraph<C>,
    rng: &mut RandomSource,
    opts: &RunOptions<'_>,
) -> Result<Outcome<C>> {
    check_target(g, opts)?;
    require_connected(g)?;
    engine::run(g, rng, ChildRule::Upfront(BranchingPolicy::Geometric), opts)
}

/// Geometric branching as a coin flip after each child: with probability
/// `p_n` return, otherwise call again on the same graph and keep the better
/// cut. More than `opts.repeat_cap` children at one node is an error.
pub fn fpz_v2<C: Capacity>(
    g: &ContractibleGraph<C>,
    rng: &mut RandomSource,
    opts: &RunOptions<'_>,
) -> Result<Outcome<C>> {
    check_target(g, opts)?;
    require_connected(g)?;
    engine::run(g, rng, ChildRule::CoinFlip, opts)
}

/// One child with probability `(n-4)/(n-2)`, two otherwise; two children at
/// `n = 4`. See [`BranchingPolicy::LambdaMixture`] for `n = 3`.
pub fn optimal_variant<C: Capacity>(
    g: &ContractibleGraph<C>,
    rng: &mut RandomSource,
    opts: &RunOptions<'_>,
) -> Result<Outcome<C>> {
    check_target(g, opts)?;
    require_connected(g)?;
    engine::run(g, rng, ChildRule::Upfront(BranchingPolicy::LambdaMixture), opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Karger,
    KargerStein,
    Fpz1,
    Fpz2,
    Optimal,
    /// Deterministic exact solver.
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Karger,
        Algorithm::KargerStein,
        Algorithm::Fpz1,
        Algorithm::Fpz2,
        Algorithm::Optimal,
        Algorithm::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Karger => "karger",
            Algorithm::KargerStein => "karger-stein",
            Algorithm::Fpz1 => "fpz1",
            Algorithm::Fpz2 => "fpz2",
            Algorithm::Optimal => "optimal",
            Algorithm::Oracle => "oracle",
        }
    }

    /// Best of `repetitions` runs. For [`Algorithm::Karger`] this is
    /// [`karger_repeated`]. The oracle ignores `rng` and `repetitions`.
    pub fn solve<C: Capacity>(
        &self,
        g: &ContractibleGraph<C>,
        repetitions: usize,
        rng: &mut RandomSource,
        opts: &RunOptions<'_>,
    ) -> Result<Outcome<C>> {
        let once = |rng: &mut RandomSource| match self {
            Algorithm::Karger => karger_single_run(g, rng, opts),
            Algorithm::KargerStein => karger_stein(g, rng, opts),
            Algorithm::Fpz1 => fpz_v1(g, rng, opts),
            Algorithm::Fpz2 => fpz_v2(g, rng, opts),
            Algorithm::Optimal => optimal_variant(g, rng, opts),
            Algorithm::Oracle => {
                let cut = oracle::deterministic_min_cut(g)?;
                let hit = opts.target.is_some_and(|t| Cut::new_unchecked(t.to_vec(), cut.value()) == cut);
                let leaf = u64::from(hit);
                let stats = RunStats { leaves: 1, survival_leaves: leaf, ..RunStats::default() };
                Ok(Outcome { cut, stats })
            }
        };
        if *self == Algorithm::Oracle {
            return repeat(1, once, rng);
        }
        repeat(repetitions, once, rng)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, generate, GeneratorKind};

    fn cycle(n: usize) -> ContractibleGraph {
        generate(&GeneratorKind::Cycle { n }, 0).unwrap().graph
    }

    const RANDOMIZED: [Algorithm; 5] = [
        Algorithm::Karger,
        Algorithm::KargerStein,
        Algorithm::Fpz1,
        Algorithm::Fpz2,
        Algorithm::Optimal,
    ];

    #[test]
    fn p_n_values() {
        assert_eq!(p_n(2), Ok(0.0));
        assert_eq!(p_n(4), Ok(0.5));
        assert!((p_n(100).unwrap() - 0.98).abs() < 1e-15);
        assert_eq!(p_n(1), Err(Error::TooFewVertices(1)));
    }

    #[test]
    fn two_vertex_input_returns_immediately() {
        let g = build_graph(2, &[(0, 1, 5u64)]).unwrap();
        for alg in Algorithm::ALL {
            let out = alg.solve(&g, 1, &mut RandomSource::new(0), &RunOptions::default()).unwrap();
            assert_eq!(out.cut.value(), 5, "{alg}");
            assert_eq!(out.stats.recursive_calls, 0);
            assert_eq!(out.stats.contractions, 0);
        }
    }

    #[test]
    fn karger_triangle_always_two() {
        let g = cycle(3);
        let mut rng = RandomSource::new(4);
        for _ in 0..100 {
            let out = karger_single_run(&g, &mut rng, &RunOptions::default()).unwrap();
            assert_eq!(out.cut.value(), 2);
            assert_eq!(out.stats.contractions, 1);
        }
    }

    #[test]
    fn karger_contracts_n_minus_two_times() {
        let g = cycle(11);
        let out = karger_single_run(&g, &mut RandomSource::new(1), &RunOptions::default()).unwrap();
        assert_eq!(out.stats.contractions, 9);
        assert_eq!(out.stats.leaves, 1);
    }

    #[test]
    fn karger_repeated_one_matches_single_run() {
        let g = generate(
            &GeneratorKind::Random { n: 10, edge_probability: 0.4, min_capacity: 1, max_capacity: 9 },
            3,
        )
        .unwrap()
        .graph;
        let opts = RunOptions::default();
        let a = karger_single_run(&g, &mut RandomSource::new(8), &opts).unwrap();
        let b = karger_repeated(&g, 1, &mut RandomSource::new(8), &opts).unwrap();
        assert_eq!(a.cut, b.cut);
        assert_eq!(a.stats, b.stats);
        assert!(karger_repeated(&g, 0, &mut RandomSource::new(8), &opts).is_err());
    }

    #[test]
    fn karger_on_disconnected_remainder() {
        let g = build_graph(4, &[(0, 1, 1u64)]).unwrap();
        let err = karger_single_run(&g, &mut RandomSource::new(0), &RunOptions::default());
        assert_eq!(err.unwrap_err(), Error::NoContractibleEdge);
        let err = fpz_v1(&g, &mut RandomSource::new(0), &RunOptions::default());
        assert_eq!(err.unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn karger_stein_small_cycle_is_exact() {
        let g = cycle(6);
        let out = karger_stein(&g, &mut RandomSource::new(0), &RunOptions::default()).unwrap();
        assert_eq!(out.cut.value(), 2);
        assert_eq!(out.stats.leaves, 1);
        let big = cycle(40);
        let out = karger_stein(&big, &mut RandomSource::new(0), &RunOptions::default()).unwrap();
        assert_eq!(out.cut.value(), 2);
        assert!(out.stats.leaves > 1);
    }

    #[test]
    fn returned_cuts_are_valid() {
        for seed in 0..20 {
            let g = generate(
                &GeneratorKind::Random {
                    n: 9,
                    edge_probability: 0.5,
                    min_capacity: 1,
                    max_capacity: 6,
                },
                seed,
            )
            .unwrap()
            .graph;
            for alg in RANDOMIZED {
                let out = alg.solve(&g, 3, &mut RandomSource::new(seed), &RunOptions::default()).unwrap();
                let recomputed = Cut::from_mask(&g, out.cut.mask().to_vec()).unwrap();
                assert_eq!(recomputed.value(), out.cut.value(), "{alg}");
            }
        }
    }

    #[test]
    fn stats_invariants() {
        let g = cycle(12);
        let target = Cut::from_side(&g, &[0, 1]).unwrap();
        let opts = RunOptions::tracking(&target);
        for alg in RANDOMIZED {
            for seed in 0..20 {
                let s = alg.solve(&g, 1, &mut RandomSource::new(seed), &opts).unwrap().stats;
                assert!(s.leaves <= s.recursive_calls, "{alg}");
                assert!(s.survival_leaves <= s.leaves);
                assert!(s.top_level_surviving_children <= s.root_children);
            }
        }
    }

    #[test]
    fn survival_leaf_means_target_partition_reachable() {
        // Karger single run: survival iff the returned cut is the target.
        let g = cycle(6);
        let target = Cut::from_side(&g, &[0, 1, 2]).unwrap();
        let opts = RunOptions::tracking(&target);
        let mut rng = RandomSource::new(12);
        let mut hits = 0;
        for _ in 0..500 {
            let out = karger_single_run(&g, &mut rng, &opts).unwrap();
            assert_eq!(out.stats.survived(), out.cut == target);
            hits += usize::from(out.stats.survived());
        }
        assert!(hits > 0);
    }

    #[test]
    fn fpz_child_counts_and_calls() {
        // Root child count on a four-cycle averages 1 / p_4 = 2.
        let g = cycle(4);
        let mut rng = RandomSource::new(6);
        let trials = 20_000;
        for alg in [Algorithm::Fpz1, Algorithm::Fpz2] {
            let total: u64 = (0..trials)
                .map(|_| alg.solve(&g, 1, &mut rng, &RunOptions::default()).unwrap().stats.root_children)
                .sum();
            let mean = total as f64 / trials as f64;
            // variance of a geometric with p = 1/2 is 2
            assert!((mean - 2.0).abs() <= 3.0 * (2.0 / trials as f64).sqrt(), "{alg}: {mean}");
        }
    }

    #[test]
    fn repeat_cap_turns_into_error() {
        let g = cycle(8);
        let opts = RunOptions { target: None, repeat_cap: 1 };
        let mut failures = 0;
        for seed in 0..50 {
            match fpz_v2(&g, &mut RandomSource::new(seed), &opts) {
                Err(Error::RepeatCapExceeded(1)) => failures += 1,
                Err(e) => panic!("{e}"),
                Ok(_) => {}
            }
        }
        assert!(failures > 0);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for alg in Algorithm::ALL {
            assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
        }
        assert!("nope".parse::<Algorithm>().is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let g = cycle(20);
        let target = Cut::from_side(&g, &[0]).unwrap();
        let opts = RunOptions::tracking(&target);
        for alg in RANDOMIZED {
            let a = alg.solve(&g, 2, &mut RandomSource::new(99), &opts).unwrap();
            let b = alg.solve(&g, 2, &mut RandomSource::new(99), &opts).unwrap();
            assert_eq!(a.cut, b.cut);
            assert_eq!(a.stats, b.stats);
        }
    }
}
