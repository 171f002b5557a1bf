//! Seeded parallel trial harness.
//!
//! Trial `i` always draws from `RandomSource::for_trial(seed, i)` and results
//! are merged in trial order, so every count is independent of the thread
//! count and of scheduling.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{Algorithm, Outcome, RunOptions, DEFAULT_REPEAT_CAP};
use crate::analysis::{q_fpz_closed, q_optimal_recurrence};
use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{generate, ContractibleGraph, Cut, GeneratorKind};
use crate::oracle::{brute_force_min_cut, deterministic_min_cut, BRUTE_FORCE_LIMIT};
use crate::rng::RandomSource;

/// What counts as a successful trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    /// Some leaf of the recursion tree has the target partition.
    Survival,
    /// The returned cut has the minimum value.
    ExactValue,
    /// The returned cut is the target cut.
    ExactPartition,
}

impl Event {
    pub fn name(&self) -> &'static str {
        match self {
            Event::Survival => "survival",
            Event::ExactValue => "exact_value",
            Event::ExactPartition => "exact_partition",
        }
    }

    fn hit<C: Capacity>(&self, outcome: &Outcome<C>, target: &Cut<C>) -> bool {
        match self {
            Event::Survival => outcome.stats.survived(),
            Event::ExactValue => outcome.cut.value() == target.value(),
            Event::ExactPartition => outcome.cut == *target,
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Event {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Event::Survival, Event::ExactValue, Event::ExactPartition]
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown event `{s}`")))
    }
}

/// Binomial proportion with a 3-sigma normal-approximation interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuccessEstimate {
    pub event: Event,
    pub trials: u64,
    pub successes: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl SuccessEstimate {
    pub fn from_counts(event: Event, trials: u64, successes: u64) -> Self {
        let point = successes as f64 / trials as f64;
        let half = 3.0 * (point * (1.0 - point) / trials as f64).sqrt();
        Self {
            event,
            trials,
            successes,
            point,
            ci_low: (point - half).max(0.0),
            ci_high: (point + half).min(1.0),
        }
    }

    /// Standard error under a true success probability `p`.
    pub fn sigma_at(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// `|point - p| <= 3 sigma(p)`.
    pub fn consistent_with(&self, p: f64) -> bool {
        (self.point - p).abs() <= 3.0 * self.sigma_at(p)
    }

    /// `point >= p - 3 sigma(p)`.
    pub fn at_least(&self, p: f64) -> bool {
        self.point >= p - 3.0 * self.sigma_at(p)
    }
}

/// Sample mean with a 3-sigma interval from the sample variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub trials: u64,
    pub mean: f64,
    pub std_err: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl MeanEstimate {
    pub fn from_samples(samples: &[f64]) -> Self {
        let k = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / k;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0).max(1.0);
        let std_err = (var / k).sqrt();
        Self {
            trials: samples.len() as u64,
            mean,
            std_err,
            ci_low: mean - 3.0 * std_err,
            ci_high: mean + 3.0 * std_err,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.ci_low <= x && x <= self.ci_high
    }
}

/// Everything that determines a batch of trials.
#[derive(Debug, Clone, Copy)]
pub struct TrialConfig {
    pub algorithm: Algorithm,
    /// Best-of repetitions inside one trial.
    pub repetitions: usize,
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl TrialConfig {
    pub fn new(algorithm: Algorithm, trials: u64, seed: u64) -> Self {
        Self { algorithm, repetitions: 1, trials, seed, threads: None }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn repetitions(mut self, repetitions: usize) -> Self {
        self.repetitions = repetitions;
        self
    }
}

fn with_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

/// Runs `config.trials` seeded trials, mapping each outcome through
/// `observe`. Results come back in trial order.
pub fn run_trials<C, T, F>(
    config: &TrialConfig,
    g: &ContractibleGraph<C>,
    target: Option<&Cut<C>>,
    observe: F,
) -> Result<Vec<T>>
where
    C: Capacity,
    T: Send,
    F: Fn(&Outcome<C>) -> T + Sync + Send,
{
    if config.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let opts = RunOptions {
        target: target.map(|t| t.mask()),
        repeat_cap: DEFAULT_REPEAT_CAP,
    };
    with_pool(config.threads, || {
        (0..config.trials)
            .into_par_iter()
            .map(|i| {
                let mut rng = RandomSource::for_trial(config.seed, i);
                let out = config.algorithm.solve(g, config.repetitions, &mut rng, &opts)?;
                Ok(observe(&out))
            })
            .collect::<Result<Vec<T>>>()
    })?
}

/// Exact minimum value: exhaustive for small graphs, Stoer–Wagner otherwise.
pub fn oracle_min_value<C: Capacity>(g: &ContractibleGraph<C>) -> Result<C> {
    if g.n_original() <= BRUTE_FORCE_LIMIT {
        Ok(brute_force_min_cut(g)?.value())
    } else {
        Ok(deterministic_min_cut(g)?.value())
    }
}

fn require_minimum<C: Capacity>(g: &ContractibleGraph<C>, target: &Cut<C>) -> Result<()> {
    let minimum = oracle_min_value(g)?;
    if target.value() != minimum {
        return Err(Error::TargetNotMinimum {
            target: target.value().to_string(),
            minimum: minimum.to_string(),
        });
    }
    Ok(())
}

/// Estimates `P[event]` for `config.algorithm` on `g`. The target must be a
/// minimum cut; this is checked against the oracle before any trial runs.
pub fn estimate_success<C: Capacity>(
    config: &TrialConfig,
    g: &ContractibleGraph<C>,
    target: &Cut<C>,
    event: Event,
) -> Result<SuccessEstimate> {
    if config.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    require_minimum(g, target)?;
    let hits = run_trials(config, g, Some(target), |out| event.hit(out, target))?;
    let successes = hits.iter().filter(|&&h| h).count() as u64;
    Ok(SuccessEstimate::from_counts(event, config.trials, successes))
}

/// Is `g` a single cycle through all vertices with unit capacities?
pub fn is_unit_cycle<C: Capacity>(g: &ContractibleGraph<C>) -> bool {
    let n = g.n_original();
    let edges = g.original_edges();
    if n < 3 || edges.len() != n || edges.iter().any(|&(_, _, w)| w.to_f64() != 1.0) {
        return false;
    }
    let mut degree = vec![0usize; n];
    for &(u, v, _) in edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    degree.iter().all(|&d| d == 2) && g.is_connected()
}

/// Mean number of root children in which the target survives the first
/// contraction. Only unit cycles are accepted: there every contraction
/// spares a minimum cut with probability exactly `p_n`, so the expected
/// value is exactly one.
pub fn surviving_children_stats<C: Capacity>(
    config: &TrialConfig,
    g: &ContractibleGraph<C>,
    target: &Cut<C>,
) -> Result<MeanEstimate> {
    if !matches!(config.algorithm, Algorithm::Fpz1 | Algorithm::Fpz2 | Algorithm::Optimal) {
        return Err(Error::InvalidArgument(format!(
            "surviving-children statistics need fpz1, fpz2 or optimal, got {}",
            config.algorithm
        )));
    }
    if !is_unit_cycle(g) {
        return Err(Error::InvalidArgument("surviving-children statistics need a unit cycle".into()));
    }
    require_minimum(g, target)?;
    let samples = run_trials(config, g, Some(target), |out| {
        out.stats.top_level_surviving_children as f64
    })?;
    Ok(MeanEstimate::from_samples(&samples))
}

/// Histogram of the root's child count: entry `k` counts trials with `k`
/// children, the last entry collects everything larger.
pub fn root_children_histogram<C: Capacity>(
    config: &TrialConfig,
    g: &ContractibleGraph<C>,
    buckets: usize,
) -> Result<Vec<u64>> {
    let counts = run_trials(config, g, None, |out| out.stats.root_children as usize)?;
    let mut hist = vec![0u64; buckets + 1];
    for k in counts {
        hist[k.min(buckets)] += 1;
    }
    Ok(hist)
}

/// Analytic reference for an algorithm's survival probability on an
/// `n`-vertex graph: the lower bound that is exact on unit cycles.
pub fn analytic_reference(algorithm: Algorithm, n: usize) -> Option<f64> {
    match algorithm {
        Algorithm::Fpz1 | Algorithm::Fpz2 => q_fpz_closed(n).ok(),
        Algorithm::Optimal => q_optimal_recurrence(n).ok().map(|t| t.q(n)),
        Algorithm::Karger if n >= 2 => Some(2.0 / (n * (n - 1)) as f64),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRow {
    pub graph: String,
    pub algorithm: String,
    pub event: Event,
    pub n: usize,
    pub trials: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub analytic_reference: Option<f64>,
}

impl EstimateRow {
    pub fn new(graph: &str, algorithm: Algorithm, n: usize, est: &SuccessEstimate) -> Self {
        Self {
            graph: graph.to_string(),
            algorithm: algorithm.name().to_string(),
            event: est.event,
            n,
            trials: est.trials,
            point: est.point,
            ci_low: est.ci_low,
            ci_high: est.ci_high,
            analytic_reference: analytic_reference(algorithm, n),
        }
    }
}

/// Graph family used by [`bench_runtime`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchFamily {
    UnitCycle,
    /// `G(n, 1/2)` with capacities in `1..=10`.
    DenseRandom,
}

impl BenchFamily {
    pub fn name(&self) -> &'static str {
        match self {
            BenchFamily::UnitCycle => "cycle",
            BenchFamily::DenseRandom => "dense",
        }
    }

    pub fn build(&self, n: usize, seed: u64) -> Result<ContractibleGraph> {
        let kind = match self {
            BenchFamily::UnitCycle => GeneratorKind::Cycle { n },
            BenchFamily::DenseRandom => GeneratorKind::Random {
                n,
                edge_probability: 0.5,
                min_capacity: 1,
                max_capacity: 10,
            },
        };
        Ok(generate(&kind, seed ^ n as u64)?.graph)
    }
}

impl FromStr for BenchFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(BenchFamily::UnitCycle),
            "dense" => Ok(BenchFamily::DenseRandom),
            _ => Err(Error::InvalidArgument(format!("unknown graph family `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub algorithm: Algorithm,
    pub family: BenchFamily,
    pub repetitions: usize,
    pub mean_seconds: f64,
    pub mean_contractions: f64,
    pub mean_calls: f64,
}

impl BenchRecord {
    /// `T(n) / (n^2 ln n)`.
    pub fn ratio_n2logn(&self) -> f64 {
        let n = self.n as f64;
        self.mean_seconds / (n * n * n.ln())
    }
}

/// Mean single-threaded wall time per run at each size. Each size first
/// runs `ceil(repetitions / 20)` discarded warm-up runs.
pub fn bench_runtime(
    algorithm: Algorithm,
    family: BenchFamily,
    sizes: &[usize],
    repetitions: usize,
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("no sizes to benchmark".into()));
    }
    if repetitions == 0 {
        return Err(Error::InvalidArgument("repetitions must be at least 1".into()));
    }
    let warmup = repetitions.div_ceil(20);
    let opts = RunOptions::default();
    let mut records = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let g = family.build(n, seed)?;
        let mut seconds = 0.0;
        let mut contractions = 0u64;
        let mut calls = 0u64;
        for rep in 0..warmup + repetitions {
            let mut rng = RandomSource::for_trial(seed, rep as u64);
            let start = Instant::now();
            let out = algorithm.solve(&g, 1, &mut rng, &opts)?;
            let elapsed = start.elapsed().as_secs_f64();
            if rep >= warmup {
                seconds += elapsed;
                contractions += out.stats.contractions;
                calls += out.stats.recursive_calls;
            }
        }
        let reps = repetitions as f64;
        records.push(BenchRecord {
            n,
            algorithm,
            family,
            repetitions,
            mean_seconds: seconds / reps,
            mean_contractions: contractions as f64 / reps,
            mean_calls: calls as f64 / reps,
        });
    }
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub algorithm: String,
    pub mean_seconds: f64,
    pub ratio_n2logn: f64,
}

impl From<&BenchRecord> for BenchRow {
    fn from(r: &BenchRecord) -> Self {
        Self {
            n: r.n,
            algorithm: r.algorithm.name().to_string(),
            mean_seconds: r.mean_seconds,
            ratio_n2logn: r.ratio_n2logn(),
        }
    }
}

/// Serializes rows with a header line.
pub fn write_csv<R: Serialize, W: Write>(rows: &[R], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(())
}

/// `max / min` of `T(n) / (n^2 ln n)` across records.
pub fn ratio_spread(records: &[BenchRecord]) -> f64 {
    let ratios: Vec<f64> = records.iter().map(BenchRecord::ratio_n2logn).collect();
    let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}
