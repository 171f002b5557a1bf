//! Analytic success probabilities of the recursive contraction algorithms.
//!
//! `Q(n)` is the probability that a fixed minimum cut survives to some leaf,
//! given that each contraction at size `k` spares it with probability exactly
//! `p_k = 1 - 2/k` (the case of a unit cycle). `S(n) = 1/Q(n)`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::algorithms::p_n;
use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::ContractibleGraph;

/// `H_n`, summed smallest term first.
pub fn harmonic(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("harmonic number needs n >= 1".into()));
    }
    Ok((1..=n).rev().map(|k| 1.0 / k as f64).sum())
}

/// Closed form `1 / (2 H_n - 2)` for the geometric-branching algorithm.
pub fn q_fpz_closed(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    Ok(1.0 / (2.0 * harmonic(n)? - 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecurrenceKind {
    Fpz,
    Optimal,
}

/// `Q(2..=N)` for one branching policy.
#[derive(Debug, Clone)]
pub struct RecurrenceTable {
    pub kind: RecurrenceKind,
    values: Vec<f64>,
    /// Largest residual of the implicit fixed-point equation (geometric only).
    pub max_residual: f64,
}

impl RecurrenceTable {
    pub fn max_n(&self) -> usize {
        self.values.len() + 1
    }

    pub fn q(&self, n: usize) -> f64 {
        self.values[n - 2]
    }

    pub fn s(&self, n: usize) -> f64 {
        1.0 / self.q(n)
    }

    /// `(n, Q(n))` pairs from `n = 2`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &q)| (i + 2, q))
    }
}

/// Residual of `Q(n) = p^2 Q(n-1) + (1-p)(1 - (1 - Q(n))(1 - p Q(n-1)))`.
pub fn fpz_fixed_point_residual(n: usize, q_prev: f64, q: f64) -> f64 {
    let p = 1.0 - 2.0 / n as f64;
    let rhs = p * p * q_prev + (1.0 - p) * (1.0 - (1.0 - q) * (1.0 - p * q_prev));
    (q - rhs).abs()
}

/// `1/Q(n) = 1/Q(n-1) + 2/n` from `Q(2) = 1`, checking each step against the
/// implicit fixed-point equation it was solved from.
pub fn q_fpz_recurrence(max_n: usize) -> Result<RecurrenceTable> {
    if max_n < 2 {
        return Err(Error::TooFewVertices(max_n));
    }
    let mut values = Vec::with_capacity(max_n - 1);
    let mut inverse = 1.0;
    let mut max_residual: f64 = 0.0;
    values.push(1.0);
    for n in 3..=max_n {
        let q_prev = 1.0 / inverse;
        inverse += 2.0 / n as f64;
        let q = 1.0 / inverse;
        max_residual = max_residual.max(fpz_fixed_point_residual(n, q_prev, q));
        values.push(q);
    }
    Ok(RecurrenceTable { kind: RecurrenceKind::Fpz, values, max_residual })
}

/// `Q(n) = Q(n-1) - 2(n-2)/n^2 * Q(n-1)^2` from `Q(2) = 1`.
pub fn q_optimal_recurrence(max_n: usize) -> Result<RecurrenceTable> {
    if max_n < 2 {
        return Err(Error::TooFewVertices(max_n));
    }
    let mut values = Vec::with_capacity(max_n - 1);
    let mut q: f64 = 1.0;
    values.push(q);
    for n in 3..=max_n {
        let nf = n as f64;
        q -= 2.0 * (nf - 2.0) / (nf * nf) * q * q;
        values.push(q);
    }
    Ok(RecurrenceTable { kind: RecurrenceKind::Optimal, values, max_residual: 0.0 })
}

/// Observed behavior of the mixture-policy recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaReport {
    pub max_n: usize,
    /// `Q(n-1) >= Q(n) >= Q(n-1)/2` for every `3 <= n <= N`.
    pub halving_holds: bool,
    /// `S(n) - S(n-1) >= 1/n` for every `4 <= n <= N`.
    pub step_bound_holds: bool,
    /// `Q` strictly decreasing.
    pub strictly_decreasing: bool,
    /// Range of `S(n) / H_n` over `4 <= n <= N`.
    pub window: (f64, f64),
    /// Range of `S(n) / H_n` over `100 <= n <= N`, when `N >= 100`.
    pub tail_window: Option<(f64, f64)>,
}

impl ThetaReport {
    /// Window contained in `[lo, hi]`, checked on the tail when available.
    pub fn tail_within(&self, lo: f64, hi: f64) -> bool {
        let (a, b) = self.tail_window.unwrap_or(self.window);
        lo <= a && b <= hi
    }
}

/// Sweeps the mixture-policy table up to `max_n`. A violated halving claim
/// is an error since it contradicts a proven property of the recurrence.
pub fn theta_bounds_check(max_n: usize) -> Result<ThetaReport> {
    if max_n < 4 {
        return Err(Error::InvalidArgument(format!("theta check needs N >= 4, got {max_n}")));
    }
    let table = q_optimal_recurrence(max_n)?;
    let mut halving_holds = true;
    let mut step_bound_holds = true;
    let mut strictly_decreasing = true;
    let mut window = (f64::INFINITY, f64::NEG_INFINITY);
    let mut tail = (f64::INFINITY, f64::NEG_INFINITY);
    let mut h = 1.5;
    for n in 3..=max_n {
        h += 1.0 / n as f64;
        let (prev, q) = (table.q(n - 1), table.q(n));
        halving_holds &= prev >= q && q >= prev / 2.0;
        strictly_decreasing &= q < prev;
        if n >= 4 {
            step_bound_holds &= table.s(n) - table.s(n - 1) >= 1.0 / n as f64;
            let ratio = table.s(n) / h;
            window = (window.0.min(ratio), window.1.max(ratio));
            if n >= 100 {
                tail = (tail.0.min(ratio), tail.1.max(ratio));
            }
        }
    }
    if !halving_holds {
        return Err(Error::InvalidArgument("halving property violated".into()));
    }
    Ok(ThetaReport {
        max_n,
        halving_holds,
        step_bound_holds,
        strictly_decreasing,
        window,
        tail_window: (max_n >= 100).then_some(tail),
    })
}

/// Exact probability `1 - lambda*/U` that a minimum cut of value
/// `min_value` survives one capacity-proportional contraction of `g`.
/// Fails if the result falls below `p_n`, which would contradict the degree
/// bound `U >= n * lambda* / 2`.
pub fn survival_prob_lower_bound<C: Capacity>(g: &ContractibleGraph<C>, min_value: C) -> Result<f64> {
    let total = g.total_capacity().to_f64();
    let lambda = min_value.to_f64();
    if lambda > total || total <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "minimum cut {lambda} is not below total capacity {total}"
        )));
    }
    let survival = 1.0 - lambda / total;
    let bound = p_n(g.n_current())?;
    if survival < bound - 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "survival {survival} below p_n = {bound}: {min_value} is not the minimum cut"
        )));
    }
    Ok(survival)
}

/// Whether the mixture policy's `Q(n)` is at least the geometric policy's
/// for every `2 <= n <= max_n`. An observation, not a proven property.
pub fn optimal_dominates_fpz(max_n: usize) -> Result<bool> {
    let fpz = q_fpz_recurrence(max_n)?;
    let opt = q_optimal_recurrence(max_n)?;
    let dominates = fpz.iter().zip(opt.iter()).all(|((_, f), (_, o))| o >= f);
    Ok(dominates)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRow {
    pub n: usize,
    #[serde(rename = "Q_fpz")]
    pub q_fpz: f64,
    #[serde(rename = "Q_opt")]
    pub q_opt: f64,
    #[serde(rename = "1/(2Hn-2)")]
    pub closed_form: f64,
    #[serde(rename = "Hn")]
    pub harmonic: f64,
}

/// Rows `n = 2..=max_n` combining both recurrences and the closed form.
pub fn analysis_rows(max_n: usize) -> Result<Vec<AnalysisRow>> {
    let fpz = q_fpz_recurrence(max_n)?;
    let opt = q_optimal_recurrence(max_n)?;
    (2..=max_n)
        .map(|n| {
            Ok(AnalysisRow {
                n,
                q_fpz: fpz.q(n),
                q_opt: opt.q(n),
                closed_form: q_fpz_closed(n)?,
                harmonic: harmonic(n)?,
            })
        })
        .collect()
}

pub fn write_analysis_csv<W: Write>(rows: &[AnalysisRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorKind};
    use crate::oracle::brute_force_min_cut;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1).unwrap(), 1.0);
        assert_eq!(harmonic(2).unwrap(), 1.5);
        assert!((harmonic(4).unwrap() - 25.0 / 12.0).abs() < 1e-15);
        assert!(harmonic(0).is_err());
    }

    #[test]
    fn closed_form_small_n() {
        assert_eq!(q_fpz_closed(2).unwrap(), 1.0);
        assert!((q_fpz_closed(3).unwrap() - 0.6).abs() < 1e-15);
        assert!((q_fpz_closed(4).unwrap() - 6.0 / 13.0).abs() < 1e-15);
        assert!(q_fpz_closed(1).is_err());
    }

    #[test]
    fn hand_solved_fixed_point_at_three() {
        // Q(3) = p^2 + (1-p)(1 - (1-Q)(1-p)) with p = 1/3, solved by hand: 3/5
        assert!(fpz_fixed_point_residual(3, 1.0, 0.6) < 1e-15);
    }

    #[test]
    fn fpz_recurrence_matches_closed_form() {
        let t = q_fpz_recurrence(2000).unwrap();
        assert_eq!(t.q(2), 1.0);
        assert!((t.q(3) - 0.6).abs() < 1e-15);
        assert!((t.q(4) - 6.0 / 13.0).abs() < 1e-15);
        for (n, q) in t.iter() {
            let closed = q_fpz_closed(n).unwrap();
            assert!((q / closed - 1.0).abs() < 1e-10, "n={n}");
        }
        assert!(t.max_residual < 1e-12);
    }

    #[test]
    fn optimal_recurrence_steps() {
        let t = q_optimal_recurrence(4).unwrap();
        assert_eq!(t.q(2), 1.0);
        assert!((t.q(3) - 7.0 / 9.0).abs() < 1e-15);
        assert!((t.q(4) - 203.0 / 324.0).abs() < 1e-15);
        assert!(t.q(3) >= t.q(2) / 2.0);
    }

    #[test]
    fn tables_are_probabilities_and_monotone() {
        for t in [q_fpz_recurrence(5000).unwrap(), q_optimal_recurrence(5000).unwrap()] {
            let mut prev = f64::INFINITY;
            for (_, q) in t.iter() {
                assert!(q > 0.0 && q <= 1.0);
                assert!(q <= prev);
                prev = q;
            }
        }
    }

    #[test]
    fn theta_report_small() {
        let r = theta_bounds_check(1000).unwrap();
        assert!(r.halving_holds && r.step_bound_holds && r.strictly_decreasing);
        assert!(r.tail_within(0.5, 4.0));
        assert!(theta_bounds_check(3).is_err());
    }

    #[test]
    fn survival_bound_is_tight_on_cycles() {
        for n in 3..=100 {
            let g = generate(&GeneratorKind::Cycle { n }, 0).unwrap().graph;
            let s = survival_prob_lower_bound(&g, 2).unwrap();
            assert!((s - p_n(n).unwrap()).abs() < 1e-15);
        }
        let k4 = generate(&GeneratorKind::Complete { n: 4 }, 0).unwrap().graph;
        assert_eq!(survival_prob_lower_bound(&k4, 3).unwrap(), 0.5);
    }

    #[test]
    fn survival_bound_on_planted_exceeds_p_n() {
        let kind = GeneratorKind::Planted { left: 4, right: 4, intra: 10, inter: 1, crossing: 2 };
        let g = generate(&kind, 0).unwrap().graph;
        let lambda = brute_force_min_cut(&g).unwrap().value();
        let s = survival_prob_lower_bound(&g, lambda).unwrap();
        assert!((s - (1.0 - 2.0 / 122.0)).abs() < 1e-15);
        assert!(s > p_n(8).unwrap());
    }

    #[test]
    fn survival_bound_rejects_impossible_inputs() {
        let g = generate(&GeneratorKind::Cycle { n: 5 }, 0).unwrap().graph;
        assert!(survival_prob_lower_bound(&g, 6).is_err());
        assert!(survival_prob_lower_bound(&g, 4).is_err());
    }

    #[test]
    fn mixture_beats_geometric_numerically() {
        assert!(optimal_dominates_fpz(10_000).unwrap());
    }

    #[test]
    fn csv_rows() {
        let rows = analysis_rows(4).unwrap();
        assert_eq!(rows.len(), 3);
        assert!((rows[2].q_fpz - 6.0 / 13.0).abs() < 1e-15);
        assert!((rows[2].q_opt - 203.0 / 324.0).abs() < 1e-15);
        let mut buf = Vec::new();
        write_analysis_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,Q_fpz,Q_opt,1/(2Hn-2),Hn\n2,1.0,1.0,1.0,1.5\n"));
        let back: Vec<AnalysisRow> = csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .unwrap();
        assert_eq!(back, rows);
    }
}
