use crate::error::{Error, Result};
use crate::rng::RandomSource;

use super::p_n;

/// Distribution of the number of child calls made at a size-`n` node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchingPolicy {
    /// `k` children with probability `p_n (1 - p_n)^(k-1)`.
    Geometric,
    /// `k` children with probability `lambda`, `k + 1` otherwise, where
    /// `k = ceil(1/p_n) - 1` and `lambda = k + 1 - 1/p_n`. For `n >= 5` this is
    /// one child with probability `(n-4)/(n-2)` and two otherwise; `n = 4`
    /// always has two children. At `n = 3` no `lambda` in `[0, 1]` exists
    /// with `k = 1`; there the node makes three children with probability
    /// 1/4 and four otherwise, which is the adjacent-count mixture whose
    /// survival probability `1 - E[(2/3)^K] = 7/9` equals the mixture
    /// recurrence evaluated at `n = 3`.
    LambdaMixture,
    /// Always the same number of children.
    Fixed(usize),
}

impl BranchingPolicy {
    /// `(k, lambda_numerator, denominator)`: `k` children with probability
    /// `lambda_numerator / denominator`, else `k + 1`. Exact for all `n >= 3`.
    pub fn mixture(n: usize) -> (usize, usize, usize) {
        debug_assert!(n >= 3);
        if n == 3 {
            return (3, 1, 4);
        }
        // 1/p_n = n / (n - 2)
        let d = n - 2;
        let k = n.div_ceil(d) - 1;
        (k, (k + 1) * d - n, d)
    }

    /// Probability of exactly `k` children at a size-`n` node.
    pub fn pmf(&self, n: usize, k: usize) -> f64 {
        match *self {
            BranchingPolicy::Geometric => {
                let p = p_n(n).unwrap_or(0.0);
                if k == 0 {
                    0.0
                } else {
                    p * (1.0 - p).powi(k as i32 - 1)
                }
            }
            BranchingPolicy::LambdaMixture => {
                let (base, num, den) = Self::mixture(n);
                let lambda = num as f64 / den as f64;
                if k == base {
                    lambda
                } else if k == base + 1 {
                    1.0 - lambda
                } else {
                    0.0
                }
            }
            BranchingPolicy::Fixed(c) => f64::from(u8::from(k == c)),
        }
    }

    pub fn mean_offspring(&self, n: usize) -> f64 {
        match *self {
            BranchingPolicy::Geometric => 1.0 / p_n(n).unwrap_or(0.0),
            BranchingPolicy::LambdaMixture => {
                let (k, num, den) = Self::mixture(n);
                let lambda = num as f64 / den as f64;
                lambda * k as f64 + (1.0 - lambda) * (k + 1) as f64
            }
            BranchingPolicy::Fixed(c) => c as f64,
        }
    }

    /// Draws a child count for a size-`n` node, `n >= 3`. Geometric draws use
    /// inversion of the CDF and fail past `cap`.
    pub fn draw(&self, n: usize, rng: &mut RandomSource, cap: usize) -> Result<usize> {
        match *self {
            BranchingPolicy::Geometric => {
                let p = p_n(n)?;
                let u = 1.0 - rng.uniform();
                let k = 1.0 + (u.ln() / (1.0 - p).ln()).floor();
                if k > cap as f64 {
                    return Err(Error::RepeatCapExceeded(cap));
                }
                Ok(k as usize)
            }
            BranchingPolicy::LambdaMixture => {
                let (k, num, den) = Self::mixture(n);
                Ok(if (rng.below(den as u64) as usize) < num { k } else { k + 1 })
            }
            BranchingPolicy::Fixed(c) => Ok(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixture_matches_closed_form() {
        assert_eq!(BranchingPolicy::mixture(3), (3, 1, 4));
        assert_eq!(BranchingPolicy::mixture(4), (1, 0, 2));
        for n in 5..200 {
            let (k, num, den) = BranchingPolicy::mixture(n);
            assert_eq!(k, 1);
            assert_eq!((num, den), (n - 4, n - 2));
        }
    }

    #[test]
    fn tuned_policies_have_unit_surviving_mean() {
        for n in 3..500 {
            let p = p_n(n).unwrap();
            let m = BranchingPolicy::Geometric.mean_offspring(n) * p;
            assert!((m - 1.0).abs() < 1e-12, "geometric n={n}: {m}");
            if n >= 4 {
                let m = BranchingPolicy::LambdaMixture.mean_offspring(n) * p;
                assert!((m - 1.0).abs() < 1e-12, "mixture n={n}: {m}");
            }
        }
    }

    #[test]
    fn mixture_at_three_reproduces_recurrence_step() {
        // 1 - E[(2/3)^K] with K = 3 w.p. 1/4, 4 w.p. 3/4
        let fail: f64 = (3..=4)
            .map(|k| BranchingPolicy::LambdaMixture.pmf(3, k) * (2.0f64 / 3.0).powi(k as i32))
            .sum();
        assert!((1.0 - fail - 7.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn pmf_sums_to_one() {
        for n in [3, 4, 5, 10, 50] {
            for policy in [BranchingPolicy::Geometric, BranchingPolicy::LambdaMixture] {
                let total: f64 = (0..2000).map(|k| policy.pmf(n, k)).sum();
                assert!((total - 1.0).abs() < 1e-12);
            }
        }
        assert_eq!(BranchingPolicy::Fixed(2).pmf(7, 2), 1.0);
    }

    #[test]
    fn geometric_draw_frequencies() {
        // p_4 = 1/2: P[k=1] = 1/2, P[k=2] = 1/4, P[k=3] = 1/8.
        let draws = 100_000;
        let mut rng = RandomSource::new(21);
        let mut counts = [0usize; 4];
        for _ in 0..draws {
            let k = BranchingPolicy::Geometric.draw(4, &mut rng, 10_000).unwrap();
            if k <= 3 {
                counts[k] += 1;
            }
        }
        for (k, p) in [(1, 0.5), (2, 0.25), (3, 0.125)] {
            let sigma = (p * (1.0 - p) / draws as f64).sqrt();
            let f = counts[k] as f64 / draws as f64;
            assert!((f - p).abs() <= 3.0 * sigma, "k={k}: {f} vs {p}");
        }
    }

    #[test]
    fn mixture_at_four_is_always_two() {
        let mut rng = RandomSource::new(2);
        for _ in 0..1000 {
            assert_eq!(BranchingPolicy::LambdaMixture.draw(4, &mut rng, 1).unwrap(), 2);
            assert!((3..=4).contains(&BranchingPolicy::LambdaMixture.draw(3, &mut rng, 1).unwrap()));
        }
    }
}
