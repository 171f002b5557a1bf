use std::fmt::{Debug, Display};
use std::ops::{Add, Sub};

use crate::rng::RandomSource;

/// Edge capacity. `u64` is the exact default; `f64` is the fractional mode.
pub trait Capacity:
    Copy
    + PartialOrd
    + Debug
    + Display
    + Default
    + Add<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    const ZERO: Self;

    fn is_negative(self) -> bool;

    fn is_positive(self) -> bool {
        self > Self::ZERO
    }

    /// Uniform draw in `[0, bound)` for a positive `bound`.
    fn draw_below(bound: Self, rng: &mut RandomSource) -> Self;

    fn to_f64(self) -> f64;

    /// Parses one capacity token. `Err(true)` flags a negative value.
    fn parse_token(s: &str) -> Result<Self, bool>;

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Capacity for u64 {
    const ZERO: Self = 0;

    fn is_negative(self) -> bool {
        false
    }

    fn draw_below(bound: Self, rng: &mut RandomSource) -> Self {
        rng.below(bound)
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn parse_token(s: &str) -> Result<Self, bool> {
        if let Some(rest) = s.strip_prefix('-') {
            return Err(rest.parse::<u64>().is_ok_and(|v| v > 0));
        }
        s.parse().map_err(|_| false)
    }
}

impl Capacity for f64 {
    const ZERO: Self = 0.0;

    fn is_negative(self) -> bool {
        self < 0.0
    }

    fn draw_below(bound: Self, rng: &mut RandomSource) -> Self {
        rng.uniform() * bound
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn parse_token(s: &str) -> Result<Self, bool> {
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() && v < 0.0 => Err(true),
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(false),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_flags_negative() {
        assert_eq!(u64::parse_token("5"), Ok(5));
        assert_eq!(u64::parse_token("-3"), Err(true));
        assert_eq!(u64::parse_token("x"), Err(false));
        assert_eq!(f64::parse_token("-0.5"), Err(true));
        assert_eq!(f64::parse_token("2.5"), Ok(2.5));
        assert_eq!(f64::parse_token("inf"), Err(false));
    }
}
