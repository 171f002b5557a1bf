use std::fmt;

use crate::capacity::Capacity;
use crate::error::{Error, Result};

use super::ContractibleGraph;

/// A bipartition of the original vertices and its capacity.
///
/// Equality ignores which side was stored: `S` and `V \ S` are the same cut.
#[derive(Debug, Clone)]
pub struct Cut<C = u64> {
    in_side: Vec<bool>,
    value: C,
}

impl<C: Capacity> Cut<C> {
    pub(crate) fn new_unchecked(in_side: Vec<bool>, value: C) -> Self {
        Self { in_side, value }
    }

    /// Builds the cut with side `{v : in_side[v]}`, valued on the original graph.
    pub fn from_mask(g: &ContractibleGraph<C>, in_side: Vec<bool>) -> Result<Self> {
        if in_side.len() != g.n_original() {
            return Err(Error::InvalidArgument(format!(
                "side mask has {} entries for {} vertices",
                in_side.len(),
                g.n_original()
            )));
        }
        if in_side.iter().all(|&b| b) || !in_side.iter().any(|&b| b) {
            return Err(Error::TrivialSide);
        }
        let value = mask_value(g.original_edges(), &in_side);
        Ok(Self { in_side, value })
    }

    pub fn from_side(g: &ContractibleGraph<C>, side: &[usize]) -> Result<Self> {
        let n = g.n_original();
        let mut in_side = vec![false; n];
        for &v in side {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            in_side[v] = true;
        }
        Self::from_mask(g, in_side)
    }

    pub fn value(&self) -> C {
        self.value
    }

    pub fn n(&self) -> usize {
        self.in_side.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_side[v]
    }

    /// Membership of each original vertex in the stored side.
    pub fn mask(&self) -> &[bool] {
        &self.in_side
    }

    /// The stored side, ascending.
    pub fn side(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.in_side[v]).collect()
    }

    /// The side containing vertex 0, ascending.
    pub fn canonical_side(&self) -> Vec<usize> {
        let flip = !self.in_side[0];
        (0..self.n()).filter(|&v| self.in_side[v] ^ flip).collect()
    }

    /// Bitmask of the side containing vertex 0, for `n <= 64`.
    pub fn bits(&self) -> Option<u64> {
        if self.n() > 64 {
            return None;
        }
        Some(self.canonical_side().iter().fold(0u64, |m, &v| m | (1 << v)))
    }
}

impl<C: Capacity> PartialEq for Cut<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let flip = self.in_side[0] != other.in_side[0];
        self.in_side.iter().zip(&other.in_side).all(|(&a, &b)| a == (b ^ flip))
    }
}

impl<C: Capacity> fmt::Display for Cut<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "value {} side {:?}", self.value, self.canonical_side())
    }
}

pub(crate) fn mask_value<C: Capacity>(edges: &[(usize, usize, C)], in_side: &[bool]) -> C {
    edges
        .iter()
        .filter(|&&(u, v, _)| in_side[u] != in_side[v])
        .fold(C::ZERO, |acc, &(_, _, w)| acc + w)
}

/// Capacity of the original edges with exactly one endpoint in `side`.
pub fn cut_value<C: Capacity>(g: &ContractibleGraph<C>, side: &[usize]) -> Result<C> {
    Cut::from_side(g, side).map(|c| c.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn cut_values() {
        let c4 = build_graph(4, &[(0, 1, 1u64), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap();
        assert_eq!(cut_value(&c4, &[0, 1]), Ok(2));
        let k4: Vec<_> = (0..4).flat_map(|u| ((u + 1)..4).map(move |v| (u, v, 1u64))).collect();
        let k4 = build_graph(4, &k4).unwrap();
        assert_eq!(cut_value(&k4, &[0]), Ok(3));
        let path = build_graph(3, &[(0, 1, 1u64), (1, 2, 1)]).unwrap();
        assert_eq!(cut_value(&path, &[0]), Ok(1));
    }

    #[test]
    fn trivial_sides_rejected() {
        let path = build_graph(3, &[(0, 1, 1u64), (1, 2, 1)]).unwrap();
        assert_eq!(cut_value(&path, &[]), Err(Error::TrivialSide));
        assert_eq!(cut_value(&path, &[0, 1, 2]), Err(Error::TrivialSide));
    }

    #[test]
    fn complement_is_equal() {
        let path = build_graph(3, &[(0, 1, 1u64), (1, 2, 1)]).unwrap();
        let a = Cut::from_side(&path, &[0]).unwrap();
        let b = Cut::from_side(&path, &[1, 2]).unwrap();
        let c = Cut::from_side(&path, &[1]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(b.canonical_side(), vec![0]);
        assert_eq!(b.bits(), Some(1));
    }
}
