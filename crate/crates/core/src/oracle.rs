//! Exact minimum cuts used as ground truth.
//!
//! Both solvers work on the original (uncontracted) graph. Cuts are
//! identified by the side containing vertex 0, so deduplication and tie
//! breaking are deterministic.

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{ContractibleGraph, Cut};

/// Largest vertex count accepted by the exhaustive solvers.
pub const BRUTE_FORCE_LIMIT: usize = 24;

fn dense<C: Capacity>(g: &ContractibleGraph<C>) -> Vec<Vec<C>> {
    let n = g.n_original();
    let mut w = vec![vec![C::ZERO; n]; n];
    for &(u, v, c) in g.original_edges() {
        w[u][v] = c;
        w[v][u] = c;
    }
    w
}

/// Visits every nontrivial side containing vertex 0 in Gray-code order,
/// passing `(mask over vertices 1..n, cut value)`.
fn for_each_side<C: Capacity>(g: &ContractibleGraph<C>, mut visit: impl FnMut(u32, C)) -> Result<()> {
    let n = g.n_original();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleTooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    let w = dense(g);
    let degree: Vec<C> = w.iter().map(|row| row.iter().fold(C::ZERO, |a, &b| a + b)).collect();
    let mut inside = vec![false; n];
    inside[0] = true;
    let full = (1u32 << (n - 1)) - 1;
    let mut value = degree[0];
    visit(0, value);
    for i in 1u32..=full {
        let v = i.trailing_zeros() as usize + 1;
        let toward_side = (0..n)
            .filter(|&x| x != v && inside[x])
            .fold(C::ZERO, |acc, x| acc + w[v][x]);
        value = if inside[v] {
            (value + toward_side + toward_side) - degree[v]
        } else {
            (value + degree[v]) - (toward_side + toward_side)
        };
        inside[v] = !inside[v];
        let gray = i ^ (i >> 1);
        if gray != full {
            visit(gray, value);
        }
    }
    Ok(())
}

fn cut_from_bits<C: Capacity>(g: &ContractibleGraph<C>, bits: u32) -> Result<Cut<C>> {
    let in_side = (0..g.n_original()).map(|v| v == 0 || bits & (1 << (v - 1)) != 0).collect();
    Cut::from_mask(g, in_side)
}

/// Exhaustive minimum over all `2^(n-1) - 1` sides containing vertex 0.
/// Ties go to the smallest side bitmask.
pub fn brute_force_min_cut<C: Capacity>(g: &ContractibleGraph<C>) -> Result<Cut<C>> {
    let mut best: Option<(C, u32)> = None;
    for_each_side(g, |bits, value| {
        let better = match best {
            None => true,
            Some((v, b)) => value < v || (value == v && bits < b),
        };
        if better {
            best = Some((value, bits));
        }
    })?;
    let (_, bits) = best.expect("n >= 2 has a nontrivial side");
    cut_from_bits(g, bits)
}

/// Every minimum cut, one per bipartition, ordered by the bitmask of the
/// side containing vertex 0.
pub fn enumerate_min_cuts<C: Capacity>(g: &ContractibleGraph<C>) -> Result<Vec<Cut<C>>> {
    let mut best: Option<C> = None;
    let mut sides = Vec::new();
    for_each_side(g, |bits, value| match best {
        Some(v) if value > v => {}
        Some(v) if value == v => sides.push(bits),
        _ => {
            best = Some(value);
            sides.clear();
            sides.push(bits);
        }
    })?;
    sides.sort_unstable();
    sides.into_iter().map(|bits| cut_from_bits(g, bits)).collect()
}

/// Exact global minimum cut by repeated maximum-adjacency ordering
/// (Stoer–Wagner), `O(n^3)`.
pub fn deterministic_min_cut<C: Capacity>(g: &ContractibleGraph<C>) -> Result<Cut<C>> {
    let n = g.n_original();
    let mut w = dense(g);
    let probe = ContractibleGraph::new(n, g.original_edges())?;
    if !probe.is_connected() {
        return Err(Error::Disconnected);
    }

    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(C, Vec<usize>)> = None;
    let mut attach = vec![C::ZERO; n];
    let mut added = vec![false; n];

    while active.len() > 1 {
        for &v in &active {
            attach[v] = C::ZERO;
            added[v] = false;
        }
        let mut prev = active[0];
        let mut last = prev;
        added[prev] = true;
        for &v in &active {
            attach[v] = w[prev][v];
        }
        for _ in 1..active.len() {
            let next = active
                .iter()
                .copied()
                .filter(|&v| !added[v])
                .reduce(|a, b| if attach[b] > attach[a] { b } else { a })
                .expect("unadded vertex remains");
            added[next] = true;
            prev = last;
            last = next;
            for &v in &active {
                if !added[v] {
                    attach[v] = attach[v] + w[next][v];
                }
            }
        }
        let (s, t) = (prev, last);
        let phase = attach[t];
        if best.as_ref().is_none_or(|(v, _)| phase < *v) {
            best = Some((phase, groups[t].clone()));
        }
        for &v in &active {
            if v != s && v != t {
                w[s][v] = w[s][v] + w[t][v];
                w[v][s] = w[s][v];
            }
        }
        let moved = std::mem::take(&mut groups[t]);
        groups[s].extend(moved);
        active.retain(|&v| v != t);
    }

    let (_, side) = best.expect("n >= 2 runs at least one phase");
    Cut::from_side(g, &side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, generate, GeneratorKind};

    fn cycle(n: usize) -> ContractibleGraph {
        generate(&GeneratorKind::Cycle { n }, 0).unwrap().graph
    }

    fn path3() -> ContractibleGraph {
        build_graph(3, &[(0, 1, 1u64), (1, 2, 1)]).unwrap()
    }

    fn k4() -> ContractibleGraph {
        generate(&GeneratorKind::Complete { n: 4 }, 0).unwrap().graph
    }

    #[test]
    fn small_known_values() {
        assert_eq!(brute_force_min_cut(&path3()).unwrap().value(), 1);
        assert_eq!(brute_force_min_cut(&k4()).unwrap().value(), 3);
        assert_eq!(brute_force_min_cut(&cycle(5)).unwrap().value(), 2);
        // smallest mask wins: side {0}
        assert_eq!(brute_force_min_cut(&cycle(5)).unwrap().canonical_side(), vec![0]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_min_cuts(&cycle(5)).unwrap().len(), 10);
        let p = enumerate_min_cuts(&path3()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].canonical_side(), vec![0]);
        assert_eq!(p[1].canonical_side(), vec![0, 1]);
        let k = enumerate_min_cuts(&k4()).unwrap();
        assert_eq!(k.len(), 4);
        assert!(k.iter().all(|c| c.value() == 3 && (c.side().len() == 1 || c.side().len() == 3)));
        for n in 3..=12 {
            assert_eq!(enumerate_min_cuts(&cycle(n)).unwrap().len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn too_large_for_brute_force() {
        let g = cycle(25);
        assert_eq!(
            brute_force_min_cut(&g).unwrap_err(),
            Error::OracleTooLarge { n: 25, limit: BRUTE_FORCE_LIMIT }
        );
    }

    #[test]
    fn deterministic_agrees_with_brute_force() {
        for seed in 0..60 {
            let n = 4 + (seed as usize % 9);
            let kind = GeneratorKind::Random {
                n,
                edge_probability: 0.45,
                min_capacity: 1,
                max_capacity: 8,
            };
            let g = generate(&kind, seed).unwrap().graph;
            let a = brute_force_min_cut(&g).unwrap();
            let b = deterministic_min_cut(&g).unwrap();
            assert_eq!(a.value(), b.value(), "seed {seed}");
        }
    }

    #[test]
    fn deterministic_large_cycle() {
        assert_eq!(deterministic_min_cut(&cycle(100)).unwrap().value(), 2);
    }

    #[test]
    fn deterministic_rejects_disconnected() {
        let g = build_graph(4, &[(0, 1, 1u64), (2, 3, 1)]).unwrap();
        assert_eq!(deterministic_min_cut(&g).unwrap_err(), Error::Disconnected);
        // exhaustive search happily reports the zero cut
        assert_eq!(brute_force_min_cut(&g).unwrap().value(), 0);
    }

    #[test]
    fn planted_cut_is_minimum() {
        let kind = GeneratorKind::Planted { left: 4, right: 4, intra: 10, inter: 1, crossing: 2 };
        let out = generate(&kind, 0).unwrap();
        let planted = out.planted.unwrap();
        let brute = brute_force_min_cut(&out.graph).unwrap();
        assert_eq!(brute.value(), 2);
        assert_eq!(brute, planted);
        assert_eq!(deterministic_min_cut(&out.graph).unwrap().value(), 2);
    }

    #[test]
    fn fractional_oracle() {
        let g = build_graph(3, &[(0, 1, 0.5f64), (1, 2, 1.5), (0, 2, 0.75)]).unwrap();
        assert_eq!(brute_force_min_cut(&g).unwrap().value(), 1.25);
        assert_eq!(deterministic_min_cut(&g).unwrap().value(), 1.25);
    }
}
