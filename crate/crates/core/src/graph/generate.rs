use crate::error::{Error, Result};
use crate::rng::RandomSource;

use super::{build_graph, ContractibleGraph, Cut};

const CONNECT_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorKind {
    /// Unit cycle `0 - 1 - ... - (n-1) - 0`.
    Cycle { n: usize },
    /// Unit complete graph.
    Complete { n: usize },
    /// Two complete clusters joined by `crossing` edges of capacity `inter`.
    /// Vertices `0..left` form the first cluster.
    Planted { left: usize, right: usize, intra: u64, inter: u64, crossing: usize },
    /// Erdős–Rényi `G(n, p)` with integer capacities drawn uniformly from
    /// `min_capacity..=max_capacity`, resampled until connected.
    Random { n: usize, edge_probability: f64, min_capacity: u64, max_capacity: u64 },
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: ContractibleGraph,
    /// The known light cut of a planted instance.
    pub planted: Option<Cut>,
}

pub fn generate(kind: &GeneratorKind, seed: u64) -> Result<Generated> {
    match *kind {
        GeneratorKind::Cycle { n } => {
            check_n(n)?;
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
            plain(build_graph(n, &edges)?)
        }
        GeneratorKind::Complete { n } => {
            check_n(n)?;
            let edges: Vec<_> =
                (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v, 1))).collect();
            plain(build_graph(n, &edges)?)
        }
        GeneratorKind::Planted { left, right, intra, inter, crossing } => {
            planted(left, right, intra, inter, crossing)
        }
        GeneratorKind::Random { n, edge_probability, min_capacity, max_capacity } => {
            random(n, edge_probability, min_capacity, max_capacity, seed)
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::TooFewVertices(n))
    } else {
        Ok(())
    }
}

fn plain(graph: ContractibleGraph) -> Result<Generated> {
    Ok(Generated { graph, planted: None })
}

fn planted(left: usize, right: usize, intra: u64, inter: u64, crossing: usize) -> Result<Generated> {
    check_n(left + right)?;
    if left == 0 || right == 0 {
        return Err(Error::InvalidArgument("planted clusters must be nonempty".into()));
    }
    if crossing == 0 || inter == 0 {
        return Err(Error::Disconnected);
    }
    if crossing > left * right {
        return Err(Error::InvalidArgument(format!(
            "{crossing} crossing edges do not fit between clusters of {left} and {right}"
        )));
    }
    // Any other cut splits a cluster and pays at least (size - 1) * intra.
    let planted_value = crossing as u64 * inter;
    let split_cost = (left.min(right) as u64 - 1) * intra;
    if planted_value > split_cost {
        return Err(Error::InvalidArgument(format!(
            "planted cut value {planted_value} exceeds the cheapest cluster split {split_cost}"
        )));
    }

    let n = left + right;
    let mut edges = Vec::new();
    for (lo, hi) in [(0, left), (left, n)] {
        for u in lo..hi {
            for v in (u + 1)..hi {
                edges.push((u, v, intra));
            }
        }
    }
    let across = (0..right).flat_map(|d| (0..left).map(move |a| (a, left + (a + d) % right)));
    edges.extend(across.take(crossing).map(|(a, b)| (a, b, inter)));

    let graph = build_graph(n, &edges)?;
    let side: Vec<usize> = (0..left).collect();
    let cut = Cut::from_side(&graph, &side)?;
    Ok(Generated { graph, planted: Some(cut) })
}

fn random(n: usize, p: f64, lo: u64, hi: u64, seed: u64) -> Result<Generated> {
    check_n(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability {p} outside [0, 1]")));
    }
    if lo == 0 || lo > hi {
        return Err(Error::InvalidArgument(format!("capacity range {lo}..={hi} is empty or zero")));
    }
    let mut rng = RandomSource::new(seed);
    for _ in 0..CONNECT_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.uniform() < p {
                    edges.push((u, v, lo + rng.below(hi - lo + 1)));
                }
            }
        }
        let graph = build_graph(n, &edges)?;
        if graph.is_connected() {
            return plain(graph);
        }
    }
    Err(Error::Disconnected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_five() {
        let g = generate(&GeneratorKind::Cycle { n: 5 }, 0).unwrap().graph;
        assert_eq!(g.original_edges().len(), 5);
        assert_eq!(g.total_capacity(), 5);
    }

    #[test]
    fn complete_four() {
        let g = generate(&GeneratorKind::Complete { n: 4 }, 0).unwrap().graph;
        assert_eq!(g.original_edges().len(), 6);
        assert_eq!(g.total_capacity(), 6);
    }

    #[test]
    fn planted_reports_cut() {
        let kind = GeneratorKind::Planted { left: 4, right: 4, intra: 10, inter: 1, crossing: 2 };
        let out = generate(&kind, 0).unwrap();
        let cut = out.planted.unwrap();
        assert_eq!(cut.value(), 2);
        assert_eq!(cut.canonical_side(), vec![0, 1, 2, 3]);
        assert_eq!(out.graph.total_capacity(), 12 * 10 + 2);
    }

    #[test]
    fn planted_rejects_bad_parameters() {
        let heavy = GeneratorKind::Planted { left: 3, right: 3, intra: 1, inter: 5, crossing: 1 };
        assert!(matches!(generate(&heavy, 0), Err(Error::InvalidArgument(_))));
        let cut_off = GeneratorKind::Planted { left: 3, right: 3, intra: 1, inter: 1, crossing: 0 };
        assert_eq!(generate(&cut_off, 0).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn random_is_connected_and_seeded() {
        let kind =
            GeneratorKind::Random { n: 12, edge_probability: 0.3, min_capacity: 1, max_capacity: 5 };
        let a = generate(&kind, 17).unwrap().graph;
        let b = generate(&kind, 17).unwrap().graph;
        assert!(a.is_connected());
        assert_eq!(a, b);
        assert!(a.original_edges().iter().all(|&(_, _, w)| (1..=5).contains(&w)));
    }

    #[test]
    fn random_gives_up_when_too_sparse() {
        let kind =
            GeneratorKind::Random { n: 30, edge_probability: 0.0, min_capacity: 1, max_capacity: 1 };
        assert_eq!(generate(&kind, 1).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn too_small() {
        assert_eq!(generate(&GeneratorKind::Cycle { n: 1 }, 0).unwrap_err(), Error::TooFewVertices(1));
    }
}
