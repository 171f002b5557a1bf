//! Fixtures shared by the criterion benches.

use mincut_core::{generate, ContractibleGraph, GeneratorKind};

pub fn unit_cycle(n: usize) -> ContractibleGraph {
    generate(&GeneratorKind::Cycle { n }, 0).expect("cycle").graph
}

/// Dense random graph with edge probability 1/2 and capacities in 1..=10.
pub fn dense_random(n: usize, seed: u64) -> ContractibleGraph {
    let kind = GeneratorKind::Random { n, edge_probability: 0.5, min_capacity: 1, max_capacity: 10 };
    generate(&kind, seed).expect("dense random graphs connect").graph
}
