//! Shared test helpers.

use crate::graph::Graph;

/// Deterministic pseudo-random graph from a seed (xorshift over pairs).
pub fn random_graph(n: usize, seed: u64) -> Graph {
    let mut state = seed | 1;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if next() & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}
