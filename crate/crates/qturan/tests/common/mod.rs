//! Independent oracles for the acceptance suite. Nothing here may touch the
//! canonical-form code path it is checking: isomorphism is decided by raw
//! permutation search.

use qturan::containment::is_free;
use qturan::graph::Graph;

/// Exact isomorphism test by brute-force permutation search with a degree
/// sequence prefilter.
pub fn permutation_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    // backtracking over images of 0..n with degree and edge-consistency checks
    let mut image = vec![usize::MAX; n];
    let mut used = 0u64;
    fn rec(g: &Graph, h: &Graph, v: usize, image: &mut Vec<usize>, used: &mut u64) -> bool {
        let n = g.n();
        if v == n {
            return true;
        }
        for w in 0..n {
            if (*used >> w) & 1 == 1 || g.degree(v) != h.degree(w) {
                continue;
            }
            let consistent = (0..v).all(|u| g.has_edge(u, v) == h.has_edge(image[u], w));
            if !consistent {
                continue;
            }
            image[v] = w;
            *used |= 1 << w;
            if rec(g, h, v + 1, image, used) {
                return true;
            }
            image[v] = usize::MAX;
            *used &= !(1 << w);
        }
        false
    }
    rec(g, h, 0, &mut image, &mut used)
}

/// All labeled graphs on n vertices (optionally F-free), grouped into
/// isomorphism classes by pairwise permutation search. Returns one
/// representative per class. Feasible for n <= 6.
pub fn brute_force_classes(n: usize, forbidden: Option<&Graph>) -> Vec<Graph> {
    assert!(n <= 6, "labeled brute force is for n <= 6");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut reps: Vec<Graph> = Vec::new();
    for bits in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| (bits >> i) & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges);
        if let Some(f) = forbidden {
            if !is_free(&g, f) {
                continue;
            }
        }
        if !reps.iter().any(|r| permutation_isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}
