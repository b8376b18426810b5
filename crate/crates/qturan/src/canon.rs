//! Canonical labeling for graphs on at most 16 vertices: iterative color
//! refinement plus backtracking over the first non-singleton color class.
//!
//! The canonical code is the lexicographically largest upper-triangle bit
//! string of the adjacency matrix over all orderings consistent with the
//! refinement tree. Two graphs are isomorphic iff their codes agree. A
//! fully homogeneous stable partition (every cell pair uniformly complete
//! or empty) short-circuits the search, which keeps highly symmetric
//! graphs (empty, complete, unions of cliques) cheap.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Order cap: codes are upper-triangle bit strings packed into a `u128`.
pub const CANON_MAX: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonResult {
    /// Upper triangle of the canonical adjacency, row-major, MSB-first.
    pub code: u128,
    /// `labeling[old] = new` position in the canonical order.
    pub labeling: Vec<usize>,
}

impl CanonResult {
    /// The vertex placed last in the canonical order (the designated
    /// deletion vertex of the augmentation scheme).
    pub fn last_vertex(&self) -> usize {
        let n = self.labeling.len();
        self.labeling.iter().position(|&p| p == n - 1).expect("labeling is a permutation")
    }
}

/// Pack the upper triangle of `g`'s adjacency under identity labeling.
pub fn code_of(g: &Graph) -> u128 {
    let n = g.n();
    let mut code = 0u128;
    for u in 0..n {
        for v in (u + 1)..n {
            code = (code << 1) | u128::from(g.has_edge(u, v));
        }
    }
    code
}

fn code_under(g: &Graph, position_of: &[usize]) -> u128 {
    // position_of[old] = new; we need adjacency in new order
    let n = g.n();
    let mut old_at = vec![0usize; n];
    for (old, &new) in position_of.iter().enumerate() {
        old_at[new] = old;
    }
    let mut code = 0u128;
    for u in 0..n {
        for v in (u + 1)..n {
            code = (code << 1) | u128::from(g.has_edge(old_at[u], old_at[v]));
        }
    }
    code
}

/// Canonical code and labeling.
pub fn canonical_form(g: &Graph) -> Result<CanonResult> {
    let n = g.n();
    if n > CANON_MAX {
        return Err(Error::Capacity {
            what: "canonical form order",
            limit: CANON_MAX,
            got: n,
        });
    }
    if n == 0 {
        return Ok(CanonResult {
            code: 0,
            labeling: vec![],
        });
    }
    let mut best: Option<CanonResult> = None;
    search(g, &refine(g, vec![0; n]), &mut best);
    Ok(best.expect("search visits at least one leaf"))
}

/// Canonical representative: `g` relabeled into canonical order.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let c = canonical_form(g)?;
    Ok(g.permuted(&c.labeling))
}

pub fn canonical_code(g: &Graph) -> Result<u128> {
    Ok(canonical_form(g)?.code)
}

/// Isomorphism test through canonical codes.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(canonical_code(g)? == canonical_code(h)?)
}

/// Stable coloring under 1-dimensional refinement: a vertex signature is
/// (own color, sorted multiset of neighbor colors); new color indices are
/// assigned in sorted signature order, so they are isomorphism-invariant.
fn refine(g: &Graph, mut colors: Vec<u32>) -> Vec<u32> {
    let n = g.n();
    loop {
        let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nbr: Vec<u32> = g.neighbors(v).iter().map(|u| colors[u]).collect();
            nbr.sort_unstable();
            sigs.push((colors[v], nbr));
        }
        let mut uniq: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        uniq.sort();
        uniq.dedup();
        let new_colors: Vec<u32> = sigs
            .iter()
            .map(|s| uniq.binary_search(&s).unwrap() as u32)
            .collect();
        let stable = {
            let old_count = {
                let mut c: Vec<u32> = colors.clone();
                c.sort_unstable();
                c.dedup();
                c.len()
            };
            old_count == uniq.len()
        };
        colors = new_colors;
        if stable {
            return colors;
        }
    }
}

/// Cells of a coloring, ordered by color.
fn cells_of(colors: &[u32]) -> Vec<Vec<usize>> {
    let mut max = 0;
    for &c in colors {
        max = max.max(c as usize);
    }
    let mut cells = vec![Vec::new(); max + 1];
    for (v, &c) in colors.iter().enumerate() {
        cells[c as usize].push(v);
    }
    cells
}

/// True when every pair of cells is adjacency-homogeneous, so any
/// cell-respecting order yields the same adjacency matrix.
fn fully_homogeneous(g: &Graph, cells: &[Vec<usize>]) -> bool {
    for (i, ci) in cells.iter().enumerate() {
        // within-cell: complete or empty
        if ci.len() > 1 {
            let first = g.has_edge(ci[0], ci[1]);
            for a in 0..ci.len() {
                for b in (a + 1)..ci.len() {
                    if g.has_edge(ci[a], ci[b]) != first {
                        return false;
                    }
                }
            }
        }
        for cj in cells.iter().skip(i + 1) {
            let first = g.has_edge(ci[0], cj[0]);
            for &a in ci {
                for &b in cj {
                    if g.has_edge(a, b) != first {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn leaf_from_cells(g: &Graph, cells: &[Vec<usize>], best: &mut Option<CanonResult>) {
    let n = g.n();
    let mut position_of = vec![0usize; n];
    let mut pos = 0;
    for cell in cells {
        for &v in cell {
            position_of[v] = pos;
            pos += 1;
        }
    }
    let code = code_under(g, &position_of);
    if best.as_ref().map_or(true, |b| code > b.code) {
        *best = Some(CanonResult {
            code,
            labeling: position_of,
        });
    }
}

fn search(g: &Graph, colors: &Vec<u32>, best: &mut Option<CanonResult>) {
    let cells = cells_of(colors);
    if cells.iter().all(|c| c.len() == 1) || fully_homogeneous(g, &cells) {
        leaf_from_cells(g, &cells, best);
        return;
    }
    // branch on the first non-singleton cell (invariant choice)
    let target = cells.iter().find(|c| c.len() > 1).expect("non-discrete");
    for &v in target {
        // individualize v: give it a color just below its cell
        let mut c2: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
        c2[v] = 2 * colors[v];
        search(g, &refine(g, c2), best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;
    use crate::testutil::random_graph;
    use proptest::prelude::*;

    #[test]
    fn invariance_under_relabeling_small() {
        // every labeled graph on 4 vertices maps to one of 11 codes
        let mut codes = std::collections::HashSet::new();
        for bits in 0u32..64 {
            let mut edges = Vec::new();
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if (bits >> i) & 1 == 1 {
                    edges.push((u, v));
                }
            }
            codes.insert(canonical_code(&Graph::from_edges(4, &edges)).unwrap());
        }
        assert_eq!(codes.len(), 11);
    }

    #[test]
    fn canonical_graph_is_isomorphic_relabeling() {
        for seed in 0..50u64 {
            let g = random_graph(8, seed * 3 + 1);
            let c = canonical_form(&g).unwrap();
            let h = g.permuted(&c.labeling);
            assert_eq!(code_of(&h), c.code);
            assert_eq!(h.edge_count(), g.edge_count());
        }
    }

    #[test]
    fn symmetric_graphs_are_fast_and_stable() {
        // these have huge automorphism groups; the homogeneity shortcut
        // must keep them cheap and correct
        for g in [
            Graph::empty(12),
            Graph::complete(12),
            crate::families::turan(3, 12).unwrap(),
            crate::families::complete_multipartite(&[4, 4, 4]).unwrap(),
            cycle(11),
        ] {
            let c1 = canonical_code(&g).unwrap();
            let perm: Vec<usize> = (0..g.n()).map(|v| (v * 5 + 3) % g.n()).collect();
            let c2 = canonical_code(&g.permuted(&perm)).unwrap();
            assert_eq!(c1, c2);
        }
    }

    #[test]
    fn last_vertex_is_consistent() {
        let g = crate::graph::path(5);
        let c = canonical_form(&g).unwrap();
        let v = c.last_vertex();
        assert_eq!(c.labeling[v], 4);
    }

    #[test]
    fn capacity_error_above_16() {
        assert!(canonical_form(&Graph::empty(17)).is_err());
    }

    proptest! {
        #[test]
        fn code_is_permutation_invariant(n in 1usize..=8, seed in any::<u64>(), pseed in any::<u64>()) {
            let g = random_graph(n, seed);
            let mut perm: Vec<usize> = (0..n).collect();
            // Fisher-Yates with a cheap xorshift
            let mut st = pseed | 1;
            for i in (1..n).rev() {
                st ^= st << 13; st ^= st >> 7; st ^= st << 17;
                let j = (st % (i as u64 + 1)) as usize;
                perm.swap(i, j);
            }
            let h = g.permuted(&perm);
            prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
        }

        #[test]
        fn distinct_codes_mean_non_isomorphic(seed1 in any::<u64>(), seed2 in any::<u64>()) {
            let g = random_graph(6, seed1);
            let h = random_graph(6, seed2);
            if canonical_code(&g).unwrap() == canonical_code(&h).unwrap() {
                // equal codes: must really be isomorphic — the canonical
                // graphs coincide as labeled graphs
                prop_assert_eq!(canonical_graph(&g).unwrap(), canonical_graph(&h).unwrap());
            } else {
                prop_assert!(g.edge_count() != h.edge_count()
                    || canonical_graph(&g).unwrap() != canonical_graph(&h).unwrap());
            }
        }
    }
}
