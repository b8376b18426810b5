//! Subgraph containment (not necessarily induced), F-free / F-saturated
//! predicates, exact chromatic number and color-criticality.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};

/// Injective map V(F) -> V(G) sending every edge of F to an edge of G.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    /// `map[f_vertex] = g_vertex`
    pub map: Vec<usize>,
}

impl EmbeddingWitness {
    /// Re-check the witness against the two graphs.
    pub fn verify(&self, g: &Graph, f: &Graph) -> bool {
        if self.map.len() != f.n() {
            return false;
        }
        let mut used = 0u64;
        for &v in &self.map {
            if v >= g.n() || (used >> v) & 1 == 1 {
                return false;
            }
            used |= 1 << v;
        }
        f.edges().iter().all(|&(u, v)| g.has_edge(self.map[u], self.map[v]))
    }
}

/// Search for F as a subgraph of G. Returns a witness when one exists.
///
/// Backtracking over F-vertices ordered by descending degree (ties broken
/// toward vertices adjacent to the already-mapped prefix), with candidate
/// filtering by degree and bitset intersection of mapped neighborhoods.
pub fn contains(g: &Graph, f: &Graph) -> Option<EmbeddingWitness> {
    contains_with_classes(g, f, None)
}

/// Like [`contains`], but when `classes` is given, F-vertex `i` may only map
/// into `classes[i]`.
pub fn contains_with_classes(
    g: &Graph,
    f: &Graph,
    classes: Option<&[VertexSet]>,
) -> Option<EmbeddingWitness> {
    if f.n() == 0 {
        return Some(EmbeddingWitness { map: vec![] });
    }
    if f.n() > g.n() || f.edge_count() > g.edge_count() || f.max_degree() > g.max_degree() {
        return None;
    }

    // Order: repeatedly take the unplaced F-vertex with the most placed
    // neighbors, breaking ties by descending degree. Keeps the frontier
    // connected so the bitset filter bites early.
    let fname = order_by_connectivity(f);

    let mut map = vec![usize::MAX; f.n()];
    let mut used = VertexSet::empty();
    if place(g, f, classes, &fname, 0, &mut map, &mut used) {
        let w = EmbeddingWitness { map };
        debug_assert!(w.verify(g, f));
        Some(w)
    } else {
        None
    }
}

fn order_by_connectivity(f: &Graph) -> Vec<usize> {
    let n = f.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let placed_nbrs = f
                    .neighbors(v)
                    .iter()
                    .filter(|&u| placed[u])
                    .count();
                (placed_nbrs, f.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    order
}

fn place(
    g: &Graph,
    f: &Graph,
    classes: Option<&[VertexSet]>,
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let fv = order[depth];
    // Candidates: unused, inside the class restriction, adjacent in G to the
    // images of all already-placed F-neighbors.
    let mut cand = VertexSet::full(g.n()).0 & !used.0;
    if let Some(cl) = classes {
        cand &= cl[fv].0;
    }
    for u in f.neighbors(fv).iter() {
        if map[u] != usize::MAX {
            cand &= g.row(map[u]);
        }
    }
    let need_deg = f.degree(fv);
    for gv in VertexSet(cand).iter() {
        if g.degree(gv) < need_deg {
            continue;
        }
        map[fv] = gv;
        used.insert(gv);
        if place(g, f, classes, order, depth + 1, map, used) {
            return true;
        }
        map[fv] = usize::MAX;
        used.0 &= !(1 << gv);
    }
    false
}

/// True when `g` is F-free: no copy of `f` as a subgraph.
pub fn is_free(g: &Graph, f: &Graph) -> bool {
    contains(g, f).is_none()
}

/// True when `g` is F-saturated: F-free, and adding any non-edge creates a
/// copy of F. Errors when `g` is not F-free to begin with.
pub fn is_saturated(g: &Graph, f: &Graph) -> Result<bool> {
    if !is_free(g, f) {
        return Err(Error::Precondition("graph already contains F".into()));
    }
    Ok(g.non_edges()
        .into_iter()
        .all(|(u, v)| contains(&g.with_edge(u, v), f).is_some()))
}

/// Hard cap for the exact chromatic number search.
pub const CHROMATIC_MAX: usize = 16;

/// Exact chromatic number by branch and bound (greedy upper bound, clique
/// lower bound, then k-colorability checks).
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    if g.n() > CHROMATIC_MAX {
        return Err(Error::Capacity {
            what: "chromatic number order",
            limit: CHROMATIC_MAX,
            got: g.n(),
        });
    }
    if g.n() == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    let lower = greedy_clique(g);
    let upper = greedy_coloring(g);
    for k in lower..upper {
        if k_colorable(g, k) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn greedy_clique(g: &Graph) -> usize {
    // grow a clique from each start vertex, keep the best
    let mut best = 1;
    for start in 0..g.n() {
        let mut clique = VertexSet::from_iter([start]);
        let mut cand = g.neighbors(start);
        while let Some(v) = cand
            .iter()
            .max_by_key(|&v| (g.row(v) & cand.0).count_ones())
        {
            clique.insert(v);
            cand = VertexSet(cand.0 & g.row(v));
        }
        best = best.max(clique.len());
    }
    best
}

fn greedy_coloring(g: &Graph) -> usize {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colors = vec![usize::MAX; g.n()];
    let mut count = 0;
    for &v in &order {
        let mut banned = 0u64;
        for u in g.neighbors(v).iter() {
            if colors[u] != usize::MAX {
                banned |= 1 << colors[u];
            }
        }
        let c = (!banned).trailing_zeros() as usize;
        colors[v] = c;
        count = count.max(c + 1);
    }
    count
}

fn k_colorable(g: &Graph, k: usize) -> bool {
    // vertices in descending degree order; color classes are interchangeable,
    // so a new color index may only be opened one past the current maximum
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colors = vec![usize::MAX; g.n()];
    fn rec(g: &Graph, order: &[usize], k: usize, depth: usize, maxused: usize, colors: &mut Vec<usize>) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let mut banned = 0u64;
        for u in g.neighbors(v).iter() {
            if colors[u] != usize::MAX {
                banned |= 1 << colors[u];
            }
        }
        let limit = k.min(maxused + 1);
        for c in 0..limit {
            if (banned >> c) & 1 == 1 {
                continue;
            }
            colors[v] = c;
            if rec(g, order, k, depth + 1, maxused.max(c + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
        false
    }
    rec(g, &order, k, 0, 0, &mut colors)
}

/// True when some single edge deletion lowers the chromatic number.
pub fn is_color_critical(g: &Graph) -> Result<bool> {
    let chi = chromatic_number(g)?;
    if chi <= 1 {
        return Ok(false);
    }
    for (u, v) in g.edges() {
        if chromatic_number(&g.without_edge(u, v))? == chi - 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{fan, turan};
    use crate::graph::cycle;
    use crate::testutil::random_graph;

    #[test]
    fn contains_pinned_values() {
        assert!(contains(&cycle(5), &Graph::complete(3)).is_none());
        assert!(contains(&Graph::complete(4), &crate::graph::path(3)).is_some());

        // T_3(6) plus one internal edge contains K_4
        let t = turan(3, 6).unwrap().with_edge(0, 1);
        let w = contains(&t, &Graph::complete(4)).unwrap();
        assert!(w.verify(&t, &Graph::complete(4)));

        // pure T_3(6) does not
        assert!(is_free(&turan(3, 6).unwrap(), &Graph::complete(4)));
    }

    #[test]
    fn contains_is_monotone_under_edge_addition() {
        for seed in 0..40u64 {
            let g = random_graph(7, seed + 1);
            let f = random_graph(4, seed * 31 + 5);
            if contains(&g, &f).is_some() {
                for (u, v) in g.non_edges() {
                    assert!(contains(&g.with_edge(u, v), &f).is_some());
                }
            }
        }
    }

    #[test]
    fn freeness_closed_under_deletion() {
        let f = Graph::complete(3);
        for seed in 0..30u64 {
            let mut g = random_graph(8, seed * 13 + 3);
            while !is_free(&g, &f) {
                // delete an arbitrary edge and re-check: once free, deleting
                // further edges must keep it free
                let (u, v) = g.edges()[0];
                g = g.without_edge(u, v);
            }
            let mut h = g.clone();
            while h.edge_count() > 0 {
                let (u, v) = h.edges()[0];
                h = h.without_edge(u, v);
                assert!(is_free(&h, &f));
            }
        }
    }

    #[test]
    fn saturation_pinned_values() {
        let k4 = Graph::complete(4);
        assert!(is_saturated(&turan(3, 7).unwrap(), &k4).unwrap());

        let k3 = Graph::complete(3);
        assert!(!is_saturated(&Graph::empty(5), &k3).unwrap());
        let k23 = Graph::empty(2).join(&Graph::empty(3)).unwrap();
        assert!(is_saturated(&k23, &k3).unwrap());

        // precondition: g must be F-free
        assert!(is_saturated(&Graph::complete(5), &k3).is_err());
    }

    #[test]
    fn chromatic_pinned_values() {
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), 3);
        assert!(is_color_critical(&cycle(5)).unwrap());
        assert_eq!(chromatic_number(&Graph::complete(4)).unwrap(), 4);
        assert!(is_color_critical(&Graph::complete(4)).unwrap());
        assert_eq!(chromatic_number(&fan(2, 3).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::empty(6)).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::empty(0)).unwrap(), 0);
        // C_6 is bipartite; deleting an edge leaves P_6 which is still 2-chromatic
        assert_eq!(chromatic_number(&cycle(6)).unwrap(), 2);
        assert!(!is_color_critical(&cycle(6)).unwrap());
    }

    #[test]
    fn chromatic_of_turan_graphs() {
        for r in 1..=5 {
            for n in r..=15 {
                assert_eq!(chromatic_number(&turan(r, n).unwrap()).unwrap(), r, "T_{r}({n})");
            }
        }
    }

    #[test]
    fn chromatic_capacity_error() {
        assert!(matches!(
            chromatic_number(&Graph::empty(17)),
            Err(Error::Capacity { .. })
        ));
    }
}
