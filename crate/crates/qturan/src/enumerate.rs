//! Isomorphism-free generation of all F-free graphs on n vertices, and the
//! extremal records built on top of it: ex(n,F), Ex(n,F), ex_ssp(n,F),
//! Ex_ssp(n,F), the c₀ window sequence and the slope/concentration
//! quantities behind the spectral comparison hypotheses.
//!
//! Generation is canonical augmentation: level k holds one canonical
//! representative per isomorphism class; a child on k+1 vertices (new vertex
//! adjacent to a chosen subset) is kept only if deleting the *canonical*
//! last vertex of the child recovers exactly the parent's class. Each class
//! is therefore produced from exactly one parent class, and a per-parent
//! code set removes duplicates among one parent's subsets. F-containment
//! prunes hereditarily: a parent is an induced subgraph of its children, so
//! once F appears the whole subtree is dead.

use crate::canon::{canonical_form, code_of};
use crate::containment::{chromatic_number, contains, is_free};
use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::families::turan_edge_count;
use crate::graph::{graph6_encode, Graph, VertexSet};
use crate::spectral::q_radius;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

/// Default order cap for full enumeration.
pub const ENUMERATE_DEFAULT_MAX: usize = 10;
/// Hard cap (the canonical-form machinery stops at 16; class counts explode
/// well before that).
pub const ENUMERATE_HARD_MAX: usize = 12;

/// Relative tolerance within which two spectral radii count as equal.
pub const SSP_TIE_REL: f64 = 1e-9;
/// Relative tolerance for the near-tie annex.
pub const SSP_NEAR_TIE_REL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct EnumStats {
    /// Classes on the target order n.
    pub classes: u64,
    /// Children examined across all levels.
    pub expansions: u64,
}

/// Stream one canonical representative per isomorphism class of F-free
/// graphs on `n` vertices into `visit`, in canonical-code order.
///
/// `forbidden = None` enumerates all graphs. `budget` caps the number of
/// child expansions; exhausting it aborts with a progress marker.
pub fn enumerate_ffree(
    n: usize,
    forbidden: Option<&Graph>,
    budget: Option<u64>,
    par: &Parallelism,
    mut visit: impl FnMut(&Graph),
) -> Result<EnumStats> {
    let (classes, expansions) = run_levels(n, forbidden, budget, par, |level, graphs| {
        if level == n {
            for g in graphs {
                visit(g);
            }
        }
    })?;
    Ok(EnumStats {
        classes,
        expansions,
    })
}

/// As [`enumerate_ffree`], returning the final level as a vector.
pub fn enumerate_ffree_collect(
    n: usize,
    forbidden: Option<&Graph>,
    budget: Option<u64>,
    par: &Parallelism,
) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    run_levels(n, forbidden, budget, par, |level, graphs| {
        if level == n {
            out = graphs.to_vec();
        }
    })?;
    Ok(out)
}

/// Level-by-level driver; calls `on_level(k, &graphs)` for every level.
/// Returns (classes at n, total expansions).
fn run_levels(
    n: usize,
    forbidden: Option<&Graph>,
    budget: Option<u64>,
    par: &Parallelism,
    mut on_level: impl FnMut(usize, &[Graph]),
) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::invalid("enumeration needs n >= 1"));
    }
    if n > ENUMERATE_HARD_MAX {
        return Err(Error::Capacity {
            what: "enumeration order",
            limit: ENUMERATE_HARD_MAX,
            got: n,
        });
    }
    let k1 = Graph::empty(1);
    if let Some(f) = forbidden {
        if contains(&k1, f).is_some() {
            // F fits in a single vertex: nothing on >= 1 vertices is F-free
            on_level(1, &[]);
            return Ok((0, 0));
        }
    }
    let expansions = AtomicU64::new(0);
    let mut level: Vec<Graph> = vec![k1];
    on_level(1, &level);
    for k in 1..n {
        let results: Vec<Result<Vec<(u128, Graph)>>> = par.install(|| {
            level
                .par_iter()
                .map(|parent| expand_parent(parent, k, forbidden, budget, &expansions))
                .collect()
        });
        let mut children: Vec<(u128, Graph)> = Vec::new();
        for r in results {
            children.extend(r?);
        }
        children.sort_by(|a, b| a.0.cmp(&b.0));
        level = children.into_iter().map(|(_, g)| g).collect();
        on_level(k + 1, &level);
    }
    Ok((level.len() as u64, expansions.load(Ordering::Relaxed)))
}

/// All accepted canonical children of one parent (which is stored in
/// canonical form, so its code is `code_of(parent)`).
fn expand_parent(
    parent: &Graph,
    k: usize,
    forbidden: Option<&Graph>,
    budget: Option<u64>,
    expansions: &AtomicU64,
) -> Result<Vec<(u128, Graph)>> {
    let parent_code = code_of(parent);
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out = Vec::new();
    let subsets = 1u64 << k;
    for s in 0..subsets {
        let used = expansions.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(b) = budget {
            if used > b {
                return Err(Error::BudgetExhausted {
                    expanded: used,
                    marker: graph6_encode(parent).unwrap_or_default(),
                });
            }
        }
        let child = augment(parent, VertexSet(s));
        if let Some(f) = forbidden {
            if creates_copy(&child, f, k) {
                continue;
            }
        }
        let canon = canonical_form(&child)?;
        if !seen.insert(canon.code) {
            continue;
        }
        // canonical-parent rule: deleting the canonical last vertex must
        // recover this parent's class
        let vstar = canon.last_vertex();
        let parent_of_child_code = if vstar == k {
            // deleting the new vertex gives back the parent as a labeled graph
            parent_code
        } else {
            canonical_form(&child.delete_vertex(vstar))?.code
        };
        if parent_of_child_code != parent_code {
            continue;
        }
        out.push((canon.code, child.permuted(&canon.labeling)));
    }
    Ok(out)
}

/// Parent plus a new vertex adjacent to `nbrs`.
fn augment(parent: &Graph, nbrs: VertexSet) -> Graph {
    let k = parent.n();
    let mut adj: Vec<u64> = (0..k).map(|v| parent.row(v)).collect();
    adj.push(0);
    for v in nbrs.iter() {
        adj[v] |= 1 << k;
        adj[k] |= 1 << v;
    }
    Graph::from_adj(adj).expect("augmented rows stay valid")
}

/// Does `g` contain a copy of `f` that uses vertex `v`?
/// (The only new copies an augmentation can create.)
fn creates_copy(g: &Graph, f: &Graph, v: usize) -> bool {
    if f.n() == 0 {
        return true;
    }
    if f.n() > g.n() {
        return false;
    }
    let full = VertexSet::full(g.n());
    let pin = VertexSet::from_iter([v]);
    let mut classes = vec![full; f.n()];
    for fv in 0..f.n() {
        if f.degree(fv) > g.degree(v) {
            continue;
        }
        classes[fv] = pin;
        if crate::containment::contains_with_classes(g, f, Some(&classes)).is_some() {
            return true;
        }
        classes[fv] = full;
    }
    false
}

// ---------------------------------------------------------------------------
// Extremal records
// ---------------------------------------------------------------------------

/// Everything the lab records for one pair (n, F).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub version: u32,
    pub n: usize,
    /// Canonical graph6 of the forbidden graph.
    pub forbidden: String,
    /// ex(n, F): maximum edges over F-free graphs on n vertices.
    pub ex: usize,
    /// Ex(n, F) as canonical graph6, sorted.
    pub ex_graphs: Vec<String>,
    /// ex_ssp(n, F): maximum signless Laplacian radius.
    pub ex_ssp: f64,
    /// Ex_ssp(n, F) within relative tolerance 1e-9, canonical graph6, sorted.
    pub ex_ssp_graphs: Vec<String>,
    /// Graphs within relative 1e-6 of ex_ssp but outside the member
    /// tolerance: the near-tie annex.
    pub near_ties: Vec<String>,
    /// ex - t_r(n) for r = χ(F) - 1 (absent when χ(F) < 2).
    pub c0_term: Option<i64>,
    /// Number of F-free classes streamed.
    pub classes: u64,
}

/// Version stamp for the on-disk record cache.
pub const RECORD_VERSION: u32 = 1;

/// Compute the full extremal record for (n, F) by streaming the F-free
/// classes. `tol` is the eigensolver residual tolerance.
pub fn extremal_record(
    n: usize,
    f: &Graph,
    tol: f64,
    budget: Option<u64>,
    par: &Parallelism,
) -> Result<ExtremalRecord> {
    let f_canon = crate::canon::canonical_graph(f)?;
    let stream = enumerate_ffree_collect(n, Some(f), budget, par)?;
    let classes = stream.len() as u64;

    let mut ex = 0usize;
    let mut ex_graphs: Vec<&Graph> = Vec::new();
    let mut best_q = f64::NEG_INFINITY;
    // (q, graph) of everything within the near-tie bar of the running max
    let mut candidates: Vec<(f64, &Graph)> = Vec::new();

    let radii: Vec<f64> = par.install(|| {
        stream
            .par_iter()
            .map(|g| q_radius(g, tol).map(|r| r.radius))
            .collect::<Result<Vec<f64>>>()
    })?;

    for (g, &q) in stream.iter().zip(&radii) {
        let e = g.edge_count();
        if e > ex {
            ex = e;
            ex_graphs.clear();
        }
        if e == ex {
            ex_graphs.push(g);
        }
        if q > best_q {
            best_q = q;
            candidates.retain(|(cq, _)| *cq >= best_q * (1.0 - SSP_NEAR_TIE_REL));
        }
        if q >= best_q * (1.0 - SSP_NEAR_TIE_REL) {
            candidates.push((q, g));
        }
    }
    if stream.is_empty() {
        return Err(Error::invalid(format!(
            "no F-free graphs on {n} vertices (F fits in a single vertex?)"
        )));
    }

    // re-verification pass: every listed graph must be F-free
    for g in ex_graphs.iter() {
        debug_assert!(is_free(g, f));
        if !is_free(g, f) {
            return Err(Error::Precondition("stream emitted a non-F-free graph".into()));
        }
    }

    let members: Vec<String> = candidates
        .iter()
        .filter(|(q, _)| *q >= best_q * (1.0 - SSP_TIE_REL))
        .map(|(_, g)| graph6_encode(g))
        .collect::<Result<_>>()?;
    let near: Vec<String> = candidates
        .iter()
        .filter(|(q, _)| *q < best_q * (1.0 - SSP_TIE_REL))
        .map(|(_, g)| graph6_encode(g))
        .collect::<Result<_>>()?;
    let mut ex_g6: Vec<String> = ex_graphs
        .iter()
        .map(|g| graph6_encode(g))
        .collect::<Result<_>>()?;
    ex_g6.sort();
    let mut members = members;
    members.sort();
    let mut near = near;
    near.sort();

    // Rayleigh floor: q_max >= q(extremal graph) >= 4 ex / n
    debug_assert!(best_q >= 4.0 * ex as f64 / n as f64 - 1e-9);

    let c0_term = match chromatic_number(f) {
        Ok(chi) if chi >= 2 => {
            let r = chi - 1;
            Some(ex as i64 - turan_edge_count(r, n) as i64)
        }
        _ => None,
    };

    Ok(ExtremalRecord {
        version: RECORD_VERSION,
        n,
        forbidden: graph6_encode(&f_canon)?,
        ex,
        ex_graphs: ex_g6,
        ex_ssp: best_q,
        ex_ssp_graphs: members,
        near_ties: near,
        c0_term,
        classes,
    })
}

/// The window prefix of the c₀ sequence: (n, ex(n,F) - t_r(n)) for each n,
/// with r = χ(F) - 1, plus the window supremum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct C0Window {
    pub r: usize,
    pub terms: Vec<(usize, i64)>,
    /// max over the computed window — an upper-window estimate, not a limit
    pub window_sup: i64,
}

pub fn c0_sequence(
    f: &Graph,
    n_range: std::ops::RangeInclusive<usize>,
    tol: f64,
    par: &Parallelism,
) -> Result<C0Window> {
    let chi = chromatic_number(f)?;
    if chi < 2 {
        return Err(Error::Precondition(
            "c0 sequence needs a forbidden graph with at least one edge".into(),
        ));
    }
    let r = chi - 1;
    let mut terms = Vec::new();
    for n in n_range {
        let rec = extremal_record(n, f, tol, None, par)?;
        terms.push((n, rec.ex as i64 - turan_edge_count(r, n) as i64));
    }
    let window_sup = terms.iter().map(|&(_, t)| t).max().unwrap_or(0);
    Ok(C0Window {
        r,
        terms,
        window_sup,
    })
}

/// Row of the spectral-comparison hypothesis report: both left-hand
/// quantities are observations, never assertions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypothesisRow {
    pub n: usize,
    /// |ex(n,F) - ex(n-1,F) - π(F) n| with π(F) = 1 - 1/r
    pub slope_gap: f64,
    /// |q(G_n) - 4 ex(n,F)/n| over the minimum-degree proxy class, when the
    /// proxy class is nonempty
    pub radius_gap: Option<f64>,
    /// graphs meeting the minimum-degree filter δ(G) > (π(F) - ε) n
    pub proxy_classes: u64,
}

/// Evaluate the two hypothesis quantities over consecutive n. The proxy for
/// the bounded-minimum-degree class uses an explicit ε (the asymptotic
/// bookkeeping has no finite stand-in).
pub fn hypothesis_check_thm25(
    f: &Graph,
    n_range: std::ops::RangeInclusive<usize>,
    eps: f64,
    tol: f64,
    par: &Parallelism,
) -> Result<Vec<HypothesisRow>> {
    let chi = chromatic_number(f)?;
    if chi < 3 {
        return Err(Error::Precondition(
            "hypothesis quantities need χ(F) >= 3 so that π(F) = 1 - 1/r > 0".into(),
        ));
    }
    let r = chi - 1;
    let pi = 1.0 - 1.0 / r as f64;
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if lo < 2 {
        return Err(Error::invalid("hypothesis window needs n >= 2"));
    }
    let mut rows = Vec::new();
    let mut prev_ex = extremal_record(lo - 1, f, tol, None, par)?.ex;
    for n in lo..=hi {
        let stream = enumerate_ffree_collect(n, Some(f), None, par)?;
        let ex = stream.iter().map(|g| g.edge_count()).max().unwrap_or(0);
        let slope_gap = (ex as f64 - prev_ex as f64 - pi * n as f64).abs();
        let min_deg = (pi - eps) * n as f64;
        let proxy: Vec<&Graph> = stream
            .iter()
            .filter(|g| g.min_degree() as f64 > min_deg)
            .collect();
        let radius_gap = if proxy.is_empty() {
            None
        } else {
            let qmax = par.install(|| {
                proxy
                    .par_iter()
                    .map(|g| q_radius(g, tol).map(|r| r.radius))
                    .try_reduce(|| f64::NEG_INFINITY, |a, b| Ok(a.max(b)))
            })?;
            Some((qmax - 4.0 * ex as f64 / n as f64).abs())
        };
        rows.push(HypothesisRow {
            n,
            slope_gap,
            radius_gap,
            proxy_classes: proxy.len() as u64,
        });
        prev_ex = ex;
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::turan;

    fn par() -> Parallelism {
        Parallelism::default()
    }

    #[test]
    fn unrestricted_class_counts() {
        // 1, 2, 4, 11, 34, 156 classes on 1..=6 vertices
        let expect = [1u64, 2, 4, 11, 34, 156];
        for (i, &want) in expect.iter().enumerate() {
            let n = i + 1;
            let got = enumerate_ffree_collect(n, None, None, &par()).unwrap().len() as u64;
            assert_eq!(got, want, "class count at n = {n}");
        }
    }

    #[test]
    fn triangle_free_counts_small() {
        // 7 triangle-free classes on 4 vertices (of 11 total)
        let k3 = Graph::complete(3);
        let got = enumerate_ffree_collect(4, Some(&k3), None, &par()).unwrap();
        assert_eq!(got.len(), 7);
        for g in &got {
            assert!(is_free(g, &k3));
        }
    }

    #[test]
    fn never_contained_forbidden_gives_all_classes() {
        let k100ish = Graph::complete(12); // never fits in 6 vertices
        let got = enumerate_ffree_collect(6, Some(&k100ish), None, &par()).unwrap();
        assert_eq!(got.len(), 156);
    }

    #[test]
    fn single_vertex_cases() {
        let k3 = Graph::complete(3);
        assert_eq!(enumerate_ffree_collect(1, Some(&k3), None, &par()).unwrap().len(), 1);
        // forbidden graph on a single vertex kills everything
        let got = enumerate_ffree_collect(3, Some(&Graph::empty(1)), None, &par()).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn budget_exhaustion_reports_marker() {
        match enumerate_ffree_collect(7, None, Some(50), &par()) {
            Err(Error::BudgetExhausted { expanded, marker }) => {
                assert!(expanded > 50);
                assert!(!marker.is_empty());
            }
            other => panic!("expected budget exhaustion, got {:?}", other.map(|v| v.len())),
        }
    }

    #[test]
    fn stream_is_sorted_and_canonical() {
        let got = enumerate_ffree_collect(5, None, None, &par()).unwrap();
        let codes: Vec<u128> = got.iter().map(code_of).collect();
        let mut sorted = codes.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(codes.len(), sorted.len());
        assert_eq!(codes, sorted);
        for g in &got {
            assert_eq!(code_of(g), crate::canon::canonical_code(g).unwrap());
        }
    }

    #[test]
    fn extremal_record_triangle_n5() {
        // ex(5, K_3) = 6 with Ex = {K_{2,3}}; ex_ssp = 5 attained by both
        // K_{1,4} and K_{2,3}
        let k3 = Graph::complete(3);
        let rec = extremal_record(5, &k3, 1e-10, None, &par()).unwrap();
        assert_eq!(rec.ex, 6);
        let k23 = crate::canon::canonical_graph(
            &Graph::empty(2).join(&Graph::empty(3)).unwrap(),
        )
        .unwrap();
        let k14 = crate::canon::canonical_graph(
            &Graph::empty(1).join(&Graph::empty(4)).unwrap(),
        )
        .unwrap();
        assert_eq!(rec.ex_graphs, vec![graph6_encode(&k23).unwrap()]);
        assert!((rec.ex_ssp - 5.0).abs() < 1e-9);
        let mut want = vec![
            graph6_encode(&k23).unwrap(),
            graph6_encode(&k14).unwrap(),
        ];
        want.sort();
        assert_eq!(rec.ex_ssp_graphs, want);
        assert_eq!(rec.c0_term, Some(0));
        assert_eq!(rec.classes, 14); // triangle-free classes on 5 vertices
    }

    #[test]
    fn extremal_record_k4_n6_and_k3_n4() {
        let k4 = Graph::complete(4);
        let rec = extremal_record(6, &k4, 1e-10, None, &par()).unwrap();
        assert_eq!(rec.ex, 12);
        let t36 = crate::canon::canonical_graph(&turan(3, 6).unwrap()).unwrap();
        assert_eq!(rec.ex_graphs, vec![graph6_encode(&t36).unwrap()]);

        let k3 = Graph::complete(3);
        let rec = extremal_record(4, &k3, 1e-10, None, &par()).unwrap();
        assert_eq!(rec.ex, 4);
        let c4 = crate::canon::canonical_graph(&crate::graph::cycle(4)).unwrap();
        assert_eq!(rec.ex_graphs, vec![graph6_encode(&c4).unwrap()]);
    }

    #[test]
    fn c0_sequence_cliques_vanish() {
        let k4 = Graph::complete(4);
        let w = c0_sequence(&k4, 4..=7, 1e-10, &par()).unwrap();
        assert_eq!(w.r, 3);
        assert!(w.terms.iter().all(|&(_, t)| t == 0), "{:?}", w.terms);
        assert_eq!(w.window_sup, 0);

        let k3 = Graph::complete(3);
        let w = c0_sequence(&k3, 3..=7, 1e-10, &par()).unwrap();
        assert!(w.terms.iter().all(|&(_, t)| t == 0));
    }

    #[test]
    fn hypothesis_rows_pinned() {
        // f = K_4, n = 7: |16 - 12 - (2/3)·7| = 2/3
        let k4 = Graph::complete(4);
        let rows = hypothesis_check_thm25(&k4, 7..=7, 0.1, 1e-10, &par()).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].slope_gap - 2.0 / 3.0).abs() < 1e-12);
        // χ(K_3) = 3 works too: n = 6 gives |9 - 6 - 3| = 0
        let k3 = Graph::complete(3);
        let rows = hypothesis_check_thm25(&k3, 6..=6, 0.1, 1e-10, &par()).unwrap();
        assert!(rows[0].slope_gap.abs() < 1e-12);
        assert!(rows[0].radius_gap.is_some());
    }
}
