//! Exact ε-regularity checking at desk scale: pair densities, exhaustive
//! sub-pair scans, partition irregularity mass, and the counting-lemma
//! premise evaluation with a class-respecting embedding confirmation.

use crate::containment::contains_with_classes;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Cap on |U| and |W| for the exhaustive 2^|U|·2^|W| sub-pair scan.
pub const REGULAR_PAIR_MAX: usize = 14;

/// ε and a vertex partition, as fed to the partition-level checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularityParams {
    pub epsilon: f64,
    /// Classes as vertex bitmasks.
    pub classes: Vec<u64>,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("ε must lie in (0, 1], got {eps}")))
    }
}

/// Edge density d(U, W) = e(U, W) / (|U| |W|) between disjoint nonempty sets.
pub fn density(g: &Graph, u: VertexSet, w: VertexSet) -> Result<f64> {
    if u.is_empty() || w.is_empty() {
        return Err(Error::invalid("density needs nonempty sets"));
    }
    if !u.is_disjoint(w) {
        return Err(Error::invalid("density needs disjoint sets"));
    }
    let full = VertexSet::full(g.n());
    if !u.is_subset_of(full) || !w.is_subset_of(full) {
        return Err(Error::invalid("sets exceed the vertex range"));
    }
    Ok(g.edges_between(u, w) as f64 / (u.len() * w.len()) as f64)
}

/// The sub-pair achieving the worst density deviation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WorstWitness {
    pub a: u64,
    pub b: u64,
    pub deviation: f64,
    pub sub_density: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairVerdict {
    pub regular: bool,
    pub base_density: f64,
    /// Absent when no sub-pair qualifies (cannot happen for ε <= 1 on
    /// nonempty sets, since A = U, B = W always qualifies).
    pub worst: Option<WorstWitness>,
}

/// Exhaustive ε-regularity check of the pair (U, W): every A ⊆ U with
/// |A| >= ⌈ε|U|⌉ and B ⊆ W with |B| >= ⌈ε|W|⌉ must satisfy
/// |d(A,B) - d(U,W)| <= ε. The subset threshold uses the ceiling, since the
/// qualifying condition is stated over the reals.
pub fn is_regular_pair(g: &Graph, u: VertexSet, w: VertexSet, eps: f64) -> Result<PairVerdict> {
    check_eps(eps)?;
    let base_density = density(g, u, w)?; // validates the sets
    let us: Vec<usize> = u.iter().collect();
    let ws: Vec<usize> = w.iter().collect();
    if us.len() > REGULAR_PAIR_MAX || ws.len() > REGULAR_PAIR_MAX {
        return Err(Error::Capacity {
            what: "regular pair side",
            limit: REGULAR_PAIR_MAX,
            got: us.len().max(ws.len()),
        });
    }
    let min_a = (eps * us.len() as f64).ceil() as usize;
    let min_b = (eps * ws.len() as f64).ceil() as usize;
    let min_a = min_a.max(1);
    let min_b = min_b.max(1);

    // For a fixed A, count[wi] = |N(w_i) ∩ A|; then e(A, B) accumulates by
    // iterating B's bits. Parallel over A with a deterministic max-reduction.
    let worst = (1u64..(1 << us.len()))
        .into_par_iter()
        .filter(|a_bits| (a_bits.count_ones() as usize) >= min_a)
        .map(|a_bits| {
            let a_set = expand(&us, a_bits);
            let counts: Vec<usize> = ws
                .iter()
                .map(|&wv| (g.row(wv) & a_set).count_ones() as usize)
                .collect();
            let asz = a_bits.count_ones() as usize;
            let mut local: Option<WorstWitness> = None;
            for b_bits in 1u64..(1 << ws.len()) {
                let bsz = b_bits.count_ones() as usize;
                if bsz < min_b {
                    continue;
                }
                let mut e = 0usize;
                let mut t = b_bits;
                while t != 0 {
                    let i = t.trailing_zeros() as usize;
                    t &= t - 1;
                    e += counts[i];
                }
                let d = e as f64 / (asz * bsz) as f64;
                let dev = (d - base_density).abs();
                if local.map_or(true, |w| better(dev, a_bits, b_bits, &w)) {
                    local = Some(WorstWitness {
                        a: a_bits,
                        b: b_bits,
                        deviation: dev,
                        sub_density: d,
                    });
                }
            }
            local
        })
        .reduce(
            || None,
            |x, y| match (x, y) {
                (None, y) => y,
                (x, None) => x,
                (Some(a), Some(b)) => {
                    if better(b.deviation, b.a, b.b, &a) {
                        Some(b)
                    } else {
                        Some(a)
                    }
                }
            },
        );

    let worst = worst.map(|mut w| {
        // report witness subsets in global vertex numbering
        w.a = expand(&us, w.a);
        w.b = expand(&ws, w.b);
        w
    });
    Ok(PairVerdict {
        regular: worst.map_or(true, |w| w.deviation <= eps),
        base_density,
        worst,
    })
}

/// Deterministic preference: larger deviation, ties broken toward the
/// smallest (a, b) encoding so the witness is stable across worker counts.
fn better(dev: f64, a: u64, b: u64, cur: &WorstWitness) -> bool {
    dev > cur.deviation || (dev == cur.deviation && (a, b) < (cur.a, cur.b))
}

fn expand(verts: &[usize], bits: u64) -> u64 {
    let mut out = 0u64;
    let mut t = bits;
    while t != 0 {
        let i = t.trailing_zeros() as usize;
        t &= t - 1;
        out |= 1 << verts[i];
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IrregularityReport {
    /// Σ |V_i||V_j| over ordered irregular pairs (i ≠ j), normalized by n².
    pub mass: f64,
    /// Unordered irregular pairs (i, j), i < j.
    pub irregular_pairs: Vec<(usize, usize)>,
    /// mass <= ε
    pub regular: bool,
}

/// Irregularity mass of a partition. Pairs are scanned unordered and both
/// orientations contribute, matching the sum over (i, j) ∈ [k]², i ≠ j.
/// A singleton or empty-class pair contributes nothing (recorded
/// convention: no qualifying pairs means mass 0).
pub fn partition_irregularity(
    g: &Graph,
    classes: &[VertexSet],
    eps: f64,
) -> Result<IrregularityReport> {
    check_eps(eps)?;
    let n = g.n();
    let mut mass = 0.0;
    let mut irregular_pairs = Vec::new();
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            if classes[i].is_empty() || classes[j].is_empty() {
                continue;
            }
            let verdict = is_regular_pair(g, classes[i], classes[j], eps)?;
            if !verdict.regular {
                mass += 2.0 * (classes[i].len() * classes[j].len()) as f64;
                irregular_pairs.push((i, j));
            }
        }
    }
    let mass = if n == 0 { 0.0 } else { mass / (n * n) as f64 };
    Ok(IrregularityReport {
        mass,
        irregular_pairs,
        regular: mass <= eps,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgePremise {
    pub f_edge: (usize, usize),
    pub regular: bool,
    pub density: f64,
    /// (Δ(F)+1) ε^{1/Δ(F)}
    pub threshold: f64,
    pub density_ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SizePremise {
    pub f_vertex: usize,
    pub size: usize,
    /// |V(F)| / ε
    pub required: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountingPremiseReport {
    pub edge_premises: Vec<EdgePremise>,
    pub size_premises: Vec<SizePremise>,
    pub premises_all_hold: bool,
    /// Result of the class-respecting embedding search, run regardless of
    /// the premises (they are sufficient, not necessary).
    pub embedding_found: bool,
}

/// Evaluate the counting-lemma premises for mapping each F-vertex i into
/// the class `classes[i]`: pair regularity and density
/// d >= (Δ(F)+1) ε^{1/Δ(F)} per F-edge, class size >= |V(F)|/ε per vertex.
/// Then run the class-respecting embedding search and report its outcome.
pub fn counting_premise(
    g: &Graph,
    classes: &[VertexSet],
    eps: f64,
    f: &Graph,
) -> Result<CountingPremiseReport> {
    check_eps(eps)?;
    if classes.len() != f.n() {
        return Err(Error::invalid("need one class per F-vertex"));
    }
    for (i, a) in classes.iter().enumerate() {
        for b in classes.iter().skip(i + 1) {
            if !a.is_disjoint(*b) {
                return Err(Error::invalid("classes must be pairwise disjoint"));
            }
        }
    }
    let delta = f.max_degree();
    if delta == 0 {
        return Err(Error::Precondition(
            "counting premises need a forbidden graph with an edge".into(),
        ));
    }
    let threshold = (delta as f64 + 1.0) * eps.powf(1.0 / delta as f64);
    let mut edge_premises = Vec::new();
    for (fu, fv) in f.edges() {
        let verdict = is_regular_pair(g, classes[fu], classes[fv], eps)?;
        edge_premises.push(EdgePremise {
            f_edge: (fu, fv),
            regular: verdict.regular,
            density: verdict.base_density,
            threshold,
            density_ok: verdict.base_density >= threshold,
        });
    }
    let required = f.n() as f64 / eps;
    let size_premises: Vec<SizePremise> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| SizePremise {
            f_vertex: i,
            size: c.len(),
            required,
            ok: c.len() as f64 >= required,
        })
        .collect();
    let premises_all_hold = edge_premises.iter().all(|p| p.regular && p.density_ok)
        && size_premises.iter().all(|p| p.ok);
    let embedding_found = contains_with_classes(g, f, Some(classes)).is_some();
    Ok(CountingPremiseReport {
        edge_premises,
        size_premises,
        premises_all_hold,
        embedding_found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::turan;
    use crate::graph::cycle;
    use crate::testutil::random_graph;

    #[test]
    fn density_pinned_values() {
        // complete bipartite pair: 1; empty pair: 0
        let k23 = Graph::empty(2).join(&Graph::empty(3)).unwrap();
        let u = VertexSet::from_iter([0, 1]);
        let w = VertexSet::from_iter([2, 3, 4]);
        assert_eq!(density(&k23, u, w).unwrap(), 1.0);
        let e5 = Graph::empty(5);
        assert_eq!(density(&e5, u, w).unwrap(), 0.0);

        // C_5 (edges 01, 12, 23, 34, 40): cross edges of {0,1}×{2,4} are 12 and 40
        let c5 = cycle(5);
        let d = density(&c5, VertexSet::from_iter([0, 1]), VertexSet::from_iter([2, 4])).unwrap();
        assert_eq!(d, 0.5);
        let d = density(&c5, VertexSet::from_iter([0, 1]), VertexSet::from_iter([2, 3])).unwrap();
        assert_eq!(d, 0.25);

        // symmetry
        for seed in 0..10u64 {
            let g = random_graph(10, seed + 9);
            let u = VertexSet::from_iter([0, 2, 4]);
            let w = VertexSet::from_iter([1, 3, 5, 7]);
            assert_eq!(density(&g, u, w).unwrap(), density(&g, w, u).unwrap());
        }

        assert!(density(&c5, u, VertexSet::from_iter([1, 3])).is_err()); // overlap
        assert!(density(&c5, VertexSet::empty(), w).is_err());
    }

    #[test]
    fn regular_pair_pinned_values() {
        // density-1 and density-0 pairs are regular at every ε
        let k44 = Graph::empty(4).join(&Graph::empty(4)).unwrap();
        let u = VertexSet::from_iter([0, 1, 2, 3]);
        let w = VertexSet::from_iter([4, 5, 6, 7]);
        for eps in [0.05, 0.25, 0.9] {
            assert!(is_regular_pair(&k44, u, w, eps).unwrap().regular);
            assert!(is_regular_pair(&Graph::empty(8), u, w, eps).unwrap().regular);
        }

        // one cross edge among 4×4 at ε = 0.25: the singleton sub-pair on the
        // edge's endpoints deviates by 1 - 1/16 > 0.25
        let g = Graph::from_edges(8, &[(0, 4)]);
        let verdict = is_regular_pair(&g, u, w, 0.25).unwrap();
        assert!(!verdict.regular);
        let worst = verdict.worst.unwrap();
        assert!((worst.deviation - (1.0 - 1.0 / 16.0)).abs() < 1e-12);
        assert_eq!(worst.a, 1 << 0);
        assert_eq!(worst.b, 1 << 4);
    }

    #[test]
    fn regular_pair_monotone_in_eps() {
        for seed in 0..12u64 {
            let g = random_graph(12, seed * 3 + 7);
            let u = VertexSet::from_iter([0, 1, 2, 3, 4]);
            let w = VertexSet::from_iter([6, 7, 8, 9, 10]);
            let mut last = false;
            for eps in [0.1, 0.2, 0.35, 0.5, 0.75, 1.0] {
                let reg = is_regular_pair(&g, u, w, eps).unwrap().regular;
                assert!(!last || reg, "regularity lost when ε grew (seed {seed})");
                last = reg;
            }
        }
    }

    #[test]
    fn subpair_scan_matches_complement_identity() {
        // independent oracle: e(A,B) = e(U,W) - e(A, W\B) - e(U\A, W)
        for seed in 0..100u64 {
            let g = random_graph(16, seed * 11 + 1);
            let u = VertexSet::from_iter(0..8);
            let w = VertexSet::from_iter(8..16);
            let eps = 0.3;
            let verdict = is_regular_pair(&g, u, w, eps).unwrap();
            let base = density(&g, u, w).unwrap();
            let min_s = (eps * 8.0).ceil() as usize;
            let mut worst = 0.0f64;
            let euw = g.edges_between(u, w) as f64;
            for a_bits in 1u64..256 {
                let a = VertexSet(a_bits);
                if a.len() < min_s {
                    continue;
                }
                for b_bits in 1u64..256 {
                    let b = VertexSet(b_bits << 8);
                    if b.len() < min_s {
                        continue;
                    }
                    let not_a = VertexSet(u.0 & !a.0);
                    let not_b = VertexSet(w.0 & !b.0);
                    let mut e = euw - g.edges_between(u, not_b) as f64;
                    if !not_a.is_empty() {
                        e -= g.edges_between(not_a, b) as f64;
                    }
                    let d = e / (a.len() * b.len()) as f64;
                    worst = worst.max((d - base).abs());
                }
            }
            let got = verdict.worst.map(|w| w.deviation).unwrap_or(0.0);
            assert!(
                (got - worst).abs() < 1e-12,
                "worst deviation mismatch: {got} vs oracle {worst} (seed {seed})"
            );
        }
    }

    #[test]
    fn partition_irregularity_pinned_values() {
        // Turán coloring of T_3(9): all pairs have density 1
        let t = turan(3, 9).unwrap();
        let classes = vec![
            VertexSet::from_iter(0..3),
            VertexSet::from_iter(3..6),
            VertexSet::from_iter(6..9),
        ];
        let rep = partition_irregularity(&t, &classes, 0.2).unwrap();
        assert_eq!(rep.mass, 0.0);
        assert!(rep.regular);

        // singleton partition: no qualifying pairs, 0 by convention
        let rep = partition_irregularity(&t, &[VertexSet::full(9)], 0.2).unwrap();
        assert_eq!(rep.mass, 0.0);

        // a sparse noisy pair drags its mass in
        let g = Graph::from_edges(8, &[(0, 4)]);
        let classes = vec![VertexSet::from_iter(0..4), VertexSet::from_iter(4..8)];
        let rep = partition_irregularity(&g, &classes, 0.25).unwrap();
        assert_eq!(rep.irregular_pairs, vec![(0, 1)]);
        assert!((rep.mass - 2.0 * 16.0 / 64.0).abs() < 1e-12);
        assert!(!rep.regular);
    }

    #[test]
    fn counting_premise_pinned_values() {
        // K_3 into the color classes of T_3(9) at ε = 0.3: the density
        // threshold 3·√0.3 ≈ 1.64 is infeasible, yet the embedding exists
        let t = turan(3, 9).unwrap();
        let classes = vec![
            VertexSet::from_iter(0..3),
            VertexSet::from_iter(3..6),
            VertexSet::from_iter(6..9),
        ];
        let rep = counting_premise(&t, &classes, 0.3, &Graph::complete(3)).unwrap();
        assert!(!rep.premises_all_hold);
        assert!(rep.edge_premises.iter().all(|p| p.regular));
        assert!(rep.edge_premises.iter().all(|p| !p.density_ok));
        assert!((rep.edge_premises[0].threshold - 3.0 * 0.3f64.sqrt()).abs() < 1e-12);
        assert!(rep.embedding_found);

        // K_2 into any cross pair with an edge
        let g = Graph::from_edges(4, &[(0, 2)]);
        let rep = counting_premise(
            &g,
            &[VertexSet::from_iter([0, 1]), VertexSet::from_iter([2, 3])],
            0.5,
            &Graph::complete(2),
        )
        .unwrap();
        assert!(rep.embedding_found);

        // K_3 into a triangle-free tripartite fixture: no class-respecting embedding
        let c6 = cycle(6);
        let rep = counting_premise(
            &c6,
            &[
                VertexSet::from_iter([0, 3]),
                VertexSet::from_iter([1, 4]),
                VertexSet::from_iter([2, 5]),
            ],
            0.5,
            &Graph::complete(3),
        )
        .unwrap();
        assert!(!rep.embedding_found);

        // overlapping classes rejected
        assert!(counting_premise(
            &c6,
            &[
                VertexSet::from_iter([0, 1]),
                VertexSet::from_iter([1, 2]),
                VertexSet::from_iter([3, 4]),
            ],
            0.5,
            &Graph::complete(3),
        )
        .is_err());
    }

    #[test]
    fn premises_holding_implies_embedding() {
        // whenever all premises hold, the embedding search must succeed;
        // scan small ε over dense bipartite pairs where premises can hold
        let k2 = Graph::complete(2);
        for eps in [0.2, 0.3, 0.5] {
            for seed in 0..20u64 {
                let g = random_graph(12, seed * 5 + 2);
                let classes = [VertexSet::from_iter(0..6), VertexSet::from_iter(6..12)];
                let rep = counting_premise(&g, &classes, eps, &k2).unwrap();
                if rep.premises_all_hold {
                    assert!(rep.embedding_found, "premises held but no embedding (seed {seed})");
                }
            }
        }
    }
}
