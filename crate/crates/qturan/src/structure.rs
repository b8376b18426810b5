//! Optimal r-partitions (exact minimum internal edges, i.e. max-r-cut),
//! the G_in/G_out decomposition relative to a partition, A_i/B_i
//! classification, the p-chromatic subgraph extraction with its edge bound,
//! the set intersection inequality, and the stability chain applied to
//! spectral-extremal graphs.

use crate::containment::{chromatic_number, contains};
use crate::enumerate::ExtremalRecord;
use crate::error::{Error, Result};
use crate::families::turan_edge_count;
use crate::graph::{graph6_encode, Graph, VertexSet};
use crate::spectral::q_radius;
use serde::{Deserialize, Serialize};

/// Exhaustive partition scan cap (restricted-growth enumeration).
pub const PARTITION_EXHAUSTIVE_MAX: usize = 14;
/// Branch-and-bound cap beyond the exhaustive range.
pub const PARTITION_BNB_MAX: usize = 20;

/// Assignment of vertices to r classes with its edge tallies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionVec {
    /// `assignment[v]` is the class of v, in `0..r`.
    pub assignment: Vec<u8>,
    pub r: usize,
    /// Class sizes n_1..n_r.
    pub sizes: Vec<usize>,
    /// Internal edge count e(V_i) per class.
    pub internal_edges: Vec<usize>,
    /// Missing cross pairs per class pair (i, j), i < j, lexicographic.
    pub cross_missing: Vec<usize>,
}

impl PartitionVec {
    pub fn new(g: &Graph, assignment: Vec<u8>, r: usize) -> Result<Self> {
        if r < 1 {
            return Err(Error::invalid("partition needs r >= 1"));
        }
        if assignment.len() != g.n() {
            return Err(Error::invalid("assignment length differs from vertex count"));
        }
        if assignment.iter().any(|&c| c as usize >= r) {
            return Err(Error::invalid("class index out of range"));
        }
        let classes = classes_from(&assignment, r);
        let sizes = classes.iter().map(|c| c.len()).collect();
        let internal_edges = classes.iter().map(|c| g.edges_within(*c)).collect();
        let mut cross_missing = Vec::new();
        for i in 0..r {
            for j in (i + 1)..r {
                let present = g.edges_between(classes[i], classes[j]);
                cross_missing.push(classes[i].len() * classes[j].len() - present);
            }
        }
        Ok(PartitionVec {
            assignment,
            r,
            sizes,
            internal_edges,
            cross_missing,
        })
    }

    pub fn classes(&self) -> Vec<VertexSet> {
        classes_from(&self.assignment, self.r)
    }

    /// Σ_i e(V_i): edges of G_in.
    pub fn internal_total(&self) -> usize {
        self.internal_edges.iter().sum()
    }

    /// Σ_{i<j} |missing cross pairs|: edges of G_out.
    pub fn missing_total(&self) -> usize {
        self.cross_missing.iter().sum()
    }

    /// max_i n_i - min_i n_i over nonempty... over all classes (empty classes count).
    pub fn balance_gap(&self) -> usize {
        let max = self.sizes.iter().max().copied().unwrap_or(0);
        let min = self.sizes.iter().min().copied().unwrap_or(0);
        max - min
    }
}

fn classes_from(assignment: &[u8], r: usize) -> Vec<VertexSet> {
    let mut classes = vec![VertexSet::empty(); r];
    for (v, &c) in assignment.iter().enumerate() {
        classes[c as usize].insert(v);
    }
    classes
}

/// Result of the exact minimum-internal-edges search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinPartition {
    pub partition: PartitionVec,
    /// The minimum of Σ_i e(V_i) over all partitions into at most r classes.
    pub minimum: usize,
    /// Number of minimizing set partitions (class relabelings not counted).
    pub minimizer_count: u64,
    pub unique: bool,
}

/// Exact minimizer of Σ_i e(V_i) over partitions of V(G) into at most r
/// classes (equivalently a maximum r-cut). Exhaustive with restricted-growth
/// symmetry breaking up to n = 14; the same search with branch-and-bound
/// pruning up to n = 20.
pub fn min_internal_partition(g: &Graph, r: usize) -> Result<MinPartition> {
    if r < 2 {
        return Err(Error::invalid("min internal partition needs r >= 2"));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("partition of the empty vertex set"));
    }
    if n > PARTITION_BNB_MAX {
        return Err(Error::Capacity {
            what: "partition search order",
            limit: PARTITION_BNB_MAX,
            got: n,
        });
    }

    // greedy warm start for the pruning bound
    let mut greedy = vec![0u8; n];
    let mut class_bits = vec![0u64; r];
    class_bits[0] = 1;
    let mut greedy_internal = 0usize;
    for v in 1..n {
        let (best_c, best_add) = (0..r)
            .map(|c| (c, (g.row(v) & class_bits[c]).count_ones() as usize))
            .min_by_key(|&(c, add)| (add, c))
            .unwrap();
        greedy[v] = best_c as u8;
        class_bits[best_c] |= 1 << v;
        greedy_internal += best_add;
    }

    struct Search<'a> {
        g: &'a Graph,
        r: usize,
        best: usize,
        best_assignment: Vec<u8>,
        count: u64,
        assignment: Vec<u8>,
        class_bits: Vec<u64>,
    }

    impl Search<'_> {
        fn dfs(&mut self, v: usize, internal: usize, max_used: usize) {
            if internal > self.best {
                return;
            }
            if v == self.g.n() {
                if internal < self.best {
                    self.best = internal;
                    self.best_assignment = self.assignment.clone();
                    self.count = 1;
                } else {
                    self.count += 1;
                }
                return;
            }
            // restricted growth: a fresh class index may only be opened in order
            let limit = self.r.min(max_used + 1);
            for c in 0..limit {
                let add = (self.g.row(v) & self.class_bits[c]).count_ones() as usize;
                self.assignment[v] = c as u8;
                self.class_bits[c] |= 1 << v;
                self.dfs(v + 1, internal + add, max_used.max(c + 1));
                self.class_bits[c] &= !(1 << v);
            }
        }
    }

    let mut s = Search {
        g,
        r,
        best: greedy_internal,
        best_assignment: greedy,
        count: 0,
        assignment: vec![0u8; n],
        class_bits: vec![0u64; r],
    };
    // vertex 0 is pinned to class 0 by restricted growth
    s.dfs(0, 0, 0);
    let partition = PartitionVec::new(g, s.best_assignment, r)?;
    Ok(MinPartition {
        minimum: s.best,
        unique: s.count == 1,
        minimizer_count: s.count,
        partition,
    })
}

/// Count partitions into at most r classes whose every class has internal
/// edge count at most `cap` (used to check partition uniqueness claims).
pub fn count_partitions_with_internal_cap(g: &Graph, r: usize, cap: usize) -> Result<u64> {
    if r < 2 {
        return Err(Error::invalid("need r >= 2"));
    }
    let n = g.n();
    if n > PARTITION_EXHAUSTIVE_MAX {
        return Err(Error::Capacity {
            what: "partition census order",
            limit: PARTITION_EXHAUSTIVE_MAX,
            got: n,
        });
    }
    fn dfs(
        g: &Graph,
        r: usize,
        cap: usize,
        v: usize,
        max_used: usize,
        class_bits: &mut Vec<u64>,
        class_internal: &mut Vec<usize>,
        count: &mut u64,
    ) {
        if v == g.n() {
            *count += 1;
            return;
        }
        let limit = r.min(max_used + 1);
        for c in 0..limit {
            let add = (g.row(v) & class_bits[c]).count_ones() as usize;
            if class_internal[c] + add > cap {
                continue;
            }
            class_bits[c] |= 1 << v;
            class_internal[c] += add;
            dfs(g, r, cap, v + 1, max_used.max(c + 1), class_bits, class_internal, count);
            class_internal[c] -= add;
            class_bits[c] &= !(1 << v);
        }
    }
    let mut count = 0;
    dfs(
        g,
        r,
        cap,
        0,
        0,
        &mut vec![0u64; r],
        &mut vec![0usize; r],
        &mut count,
    );
    Ok(count)
}

/// One named inequality check inside a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

impl CheckOutcome {
    fn le(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        CheckOutcome {
            name: name.into(),
            lhs,
            rhs,
            pass: lhs <= rhs,
        }
    }
}

/// The decomposition of one graph relative to a partition, with every
/// inequality evaluated against a supplied c₀ candidate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureReport {
    pub partition: PartitionVec,
    pub e_in: usize,
    pub e_out: usize,
    pub balance_gap: usize,
    /// A_i = {v ∈ V_i : d_{V_i}(v) >= 1} per class.
    pub a_sets: Vec<Vec<usize>>,
    /// B_i = V_i \ A_i per class.
    pub b_sets: Vec<Vec<usize>>,
    /// max_v d_{G_out}(v): missing cross pairs at a single vertex.
    pub max_out_degree: usize,
    /// Minimum Perron component of Q(G) (zero for disconnected graphs).
    pub perron_min: f64,
    pub checks: Vec<CheckOutcome>,
}

/// Evaluate the decomposition of `g` under `p` against a c₀ candidate.
pub fn decompose(g: &Graph, p: &PartitionVec, c0: usize) -> Result<StructureReport> {
    if p.assignment.len() != g.n() {
        return Err(Error::invalid("partition does not match the graph"));
    }
    let classes = p.classes();
    let e_in = p.internal_total();
    let e_out = p.missing_total();
    let mut a_sets = Vec::with_capacity(p.r);
    let mut b_sets = Vec::with_capacity(p.r);
    for cl in &classes {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for v in cl.iter() {
            if g.degree_into(v, *cl) >= 1 {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        a_sets.push(a);
        b_sets.push(b);
    }
    let max_out_degree = (0..g.n())
        .map(|v| {
            let own = classes[p.assignment[v] as usize];
            let outside = g.n() - own.len();
            outside - g.degree_into(v, VertexSet(VertexSet::full(g.n()).0 & !own.0))
        })
        .max()
        .unwrap_or(0);
    let perron_min = q_radius(g, 1e-8)?
        .perron
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);

    let c0f = c0 as f64;
    let r = p.r as f64;
    let mut checks = vec![
        CheckOutcome::le(
            "max_i e(V_i) <= c0",
            p.internal_edges.iter().max().copied().unwrap_or(0) as f64,
            c0f,
        ),
        CheckOutcome::le("e(G_in) - e(G_out) <= c0", e_in as f64 - e_out as f64, c0f),
        CheckOutcome::le(
            "max_i |A_i| <= 2 c0",
            a_sets.iter().map(Vec::len).max().unwrap_or(0) as f64,
            2.0 * c0f,
        ),
        CheckOutcome::le(
            "e(G_out) <= 2 (r-1) r c0^2",
            e_out as f64,
            2.0 * (r - 1.0) * r * c0f * c0f,
        ),
        CheckOutcome::le(
            "max_v d_Gout(v) <= c0 + 1",
            max_out_degree as f64,
            c0f + 1.0,
        ),
    ];
    // bookkeeping identity, not a c0 check: e_in + cross-present = e(G)
    let cross_present = g.edge_count() - e_in;
    let pair_capacity: usize = {
        let mut cap = 0;
        for i in 0..p.r {
            for j in (i + 1)..p.r {
                cap += p.sizes[i] * p.sizes[j];
            }
        }
        cap
    };
    checks.push(CheckOutcome {
        name: "cross-present + e(G_out) = Σ_{i<j} n_i n_j".into(),
        lhs: (cross_present + e_out) as f64,
        rhs: pair_capacity as f64,
        pass: cross_present + e_out == pair_capacity,
    });

    Ok(StructureReport {
        partition: p.clone(),
        e_in,
        e_out,
        balance_gap: p.balance_gap(),
        a_sets,
        b_sets,
        max_out_degree,
        perron_min,
        checks,
    })
}

/// Outcome of the p-chromatic subgraph extraction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FurediOutcome {
    pub partition: PartitionVec,
    /// t = t_p(n) - e(G), the edge deficit from the Turán graph.
    pub t: usize,
    /// The at-most-p-chromatic subgraph: only cross edges kept.
    pub h0: Graph,
    /// e(H_0) >= e(G) - t, equivalently e_in <= t.
    pub bound_ok: bool,
}

/// Extract the cross-edge subgraph of an optimal p-partition of a
/// K_{p+1}-free graph and verify e(H_0) >= e(G) - t with t = t_p(n) - e(G).
pub fn furedi_subgraph(g: &Graph, p: usize) -> Result<FurediOutcome> {
    if contains(g, &Graph::complete(p + 1)).is_some() {
        return Err(Error::Precondition(format!(
            "graph contains K_{}, the extraction needs a K_{}-free input",
            p + 1,
            p + 1
        )));
    }
    let tp = turan_edge_count(p, g.n());
    let e = g.edge_count();
    assert!(e <= tp, "edge count beyond the Turán bound on a K_{}-free graph", p + 1);
    let t = tp - e;
    let min = min_internal_partition(g, p)?;
    let classes = min.partition.classes();
    let mut h0 = g.clone();
    for cl in &classes {
        let mut members: Vec<usize> = cl.iter().collect();
        while let Some(v) = members.pop() {
            for u in members.iter().copied() {
                if h0.has_edge(u, v) {
                    h0 = h0.without_edge(u, v);
                }
            }
        }
    }
    let bound_ok = h0.edge_count() >= e - t.min(e);
    Ok(FurediOutcome {
        partition: min.partition,
        t,
        h0,
        bound_ok,
    })
}

/// |V_1 ∩ ... ∩ V_p| >= Σ|V_i| - (p-1)|V_1 ∪ ... ∪ V_p|.
pub fn intersection_bound_check(sets: &[VertexSet]) -> bool {
    if sets.is_empty() {
        return true;
    }
    let mut inter = sets[0];
    let mut union = sets[0];
    let mut sum = 0usize;
    for s in sets {
        inter = inter.intersection(*s);
        union = union.union(*s);
        sum += s.len();
    }
    let p = sets.len();
    inter.len() as i64 >= sum as i64 - (p as i64 - 1) * union.len() as i64
}

/// Desk-scale echo of the stability chain for one spectral-extremal graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StabilityReport {
    pub n: usize,
    pub r: usize,
    /// (a) size gap of the optimal partition and whether it is <= 1
    pub balance_gap: usize,
    pub balanced: bool,
    /// (b) minimum Perron component and the fitted constant n (1 - min x)
    pub perron_min: f64,
    pub c3_fit: f64,
    /// (c) e(G) = ex(n, F)?
    pub edge_extremal: bool,
    /// (d) G ∈ Ex(n, F)?
    pub in_extremal_set: bool,
}

/// Run the stability chain on `g`, which must belong to Ex_ssp(n, F)
/// according to `record`.
pub fn stability_chain(g: &Graph, f: &Graph, record: &ExtremalRecord) -> Result<StabilityReport> {
    if g.n() != record.n {
        return Err(Error::invalid(format!(
            "graph order {} does not match the record's n = {}",
            g.n(),
            record.n
        )));
    }
    let g6 = graph6_encode(&crate::canon::canonical_graph(g)?)?;
    if !record.ex_ssp_graphs.contains(&g6) {
        return Err(Error::invalid(
            "graph is not a spectral maximizer in the supplied record",
        ));
    }
    let chi = chromatic_number(f)?;
    if chi < 2 {
        return Err(Error::Precondition("forbidden graph needs at least one edge".into()));
    }
    let r = chi - 1;
    let (balance_gap, perron_min) = if r >= 2 {
        let min = min_internal_partition(g, r)?;
        let res = q_radius(g, 1e-8)?;
        (
            min.partition.balance_gap(),
            res.perron.iter().cloned().fold(f64::INFINITY, f64::min),
        )
    } else {
        let res = q_radius(g, 1e-8)?;
        (0, res.perron.iter().cloned().fold(f64::INFINITY, f64::min))
    };
    Ok(StabilityReport {
        n: g.n(),
        r,
        balance_gap,
        balanced: balance_gap <= 1,
        perron_min,
        c3_fit: g.n() as f64 * (1.0 - perron_min),
        edge_extremal: g.edge_count() == record.ex,
        in_extremal_set: record.ex_graphs.contains(&g6),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Parallelism;
    use crate::families::{efgg_extremal, turan};
    use crate::graph::cycle;
    use crate::testutil::random_graph;

    #[test]
    fn min_partition_pinned_values() {
        // T_3(7): proper 3-coloring, unique up to relabeling
        let m = min_internal_partition(&turan(3, 7).unwrap(), 3).unwrap();
        assert_eq!(m.minimum, 0);
        assert!(m.unique);

        // C_5 into 2 classes: max cut 4, one internal edge remains
        let m = min_internal_partition(&cycle(5), 2).unwrap();
        assert_eq!(m.minimum, 1);
        assert!(!m.unique);

        // K_4 into 2 classes: 2 internal edges for any 2+2 split
        let m = min_internal_partition(&Graph::complete(4), 2).unwrap();
        assert_eq!(m.minimum, 2);

        assert!(min_internal_partition(&cycle(5), 1).is_err());
        assert!(min_internal_partition(&Graph::empty(21), 2).is_err());
    }

    #[test]
    fn min_partition_matches_brute_force() {
        // oracle: minimum over all r^n labeled assignments
        for seed in 0..12u64 {
            let g = random_graph(8, seed * 17 + 5);
            for r in 2..=3usize {
                let brute = {
                    let mut best = usize::MAX;
                    let total = (r as u64).pow(8);
                    for mut code in 0..total {
                        let mut classes = vec![VertexSet::empty(); r];
                        for v in 0..8 {
                            classes[(code % r as u64) as usize].insert(v);
                            code /= r as u64;
                        }
                        let internal: usize =
                            classes.iter().map(|c| g.edges_within(*c)).sum();
                        best = best.min(internal);
                    }
                    best
                };
                let m = min_internal_partition(&g, r).unwrap();
                assert_eq!(m.minimum, brute, "seed {seed} r {r}");
            }
        }
    }

    #[test]
    fn partition_tallies_are_consistent() {
        for seed in 0..20u64 {
            let g = random_graph(9, seed + 100);
            let m = min_internal_partition(&g, 3).unwrap();
            let p = &m.partition;
            let cross_present = g.edge_count() - p.internal_total();
            let pair_cap: usize = {
                let mut c = 0;
                for i in 0..p.r {
                    for j in (i + 1)..p.r {
                        c += p.sizes[i] * p.sizes[j];
                    }
                }
                c
            };
            assert_eq!(cross_present + p.missing_total(), pair_cap);
            assert_eq!(p.internal_total() + cross_present, g.edge_count());
        }
    }

    #[test]
    fn decompose_pinned_values() {
        // Turán coloring of T_3(9), c0 = 0: everything pass
        let t = turan(3, 9).unwrap();
        let m = min_internal_partition(&t, 3).unwrap();
        let rep = decompose(&t, &m.partition, 0).unwrap();
        assert_eq!((rep.e_in, rep.e_out), (0, 0));
        assert!(rep.checks.iter().all(|c| c.pass));
        assert!(rep.a_sets.iter().all(Vec::is_empty));

        // T_2(6) plus one internal edge, c0 = 1
        let g = turan(2, 6).unwrap().with_edge(0, 1);
        let m = min_internal_partition(&g, 2).unwrap();
        let rep = decompose(&g, &m.partition, 1).unwrap();
        assert_eq!((rep.e_in, rep.e_out), (1, 0));
        assert!(rep.checks.iter().all(|c| c.pass));

        // fan-extremal graph at (12, 3) under its bipartition, c0 = 6
        let g = efgg_extremal(12, 3).unwrap();
        let m = min_internal_partition(&g, 2).unwrap();
        let rep = decompose(&g, &m.partition, 6).unwrap();
        assert_eq!((rep.e_in, rep.e_out), (6, 0));
        // A-side of part 1 is exactly the 6 clique vertices
        let total_a: usize = rep.a_sets.iter().map(Vec::len).sum();
        assert_eq!(total_a, 6);
    }

    #[test]
    fn furedi_pinned_values() {
        // C_5, p = 2: t = 6 - 5 = 1, max cut 4 >= 5 - 1
        let out = furedi_subgraph(&cycle(5), 2).unwrap();
        assert_eq!(out.t, 1);
        assert_eq!(out.h0.edge_count(), 4);
        assert!(out.bound_ok);

        // T_2(6): t = 0, H_0 = G
        let t26 = turan(2, 6).unwrap();
        let out = furedi_subgraph(&t26, 2).unwrap();
        assert_eq!(out.t, 0);
        assert_eq!(out.h0, t26);

        // precondition: K_3-containing graph rejected for p = 2
        assert!(furedi_subgraph(&Graph::complete(3), 2).is_err());
    }

    #[test]
    fn intersection_bound_examples() {
        let a = VertexSet::from_iter([1, 2, 3]);
        let b = VertexSet::from_iter([2, 3, 4]);
        assert!(intersection_bound_check(&[a, b]));
        let c = VertexSet::from_iter([10, 11]);
        assert!(intersection_bound_check(&[a, c]));
        // randomized triples on 12 points
        let mut st = 0xfeedu64;
        let mut next = move || {
            st ^= st << 13;
            st ^= st >> 7;
            st ^= st << 17;
            st
        };
        for _ in 0..10_000 {
            let sets: Vec<VertexSet> = (0..3)
                .map(|_| VertexSet(next() & 0xfff))
                .collect();
            assert!(intersection_bound_check(&sets));
        }
    }

    #[test]
    fn stability_chain_pinned_values() {
        let par = Parallelism::default();
        let k4 = Graph::complete(4);
        let rec = crate::enumerate::extremal_record(7, &k4, 1e-10, None, &par).unwrap();
        let t37 = turan(3, 7).unwrap();
        let rep = stability_chain(&t37, &k4, &rec).unwrap();
        assert_eq!(rep.balance_gap, 1);
        assert!(rep.balanced);
        assert!(rep.edge_extremal);
        assert!(rep.in_extremal_set);

        let k3 = Graph::complete(3);
        let rec = crate::enumerate::extremal_record(5, &k3, 1e-10, None, &par).unwrap();
        // K_{2,3} is both edge- and spectral-extremal at (5, K_3)
        let k23 = Graph::empty(2).join(&Graph::empty(3)).unwrap();
        let rep = stability_chain(&k23, &k3, &rec).unwrap();
        assert!(rep.edge_extremal && rep.in_extremal_set);
        // K_{1,4} attains q = 5 = ex_ssp but has 4 < 6 edges: containment fails
        let k14 = Graph::empty(1).join(&Graph::empty(4)).unwrap();
        let rep = stability_chain(&k14, &k3, &rec).unwrap();
        assert!(!rep.edge_extremal && !rep.in_extremal_set);

        // record mismatch: C_5 is not a spectral maximizer
        assert!(stability_chain(&cycle(5), &k3, &rec).is_err());
    }

    #[test]
    fn partition_census_counts_unique_turan_partition() {
        let t = turan(3, 9).unwrap();
        assert_eq!(count_partitions_with_internal_cap(&t, 3, 0).unwrap(), 1);
        // with a relaxed cap more partitions qualify
        assert!(count_partitions_with_internal_cap(&t, 3, 3).unwrap() > 1);
    }
}
