//! Reusable verification sweeps over graph corpora: closed forms against
//! the dense solver, the balancing/Turán-gap inequalities for complete
//! multipartite graphs, the join bound, the max-cut edge bound sweep, edge
//! monotonicity of q, the Rayleigh identity, the set intersection bound and
//! graph6 round-trips. The CLI's verify command and the acceptance suite
//! both run these.

use crate::enumerate::enumerate_ffree_collect;
use crate::error::Result;
use crate::exec::Parallelism;
use crate::families::{complete_multipartite, turan_sizes};
use crate::graph::{graph6_decode, graph6_encode, Graph, VertexSet};
use crate::spectral::{q_radius, quotient_multipartite, rayleigh_route_gap, cai_fan_turan_q};
use crate::structure::{furedi_subgraph, intersection_bound_check};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Outcome of one sweep: instance count, violations, and the worst margin
/// (slack of the inequality; negative means a violation) with its witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    /// The inequality or identity being checked, in plain ASCII math.
    pub anchor: String,
    pub instances: u64,
    pub violations: u64,
    pub worst_margin: f64,
    pub worst_instance: Option<String>,
}

impl SuiteOutcome {
    fn new(name: &str, anchor: &str) -> Self {
        SuiteOutcome {
            name: name.into(),
            anchor: anchor.into(),
            instances: 0,
            violations: 0,
            worst_margin: f64::INFINITY,
            worst_instance: None,
        }
    }

    fn record(&mut self, margin: f64, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if margin < 0.0 {
            self.violations += 1;
        }
        if margin < self.worst_margin {
            self.worst_margin = margin;
            self.worst_instance = Some(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Partitions of n into exactly r positive parts, descending.
pub fn partitions_desc(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, r: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == 1 {
            if n >= 1 && n <= max {
                cur.push(n);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        // leave at least r-1 for the rest
        let hi = max.min(n.saturating_sub(r - 1));
        for first in (1..=hi).rev() {
            cur.push(first);
            rec(n - first, r - 1, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && n >= r {
        rec(n, r, n, &mut Vec::new(), &mut out);
    }
    out
}

/// |q_solver(T_r(n)) - closed_form(n, r)| <= tol for r in 2..=r_max,
/// n in r..=n_max.
pub fn cai_fan_suite(r_max: usize, n_max: usize, tol: f64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(
        "turan-closed-form",
        "|q_solver(T_r(n)) - q_closed(T_r(n))| <= tol",
    );
    for r in 2..=r_max {
        for n in r..=n_max {
            let g = crate::families::turan(r, n)?;
            let solver = q_radius(&g, 1e-8)?.radius;
            let closed = cai_fan_turan_q(n, r)?;
            out.record(tol - (solver - closed).abs(), || format!("T_{r}({n})"));
        }
    }
    Ok(out)
}

/// |q(K_{s,n-s}) - n| <= tol for 1 <= s < n <= n_max.
pub fn bipartite_identity_suite(n_max: usize, tol: f64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("bipartite-identity", "q(K_{s,n-s}) = n");
    for n in 2..=n_max {
        for s in 1..n {
            let g = complete_multipartite(&[s, n - s])?;
            let q = q_radius(&g, 1e-8)?.radius;
            out.record(tol - (q - n as f64).abs(), || format!("K_{{{s},{}}}", n - s));
        }
    }
    Ok(out)
}

/// Solver vs quotient radius on every complete multipartite graph with
/// n <= n_max, 2 <= r <= r_max parts.
pub fn solver_vs_quotient_suite(r_max: usize, n_max: usize, tol: f64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(
        "solver-vs-quotient",
        "|q_solver(K_{n1..nr}) - rho(quotient)| <= tol",
    );
    for r in 2..=r_max {
        for n in r..=n_max {
            for sizes in partitions_desc(n, r) {
                let g = complete_multipartite(&sizes)?;
                let solver = q_radius(&g, 1e-8)?.radius;
                let quotient = quotient_multipartite(&sizes)?.radius();
                out.record(tol - (solver - quotient).abs(), || format!("K_{sizes:?}"));
            }
        }
    }
    Ok(out)
}

/// Balancing step strictly increases q: whenever n_i - n_j >= 2,
/// q(K with n_i-1, n_j+1) > q(K) + 1e-12. Exhaustive over r in {3,4},
/// n <= n_max.
pub fn balancing_monotonicity_suite(n_max: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(
        "balancing-increases-q",
        "q(K_{..,n_i-1,..,n_j+1,..}) > q(K_{n1..nr}) + 1e-12",
    );
    for r in [3usize, 4] {
        for n in r..=n_max {
            for sizes in partitions_desc(n, r) {
                let q0 = quotient_multipartite(&sizes)?.radius();
                for i in 0..r {
                    for j in 0..r {
                        if i == j || sizes[i] < sizes[j] + 2 {
                            continue;
                        }
                        let mut moved = sizes.clone();
                        moved[i] -= 1;
                        moved[j] += 1;
                        let q1 = quotient_multipartite(&moved)?.radius();
                        out.record(q1 - q0 - 1e-12, || format!("K_{sizes:?} -> K_{moved:?}"));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Gap to the Turán graph: q(T_r(n)) - q(K_{n1..nr}) > 2(r-2)/(r^2 n)
/// whenever some n_i - n_j >= 2. Exhaustive over r in {3,4}, n <= n_max.
pub fn turan_gap_suite(n_max: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(
        "turan-gap",
        "q(T_r(n)) - q(K_{n1..nr}) > 2(r-2)/(r^2 n)",
    );
    for r in [3usize, 4] {
        for n in r..=n_max {
            let qt = quotient_multipartite(&turan_sizes(r, n))?.radius();
            for sizes in partitions_desc(n, r) {
                if sizes[0] - sizes[r - 1] < 2 {
                    continue;
                }
                let q = quotient_multipartite(&sizes)?.radius();
                let gap = 2.0 * (r as f64 - 2.0) / ((r * r) as f64 * n as f64);
                out.record(qt - q - gap, || format!("K_{sizes:?}"));
            }
        }
    }
    Ok(out)
}

/// Randomized join bound: for G = G_1 ∨ G_2 with |V(G_1)| = a = αn,
/// e(G_1) <= c_1 and αn > 2c_1,
/// q(G) < q(K̄_a ∨ G_2) + 4 c_1 (1-α) n / (αn - 2c_1)².
pub fn join_bound_suite(samples: usize, seed: u64, tol: f64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(
        "join-bound",
        "q(G1 v G2) < q(K̄_a v G2) + 4 c1 (1-a/n) n / (a - 2 c1)^2",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = 0;
    while accepted < samples {
        let a = rng.random_range(2..=6usize);
        let n = rng.random_range((a + 2).max(8)..=24usize);
        let e1_cap = ((a as f64 / 2.0).ceil() as usize).saturating_sub(1).min(3);
        let e1 = rng.random_range(0..=e1_cap);
        // G_1: exactly e1 random edges on a vertices
        let mut pairs: Vec<(usize, usize)> = (0..a)
            .flat_map(|u| ((u + 1)..a).map(move |v| (u, v)))
            .collect();
        pairs.shuffle(&mut rng);
        let g1 = Graph::from_edges(a, &pairs[..e1]);
        let c1 = (e1 as f64).max(0.5);
        if a as f64 <= 2.0 * c1 {
            continue;
        }
        // G_2: density-1/2 random graph on n - a vertices
        let mut g2 = Graph::empty(n - a);
        for u in 0..(n - a) {
            for v in (u + 1)..(n - a) {
                if rng.random_bool(0.5) {
                    g2 = g2.with_edge(u, v);
                }
            }
        }
        let alpha = a as f64 / n as f64;
        let g = g1.join(&g2)?;
        let stripped = Graph::empty(a).join(&g2)?;
        let qg = q_radius(&g, tol)?.radius;
        let qs = q_radius(&stripped, tol)?.radius;
        let bound = qs + 4.0 * c1 * (1.0 - alpha) * n as f64
            / ((alpha * n as f64 - 2.0 * c1) * (alpha * n as f64 - 2.0 * c1));
        out.record(bound - qg, || {
            format!(
                "a={a} n={n} e1={e1} g6={}",
                graph6_encode(&g).unwrap_or_default()
            )
        });
        accepted += 1;
    }
    Ok(out)
}

/// Max-cut edge bound sweep: every K_{p+1}-free graph on up to n_max
/// vertices satisfies e(H_0) >= e(G) - t for the exact optimal p-partition.
pub fn furedi_sweep(p: usize, n_max: usize, par: &Parallelism) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(
        &format!("max-cut-edge-bound-p{p}"),
        "e(H0) >= e(G) - (t_p(n) - e(G)) on K_{p+1}-free graphs",
    );
    let clique = Graph::complete(p + 1);
    for n in 2..=n_max {
        let graphs = enumerate_ffree_collect(n, Some(&clique), None, par)?;
        let margins: Vec<(i64, String)> = par.install(|| {
            graphs
                .par_iter()
                .map(|g| {
                    let f = furedi_subgraph(g, p)?;
                    let margin = f.h0.edge_count() as i64 - (g.edge_count() as i64 - f.t as i64);
                    Ok((margin, graph6_encode(g)?))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        for (margin, g6) in margins {
            out.record(margin as f64, || g6);
        }
    }
    Ok(out)
}

/// Adding an edge never decreases q (within 1e-10): checked over every
/// isomorphism class with n <= n_max vertices, on up to `sample_edges`
/// deterministically sampled non-edges per graph.
pub fn edge_monotonicity_suite(
    n_max: usize,
    sample_edges: usize,
    seed: u64,
    par: &Parallelism,
) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("edge-monotonicity", "q(G + uv) >= q(G) - 1e-10");
    for n in 2..=n_max {
        let graphs = enumerate_ffree_collect(n, None, None, par)?;
        let results: Vec<(f64, String)> = par.install(|| {
            graphs
                .par_iter()
                .map(|g| {
                    let q0 = q_radius(g, 1e-8)?.radius;
                    let mut non_edges = g.non_edges();
                    if non_edges.is_empty() {
                        return Ok((f64::INFINITY, String::new()));
                    }
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(seed ^ crate::canon::code_of(g) as u64);
                    non_edges.shuffle(&mut rng);
                    let mut worst = f64::INFINITY;
                    for &(u, v) in non_edges.iter().take(sample_edges) {
                        let q1 = q_radius(&g.with_edge(u, v), 1e-8)?.radius;
                        worst = worst.min(q1 - q0 + 1e-10);
                    }
                    Ok((worst, graph6_encode(g)?))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        for (margin, g6) in results {
            if margin.is_finite() {
                out.record(margin, || g6);
            }
        }
    }
    Ok(out)
}

/// Two routes of the Rayleigh quotient agree to 1e-12 on unit vectors:
/// xᵀQx vs Σ_{uv∈E}(x_u+x_v)², over random graphs and vectors.
pub fn rayleigh_identity_suite(samples: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(
        "rayleigh-identity",
        "xT Q x = sum_{uv in E} (x_u + x_v)^2 (unit x, 1e-12)",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.random_range(2..=12usize);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(0.4) {
                    g = g.with_edge(u, v);
                }
            }
        }
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-9 {
            continue;
        }
        for xi in &mut x {
            *xi /= norm;
        }
        let gap = rayleigh_route_gap(&g, &x).abs();
        out.record(1e-12 - gap, || format!("{g:?}"));
    }
    Ok(out)
}

/// |V1 ∩ ... ∩ Vp| >= Σ|Vi| - (p-1)|∪Vi| over random set triples.
pub fn intersection_suite(samples: usize, universe: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(
        "set-intersection-bound",
        "|V1 ∩ .. ∩ Vp| >= sum |Vi| - (p-1) |V1 ∪ .. ∪ Vp|",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = VertexSet::full(universe).0;
    for _ in 0..samples {
        let sets: Vec<VertexSet> = (0..3).map(|_| VertexSet(rng.random::<u64>() & mask)).collect();
        let ok = intersection_bound_check(&sets);
        out.record(if ok { 0.0 } else { -1.0 }, || format!("{sets:?}"));
    }
    out
}

/// graph6 round-trips are the labeled identity over random graphs.
pub fn graph6_roundtrip_suite(samples: usize, n_max: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("graph6-roundtrip", "decode(encode(G)) = G bit-exactly");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.random_range(0..=n_max);
        let mut g = Graph::empty(n);
        let p: f64 = rng.random_range(0.05..0.95);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    g = g.with_edge(u, v);
                }
            }
        }
        let enc = graph6_encode(&g)?;
        let ok = graph6_decode(&enc)? == g;
        // also: constructor invariants hold (symmetry is enforced in decode)
        out.record(if ok { 0.0 } else { -1.0 }, || enc);
    }
    Ok(out)
}
