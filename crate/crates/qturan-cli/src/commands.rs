//! The six lab subcommands. Every check row lands in the report with an
//! assert/observe class; exit status is derived from assert rows only.

use crate::input::{parse_forbidden, parse_n_range};
use crate::report::LabReport;
use anyhow::{anyhow, bail, Context, Result};
use qturan::containment::{chromatic_number, contains};
use qturan::enumerate::{hypothesis_check_thm25, ENUMERATE_HARD_MAX};
use qturan::exec::Parallelism;
use qturan::families::{complete_split, fan, turan};
use qturan::graph::{graph6_decode, graph6_encode, Graph, VertexSet};
use qturan::regularity::{counting_premise, is_regular_pair, partition_irregularity};
use qturan::spectral::{cai_fan_turan_q, complete_split_q, q_radius};
use qturan::store::RecordStore;
use qturan::structure::{decompose, furedi_subgraph, min_internal_partition, stability_chain};
use qturan::suites::SuiteOutcome;
use serde_json::json;

pub struct Ctx {
    pub par: Parallelism,
    pub tol: f64,
    pub eps: f64,
    pub budget: Option<u64>,
    pub store: RecordStore,
}

fn canon_g6(g: &Graph) -> Result<String> {
    Ok(graph6_encode(&qturan::canon::canonical_graph(g)?)?)
}

// ---------------------------------------------------------------------------
// extremal
// ---------------------------------------------------------------------------

pub fn cmd_extremal(ctx: &Ctx, forbid: &str, n: &str, report: &mut LabReport) -> Result<()> {
    let (f, label) = parse_forbidden(forbid)?;
    let (lo, hi) = parse_n_range(n)?;
    let chi = chromatic_number(&f).map_err(|e| anyhow!("chromatic number of F: {e}"))?;
    if chi < 2 {
        bail!("forbidden graph must have at least one edge");
    }
    let r = chi - 1;
    report.observe(
        "forbidden-graph",
        "F, chi(F) = r + 1",
        json!({"forbidden": label, "chi": chi, "r": r, "g6": canon_g6(&f)?}),
    );

    let mut c0_terms: Vec<(usize, Option<i64>)> = Vec::new();
    for n in lo..=hi {
        let rec = ctx
            .store
            .get_or_compute(n, &f, ctx.tol, ctx.budget, &ctx.par)?;
        report.observe(
            format!("record-n{n}"),
            "ex(n,F), Ex(n,F), ex_ssp(n,F), Ex_ssp(n,F)",
            json!({
                "n": n,
                "ex": rec.ex,
                "ex_ssp": rec.ex_ssp,
                "classes": rec.classes,
                "c0_term": rec.c0_term,
                "ex_graphs": rec.ex_graphs,
                "ex_ssp_graphs": rec.ex_ssp_graphs,
                "near_ties": rec.near_ties,
            }),
        );
        let contained = rec
            .ex_ssp_graphs
            .iter()
            .all(|g6| rec.ex_graphs.contains(g6));
        let annotation = if r == 2 {
            "r = 2: spectral maximizers may leave the edge-extremal set (complete bipartite radii all tie at q = n)"
        } else {
            "r >= 3: containment expected for large n; observed status only at desk scale"
        };
        report.observe(
            format!("containment-n{n}"),
            "Ex_ssp(n,F) ⊆ Ex(n,F)",
            json!({"n": n, "holds": contained, "note": annotation}),
        );
        for (i, g6) in rec.ex_graphs.iter().enumerate() {
            report.add_graph(format!("n{n}-ex-{i}"), g6.clone());
        }
        for (i, g6) in rec.ex_ssp_graphs.iter().enumerate() {
            report.add_graph(format!("n{n}-ssp-{i}"), g6.clone());
        }
        c0_terms.push((n, rec.c0_term));
    }

    if hi > lo {
        let sup = c0_terms.iter().filter_map(|&(_, t)| t).max();
        report.observe(
            "c0-window",
            "sup_n { ex(n,F) - t_r(n) } over the computed window",
            json!({"terms": c0_terms, "window_sup": sup}),
        );
    }
    if chi >= 3 && lo >= 2 {
        match hypothesis_check_thm25(&f, lo..=hi, ctx.eps, ctx.tol, &ctx.par) {
            Ok(rows) => {
                for row in rows {
                    report.observe(
                        format!("spectral-hypotheses-n{}", row.n),
                        "|ex(n,F)-ex(n-1,F)-pi(F) n| and |q(G_n)-4 ex(n,F)/n|",
                        json!({
                            "n": row.n,
                            "slope_gap": row.slope_gap,
                            "radius_gap": row.radius_gap,
                            "proxy_classes": row.proxy_classes,
                            "eps": ctx.eps,
                        }),
                    );
                }
            }
            Err(e) => report.observe(
                "spectral-hypotheses",
                "|ex(n,F)-ex(n-1,F)-pi(F) n| and |q(G_n)-4 ex(n,F)/n|",
                json!({"unavailable": e.to_string()}),
            ),
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify-lemmas
// ---------------------------------------------------------------------------

fn suite_row(report: &mut LabReport, suite: &SuiteOutcome) {
    report.assert_check(
        suite.name.clone(),
        suite.anchor.clone(),
        suite.passed(),
        json!({
            "instances": suite.instances,
            "violations": suite.violations,
            "worst_margin": suite.worst_margin,
            "worst_instance": suite.worst_instance,
        }),
    );
    if !suite.passed() {
        if let Some(w) = &suite.worst_instance {
            if graph6_decode(w).is_ok() {
                report.add_graph(format!("violation-{}", suite.name), w.clone());
            }
        }
    }
}

pub fn cmd_verify(ctx: &Ctx, n_cap: Option<usize>, report: &mut LabReport) -> Result<()> {
    use qturan::suites::*;
    let cap = |default: usize, min: usize| n_cap.unwrap_or(default).clamp(min, default);

    suite_row(report, &cai_fan_suite(6, cap(40, 6), ctx.tol)?);
    suite_row(report, &bipartite_identity_suite(cap(40, 2), ctx.tol)?);
    suite_row(report, &solver_vs_quotient_suite(5, cap(24, 5), ctx.tol)?);
    suite_row(report, &balancing_monotonicity_suite(cap(24, 4))?);
    suite_row(report, &turan_gap_suite(cap(24, 4))?);
    suite_row(report, &join_bound_suite(500, 0x4A2B, ctx.tol)?);
    suite_row(report, &furedi_sweep(2, cap(8, 3), &ctx.par)?);
    suite_row(report, &furedi_sweep(3, cap(7, 4), &ctx.par)?);
    suite_row(report, &edge_monotonicity_suite(cap(8, 3), 4, 0x2258, &ctx.par)?);
    suite_row(report, &rayleigh_identity_suite(10_000, 0x3359)?);
    suite_row(report, &intersection_suite(10_000, 12, 0x445A));
    suite_row(report, &graph6_roundtrip_suite(10_000, 40, 0x1157)?);
    Ok(())
}

// ---------------------------------------------------------------------------
// fan-problem
// ---------------------------------------------------------------------------

pub fn cmd_fan_problem(
    ctx: &Ctx,
    k: usize,
    t: usize,
    n: usize,
    enumerate: bool,
    report: &mut LabReport,
) -> Result<()> {
    if k < 1 || t < 3 {
        bail!("fan comparison needs k >= 1 and t >= 3");
    }
    let a = k * (t - 2);
    let r = t - 1;
    if n <= a || n < r {
        bail!("need n > k(t-2) and n >= t-1");
    }

    let t_graph = turan(r, n)?;
    let q_t_solver = q_radius(&t_graph, ctx.tol)?.radius;
    let q_t_closed = cai_fan_turan_q(n, r)?;
    report.assert_check(
        "turan-q-agreement",
        "|q_solver(T_r(n)) - q_closed(T_r(n))| <= tol",
        (q_t_solver - q_t_closed).abs() <= ctx.tol,
        json!({"solver": q_t_solver, "closed": q_t_closed, "r": r, "n": n}),
    );

    let split = complete_split(a, n)?;
    let q_s_solver = q_radius(&split, ctx.tol)?.radius;
    let q_s_closed = complete_split_q(a, n)?;
    report.assert_check(
        "split-q-agreement",
        "|q_solver(K_a v K̄_{n-a}) - q_closed| <= tol",
        (q_s_solver - q_s_closed).abs() <= ctx.tol,
        json!({"solver": q_s_solver, "closed": q_s_closed, "a": a, "n": n}),
    );

    let verdict = if q_t_solver > q_s_solver + 1e-9 {
        "turan"
    } else if q_s_solver > q_t_solver + 1e-9 {
        "split"
    } else {
        "tie"
    };
    report.observe(
        "fan-q-comparison",
        "q(T_{t-1}(n)) vs q(K_{k(t-2)} v K̄_{n-k(t-2)}) over F_{k,t}-free candidates",
        json!({
            "k": k, "t": t, "n": n,
            "q_turan": q_t_solver,
            "q_split": q_s_solver,
            "larger": verdict,
            "note": if r >= 3 {
                "r >= 3: the balanced Turán graph dominates the complete split graph"
            } else {
                "r = 2 boundary: complete bipartite radii tie at q = n"
            },
        }),
    );
    report.add_graph("turan", canon_g6(&t_graph)?);
    report.add_graph("split", canon_g6(&split)?);

    if enumerate {
        if n > ENUMERATE_HARD_MAX {
            report.observe(
                "enumerated-ex-ssp",
                "ex_ssp(n, F_{k,t}) by full enumeration",
                json!({"unavailable": format!("n = {n} beyond the enumeration cap {ENUMERATE_HARD_MAX}")}),
            );
        } else {
            let f = fan(k, t)?;
            let rec = ctx
                .store
                .get_or_compute(n, &f, ctx.tol, ctx.budget, &ctx.par)?;
            let split_g6 = canon_g6(&split)?;
            let turan_g6 = canon_g6(&t_graph)?;
            report.observe(
                "enumerated-ex-ssp",
                "ex_ssp(n, F_{k,t}) by full enumeration",
                json!({
                    "ex_ssp": rec.ex_ssp,
                    "attained_by": rec.ex_ssp_graphs,
                    "near_ties": rec.near_ties,
                    "split_attains": rec.ex_ssp_graphs.contains(&split_g6),
                    "turan_attains": rec.ex_ssp_graphs.contains(&turan_g6),
                }),
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// structure
// ---------------------------------------------------------------------------

pub fn cmd_structure(
    ctx: &Ctx,
    g6: &str,
    r_flag: Option<usize>,
    c0_flag: Option<usize>,
    forbid: Option<&str>,
    report: &mut LabReport,
) -> Result<()> {
    let g = graph6_decode(g6).map_err(|e| anyhow!("bad graph6 {g6:?}: {e}"))?;
    report.add_graph("input", g6.to_string());

    let parsed_f = forbid.map(parse_forbidden).transpose()?;
    let r = match (r_flag, &parsed_f) {
        (Some(r), _) => r,
        (None, Some((f, _))) => {
            let chi = chromatic_number(f).map_err(|e| anyhow!("chromatic number of F: {e}"))?;
            if chi < 3 {
                bail!("derived r = chi(F) - 1 must be >= 2; pass --r explicitly");
            }
            chi - 1
        }
        (None, None) => bail!("pass --r, or --forbid to derive r = chi(F) - 1"),
    };

    let min = min_internal_partition(&g, r)?;
    report.observe(
        "optimal-partition",
        "argmin over partitions of sum_i e(V_i) (max r-cut)",
        json!({
            "r": r,
            "minimum_internal": min.minimum,
            "unique_up_to_relabeling": min.unique,
            "minimizer_count": min.minimizer_count,
            "sizes": min.partition.sizes,
            "assignment": min.partition.assignment,
        }),
    );

    let c0 = c0_flag.unwrap_or(min.minimum);
    let rep = decompose(&g, &min.partition, c0)?;
    for check in &rep.checks {
        report.observe(
            format!("decomposition: {}", check.name),
            check.name.clone(),
            json!({"lhs": check.lhs, "rhs": check.rhs, "holds": check.pass,
                   "c0": c0, "c0_source": if c0_flag.is_some() {"supplied"} else {"optimal partition"}}),
        );
    }
    report.observe(
        "decomposition-summary",
        "e(G_in), e(G_out), A_i/B_i, max d_Gout, min Perron component",
        json!({
            "e_in": rep.e_in,
            "e_out": rep.e_out,
            "balance_gap": rep.balance_gap,
            "a_sizes": rep.a_sets.iter().map(Vec::len).collect::<Vec<_>>(),
            "b_sizes": rep.b_sets.iter().map(Vec::len).collect::<Vec<_>>(),
            "max_out_degree": rep.max_out_degree,
            "perron_min": rep.perron_min,
        }),
    );

    // the edge bound of the extraction is unconditional on clique-free inputs
    if contains(&g, &Graph::complete(r + 1)).is_none() {
        let f = furedi_subgraph(&g, r)?;
        report.assert_check(
            "max-cut-edge-bound",
            "e(H0) >= e(G) - (t_r(n) - e(G))",
            f.bound_ok,
            json!({"t": f.t, "e_h0": f.h0.edge_count(), "e_g": g.edge_count()}),
        );
        report.add_graph("h0", canon_g6(&f.h0)?);
    } else {
        report.observe(
            "max-cut-edge-bound",
            "e(H0) >= e(G) - (t_r(n) - e(G))",
            json!({"skipped": format!("input contains K_{}", r + 1)}),
        );
    }

    if let Some((f, label)) = parsed_f {
        if g.n() <= ENUMERATE_HARD_MAX {
            let rec = ctx
                .store
                .get_or_compute(g.n(), &f, ctx.tol, ctx.budget, &ctx.par)?;
            match stability_chain(&g, &f, &rec) {
                Ok(s) => report.observe(
                    "stability-chain",
                    "balance gap <= 1; x_min > 1 - c3/n; e(G) = ex(n,F); G in Ex(n,F)",
                    json!({
                        "forbidden": label,
                        "balance_gap": s.balance_gap,
                        "balanced": s.balanced,
                        "perron_min": s.perron_min,
                        "c3_fit": s.c3_fit,
                        "edge_extremal": s.edge_extremal,
                        "in_extremal_set": s.in_extremal_set,
                    }),
                ),
                Err(e) => report.observe(
                    "stability-chain",
                    "balance gap <= 1; x_min > 1 - c3/n; e(G) = ex(n,F); G in Ex(n,F)",
                    json!({"unavailable": e.to_string()}),
                ),
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// regularity
// ---------------------------------------------------------------------------

fn read_classes(path: &std::path::Path, n: usize) -> Result<Vec<VertexSet>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("read {}", path.display()))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut set = VertexSet::empty();
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .with_context(|| format!("class file line {}: bad index {tok:?}", lineno + 1))?;
            if v >= n {
                bail!("class file line {}: vertex {v} out of range (n = {n})", lineno + 1);
            }
            set.insert(v);
        }
        out.push(set);
    }
    if out.is_empty() {
        bail!("class file has no classes");
    }
    Ok(out)
}

pub fn cmd_regularity(
    ctx: &Ctx,
    g6: &str,
    classes_path: &std::path::Path,
    forbid: Option<&str>,
    report: &mut LabReport,
) -> Result<()> {
    let g = graph6_decode(g6).map_err(|e| anyhow!("bad graph6 {g6:?}: {e}"))?;
    let classes = read_classes(classes_path, g.n())?;
    let eps = ctx.eps;
    report.add_graph("fixture", g6.to_string());

    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            if classes[i].is_empty() || classes[j].is_empty() {
                continue;
            }
            let v = is_regular_pair(&g, classes[i], classes[j], eps)?;
            report.observe(
                format!("pair-{i}-{j}"),
                "|d(A,B) - d(U,W)| <= eps for all A,B with |A| >= eps|U|, |B| >= eps|W|",
                json!({
                    "regular": v.regular,
                    "density": v.base_density,
                    "worst_deviation": v.worst.map(|w| w.deviation),
                    "eps": eps,
                }),
            );
        }
    }

    let rep = partition_irregularity(&g, &classes, eps)?;
    report.observe(
        "partition-irregularity",
        "sum of |V_i||V_j| over irregular pairs <= eps n^2",
        json!({
            "mass": rep.mass,
            "regular": rep.regular,
            "irregular_pairs": rep.irregular_pairs,
            "eps": eps,
        }),
    );

    if let Some(forbid) = forbid {
        let (f, label) = parse_forbidden(forbid)?;
        if classes.len() != f.n() {
            bail!(
                "counting premises need one class per F-vertex: {} classes vs |V(F)| = {}",
                classes.len(),
                f.n()
            );
        }
        let rep = counting_premise(&g, &classes, eps, &f)?;
        report.observe(
            "counting-premises",
            "pairs regular, d >= (D+1) eps^(1/D), |X_i| >= |V(F)|/eps",
            json!({
                "forbidden": label,
                "premises_all_hold": rep.premises_all_hold,
                "edges": rep.edge_premises.iter().map(|p| json!({
                    "f_edge": p.f_edge, "regular": p.regular,
                    "density": p.density, "threshold": p.threshold, "density_ok": p.density_ok,
                })).collect::<Vec<_>>(),
                "sizes": rep.size_premises.iter().map(|p| json!({
                    "f_vertex": p.f_vertex, "size": p.size, "required": p.required, "ok": p.ok,
                })).collect::<Vec<_>>(),
                "embedding_found": rep.embedding_found,
            }),
        );
        // sufficiency is unconditional: premises holding must yield an embedding
        report.assert_check(
            "premises-imply-embedding",
            "premises all hold => class-respecting embedding exists",
            !rep.premises_all_hold || rep.embedding_found,
            json!({"premises_all_hold": rep.premises_all_hold, "embedding_found": rep.embedding_found}),
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// records
// ---------------------------------------------------------------------------

pub fn cmd_records(ctx: &Ctx, report: &mut LabReport) -> Result<()> {
    let list = ctx.store.list()?;
    report.observe(
        "cache",
        "record store inventory",
        json!({"dir": ctx.store.dir().display().to_string(), "records": list.len()}),
    );
    for s in list {
        report.observe(
            format!("record-{}", s.key),
            "cached (n, F) extremal record",
            json!({
                "n": s.n,
                "forbidden": s.forbidden,
                "ex": s.ex,
                "ex_ssp": s.ex_ssp,
                "classes": s.classes,
                "version": s.version,
            }),
        );
    }
    Ok(())
}

