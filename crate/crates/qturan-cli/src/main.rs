//! Lab CLI: extremal records, inequality suites, the fan-problem
//! comparison, structure and regularity reports, cache inspection.
//!
//! Exit codes: 0 clean, 1 an asserted check failed, 2 usage/config error,
//! 3 capacity or budget exhausted (partial report emitted).

mod commands;
mod input;
mod report;

use clap::{Parser, Subcommand};
use commands::Ctx;
use qturan::exec::Parallelism;
use qturan::store::RecordStore;
use report::LabReport;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "qturan",
    version,
    about = "Exact desk-scale lab for Turán numbers, extremal graphs and signless Laplacian spectral radii"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Write the JSON report here (plus .csv and .g6 sidecars); stdout otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Eigensolver residual tolerance and closed-form agreement tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// ε for regularity checks and the minimum-degree proxy filter.
    #[arg(long, global = true, default_value_t = 0.1)]
    eps: f64,

    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Node-expansion budget for enumerations.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Record cache directory (the LAB_CACHE_DIR environment variable
    /// overrides this flag).
    #[arg(long, global = true, default_value = "lab-cache")]
    cache: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Extremal records ex/Ex/ex_ssp/Ex_ssp per n, with containment verdicts.
    Extremal {
        /// Forbidden graph: family:<spec> (e.g. family:turan-clique:4,
        /// family:cycle:5, family:fan:2,3) or g6:<graph6>.
        #[arg(long)]
        forbid: String,
        /// Order or inclusive range, e.g. 7 or 4..9.
        #[arg(long)]
        n: String,
    },
    /// Run the full inequality suites (closed forms, balancing, join bound,
    /// max-cut bound, monotonicity, identities).
    VerifyLemmas {
        /// Cap the sweep orders (default: full published ranges).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compare q(T_{t-1}(n)) against the complete split graph
    /// K_{k(t-2)} ∨ K̄_{n-k(t-2)}, optionally against the enumerated optimum.
    FanProblem {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
        /// Also compute ex_ssp(n, F_{k,t}) by enumeration when feasible.
        #[arg(long)]
        enumerate: bool,
    },
    /// Optimal r-partition, G_in/G_out decomposition and the stability chain
    /// for a single graph.
    Structure {
        /// The graph, as graph6.
        #[arg(long)]
        g6: String,
        /// Number of classes (default: χ(F) - 1 when --forbid is given).
        #[arg(long)]
        r: Option<usize>,
        /// c₀ candidate for the decomposition checks (default: the optimal
        /// partition's internal edge count).
        #[arg(long)]
        c0: Option<usize>,
        /// Forbidden graph; enables the stability chain against the record.
        #[arg(long)]
        forbid: Option<String>,
    },
    /// ε-regularity of a fixture: pair scans, partition mass, counting
    /// premises.
    Regularity {
        /// The graph, as graph6.
        #[arg(long)]
        g6: String,
        /// Class file: one line per class, space-separated vertex indices.
        #[arg(long)]
        classes: PathBuf,
        /// Forbidden graph for the counting-premise checks.
        #[arg(long)]
        forbid: Option<String>,
    },
    /// List the cached extremal records.
    Records,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let cache_dir = std::env::var_os("LAB_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| cli.cache.clone());
    let ctx = Ctx {
        par: Parallelism::new(cli.workers),
        tol: cli.tol,
        eps: cli.eps,
        budget: cli.budget,
        store: RecordStore::new(&cache_dir),
    };

    let (name, config) = describe(&cli, &cache_dir);
    let mut report = LabReport::new(&name, config);
    let start = Instant::now();
    let outcome = run(&cli, &ctx, &mut report);
    report.timing_ms = start.elapsed().as_millis();

    let code = match outcome {
        Ok(()) => {
            if report.clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let partial = matches!(
                err.downcast_ref::<qturan::Error>(),
                Some(qturan::Error::BudgetExhausted { .. }) | Some(qturan::Error::Capacity { .. })
            );
            report.observe("error", "command aborted", json!({"error": err.to_string()}));
            eprintln!("error: {err}");
            if partial {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    };

    let emit = match &cli.out {
        Some(path) => report.write_files(path),
        None => report.print_stdout(),
    };
    if let Err(e) = emit {
        eprintln!("error writing report: {e}");
        return ExitCode::from(2);
    }
    code
}

fn run(cli: &Cli, ctx: &Ctx, report: &mut LabReport) -> anyhow::Result<()> {
    match &cli.cmd {
        Cmd::Extremal { forbid, n } => commands::cmd_extremal(ctx, forbid, n, report),
        Cmd::VerifyLemmas { n } => commands::cmd_verify(ctx, *n, report),
        Cmd::FanProblem { k, t, n, enumerate } => {
            commands::cmd_fan_problem(ctx, *k, *t, *n, *enumerate, report)
        }
        Cmd::Structure { g6, r, c0, forbid } => {
            commands::cmd_structure(ctx, g6, *r, *c0, forbid.as_deref(), report)
        }
        Cmd::Regularity { g6, classes, forbid } => {
            commands::cmd_regularity(ctx, g6, classes, forbid.as_deref(), report)
        }
        Cmd::Records => commands::cmd_records(ctx, report),
    }
}

fn describe(cli: &Cli, cache_dir: &PathBuf) -> (String, serde_json::Value) {
    let common = json!({
        "tol": cli.tol,
        "eps": cli.eps,
        "workers": cli.workers,
        "budget": cli.budget,
        "cache": cache_dir.display().to_string(),
    });
    let (name, mut config) = match &cli.cmd {
        Cmd::Extremal { forbid, n } => ("extremal", json!({"forbid": forbid, "n": n})),
        Cmd::VerifyLemmas { n } => ("verify-lemmas", json!({"n": n})),
        Cmd::FanProblem { k, t, n, enumerate } => (
            "fan-problem",
            json!({"k": k, "t": t, "n": n, "enumerate": enumerate}),
        ),
        Cmd::Structure { g6, r, c0, forbid } => (
            "structure",
            json!({"g6": g6, "r": r, "c0": c0, "forbid": forbid}),
        ),
        Cmd::Regularity { g6, classes, forbid } => (
            "regularity",
            json!({"g6": g6, "classes": classes.display().to_string(), "forbid": forbid}),
        ),
        Cmd::Records => ("records", json!({})),
    };
    config
        .as_object_mut()
        .unwrap()
        .extend(common.as_object().unwrap().clone());
    (name.to_string(), config)
}
