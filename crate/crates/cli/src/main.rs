//! `dq`: command-line front end for the certification suites.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use dq_core::certify::{self, diff_reports, parse_eigenvalues, parse_specializations, AlgebraSel, Report, RunConfig, Suite};
use dq_core::derham::DeRham;
use dq_core::graded::GradedContext;
use dq_core::qlie::{c_v, QuantumLie};
use dq_core::rep::{RContext, Word};
use dq_core::Error;

#[derive(Parser)]
#[command(name = "dq", version, about = "Exact certification of quantized sl(n) coadjoint structures")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Rank parameter of sl(n).
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "DQ_THREADS", default_value_t = 0)]
    threads: usize,
    /// Record wall times per suite in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum QlieDump {
    Sigma,
    Bracket,
    Cv,
}

#[derive(Subcommand)]
enum Command {
    /// Yang-Baxter, Hecke, intertwining, classical limit and Q-invariance.
    RmatrixCheck {
        #[command(flatten)]
        common: Common,
        /// Longest word for the Q-invariance check.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Quantum Lie algebra relations, limits and scale insensitivity.
    Qlie {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        horizon: Option<usize>,
        /// Print a structure matrix in dump format instead of the summary.
        #[arg(long, value_enum)]
        dump: Option<QlieDump>,
    },
    /// Graded dimensions of the quantum symmetric and exterior algebras.
    Flatness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: Option<usize>,
        /// sym, ext, both, qlinear or all.
        #[arg(long, default_value = "all")]
        algebra: String,
    },
    /// The quantum de Rham complex.
    Derham {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        max_m: Option<usize>,
        /// Print the differential from bidegree (k, m) in dump format.
        #[arg(long, num_args = 2, value_names = ["K", "M"])]
        dump_d: Option<Vec<usize>>,
    },
    /// Invariants, character and quotient family of a maximal orbit.
    Orbit {
        #[command(flatten)]
        common: Common,
        /// Distinct eigenvalues summing to zero, e.g. `1,-1`.
        #[arg(long, allow_hyphen_values = true)]
        eigenvalues: Option<String>,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Comma list of t0.q1, t1.q1, t0.qgen, t1.qgen, tsym.q1, or `generic`.
        #[arg(long, default_value = "generic")]
        specializations: String,
    },
    /// Several suites in dependency order.
    Run {
        #[command(flatten)]
        common: Common,
        /// Comma list of rmatrix, qlie, flatness, derham, orbit, or `all`.
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        eigenvalues: Option<String>,
        #[arg(long, default_value = "generic")]
        specializations: String,
        #[arg(long, default_value = "all")]
        algebra: String,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        max_m: Option<usize>,
    },
    /// Structural diff of two reports; exit 1 if they differ.
    Diff { a: PathBuf, b: PathBuf },
    /// Generator matrices of a tensor word in V and V*, in dump format.
    DumpRep {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Word such as `V,V*`.
        #[arg(long, default_value = "V")]
        word: String,
        /// Directory for one dump file per generator and an index.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Config(m)) => Failure::Usage(m.clone()),
            _ => Failure::Runtime(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::new(e))
    }
}

fn base_config(common: &Common) -> RunConfig {
    let mut cfg = RunConfig::defaults(common.n);
    cfg.report_path = common.report.clone();
    cfg.thread_count = common.threads;
    cfg.timings = common.timings;
    cfg
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

/// Keeps `K ≥ D` when only one of them is given.
fn fit_horizon(cfg: &mut RunConfig, explicit_horizon: bool) {
    if !explicit_horizon && cfg.horizon < cfg.max_degree {
        cfg.horizon = cfg.max_degree;
    }
}

fn summarize(report: &Report, to_stderr: bool) {
    let mut lines = Vec::new();
    for s in &report.suites {
        let total = s.certificates.iter().filter(|c| !c.info).count();
        let ok = s.certificates.iter().filter(|c| !c.info && c.pass).count();
        let wall = s.wall_ms.map(|w| format!(" {w} ms")).unwrap_or_default();
        lines.push(format!("{}: {} ({ok}/{total}){wall}", s.name, if s.pass { "PASS" } else { "FAIL" }));
        for c in s.certificates.iter().filter(|c| !c.pass && !c.info) {
            lines.push(format!("  fail {}[{}]: expected {}, computed {}", c.context, c.degree, c.expected, c.computed));
        }
    }
    lines.push(format!("overall: {}", if report.pass { "PASS" } else { "FAIL" }));
    for l in lines {
        if to_stderr {
            eprintln!("{l}");
        } else {
            println!("{l}");
        }
    }
}

fn execute(cfg: &RunConfig, quiet: bool) -> Result<bool, Failure> {
    let report = certify::run(cfg)?;
    if let Some(p) = &cfg.report_path {
        std::fs::write(p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    summarize(&report, quiet);
    Ok(report.pass)
}

fn read_report(p: &Path) -> Result<Report, Failure> {
    let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    Report::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| Failure::Runtime(e.into()))?;
    Ok(pool.install(f))
}

fn main_inner(cli: Cli) -> Result<bool, Failure> {
    match cli.cmd {
        Command::RmatrixCheck { common, horizon } => {
            let mut cfg = base_config(&common);
            cfg.suites = vec![Suite::Rmatrix];
            set(&mut cfg.horizon, horizon);
            cfg.max_degree = cfg.max_degree.min(cfg.horizon).max(2);
            execute(&cfg, false)
        }
        Command::Qlie { common, horizon, dump } => {
            let mut cfg = base_config(&common);
            cfg.suites = vec![Suite::Qlie];
            set(&mut cfg.horizon, horizon);
            cfg.max_degree = cfg.max_degree.min(cfg.horizon).max(2);
            if let Some(which) = dump {
                cfg.validate()?;
                let text = with_pool(cfg.thread_count, || -> dq_core::Result<String> {
                    let ql = QuantumLie::new(cfg.n)?;
                    Ok(match which {
                        QlieDump::Sigma => ql.data.sigma.dump(),
                        QlieDump::Bracket => ql.data.bracket.dump(),
                        QlieDump::Cv => c_v(&ql.ctx, &Word::power(1)).dump(),
                    })
                })??;
                print!("{text}");
                return execute(&cfg, true);
            }
            execute(&cfg, false)
        }
        Command::Flatness { common, max_degree, algebra } => {
            let mut cfg = base_config(&common);
            cfg.suites = vec![Suite::Flatness];
            set(&mut cfg.max_degree, max_degree);
            cfg.algebra = algebra.parse::<AlgebraSel>()?;
            fit_horizon(&mut cfg, false);
            execute(&cfg, false)
        }
        Command::Derham { common, max_k, max_m, dump_d } => {
            let mut cfg = base_config(&common);
            cfg.suites = vec![Suite::Derham];
            set(&mut cfg.derham_max_k, max_k);
            set(&mut cfg.derham_max_m, max_m);
            if let Some(km) = dump_d {
                cfg.validate()?;
                let (k, m) = (km[0], km[1]);
                if k == 0 {
                    return Err(Failure::Usage("--dump-d needs k >= 1".into()));
                }
                let text = with_pool(cfg.thread_count, || -> dq_core::Result<String> {
                    let g = GradedContext::new(Arc::new(QuantumLie::new(cfg.n)?))?;
                    Ok(DeRham::quantum(&g)?.differential(k, m)?.0.dump())
                })??;
                print!("{text}");
                return execute(&cfg, true);
            }
            execute(&cfg, false)
        }
        Command::Orbit { common, eigenvalues, max_degree, specializations } => {
            let mut cfg = base_config(&common);
            cfg.suites = vec![Suite::Orbit];
            set(&mut cfg.max_degree, max_degree);
            if let Some(e) = eigenvalues {
                cfg.eigenvalues = parse_eigenvalues(&e)?;
            }
            cfg.specializations = parse_specializations(&specializations)?;
            fit_horizon(&mut cfg, false);
            execute(&cfg, false)
        }
        Command::Run { common, suites, max_degree, horizon, eigenvalues, specializations, algebra, max_k, max_m } => {
            let mut cfg = base_config(&common);
            if suites != "all" {
                cfg.suites = suites.split(',').map(|s| s.trim().parse::<Suite>()).collect::<Result<_, _>>()?;
            }
            set(&mut cfg.max_degree, max_degree);
            set(&mut cfg.horizon, horizon);
            fit_horizon(&mut cfg, horizon.is_some());
            if let Some(e) = eigenvalues {
                cfg.eigenvalues = parse_eigenvalues(&e)?;
            }
            cfg.specializations = parse_specializations(&specializations)?;
            cfg.algebra = algebra.parse::<AlgebraSel>()?;
            set(&mut cfg.derham_max_k, max_k);
            set(&mut cfg.derham_max_m, max_m);
            execute(&cfg, false)
        }
        Command::Diff { a, b } => {
            let ra = read_report(&a)?;
            let rb = read_report(&b)?;
            let d = diff_reports(&ra, &rb);
            for l in &d {
                println!("{l}");
            }
            Ok(d.is_empty())
        }
        Command::DumpRep { n, word, out } => {
            if n < 2 {
                return Err(Failure::Usage(format!("n must be at least 2, got {n}")));
            }
            let w: Word = word.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let ctx = RContext::new(n)?;
            let m = ctx.module(&w);
            let mut index = Vec::new();
            for (g, i, mat) in m.generators() {
                let name = format!("{g:?}{}", i + 1);
                match &out {
                    Some(dir) => {
                        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                        let file = format!("{name}.dump");
                        std::fs::write(dir.join(&file), mat.dump()).with_context(|| format!("writing {file}"))?;
                        index.push(serde_json::json!({ "generator": name, "file": file, "nnz": mat.nnz() }));
                    }
                    None => print!("# {name}\n{}", mat.dump()),
                }
            }
            if let Some(dir) = &out {
                let meta = serde_json::json!({ "n": n, "word": w.to_string(), "dim": m.dim, "generators": index });
                std::fs::write(dir.join("index.json"), serde_json::to_string_pretty(&meta).unwrap() + "\n").context("writing index.json")?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
