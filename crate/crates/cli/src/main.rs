//! One binary wiring every module together: closed-form bounds, property
//! verification, peeling traces, clique-removal extraction, random
//! witnesses, iterated greedy runs, the exhaustive oracle, the section-4
//! claim, and the special-case parameterizations.
//!
//! Reproducibility is the organizing principle: all randomness flows from
//! `--seed`, solver caps are deterministic node budgets, and any subcommand
//! run twice with the same configuration emits byte-identical output
//! regardless of thread count (`--threads`, overridden by the
//! `RAMSEYLAB_THREADS` environment variable).
//!
//! Exit codes: 0 success; 1 verdict failure (`verify` on a graph that fails
//! the property); 2 invalid input or usage; 3 budget refusal.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ramseylab_core::bounds::{self, Constants};
use ramseylab_core::constructions::{self, Regime, VerificationBudgets, WitnessConfig};
use ramseylab_core::exec::Parallelism;
use ramseylab_core::extraction::{self, RemovalMode};
use ramseylab_core::graph::Graph;
use ramseylab_core::oracle;
use ramseylab_core::property::{self, CertificateScan};
use ramseylab_core::rng::RngSpec;
use ramseylab_core::Error;
use serde::Serialize;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ramseylab",
    version,
    about = "Exact combinatorics of the (s,t)-property"
)]
struct Cli {
    /// Output format. CSV is available for `bounds` sweeps and `oracle table`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads: 0 = auto, 1 = sequential. Overridden by RAMSEYLAB_THREADS.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Cap on exhaustive subset enumeration.
    #[arg(long, global = true, default_value_t = property::DEFAULT_SUBSET_BUDGET)]
    subset_budget: u64,

    /// Cap on independent t-set enumeration per peeling round.
    #[arg(long, global = true, default_value_t = extraction::DEFAULT_TSET_BUDGET)]
    tset_budget: u64,

    /// Nominal solver cap in seconds, converted to a deterministic
    /// search-node budget (5e6 nodes per nominal second).
    #[arg(long, global = true, default_value_t = 60)]
    solver_cap_secs: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args, Clone, Copy)]
struct ConstantArgs {
    /// Asymptotic constant of the first lower bound.
    #[arg(long, default_value_t = 1.0)]
    c1: f64,
    /// Asymptotic constant of the second lower bound.
    #[arg(long, default_value_t = 1.0)]
    c2: f64,
    /// Asymptotic constant of the first upper bound.
    #[arg(long, default_value_t = 1.0)]
    c3: f64,
    /// Asymptotic constant of the second upper bound.
    #[arg(long, default_value_t = 1.0)]
    c4: f64,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
}

impl ConstantArgs {
    fn to_constants(self) -> Constants {
        Constants {
            c_thm1: self.c1,
            c_thm2: self.c2,
            c_thm3: self.c3,
            c_thm4: self.c4,
            delta: self.delta,
            gamma: self.gamma,
            epsilon: self.epsilon,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every closed-form bound for one or more parameter triples.
    Bounds {
        /// Vertex count(s), comma-separated for a sweep.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<u64>,
        #[command(flatten)]
        constants: ConstantArgs,
    },

    /// Check the (s,t)-property of a graph file.
    Verify {
        #[arg(long)]
        graph: std::path::PathBuf,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t = VerifyMode::Exhaustive)]
        mode: VerifyMode,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Run the counting peeling on a graph file and emit the trace.
    Peel {
        #[arg(long)]
        graph: std::path::PathBuf,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        /// Keep peeling past the proof's round cap while the pool lasts.
        #[arg(long)]
        beyond_cap: bool,
    },

    /// Clique removal plus Ramsey extraction on a graph file.
    Extract {
        #[arg(long)]
        graph: std::path::PathBuf,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        /// Exact maximum-union removal (n <= 14) instead of greedy.
        #[arg(long)]
        exact: bool,
    },

    /// Build and verify a random witness graph at the prescribed p.
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum)]
        regime: RegimeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = constructions::DEFAULT_WITNESS_SAMPLES)]
        samples: u64,
        /// Write the witness graph as an edge-list file.
        #[arg(long)]
        emit_graph: Option<std::path::PathBuf>,
        #[command(flatten)]
        constants: ConstantArgs,
    },

    /// Iterated greedy independent-set runs on G(n,p).
    Greedy {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Target size; default is ceil((epsilon/p) ln(np)).
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
    },

    /// Exact f(n,s,t) by exhaustive enumeration ("oracle table --n N" sweeps
    /// every valid (s,t)).
    Oracle {
        /// Pass "table" to sweep all valid (s,t) for the given n.
        #[arg(value_parser = ["table"])]
        action: Option<String>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        /// Enumerate one graph per isomorphism class (required for n = 8).
        #[arg(long)]
        iso: bool,
    },

    /// Evaluate the claim inequality (t-1) f(n/2,s,t) >= s.
    Claim {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
    },

    /// The two special-case parameterizations at one n.
    Special {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        constants: ConstantArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Exhaustive,
    Sampled,
    TuranExhaustive,
    TuranSampled,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    Thm3,
    Thm4a,
    Thm4b,
}

impl RegimeArg {
    fn to_regime(self) -> Regime {
        match self {
            RegimeArg::Thm3 => Regime::Thm3,
            RegimeArg::Thm4a => Regime::Thm4a,
            RegimeArg::Thm4b => Regime::Thm4b,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = std::env::var("RAMSEYLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(cli.threads);
    #[cfg(feature = "parallel")]
    {
        if threads != 1 {
            // num_threads(0) lets rayon pick; errors only if built twice
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    let par = Parallelism::new(threads);

    match run(&cli, par) {
        Ok((output, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(output.as_bytes());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn render<T: Serialize>(value: &T, format: Format) -> ramseylab_core::Result<String> {
    let text = match format {
        Format::Json => serde_json::to_string(value).expect("reports serialize"),
        Format::Text => serde_json::to_string_pretty(value).expect("reports serialize"),
        Format::Csv => {
            return Err(Error::InvalidInput(
                "csv output is only available for `bounds` sweeps and `oracle table`".to_string(),
            ))
        }
    };
    Ok(text + "\n")
}

fn run(cli: &Cli, par: Parallelism) -> ramseylab_core::Result<(String, ExitCode)> {
    let solver_nodes = cli
        .solver_cap_secs
        .saturating_mul(constructions::SOLVER_NODES_PER_SECOND);
    match &cli.command {
        Command::Bounds { n, s, t, constants } => {
            let consts = constants.to_constants();
            let mut reports = Vec::new();
            for &n in n {
                for &s in s {
                    for &t in t {
                        reports.push(bounds::bounds_report(n, s, t, &consts)?);
                    }
                }
            }
            let out = match cli.format {
                Format::Csv => bounds_csv(&reports),
                _ if reports.len() == 1 => render(&reports[0], cli.format)?,
                _ => render(&reports, cli.format)?,
            };
            Ok((out, ExitCode::SUCCESS))
        }

        Command::Verify {
            graph,
            s,
            t,
            mode,
            samples,
            seed,
        } => {
            let g = Graph::read_edge_list(graph)?;
            let report = match mode {
                VerifyMode::Exhaustive => {
                    property::check_exhaustive(&g, *s, *t, cli.subset_budget, par)?
                }
                VerifyMode::Sampled => {
                    property::check_sampled(&g, *s, *t, *samples, RngSpec::new(*seed), par)?
                }
                VerifyMode::TuranExhaustive => property::turan_certificate(
                    &g,
                    *s,
                    *t,
                    CertificateScan::Exhaustive {
                        budget: cli.subset_budget,
                    },
                    par,
                )?,
                VerifyMode::TuranSampled => property::turan_certificate(
                    &g,
                    *s,
                    *t,
                    CertificateScan::Sampled {
                        samples: *samples,
                        rng: RngSpec::new(*seed),
                    },
                    par,
                )?,
            };
            let code = if report.verdict == property::Verdict::Fails {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
            Ok((render(&report, cli.format)?, code))
        }

        Command::Peel {
            graph,
            s,
            t,
            beyond_cap,
        } => {
            let g = Graph::read_edge_list(graph)?;
            let trace = extraction::thm2_peel(&g, *s, *t, cli.tset_budget, *beyond_cap)?;
            Ok((render(&trace, cli.format)?, ExitCode::SUCCESS))
        }

        Command::Extract { graph, s, t, exact } => {
            let g = Graph::read_edge_list(graph)?;
            let mode = if *exact {
                RemovalMode::Exact
            } else {
                RemovalMode::Greedy
            };
            let result = extraction::thm1_extract(&g, *s, *t, mode)?;
            Ok((render(&result, cli.format)?, ExitCode::SUCCESS))
        }

        Command::Construct {
            n,
            s,
            t,
            regime,
            seed,
            samples,
            emit_graph,
            constants,
        } => {
            let config = WitnessConfig {
                n: *n,
                s: *s,
                t: *t,
                regime: regime.to_regime(),
                constants: constants.to_constants(),
                rng: RngSpec::new(*seed),
            };
            let budgets = VerificationBudgets {
                samples: *samples,
                solver_nodes,
            };
            let (g, report) = constructions::build_witness(&config, &budgets, par)?;
            if let Some(path) = emit_graph {
                g.write_edge_list(path)?;
            }
            Ok((render(&report, cli.format)?, ExitCode::SUCCESS))
        }

        Command::Greedy {
            n,
            p,
            seed,
            k,
            epsilon,
        } => {
            let g = Graph::gnp(*n as u32, *p, RngSpec::new(*seed))?;
            let lemma = constructions::lemma_failure_bound(*n, *p, *epsilon).ok();
            let target = match k {
                Some(k) => *k,
                None => {
                    let lemma = lemma.as_ref().ok_or_else(|| {
                        Error::InvalidInput(
                            "cannot derive k: lemma preconditions fail (need np > 1, \
                             0 < epsilon < 2/3); pass --k explicitly"
                                .to_string(),
                        )
                    })?;
                    lemma.k.ceil() as u64
                }
            };
            let run =
                constructions::iterated_greedy(&g, target, RngSpec::with_stream(*seed, 3 << 32))?;
            #[derive(Serialize)]
            struct GreedyReport {
                n: u64,
                p: f64,
                seed: u64,
                epsilon: f64,
                lemma: Option<constructions::LemmaBound>,
                run: constructions::IteratedGreedy,
            }
            let report = GreedyReport {
                n: *n,
                p: *p,
                seed: *seed,
                epsilon: *epsilon,
                lemma,
                run,
            };
            Ok((render(&report, cli.format)?, ExitCode::SUCCESS))
        }

        Command::Oracle {
            action,
            n,
            s,
            t,
            iso,
        } => {
            if action.as_deref() == Some("table") {
                let table = oracle::oracle_table(*n, *iso, par)?;
                let out = match cli.format {
                    Format::Csv => oracle_csv(&table),
                    _ => render(&table, cli.format)?,
                };
                Ok((out, ExitCode::SUCCESS))
            } else {
                let (s, t) = match (s, t) {
                    (Some(s), Some(t)) => (*s, *t),
                    _ => {
                        return Err(Error::InvalidInput(
                            "--s and --t are required (or use `oracle table --n N`)".to_string(),
                        ))
                    }
                };
                let result = oracle::f_bruteforce(*n, s, t, *iso, par)?;
                Ok((render(&result, cli.format)?, ExitCode::SUCCESS))
            }
        }

        Command::Claim { n, s, t } => {
            let check = bounds::claim_check(*n, *s, *t)?;
            #[derive(Serialize)]
            struct ClaimReport {
                n: u64,
                s: u64,
                t: u64,
                holds: bool,
                lhs: f64,
            }
            let report = ClaimReport {
                n: *n,
                s: *s,
                t: *t,
                holds: check.holds,
                lhs: check.lhs,
            };
            Ok((render(&report, cli.format)?, ExitCode::SUCCESS))
        }

        Command::Special { n, constants } => {
            let report = bounds::special_cases(*n, &constants.to_constants())?;
            Ok((render(&report, cli.format)?, ExitCode::SUCCESS))
        }
    }
}

// ----------------------------------------------------------------------
// CSV rendering
// ----------------------------------------------------------------------

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn bounds_csv(reports: &[bounds::BoundReport]) -> String {
    let mut out = String::from(
        "n,s,t,k,es_guarantee,thm1_value,thm1_branch,r,thm2_value,thm2_asymptotic,\
         p_thm3,ub_thm3,p_thm4a,p_thm4b,ub_thm4,thm4a_hypothesis_ok,thm4b_hypothesis_ok\n",
    );
    for r in reports {
        let branch = r
            .thm1_branch
            .map(|b| {
                serde_json::to_value(b)
                    .expect("branch serializes")
                    .as_str()
                    .expect("branch is a string")
                    .to_string()
            })
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.params.n,
            r.params.s,
            r.params.t,
            opt(&r.k),
            opt(&r.es_guarantee),
            opt(&r.thm1_value),
            branch,
            opt(&r.r),
            opt(&r.thm2_value),
            opt(&r.thm2_asymptotic),
            opt(&r.p_thm3),
            opt(&r.ub_thm3),
            opt(&r.p_thm4a),
            opt(&r.p_thm4b),
            opt(&r.ub_thm4),
            opt(&r.thm4a_hypothesis_ok),
            opt(&r.thm4b_hypothesis_ok),
        ));
    }
    out
}

fn oracle_csv(table: &[oracle::OracleResult]) -> String {
    let mut out = String::from("n,s,t,f_value,property_holders,graphs_enumerated,extremal_edges\n");
    for r in table {
        let edges = r
            .extremal_graph
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(";");
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.params.n,
            r.params.s,
            r.params.t,
            r.f_value,
            r.property_holders,
            r.graphs_enumerated,
            edges
        ));
    }
    out
}
