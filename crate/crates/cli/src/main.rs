use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use c2lab_core::identities::{check_identities, IdentityConfig};
use c2lab_core::point_count::{Budgets, Routes};
use c2lab_core::verify::{
    cmd_compute_c2, cmd_sweep_involutions, cmd_verify_completion, load_graph, render_human,
    ExitStatus, VerifyConfig, VerifyReport,
};
use c2lab_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// c2-invariants of decompleted 4-regular graphs over prime fields.
#[derive(Parser, Debug)]
#[command(name = "c2lab", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// c2 of one graph by the chosen routes.
    Compute {
        /// graph6 or JSON edge list file holding one graph.
        #[arg(long)]
        graph: PathBuf,
        /// Treat the graph as 4-regular and decomplete at this vertex.
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        prime: Vec<u32>,
        #[arg(long, value_enum, default_value_t = RouteArg::All)]
        route: RouteArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check that every decompletion of every corpus graph has the same c2.
    VerifyCompletion {
        /// graph6 file (one per line), JSON edge list, or directory of JSON files.
        #[arg(long, required = true)]
        corpus: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        primes: Vec<u32>,
        #[arg(long, value_enum, default_value_t = RouteArg::All)]
        route: RouteArg,
        /// Skip the per-pair partition counts.
        #[arg(long)]
        no_case_counts: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Exhaustive involution sweeps on S- and R-pairs, orbit sweeps on T-pairs.
    SweepInvolutions {
        #[arg(long, required = true)]
        corpus: Vec<PathBuf>,
        /// Prime for the T-case orbit sweeps.
        #[arg(long, default_value_t = 2)]
        prime: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Polynomial identities at seeded random points.
    CheckIdentities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random points per graph, prime and identity.
        #[arg(long, default_value_t = 12)]
        points: usize,
    },
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Point-count and enumeration budget.
    #[arg(long)]
    budget: Option<u64>,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        match self.budget {
            Some(b) => Budgets {
                eval: b,
                enumeration: b,
            },
            None => Budgets::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Direct,
    Denom,
    Partition,
    All,
}

impl RouteArg {
    fn routes(self, completion: bool) -> Routes {
        match self {
            RouteArg::Direct => Routes {
                direct: true,
                denom: false,
                partition: false,
            },
            RouteArg::Denom => Routes {
                direct: false,
                denom: true,
                partition: false,
            },
            RouteArg::Partition => Routes {
                direct: false,
                denom: false,
                partition: true,
            },
            RouteArg::All => Routes {
                direct: true,
                denom: true,
                partition: completion,
            },
        }
    }
}

fn emit(report: &VerifyReport, json: bool) -> ExitCode {
    let text = if json {
        serde_json::to_string_pretty(report).expect("report serializes") + "\n"
    } else {
        render_human(report)
    };
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(report.exit_status() as u8)
}

fn fail(e: Error) -> ExitCode {
    eprintln!("c2lab: {e}");
    ExitCode::from(ExitStatus::of_error(&e) as u8)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let report = match cli.command {
        Command::Compute {
            graph,
            vertex,
            prime,
            route,
            budget,
        } => {
            let entry = load_graph(&graph)?;
            let config = VerifyConfig {
                inputs: vec![graph],
                primes: prime,
                routes: route.routes(vertex.is_some()),
                budgets: budget.budgets(),
                case_counts: false,
                ..Default::default()
            };
            cmd_compute_c2(&entry, vertex, &config)?
        }
        Command::VerifyCompletion {
            corpus,
            primes,
            route,
            no_case_counts,
            budget,
        } => {
            let config = VerifyConfig {
                inputs: corpus,
                primes,
                routes: route.routes(true),
                budgets: budget.budgets(),
                case_counts: !no_case_counts,
                ..Default::default()
            };
            cmd_verify_completion(&config)?
        }
        Command::SweepInvolutions {
            corpus,
            prime,
            budget,
        } => {
            let config = VerifyConfig {
                inputs: corpus,
                primes: vec![prime],
                budgets: budget.budgets(),
                ..Default::default()
            };
            cmd_sweep_involutions(&config)?
        }
        Command::CheckIdentities { seed, points } => {
            let ids = check_identities(&IdentityConfig {
                seed,
                points,
                ..Default::default()
            })?;
            let config = VerifyConfig {
                seed,
                ..Default::default()
            };
            let mut report = VerifyReport::empty("check-identities", &config);
            report.identities = Some(ids);
            report
        }
    };
    Ok(emit(&report, cli.json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli).unwrap_or_else(fail)
}
