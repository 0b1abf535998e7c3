use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bottleneck_tolerance::bench::{run_bench, BenchConfig};
use bottleneck_tolerance::verify::{run_verification, VerifyConfig};
use bottleneck_tolerance_cli::{
    cmd_validate, load_oracle, serve, write_all, CliError, EXIT_INVALID, EXIT_USAGE,
};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bptol",
    version,
    about = "Per-edge tolerances of max-min paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a graph file is simple, connected, and has distinct capacities.
    Validate {
        graph: PathBuf,
        /// Accept equal capacities, ordering them by edge id.
        #[arg(long)]
        break_ties: bool,
    },
    /// Preprocess, then answer `edge <id>` or `<u> <v>` queries from stdin.
    Serve {
        graph: PathBuf,
        pairs: PathBuf,
        #[arg(long)]
        break_ties: bool,
    },
    /// Print tolerances for every edge and every pair.
    All {
        graph: PathBuf,
        pairs: PathBuf,
        #[arg(long)]
        break_ties: bool,
    },
    /// Cross-check the oracle against exhaustive path enumeration on random graphs.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 500)]
        instances: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Time preprocessing and queries on a random instance.
    Bench {
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 500_000)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        k: usize,
        #[arg(long, default_value_t = 100_000)]
        queries: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<CliError>()
                .map_or(EXIT_USAGE, CliError::exit_code);
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let stdout = io::stdout();
    match cli.command {
        Command::Validate { graph, break_ties } => match cmd_validate(&graph, break_ties)? {
            None => {
                println!("ok");
                Ok(ExitCode::SUCCESS)
            }
            Some(violation) => {
                println!("invalid {violation}");
                Ok(ExitCode::from(EXIT_INVALID))
            }
        },
        Command::Serve {
            graph,
            pairs,
            break_ties,
        } => {
            let oracle = load_oracle(&graph, &pairs, break_ties)?;
            serve(&oracle, io::stdin().lock(), stdout.lock()).context("serving queries")?;
            Ok(ExitCode::SUCCESS)
        }
        Command::All {
            graph,
            pairs,
            break_ties,
        } => {
            let oracle = load_oracle(&graph, &pairs, break_ties)?;
            write_all(&oracle, BufWriter::new(stdout.lock())).context("writing output")?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            max_n,
            instances,
            seed,
        } => {
            let report = run_verification(VerifyConfig {
                max_n,
                instances,
                seed,
            })
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let mut out = stdout.lock();
            writeln!(out, "{report}")?;
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INVALID)
            })
        }
        Command::Bench {
            n,
            m,
            k,
            queries,
            seed,
        } => {
            let report = run_bench(BenchConfig {
                n,
                m,
                k,
                queries,
                seed,
            })
            .map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(stdout.lock(), "{report}")?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
