use clap::{Parser, Subcommand};
use num_rational::Ratio;
use p5oct_cli::commands::{self, parse_density, read_file, GenFlags, SolveFlags};
use p5oct_cli::selftest::{selftest, SelftestConfig};
use p5oct_cli::CliError;
use p5oct_core::blob::DEFAULT_BLOB_CAP;
use p5oct_core::GenKind;
use std::process::ExitCode;

/// Exact maximum-weight induced bipartite subgraph (odd cycle
/// transversal) on P5-free graphs.
#[derive(Parser)]
#[command(name = "p5oct", version)]
struct Cli {
    /// Worker threads (defaults to one per core). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file.
    Solve {
        path: String,
        /// Skip the P5-freeness check. The answer stays a valid bipartite
        /// set but is no longer guaranteed optimal.
        #[arg(long)]
        unchecked: bool,
        /// Refuse when the blob graph would exceed this many vertices.
        #[arg(long, default_value_t = DEFAULT_BLOB_CAP)]
        cap: usize,
        /// Print the JSON report instead of the summary.
        #[arg(long)]
        json: bool,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Solve by exhaustive search (at most 20 vertices).
    Oracle {
        path: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        timing: bool,
    },
    /// Check a JSON report against its instance.
    Verify { instance: String, report: String },
    /// Generate a random P5-free instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// rejection, substitution or split-like.
        #[arg(long, default_value = "substitution")]
        model: GenKind,
        /// Edge probability as a/b or a decimal.
        #[arg(long, default_value = "1/2", value_parser = parse_density)]
        density: Ratio<u64>,
        /// Draw random rational weights instead of unit weights.
        #[arg(long)]
        weighted: bool,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<String>,
    },
    /// Compare the solver with the brute-force oracle.
    Selftest {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve { path, unchecked, cap, json, timing } => {
            let report = commands::solve(&read_file(&path)?, &SolveFlags { unchecked, cap, timing })?;
            print!("{}", if json { report.to_json() } else { report.human() });
        }
        Command::Oracle { path, json, timing } => {
            let report = commands::oracle(&read_file(&path)?, timing)?;
            print!("{}", if json { report.to_json() } else { report.human() });
        }
        Command::Verify { instance, report } => {
            commands::verify(&read_file(&instance)?, &read_file(&report)?)?;
            println!("pass");
        }
        Command::Gen { n, seed, model, density, weighted, out } => {
            let text = commands::generate(&GenFlags { n, seed, model, density, weighted })?;
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })?;
                    println!("P5-free: yes");
                }
                None => {
                    print!("{text}");
                    eprintln!("P5-free: yes");
                }
            }
        }
        Command::Selftest { max_n, samples, seed } => {
            let summary = selftest(&SelftestConfig { max_n, samples, seed })?;
            print!("{}", summary.render());
            if !summary.passed() {
                return Err(CliError::Selftest(summary.mismatches.len()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
