//! `freecon`: reductions, conjugacy and root queries, witness verification
//! and censuses for groups defined in TOML files.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::RunResult;

#[derive(Parser, Debug)]
#[command(name = "freecon", version, about = "Amalgamated free products and HNN extensions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for ball sweeps (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Override the enumeration window of the config.
    #[arg(long, global = true)]
    pub window: Option<u32>,
    /// Record wall-clock time in reports.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Emit the full run result as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Normal form and length of a word.
    Reduce { config: PathBuf, word: String },
    /// Elliptic or hyperbolic, with the cyclic core and conjugator.
    Classify { config: PathBuf, word: String },
    /// Decide conjugacy and print a conjugator.
    Conjugate { config: PathBuf, x: String, y: String },
    /// The d-th roots of a word.
    Roots {
        config: PathBuf,
        word: String,
        #[arg(short, long)]
        d: u32,
        /// Ball radius searched for roots of elliptic elements.
        #[arg(long)]
        search_bound: Option<usize>,
    },
    /// Print the witness word for d and n.
    Witness {
        config: PathBuf,
        #[arg(short, long)]
        d: u32,
        #[arg(short, long)]
        n: u32,
        /// Escalation level of the schedule.
        #[arg(long, default_value_t = 0)]
        level: usize,
        /// Use exponents alpha = n+4, beta = 3n+3.
        #[arg(long)]
        classical: bool,
    },
    /// Check the witness against every element of the ball of radius n.
    Verify {
        config: PathBuf,
        #[arg(short, long)]
        d: u32,
        #[arg(short, long)]
        n: u32,
        /// Use the fixed exponents alpha = n+4, beta = 3n+3.
        #[arg(long, conflicts_with_all = ["alpha", "beta"])]
        classical: bool,
        /// Fixed first exponent (requires --beta).
        #[arg(long, requires = "beta")]
        alpha: Option<u64>,
        /// Fixed second exponent (requires --alpha).
        #[arg(long, requires = "alpha")]
        beta: Option<u64>,
    },
    /// Count d-th roots of x^d over a ball.
    Census {
        config: PathBuf,
        #[arg(short, long)]
        d: u32,
        #[arg(short, long)]
        radius: usize,
    },
    /// Search the ball of radius N for an element escaping all translates
    /// of the elliptic set by the ball of radius m.
    Generosity {
        config: PathBuf,
        #[arg(short, long)]
        m: usize,
        #[arg(short = 'N', long = "big-n")]
        big_n: usize,
    },
    /// Structural flags: triviality, degeneracy, non-ascending.
    Detect { config: PathBuf },
}

fn emit(global: &Global, result: &RunResult) -> std::io::Result<()> {
    let text = if global.json {
        freecon::genericity::to_json(result)
    } else {
        result.rendered()
    };
    match &global.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || commands::run(&cli.global, &cli.command);
    let result = match cli.global.workers {
        Some(0) => RunResult::usage_error(&cli.command, "--workers must be positive".into()),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => RunResult::usage_error(&cli.command, format!("cannot start {n} workers: {e}")),
        },
        None => run(),
    };
    if let Some(msg) = &result.diagnostic {
        eprintln!("{msg}");
    }
    if let Err(e) = emit(&cli.global, &result) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(result.exit_code)
}
