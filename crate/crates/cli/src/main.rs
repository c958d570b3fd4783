use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

/// Count the classes of S_n under ξ ~ σ^a ξ σ^b for a full cycle σ.
#[derive(Debug, Parser)]
#[command(name = "sigma-classes", version)]
pub struct Cli {
    /// Output format
    #[arg(long, short, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Largest n the brute-force oracle will enumerate
    #[arg(
        long,
        global = true,
        env = "SIGMA_CLASSES_ORACLE_BOUND",
        default_value_t = sigma_classes::oracle::DEFAULT_ORACLE_BOUND
    )]
    oracle_bound: usize,

    /// Seed for the random full cycles used by `verify`
    #[arg(long, global = true, default_value_t = sigma_classes::oracle::DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the number of classes of S_n
    Compute {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Print the number of classes for every n in a range
    Table {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        from: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        to: u64,
    },
    /// Print the divisor / φ / h / product matrix for n
    Matrix {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Export the divisor-lattice graph for n
    Graph {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// List all solutions of σ^k ξ = ξ σ^l in S_n
    Solve {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        k: usize,
        l: usize,
    },
    /// Cross-check the formulas against brute force for every n in a range
    Verify {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        from: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        to: u64,
    },
    /// Enumerate the classes of S_n by brute force
    Classes {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// List every class with its smallest member
        #[arg(long, short)]
        verbose: bool,
    },
}

fn open_sink(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = open_sink(cli.output.as_ref())
        .map_err(|e| CliError::Usage(format!("cannot open output: {e}")))
        .and_then(|mut out| {
            let r = commands::run(&cli, &mut out);
            out.flush()
                .map_err(|e| CliError::Internal(format!("write failed: {e}")))?;
            r
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(msg) = e.message() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
