use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use latfix_cli::commands::{self, SolveFlags};

/// Extremal order-preserving solutions of polynomial-like iterative
/// functional equations on box lattices, plus exact finite-lattice
/// fixed-point checks.
#[derive(Parser)]
#[command(name = "latfix", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the equation described by a TOML config; writes f_* and
    /// f^* CSVs, a plot-ready CSV and a text report.
    Solve {
        config: PathBuf,
        /// Per-sweep stationarity tolerance (overrides the config).
        #[arg(long)]
        tol: Option<f64>,
        /// Equation-residual tolerance (overrides the config).
        #[arg(long)]
        tol_res: Option<f64>,
        /// Sweep budget per side (overrides the config).
        #[arg(long)]
        max_iter: Option<usize>,
        /// Where to put output files (default: current directory).
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check a candidate solution CSV against a config: residual,
    /// order preservation, semicontinuity; with a second CSV, compare
    /// the two under the uniqueness clauses.
    Verify {
        csv: PathBuf,
        csv2: Option<PathBuf>,
        #[arg(long)]
        config: PathBuf,
        /// Also report the p-integral of the candidate (1D only).
        #[arg(long)]
        p: Option<f64>,
    },
    /// Fixed points of a map on a finite lattice: the extremal formulas,
    /// iteration traces and the structure of the fixed-point set; or,
    /// with --all, iteration-law checks over every order-preserving map.
    Tarski {
        lattice: PathBuf,
        /// A map file of `element -> element` lines.
        #[arg(long, conflicts_with = "all")]
        map: Option<PathBuf>,
        /// Enumerate all order-preserving self-maps and check the
        /// iteration laws.
        #[arg(long)]
        all: bool,
        /// Pair count when the lattice is too large to enumerate.
        #[arg(long)]
        sample: Option<usize>,
        /// Seed for sampled law checks.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Solve the four built-in example equations and print a summary.
    Examples {
        /// Override every example's default grid size; values below 65
        /// relax the residual tolerance to 1e-4.
        #[arg(long)]
        resolution: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { config, tol, tol_res, max_iter, out_dir } => commands::cmd_solve(
            config,
            &SolveFlags {
                tol: *tol,
                tol_res: *tol_res,
                max_iter: *max_iter,
                out_dir: out_dir.clone(),
            },
        ),
        Command::Verify { csv, csv2, config, p } => {
            commands::cmd_verify(csv, csv2.as_deref(), config, *p)
        }
        Command::Tarski { lattice, map, all, sample, seed } => {
            commands::cmd_tarski(lattice, map.as_deref(), *all, *sample, *seed)
        }
        Command::Examples { resolution } => commands::cmd_examples(*resolution),
    };
    match result {
        Ok(output) => {
            print!("{}", output.text);
            ExitCode::from(output.code as u8)
        }
        Err(e) => {
            eprintln!("latfix: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
