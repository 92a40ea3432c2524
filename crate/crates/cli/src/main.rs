//! `qmoment`: checks and constructions for quaternionic moment sequences.
//!
//! Exit status is 0 when the checked property holds, 1 for bad input and 2
//! when the mathematical verdict is negative.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Globals, KernelArgs};
use report::{RunReport, EXIT_INPUT};

#[derive(Debug, Parser)]
#[command(name = "qmoment", version, about = "Quaternionic moment sequences: positivity, extension, synthesis, realizations")]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override the verdict tolerance of the subcommand.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Output file for produced sequences (CSV profile for neg-squares).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Is the block Toeplitz matrix T_N positive semidefinite?
    CheckPd {
        file: PathBuf,
        /// Toeplitz order N (defaults to the sequence support).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Negative-eigenvalue profile of T_0, ..., T_{N_max}.
    NegSquares {
        file: PathBuf,
        #[arg(long)]
        n_max: usize,
    },
    /// Positive extension by M further lags.
    Extend {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
    },
    /// Moments of a q-positive measure for n = 0..n_max.
    Synth {
        file: PathBuf,
        #[arg(long)]
        n_max: usize,
    },
    /// Moments of a difference of q-positive measures.
    SynthIndef {
        file: PathBuf,
        #[arg(long)]
        n_max: usize,
    },
    /// Validate a realization (J, U, C) and bound the negative squares of its moments.
    RealizeCheck {
        file: PathBuf,
        #[arg(long)]
        n_max: usize,
    },
    /// Sampled residuals of the Carathéodory kernel identity.
    KernelCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Truncation order M.
        #[arg(long, default_value_t = 60)]
        terms: usize,
        /// Sample points are drawn from the ball of this radius.
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        /// Uniform bound on ‖r(n)‖ (defaults to the largest given block).
        #[arg(long)]
        bound: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; help and version are not
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let g = Globals { seed: cli.seed, tol: cli.tol, out: cli.out.as_deref() };
    let mut report = RunReport::new("");
    let (name, result) = match &cli.command {
        Command::CheckPd { file, order } => ("check-pd", commands::check_pd(file, *order, &g, &mut report)),
        Command::NegSquares { file, n_max } => ("neg-squares", commands::neg_squares(file, *n_max, &g, &mut report)),
        Command::Extend { file, steps } => ("extend", commands::extend(file, *steps, &g, &mut report)),
        Command::Synth { file, n_max } => ("synth", commands::synth(file, *n_max, &g, &mut report)),
        Command::SynthIndef { file, n_max } => ("synth-indef", commands::synth_indef(file, *n_max, &g, &mut report)),
        Command::RealizeCheck { file, n_max } => {
            ("realize-check", commands::realize_check(file, *n_max, &g, &mut report))
        }
        Command::KernelCheck { file, samples, terms, radius, bound } => {
            let args = KernelArgs { samples: *samples, terms: *terms, radius: *radius, bound: *bound };
            ("kernel-check", commands::kernel_check(file, &args, &g, &mut report))
        }
    };
    report.subcommand = name;
    if let Err(e) = result {
        report.fail(&e);
    }
    print!("{}", report.render(cli.json));
    ExitCode::from(report.exit_status as u8)
}
