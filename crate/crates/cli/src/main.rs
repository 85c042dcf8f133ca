//! `setdyn`: classify, orbit, cover and validate set-valued dynamical systems.
//!
//! Input documents are JSON objects with a `"kind"` of `"finite"` or
//! `"pwl"`; every report is JSON on standard output.

mod classify;
mod cover;
mod input;
mod orbit;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use setdyn::finite::DEFAULT_ORBIT_CAP;
use setdyn::interval::IntervalError;
use setdyn::oracle::OracleError;
use thiserror::Error;

use crate::input::Input;
use crate::orbit::{OrbitArgs, PolicyArg};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    #[error("validation found disagreements")]
    Mismatch,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<IntervalError> for CliError {
    fn from(e: IntervalError) -> Self {
        if e.is_resource_cap() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "setdyn",
    version,
    about = "Transitivity and mixing for set-valued dynamical systems"
)]
struct Cli {
    /// Worker threads for parallel sweeps (output does not depend on it).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Five-way verdicts: exact for finite systems, covering evidence for pwl maps.
    Classify {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        resolution: u32,
        #[arg(long, default_value_t = 64)]
        horizon: usize,
    },
    /// Orbit prefixes from a state, or sampled orbits from a point.
    Orbit {
        input: PathBuf,
        /// State index (finite) or rational point (pwl).
        #[arg(long)]
        from: Option<String>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        /// One policy only; all four are sampled when omitted.
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// First index from which `F^n(J)` contains the target.
    Cover {
        input: PathBuf,
        #[arg(long = "J", alias = "j", allow_hyphen_values = true)]
        j: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 64)]
        horizon: usize,
    },
    /// Exhaustive oracle agreement over every system on exactly N states.
    Validate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        states: u8,
    },
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Classify {
            input,
            resolution,
            horizon,
        } => print_json(&classify::run(&Input::load(&input)?, resolution, horizon)?),
        Command::Orbit {
            input,
            from,
            depth,
            cap,
            steps,
            policy,
            seed,
        } => {
            let args = OrbitArgs {
                from,
                depth,
                cap,
                steps,
                policy,
                seed,
            };
            print_json(&orbit::run(&Input::load(&input)?, &args)?)
        }
        Command::Cover {
            input,
            j,
            target,
            horizon,
        } => print_json(&cover::run(&Input::load(&input)?, &j, &target, horizon)?),
        Command::Validate { states } => {
            let summary = validate::run(states as usize)?;
            print_json(&summary);
            if !summary.passed() {
                return Err(CliError::Mismatch);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| execute(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
