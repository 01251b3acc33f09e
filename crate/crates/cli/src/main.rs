// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! `qsl`: speed-limit bounds, reachable-set sweeps and bound verification.
//!
//! Exit codes: 0 ok, 2 configuration error, 3 integration failure,
//! 4 bound violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsl_core::dynamics::DEFAULT_DT;
use qsl_core::models::BellLabel;
use thiserror::Error;

mod commands;
mod config;

use config::parse_angle;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("{0}")]
    Violation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Integration(_) => 3,
            CliError::Violation(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qsl", version, about = "Speed-limit bounds and reachable sets for open quantum systems")]
pub struct Cli {
    /// `key = value` file supplying any flag of the command; flags given on
    /// the command line take precedence
    #[arg(long, value_name = "FILE", global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate T* and the del Campo bound for one target radius or gate
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Bound(BoundArgs),
    /// Integrate the master equation and compare the reached radius with T*
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Simulate(SimulateArgs),
    /// Largest reachable radius versus initial-state angle theta
    #[command(args_override_self = true, allow_negative_numbers = true)]
    SweepLambda(SweepLambdaArgs),
    /// Reachable gates over an (alpha, beta) grid
    #[command(args_override_self = true, allow_negative_numbers = true)]
    GateMap(GateMapArgs),
    /// Largest reachable radius of each Bell state versus decay rate
    #[command(args_override_self = true, allow_negative_numbers = true)]
    BellSweep(BellSweepArgs),
    /// Check the bound against simulation on seeded random systems
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Damped qubit, H = omega*sz, M = sqrt(gamma)*s-
    Qubit,
    /// Qubit gate with drift omega*sx and control sz
    QubitGate,
    /// Spin-1 with drift omega*Sx and control Sz, from [1,0,1]/sqrt2
    Qutrit,
    /// Qutrit gate G(alpha, beta, delta)
    QutritGate,
    /// Bell pair under collective decay
    Bell,
}

/// Flags shared by every command.
#[derive(Debug, Clone, Args)]
pub struct Shared {
    /// Output file; stdout when absent
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Master seed for randomized runs
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Integrator step
    #[arg(long, default_value_t = DEFAULT_DT)]
    pub dt: f64,
    /// Evolution time / horizon
    #[arg(long = "T", value_name = "T")]
    pub t: Option<f64>,
    /// Comma-separated horizons, e.g. 0.3,0.5,0.8
    #[arg(long, value_name = "LIST")]
    pub horizons: Option<String>,
}

fn parse_bell(s: &str) -> Result<BellLabel, String> {
    s.parse().map_err(|e: qsl_core::models::ModelError| e.to_string())
}

/// Physical parameters; angles accept a `pi` suffix.
#[derive(Debug, Clone, Args)]
pub struct Physics {
    #[arg(long, value_enum, default_value_t = Model::Qubit)]
    pub model: Model,
    #[arg(long, default_value = "0", value_parser = parse_angle)]
    pub theta: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle)]
    pub phi: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long = "u-max", default_value_t = 1.0)]
    pub u_max: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle)]
    pub alpha: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle)]
    pub beta: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle)]
    pub delta: f64,
    /// Bell state: phi-plus, phi-minus, psi-plus, psi-minus
    #[arg(long, default_value = "phi-plus", value_parser = parse_bell)]
    pub state: BellLabel,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// Target radius in [0, 1] (non-gate models; default 1)
    #[arg(long, conflicts_with = "theta_t")]
    pub lambda: Option<f64>,
    /// Target relative-purity angle in [0, pi/2] (non-gate models)
    #[arg(long = "theta-t", value_parser = parse_angle)]
    pub theta_t: Option<f64>,
    #[command(flatten)]
    pub shared: Shared,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// Constant control amplitude (controlled models only)
    #[arg(long)]
    pub u: Option<f64>,
    #[command(flatten)]
    pub shared: Shared,
}

#[derive(Debug, Clone, Args)]
pub struct SweepLambdaArgs {
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle)]
    pub phi: f64,
    #[arg(long = "theta-min", default_value = "0", value_parser = parse_angle)]
    pub theta_min: f64,
    #[arg(long = "theta-max", default_value = "pi", value_parser = parse_angle)]
    pub theta_max: f64,
    #[arg(long, default_value_t = qsl_core::reachset::DEFAULT_1D_POINTS)]
    pub points: usize,
    #[command(flatten)]
    pub shared: Shared,
}

#[derive(Debug, Clone, Args)]
pub struct GateMapArgs {
    /// qubit or qutrit (the -gate spellings are accepted too)
    #[arg(long, value_enum, default_value_t = Model::Qubit)]
    pub model: Model,
    /// Qubit initial-state angle
    #[arg(long, default_value = "0", value_parser = parse_angle)]
    pub theta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long = "u-max", default_value_t = 1.0)]
    pub u_max: f64,
    /// Grid points along each of alpha and beta
    #[arg(long, default_value_t = qsl_core::reachset::DEFAULT_2D_POINTS)]
    pub points: usize,
    #[command(flatten)]
    pub shared: Shared,
}

#[derive(Debug, Clone, Args)]
pub struct BellSweepArgs {
    #[arg(long = "gamma-min", default_value_t = 0.01)]
    pub gamma_min: f64,
    #[arg(long = "gamma-max", default_value_t = 5.0)]
    pub gamma_max: f64,
    #[arg(long, default_value_t = qsl_core::reachset::DEFAULT_1D_POINTS)]
    pub points: usize,
    #[command(flatten)]
    pub shared: Shared,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Trials per dimension
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    /// Comma-separated Hilbert-space dimensions
    #[arg(long, default_value = "2,3,4")]
    pub dims: String,
    #[command(flatten)]
    pub shared: Shared,
}

fn run() -> Result<(), CliError> {
    let args = config::expand_args(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match cli.command {
        Command::Bound(a) => commands::bound(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::SweepLambda(a) => commands::sweep_lambda(&a),
        Command::GateMap(a) => commands::gate_map(&a),
        Command::BellSweep(a) => commands::bell_sweep(&a),
        Command::Verify(a) => commands::verify(&a),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qsl: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
