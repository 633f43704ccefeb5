// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! `maser`: scenario runner for the driven transmon maser.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod output;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_SOLVER: u8 = 3;
pub const EXIT_TRUNCATION: u8 = 4;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(String),
    Io(String),
}

impl CliError {
    pub(crate) fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Solver(_) => EXIT_SOLVER,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Solver(m) => write!(f, "solver failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<maser::Error> for CliError {
    fn from(e: maser::Error) -> Self {
        use maser::Error as E;
        match e {
            E::Config(_) | E::InvalidParams(_) | E::InvalidDimension { .. } => CliError::Config(e.to_string()),
            E::Io(_) | E::Json(_) => CliError::Io(e.to_string()),
            _ => CliError::Solver(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "maser", version, about = "Single-atom transmon maser simulator")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Reservoir truncation, overriding the scenario default.
    #[arg(long = "n-reservoir", global = true)]
    pub n_reservoir: Option<usize>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Reduced truncations and grids.
    #[arg(long, global = true)]
    pub fast: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Transient from the ground state (three-panel population study with
    /// `[scenario.fig2]`).
    Evolve,
    /// Steady state, photon statistics and emitted power.
    Steady,
    /// Reservoir population against drive frequency.
    Spectroscopy,
    /// Photon number and Fano factor over the coupling plane.
    CouplingSweep,
    /// Drive scans at the named coupling points.
    ThresholdScan,
    /// Wigner function of the steady reservoir state.
    Wigner,
    /// Maximize emitted power with Nelder-Mead.
    Optimize,
    /// Dressed-state spectrum and effective rates.
    AnalyticReport,
    /// Standard against unity-lowering reservoir coupling.
    AppendixB,
    /// Two-level transmon pumped directly, against drive detuning.
    AppendixC,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.global.workers;
    match maser::par::with_workers(workers, || commands::run(cli.command, &cli.global)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("maser: {e}");
            ExitCode::from(e.code())
        }
    }
}
