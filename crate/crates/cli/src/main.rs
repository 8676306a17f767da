//! `qkm`: command-line access to the deformation, correlators, free energy
//! and verification suites.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliError, Kind, OmegaConvention};
use config::RunConfig;
use output::{Format, Output};

/// Orders above this are clamped unless `QKM_MAX_ORDER` says otherwise.
const DEFAULT_MAX_ORDER: i64 = 12;

#[derive(Parser, Debug)]
#[command(name = "qkm", version, about = "Exact genus-one invariants of the quartic Kontsevich model")]
struct Cli {
    /// JSON file with spectral data and verification settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Truncation order in λ; overrides the config.
    #[arg(long, global = true)]
    order: Option<i64>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Accepted for compatibility; nothing here is random.
    #[arg(long, global = true, value_parser = ["none"])]
    seed: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Deformed eigenvalues ε_k and weights ϱ_k.
    Deform,
    /// A correlator Ω_{g,n} on the diagonal.
    Omega {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "full")]
        convention: OmegaConvention,
        /// Eigenvalue index, starting at 1.
        #[arg(long, default_value_t = 1)]
        b: usize,
    },
    /// The genus-one free energy and its consistency checks.
    FreeEnergy {
        /// Also compute the τ-function comparison (d = 1).
        #[arg(long)]
        with_tau: bool,
        /// Also compute the bipartite double sum.
        #[arg(long)]
        bipartite: bool,
    },
    /// Brute-force vacuum ribbon graphs with `v` quartic vertices.
    Enumerate {
        #[arg(long)]
        v: usize,
    },
    /// Closed-form quadrangulation counts.
    Counts {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u64,
    },
    /// Run check groups and report pass/fail.
    Verify {
        /// Check groups to run; overrides the config.
        groups: Vec<String>,
        /// Run every acceptance criterion.
        #[arg(long)]
        acceptance: bool,
        /// Run one acceptance criterion; may be repeated.
        #[arg(long)]
        criterion: Vec<u8>,
    },
}

fn max_order() -> i64 {
    std::env::var("QKM_MAX_ORDER")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

fn effective_order(cli: &Cli, cfg: &RunConfig) -> Result<i64, CliError> {
    let want = cli.order.unwrap_or(cfg.input.order as i64);
    if want < 1 {
        return Err(CliError::Input(format!("order must be at least 1, got {want}")));
    }
    let cap = max_order();
    if want > cap {
        eprintln!("warning: order {want} clamped to {cap} (set QKM_MAX_ORDER to raise)");
        return Ok(cap);
    }
    Ok(want)
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let cfg = RunConfig::load(cli.config.as_deref()).map_err(CliError::Input)?;
    let order = effective_order(cli, &cfg)?;
    match &cli.command {
        Command::Deform => commands::deform(&cfg, order),
        Command::Omega { g, n, convention, b } => commands::omega(&cfg, *g, *n, *convention, *b, order),
        Command::FreeEnergy { with_tau, bipartite } => commands::free_energy(&cfg, order, *with_tau, *bipartite),
        Command::Enumerate { v } => commands::enumerate(&cfg, *v),
        Command::Counts { kind, n } => commands::counts(*kind, *n),
        Command::Verify { groups, acceptance, criterion } => {
            let mut cfg = cfg;
            if !groups.is_empty() {
                cfg.verify.checks = Some(groups.clone());
            }
            commands::verify(&cfg, order, *acceptance, criterion)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            if out.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
