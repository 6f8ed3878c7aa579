//! Command-line front end for the sneakernet resource model: single-point
//! estimates, figure-data sweeps, inversion solves, fleet sizing, the
//! two-family comparison, and propagation validation.
//!
//! Exit status: 0 on success, 2 for invalid input or configuration, 3 when
//! a requested target is infeasible.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};

use commands::{Infeasible, SweepArgs, SweepKind};
use config::{CodeChoice, FormatChoice, IdlingChoice, Overrides, Settings};

#[derive(Parser)]
#[command(
    name = "qsneakernet",
    version,
    about = "Resource estimator for entanglement sneakernets on error-corrected neutral-atom memories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Shared {
    /// Code family to evaluate
    #[arg(long, value_enum)]
    code: Option<CodeChoice>,
    /// HGP memory patch size, physical qubits
    #[arg(long = "n-m", allow_negative_numbers = true)]
    n_m: Option<f64>,
    /// Surface patch size, physical qubits
    #[arg(long = "n-ms", allow_negative_numbers = true)]
    n_ms: Option<f64>,
    /// One-way transport time, seconds
    #[arg(long, allow_negative_numbers = true)]
    t3: Option<f64>,
    /// Two-qubit gate error
    #[arg(long, allow_negative_numbers = true)]
    pg: Option<f64>,
    /// Idling-error handling; per-patch defaults the gate error to 8e-4
    #[arg(long, value_enum)]
    idling: Option<IdlingChoice>,
    /// Target bit rate per destination, bits/s
    #[arg(long, allow_negative_numbers = true)]
    re: Option<f64>,
    /// Number of destination kiosks
    #[arg(long)]
    s: Option<u32>,
    /// Physical qubits one vehicle carries
    #[arg(long = "truck-capacity", allow_negative_numbers = true)]
    truck_capacity: Option<f64>,
    /// Hourly vehicle rent, dollars
    #[arg(long, allow_negative_numbers = true)]
    rent: Option<f64>,
    /// Yearly maintenance per memory device, dollars
    #[arg(long, allow_negative_numbers = true)]
    maintenance: Option<f64>,
    /// Physical qubits per memory device, for cost accounting
    #[arg(long = "device-qubits", allow_negative_numbers = true)]
    device_qubits: Option<f64>,
    /// JSON config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output format (default: json for single results, csv for tables)
    #[arg(long, value_enum)]
    format: Option<FormatChoice>,
    /// Write output to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Monte-Carlo seed
    #[arg(long)]
    seed: Option<u64>,
    /// Monte-Carlo trials
    #[arg(long)]
    trials: Option<u64>,
    /// Target total failure rate for solves and comparisons
    #[arg(long, allow_negative_numbers = true)]
    target: Option<f64>,
}

impl Shared {
    fn overrides(&self) -> Overrides {
        Overrides {
            code: self.code,
            memory_qubits: self.n_m,
            surface_qubits: self.n_ms,
            transport_time_s: self.t3,
            gate_error: self.pg,
            idling: self.idling,
            ebit_rate: self.re,
            destinations: self.s,
            truck_capacity_qubits: self.truck_capacity,
            rent_per_hour: self.rent,
            maintenance_per_device_year: self.maintenance,
            device_qubits: self.device_qubits,
            config: self.config.clone(),
            format: self.format,
            out: self.out.clone(),
            seed: self.seed,
            trials: self.trials,
            target: self.target,
        }
    }

    fn settings(&self) -> Result<Settings> {
        Settings::resolve(&self.overrides())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario and emit the full stage breakdown
    Estimate {
        #[command(flatten)]
        shared: Shared,
    },
    /// Evaluate a grid and emit plot-ready rows (curve-major order)
    Sweep {
        #[command(flatten)]
        shared: Shared,
        /// What to sweep
        #[arg(long, value_enum)]
        kind: SweepKind,
        /// Lower end of the swept variable
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        /// Upper end of the swept variable
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        /// Grid points (>= 2)
        #[arg(long, default_value_t = 25)]
        points: usize,
        /// Transport-time curves for rtot-nm, seconds
        #[arg(long = "t3-list", value_delimiter = ',')]
        t3_list: Option<Vec<f64>>,
        /// Target-rate curves for t3-nm
        #[arg(long = "target-list", value_delimiter = ',')]
        target_list: Option<Vec<f64>>,
    },
    /// Longest transport time meeting the target rate (qldpc)
    SolveT3 {
        #[command(flatten)]
        shared: Shared,
    },
    /// Smallest patch meeting the target rate at the configured transport time
    SolveNm {
        #[command(flatten)]
        shared: Shared,
        /// Patch-size search bracket as LO,HI
        #[arg(long)]
        bracket: Option<String>,
    },
    /// Fleet size and per-bit costs for the configured scenario
    Fleet {
        #[command(flatten)]
        shared: Shared,
    },
    /// Families side by side at one fidelity target
    Compare {
        #[command(flatten)]
        shared: Shared,
        /// Also solve the qldpc patch from the target instead of using --n-m
        #[arg(long)]
        solve_qldpc: bool,
    },
    /// Exact product vs additive sum vs Monte Carlo for a stage structure
    Validate {
        #[command(flatten)]
        shared: Shared,
        /// Explicit stages as CYCLESxRATE[,CYCLESxRATE...]; default uses the
        /// configured qldpc pipeline
        #[arg(long)]
        stages: Option<String>,
    },
}

fn parse_bracket(text: &str) -> Result<(f64, f64)> {
    let Some((lo, hi)) = text.split_once(',') else {
        bail!("bracket must be LO,HI (got '{text}')");
    };
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Estimate { shared } => commands::estimate(&shared.settings()?),
        Command::Sweep {
            shared,
            kind,
            from,
            to,
            points,
            t3_list,
            target_list,
        } => {
            let settings = shared.settings()?;
            let args = SweepArgs {
                kind,
                from,
                to,
                points,
                t3_list: t3_list.unwrap_or_else(|| vec![3_600.0, 5_400.0, 10_800.0]),
                target_list: target_list.unwrap_or_else(|| vec![0.2, 0.1, 0.05]),
            };
            commands::sweep(&settings, &args)
        }
        Command::SolveT3 { shared } => commands::solve_t3(&shared.settings()?),
        Command::SolveNm { shared, bracket } => {
            let bracket = bracket.as_deref().map(parse_bracket).transpose()?;
            commands::solve_nm(&shared.settings()?, bracket)
        }
        Command::Fleet { shared } => commands::fleet(&shared.settings()?),
        Command::Compare {
            shared,
            solve_qldpc,
        } => commands::compare(&shared.settings()?, solve_qldpc),
        Command::Validate { shared, stages } => {
            commands::validate(&shared.settings()?, stages.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error:#}");
            if error.downcast_ref::<Infeasible>().is_some() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
