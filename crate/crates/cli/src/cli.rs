use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "quatstat", version, about = "Thermodynamics of quasi-anti-Hermitian quaternionic Hamiltonians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep Z1, A, S, U, Cv (and P) over a beta grid.
    Thermo(ThermoArgs),
    /// Partition function along every available path, with self-checks.
    Compare(CompareArgs),
    /// Entropy and temperature of a two-level gas across its energy range.
    Negtemp(NegtempArgs),
    /// Classify a Hamiltonian against a metric.
    Validate(ModelArgs),
    /// Standard spectrum and signed energies of a Hamiltonian.
    Spectrum(ModelArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Toy,
    Spin,
    Qubit,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    ClosedForm,
    Spectral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Printed,
    Rederived,
}

/// `min:max:steps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl FromStr for BetaRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts[..] else {
            return Err(format!("expected min:max:steps, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        let range = BetaRange {
            min: num(min)?,
            max: num(max)?,
            steps: steps.trim().parse().map_err(|e| format!("{steps:?}: {e}"))?,
        };
        if range.steps == 0 {
            return Err("steps must be at least 1".into());
        }
        Ok(range)
    }
}

#[derive(Clone, Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "spin")]
    pub model: ModelKind,
    /// JSON parameter file.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, default_value_t = 2.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub v: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub output: OutputFormat,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Oracle comparison threshold.
    #[arg(long, env = "QUATSTAT_TOL", default_value_t = 1e-8)]
    pub tolerance: f64,
}

#[derive(Clone, Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "0.1:5:50")]
    pub beta: BetaRange,
    /// Space the grid evenly in ln(beta).
    #[arg(long)]
    pub log: bool,
    /// Worker threads for the sweep.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    #[arg(long, default_value_t = 1)]
    pub particles: u64,
    #[arg(long, default_value_t = 1.0)]
    pub boltzmann: f64,
    #[arg(long, default_value = "discrepancies.json")]
    pub discrepancies: PathBuf,
}

#[derive(Clone, Debug, Args)]
pub struct ThermoArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Closed form on the energy slice, or the spectral ensemble. Defaults
    /// to closed form for toy parameters and spectral otherwise.
    #[arg(long, value_enum)]
    pub path: Option<PathArg>,
    #[arg(long, value_enum, default_value = "rederived")]
    pub branch: BranchArg,
}

#[derive(Clone, Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Clone, Debug, Args)]
pub struct NegtempArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 100)]
    pub particles: u64,
    #[arg(long, default_value_t = 1.0)]
    pub boltzmann: f64,
    /// Number of energies from N*E_minus to N*E_plus inclusive.
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    #[arg(long, allow_hyphen_values = true, requires = "e_minus")]
    pub e_plus: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "e_plus")]
    pub e_minus: Option<f64>,
}
