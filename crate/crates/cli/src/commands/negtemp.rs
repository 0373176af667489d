use quatstat_core::analysis::negtemp_table;
use quatstat_core::{build_qubit_model, spin_negative_temperature, Temperature, TwoLevelGas};

use crate::cli::{NegtempArgs, OutputFormat};
use crate::error::{CliError, CliResult};
use crate::output;
use crate::params::{resolve, Model};

pub fn run(args: &NegtempArgs) -> CliResult<()> {
    let gas = gas(args)?;
    let rows = negtemp_table(&gas, args.points)?;
    let text = match args.model.output {
        OutputFormat::Json => output::json(&rows)?,
        OutputFormat::Csv => output::csv(
            &["E", "S_stirling", "S_exact", "T"],
            rows.iter().map(|r| {
                vec![
                    output::num(r.energy),
                    output::num(r.entropy_stirling),
                    output::num(r.entropy_exact),
                    match r.temperature {
                        Temperature::Finite(t) => output::num(t),
                        Temperature::Infinite => "infinite".to_string(),
                    },
                ]
            }),
        ),
    };
    output::emit(args.model.out.as_deref(), &text)
}

/// Explicit levels win over the model's own.
fn gas(args: &NegtempArgs) -> CliResult<TwoLevelGas> {
    let (n, k) = (args.particles, args.boltzmann);
    if let (Some(e_plus), Some(e_minus)) = (args.e_plus, args.e_minus) {
        return Ok(TwoLevelGas::with_boltzmann(n, e_plus, e_minus, k)?);
    }
    let (model, _) = resolve(&args.model)?;
    let (e_plus, e_minus) = match &model {
        Model::Spin(p) => {
            let g = spin_negative_temperature(p, n)?;
            (g.e_plus, g.e_minus)
        }
        Model::Qubit { params, metric_diag } => two_levels(&build_qubit_model(params, *metric_diag)?.ensemble.expanded_energies())?,
        Model::Toy(src) => {
            let s = src.slice()?;
            (s.a_e.max(s.b_e), s.a_e.min(s.b_e))
        }
        Model::Matrix { .. } => {
            return Err(CliError::Config("negtemp needs a two-level model or --e-plus/--e-minus".into()));
        }
    };
    Ok(TwoLevelGas::with_boltzmann(n, e_plus, e_minus, k)?)
}

fn two_levels(energies: &[f64]) -> CliResult<(f64, f64)> {
    match energies {
        [lo, hi] => Ok((*hi, *lo)),
        _ => Err(CliError::Config(format!("expected two levels, found {}", energies.len()))),
    }
}
