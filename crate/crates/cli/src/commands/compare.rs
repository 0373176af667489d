use serde::Serialize;

use quatstat_core::analysis::{
    dyson_order_check, spectral_closed_form_check, CompareRow, CompareSummary, ComparisonModel, OracleCheck,
    ThermoModel,
};
use quatstat_core::thermo::Discrepancy;
use quatstat_core::Branch;

use crate::cli::{CompareArgs, OutputFormat};
use crate::commands::Sweep;
use crate::error::{CliError, CliResult};
use crate::output;
use crate::params::{resolve, Model, ParamsFile, ToySource};

#[derive(Serialize)]
struct CompareOutput<'a> {
    rows: &'a [CompareRow],
    summary: CompareSummary,
    checks: &'a [OracleCheck],
}

pub fn run(args: &CompareArgs) -> CliResult<()> {
    let (model, file) = resolve(&args.model)?;
    let sweep = Sweep::new(&args.sweep, &file)?;
    let cm = comparison_model(&model)?;

    let rows = sweep.map(|b| cm.row(b))?;
    let summary = CompareSummary::from_rows(&rows);
    let mut checks = vec![dyson_order_check(&cm.free_part, &cm.coupling)?];
    if let Some(e) = &cm.ensemble {
        let scaled = e.with_scale(sweep.particles, sweep.boltzmann)?;
        checks.push(spectral_closed_form_check(&scaled, &sweep.grid, args.model.tolerance)?);
    }

    let log: Vec<Discrepancy> = match discrepancy_model(&model, &file, &sweep)? {
        Some(tm) => sweep.discrepancies(args.model.tolerance, |b| tm.discrepancies(b)),
        None => Vec::new(),
    };
    output::write_file(&args.sweep.discrepancies, &output::json(&log)?)?;

    let text = match args.model.output {
        OutputFormat::Json => output::json(&CompareOutput {
            rows: &rows,
            summary,
            checks: &checks,
        })?,
        OutputFormat::Csv => {
            report_to_stderr(&summary, &checks);
            output::csv(
                &["beta", "Z_spectral", "Z_formal", "Z1_printed", "Z1_rederived", "Z_dyson"],
                rows.iter().map(|r| {
                    vec![
                        output::num(r.beta),
                        output::opt(r.z_spectral),
                        output::num(r.z_formal),
                        output::opt(r.z1_printed),
                        output::opt(r.z1_rederived),
                        output::num(r.z_dyson),
                    ]
                }),
            )
        }
    };
    output::emit(args.model.out.as_deref(), &text)?;

    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} = {:e} (expected {})", c.name, c.value, c.expected))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Oracle(failed.join("; ")))
    }
}

fn report_to_stderr(summary: &CompareSummary, checks: &[OracleCheck]) {
    let gap = |x: Option<f64>| x.map_or_else(|| "n/a".to_string(), |v| format!("{v:e}"));
    eprintln!("max |Z_spectral - Z_formal|   = {}", gap(summary.spectral_vs_formal));
    eprintln!("max |Z1_printed - Z1_rederived| = {}", gap(summary.printed_vs_rederived));
    eprintln!("max |Z1_rederived - Z_dyson|  = {}", gap(summary.rederived_vs_dyson));
    eprintln!("max |Z_dyson - Z_formal|      = {:e}", summary.dyson_vs_formal);
    for c in checks {
        let verdict = if c.passed { "ok" } else { "FAILED" };
        eprintln!("check {}: {:e} (expected {}) {verdict}", c.name, c.value, c.expected);
    }
}

/// Toy parameters off the commuting slice are compared as a general
/// matrix with their diagonal metric.
fn comparison_model(model: &Model) -> CliResult<ComparisonModel> {
    Ok(match model {
        Model::Spin(p) => ComparisonModel::spin(p)?,
        Model::Qubit { params, metric_diag } => ComparisonModel::qubit(params, *metric_diag)?,
        Model::Toy(src @ ToySource::Params(t)) => match src.slice() {
            Ok(s) => ComparisonModel::slice(&s)?,
            Err(_) => {
                t.validate()?;
                let (h, m) = model.operator_pair()?;
                ComparisonModel::general(&h, &m)?
            }
        },
        Model::Toy(src @ ToySource::Slice(_)) => ComparisonModel::slice(&src.slice()?)?,
        Model::Matrix { hamiltonian, metric } => ComparisonModel::general(hamiltonian, metric)?,
    })
}

fn discrepancy_model(model: &Model, file: &ParamsFile, sweep: &Sweep) -> CliResult<Option<ThermoModel>> {
    let (n, k) = (sweep.particles, sweep.boltzmann);
    Ok(match model {
        Model::Spin(p) => Some(ThermoModel::closed_form(p.energy_slice(), Branch::Rederived, n, k).with_spin(*p)),
        Model::Toy(src) => match src.slice() {
            Ok(slice) => {
                let tm = ThermoModel::closed_form(slice, Branch::Rederived, n, k);
                Some(match &file.volume_model {
                    Some(spec) => {
                        let (vm, volume) = spec.build(slice)?;
                        tm.with_volume(vm, volume)?
                    }
                    None => tm,
                })
            }
            Err(_) => None,
        },
        Model::Qubit { .. } | Model::Matrix { .. } => None,
    })
}
