use quatstat_core::analysis::{ComparisonModel, ThermoModel};
use quatstat_core::spectrum::energies_by_continuation;
use quatstat_core::{build_qubit_model, build_spin_model, Branch, Error as CoreError, SpectralEnsemble};

use crate::cli::{BranchArg, OutputFormat, PathArg, ThermoArgs};
use crate::commands::Sweep;
use crate::error::{CliError, CliResult};
use crate::output;
use crate::params::{resolve, Model, ParamsFile};

pub fn run(args: &ThermoArgs) -> CliResult<()> {
    let (model, file) = resolve(&args.model)?;
    let sweep = Sweep::new(&args.sweep, &file)?;
    let branch = match args.branch {
        BranchArg::Printed => Branch::Printed,
        BranchArg::Rederived => Branch::Rederived,
    };
    let tm = thermo_model(&model, &file, args.path, branch, &sweep)?;

    let reports = sweep.map(|b| tm.report(b))?;
    let log = sweep.discrepancies(args.model.tolerance, |b| tm.discrepancies(b));
    if !log.is_empty() {
        output::write_file(&args.sweep.discrepancies, &output::json(&log)?)?;
    }

    let text = match args.model.output {
        OutputFormat::Json => output::json(&reports)?,
        OutputFormat::Csv => {
            let mut header = vec!["beta", "Z1", "A", "S", "U", "Cv"];
            if tm.has_pressure() {
                header.push("P");
            }
            output::csv(
                &header,
                reports.iter().map(|r| {
                    let mut row = [r.beta, r.z1, r.free_energy, r.entropy, r.internal_energy, r.heat_capacity]
                        .map(output::num)
                        .to_vec();
                    if let Some(p) = r.pressure {
                        row.push(output::num(p));
                    }
                    row
                }),
            )
        }
    };
    output::emit(args.model.out.as_deref(), &text)
}

fn thermo_model(
    model: &Model,
    file: &ParamsFile,
    path: Option<PathArg>,
    branch: Branch,
    sweep: &Sweep,
) -> CliResult<ThermoModel> {
    let (n, k) = (sweep.particles, sweep.boltzmann);
    let closed_form_only = |what: &str| {
        CliError::Config(format!("{what} has no energy slice; use --path spectral"))
    };
    let tm = match model {
        Model::Spin(p) => match path.unwrap_or(PathArg::Spectral) {
            PathArg::Spectral => ThermoModel::spectral(&build_spin_model(p)?.ensemble, n, k)?,
            PathArg::ClosedForm => ThermoModel::closed_form(p.energy_slice(), branch, n, k),
        }
        .with_spin(*p),
        Model::Qubit { params, metric_diag } => match path.unwrap_or(PathArg::Spectral) {
            PathArg::Spectral => ThermoModel::spectral(&build_qubit_model(params, *metric_diag)?.ensemble, n, k)?,
            PathArg::ClosedForm => return Err(closed_form_only("the qubit model")),
        },
        Model::Toy(src) => {
            let slice = src.slice()?;
            match path.unwrap_or(PathArg::ClosedForm) {
                PathArg::ClosedForm => ThermoModel::closed_form(slice, branch, n, k),
                PathArg::Spectral => {
                    let disc = 0.25 * (slice.a_e - slice.b_e).powi(2) + slice.kappa;
                    let ensemble = ComparisonModel::slice(&slice)?.ensemble.ok_or(CoreError::NonImaginarySpectrum {
                        real_part: (-disc).sqrt(),
                    })?;
                    ThermoModel::spectral(&ensemble, n, k)?
                }
            }
        }
        Model::Matrix { hamiltonian, metric } => match path.unwrap_or(PathArg::Spectral) {
            PathArg::Spectral => {
                let energies = energies_by_continuation(&metric.similarity(hamiltonian)?, Some(&hamiltonian.split_diagonal().0))?;
                let ensemble = SpectralEnsemble::from_energies(&energies, 1, 1.0)?;
                ThermoModel::spectral(&ensemble, n, k)?
            }
            PathArg::ClosedForm => return Err(closed_form_only("a general matrix")),
        },
    };
    match &file.volume_model {
        None => Ok(tm),
        Some(spec) => {
            let Model::Toy(src) = model else {
                return Err(CliError::Config("volume_model needs a toy or slice section".into()));
            };
            let (vm, volume) = spec.build(src.slice()?)?;
            Ok(tm.with_volume(vm, volume)?)
        }
    }
}
