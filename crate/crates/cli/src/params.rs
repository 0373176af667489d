//! JSON parameter files and model selection.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use quatstat_core::models::qubit::qubit_hamiltonian;
use quatstat_core::models::spin::{spin_hamiltonian, spin_metric};
use quatstat_core::{
    EnergySliceParams, MatrixJson, MetricOperator, MetricParams, QMatrix, QubitModelParams, SpinModelParams,
    ToyModelParams, VolumeModel,
};

use crate::cli::{ModelArgs, ModelKind};
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub matrix: Option<MatrixJson>,
    pub metric: Option<MetricParams>,
    pub metric_diag: Option<Vec<f64>>,
    pub toy: Option<ToyModelParams>,
    pub slice: Option<EnergySliceParams>,
    pub spin: Option<SpinModelParams>,
    pub qubit: Option<QubitModelParams>,
    pub particles: Option<u64>,
    pub boltzmann: Option<f64>,
    pub volume_model: Option<VolumeSpec>,
}

/// Volume dependence of the slice parameters, anchored at the file's
/// `toy` or `slice` section.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum VolumeSpec {
    Constant {
        domain: (f64, f64),
        volume: f64,
    },
    PowerLaw {
        v0: f64,
        exponents: [f64; 3],
        domain: (f64, f64),
        volume: f64,
    },
}

impl VolumeSpec {
    pub fn build(&self, base: EnergySliceParams) -> CliResult<(VolumeModel, f64)> {
        Ok(match *self {
            VolumeSpec::Constant { domain, volume } => (VolumeModel::constant(base, domain)?, volume),
            VolumeSpec::PowerLaw {
                v0,
                exponents,
                domain,
                volume,
            } => (VolumeModel::power_law(base, v0, exponents, domain)?, volume),
        })
    }
}

impl ParamsFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    fn metric_for(&self, n: usize) -> CliResult<MetricOperator> {
        Ok(match (&self.metric, &self.metric_diag) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("give either metric or metric_diag, not both".into()));
            }
            (Some(p), None) => MetricOperator::build(p.x, p.y, p.z)?,
            (None, Some(d)) => MetricOperator::diagonal(d)?,
            (None, None) => MetricOperator::identity(n),
        })
    }

    fn metric_pair(&self) -> CliResult<Option<(f64, f64)>> {
        match self.metric_diag.as_deref() {
            None => Ok(None),
            Some(&[a, g]) => Ok(Some((a, g))),
            Some(d) => Err(CliError::Config(format!("qubit metric_diag needs 2 entries, got {}", d.len()))),
        }
    }
}

/// The model a command operates on.
#[derive(Clone, Debug)]
pub enum Model {
    Spin(SpinModelParams),
    Qubit {
        params: QubitModelParams,
        metric_diag: Option<(f64, f64)>,
    },
    Toy(ToySource),
    Matrix {
        hamiltonian: QMatrix,
        metric: MetricOperator,
    },
}

impl Model {
    /// Hamiltonian and metric for the classification commands. Toy entries
    /// are assembled without the constraint checks so a corrupted file is
    /// reported as a verdict rather than rejected.
    pub fn operator_pair(&self) -> CliResult<(QMatrix, MetricOperator)> {
        Ok(match self {
            Model::Spin(p) => (spin_hamiltonian(p), spin_metric(p)?),
            Model::Qubit { params, metric_diag } => (
                qubit_hamiltonian(params),
                match metric_diag {
                    Some((a, g)) => MetricOperator::diagonal(&[*a, *g])?,
                    None => MetricOperator::identity(2),
                },
            ),
            Model::Toy(ToySource::Params(t)) => (&t.free_part() + &t.coupling_part(), t.metric()?),
            Model::Toy(ToySource::Slice(_)) => {
                return Err(CliError::Config(
                    "a bare slice has no quaternionic Hamiltonian; supply toy or matrix parameters".into(),
                ));
            }
            Model::Matrix { hamiltonian, metric } => (hamiltonian.clone(), metric.clone()),
        })
    }
}

/// Selected model plus the file it came from (empty without `--params`).
pub fn resolve(args: &ModelArgs) -> CliResult<(Model, ParamsFile)> {
    let file = match &args.params {
        Some(path) => ParamsFile::load(path)?,
        None => ParamsFile::default(),
    };
    let spin_from_flags = || SpinModelParams::new(args.omega, args.v, args.x);
    let model = match args.model {
        ModelKind::Spin => match file.spin {
            Some(p) => {
                p.validate()?;
                Model::Spin(p)
            }
            None => Model::Spin(spin_from_flags()?),
        },
        ModelKind::Qubit => Model::Qubit {
            params: file.qubit.unwrap_or_else(|| QubitModelParams::new(args.phi)),
            metric_diag: file.metric_pair()?,
        },
        ModelKind::Toy => toy_model(&file).ok_or_else(|| {
            CliError::Config("--model toy needs --params with a toy or slice section".into())
        })?,
        ModelKind::File => {
            if args.params.is_none() {
                return Err(CliError::Config("--model file needs --params".into()));
            }
            if let Some(m) = &file.matrix {
                let hamiltonian = QMatrix::try_from(m.clone())?;
                let metric = file.metric_for(hamiltonian.dim())?;
                Model::Matrix { hamiltonian, metric }
            } else if let Some(p) = file.spin {
                p.validate()?;
                Model::Spin(p)
            } else if let Some(params) = file.qubit {
                Model::Qubit {
                    params,
                    metric_diag: file.metric_pair()?,
                }
            } else {
                toy_model(&file).ok_or_else(|| {
                    CliError::Config("parameter file has no matrix, spin, qubit, toy or slice section".into())
                })?
            }
        }
    };
    Ok((model, file))
}

fn toy_model(file: &ParamsFile) -> Option<Model> {
    match (file.toy, file.slice) {
        (Some(t), _) => Some(Model::Toy(ToySource::Params(t))),
        (None, Some(s)) => Some(Model::Toy(ToySource::Slice(s))),
        (None, None) => None,
    }
}

#[derive(Clone, Copy, Debug)]
pub enum ToySource {
    Params(ToyModelParams),
    Slice(EnergySliceParams),
}

impl ToySource {
    /// Real energy parameters; full toy parameters must pass their
    /// constraints and lie on the commuting slice.
    pub fn slice(&self) -> CliResult<EnergySliceParams> {
        match self {
            ToySource::Params(t) => {
                t.validate()?;
                Ok(t.energy_slice()?)
            }
            ToySource::Slice(s) => Ok(*s),
        }
    }
}
