//! Reduced single-qubit Hamiltonian `H = [[−2j e^{−iφ}, 0], [0, 0]]` from
//! an Ising-type two-qubit coupling.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{self, MetricOperator};
use crate::models::ModelBundle;
use crate::qmatrix::QMatrix;
use crate::quaternion::Quaternion;
use crate::spectrum;
use crate::thermo::spectral::SpectralEnsemble;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitModelParams {
    pub phi: f64,
    /// Coupling constants of the parent two-qubit interaction. Carried as
    /// metadata; the reduced matrix corresponds to `(0, 0, 1)`.
    #[serde(default = "ising_zeta")]
    pub zeta: [f64; 3],
}

fn ising_zeta() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

impl QubitModelParams {
    pub fn new(phi: f64) -> Self {
        Self { phi, zeta: ising_zeta() }
    }
}

/// `−2j e^{−iφ} = −2(cos φ) j − 2(sin φ) k`.
pub fn qubit_entry(phi: f64) -> Quaternion {
    Quaternion::new(0.0, 0.0, -2.0 * phi.cos(), -2.0 * phi.sin())
}

pub fn qubit_hamiltonian(p: &QubitModelParams) -> QMatrix {
    QMatrix::from_diagonal(&[qubit_entry(p.phi), Quaternion::ZERO])
}

/// Builds the model with metric `diag(α, γ)`, the identity when `None`.
pub fn build_qubit_model(p: &QubitModelParams, metric_diag: Option<(f64, f64)>) -> Result<ModelBundle> {
    if !p.phi.is_finite() {
        return Err(Error::InvalidInput(format!("phi must be finite, got {}", p.phi)));
    }
    let h = qubit_hamiltonian(p);
    let m = match metric_diag {
        Some((alpha, gamma)) => MetricOperator::diagonal(&[alpha, gamma])?,
        None => MetricOperator::identity(2),
    };
    let r = metric::anti_hermiticity_residual(&h, &m)?;
    if r > 1e-12 {
        return Err(Error::ConstraintViolation(format!(
            "qubit Hamiltonian failed the metric check (residual {r:e})"
        )));
    }
    let energies = spectrum::energies_by_continuation(&h, None)?;
    let ensemble = SpectralEnsemble::from_energies(&energies, 1, 1.0)?;
    let (free_part, coupling) = h.split_diagonal();
    Ok(ModelBundle {
        hamiltonian: h,
        metric: m,
        ensemble,
        free_part,
        coupling,
    })
}
