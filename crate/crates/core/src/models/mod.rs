//! Concrete two-level systems.

pub mod negtemp;
pub mod qubit;
pub mod spin;

use crate::metric::MetricOperator;
use crate::qmatrix::QMatrix;
use crate::thermo::spectral::SpectralEnsemble;

/// A Hamiltonian together with its metric and the real energies extracted
/// from its standard spectrum.
#[derive(Clone, Debug)]
pub struct ModelBundle {
    pub hamiltonian: QMatrix,
    pub metric: MetricOperator,
    pub ensemble: SpectralEnsemble,
    /// Diagonal part, the free Hamiltonian of the interaction picture.
    pub free_part: QMatrix,
    /// Off-diagonal part.
    pub coupling: QMatrix,
}
