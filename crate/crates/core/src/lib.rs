//! Quaternionic linear algebra and equilibrium statistical mechanics for
//! Hamiltonians that are anti-Hermitian with respect to a positive metric.
//!
//! Quaternionic matrices are handled through their complex `2n × 2n`
//! embedding, which carries products, adjoints, exponentials and spectra.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod expm;
pub mod metric;
pub mod models;
pub mod numdiff;
pub mod qmatrix;
pub mod quaternion;
pub mod spectrum;
pub mod thermo;

pub use error::{Error, Result};
pub use metric::{MetricOperator, MetricParams};
pub use models::negtemp::{Temperature, TwoLevelGas};
pub use models::qubit::{build_qubit_model, QubitModelParams};
pub use models::spin::{build_spin_model, spin_negative_temperature, SpinModelParams};
pub use models::ModelBundle;
pub use qmatrix::{dagger, mat_exp, mat_mul, re_trace, ComplexEmbedding, MatrixJson, QMatrix, QVector};
pub use quaternion::{is_imaginary, qconj, qinv, qmul, Quaternion};
pub use spectrum::{standard_spectrum, SpectralClass};
pub use thermo::{
    Branch, Discrepancy, EnergySliceParams, Provenance, SpectralEnsemble, ThermoReport, ToyModelParams,
    VolumeModel,
};
