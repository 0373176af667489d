use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by a quaternion of norm {norm:e}")]
    ZeroDivision { norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("complex matrix violates the symplectic block structure (residual {residual:e})")]
    NotSymplectic { residual: f64 },

    #[error("matrix exponential overflowed")]
    Overflow,

    #[error("matrix is not normal in the embedding (departure {departure:e})")]
    NotNormal { departure: f64 },

    #[error("metric square root is singular: xy - |z|^2 = {gap:e}")]
    SingularTheta { gap: f64 },

    #[error("metric is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("not a density matrix: {0}")]
    NotDensity(String),

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("quadrature did not converge: last step-doubling change {change:e} > {tolerance:e}")]
    QuadratureUnconverged { change: f64, tolerance: f64 },

    #[error("degenerate levels: |a - b| = {gap:e}")]
    DegenerateLevels { gap: f64 },

    #[error("unphysical partition function Z1 = {z1:e} at beta = {beta}")]
    UnphysicalZ { beta: f64, z1: f64 },

    #[error("volume {volume} outside the model domain [{lo}, {hi}]")]
    DomainError { volume: f64, lo: f64, hi: f64 },

    #[error("mean energy is zero; relative fluctuation undefined")]
    ZeroMeanEnergy,

    #[error("energy {energy} outside [{lo}, {hi}]")]
    EnergyOutOfRange { energy: f64, lo: f64, hi: f64 },

    #[error("spectrum is not purely imaginary (real part {real_part:e})")]
    NonImaginarySpectrum { real_part: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
