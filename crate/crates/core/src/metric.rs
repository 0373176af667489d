//! Metric operators and the symmetry classes they define.
//!
//! A metric `η` is a Hermitian positive-definite complex matrix with
//! Hermitian square root `Θ`. An operator `H` is pseudo-anti-Hermitian when
//! `η H η⁻¹ = −H†`, quasi-anti-Hermitian when additionally `η > 0`, and an
//! observable `Q` is pseudo-Hermitian when `η Q η⁻¹ = Q†`.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmatrix::{QMatrix, QVector};
use crate::quaternion::Quaternion;
use crate::spectrum::{self, SpectralClass};

/// Default relative tolerance for the symmetry checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Parameters of the general two-dimensional metric `Θ = [[x, z], [z̄, y]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricParams {
    pub x: f64,
    pub y: f64,
    pub z: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricOperator {
    eta: QMatrix,
    theta: QMatrix,
    eta_inv: QMatrix,
    theta_inv: QMatrix,
    params: Option<MetricParams>,
}

/// Eigenvalues of the Hermitian embedding of `m`, ascending.
fn hermitian_embedding_eigenvalues(m: &QMatrix) -> Vec<f64> {
    let x = m.embed().0;
    let herm = (&x + x.adjoint()) * Complex64::new(0.5, 0.0);
    let mut e: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

impl MetricOperator {
    /// `η = Θ²` with `Θ = [[x, z], [z̄, y]]`; requires `xy ≠ |z|²`.
    pub fn build(x: f64, y: f64, z: Complex64) -> Result<Self> {
        let gap = x * y - z.norm_sqr();
        let scale = (x * x + y * y + z.norm_sqr()).max(f64::MIN_POSITIVE);
        if gap.abs() <= 1e-12 * scale {
            return Err(Error::SingularTheta { gap });
        }
        let zq = Quaternion::from_complex(z);
        let theta = QMatrix::from_rows(vec![
            vec![Quaternion::real(x), zq],
            vec![zq.conj(), Quaternion::real(y)],
        ])?;
        let eta = QMatrix::from_rows(vec![
            vec![Quaternion::real(x * x + z.norm_sqr()), zq * (x + y)],
            vec![zq.conj() * (x + y), Quaternion::real(y * y + z.norm_sqr())],
        ])?;
        let mut m = Self::assemble(eta, theta)?;
        m.params = Some(MetricParams { x, y, z });
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            eta: QMatrix::identity(n),
            theta: QMatrix::identity(n),
            eta_inv: QMatrix::identity(n),
            theta_inv: QMatrix::identity(n),
            params: (n == 2).then_some(MetricParams {
                x: 1.0,
                y: 1.0,
                z: Complex64::new(0.0, 0.0),
            }),
        }
    }

    /// `diag(d)` with all `d_i > 0`.
    pub fn diagonal(d: &[f64]) -> Result<Self> {
        if let Some(&bad) = d.iter().find(|&&v| !(v > 0.0)) {
            return Err(Error::NotPositive { min_eigenvalue: bad });
        }
        let eta = QMatrix::from_diagonal(&d.iter().map(|&v| Quaternion::real(v)).collect::<Vec<_>>());
        let theta = QMatrix::from_diagonal(
            &d.iter().map(|&v| Quaternion::real(v.sqrt())).collect::<Vec<_>>(),
        );
        let mut m = Self::assemble(eta, theta)?;
        if d.len() == 2 {
            m.params = Some(MetricParams {
                x: d[0].sqrt(),
                y: d[1].sqrt(),
                z: Complex64::new(0.0, 0.0),
            });
        }
        Ok(m)
    }

    /// Metric from a Hermitian positive-definite complex matrix; `Θ` is its
    /// principal square root.
    pub fn from_eta(eta: QMatrix) -> Result<Self> {
        if !eta.is_complex_within(0.0) {
            return Err(Error::InvalidInput("metric must have zero j, k parts".into()));
        }
        let (m1, _) = eta.complex_parts();
        let herm = (&m1 + m1.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm);
        let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if !(min > 0.0) {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        let sqrt_vals = DMatrix::from_diagonal(
            &eig.eigenvalues.map(|v| Complex64::new(v.sqrt(), 0.0)),
        );
        let theta = &eig.eigenvectors * sqrt_vals * eig.eigenvectors.adjoint();
        Self::assemble(eta, QMatrix::from_complex(&theta))
    }

    fn assemble(eta: QMatrix, theta: QMatrix) -> Result<Self> {
        if eta.dim() != theta.dim() {
            return Err(Error::DimensionMismatch {
                expected: eta.dim(),
                found: theta.dim(),
            });
        }
        let scale = eta.frobenius_norm().max(f64::MIN_POSITIVE);
        if (&eta - &eta.dagger()).frobenius_norm() > 1e-12 * scale {
            return Err(Error::InvalidInput("metric is not Hermitian".into()));
        }
        let min = hermitian_embedding_eigenvalues(&eta)
            .first()
            .copied()
            .unwrap_or(f64::INFINITY);
        if !(min > 1e-14 * scale) {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        let theta_inv = theta.inverse()?;
        let eta_inv = &theta_inv * &theta_inv;
        Ok(Self {
            eta,
            theta,
            eta_inv,
            theta_inv,
            params: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.eta.dim()
    }

    pub fn eta(&self) -> &QMatrix {
        &self.eta
    }

    pub fn theta(&self) -> &QMatrix {
        &self.theta
    }

    pub fn eta_inv(&self) -> &QMatrix {
        &self.eta_inv
    }

    pub fn theta_inv(&self) -> &QMatrix {
        &self.theta_inv
    }

    pub fn params(&self) -> Option<MetricParams> {
        self.params
    }

    /// Eigenvalues of `η` read off its embedding (each appears twice).
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_embedding_eigenvalues(&self.eta)
    }

    /// `Θ M Θ⁻¹`, which is anti-Hermitian whenever `M` is
    /// quasi-anti-Hermitian with respect to this metric.
    pub fn similarity(&self, m: &QMatrix) -> Result<QMatrix> {
        self.check_dim(m)?;
        Ok(&(&self.theta * m) * &self.theta_inv)
    }

    /// `η M η⁻¹`.
    pub fn conjugate(&self, m: &QMatrix) -> Result<QMatrix> {
        self.check_dim(m)?;
        Ok(&(&self.eta * m) * &self.eta_inv)
    }

    fn check_dim(&self, m: &QMatrix) -> Result<()> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.dim(),
            });
        }
        Ok(())
    }
}

/// Free-function form of [`MetricOperator::build`].
pub fn build_metric(x: f64, y: f64, z: Complex64) -> Result<MetricOperator> {
    MetricOperator::build(x, y, z)
}

/// `Q‡ = η⁻¹ Q† η`.
pub fn eta_adjoint(q: &QMatrix, m: &MetricOperator) -> Result<QMatrix> {
    m.check_dim(q)?;
    Ok(&(m.eta_inv() * &q.dagger()) * m.eta())
}

fn relative(residual: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        if residual == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        residual / scale
    }
}

/// `‖η H η⁻¹ + H†‖ / ‖H‖`.
pub fn anti_hermiticity_residual(h: &QMatrix, m: &MetricOperator) -> Result<f64> {
    let lhs = m.conjugate(h)?;
    Ok(relative((&lhs + &h.dagger()).frobenius_norm(), h.frobenius_norm()))
}

/// `‖η Q η⁻¹ − Q†‖ / ‖Q‖`.
pub fn hermiticity_residual(q: &QMatrix, m: &MetricOperator) -> Result<f64> {
    let lhs = m.conjugate(q)?;
    Ok(relative((&lhs - &q.dagger()).frobenius_norm(), q.frobenius_norm()))
}

pub fn is_pseudo_anti_hermitian(h: &QMatrix, m: &MetricOperator, tol: f64) -> bool {
    anti_hermiticity_residual(h, m).is_ok_and(|r| r <= tol)
}

/// Pseudo-anti-Hermitian with a positive-definite metric. Every
/// [`MetricOperator`] is positive definite by construction; the check is
/// repeated so the verdict does not depend on how the metric was built.
pub fn is_quasi_anti_hermitian(h: &QMatrix, m: &MetricOperator, tol: f64) -> bool {
    is_pseudo_anti_hermitian(h, m, tol) && m.eigenvalues().first().is_some_and(|&e| e > 0.0)
}

pub fn is_pseudo_hermitian(q: &QMatrix, m: &MetricOperator, tol: f64) -> bool {
    hermiticity_residual(q, m).is_ok_and(|r| r <= tol)
}

/// Verdicts plus the residuals behind them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub pseudo_anti_hermitian: bool,
    pub quasi_anti_hermitian: bool,
    pub pseudo_hermitian: bool,
    pub anti_hermitian_residual: f64,
    pub hermitian_residual: f64,
    pub metric_min_eigenvalue: f64,
}

pub fn classify(h: &QMatrix, m: &MetricOperator, tol: f64) -> Result<Classification> {
    let anti = anti_hermiticity_residual(h, m)?;
    let herm = hermiticity_residual(h, m)?;
    let min_eig = m.eigenvalues().first().copied().unwrap_or(f64::NAN);
    Ok(Classification {
        pseudo_anti_hermitian: anti <= tol,
        quasi_anti_hermitian: anti <= tol && min_eig > 0.0,
        pseudo_hermitian: herm <= tol,
        anti_hermitian_residual: anti,
        hermitian_residual: herm,
        metric_min_eigenvalue: min_eig,
    })
}

/// Standard spectrum of a quasi-anti-Hermitian `h`, computed on the
/// anti-Hermitian similar matrix `Θ h Θ⁻¹`.
pub fn quasi_spectrum(h: &QMatrix, m: &MetricOperator) -> Result<Vec<SpectralClass>> {
    spectrum::standard_spectrum(&m.similarity(h)?)
}

/// Checks that `rho` is Hermitian and positive semi-definite, within `tol`
/// relative to its norm.
pub fn check_density(rho: &QMatrix, tol: f64) -> Result<()> {
    let scale = rho.frobenius_norm();
    if scale == 0.0 {
        return Err(Error::NotDensity("zero matrix".into()));
    }
    let asym = (rho - &rho.dagger()).frobenius_norm() / scale;
    if asym > tol {
        return Err(Error::NotDensity(format!("not Hermitian (residual {asym:e})")));
    }
    let min = hermitian_embedding_eigenvalues(rho)
        .first()
        .copied()
        .unwrap_or(0.0);
    if min < -tol * scale {
        return Err(Error::NotDensity(format!("negative eigenvalue {min:e}")));
    }
    Ok(())
}

/// `ρ̃ = ρ η`.
pub fn generalized_density(rho: &QMatrix, m: &MetricOperator) -> Result<QMatrix> {
    m.check_dim(rho)?;
    check_density(rho, DEFAULT_TOL)?;
    Ok(rho * m.eta())
}

/// `⟨Q⟩_η = Re Tr(ρ η Q)`.
pub fn expectation(q: &QMatrix, rho: &QMatrix, m: &MetricOperator) -> Result<f64> {
    m.check_dim(q)?;
    let rt = generalized_density(rho, m)?;
    Ok((&rt * q).re_trace())
}

/// `Re ⟨ψ|η Q|ψ⟩` evaluated directly on the state vector.
pub fn state_expectation(psi: &QVector, q: &QMatrix, m: &MetricOperator) -> Result<f64> {
    m.check_dim(q)?;
    let eq = m.eta() * q;
    Ok(psi.inner(&eq.apply(psi)?).q0)
}
