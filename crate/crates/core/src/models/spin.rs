//! Spin-½ particle in a constant quaternionic potential:
//!
//! ```text
//! H = [[ iω/2,  j v/x ],
//!      [ j v x, −iω/2 ]]
//! ```
//!
//! quasi-anti-Hermitian with respect to `diag(x², 1)`, with eigenvalues
//! `i(ω/2 ± v)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{self, MetricOperator};
use crate::models::negtemp::TwoLevelGas;
use crate::models::ModelBundle;
use crate::qmatrix::{QMatrix, QVector};
use crate::quaternion::Quaternion;
use crate::spectrum;
use crate::thermo::closed_form::EnergySliceParams;
use crate::thermo::spectral::SpectralEnsemble;
use crate::thermo::toy::ToyModelParams;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinModelParams {
    pub omega: f64,
    pub v: f64,
    pub x: f64,
}

impl SpinModelParams {
    pub fn new(omega: f64, v: f64, x: f64) -> Result<Self> {
        let p = Self { omega, v, x };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::ConstraintViolation(format!("omega must be positive, got {}", self.omega)));
        }
        if self.v == 0.0 || self.x == 0.0 || !self.v.is_finite() || !self.x.is_finite() {
            return Err(Error::ConstraintViolation("v and x must be finite and non-zero".into()));
        }
        Ok(())
    }

    /// `(ω/2 + |v|, ω/2 − |v|)`.
    pub fn levels(&self) -> (f64, f64) {
        let half = self.omega / 2.0;
        (half + self.v.abs(), half - self.v.abs())
    }

    /// The same Hamiltonian as an instance of the general two-level model.
    pub fn toy_params(&self) -> ToyModelParams {
        ToyModelParams {
            a: Quaternion::I * (self.omega / 2.0),
            b: Quaternion::I * (-self.omega / 2.0),
            c: Quaternion::J * (self.v / self.x),
            alpha: self.x * self.x,
            gamma: 1.0,
        }
    }

    /// `aE = ω/2`, `bE = −ω/2`, `κ = (α/γ)c² = −v²`.
    pub fn energy_slice(&self) -> EnergySliceParams {
        EnergySliceParams {
            a_e: self.omega / 2.0,
            b_e: -self.omega / 2.0,
            kappa: -self.v * self.v,
        }
    }
}

pub fn spin_hamiltonian(p: &SpinModelParams) -> QMatrix {
    let mut h = QMatrix::from_diagonal(&[Quaternion::I * (p.omega / 2.0), Quaternion::I * (-p.omega / 2.0)]);
    h[(0, 1)] = Quaternion::J * (p.v / p.x);
    h[(1, 0)] = Quaternion::J * (p.v * p.x);
    h
}

pub fn spin_metric(p: &SpinModelParams) -> Result<MetricOperator> {
    MetricOperator::diagonal(&[p.x * p.x, 1.0])
}

/// Hamiltonian, metric `diag(x², 1)` and the single-particle ensemble
/// `{ω/2 − v, ω/2 + v}`, with energy signs fixed by continuation from the
/// uncoupled doublet.
pub fn build_spin_model(p: &SpinModelParams) -> Result<ModelBundle> {
    p.validate()?;
    let h = spin_hamiltonian(p);
    let m = spin_metric(p)?;
    let r = metric::anti_hermiticity_residual(&h, &m)?;
    if r > metric::DEFAULT_TOL {
        return Err(Error::ConstraintViolation(format!(
            "spin Hamiltonian failed the metric check (residual {r:e})"
        )));
    }
    let (free_part, coupling) = h.split_diagonal();
    // Θ H Θ⁻¹ is anti-Hermitian, so its embedding is normal even when x ≠ 1
    let similar = m.similarity(&h)?;
    let energies = spectrum::energies_by_continuation(&similar, Some(&free_part))?;
    let ensemble = SpectralEnsemble::from_energies(&energies, 1, 1.0)?;
    Ok(ModelBundle {
        hamiltonian: h,
        metric: m,
        ensemble,
        free_part,
        coupling,
    })
}

/// Right eigenvectors `ψ± = (±i/x, j)/√2` with `H ψ± = ψ± · i(ω/2 ± v)`.
pub fn right_eigenvectors(p: &SpinModelParams) -> (QVector, QVector) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let make = |sign: f64| QVector(vec![Quaternion::I * (sign * s / p.x), Quaternion::J * s]);
    (make(1.0), make(-1.0))
}

/// Biorthogonal partners `φ± = (±x i, j)/√2 = η ψ±`.
pub fn left_eigenvectors(p: &SpinModelParams) -> (QVector, QVector) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let make = |sign: f64| QVector(vec![Quaternion::I * (sign * s * p.x), Quaternion::J * s]);
    (make(1.0), make(-1.0))
}

/// `‖H ψ − ψ·μ‖/‖ψ‖` together with how far the Rayleigh quotient `μ` is
/// from the similarity class of `iE`. Both vanish for any right-scalar
/// rescaling `ψ q` of an exact eigenvector.
pub fn eigenpair_residual(h: &QMatrix, psi: &QVector, energy: f64) -> Result<f64> {
    let hpsi = h.apply(psi)?;
    let norm = psi.norm();
    if norm == 0.0 {
        return Err(Error::ZeroDivision { norm });
    }
    let mu = psi.inner(&hpsi) * (1.0 / (norm * norm));
    let vector = hpsi.sub(&psi.mul_right(mu)).norm() / norm;
    let class = mu.q0.abs() + (mu.imag_norm() - energy.abs()).abs();
    Ok(vector.max(class))
}

/// The two-level gas formed by `n` spins on the levels `ω/2 ± |v|`.
pub fn spin_negative_temperature(p: &SpinModelParams, n: u64) -> Result<TwoLevelGas> {
    p.validate()?;
    let (up, down) = p.levels();
    TwoLevelGas::new(n, up, down)
}

/// Single-particle partition function as displayed for this model,
/// `2(cosh(ωβ/2) − (v²β/ω) sinh(ωβ/2))`.
pub fn displayed_z1(p: &SpinModelParams, beta: f64) -> f64 {
    let h = p.omega * beta / 2.0;
    2.0 * (h.cosh() - p.v * p.v * beta / p.omega * h.sinh())
}

/// Displayed internal energy of `n` spins, including its `sin(ωβ/2)` term.
pub fn displayed_internal_energy(p: &SpinModelParams, beta: f64, n: u64) -> f64 {
    let (w, v2) = (p.omega, p.v * p.v);
    let h = w * beta / 2.0;
    let num = w * w * h.sin() + 2.0 * v2 * h.sinh() + beta * w * v2 * h.cosh();
    let den = 2.0 * w * h.cosh() - 2.0 * beta * v2 * h.sinh();
    n as f64 * num / den
}

/// Displayed entropy `Nk ln Z₁ + kβ U` with the displayed `Z₁` and `U`.
pub fn displayed_entropy(p: &SpinModelParams, beta: f64, n: u64, boltzmann: f64) -> f64 {
    n as f64 * boltzmann * displayed_z1(p, beta).ln()
        + boltzmann * beta * displayed_internal_energy(p, beta, n)
}

/// Stirling entropy written directly in `ω` and `v`.
pub fn specialized_entropy(p: &SpinModelParams, n: u64, boltzmann: f64, energy: f64) -> f64 {
    let nf = n as f64;
    let v = p.v.abs();
    let x = (energy - nf * (p.omega / 2.0 + v)) / (2.0 * v);
    let y = (energy - nf * (p.omega / 2.0 - v)) / (2.0 * v);
    let xlx = |m: f64| if m > 0.0 { m * m.ln() } else { 0.0 };
    boltzmann * (xlx(nf) - xlx(-x) - xlx(y))
}

/// Inverse temperature written directly in `ω` and `v`.
pub fn specialized_inverse_temperature(p: &SpinModelParams, n: u64, boltzmann: f64, energy: f64) -> f64 {
    let nf = n as f64;
    let v = p.v.abs();
    let ratio = -(energy - nf * (p.omega / 2.0 - v)) / (energy - nf * (p.omega / 2.0 + v));
    -boltzmann / (2.0 * v) * ratio.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::closed_form::{z1_formula, Branch};

    #[test]
    fn energies_at_unit_metric() {
        let b = build_spin_model(&SpinModelParams::new(2.0, 0.5, 1.0).unwrap()).unwrap();
        let e: Vec<f64> = b.ensemble.levels().iter().map(|l| l.energy).collect();
        assert!((e[0] - 0.5).abs() < 1e-10 && (e[1] - 1.5).abs() < 1e-10);
    }

    #[test]
    fn energies_with_metric_and_sign_change() {
        let b = build_spin_model(&SpinModelParams::new(1.0, 2.0, 1.7).unwrap()).unwrap();
        let e: Vec<f64> = b.ensemble.levels().iter().map(|l| l.energy).collect();
        assert!((e[0] + 1.5).abs() < 1e-8 && (e[1] - 2.5).abs() < 1e-8, "{e:?}");
    }

    #[test]
    fn weak_coupling_doublet() {
        let b = build_spin_model(&SpinModelParams::new(3.0, 1e-9, 2.0).unwrap()).unwrap();
        for l in b.ensemble.levels() {
            assert!((l.energy - 1.5).abs() < 1e-8);
        }
        assert!(b.coupling.frobenius_norm() < 1e-8);
    }

    #[test]
    fn printed_eigenvectors() {
        for x in [1.0, 0.6, 2.5] {
            let p = SpinModelParams::new(2.0, 0.5, x).unwrap();
            let h = spin_hamiltonian(&p);
            let (up, down) = right_eigenvectors(&p);
            let (e_up, e_down) = (p.omega / 2.0 + p.v, p.omega / 2.0 - p.v);
            assert!(eigenpair_residual(&h, &up, e_up).unwrap() < 1e-14);
            assert!(eigenpair_residual(&h, &down, e_down).unwrap() < 1e-14);
            let exact = h.apply(&up).unwrap().sub(&up.mul_right(Quaternion::I * e_up)).norm();
            assert!(exact < 1e-14);
            // rescaled by a non-commuting scalar
            let q = Quaternion::new(0.3, -1.2, 0.7, 0.4);
            assert!(eigenpair_residual(&h, &up.mul_right(q), e_up).unwrap() < 1e-13);
        }
    }

    #[test]
    fn left_vectors_are_metric_images() {
        let p = SpinModelParams::new(2.0, 0.5, 1.9).unwrap();
        let m = spin_metric(&p).unwrap();
        let (up, down) = right_eigenvectors(&p);
        let (lup, ldown) = left_eigenvectors(&p);
        assert!(m.eta().apply(&up).unwrap().sub(&lup).norm() < 1e-15);
        assert!(m.eta().apply(&down).unwrap().sub(&ldown).norm() < 1e-15);
        assert!((lup.inner(&up).q0 - 1.0).abs() < 1e-15);
        assert!(ldown.inner(&up).norm() < 1e-15);
    }

    #[test]
    fn zero_coupling_rejected() {
        assert!(SpinModelParams::new(2.0, 0.0, 1.0).is_err());
        assert!(SpinModelParams::new(2.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn displayed_z1_has_flipped_coupling() {
        let p = SpinModelParams::new(2.0, 0.5, 1.0).unwrap();
        let beta = 0.8;
        let printed = z1_formula(&p.energy_slice(), beta, Branch::Printed);
        let rederived = z1_formula(&p.energy_slice(), beta, Branch::Rederived);
        assert!((displayed_z1(&p, beta) - rederived).abs() < 1e-14);
        assert!((displayed_z1(&p, beta) - printed).abs() > 1e-2);
    }

    #[test]
    fn specialized_forms_match_generic() {
        let p = SpinModelParams::new(2.0, 0.5, 1.0).unwrap();
        let g = spin_negative_temperature(&p, 20).unwrap();
        for e in [12.0, 15.0, 19.9, 20.0, 20.1, 27.0] {
            let s = g.entropy_stirling(e).unwrap();
            assert!((specialized_entropy(&p, 20, 1.0, e) - s).abs() < 1e-12 * s.max(1.0));
            let inv = g.inverse_temperature(e).unwrap();
            assert!((specialized_inverse_temperature(&p, 20, 1.0, e) - inv).abs() < 1e-12 * inv.abs().max(1.0));
        }
    }
}
