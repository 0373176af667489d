//! The general two-level quasi-anti-Hermitian Hamiltonian
//! `H = [[a, c], [−(α/γ) c̄, b]]` with diagonal metric `diag(α, γ)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{self, MetricOperator};
use crate::qmatrix::QMatrix;
use crate::quaternion::{Quaternion, DEFAULT_EPS};
use crate::thermo::closed_form::EnergySliceParams;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToyModelParams {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub alpha: f64,
    pub gamma: f64,
}

impl ToyModelParams {
    pub fn new(a: Quaternion, b: Quaternion, c: Quaternion, alpha: f64, gamma: f64) -> Result<Self> {
        let p = Self { a, b, c, alpha, gamma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_imaginary_within(DEFAULT_EPS) || !self.b.is_imaginary_within(DEFAULT_EPS) {
            return Err(Error::ConstraintViolation(
                "diagonal entries a, b must be purely imaginary".into(),
            ));
        }
        if !(self.alpha > 0.0 && self.gamma > 0.0) {
            return Err(Error::ConstraintViolation("alpha and gamma must be positive".into()));
        }
        if ![self.a, self.b, self.c].iter().all(|q| q.is_finite()) {
            return Err(Error::InvalidInput("non-finite entry".into()));
        }
        Ok(())
    }

    /// `d = −(α/γ) c̄`.
    pub fn d(&self) -> Quaternion {
        -(self.c.conj() * (self.alpha / self.gamma))
    }

    pub fn metric(&self) -> Result<MetricOperator> {
        MetricOperator::diagonal(&[self.alpha, self.gamma])
    }

    /// Diagonal part `diag(a, b)`.
    pub fn free_part(&self) -> QMatrix {
        QMatrix::from_diagonal(&[self.a, self.b])
    }

    /// Off-diagonal part `[[0, c], [d, 0]]`.
    pub fn coupling_part(&self) -> QMatrix {
        let mut m = QMatrix::zeros(2);
        m[(0, 1)] = self.c;
        m[(1, 0)] = self.d();
        m
    }

    /// Real energy parameters when the entries lie on the commuting slice:
    /// `a = i aE`, `b = i bE` and `c²` real, giving `κ = (α/γ) c²`.
    pub fn energy_slice(&self) -> Result<EnergySliceParams> {
        let on_i_axis = |q: Quaternion| q.is_complex_within(DEFAULT_EPS);
        if !on_i_axis(self.a) || !on_i_axis(self.b) {
            return Err(Error::ConstraintViolation(
                "a and b must be multiples of i for the energy slice".into(),
            ));
        }
        let c2 = self.c * self.c;
        if c2.imag_norm() > DEFAULT_EPS * c2.norm().max(1.0) {
            return Err(Error::ConstraintViolation("c² is not real".into()));
        }
        Ok(EnergySliceParams {
            a_e: self.a.q1,
            b_e: self.b.q1,
            kappa: self.alpha / self.gamma * c2.q0,
        })
    }
}

/// Builds the Hamiltonian and certifies it against `diag(α, γ)`.
pub fn build_toy_hamiltonian(p: &ToyModelParams) -> Result<QMatrix> {
    p.validate()?;
    let h = &p.free_part() + &p.coupling_part();
    let m = p.metric()?;
    let r = metric::anti_hermiticity_residual(&h, &m)?;
    if r > metric::DEFAULT_TOL {
        return Err(Error::ConstraintViolation(format!(
            "Hamiltonian is not quasi-anti-Hermitian (residual {r:e})"
        )));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion as Q;

    #[test]
    fn spin_entries_from_toy_parameters() {
        let (omega, v, x) = (2.0, 0.5, 1.3);
        let p = ToyModelParams::new(
            Q::I * (omega / 2.0),
            Q::I * (-omega / 2.0),
            Q::J * (v / x),
            x * x,
            1.0,
        )
        .unwrap();
        let h = build_toy_hamiltonian(&p).unwrap();
        assert!(h[(0, 1)].approx_eq(Q::J * (v / x), 1e-15));
        assert!(h[(1, 0)].approx_eq(Q::J * (v * x), 1e-15));
        let s = p.energy_slice().unwrap();
        assert_eq!((s.a_e, s.b_e), (1.0, -1.0));
        assert!((s.kappa + v * v).abs() < 1e-15);
    }

    #[test]
    fn zero_coupling_is_diagonal() {
        let p = ToyModelParams::new(Q::I, Q::K * 2.0, Q::ZERO, 2.0, 3.0).unwrap();
        assert_eq!(build_toy_hamiltonian(&p).unwrap(), QMatrix::from_diagonal(&[Q::I, Q::K * 2.0]));
    }

    #[test]
    fn qubit_matrix_from_toy_parameters() {
        let phi = 0.9_f64;
        let a = Q::new(0.0, 0.0, -2.0 * phi.cos(), -2.0 * phi.sin());
        let p = ToyModelParams::new(a, Q::ZERO, Q::ZERO, 1.0, 1.0).unwrap();
        let h = build_toy_hamiltonian(&p).unwrap();
        assert_eq!(h[(0, 0)], a);
        assert!(p.energy_slice().is_err());
    }

    #[test]
    fn real_diagonal_rejected() {
        let r = ToyModelParams::new(Q::real(1.0), Q::I, Q::ZERO, 1.0, 1.0);
        assert!(matches!(r, Err(Error::ConstraintViolation(_))));
    }
}
