//! Imaginary-time propagation `∂U/∂t = −H U` and its second-order
//! interaction-picture expansion.
//!
//! With `U₀(t) = exp(−H₀ t)` and `U_I = U₀⁻¹ U`, the interaction propagator
//! obeys `∂U_I/∂t = −H_I(t) U_I` where `H_I(t) = U₀(t)⁻¹ H′ U₀(t)`. Keeping
//! terms through second order,
//!
//! ```text
//! U_I(t) ≈ 1 − ∫₀ᵗ H_I(s) ds + ∫₀ᵗ ds ∫₀ˢ ds′ H_I(s) H_I(s′)
//! ```
//!
//! and the full propagator is approximated by `U₀ U_I`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::qmatrix::{ComplexEmbedding, QMatrix};

type CMat = DMatrix<Complex64>;

/// `exp(−H t)`, the solution of `∂ρ/∂t = −Hρ` with `ρ(0) = 1`.
pub fn bloch_propagator(h: &QMatrix, t: f64) -> Result<QMatrix> {
    h.mat_exp(-t)
}

pub const MIN_STEPS: usize = 16;
pub const MAX_STEPS: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq)]
pub struct DysonResult {
    /// `U_I(t)` through second order.
    pub interaction: QMatrix,
    /// `U₀(t) U_I(t)`.
    pub propagator: QMatrix,
    /// Quadrature intervals of the accepted estimate.
    pub steps: usize,
    /// Change between the last two step-doubling estimates.
    pub change: f64,
}

fn cscale(m: &CMat, s: f64) -> CMat {
    m * Complex64::new(s, 0.0)
}

/// `∫₀^{s_k} f` at every node of a uniform grid, with Simpson's rule on
/// even prefixes and a 3/8 closing panel on odd ones.
fn cumulative_simpson(values: &[CMat], h: f64) -> Vec<CMat> {
    let n = values[0].nrows();
    let mut out = vec![CMat::zeros(n, n); values.len()];
    for k in 1..values.len() {
        out[k] = if k == 1 {
            // quadratic through s0, s1, s2 integrated over the first panel
            cscale(&(cscale(&values[0], 5.0) + cscale(&values[1], 8.0) - &values[2]), h / 12.0)
        } else if k % 2 == 0 {
            &out[k - 2]
                + cscale(
                    &(&values[k - 2] + cscale(&values[k - 1], 4.0) + &values[k]),
                    h / 3.0,
                )
        } else {
            let base = if k >= 3 { out[k - 3].clone() } else { CMat::zeros(n, n) };
            base + cscale(
                &(&values[k - 3]
                    + cscale(&values[k - 2], 3.0)
                    + cscale(&values[k - 1], 3.0)
                    + &values[k]),
                3.0 * h / 8.0,
            )
        };
    }
    out
}

fn simpson(values: &[CMat], h: f64) -> CMat {
    let last = values.len() - 1;
    let mut acc = &values[0] + &values[last];
    for (k, v) in values.iter().enumerate().take(last).skip(1) {
        acc += cscale(v, if k % 2 == 1 { 4.0 } else { 2.0 });
    }
    cscale(&acc, h / 3.0)
}

/// Second-order `U_I(t)` on the embedding with `steps` Simpson intervals.
fn interaction_estimate(x0: &CMat, xp: &CMat, t: f64, steps: usize) -> Result<CMat> {
    let n = x0.nrows();
    let h = t / steps as f64;
    let mut hi = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let s = k as f64 * h;
        let u0 = expm(&cscale(x0, -s))?;
        let u0_inv = expm(&cscale(x0, s))?;
        hi.push(&u0_inv * xp * &u0);
    }
    let first = cumulative_simpson(&hi, h);
    let nested: Vec<CMat> = hi.iter().zip(&first).map(|(a, f)| a * f).collect();
    let second = simpson(&nested, h);
    Ok(CMat::identity(n, n) - &first[steps] + second)
}

/// Second-order interaction-picture propagator for `H = H₀ + H′` with
/// diagonal `H₀`. The step count doubles from `steps` until consecutive
/// estimates differ by at most `tol` (Frobenius norm, relative to
/// `max(1, ‖U_I‖)`).
pub fn dyson_second_order(
    h0: &QMatrix,
    hp: &QMatrix,
    t: f64,
    steps: usize,
    tol: f64,
) -> Result<DysonResult> {
    if h0.dim() != hp.dim() {
        return Err(Error::DimensionMismatch {
            expected: h0.dim(),
            found: hp.dim(),
        });
    }
    if !h0.is_diagonal_within(0.0) {
        return Err(Error::ConstraintViolation("H0 must be diagonal".into()));
    }
    if steps < MIN_STEPS {
        return Err(Error::InvalidInput(format!("at least {MIN_STEPS} steps required")));
    }
    let x0 = h0.embed().0;
    let xp = hp.embed().0;
    let mut m = steps + steps % 2;
    let mut current = interaction_estimate(&x0, &xp, t, m)?;
    loop {
        let refined = interaction_estimate(&x0, &xp, t, 2 * m)?;
        let change = (&refined - &current).norm() / refined.norm().max(1.0);
        m *= 2;
        current = refined;
        if change <= tol {
            let u0 = expm(&cscale(&x0, -t))?;
            let full = &u0 * &current;
            return Ok(DysonResult {
                interaction: ComplexEmbedding(current).unembed_unchecked()?,
                propagator: ComplexEmbedding(full).unembed_unchecked()?,
                steps: m,
                change,
            });
        }
        if 2 * m > MAX_STEPS {
            return Err(Error::QuadratureUnconverged { change, tolerance: tol });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion as Q;

    #[test]
    fn zero_perturbation_gives_identity() {
        let h0 = QMatrix::from_diagonal(&[Q::I * 0.7, Q::K * -0.2]);
        let r = dyson_second_order(&h0, &QMatrix::zeros(2), 1.5, 16, 1e-12).unwrap();
        assert!(r.interaction.approx_eq(&QMatrix::identity(2), 1e-15));
        assert!(r.propagator.approx_eq(&bloch_propagator(&h0, 1.5).unwrap(), 1e-14));
    }

    #[test]
    fn bloch_at_zero_time() {
        let h = QMatrix::from_rows(vec![vec![Q::I, Q::J], vec![Q::J, -Q::I]]).unwrap();
        assert!(bloch_propagator(&h, 0.0)
            .unwrap()
            .approx_eq(&QMatrix::identity(2), 0.0));
    }

    #[test]
    fn bloch_of_diagonal() {
        let (a, b) = (Complex64::new(0.3, 1.0), Complex64::new(-0.1, 0.5));
        let h = QMatrix::from_diagonal(&[Q::from_complex(a), Q::from_complex(b)]);
        let t = 1.2;
        let want = QMatrix::from_diagonal(&[
            Q::from_complex((-a * t).exp()),
            Q::from_complex((-b * t).exp()),
        ]);
        assert!(bloch_propagator(&h, t).unwrap().approx_eq(&want, 1e-14));
    }

    #[test]
    fn rejects_off_diagonal_reference() {
        let h0 = QMatrix::from_rows(vec![vec![Q::I, Q::J], vec![Q::J, -Q::I]]).unwrap();
        assert!(dyson_second_order(&h0, &QMatrix::zeros(2), 1.0, 16, 1e-10).is_err());
        assert!(dyson_second_order(&QMatrix::zeros(2), &QMatrix::zeros(2), 1.0, 8, 1e-10).is_err());
    }

    #[test]
    fn unreachable_tolerance_reports_unconverged() {
        // a j coupling would commute its way to a constant integrand
        let h0 = QMatrix::from_diagonal(&[Q::I * 40.0, Q::I * -40.0]);
        let mut hp = QMatrix::zeros(2);
        hp[(0, 1)] = Q::ONE;
        hp[(1, 0)] = -Q::ONE;
        let r = dyson_second_order(&h0, &hp, 2.0, 16, 0.0);
        assert!(matches!(r, Err(Error::QuadratureUnconverged { .. })), "{r:?}");
    }
}
