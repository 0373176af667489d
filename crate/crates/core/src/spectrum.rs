//! Right-eigenvalue spectra of quaternionic matrices.
//!
//! All eigen-solving happens on the complex embedding. Its eigenvalues come
//! in conjugate pairs; each pair is one similarity class of quaternionic
//! right eigenvalues, reported by the representative with non-negative
//! imaginary part.

use nalgebra::linalg::Schur;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmatrix::QMatrix;

/// Default relative tolerance for the normality check.
pub const NORMALITY_TOL: f64 = 1e-10;

/// One quaternionic eigenvalue class and how often it occurs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralClass {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// All eigenvalues of a complex square matrix (complex Schur form).
pub fn complex_eigenvalues(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let (_, t) = Schur::new(m.clone()).unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Relative departure from normality `‖XX^H − X^H X‖ / ‖X‖²`.
pub fn normality_departure(x: &DMatrix<Complex64>) -> f64 {
    let xh = x.adjoint();
    let comm = x * &xh - &xh * x;
    let scale = x.norm_squared();
    if scale == 0.0 {
        0.0
    } else {
        comm.norm() / scale
    }
}

/// Standard eigenvalues of `m` with multiplicities, sorted by descending
/// imaginary part then real part.
///
/// `m` must be normal in the embedding sense; use
/// [`crate::metric::MetricOperator::similarity`] first for
/// quasi-anti-Hermitian operators.
pub fn standard_spectrum(m: &QMatrix) -> Result<Vec<SpectralClass>> {
    standard_spectrum_with_tol(m, NORMALITY_TOL)
}

pub fn standard_spectrum_with_tol(m: &QMatrix, tol: f64) -> Result<Vec<SpectralClass>> {
    let x = m.embed().0;
    let departure = normality_departure(&x);
    if departure > tol {
        return Err(Error::NotNormal { departure });
    }
    let scale = x.norm().max(1.0);
    Ok(collapse_pairs(complex_eigenvalues(&x), 1e-8 * scale))
}

/// Reduces the `2n` eigenvalues of an embedding to `n` standard
/// representatives and groups them into classes.
pub fn collapse_pairs(mut eigs: Vec<Complex64>, tol: f64) -> Vec<SpectralClass> {
    let mut reps: Vec<Complex64> = Vec::new();
    eigs.sort_by(|a, b| b.im.total_cmp(&a.im).then(a.re.total_cmp(&b.re)));
    let mut real_axis: Vec<f64> = Vec::new();
    for z in eigs {
        if z.im > tol {
            reps.push(z);
        } else if z.im.abs() <= tol {
            real_axis.push(z.re);
        }
    }
    // real eigenvalues appear twice in the embedding
    real_axis.sort_by(f64::total_cmp);
    for pair in real_axis.chunks(2) {
        let re = pair.iter().sum::<f64>() / pair.len() as f64;
        reps.push(Complex64::new(re, 0.0));
    }

    let mut classes: Vec<SpectralClass> = Vec::new();
    for z in reps {
        match classes.iter_mut().find(|c| (c.value - z).norm() <= tol) {
            Some(c) => c.multiplicity += 1,
            None => classes.push(SpectralClass {
                value: z,
                multiplicity: 1,
            }),
        }
    }
    classes.sort_by(|a, b| {
        b.value
            .im
            .total_cmp(&a.value.im)
            .then(a.value.re.total_cmp(&b.value.re))
    });
    classes
}

/// Number of homotopy steps used by [`energies_by_continuation`].
pub const CONTINUATION_STEPS: usize = 512;

/// Signed eigenvalues of `h`, obtained by following the standard
/// eigenvalues of its diagonal part `h0` along `h0 + s (h − h0)` for
/// `s ∈ [0, 1]`.
///
/// An eigenvalue `i(ω/2 − v)` that crosses the real axis keeps moving into
/// the lower half plane, so its energy comes out negative instead of being
/// folded back to `|ω/2 − v|`.
pub fn tracked_eigenvalues(h0: &QMatrix, h: &QMatrix) -> Result<Vec<Complex64>> {
    if h0.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h0.dim(),
            found: h.dim(),
        });
    }
    if !h0.is_diagonal_within(0.0) {
        return Err(Error::ConstraintViolation(
            "continuation reference must be diagonal".into(),
        ));
    }
    let pert = h - h0;
    let mut tracked: Vec<Complex64> = h0
        .diagonal()
        .iter()
        .map(|q| q.standard_representative())
        .collect();
    if pert.frobenius_norm() == 0.0 {
        return Ok(tracked);
    }
    let mut previous = tracked.clone();
    for step in 1..=CONTINUATION_STEPS {
        let s = step as f64 / CONTINUATION_STEPS as f64;
        let hs = h0 + &pert.scale(s);
        let pool = complex_eigenvalues(&hs.embed().0);
        let predicted: Vec<Complex64> = tracked
            .iter()
            .zip(&previous)
            .map(|(&cur, &prev)| cur * 2.0 - prev)
            .collect();
        let next = greedy_match(&predicted, &pool);
        previous = tracked;
        tracked = next;
    }
    Ok(tracked)
}

/// Assigns each prediction its nearest pool element, closest pairs first.
fn greedy_match(predicted: &[Complex64], pool: &[Complex64]) -> Vec<Complex64> {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, p) in predicted.iter().enumerate() {
        for (j, z) in pool.iter().enumerate() {
            pairs.push(((p - z).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = vec![None; predicted.len()];
    let mut used = vec![false; pool.len()];
    for (_, i, j) in pairs {
        if out[i].is_none() && !used[j] {
            out[i] = Some(pool[j]);
            used[j] = true;
        }
    }
    out.into_iter().map(|z| z.expect("pool has 2n entries")).collect()
}

/// Real energies `E` of the eigenvalues `iE` of `h`, with signs fixed by
/// continuation from the diagonal part of `h` (or from `reference`, when
/// given).
pub fn energies_by_continuation(h: &QMatrix, reference: Option<&QMatrix>) -> Result<Vec<f64>> {
    let (diag, _) = h.split_diagonal();
    let h0 = reference.unwrap_or(&diag);
    let tracked = tracked_eigenvalues(h0, h)?;
    let scale = h.frobenius_norm().max(1.0);
    let worst = tracked.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
    if worst > 1e-8 * scale {
        return Err(Error::NonImaginarySpectrum { real_part: worst });
    }
    let mut energies: Vec<f64> = tracked.iter().map(|z| z.im).collect();
    energies.sort_by(f64::total_cmp);
    Ok(energies)
}
