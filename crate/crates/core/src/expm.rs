//! Complex matrix exponential by scaling and squaring with diagonal Padé
//! approximants of degree 3, 5, 7, 9 or 13, chosen from the 1-norm.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

type CMat = DMatrix<Complex64>;

// Largest 1-norms for which the [m/m] approximant reaches double precision.
const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539_398_330_063_23e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

pub(crate) fn one_norm(a: &CMat) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn scaled(m: &CMat, s: f64) -> CMat {
    m * Complex64::new(s, 0.0)
}

/// `(U, V)` for a low-degree approximant using even powers of `a`.
fn pade_low(a: &CMat, b: &[f64]) -> (CMat, CMat) {
    let n = a.nrows();
    let ident = CMat::identity(n, n);
    let a2 = a * a;
    let m = b.len() - 1;
    let mut powers = vec![ident.clone()];
    for _ in 1..=m / 2 {
        let next = powers.last().unwrap() * &a2;
        powers.push(next);
    }
    let mut u = CMat::zeros(n, n);
    let mut v = CMat::zeros(n, n);
    for (k, p) in powers.iter().enumerate() {
        u += scaled(p, b[2 * k + 1]);
        v += scaled(p, b[2 * k]);
    }
    (a * u, v)
}

fn pade_13(a: &CMat) -> (CMat, CMat) {
    let n = a.nrows();
    let b = &B13;
    let ident = CMat::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = scaled(&a6, b[13]) + scaled(&a4, b[11]) + scaled(&a2, b[9]);
    let u = a * (&a6 * inner_u
        + scaled(&a6, b[7])
        + scaled(&a4, b[5])
        + scaled(&a2, b[3])
        + scaled(&ident, b[1]));
    let inner_v = scaled(&a6, b[12]) + scaled(&a4, b[10]) + scaled(&a2, b[8]);
    let v = &a6 * inner_v
        + scaled(&a6, b[6])
        + scaled(&a4, b[4])
        + scaled(&a2, b[2])
        + scaled(&ident, b[0]);
    (u, v)
}

fn solve_pade(u: CMat, v: CMat) -> Result<CMat> {
    let p = &v + &u;
    let q = v - u;
    q.lu().solve(&p).ok_or(Error::Overflow)
}

/// `exp(a)` for a square complex matrix.
pub fn expm(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    if n == 0 {
        return Ok(a.clone());
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Overflow);
    }
    let norm = one_norm(a);
    let result = if norm <= THETA_3 {
        let (u, v) = pade_low(a, &B3);
        solve_pade(u, v)?
    } else if norm <= THETA_5 {
        let (u, v) = pade_low(a, &B5);
        solve_pade(u, v)?
    } else if norm <= THETA_7 {
        let (u, v) = pade_low(a, &B7);
        solve_pade(u, v)?
    } else if norm <= THETA_9 {
        let (u, v) = pade_low(a, &B9);
        solve_pade(u, v)?
    } else {
        let s = (norm / THETA_13).log2().ceil().max(0.0) as i32;
        if s > 1000 {
            return Err(Error::Overflow);
        }
        let a_scaled = scaled(a, 2f64.powi(-s));
        let (u, v) = pade_13(&a_scaled);
        let mut r = solve_pade(u, v)?;
        for _ in 0..s {
            r = &r * &r;
        }
        r
    };
    if result.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Overflow);
    }
    Ok(result)
}
