#![allow(dead_code)]

use proptest::prelude::*;
use quatstat_core::{MetricOperator, QMatrix, Quaternion};

pub fn quaternion(scale: f64) -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-scale..scale).prop_map(|[a, b, c, d]| Quaternion::new(a, b, c, d))
}

pub fn qmatrix(n: usize, scale: f64) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(quaternion(scale), n * n).prop_map(move |entries| {
        let rows = entries.chunks(n).map(|r| r.to_vec()).collect();
        QMatrix::from_rows(rows).unwrap()
    })
}

pub fn any_qmatrix(scale: f64) -> impl Strategy<Value = QMatrix> {
    (2usize..=3).prop_flat_map(move |n| qmatrix(n, scale))
}

/// `(M − M†)/2`.
pub fn anti_hermitian_part(m: &QMatrix) -> QMatrix {
    (m - &m.dagger()).scale(0.5)
}

/// Random 2×2 metric from its `(x, y, z)` parameters with `xy − |z|² > 0`.
pub fn metric2() -> impl Strategy<Value = MetricOperator> {
    (0.3f64..3.0, 0.3f64..3.0, -1.0f64..1.0, -1.0f64..1.0, 0.05f64..0.9).prop_map(|(x, y, a, b, shrink)| {
        let bound = (x * y).sqrt() * shrink;
        let len = (a * a + b * b).sqrt().max(1e-12);
        let z = num_complex::Complex64::new(a, b) * (bound * len.min(1.0) / len);
        MetricOperator::build(x, y, z).unwrap()
    })
}

/// Symmetric positive semi-definite `A A†` normalized to unit trace.
pub fn density(n: usize) -> impl Strategy<Value = QMatrix> {
    qmatrix(n, 1.0).prop_map(|a| {
        let rho = &a * &a.dagger();
        let t = rho.re_trace();
        rho.scale(1.0 / t)
    })
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}
