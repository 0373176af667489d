//! Fixed inputs shared by the benchmarks.

use quatstat_core::{QMatrix, Quaternion};

/// Deterministic dense `n × n` quaternionic matrix with entries of order one.
pub fn sample_matrix(n: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let t = (r * n + c) as f64;
            m[(r, c)] = Quaternion::new((0.7 * t).sin(), (1.3 * t).cos(), (0.4 * t + 1.0).sin(), (2.1 * t).cos())
                * (1.0 / n as f64);
        }
    }
    m
}
