//! Central differences with one level of Richardson extrapolation.

/// Step used for derivatives in β: `max(1e-6, 1e-6 |β|)`.
pub fn beta_step(beta: f64) -> f64 {
    (1e-6 * beta.abs()).max(1e-6)
}

pub fn central(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// `(4 D(h/2) − D(h)) / 3`, cancelling the `h²` error term.
pub fn richardson(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let coarse = central(&f, x, h);
    let fine = central(&f, x, h / 2.0);
    (4.0 * fine - coarse) / 3.0
}

/// Richardson-extrapolated second derivative from central differences.
pub fn richardson_second(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d2 = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    (4.0 * d2(h / 2.0) - d2(h)) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_exponential() {
        let d = richardson(f64::exp, 0.7, 1e-3);
        assert!((d - 0.7f64.exp()).abs() < 1e-12);
        let d2 = richardson_second(f64::sin, 0.3, 1e-3);
        assert!((d2 + 0.3f64.sin()).abs() < 1e-8);
    }

    #[test]
    fn step_floor() {
        assert_eq!(beta_step(0.5), 1e-6);
        assert!((beta_step(20.0) - 2e-5).abs() < 1e-20);
    }
}
