//! Cross-checks of the library against independent computations written
//! here: an RK4 integrator, hand-derived thermodynamics and exact sums.

mod common;

use common::rel_close;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use quatstat_core::models::negtemp::TwoLevelGas;
use quatstat_core::models::spin::{build_spin_model, spin_hamiltonian, SpinModelParams};
use quatstat_core::thermo::{
    bloch_propagator, dyson_second_order, pressure, thermo_closed_form, z1_second_order_complex, Branch,
    EnergySliceParams, SpectralEnsemble, VolumeModel,
};
use quatstat_core::{QMatrix, Quaternion};

type CMat = DMatrix<Complex64>;

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, norm: f64) -> QMatrix {
    let mut m = QMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            m[(r, c)] = Quaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
        }
    }
    let f = m.frobenius_norm();
    m.scale(norm * rng.gen_range(0.1..1.0) / f)
}

fn rk4(x: &CMat, t: f64, steps: usize) -> CMat {
    let h = t / steps as f64;
    let hc = Complex64::new(h, 0.0);
    let mut u = CMat::identity(x.nrows(), x.ncols());
    for _ in 0..steps {
        let k1 = x * &u;
        let k2 = x * (&u + &k1 * (hc / 2.0));
        let k3 = x * (&u + &k2 * (hc / 2.0));
        let k4 = x * (&u + &k3 * hc);
        u += (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4) * (hc / 6.0);
    }
    u
}

#[test]
fn exponential_matches_rk4() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..40 {
        let m = random_matrix(&mut rng, 2 + trial % 2, 2.0);
        let want = rk4(&m.embed().0, 1.0, 400);
        let got = m.mat_exp(1.0).unwrap().embed().0;
        assert!((got - want).norm() < 1e-8, "trial {trial}");
    }
}

#[test]
fn spin_bloch_trace_oscillates() {
    let p = SpinModelParams::new(2.0, 0.5, 1.6).unwrap();
    let h = spin_hamiltonian(&p);
    for beta in [0.0, 0.3, 1.0, 2.7] {
        let z = bloch_propagator(&h, beta).unwrap().re_trace();
        let want = 2.0 * (p.omega * beta / 2.0).cos() * (p.v * beta).cos();
        assert!((z - want).abs() < 1e-12, "beta {beta}");
    }
}

fn dyson_error(h0: &QMatrix, hp: &QMatrix, beta: f64) -> f64 {
    let r = dyson_second_order(h0, hp, beta, 16, 1e-14).unwrap();
    let exact = bloch_propagator(&(h0 + hp), beta).unwrap();
    (&r.propagator - &exact).frobenius_norm()
}

#[test]
fn dyson_error_is_third_order() {
    let h0 = QMatrix::from_diagonal(&[Quaternion::I * 1.0, Quaternion::I * -0.5]);
    let mut shape = QMatrix::zeros(2);
    shape[(0, 1)] = Quaternion::new(0.0, 0.3, 0.8, 0.1);
    shape[(1, 0)] = Quaternion::new(0.0, -0.2, 0.5, 0.6);
    shape = shape.scale(1.0 / shape.frobenius_norm());
    let points: Vec<(f64, f64)> = [1e-1, 1e-2, 1e-3]
        .iter()
        .map(|&eps| (eps, dyson_error(&h0, &shape.scale(eps), 1.0)))
        .collect();
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|(e, d)| (e.ln(), d.ln())).unzip();
    let (mx, my) = (lx.iter().sum::<f64>() / 3.0, ly.iter().sum::<f64>() / 3.0);
    let slope = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / lx.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!((slope - 3.0).abs() < 0.2, "slope {slope}, points {points:?}");
}

#[test]
fn dyson_spin_trace_to_second_order() {
    let p = SpinModelParams::new(2.0, 1e-3, 1.0).unwrap();
    let b = build_spin_model(&p).unwrap();
    for beta in [0.5, 1.5] {
        let r = dyson_second_order(&b.free_part, &b.coupling, beta, 16, 1e-12).unwrap();
        let want = 2.0 * (beta).cos() * (1.0 - p.v * p.v * beta * beta / 2.0);
        assert!((r.propagator.re_trace() - want).abs() < 1e-10);
    }
}

#[test]
fn commuting_slice_matches_time_ordered_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let c = |rng: &mut ChaCha8Rng, s: f64| Complex64::new(rng.gen_range(-s..s), rng.gen_range(-s..s));
        let (a, b) = (c(&mut rng, 1.5), c(&mut rng, 1.5));
        let (cc, dd) = (c(&mut rng, 0.3), c(&mut rng, 0.3));
        let beta = rng.gen_range(0.2..2.0);
        let h0 = QMatrix::from_diagonal(&[Quaternion::from_complex(a), Quaternion::from_complex(b)]);
        let mut hp = QMatrix::zeros(2);
        hp[(0, 1)] = Quaternion::from_complex(cc);
        hp[(1, 0)] = Quaternion::from_complex(dd);
        let r = dyson_second_order(&h0, &hp, beta, 16, 1e-13).unwrap();
        let tr = r.propagator.trace();
        let want = z1_second_order_complex(a, b, cc * dd, beta);
        assert!((Complex64::new(tr.q0, tr.q1) - want).norm() < 1e-8);
    }
}

#[test]
fn closed_form_heat_capacity_is_energy_slope() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 50 {
        let p = EnergySliceParams {
            a_e: rng.gen_range(-2.0..2.0),
            b_e: rng.gen_range(-2.0..2.0),
            kappa: rng.gen_range(-0.4..0.4),
        };
        let beta = rng.gen_range(0.1..2.5);
        let (n, k) = (5, 1.3);
        let branch = if checked % 2 == 0 { Branch::Printed } else { Branch::Rederived };
        let Ok(r) = thermo_closed_form(&p, beta, n, k, branch) else { continue };
        let h = 1e-5;
        let u = |b: f64| thermo_closed_form(&p, b, n, k, branch).unwrap().internal_energy;
        let du = (u(beta + h) - u(beta - h)) / (2.0 * h);
        // C = (1/N) dU/dT with dT/dβ = −1/(kβ²)
        let want = -k * beta * beta * du / n as f64;
        assert!(
            (r.heat_capacity - want).abs() <= 1e-6 * r.heat_capacity.abs().max(1e-3),
            "{p:?} beta {beta}"
        );
        checked += 1;
    }
}

#[test]
fn variance_is_energy_slope() {
    let e = SpectralEnsemble::from_energies(&[-1.2, 0.3, 0.3, 2.0], 1, 1.0).unwrap();
    for beta in [0.1, 0.9, 2.2] {
        let h = 1e-5;
        let u = |b: f64| e.thermo(b).unwrap().internal_energy;
        let slope = -(u(beta + h) - u(beta - h)) / (2.0 * h);
        assert!(rel_close(e.energy_variance(beta), slope, 1e-7));
    }
    let two = SpectralEnsemble::from_energies(&[-1.0, 1.0], 1, 1.0).unwrap();
    assert!((two.energy_variance(0.0) - 1.0).abs() < 1e-15);
}

#[test]
fn spectral_limits() {
    let e = SpectralEnsemble::from_energies(&[-0.7, 0.2, 1.9], 2, 1.0).unwrap();
    let hot = e.thermo(1e-9).unwrap().internal_energy / 2.0;
    assert!((hot - (-0.7 + 0.2 + 1.9) / 3.0).abs() < 1e-8);
    let cold = e.thermo(200.0).unwrap().internal_energy / 2.0;
    assert!((cold + 0.7).abs() < 1e-12);
}

#[test]
fn pressure_converges_under_step_halving() {
    let make = |step: f64| {
        VolumeModel::new(
            Arc::new(|v: f64| 1.2 / v),
            Arc::new(|v: f64| -0.4 / (v * v)),
            Arc::new(|v: f64| 0.1 / v.sqrt()),
            step,
            (0.5, 4.0),
        )
        .unwrap()
    };
    let coarse = pressure(&make(1e-3), 0.8, 1.7, 3, Branch::Printed).unwrap();
    let fine = pressure(&make(5e-4), 0.8, 1.7, 3, Branch::Printed).unwrap();
    assert!(rel_close(coarse, fine, 1e-8));
}

#[test]
fn stirling_within_one_percent_for_large_gas() {
    let g = TwoLevelGas::new(1000, 1.0, -1.0).unwrap();
    for frac in [0.15, 0.2, 0.5, 0.7, 0.85] {
        let (lo, hi) = g.energy_range();
        let e = lo + frac * (hi - lo);
        let exact = g.entropy_exact(e).unwrap();
        assert!(rel_close(g.entropy_stirling(e).unwrap(), exact, 1e-2), "frac {frac}");
    }
    let mid = g.log_multiplicity(0.0).unwrap();
    assert!(rel_close(mid, 1000.0 * 2f64.ln(), 1e-2));
}
