//! Partition functions of one model computed along every available path.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::MetricOperator;
use crate::models::qubit::{build_qubit_model, QubitModelParams};
use crate::models::spin::{build_spin_model, SpinModelParams};
use crate::qmatrix::QMatrix;
use crate::quaternion::Quaternion;
use crate::spectrum;
use crate::thermo::closed_form::{thermo_closed_form, z1_formula, Branch, EnergySliceParams};
use crate::thermo::dyson::{bloch_propagator, dyson_second_order, MIN_STEPS};
use crate::thermo::spectral::SpectralEnsemble;

/// Step-doubling tolerance of the Dyson column.
pub const DYSON_TOL: f64 = 1e-12;

/// One β of a comparison. Columns a model cannot supply are `None`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub beta: f64,
    /// `Σ e^{−βE}` over the real energies.
    pub z_spectral: Option<f64>,
    /// `Re Tr e^{−βH}`.
    pub z_formal: f64,
    pub z1_printed: Option<f64>,
    pub z1_rederived: Option<f64>,
    /// `Re Tr U₀ U_I` with `U_I` through second order.
    pub z_dyson: f64,
}

/// Largest absolute gaps between columns over a sweep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct CompareSummary {
    pub spectral_vs_formal: Option<f64>,
    pub printed_vs_rederived: Option<f64>,
    pub rederived_vs_dyson: Option<f64>,
    pub dyson_vs_formal: f64,
}

impl CompareSummary {
    pub fn from_rows(rows: &[CompareRow]) -> Self {
        let fold = |f: &dyn Fn(&CompareRow) -> Option<f64>| -> Option<f64> {
            rows.iter().map(f).try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))
        };
        Self {
            spectral_vs_formal: fold(&|r| r.z_spectral.map(|s| (s - r.z_formal).abs())),
            printed_vs_rederived: fold(&|r| Some((r.z1_printed? - r.z1_rederived?).abs())),
            rederived_vs_dyson: fold(&|r| r.z1_rederived.map(|z| (z - r.z_dyson).abs())),
            dyson_vs_formal: rows.iter().map(|r| (r.z_dyson - r.z_formal).abs()).fold(0.0, f64::max),
        }
    }
}

/// A Hamiltonian split for the interaction picture, with whatever spectral
/// and closed-form descriptions apply to it.
#[derive(Clone, Debug)]
pub struct ComparisonModel {
    pub hamiltonian: QMatrix,
    pub free_part: QMatrix,
    pub coupling: QMatrix,
    pub ensemble: Option<SpectralEnsemble>,
    pub slice: Option<EnergySliceParams>,
}

impl ComparisonModel {
    pub fn spin(p: &SpinModelParams) -> Result<Self> {
        let b = build_spin_model(p)?;
        Ok(Self {
            hamiltonian: b.hamiltonian,
            free_part: b.free_part,
            coupling: b.coupling,
            ensemble: Some(b.ensemble),
            slice: Some(p.energy_slice()),
        })
    }

    pub fn qubit(p: &QubitModelParams, metric_diag: Option<(f64, f64)>) -> Result<Self> {
        let b = build_qubit_model(p, metric_diag)?;
        Ok(Self {
            hamiltonian: b.hamiltonian,
            free_part: b.free_part,
            coupling: b.coupling,
            ensemble: Some(b.ensemble),
            slice: None,
        })
    }

    /// The real matrix `[[aE, c], [d, bE]]` with `c d = κ`, for which the
    /// second-order trace is the slice formula with `κ` read as `c·d`.
    pub fn slice(s: &EnergySliceParams) -> Result<Self> {
        let root = s.kappa.abs().sqrt();
        let mut h = QMatrix::from_diagonal(&[Quaternion::real(s.a_e), Quaternion::real(s.b_e)]);
        h[(0, 1)] = Quaternion::real(root);
        h[(1, 0)] = Quaternion::real(s.kappa.signum() * root);
        if !h.is_finite() {
            return Err(Error::InvalidInput("non-finite slice parameters".into()));
        }
        let mean = 0.5 * (s.a_e + s.b_e);
        let disc = 0.25 * (s.a_e - s.b_e).powi(2) + s.kappa;
        let ensemble = if disc >= 0.0 {
            Some(SpectralEnsemble::from_energies(&[mean - disc.sqrt(), mean + disc.sqrt()], 1, 1.0)?)
        } else {
            None
        };
        let (free_part, coupling) = h.split_diagonal();
        Ok(Self {
            hamiltonian: h,
            free_part,
            coupling,
            ensemble,
            slice: Some(*s),
        })
    }

    /// Any matrix with a metric. Real energies come from continuation on the
    /// anti-Hermitian similar matrix and are omitted when the spectrum is
    /// not imaginary.
    pub fn general(h: &QMatrix, m: &MetricOperator) -> Result<Self> {
        let (free_part, coupling) = h.split_diagonal();
        let ensemble = match spectrum::energies_by_continuation(&m.similarity(h)?, Some(&free_part)) {
            Ok(e) => Some(SpectralEnsemble::from_energies(&e, 1, 1.0)?),
            Err(Error::NonImaginarySpectrum { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            hamiltonian: h.clone(),
            free_part,
            coupling,
            ensemble,
            slice: None,
        })
    }

    pub fn row(&self, beta: f64) -> Result<CompareRow> {
        let dyson = dyson_second_order(&self.free_part, &self.coupling, beta, MIN_STEPS, DYSON_TOL)?;
        Ok(CompareRow {
            beta,
            z_spectral: self.ensemble.as_ref().map(|e| e.z_spectral(beta)),
            z_formal: bloch_propagator(&self.hamiltonian, beta)?.re_trace(),
            z1_printed: self.slice.map(|s| z1_formula(&s, beta, Branch::Printed)),
            z1_rederived: self.slice.map(|s| z1_formula(&s, beta, Branch::Rederived)),
            z_dyson: dyson.propagator.re_trace(),
        })
    }
}

/// Outcome of a check the front end treats as fatal when it fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleCheck {
    pub name: String,
    pub value: f64,
    pub expected: String,
    pub passed: bool,
}

pub const ORDER_SCALES: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

/// Log-log slope of the Dyson error against `‖H′‖` at β = 1, with the
/// coupling rescaled to each of [`ORDER_SCALES`]. Expected 3 ± 0.2.
pub fn dyson_order_check(free_part: &QMatrix, coupling: &QMatrix) -> Result<OracleCheck> {
    let expected = "3.0 ± 0.2".to_string();
    let norm = coupling.frobenius_norm();
    if norm == 0.0 {
        return Ok(OracleCheck {
            name: "dyson_order".into(),
            value: f64::NAN,
            expected: format!("{expected} (skipped: no coupling)"),
            passed: true,
        });
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for eps in ORDER_SCALES {
        let hp = coupling.scale(eps / norm);
        let approx = dyson_second_order(free_part, &hp, 1.0, MIN_STEPS, 1e-14)?;
        let exact = bloch_propagator(&(free_part + &hp), 1.0)?;
        xs.push(eps.ln());
        ys.push((&approx.propagator - &exact).frobenius_norm().ln());
    }
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    Ok(OracleCheck {
        name: "dyson_order".into(),
        value: slope,
        expected,
        passed: (slope - 3.0).abs() <= 0.2,
    })
}

/// Internal energy of a two-state ensemble against the closed form with
/// no coupling, over `betas`; passes when the largest relative gap is at
/// most `tol`. Ensembles with another state count are skipped.
pub fn spectral_closed_form_check(e: &SpectralEnsemble, betas: &[f64], tol: f64) -> Result<OracleCheck> {
    let energies = e.expanded_energies();
    let name = "spectral_vs_closed_form_energy".to_string();
    if energies.len() != 2 {
        return Ok(OracleCheck {
            name,
            value: f64::NAN,
            expected: "skipped: not a two-state ensemble".into(),
            passed: true,
        });
    }
    let slice = EnergySliceParams {
        a_e: energies[0],
        b_e: energies[1],
        kappa: 0.0,
    };
    let mut worst = 0.0f64;
    for &beta in betas {
        let spec = e.thermo(beta)?.internal_energy;
        let cf = thermo_closed_form(&slice, beta, e.particles(), e.boltzmann(), Branch::Rederived)?.internal_energy;
        worst = worst.max((spec - cf).abs() / spec.abs().max(1.0));
    }
    Ok(OracleCheck {
        name,
        value: worst,
        expected: format!("≤ {tol:e}"),
        passed: worst <= tol,
    })
}
