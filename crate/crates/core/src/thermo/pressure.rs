//! Pressure `P = −∂A/∂V` at fixed β for slice parameters that depend on
//! the volume.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numdiff;
use crate::thermo::closed_form::{thermo_closed_form, Branch, EnergySliceParams, DEGENERACY_TOL};
use crate::thermo::report::Discrepancy;

pub type VolumeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Slice parameters as functions of volume on a closed interval.
#[derive(Clone)]
pub struct VolumeModel {
    pub a_e: VolumeFn,
    pub b_e: VolumeFn,
    pub kappa: VolumeFn,
    /// Finite-difference step in V.
    pub step: f64,
    pub domain: (f64, f64),
}

impl fmt::Debug for VolumeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VolumeModel")
            .field("step", &self.step)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl VolumeModel {
    pub fn new(a_e: VolumeFn, b_e: VolumeFn, kappa: VolumeFn, step: f64, domain: (f64, f64)) -> Result<Self> {
        if !(step > 0.0) || !(domain.0 < domain.1) {
            return Err(Error::InvalidInput("volume model needs step > 0 and lo < hi".into()));
        }
        Ok(Self { a_e, b_e, kappa, step, domain })
    }

    /// Parameters that do not depend on V.
    pub fn constant(p: EnergySliceParams, domain: (f64, f64)) -> Result<Self> {
        Self::new(
            Arc::new(move |_| p.a_e),
            Arc::new(move |_| p.b_e),
            Arc::new(move |_| p.kappa),
            1e-4 * (domain.1 - domain.0).abs().max(1e-300),
            domain,
        )
    }

    /// Each parameter scales as `value · (V₀/V)^exponent`.
    pub fn power_law(p: EnergySliceParams, v0: f64, exponents: [f64; 3], domain: (f64, f64)) -> Result<Self> {
        if !(domain.0 > 0.0) {
            return Err(Error::InvalidInput("power-law volume model needs a positive domain".into()));
        }
        let scale = move |value: f64, e: f64| -> VolumeFn { Arc::new(move |v: f64| value * (v0 / v).powf(e)) };
        Self::new(
            scale(p.a_e, exponents[0]),
            scale(p.b_e, exponents[1]),
            scale(p.kappa, exponents[2]),
            1e-4 * domain.0,
            domain,
        )
    }

    pub fn slice_at(&self, volume: f64) -> EnergySliceParams {
        EnergySliceParams {
            a_e: (self.a_e)(volume),
            b_e: (self.b_e)(volume),
            kappa: (self.kappa)(volume),
        }
    }

    /// Checks that the whole difference stencil around `volume` lies inside
    /// the domain.
    pub fn check(&self, volume: f64) -> Result<()> {
        let (lo, hi) = self.domain;
        if !(volume - self.step >= lo && volume + self.step <= hi) {
            return Err(Error::DomainError { volume, lo, hi });
        }
        Ok(())
    }
}

fn free_energy(model: &VolumeModel, beta: f64, volume: f64, n: u64, branch: Branch) -> Result<f64> {
    Ok(thermo_closed_form(&model.slice_at(volume), beta, n, 1.0, branch)?.free_energy)
}

/// `−∂A/∂V` by a Richardson-extrapolated central difference.
pub fn pressure(model: &VolumeModel, beta: f64, volume: f64, n: u64, branch: Branch) -> Result<f64> {
    model.check(volume)?;
    let h = model.step;
    let mut samples = [0.0; 4];
    for (slot, dv) in samples.iter_mut().zip([-h, -h / 2.0, h / 2.0, h]) {
        *slot = free_energy(model, beta, volume + dv, n, branch)?;
    }
    let coarse = (samples[3] - samples[0]) / (2.0 * h);
    let fine = (samples[2] - samples[1]) / h;
    Ok(-(4.0 * fine - coarse) / 3.0)
}

/// The displayed pressure expression, fed with finite-difference
/// derivatives of the three parameter functions.
pub fn displayed_pressure(model: &VolumeModel, beta: f64, volume: f64, n: u64) -> Result<f64> {
    model.check(volume)?;
    let p = model.slice_at(volume);
    let gap = p.a_e - p.b_e;
    if gap.abs() < DEGENERACY_TOL {
        return Err(Error::DegenerateLevels { gap });
    }
    let h = model.step;
    let da = numdiff::richardson(|v| (model.a_e)(v), volume, h);
    let db = numdiff::richardson(|v| (model.b_e)(v), volume, h);
    let dk = numdiff::richardson(|v| (model.kappa)(v), volume, h);
    let kap = p.kappa;
    let (ea, eb) = ((-p.a_e * beta).exp(), (-p.b_e * beta).exp());
    let den = (gap * gap + kap * beta * gap) * ea + (gap * gap - kap * beta * gap) * eb;
    let first = (-gap * gap * da - kap * (beta * gap + 1.0) * da + kap * db + dk * gap) * ea;
    let second = (-gap * gap * db - kap * (1.0 - beta * gap) * db + kap * da - dk * gap) * eb;
    Ok(n as f64 * (first + second) / den)
}

pub fn pressure_discrepancy(model: &VolumeModel, beta: f64, volume: f64, n: u64) -> Result<Discrepancy> {
    Ok(Discrepancy::new(
        "closed_form.pressure",
        displayed_pressure(model, beta, volume, n)?,
        pressure(model, beta, volume, n, Branch::Printed)?,
        beta,
    ))
}
