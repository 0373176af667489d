//! Thermodynamic sweeps and the discrepancy entries that accompany them.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::models::spin::{self, SpinModelParams};
use crate::thermo::closed_form::{closed_form_discrepancies, thermo_closed_form, Branch, EnergySliceParams};
use crate::thermo::pressure::{pressure, pressure_discrepancy, VolumeModel};
use crate::thermo::report::{Discrepancy, ThermoReport};
use crate::thermo::spectral::SpectralEnsemble;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThermoPath {
    ClosedForm,
    Spectral,
}

#[derive(Clone, Debug)]
enum Source {
    ClosedForm { slice: EnergySliceParams, branch: Branch },
    Spectral(SpectralEnsemble),
}

/// Everything needed to produce one [`ThermoReport`] per β.
#[derive(Clone, Debug)]
pub struct ThermoModel {
    source: Source,
    particles: u64,
    boltzmann: f64,
    volume: Option<(VolumeModel, f64)>,
    spin: Option<SpinModelParams>,
}

impl ThermoModel {
    pub fn closed_form(slice: EnergySliceParams, branch: Branch, particles: u64, boltzmann: f64) -> Self {
        Self {
            source: Source::ClosedForm { slice, branch },
            particles,
            boltzmann,
            volume: None,
            spin: None,
        }
    }

    pub fn spectral(ensemble: &SpectralEnsemble, particles: u64, boltzmann: f64) -> Result<Self> {
        Ok(Self {
            source: Source::Spectral(ensemble.with_scale(particles, boltzmann)?),
            particles,
            boltzmann,
            volume: None,
            spin: None,
        })
    }

    /// Adds a pressure column at `volume`; the slice parameters are then
    /// taken from the volume model at that volume.
    pub fn with_volume(mut self, model: VolumeModel, volume: f64) -> Result<Self> {
        model.check(volume)?;
        if let Source::ClosedForm { slice, .. } = &mut self.source {
            *slice = model.slice_at(volume);
        }
        self.volume = Some((model, volume));
        Ok(self)
    }

    /// Attaches the spin display formulas to the discrepancy log.
    pub fn with_spin(mut self, p: SpinModelParams) -> Self {
        self.spin = Some(p);
        self
    }

    pub fn has_pressure(&self) -> bool {
        self.volume.is_some()
    }

    pub fn report(&self, beta: f64) -> Result<ThermoReport> {
        let mut r = match &self.source {
            Source::ClosedForm { slice, branch } => {
                thermo_closed_form(slice, beta, self.particles, self.boltzmann, *branch)?
            }
            Source::Spectral(e) => e.thermo(beta)?,
        };
        if let Some((model, volume)) = &self.volume {
            let branch = match &self.source {
                Source::ClosedForm { branch, .. } => *branch,
                Source::Spectral(_) => Branch::Rederived,
            };
            r.pressure = Some(pressure(model, beta, *volume, self.particles, branch)?);
        }
        Ok(r)
    }

    /// Displayed-versus-derived entries at one β, unfiltered.
    pub fn discrepancies(&self, beta: f64) -> Result<Vec<Discrepancy>> {
        let mut out = Vec::new();
        if let Some(p) = &self.spin {
            out.extend(spin_discrepancies(p, beta, self.particles, self.boltzmann)?);
        } else if let Source::ClosedForm { slice, .. } = &self.source {
            out.extend(closed_form_discrepancies(slice, beta, self.particles, self.boltzmann)?);
        }
        if let Some((model, volume)) = &self.volume {
            out.push(pressure_discrepancy(model, beta, *volume, self.particles)?);
        }
        Ok(out)
    }
}

/// The spin model's displayed formulas against the slice substitution and
/// the spectral oracle `U/N = ω/2 − v tanh(βv)`.
pub fn spin_discrepancies(p: &SpinModelParams, beta: f64, n: u64, boltzmann: f64) -> Result<Vec<Discrepancy>> {
    let slice = p.energy_slice();
    let mut out = closed_form_discrepancies(&slice, beta, n, boltzmann)?;
    let bundle = spin::build_spin_model(p)?;
    let spectral = bundle.ensemble.with_scale(n, boltzmann)?.thermo(beta)?;
    let nf = n as f64;
    out.push(Discrepancy::new(
        "spin.z1.display_vs_substituted",
        spin::displayed_z1(p, beta),
        crate::thermo::closed_form::z1_formula(&slice, beta, Branch::Printed),
        beta,
    ));
    out.push(Discrepancy::new(
        "spin.internal_energy_per_particle.display_vs_spectral",
        spin::displayed_internal_energy(p, beta, n) / nf,
        spectral.internal_energy / nf,
        beta,
    ));
    out.push(Discrepancy::new(
        "spin.entropy.display_vs_spectral",
        spin::displayed_entropy(p, beta, n, boltzmann),
        spectral.entropy,
        beta,
    ));
    Ok(out)
}
