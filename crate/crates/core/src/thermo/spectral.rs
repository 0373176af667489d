//! Canonical ensemble over a discrete list of real energy levels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::thermo::report::{Provenance, ThermoReport};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub energy: f64,
    pub multiplicity: u32,
}

/// Levels sorted ascending, `N` independent particles, Boltzmann constant `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralEnsemble {
    levels: Vec<Level>,
    particles: u64,
    boltzmann: f64,
}

/// Per-particle moments under the Boltzmann weights.
#[derive(Clone, Copy, Debug)]
struct Moments {
    shift: f64,
    shifted_z: f64,
    ln_z: f64,
    mean: f64,
    variance: f64,
}

impl SpectralEnsemble {
    pub fn new(mut levels: Vec<Level>, particles: u64, boltzmann: f64) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidInput("ensemble needs at least one level".into()));
        }
        if levels.iter().any(|l| l.multiplicity == 0 || !l.energy.is_finite()) {
            return Err(Error::InvalidInput("levels need finite energy and multiplicity ≥ 1".into()));
        }
        if particles == 0 || !(boltzmann > 0.0) {
            return Err(Error::InvalidInput("need N ≥ 1 and k > 0".into()));
        }
        levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        Ok(Self { levels, particles, boltzmann })
    }

    /// One level per energy, merging exact repeats into a multiplicity.
    pub fn from_energies(energies: &[f64], particles: u64, boltzmann: f64) -> Result<Self> {
        let mut sorted = energies.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut levels: Vec<Level> = Vec::new();
        for e in sorted {
            match levels.last_mut() {
                Some(l) if l.energy == e => l.multiplicity += 1,
                _ => levels.push(Level { energy: e, multiplicity: 1 }),
            }
        }
        Self::new(levels, particles, boltzmann)
    }

    pub fn with_particles(&self, particles: u64) -> Result<Self> {
        Self::new(self.levels.clone(), particles, self.boltzmann)
    }

    pub fn with_scale(&self, particles: u64, boltzmann: f64) -> Result<Self> {
        Self::new(self.levels.clone(), particles, boltzmann)
    }

    /// Total number of states, `Σ g_r`.
    pub fn state_count(&self) -> u64 {
        self.levels.iter().map(|l| l.multiplicity as u64).sum()
    }

    /// Energies repeated by multiplicity, ascending.
    pub fn expanded_energies(&self) -> Vec<f64> {
        self.levels
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.energy, l.multiplicity as usize))
            .collect()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn particles(&self) -> u64 {
        self.particles
    }

    pub fn boltzmann(&self) -> f64 {
        self.boltzmann
    }

    fn moments(&self, beta: f64) -> Moments {
        // shift by the dominant exponent so the largest weight is 1
        let shift = self
            .levels
            .iter()
            .map(|l| -beta * l.energy)
            .fold(f64::NEG_INFINITY, f64::max);
        let (mut z, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for l in &self.levels {
            let w = l.multiplicity as f64 * (-beta * l.energy - shift).exp();
            z += w;
            m1 += w * l.energy;
        }
        let mean = m1 / z;
        for l in &self.levels {
            let w = l.multiplicity as f64 * (-beta * l.energy - shift).exp();
            m2 += w * (l.energy - mean) * (l.energy - mean);
        }
        Moments {
            shift,
            shifted_z: z,
            ln_z: shift + z.ln(),
            mean,
            variance: m2 / z,
        }
    }

    pub fn ln_z1(&self, beta: f64) -> f64 {
        self.moments(beta).ln_z
    }

    /// `Σ g_r e^{−βE_r}`.
    pub fn z_spectral(&self, beta: f64) -> f64 {
        let m = self.moments(beta);
        m.shifted_z * m.shift.exp()
    }

    /// `ln Z = N ln Z₁` for independent particles.
    pub fn ln_z_total(&self, beta: f64) -> f64 {
        self.particles as f64 * self.ln_z1(beta)
    }

    /// `⟨E²⟩ − ⟨E⟩²` for one particle.
    pub fn energy_variance(&self, beta: f64) -> f64 {
        self.moments(beta).variance
    }

    /// `√(N var) / (N ⟨E⟩)`.
    pub fn relative_rms(&self, beta: f64) -> Result<f64> {
        let m = self.moments(beta);
        if m.mean == 0.0 {
            return Err(Error::ZeroMeanEnergy);
        }
        Ok((m.variance.sqrt() / m.mean) / (self.particles as f64).sqrt())
    }

    pub fn thermo(&self, beta: f64) -> Result<ThermoReport> {
        if beta == 0.0 || !beta.is_finite() {
            return Err(Error::InvalidInput(format!("beta must be finite and non-zero, got {beta}")));
        }
        let m = self.moments(beta);
        let n = self.particles as f64;
        let k = self.boltzmann;
        let u = n * m.mean;
        let a = -n / beta * m.ln_z;
        let report = ThermoReport {
            beta,
            z1: m.shifted_z * m.shift.exp(),
            free_energy: a,
            entropy: k * beta * (u - a),
            internal_energy: u,
            heat_capacity: k * beta * beta * m.variance,
            pressure: None,
            particles: self.particles,
            boltzmann: k,
            provenance: Provenance::Spectral,
        };
        if !report.is_finite() {
            return Err(Error::Overflow);
        }
        Ok(report)
    }
}

pub fn z_spectral(e: &SpectralEnsemble, beta: f64) -> f64 {
    e.z_spectral(beta)
}

pub fn thermo_spectral(e: &SpectralEnsemble, beta: f64) -> Result<ThermoReport> {
    e.thermo(beta)
}

pub fn energy_variance(e: &SpectralEnsemble, beta: f64) -> f64 {
    e.energy_variance(beta)
}

pub fn relative_rms(e: &SpectralEnsemble, beta: f64) -> Result<f64> {
    e.relative_rms(beta)
}
