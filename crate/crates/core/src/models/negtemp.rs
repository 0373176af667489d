//! Microcanonical two-level gas: `N` particles on levels `E₋ < E₊` with
//! fixed total energy. Above the midpoint energy the entropy falls with
//! energy and the temperature is negative.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelGas {
    pub particles: u64,
    pub e_plus: f64,
    pub e_minus: f64,
    pub boltzmann: f64,
}

/// Microcanonical temperature. The midpoint is reported as its own variant
/// so it cannot be confused with an overflow.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Temperature {
    Finite(f64),
    Infinite,
}

impl Temperature {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Temperature::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            Temperature::Finite(t) => Some(t),
            Temperature::Infinite => None,
        }
    }
}

impl TwoLevelGas {
    pub fn new(particles: u64, e_plus: f64, e_minus: f64) -> Result<Self> {
        Self::with_boltzmann(particles, e_plus, e_minus, 1.0)
    }

    pub fn with_boltzmann(particles: u64, e_plus: f64, e_minus: f64, boltzmann: f64) -> Result<Self> {
        if particles == 0 {
            return Err(Error::InvalidInput("need at least one particle".into()));
        }
        if !(e_plus > e_minus) || !e_plus.is_finite() || !e_minus.is_finite() {
            return Err(Error::InvalidInput(format!(
                "need finite E+ > E-, got E+ = {e_plus}, E- = {e_minus}"
            )));
        }
        if !(boltzmann > 0.0) {
            return Err(Error::InvalidInput("Boltzmann constant must be positive".into()));
        }
        Ok(Self { particles, e_plus, e_minus, boltzmann })
    }

    fn n(&self) -> f64 {
        self.particles as f64
    }

    pub fn gap(&self) -> f64 {
        self.e_plus - self.e_minus
    }

    /// `(N E₋, N E₊)`.
    pub fn energy_range(&self) -> (f64, f64) {
        (self.n() * self.e_minus, self.n() * self.e_plus)
    }

    /// `N (E₊ + E₋) / 2`, where the entropy peaks.
    pub fn midpoint(&self) -> f64 {
        0.5 * self.n() * (self.e_plus + self.e_minus)
    }

    fn check(&self, energy: f64) -> Result<()> {
        let (lo, hi) = self.energy_range();
        if !(energy >= lo && energy <= hi) {
            return Err(Error::EnergyOutOfRange { energy, lo, hi });
        }
        Ok(())
    }

    /// `(N₊, N₋)` solving `E = E₊N₊ + E₋N₋`, `N = N₊ + N₋`.
    pub fn occupation_numbers(&self, energy: f64) -> Result<(f64, f64)> {
        self.check(energy)?;
        let upper = ((energy - self.n() * self.e_minus) / self.gap()).clamp(0.0, self.n());
        Ok((upper, self.n() - upper))
    }

    /// `ln(N! / (N₊! N₋!))` through the log-gamma function.
    pub fn log_multiplicity(&self, energy: f64) -> Result<f64> {
        let (up, down) = self.occupation_numbers(energy)?;
        Ok((ln_gamma(self.n() + 1.0) - ln_gamma(up + 1.0) - ln_gamma(down + 1.0)).max(0.0))
    }

    pub fn entropy_exact(&self, energy: f64) -> Result<f64> {
        Ok(self.boltzmann * self.log_multiplicity(energy)?)
    }

    /// Stirling entropy `k[N ln N − N₊ ln N₊ − N₋ ln N₋]`, written as
    /// `−k[N₊ ln(N₊/N) + N₋ ln(N₋/N)]` with `0 ln 0 = 0`.
    pub fn entropy_stirling(&self, energy: f64) -> Result<f64> {
        let (up, down) = self.occupation_numbers(energy)?;
        let n = self.n();
        let term = |m: f64| if m > 0.0 { m * (m / n).ln() } else { 0.0 };
        Ok(0.0 - self.boltzmann * (term(up) + term(down)))
    }

    /// `1/T = (k/(E₊ − E₋)) ln(N₋/N₊)`; `±∞` at the endpoints, zero at the
    /// midpoint.
    pub fn inverse_temperature(&self, energy: f64) -> Result<f64> {
        let (up, down) = self.occupation_numbers(energy)?;
        if up == down {
            return Ok(0.0);
        }
        Ok(self.boltzmann / self.gap() * (down / up).ln())
    }

    pub fn temperature(&self, energy: f64) -> Result<Temperature> {
        let inv = self.inverse_temperature(energy)?;
        if inv == 0.0 {
            return Ok(Temperature::Infinite);
        }
        // 1/(±∞) gives the ±0 endpoint limits
        Ok(Temperature::Finite(1.0 / inv))
    }
}

pub fn occupation_numbers(g: &TwoLevelGas, energy: f64) -> Result<(f64, f64)> {
    g.occupation_numbers(energy)
}

pub fn log_multiplicity(g: &TwoLevelGas, energy: f64) -> Result<f64> {
    g.log_multiplicity(energy)
}

pub fn entropy_stirling(g: &TwoLevelGas, energy: f64) -> Result<f64> {
    g.entropy_stirling(energy)
}

pub fn temperature(g: &TwoLevelGas, energy: f64) -> Result<Temperature> {
    g.temperature(energy)
}
