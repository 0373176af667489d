use serde::{Deserialize, Serialize};

/// Which computation produced a [`ThermoReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Spectral,
    Dyson,
}

/// Thermodynamics of `N` independent particles at one inverse temperature.
///
/// `z1` is the single-particle partition function; `free_energy`,
/// `entropy` and `internal_energy` are totals for the `N` particles;
/// `heat_capacity` is per particle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermoReport {
    pub beta: f64,
    pub z1: f64,
    pub free_energy: f64,
    pub entropy: f64,
    pub internal_energy: f64,
    pub heat_capacity: f64,
    pub pressure: Option<f64>,
    pub particles: u64,
    pub boltzmann: f64,
    pub provenance: Provenance,
}

impl ThermoReport {
    pub fn temperature(&self) -> f64 {
        1.0 / (self.boltzmann * self.beta)
    }

    /// `|A − (U − TS)|` relative to the largest of the three terms.
    pub fn free_energy_identity_residual(&self) -> f64 {
        let ts = self.temperature() * self.entropy;
        let lhs = self.free_energy;
        let rhs = self.internal_energy - ts;
        let scale = lhs.abs().max(self.internal_energy.abs()).max(ts.abs()).max(1e-300);
        (lhs - rhs).abs() / scale
    }

    pub fn is_finite(&self) -> bool {
        [
            self.z1,
            self.free_energy,
            self.entropy,
            self.internal_energy,
            self.heat_capacity,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

/// A displayed closed-form value that disagrees with its re-derivation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub quantity: String,
    pub printed_value: f64,
    pub derived_value: f64,
    pub beta: f64,
}

impl Discrepancy {
    pub fn new(quantity: impl Into<String>, printed: f64, derived: f64, beta: f64) -> Self {
        Self {
            quantity: quantity.into(),
            printed_value: printed,
            derived_value: derived,
            beta,
        }
    }

    pub fn relative_gap(&self) -> f64 {
        (self.printed_value - self.derived_value).abs() / self.derived_value.abs().max(1.0)
    }
}

/// Keeps only the entries whose relative gap exceeds `tol`.
pub fn significant(entries: Vec<Discrepancy>, tol: f64) -> Vec<Discrepancy> {
    entries
        .into_iter()
        .filter(|d| !(d.relative_gap() <= tol))
        .collect()
}
