//! Sweeps, comparisons and self-checks assembled from the library
//! operations, in the shape the command-line front end emits them.

pub mod compare;
pub mod sweep;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::negtemp::{Temperature, TwoLevelGas};

pub use compare::{
    dyson_order_check, spectral_closed_form_check, CompareRow, CompareSummary, ComparisonModel, OracleCheck,
};
pub use sweep::{spin_discrepancies, ThermoModel, ThermoPath};

/// `steps` inverse temperatures from `min` to `max` inclusive, evenly spaced
/// in β or, with `log`, in ln β.
pub fn beta_grid(min: f64, max: f64, steps: usize, log: bool) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::InvalidInput("beta grid needs at least one step".into()));
    }
    if !(min.is_finite() && max.is_finite()) || max < min {
        return Err(Error::InvalidInput(format!("bad beta range {min}:{max}")));
    }
    if log && !(min > 0.0) {
        return Err(Error::InvalidInput("logarithmic grid needs beta_min > 0".into()));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let t = i as f64 / last;
            if i == steps - 1 {
                max
            } else if log {
                (min.ln() + t * (max.ln() - min.ln())).exp()
            } else {
                min + t * (max - min)
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NegTempRow {
    pub energy: f64,
    pub entropy_stirling: f64,
    pub entropy_exact: f64,
    pub temperature: Temperature,
}

/// Entropies and temperature at `points` energies spanning `[N E₋, N E₊]`.
pub fn negtemp_table(g: &TwoLevelGas, points: usize) -> Result<Vec<NegTempRow>> {
    if points < 2 {
        return Err(Error::InvalidInput("energy grid needs at least two points".into()));
    }
    let (lo, hi) = g.energy_range();
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            let energy = if i == points - 1 { hi } else { lo + (hi - lo) * (i as f64 / last) };
            Ok(NegTempRow {
                energy,
                entropy_stirling: g.entropy_stirling(energy)?,
                entropy_exact: g.entropy_exact(energy)?,
                temperature: g.temperature(energy)?,
            })
        })
        .collect()
}
