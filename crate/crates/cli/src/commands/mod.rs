pub mod compare;
pub mod negtemp;
pub mod spectrum;
pub mod thermo;
pub mod validate;

use rayon::prelude::*;

use quatstat_core::analysis::beta_grid;
use quatstat_core::thermo::{significant, Discrepancy};

use crate::cli::SweepArgs;
use crate::error::{CliError, CliResult};
use crate::params::ParamsFile;

/// β grid, particle count and Boltzmann constant of one sweep, with the
/// worker pool that evaluates it.
pub struct Sweep {
    pub grid: Vec<f64>,
    pub particles: u64,
    pub boltzmann: f64,
    pool: rayon::ThreadPool,
}

impl Sweep {
    pub fn new(args: &SweepArgs, file: &ParamsFile) -> CliResult<Self> {
        if !(args.beta.min > 0.0) {
            return Err(CliError::Config(format!("beta range must start above 0, got {}", args.beta.min)));
        }
        let particles = file.particles.unwrap_or(args.particles);
        if particles == 0 {
            return Err(CliError::Config("particle count must be at least 1".into()));
        }
        let boltzmann = file.boltzmann.unwrap_or(args.boltzmann);
        if !(boltzmann > 0.0 && boltzmann.is_finite()) {
            return Err(CliError::Config(format!("Boltzmann constant must be positive, got {boltzmann}")));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.parallel.max(1))
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(Self {
            grid: beta_grid(args.beta.min, args.beta.max, args.beta.steps, args.log)?,
            particles,
            boltzmann,
            pool,
        })
    }

    /// Evaluates `f` on every β; results keep grid order.
    pub fn map<T, F>(&self, f: F) -> CliResult<Vec<T>>
    where
        T: Send,
        F: Fn(f64) -> quatstat_core::Result<T> + Sync,
    {
        self.pool
            .install(|| self.grid.par_iter().map(|&b| f(b)).collect::<quatstat_core::Result<Vec<T>>>())
            .map_err(CliError::from)
    }

    /// Discrepancy entries above `tol`. A β where the displayed formulas
    /// cannot be evaluated is skipped with a warning.
    pub fn discrepancies<F>(&self, tol: f64, f: F) -> Vec<Discrepancy>
    where
        F: Fn(f64) -> quatstat_core::Result<Vec<Discrepancy>> + Sync,
    {
        let per_beta: Vec<_> = self.pool.install(|| self.grid.par_iter().map(|&b| (b, f(b))).collect());
        let mut all = Vec::new();
        for (beta, r) in per_beta {
            match r {
                Ok(d) => all.extend(d),
                Err(e) => eprintln!("warning: no discrepancy entries at beta = {beta}: {e}"),
            }
        }
        significant(all, tol)
    }
}
