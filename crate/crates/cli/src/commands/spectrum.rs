use serde::Serialize;

use quatstat_core::metric::quasi_spectrum;
use quatstat_core::spectrum::energies_by_continuation;
use quatstat_core::{Error as CoreError, SpectralClass};

use crate::cli::{ModelArgs, OutputFormat};
use crate::error::CliResult;
use crate::output;
use crate::params::resolve;

#[derive(Serialize)]
struct SpectrumOutput {
    classes: Vec<SpectralClass>,
    /// Signed energies, absent when the spectrum is not imaginary.
    energies: Option<Vec<f64>>,
}

pub fn run(args: &ModelArgs) -> CliResult<()> {
    let (model, _) = resolve(args)?;
    let (h, m) = model.operator_pair()?;
    let classes = quasi_spectrum(&h, &m)?;
    let text = match args.output {
        OutputFormat::Json => {
            let energies = match energies_by_continuation(&m.similarity(&h)?, Some(&h.split_diagonal().0)) {
                Ok(e) => Some(e),
                Err(CoreError::NonImaginarySpectrum { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            output::json(&SpectrumOutput { classes, energies })?
        }
        OutputFormat::Csv => output::csv(
            &["re", "im", "multiplicity"],
            classes
                .iter()
                .map(|c| vec![output::num(c.value.re), output::num(c.value.im), c.multiplicity.to_string()]),
        ),
    };
    output::emit(args.out.as_deref(), &text)
}
