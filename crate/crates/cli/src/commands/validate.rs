use quatstat_core::metric::classify;

use crate::cli::{ModelArgs, OutputFormat};
use crate::error::CliResult;
use crate::output;
use crate::params::resolve;

pub fn run(args: &ModelArgs) -> CliResult<()> {
    let (model, _) = resolve(args)?;
    let (h, m) = model.operator_pair()?;
    let c = classify(&h, &m, args.tolerance)?;
    let text = match args.output {
        OutputFormat::Json => output::json(&c)?,
        OutputFormat::Csv => {
            let yes = |b: bool| if b { "yes" } else { "no" };
            format!(
                "quasi-anti-Hermitian: {}\npseudo-anti-Hermitian: {}\npseudo-Hermitian: {}\n\
                 anti-Hermitian residual: {:e}\nHermitian residual: {:e}\nmetric min eigenvalue: {:e}\n",
                yes(c.quasi_anti_hermitian),
                yes(c.pseudo_anti_hermitian),
                yes(c.pseudo_hermitian),
                c.anti_hermitian_residual,
                c.hermitian_residual,
                c.metric_min_eigenvalue,
            )
        }
    };
    output::emit(args.out.as_deref(), &text)
}
