use quatstat_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("oracle self-check failed: {0}")]
    Oracle(String),
}

impl CliError {
    /// 2 for configuration, 3 for unphysical parameter regions, 1 for
    /// failed self-checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Oracle(_) => 1,
            CliError::Core(e) => match e {
                CoreError::UnphysicalZ { .. }
                | CoreError::NonImaginarySpectrum { .. }
                | CoreError::Overflow
                | CoreError::DegenerateLevels { .. } => 3,
                CoreError::QuadratureUnconverged { .. } => 1,
                _ => 2,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
