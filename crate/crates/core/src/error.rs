use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by model construction, file ingestion, and sampling.
#[derive(Debug, Error)]
pub enum Error {
    /// A function argument lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A finite result cannot be represented (overflow or underflow).
    #[error("overflow error: {0}")]
    Overflow(String),

    /// Input data or files failed validation.
    #[error("validation error: {0}")]
    Validation(String),

    /// An MCMC configuration is inconsistent.
    #[error("config error: {0}")]
    Config(String),

    /// An API contract was violated (missing parameter, empty selection, ...).
    #[error("contract error: {0}")]
    Contract(String),

    /// A sampler failed at runtime.
    #[error("sampler error: {0}")]
    Sampler(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by bad user input rather than runtime failure.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Validation(_)
                | Error::Config(_)
                | Error::Contract(_)
                | Error::Overflow(_)
        )
    }
}
