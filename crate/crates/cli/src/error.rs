use thiserror::Error;

/// Front-end errors with their process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cluster_trop::error::Error),

    /// Bad arguments or unreadable input files.
    #[error("{0}")]
    Input(String),
}

impl CliError {
    /// 2 for input errors, 3 for capability errors, 1 for internal failures.
    pub fn exit_code(&self) -> u8 {
        use cluster_trop::error::Error as E;
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) if e.is_input() => 2,
            CliError::Core(e) if e.is_capability() => 3,
            CliError::Core(E::Overflow(_)) => 3,
            CliError::Core(E::Integrality(_) | E::Divisibility(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
