use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or invalid input; the message already carries its `ParseError:` or
    /// `ValidationError:` prefix.
    #[error("{0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("beta not in B: {0}")]
    BetaNotInIndexSet(String),
    #[error("epsilon must be positive, got {0}")]
    Epsilon(String),
    #[error("plot needs rank 1 or 2, got rank {0}")]
    RankTooLarge(usize),
    #[error("io error: {0}")]
    Io(String),
    #[error("computation failed: {0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Computation(_) | CliError::Io(_) => 1,
            CliError::Input(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::BetaNotInIndexSet(_) => 4,
            CliError::Epsilon(_) => 5,
            CliError::RankTooLarge(_) => 6,
        }
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        CliError::Input(format!("ParseError: {}", msg.into()))
    }

    pub fn validation(field: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Input(format!("ValidationError: {field}: {msg}"))
    }

    pub fn computation(e: impl std::fmt::Display) -> Self {
        CliError::Computation(e.to_string())
    }
}
