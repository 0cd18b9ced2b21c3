use std::fmt;

/// Anything that ends a command early, with the exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    Lib(htnn::Error),
    /// Bad flags or configuration.
    Usage(String),
    /// A solve stopped at `max-iters` under `--strict`.
    NotConverged(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_validation() => 2,
            CliError::Usage(_) => 2,
            CliError::Lib(_) | CliError::NotConverged(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::NotConverged(msg) => write!(f, "not converged: {msg}"),
        }
    }
}

impl From<htnn::Error> for CliError {
    fn from(e: htnn::Error) -> Self {
        CliError::Lib(e)
    }
}
