use focklab::FockError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Lib(FockError),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    /// 1 for usage, input and I/O problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Lib(e) => match e {
                FockError::InvalidParameter(_)
                | FockError::Parse { .. }
                | FockError::Io(_)
                | FockError::MeasureNotEvaluable
                | FockError::NotRealValued(_) => 1,
                _ => 2,
            },
            CliError::Mismatch(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Lib(FockError::Parse { .. }) => "parse",
            CliError::Lib(_) if self.exit_code() == 1 => "invalid_input",
            CliError::Lib(_) => "numerical",
            CliError::Mismatch(_) => "replay_mismatch",
        }
    }
}
