use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExpError {
    #[error("invalid arguments: {0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] qpid::Error),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("plot: {0}")]
    Plot(String),
}

impl ExpError {
    /// Process exit status: 2 for bad input, 3 for numerical failure, 1 for
    /// environment problems.
    pub fn exit_code(&self) -> u8 {
        match self {
            ExpError::Validation(_) => 2,
            ExpError::Core(qpid::Error::SupportLeak { .. } | qpid::Error::NotPsd { .. }) => 3,
            ExpError::Core(qpid::Error::Io(_)) | ExpError::Io(_) | ExpError::Plot(_) => 1,
            ExpError::Core(_) => 2,
        }
    }
}
