use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Constraint(String),
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Model(#[from] vortexab::Error),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "E_PARSE",
            CliError::Constraint(_) => "E_CONSTRAINT",
            CliError::UnknownPreset(_) => "E_UNKNOWN_PRESET",
            CliError::Usage(_) => "E_USAGE",
            CliError::Io { .. } | CliError::Csv(_) => "E_IO",
            CliError::Model(e) => e.category(),
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    /// One line, `CATEGORY: message`, with any embedded newlines flattened.
    pub fn report_line(&self) -> String {
        format!("{}: {}", self.category(), self.to_string().replace('\n', " "))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
