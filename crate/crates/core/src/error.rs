use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A combinational loop; the path starts and ends on the same gate.
    #[error("combinational cycle: {}", .path.join(" -> "))]
    Cycle { path: Vec<String> },

    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    /// A bad field in a tabular input. `row` counts data rows from 1, the
    /// header excluded.
    #[error("row {row}, column `{column}`: {message}")]
    Row {
        row: usize,
        column: String,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// Rejects NaN and infinities.
pub(crate) fn ensure_finite(what: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::invalid(format!("{what} must be finite, got {value}")))
    }
}

pub(crate) fn ensure_non_negative(what: &str, value: f64) -> Result<f64> {
    ensure_finite(what, value)?;
    if value < 0.0 {
        return Err(Error::invalid(format!("{what} must be >= 0, got {value}")));
    }
    Ok(value)
}

pub(crate) fn ensure_positive(what: &str, value: f64) -> Result<f64> {
    ensure_finite(what, value)?;
    if value <= 0.0 {
        return Err(Error::invalid(format!("{what} must be > 0, got {value}")));
    }
    Ok(value)
}
