use std::fmt;

/// Errors produced by chart-domain violations, invalid parameters and
/// numerical procedures that can fail.
#[derive(Debug, Clone, PartialEq)]
pub enum GeomError {
    /// Point outside the chart domain (e.g. `|p| >= 1` in the projective ball).
    OutOfChart(String),
    /// Invalid parameter combination.
    InvalidParams(String),
    /// A bracketing scan found no sign change.
    NoSignChange(String),
    /// A rejection-sampling generator exceeded its retry budget.
    RejectionLimit(String),
    /// Degenerate input (zero volume, constant profile, ...).
    Degenerate(String),
    /// I/O failure, with path context.
    Io(String),
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::OutOfChart(m) => write!(f, "point outside chart domain: {m}"),
            GeomError::InvalidParams(m) => write!(f, "invalid parameters: {m}"),
            GeomError::NoSignChange(m) => write!(f, "no sign change found: {m}"),
            GeomError::RejectionLimit(m) => write!(f, "rejection limit exceeded: {m}"),
            GeomError::Degenerate(m) => write!(f, "degenerate input: {m}"),
            GeomError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for GeomError {}
