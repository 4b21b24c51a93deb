use thiserror::Error;

/// Errors raised by the bound and oracle routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs are structurally incompatible (e.g. incommensurable lattices).
    #[error("structural error: {0}")]
    Structural(String),

    /// A numeric procedure failed to converge or lost too much accuracy.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A constant was requested at a (delta, s) pair absent from the
    /// published tables. Constants are proven only at listed points, so
    /// interpolation is refused.
    #[error("table lookup error: {0}")]
    TableLookup(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
    pub fn table(msg: impl Into<String>) -> Self {
        Error::TableLookup(msg.into())
    }
}
