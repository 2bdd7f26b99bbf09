use thiserror::Error;

/// Errors surfaced by the library. Contract violations (mixing points of
/// different groups, negative word lengths) panic instead.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("resource cap exceeded: {what} needs {count} entries, cap is {cap}")]
    ResourceCap { what: &'static str, count: u128, cap: u128 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("no root: {0}")]
    NoRoot(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
