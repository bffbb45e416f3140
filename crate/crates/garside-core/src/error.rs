use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("structural error in {field}: {message}")]
    Structural { field: String, message: String },
    #[error("category axiom violated: {0}")]
    Invalid(String),
    #[error("cannot compose {left} with {right}: domain/target mismatch")]
    Composability { left: String, right: String },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("reversing ran out of fuel after {0} steps")]
    OutOfFuel(usize),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    Argument(String),
}

impl Error {
    pub(crate) fn structural(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Structural { field: field.into(), message: message.into() }
    }

    /// True for failures caused by a resource bound rather than by bad input.
    pub fn is_exhaustion(&self) -> bool {
        matches!(self, Error::Capacity(_) | Error::OutOfFuel(_))
    }
}
