use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on the caller's inputs was violated.
    #[error("usage error: {0}")]
    Usage(String),
    /// A computation left the domain where it is defined (non-finite values,
    /// entropy gradient on the simplex boundary, ...).
    #[error("numeric domain error{}: {message}", fmt_iteration(.iteration))]
    NumericDomain {
        message: String,
        iteration: Option<usize>,
    },
}

fn fmt_iteration(iteration: &Option<usize>) -> String {
    match iteration {
        Some(k) => format!(" at iteration {k}"),
        None => String::new(),
    }
}

impl Error {
    pub fn usage(message: impl Into<String>) -> Self {
        Error::Usage(message.into())
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Error::NumericDomain {
            message: message.into(),
            iteration: None,
        }
    }

    /// Attach an iteration index to a numeric-domain error.
    pub fn at_iteration(self, k: usize) -> Self {
        match self {
            Error::NumericDomain { message, .. } => Error::NumericDomain {
                message,
                iteration: Some(k),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
