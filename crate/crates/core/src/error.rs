use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the library.
///
/// `Domain` and `NotASolution` are caller mistakes. `Invariant` and
/// `CrossCheck` mean a proven identity failed to hold, which is a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a solution of a^2+b^2+c^2 = 3abc + {m}: residual {residual}")]
    NotASolution { m: u64, residual: BigInt },

    #[error("invariant violated ({result}): {detail}")]
    Invariant {
        result: &'static str,
        detail: String,
    },

    #[error("enumerators disagree at m={m}: brute force {brute}, forms {forms}")]
    CrossCheck {
        m: u64,
        brute: String,
        forms: String,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invariant(result: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            result,
            detail: detail.into(),
        }
    }

    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant { .. } | Error::CrossCheck { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
