use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse group spec at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("generator {index} has order 0")]
    ZeroOrder { index: usize },

    #[error(
        "generator {index}: weights ({a},{b},{c}) sum to {sum}, which is not divisible by the order {order}"
    )]
    Determinant {
        index: usize,
        order: u64,
        a: u64,
        b: u64,
        c: u64,
        sum: u64,
    },

    #[error("group has no nontrivial characters (order 1); the degree-0 share is undefined")]
    NoNontrivialCharacters,

    #[error("sweep range must satisfy 2 <= r-min <= r-max, got {min}..{max}")]
    InvalidRange { min: u64, max: u64 },

    #[error("group order {r} exceeds the brute-force cap {cap}")]
    AboveCap { r: u64, cap: u64 },

    #[error("invariant `{name}` violated: {detail}")]
    Invariant { name: &'static str, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invariant(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            name,
            detail: detail.into(),
        }
    }

    /// True for malformed input, as opposed to a failed internal consistency check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::ZeroOrder { .. }
                | Error::Determinant { .. }
                | Error::NoNontrivialCharacters
                | Error::AboveCap { .. }
                | Error::InvalidRange { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
