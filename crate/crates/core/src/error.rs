use thiserror::Error;

/// Errors raised by parameter validation and by the internal cross-checks
/// between independent computation routes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radix base must be at least 2, got {0}")]
    InvalidBase(u64),

    #[error("binomial index t = {t} exceeds n = {n}")]
    BinomialRange { n: u64, t: u64 },

    #[error("the order of 0 is undefined")]
    ZeroValuation,

    #[error("empty or reversed range [{start}, {end})")]
    InvalidRange { start: u64, end: u64 },

    #[error("n = {n} exceeds the exact-computation cap {cap}")]
    ExactCap { n: u64, cap: u64 },

    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: String,
        domain: &'static str,
    },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: impl ToString, domain: &'static str) -> Self {
        Error::Domain {
            what,
            value: value.to_string(),
            domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
