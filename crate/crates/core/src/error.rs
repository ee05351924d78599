use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("multiplier must be a nonzero residue, got {0}")]
    ZeroMultiplier(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration of {required} elements exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("singular curve: a = {a}, b = {b} over F_{q}")]
    SingularCurve { a: u32, b: u32, q: u32 },

    /// An exactness assertion failed; this indicates a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }
}
