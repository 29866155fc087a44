use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series coefficient t^{requested} requested beyond truncation order {order}")]
    Truncation { requested: usize, order: usize },

    #[error("exponent {0} is not integral on the exact path")]
    NonIntegralExponent(String),

    #[error("{0} is not divisible by {1}")]
    NotDivisible(String, String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("{what} did not converge: {detail}")]
    Convergence { what: &'static str, detail: String },

    #[error("p+q = {0} is odd; no minimal representation exists in this case")]
    OddDimension(usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("floating point overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
