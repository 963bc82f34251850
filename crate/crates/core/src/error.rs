use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational {0:?}: expected \"p/q\" or \"p\"")]
    ParseRational(String),
    #[error("logarithmic divergence: constant term must be zero")]
    LogarithmicDivergence,
    #[error("unit required: constant term is not invertible")]
    UnitRequired,
    #[error("composition needs valuation >= 1 in the inner series")]
    CompositionValuation,
    #[error("compositional inverse needs zero constant term and invertible linear term")]
    NotInvertible,
    #[error("truncation too small: order {order} < index {needed}")]
    TruncationTooSmall { order: usize, needed: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("computation paths disagree: {0}")]
    PathDisagreement(String),
    #[error("unknown identity id {0:?}")]
    UnknownIdentity(String),
    #[error("binding outside schema of {id}: {reason}")]
    BindingOutsideSchema { id: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
