use thiserror::Error;

/// Errors raised by field construction, character sums and the point counters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrime(u64),

    #[error("field of order {0} exceeds the table limit of 2^20 elements")]
    FieldTooLarge(u64),

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("characters belong to different fields")]
    MixedFields,

    #[error("q = {q} is not congruent to 1 modulo {modulus}")]
    BadModulus { q: u32, modulus: u32 },

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("invalid lambda: {0}")]
    BadLambda(String),

    #[error("degree {degree} does not divide q - 1 = {order}")]
    BadDegree { degree: u32, order: u32 },

    #[error("weight vector does not sum to 0 modulo {0}")]
    BadWeight(u32),

    #[error("{divisor} does not divide q - 1 = {order}")]
    BadDivisor { divisor: u32, order: u32 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("value {re} + {im}i is not within {tolerance} of an integer")]
    RoundingFailure { re: f64, im: f64, tolerance: f64 },

    #[error("enumeration of {points} points exceeds the budget of {budget}")]
    BudgetExceeded { points: u64, budget: u64 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
}

pub type Result<T> = std::result::Result<T, Error>;
