use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The pair (k, D, d) does not satisfy sign d = sign D = (-1)^k.
    #[error("sign constraint violated for k={k}, D={big_d}, d={d}: require sign d = sign D = (-1)^k")]
    SignConstraint { k: u32, big_d: i64, d: i64 },

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("{0} is not a discriminant (must be 0 or 1 mod 4)")]
    NotDiscriminant(i64),

    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(i64),

    /// Attained unit residues of a form disagree under the Kronecker symbol.
    #[error("genus character chi_{d} is not well defined on [{a}, {b}, {c}]")]
    IllDefinedCharacter { d: i64, a: i64, b: i64, c: i64 },

    #[error("reduction of [{a}, {b}, {c}] exceeded {cap} steps")]
    ReductionCap { a: i64, b: i64, c: i64, cap: usize },

    #[error("class enumeration for discriminant {0} is inconsistent")]
    InconsistentClasses(i64),

    #[error("precision loss: {0}")]
    PrecisionLoss(String),

    #[error("no convergence after truncation {cap}: last change {last_change}")]
    NonConvergence { cap: u64, last_change: String },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
}
