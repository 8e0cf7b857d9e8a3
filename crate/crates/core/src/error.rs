use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {input:?}: {reason}")]
    InvalidPartition { input: String, reason: String },

    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("cannot expand in q: denominator factor {factor} has no unit leading term and the coefficient of q^({qe}/2) is not polynomial in t")]
    NotExpandable { factor: String, qe: i32 },

    #[error("substitution sends the denominator factor {0} to zero")]
    DegenerateSubstitution(String),

    #[error("series cutoffs differ: {0} and {1}")]
    CutoffMismatch(u32, u32),

    #[error("divisor series has a zero constant term")]
    NonInvertibleSeries,

    #[error("expression error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("fixture {id}: {msg}")]
    Fixture { id: String, msg: String },

    #[error("invalid json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
