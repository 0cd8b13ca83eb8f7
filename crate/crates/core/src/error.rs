use thiserror::Error;

use crate::simplex::Simplex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight for {0} must be positive, got {1}")]
    NonPositiveWeight(Simplex, f64),
    #[error("weight given for {0}, which is not in the complex")]
    UnknownWeight(Simplex),
    #[error("no weight given for {0}")]
    MissingWeight(Simplex),
    #[error("simplex {0} is not in the complex")]
    NotInComplex(Simplex),
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("complex has no maximal simplices")]
    EmptyComplex,
    #[error("no orientation sign stored for ({0}, {1})")]
    MissingSign(Simplex, Simplex),
    #[error("orientation violates δδ = 0 at {rho} ≺ … ≺ {sigma}")]
    InconsistentOrientation { rho: Simplex, sigma: Simplex },
    #[error("operator is not m-symmetric (relative asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("truncation has an empty inner set")]
    EmptyTruncation,
    #[error("flavor {0} requires truncation data")]
    NeedsTruncation(&'static str),
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("betti number mismatch at k = {k}: kernel {kernel} vs rank quotient {quotient}")]
    BettiMismatch { k: isize, kernel: usize, quotient: usize },
    #[error("zero denominator γ - c at path index {0}")]
    IsolatedPathElement(usize),
    #[error("path elements {0} and {1} are not b-adjacent")]
    NotAdjacent(Simplex, Simplex),
    #[error("malformed document at `{key}`: {reason}")]
    Document { key: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
