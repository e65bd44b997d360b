use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot add surds with different radicands: {0} + {1}")]
    MixedRadicand(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("vector {0} is not integral")]
    NonIntegral(String),
    #[error("<v^2> must be positive, got {0}")]
    DegenerateV(String),
    #[error("rank-zero vector has no pencil")]
    RankZero,
    #[error("bad cross-section s = {s0}: {reason}")]
    BadCrossSection { s0: String, reason: &'static str },
    #[error("sqrt(ell*n) is an integer (n = {n}, ell = {ell})")]
    SquareCase { n: String, ell: String },
    #[error("central charge vanishes")]
    ZeroCharge,
    #[error("matrix is not in the group: {0}")]
    NotInGHat(String),
    #[error("action produced a non-lattice matrix: {0}")]
    IntegralityViolation(String),
    #[error("Mobius image left the upper half-plane")]
    LowerHalfPlane,
    #[error("parameter transform centred at the point itself")]
    SamePoint,
    #[error("degenerate gamma data: d_gamma = 0")]
    DegenerateGamma,
    #[error("no walls in the region s < d/r")]
    NoWalls,
    #[error("lambda is an accumulation point of the interval family")]
    AccumulationPoint,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that indicate a bug rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::IntegralityViolation(_) | Error::LowerHalfPlane | Error::MixedRadicand(..))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
