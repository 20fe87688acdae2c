use thiserror::Error;

use crate::arq::BundlePoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight n must be at least 2, got {0}")]
    InvalidWeight(i64),

    #[error("operands carry different weights (n = {left} and n = {right})")]
    MixedWeights { left: u32, right: u32 },

    #[error("exponent cap {cap} is too small for this degree; need at least {needed}")]
    CapTooSmall { cap: u32, needed: u32 },

    #[error("closed form dim S_x = {closed} disagrees with monomial count {oracle} at x = {x}")]
    ClosedFormMismatch { x: String, closed: u64, oracle: u64 },

    #[error("Euler matrix has determinant {0}, expected +-1")]
    NotUnimodular(i128),

    #[error("K0 coordinates of {0} are not integral")]
    NonIntegralClass(String),

    #[error("slope of the zero class is undefined")]
    ZeroClassSlope,

    #[error("{0} is not a rank-two bundle")]
    NotRankTwo(BundlePoint),

    #[error("{op} requires length {expected}, but {point} has length {got}")]
    WrongLength {
        op: &'static str,
        point: BundlePoint,
        expected: u32,
        got: u32,
    },

    #[error("orbit {0} does not exist for this weight")]
    UnknownOrbit(String),

    #[error("empty tau range [{tau_min}, {tau_max}]")]
    EmptyWindow { tau_min: i64, tau_max: i64 },

    #[error("{0} lies outside the mesh window")]
    MarginViolation(BundlePoint),

    #[error("slice search from {point} did not terminate within {steps} tau-steps")]
    SearchBound { point: BundlePoint, steps: i64 },

    #[error("{0}")]
    NotTilting(String),

    #[error("candidate passes the tilting test but matches no classified form: {0}")]
    NoMatch(String),

    #[error("window of radius {radius} is too small: {point} lies on its boundary")]
    WindowInsufficient { radius: i64, point: BundlePoint },

    #[error("operation requires a tilting bundle in triple form")]
    NotTripleForm,

    #[error("{0} and {1} lie in different components of the missing part")]
    MixedComponents(BundlePoint, BundlePoint),

    #[error("{0} is not in the missing part")]
    NotMissing(BundlePoint),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
