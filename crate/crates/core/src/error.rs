use thiserror::Error;

/// Errors raised by the arithmetic, curve, family and engine layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("square class 1 is not allowed in an independence test")]
    UnitClass,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("expected a polynomial of degree {expected}, got degree {found}")]
    WrongDegree { expected: usize, found: i64 },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("curve is singular (4A^3 + 27B^2 = 0)")]
    SingularCurve,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("tolerance {tol:e} would need {needed} doublings (cap {cap})")]
    ToleranceUnreachable { tol: f64, needed: u32, cap: u32 },
    #[error("empty input")]
    EmptyInput,
    #[error("too many points for an interval determinant ({0} > 8)")]
    TooManyPoints(usize),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("degenerate fiber: {0}")]
    DegenerateFiber(String),
    #[error("point does not lie on the total space")]
    NotOnTotalSpace,
    #[error("point lies on the line at infinity x + y = 0")]
    LineAtInfinity,
    #[error("search exhausted: found {found} of {wanted} classes")]
    SearchExhausted { found: usize, wanted: usize },
    #[error("operation requires a {0} family")]
    WrongFamilyKind(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
