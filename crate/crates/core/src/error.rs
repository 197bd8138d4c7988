use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division failed: {0}")]
    InternalDivisionFailure(String),
    #[error("singular denominator: {0}")]
    SingularDenominator(String),
    #[error("matrices do not commute")]
    NonCommuting,
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: i64, rank: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank {0} exceeds the resource guard")]
    RankTooLarge(usize),

    #[error("vertex value {0} is forbidden (±1)")]
    ForbiddenVertex(String),
    #[error("vertex set is not stable under theta: {0}")]
    NotThetaStable(String),
    #[error("degenerate parameter {0} (must not be ±1)")]
    DegenerateParameter(String),
    #[error("theta fixes vertex {0}")]
    ThetaFixedPoint(String),
    #[error("theta is not an involution at {0}")]
    ThetaNotInvolution(String),
    #[error("one-loop at vertex {0}")]
    OneLoop(String),
    #[error("arrow counts not theta-symmetric: h({0},{1}) != h(theta {1}, theta {0})")]
    ArrowAsymmetry(String, String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("dimension vector is not theta-symmetric")]
    NotThetaSymmetric,
    #[error("vertex {0} has no value")]
    MissingVertexValue(String),

    #[error("elements have different shapes")]
    ShapeMismatch,
    #[error("operator produced a non-polynomial result")]
    NonPolynomialResult,
    #[error("element is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("inhomogeneous element, term degrees {0:?}")]
    Inhomogeneous(Vec<i64>),
    #[error("involution {0} unsupported for this flavor")]
    UnsupportedInvolution(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("simplicity certification failed: {0}")]
    SimplicityCertificationFailed(String),
    #[error("no selfdual shift: {0}")]
    NoSelfdualShift(String),
    #[error("crystal closure violated: {0}")]
    ClosureViolation(String),
    #[error("characters from different quivers")]
    QuiverMismatch,
    #[error("ch_projective not divisible by the quantum factorial: {0}")]
    NonDivisible(String),

    #[error("eigenvalue outside window: {0}")]
    EigenvalueOutsideWindow(String),
    #[error("spectrum does not split over the window")]
    NonSplitSpectrum,
    #[error("parameter/quiver mismatch: {0}")]
    ParamMismatch(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
