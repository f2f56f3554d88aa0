use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("step size underflow at t = {t:e} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("non-finite right-hand side at t = {t:e}")]
    NonFiniteRhs { t: f64 },

    #[error("too many integration steps ({0})")]
    TooManySteps(usize),

    #[error("eigensolver failed to converge")]
    EigenNoConvergence,

    #[error("mass matrix is indefinite: smallest eigenvalue {min:e} vs norm {norm:e}")]
    IndefiniteMass { min: f64, norm: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("r = {r} exceeds the surface domain (max {max})")]
    DomainExceeded { r: f64, max: f64 },

    #[error("radius function is not positive: R({theta}) = {value}")]
    NonPositiveRadius { theta: f64, value: f64 },

    #[error("invalid warp function: {0}")]
    InvalidWarp(String),

    #[error("log-derivative left (0, inf) at r = {r:e}: w = {w:e}")]
    LogDerivativeOutOfRange { r: f64, w: f64 },

    #[error("r = {r} outside radial profile range [{lo}, {hi}]")]
    OutsideProfile { r: f64, lo: f64, hi: f64 },

    #[error("too few quadrature nodes: {got} < {need}")]
    TooFewNodes { got: usize, need: usize },

    #[error("bound {formula} does not apply: {reason}")]
    BoundNotApplicable { formula: String, reason: String },

    #[error("bound {formula} is only defined for l = 2 (requested l = {l})")]
    OnlyFirstNonzero { formula: String, l: usize },

    #[error("negative steepness constant a = {0}")]
    NegativeSteepness(f64),

    #[error("quadrature under-resolved: refinement changed {what} by {rel:e} (relative)")]
    UnderResolved { what: String, rel: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
