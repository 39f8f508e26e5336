use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ensemble must contain at least one atom")]
    EmptyEnsemble,
    #[error("coupling rate gamma must be finite and positive, got {0}")]
    InvalidGamma(f64),
    #[error("atom phase at index {index} is not finite ({value})")]
    NonFinitePhase { index: usize, value: f64 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("time must be finite and non-negative, got {0}")]
    InvalidTime(f64),
    #[error("invalid time grid: {0}")]
    InvalidTimeGrid(String),
    #[error("operation requires exactly two atoms, got {0}")]
    NotTwoAtoms(usize),
    #[error("Laguerre recurrence overflowed at n = {n}, x = {x:e}; use the scaled or asymptotic evaluation")]
    LaguerreOverflow { n: usize, x: f64 },
    #[error("Bessel order {0} is not supported (only 0 and 1)")]
    UnsupportedBesselOrder(u32),
    #[error("long-time law is only valid for kappa*t >= 1, got {0}")]
    OutsideAsymptoticRange(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid position distribution: {0}")]
    InvalidDistribution(String),
    #[error("fixed positions have length {found}, but {expected} atoms were requested")]
    FixedLengthMismatch { expected: usize, found: usize },
    #[error("grid under-resolved: cell {cell} spans {phase:.3} rad of kernel phase (limit {limit} rad)")]
    UnderResolvedGrid { cell: usize, phase: f64, limit: f64 },
    #[error("point (x = {x}, t = {t}) is outside the domain 0 <= x <= sigma, t >= 0")]
    OutsideDomain { x: f64, t: f64 },
    #[error("numerical failure: {0}")]
    Numerical(String),
}
