use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("invalid extent [{lo}, {hi}]")]
    InvalidExtent { lo: f64, hi: f64 },
    #[error("grid too small: {n} cells, need at least {min}")]
    TooSmall { n: usize, min: usize },
    #[error("expected {expected} values, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("malformed snapshot: {0}")]
    Snapshot(String),
}

/// The monotone flux failed its own maximum principle. This points at a broken
/// first-order flux or out-of-bounds input, not at the limiter.
#[derive(Debug, Error, Clone, Copy, PartialEq)]
#[error("monotone flux violates the {side} bound at cell {cell}: Gamma = {gamma:e}")]
pub struct MonotoneViolation {
    pub cell: usize,
    pub side: BoundSide,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Max,
    Min,
}

impl std::fmt::Display for BoundSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundSide::Max => "maximum",
            BoundSide::Min => "minimum",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PoissonError {
    #[error("charge density has non-zero mean {mean:e}")]
    NonNeutral { mean: f64 },
    #[error("expected {expected} field samples, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagnosticsError {
    #[error("every cell has density below {threshold:e}")]
    DegenerateDensity { threshold: f64 },
    #[error("reference value is zero; relative deviation undefined")]
    ZeroReference,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("at t = {t}: {source}")]
    Monotone {
        t: f64,
        #[source]
        source: MonotoneViolation,
    },
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error("non-finite value in species {species} at t = {t}")]
    NonFinite { species: usize, t: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
}
