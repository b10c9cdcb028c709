use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("symbol is not homogeneous")]
    NotHomogeneous,

    #[error("symbol appears non-elliptic: |P({witness:?})| = {value:.3e} below floor {floor:.1e}")]
    NonElliptic {
        witness: Vec<f64>,
        value: f64,
        floor: f64,
    },

    #[error("characteristic direction: P(v) = 0 for v = {0:?}")]
    CharacteristicDirection(Vec<String>),

    #[error("eigenequation residual {residual:.3e} exceeds tolerance {tolerance:.3e} for term {term}")]
    ResidualCheck {
        term: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("zero field: ‖ψ‖_L² vanishes on the region")]
    ZeroField,

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("lattice enumeration budget exceeded: R1 = {r1:.3} needs {points} points > {budget}")]
    BudgetExceeded { r1: f64, points: u128, budget: u128 },

    #[error("margin shell violation: witness {witness:?} with |ξ| in ({r1:.3}, {r2:.3}]")]
    MarginShell {
        witness: Vec<i64>,
        r1: f64,
        r2: f64,
    },

    #[error("certification failure: |ψ| = {value:.6e} below floor {floor:.6e} at probe {probe:?}")]
    CertificationFailure {
        probe: Vec<f64>,
        value: f64,
        floor: f64,
    },

    #[error("good-ball guarantee violated: ratio {ratio:.6e} < guarantee {guarantee:.6e}")]
    GoodBallGuarantee { ratio: f64, guarantee: f64 },

    #[error("ordering chain violated: {0}")]
    OrderingChain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
