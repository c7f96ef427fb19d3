use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension must be even and positive, got {0}")]
    OddDimension(usize),
    #[error("tensor is not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error("omega_upper * omega_lower != identity at ({0},{1})")]
    NotInversePair(usize, usize),
    #[error("connection has torsion: Gamma^{upper}_{{{i}{k}}} != Gamma^{upper}_{{{k}{i}}}")]
    Torsion { upper: usize, i: usize, k: usize },
    #[error("connection is not symplectic: nabla_{i} omega_{{{j}{k}}} != 0")]
    NotSymplectic { i: usize, j: usize, k: usize },
    #[error("Omega term at hbar^{0} is not allowed (powers must be >= 1)")]
    BadOmegaPower(i32),
    #[error("Omega form at hbar^{0} is not closed")]
    OmegaNotClosed(i32),
    #[error("Omega form at hbar^{0} is not a 2-form")]
    OmegaNotTwoForm(i32),
    #[error("r must be a 1-form with filtration >= 3: {0}")]
    BadConnectionForm(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("gauge operator must start with the identity (hbar powers >= 1): {0}")]
    BadGauge(String),
    #[error("matrix is singular")]
    Singular,
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
