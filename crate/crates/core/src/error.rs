use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {lhs} vs {rhs}")]
    DimensionMismatch { lhs: usize, rhs: usize },

    #[error("matrix data of length {len} is not square")]
    NotSquare { len: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NotConverged { sweeps: usize, off_norm: f64 },

    #[error("index {index} out of range 1..=4")]
    IndexOutOfRange { index: usize },

    #[error("invalid triple {0:?}: need three distinct indices from 1..=4")]
    InvalidTriple(Vec<usize>),

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error("parameters are not canonical (need |a| >= |b| and |c| >= |d|)")]
    NotCanonical,

    #[error("qubit label collision: {0}")]
    LabelCollision(String),

    #[error("unknown qubit label: {0}")]
    UnknownLabel(String),

    #[error("invalid register: {0}")]
    InvalidRegister(String),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("trace norm {trace_norm} disagrees with 1 + 2N = {one_plus_two_n}")]
    BoundIdentity { trace_norm: f64, one_plus_two_n: f64 },

    #[error("grid needs at least 2 points per axis, got {0}")]
    GridTooSmall(usize),
}
