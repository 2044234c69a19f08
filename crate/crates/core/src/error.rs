use thiserror::Error;

use crate::decomposition::FormDiagnostics;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data has {len} entries, expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, len: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("not Hermitian: max |A - A^dagger| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("not positive semidefinite: eigenvalue {eigenvalue:e} is below -{tol:e}")]
    NotPositive { eigenvalue: f64, tol: f64 },

    #[error("trace is not one: trace = {trace}, tolerance {tol:e}")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("support leak: fourth row/column entry of magnitude {residual:e} exceeds {tol:e}")]
    SupportLeak { residual: f64, tol: f64 },

    #[error("damping parameter gamma = {0} is outside [0, 1]")]
    GammaOutOfRange(f64),

    #[error("Kraus operators are not trace preserving: max |sum A^dagger A - I| = {residual:e} exceeds {tol:e}")]
    NotTracePreserving { residual: f64, tol: f64 },

    #[error("state does not have the two-term tensor form: {0}")]
    NotDecomposable(FormDiagnostics),

    #[error("inconsistent entries: reconstruction differs from the input by {residual:e} (tolerance {tol:e})")]
    InconsistentEntries { residual: f64, tol: f64 },

    #[error("zero weight: rho11 + rho22 = {weight:e}")]
    ZeroWeight { weight: f64 },

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("internal numerical error: {0}")]
    InternalNumerical(String),
}
