use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("tridiagonal eigensolver did not converge for eigenvalue {index} after {iterations} iterations")]
    TridiagonalNoConvergence { index: usize, iterations: usize },

    #[error("Jacobi eigensolver exceeded {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    JacobiNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("quadrature did not converge: {0}")]
    QuadratureNoConvergence(String),

    #[error("angular grid too coarse: doubling the angle count changed entries by {disagreement:e}")]
    AngularAliasing { disagreement: f64 },

    #[error("matrix is not Hermitian (max |A - A^H| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("symbol is not real-valued: {0}")]
    NotRealValued(String),

    #[error("atomic measures have no pointwise values")]
    MeasureNotEvaluable,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = FockError> = std::result::Result<T, E>;

impl FockError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        FockError::InvalidParameter(msg.into())
    }
}
