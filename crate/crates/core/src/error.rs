//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by the numerical kernels and lattice operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The bracket handed to a root solver does not straddle a sign change.
    #[error("no sign change on bracket [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// A root iteration exhausted its iteration cap.
    #[error("root solve did not converge within {max_iter} iterations")]
    NoConvergence { max_iter: usize },

    /// An argument fell outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A lattice basis with zero determinant.
    #[error("degenerate lattice: basis determinant is zero")]
    DegenerateLattice,

    /// A quadratic form that is not positive definite.
    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,

    /// The boundary search found no feasible configuration on any grid cell.
    /// For p > 1 this signals a bug rather than a mathematical obstruction.
    #[error("search found no feasible three-point boundary configuration")]
    NoFeasiblePoint,

    /// A linear form with zero determinant.
    #[error("singular form: determinant is zero")]
    SingularForm,
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
