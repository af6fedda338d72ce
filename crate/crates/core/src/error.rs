use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exhaustive routine was asked for a size it cannot handle.
    #[error("{context}: n = {n} exceeds the supported limit {limit}")]
    SizeLimit {
        context: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("linear program is infeasible")]
    Infeasible,

    /// The solver produced a vertex that could not be snapped to exact
    /// half-integral values, or an internal factorization broke down.
    #[error("numeric degeneracy: {0}")]
    NumericDegeneracy(String),

    #[error("eigensolver did not converge: residual {residual:.3e} after {iters} iterations")]
    EigenNonConvergence { residual: f64, iters: usize },

    /// An inner estimator handed to a reduction failed.
    #[error("estimator failure{}: {msg}", match inner_call { Some(i) => format!(" (inner call {i})"), None => String::new() })]
    EstimatorFailure {
        msg: String,
        inner_call: Option<usize>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
