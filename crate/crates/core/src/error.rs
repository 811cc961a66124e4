use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("singular matrix: |det| = {det:.3e} below threshold {threshold:.3e}")]
    SingularMatrix { det: f64, threshold: f64 },

    #[error("unknown generator symbol `{0}`")]
    UnknownSymbol(String),

    #[error("running word product became numerically singular at letter {letter}")]
    SingularProduct { letter: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no solution within bounds {0}")]
    NotFound(String),

    #[error("target and its inversion mirror both unreachable (det_norm {0:.3e})")]
    NegativeDet(f64),

    #[error("sign factorization search exhausted for target")]
    FactorizationFailed,

    #[error("no root branch reproduces the construction identity (best residual {0:.3e})")]
    BranchInconsistency(f64),

    #[error("generator parameters admit an integer relation at height {height}: ({a}, {b}, {c})")]
    IndependenceSuspect { height: i64, a: i64, b: i64, c: i64 },

    #[error("identity check `{name}` failed: residual {residual:.3e}")]
    IdentityFailure { name: String, residual: f64 },

    #[error("{0}")]
    NotInDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
