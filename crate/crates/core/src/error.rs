use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("eigenpair residual {residual:e} exceeds tolerance {tol:e}")]
    InvalidEigenpair { residual: f64, tol: f64 },

    #[error("eigenvector component {index} is zero; desingularize first")]
    ZeroComponent { index: usize },

    #[error("problem has no eigenpair; run `eigenfence eig` on the matrix to find one")]
    MissingEigenpair,

    #[error("eigenvector is the zero vector")]
    AllZero,

    #[error("eigenvector has no zero component; use the diagonal similarity instead")]
    NoZero,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("matrix size {n} is too small (need n >= {min})")]
    Size { n: usize, min: usize },

    #[error("size {0} is odd; this construction needs an even size")]
    OddSize(usize),

    #[error("size {0} is even; this construction needs an odd size")]
    EvenSize(usize),

    #[error("row sums spread {spread:e} exceeds tolerance {tol:e}; matrix is not constant row-sum")]
    NotConstantRowSum { spread: f64, tol: f64 },

    #[error("overflow: entry magnitude exceeded 1e300 while forming power {k}")]
    Overflow { k: u32 },

    #[error("eigenvalue iteration did not converge; {converged} of {n} eigenvalues found")]
    Convergence { converged: usize, n: usize },

    #[error("degenerate viewport: {0}")]
    Viewport(String),
}

impl Error {
    /// Errors caused by malformed or inconsistent input rather than by the
    /// mathematics (the CLI maps these to exit code 2).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Dimension(_)
                | Error::InvalidEigenpair { .. }
                | Error::AllZero
                | Error::MissingEigenpair
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
