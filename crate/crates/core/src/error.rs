use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: entry ({row}, {col}) differs from its conjugate partner by {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix data has {len} entries, which is not dim*dim for dim {dim}")]
    BadShape { dim: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    EigenNotConverged { sweeps: usize, off_norm: f64 },

    #[error("integration step underflow: {0}")]
    StepUnderflow(String),

    #[error("no oscillation detected: spectral peak sits at zero frequency")]
    NoOscillation,

    #[error(
        "damped-cosine fit did not converge after {iterations} iterations \
         (last iterate: gamma={gamma:e}, nu={nu:e}, amplitude={amplitude:e}, offset={offset:e})"
    )]
    FitNotConverged {
        iterations: usize,
        gamma: f64,
        nu: f64,
        amplitude: f64,
        offset: f64,
    },

    #[error("no root in bracket [{lo:e}, {hi:e}]; use the small-tau estimator instead")]
    NoRoot { lo: f64, hi: f64 },

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {err:e})")]
    Quadrature { tol: f64, err: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
