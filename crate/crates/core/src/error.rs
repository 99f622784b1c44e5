use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("state is not normalized (|norm^2 - 1| = {deviation:.3e})")]
    NotNormalized { deviation: f64 },

    #[error("unphysical Bloch form: smallest eigenvalue {min_eigenvalue:.3e}")]
    UnphysicalBloch { min_eigenvalue: f64 },

    #[error("state is not X-shaped: entry ({row}, {col}) = {value:.3e}")]
    NotXShaped { row: usize, col: usize, value: f64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("unknown machine '{name}'; valid names: {valid}")]
    UnknownMachine { name: String, valid: String },

    #[error("no feasible point: {0}")]
    Infeasible(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
