use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("covariance matrix is not in standard form: {0}")]
    NotStandardForm(String),

    #[error("unphysical state: {0}")]
    UnphysicalState(String),

    #[error("covariance matrix is singular or not positive definite")]
    SingularCovariance,

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("integration diverged at t = {t}")]
    Divergence { t: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
