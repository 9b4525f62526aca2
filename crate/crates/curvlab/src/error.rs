use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("vanishing constant term (|a00| = {0:.3e})")]
    VanishingConstant(f64),

    #[error("constant term must be real and positive, got {0}")]
    NonPositiveConstant(Complex64),

    #[error("Hermitian symmetry violated: max deviation {0:.3e}")]
    NotHermitian(f64),

    #[error("point outside domain: {0}")]
    OutsideDomain(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("degree {0:?} exceeds truncation order {1}")]
    OrderExceeded(Vec<u32>, u32),

    #[error("normalization failed: {0}")]
    Normalization(String),

    #[error("logarithm branch failure at sampled pair: kernel value {0}")]
    LogBranch(Complex64),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
