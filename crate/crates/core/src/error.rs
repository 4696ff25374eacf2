use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
///
/// Variants are grouped by how a caller is expected to react: model errors
/// (bad input), analytic negatives (the function is not square summable or an
/// iteration diverged) and numerical failures.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("matrix inversion failed: {0} is singular")]
    Singular(String),

    #[error("matrix is ill-conditioned (condition estimate {0:.3e})")]
    IllConditioned(f64),

    #[error("matrix is not positive semi-definite (most negative eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("{0} did not converge")]
    NoConvergence(String),

    #[error("spectral radius {rho} of the Kronecker transition sum is not below 1; use the fixed-point route")]
    SpectralRadius { rho: f64 },

    #[error("linear system is inconsistent (residual {0:.3e})")]
    Inconsistent(f64),

    #[error("divergent: {0}")]
    Divergent(String),

    #[error("function is not in l2 (witness {witness})")]
    NotL2 { witness: f64 },

    #[error("hankel block too large: {entries} entries exceeds cap {cap}")]
    HankelCap { entries: u128, cap: u128 },
}

impl Error {
    /// True for outcomes that are legitimate negative answers rather than
    /// failures: non-membership in l2 or a divergent Gramian.
    pub fn is_analytic_negative(&self) -> bool {
        matches!(self, Error::Divergent(_) | Error::NotL2 { .. })
    }

    pub fn is_model_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownSymbol(_)
                | Error::AlphabetMismatch(_)
                | Error::InvalidModel(_)
                | Error::Shape(_)
                | Error::NonFinite(_)
                | Error::Parse { .. }
                | Error::OutOfRange { .. }
                | Error::HankelCap { .. }
        )
    }
}
