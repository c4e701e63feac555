use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: String,
        found: String,
    },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("invalid Pauli symbol {0:?} (expected one of I, X, Y, Z)")]
    InvalidPauli(char),

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("operator {index} is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { index: usize, deviation: f64 },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("Kraus operators are not trace preserving (max deviation {0:.3e})")]
    NotTracePreserving(f64),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The Kraus-family channels disagree, so no privacy certificate exists.
    #[error("subsystem is not private: Choi mismatch {mismatch:.3e} exceeds tolerance")]
    NotPrivate { mismatch: f64 },

    /// The Kraus families agree but the recovered coefficient matrix fails its own checks.
    #[error("certificate check failed: {0}")]
    CertificateCheck(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn mismatch(
    context: &'static str,
    expected: impl ToString,
    found: impl ToString,
) -> Error {
    Error::DimensionMismatch {
        context,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
