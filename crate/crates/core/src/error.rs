use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QkmError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("could not reach λ-order {wanted}; best working precision gave {got}")]
    Precision { wanted: i64, got: i64 },
}

impl QkmError {
    /// True for configuration problems as opposed to computation failures.
    pub fn is_input_error(&self) -> bool {
        matches!(self, QkmError::Spectral(SpectralError::Invalid(_)) | QkmError::Unsupported(_))
    }
}

pub type Result<T, E = QkmError> = std::result::Result<T, E>;
