use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Absolute/relative tolerance pair used by every approximate equality test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
}

impl Tolerance {
    pub fn new(absolute: f64, relative: f64) -> Result<Self> {
        if !(absolute >= 0.0 && relative >= 0.0) || !absolute.is_finite() || !relative.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be finite and non-negative (got absolute={absolute}, relative={relative})"
            )));
        }
        Ok(Self { absolute, relative })
    }

    /// Same value for both components.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol)
    }

    /// Largest admissible error for a quantity whose natural magnitude is `scale`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.absolute + self.relative * scale.abs()
    }

    /// `error <= absolute + relative * scale`.
    pub fn accepts(&self, error: f64, scale: f64) -> bool {
        error <= self.bound(scale)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            absolute: DEFAULT_TOLERANCE,
            relative: DEFAULT_TOLERANCE,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_negative_components() {
        assert!(Tolerance::new(-1.0, 0.0).is_err());
        assert!(Tolerance::new(0.0, -1e-3).is_err());
        assert!(Tolerance::new(f64::NAN, 0.0).is_err());
        assert!(Tolerance::new(0.0, 0.0).is_ok());
    }

    #[test]
    fn bound_combines_absolute_and_relative() {
        let t = Tolerance::new(1e-6, 1e-3).unwrap();
        assert!(t.accepts(1e-6, 0.0));
        assert!(!t.accepts(2e-6, 0.0));
        assert!(t.accepts(1.0e-3, 1.0));
    }
}
