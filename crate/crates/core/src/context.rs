use crate::error::{Result, ZetaError};

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const DEFAULT_TARGET_TOL: f64 = 1e-30;
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// Working precision, requested absolute accuracy and the cap on series,
/// product and quadrature lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    precision_bits: u32,
    target_tol: f64,
    max_terms: usize,
}

impl PrecisionContext {
    pub const MIN_PRECISION_BITS: u32 = 64;
    pub const MAX_PRECISION_BITS: u32 = 1 << 16;

    pub fn new(precision_bits: u32, target_tol: f64, max_terms: usize) -> Result<Self> {
        if !(Self::MIN_PRECISION_BITS..=Self::MAX_PRECISION_BITS).contains(&precision_bits) {
            return Err(ZetaError::InvalidContext(format!(
                "precision_bits must lie in [{}, {}], got {precision_bits}",
                Self::MIN_PRECISION_BITS,
                Self::MAX_PRECISION_BITS
            )));
        }
        if !(target_tol.is_finite() && target_tol > 0.0) {
            return Err(ZetaError::InvalidContext(format!(
                "target_tol must be positive and finite, got {target_tol}"
            )));
        }
        if max_terms == 0 {
            return Err(ZetaError::InvalidContext("max_terms must be at least 1".into()));
        }
        Ok(Self {
            precision_bits,
            target_tol,
            max_terms,
        })
    }

    /// Default tolerance and term cap at the given precision.
    pub fn with_precision(precision_bits: u32) -> Result<Self> {
        Self::new(precision_bits, DEFAULT_TARGET_TOL, DEFAULT_MAX_TERMS)
    }

    pub fn with_tol(self, target_tol: f64) -> Result<Self> {
        Self::new(self.precision_bits, target_tol, self.max_terms)
    }

    pub fn with_max_terms(self, max_terms: usize) -> Result<Self> {
        Self::new(self.precision_bits, self.target_tol, max_terms)
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn target_tol(&self) -> f64 {
        self.target_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Arguments closer than this to a pole or zero lattice point are snapped to it.
    pub fn snap_radius(&self) -> f64 {
        (-(self.precision_bits as f64) / 2.0).exp2()
    }

    /// Number of significant decimal digits carried by printed values.
    pub fn output_digits(&self) -> usize {
        (self.precision_bits as f64 * 0.3).ceil() as usize
    }

    /// First working precision tried by the precision-escalation loop.
    pub(crate) fn initial_working_bits(&self) -> u32 {
        self.precision_bits + 32
    }

    /// Largest working precision the escalation loop may reach.
    pub(crate) fn max_working_bits(&self) -> u32 {
        self.precision_bits.saturating_mul(8).max(self.precision_bits + 512)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            precision_bits: DEFAULT_PRECISION_BITS,
            target_tol: DEFAULT_TARGET_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_settings() {
        assert!(PrecisionContext::new(32, 1e-10, 10).is_err());
        assert!(PrecisionContext::new(128, 0.0, 10).is_err());
        assert!(PrecisionContext::new(128, f64::NAN, 10).is_err());
        assert!(PrecisionContext::new(128, 1e-10, 0).is_err());
        assert!(PrecisionContext::new(64, 1e-10, 1).is_ok());
    }

    #[test]
    fn snap_radius_halves_the_bits() {
        let ctx = PrecisionContext::with_precision(128).unwrap();
        assert_eq!(ctx.snap_radius(), 2f64.powi(-64));
        assert_eq!(ctx.output_digits(), 39);
    }
}
