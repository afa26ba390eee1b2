use crate::error::{Error, Result};

/// Thresholds that turn exact notions (rank, nullspace, semidefiniteness)
/// into floating-point decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy {
    /// Eigenvalues with `|λ| <= rank_rtol * max|λ|` count as zero.
    pub rank_rtol: f64,
    /// A matrix is PSD when `λ_min >= -psd_rtol * max(λ_max, 1)`.
    pub psd_rtol: f64,
    /// Absolute threshold for "this block is zero".
    pub zero_atol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rank_rtol: 1e-9,
            psd_rtol: 1e-9,
            zero_atol: 1e-12,
        }
    }
}

impl TolerancePolicy {
    pub fn new(rank_rtol: f64, psd_rtol: f64, zero_atol: f64) -> Result<Self> {
        let tol = Self {
            rank_rtol,
            psd_rtol,
            zero_atol,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank_rtol", self.rank_rtol),
            ("psd_rtol", self.psd_rtol),
            ("zero_atol", self.zero_atol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Residual scale for subspace inclusion tests.
    ///
    /// A vector classified as null may still carry a Rayleigh quotient up to
    /// `rank_rtol * λ_max`; for PSD input its coupling to the other block is
    /// then bounded by the square root of that.
    pub fn inclusion_rtol(&self) -> f64 {
        self.rank_rtol.sqrt().max(self.zero_atol)
    }
}

/// Relative tolerance for the Penrose conditions and pseudoinverse agreement.
pub const PINV_RTOL: f64 = 1e-8;
/// Relative slack for the Fischer inequality and its equality case.
pub const FISCHER_RTOL: f64 = 1e-8;
/// Relative tolerance for the Schur determinant identity.
pub const SCHUR_DET_RTOL: f64 = 1e-7;
/// Relative threshold (against `‖H⁺‖_F`) for zeros of the pseudoinverse.
pub const ZERO_PATTERN_RTOL: f64 = 1e-8;
/// Relative slack when comparing generalized determinants of competing completions.
pub const MAXIMALITY_RTOL: f64 = 1e-9;
