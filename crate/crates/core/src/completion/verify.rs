//! Empirical checks of the two uniqueness characterisations of the
//! completion: it maximizes the generalized determinant among PSD,
//! rank-preserving fills, and its pseudoinverse vanishes on the free positions.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::partial::PartialHermitianMatrix;
use crate::error::{Error, Result};
use crate::numeric::{
    hermitian_eig, jacobi_eig, HermitianMatrix, TolerancePolicy, C64, MAXIMALITY_RTOL,
    ZERO_PATTERN_RTOL,
};

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPatternReport {
    pub ok: bool,
    /// Largest `|H⁺[i][j]| / ‖H⁺‖_F` over free positions.
    pub max_relative: f64,
    /// Free positions `(i, j)`, `i < j`, with their offending magnitude.
    pub violations: Vec<(usize, usize, f64)>,
}

/// Checks `|H⁺[i][j]| <= 1e-8 ‖H⁺‖_F` at every position left free in `p`.
pub fn verify_pinv_zero_pattern(
    p: &PartialHermitianMatrix,
    completed: &HermitianMatrix,
    tol: &TolerancePolicy,
) -> Result<ZeroPatternReport> {
    check_dims(p, completed)?;
    let hp = hermitian_eig(completed)?.pinv_matrix(tol);
    let scale = hp.frobenius_norm();
    let mut max_relative: f64 = 0.0;
    let mut violations = Vec::new();
    for (i, j) in p.unspecified_positions() {
        let mag = hp[(i, j)].norm();
        let rel = if scale == 0.0 { 0.0 } else { mag / scale };
        max_relative = max_relative.max(rel);
        if rel > ZERO_PATTERN_RTOL {
            violations.push((i, j, mag));
        }
    }
    Ok(ZeroPatternReport {
        ok: violations.is_empty(),
        max_relative,
        violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalityStatus {
    /// Some PSD, rank-preserving perturbations were found and none beat the completion.
    Passed,
    /// A PSD, rank-preserving perturbation had a larger generalized determinant.
    Violated,
    /// No perturbation stayed PSD with the same rank; nothing was tested.
    Vacuous,
}

impl MaximalityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            MaximalityStatus::Passed => "passed",
            MaximalityStatus::Violated => "violated",
            MaximalityStatus::Vacuous => "vacuous",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaximalityViolation {
    pub attempt: usize,
    pub gendet: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaximalityReport {
    pub status: MaximalityStatus,
    pub baseline_gendet: f64,
    pub baseline_rank: usize,
    pub attempts: usize,
    /// Perturbations that stayed PSD with unchanged rank.
    pub accepted: usize,
    pub rejected_not_psd: usize,
    pub rejected_rank: usize,
    /// Largest `det₊(perturbed) / det₊(completed)` among accepted perturbations.
    pub max_ratio: f64,
    pub violations: Vec<MaximalityViolation>,
}

/// Randomly perturbs the free entries of `completed` (each by a complex
/// number of modulus at most `magnitude`, mirrored to keep the matrix
/// Hermitian) and checks that no perturbation that stays PSD with the same
/// rank has a larger generalized determinant.
///
/// At least `trials` perturbations are drawn; drawing continues until
/// `min(trials, 20)` have been accepted or `50 * trials` have been drawn.
pub fn verify_det_maximality(
    p: &PartialHermitianMatrix,
    completed: &HermitianMatrix,
    tol: &TolerancePolicy,
    trials: usize,
    magnitude: f64,
    seed: u64,
) -> Result<MaximalityReport> {
    check_dims(p, completed)?;
    if !(magnitude.is_finite() && magnitude >= 0.0) {
        return Err(Error::Precondition(format!(
            "perturbation magnitude must be finite and non-negative, got {magnitude}"
        )));
    }
    let base = hermitian_eig(completed)?;
    let baseline_rank = base.rank(tol);
    let baseline_gendet = base.gendet(tol);
    let free = p.unspecified_positions();
    let target = trials.min(20);
    let cap = trials.saturating_mul(50);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut report = MaximalityReport {
        status: MaximalityStatus::Vacuous,
        baseline_gendet,
        baseline_rank,
        attempts: 0,
        accepted: 0,
        rejected_not_psd: 0,
        rejected_rank: 0,
        max_ratio: f64::NEG_INFINITY,
        violations: Vec::new(),
    };
    while report.attempts < cap && (report.attempts < trials || report.accepted < target) {
        let attempt = report.attempts;
        report.attempts += 1;
        let mut m = completed.as_matrix().clone();
        for &(i, j) in &free {
            let r = magnitude * rng.random::<f64>().sqrt();
            let delta = C64::from_polar(r, TAU * rng.random::<f64>());
            m[(i, j)] += delta;
            m[(j, i)] += delta.conj();
        }
        let eig = jacobi_eig(&m)?;
        if !eig.is_psd(tol) {
            report.rejected_not_psd += 1;
            continue;
        }
        if eig.rank(tol) != baseline_rank {
            report.rejected_rank += 1;
            continue;
        }
        report.accepted += 1;
        let g = eig.gendet(tol);
        report.max_ratio = report.max_ratio.max(g / baseline_gendet);
        if g > baseline_gendet * (1.0 + MAXIMALITY_RTOL) {
            report
                .violations
                .push(MaximalityViolation { attempt, gendet: g });
        }
    }
    report.status = if !report.violations.is_empty() {
        MaximalityStatus::Violated
    } else if report.accepted == 0 {
        MaximalityStatus::Vacuous
    } else {
        MaximalityStatus::Passed
    };
    Ok(report)
}

fn check_dims(p: &PartialHermitianMatrix, completed: &HermitianMatrix) -> Result<()> {
    if p.dim() != completed.dim() {
        return Err(Error::DimensionMismatch(format!(
            "partial matrix is {0}x{0}, completion is {1}x{1}",
            p.dim(),
            completed.dim()
        )));
    }
    Ok(())
}
