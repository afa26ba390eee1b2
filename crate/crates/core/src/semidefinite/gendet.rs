use crate::error::{Error, Result};
use crate::numeric::{hermitian_eig, CMatrix, HermitianMatrix, TolerancePolicy, C64};

pub const DEFAULT_EPS_SEQUENCE: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// Generalized determinant: the determinant of `H` restricted to its range,
/// i.e. the product of the eigenvalues above the rank threshold. The zero
/// matrix has generalized determinant 1. Indefinite input is allowed; the
/// sign is the product of the signs of the retained eigenvalues.
pub fn gendet(h: &HermitianMatrix, tol: &TolerancePolicy) -> Result<f64> {
    Ok(hermitian_eig(h)?.gendet(tol))
}

/// Evaluation of `det(H + εI) / ε^(n−r)` along a sequence of shifts.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitEstimate {
    /// Polynomial extrapolation of the samples to `ε = 0`.
    pub value: f64,
    /// The sample at the smallest shift.
    pub raw: f64,
    /// `(ε, det(H + εI)/ε^(n−r))` in the order given.
    pub samples: Vec<(f64, f64)>,
    /// Ratio of successive sample differences; about the shift ratio when
    /// the samples converge linearly in `ε`.
    pub convergence_ratio: Option<f64>,
}

/// Determinant-limit route to the generalized determinant, computed with
/// LU determinants and independent of the eigensolver.
pub fn gendet_limit(h: &HermitianMatrix, r: usize, eps_sequence: &[f64]) -> Result<LimitEstimate> {
    let n = h.dim();
    if r > n {
        return Err(Error::Precondition(format!(
            "rank {r} exceeds dimension {n}"
        )));
    }
    if eps_sequence.is_empty() || eps_sequence.iter().any(|&e| !(e.is_finite() && e > 0.0)) {
        return Err(Error::Precondition(
            "shift sequence must be non-empty and strictly positive".into(),
        ));
    }
    let defect = (n - r) as i32;
    let mut samples = Vec::with_capacity(eps_sequence.len());
    for &eps in eps_sequence {
        let mut shifted: CMatrix = h.as_matrix().clone();
        for i in 0..n {
            shifted[(i, i)] += C64::new(eps, 0.0);
        }
        let det = shifted.det()?.re;
        samples.push((eps, det / eps.powi(defect)));
    }
    let raw = samples
        .iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|s| s.1)
        .expect("non-empty");
    let convergence_ratio = (samples.len() >= 3).then(|| {
        let d1 = samples[0].1 - samples[1].1;
        let d2 = samples[1].1 - samples[2].1;
        d2 / d1
    });
    Ok(LimitEstimate {
        value: neville_at_zero(&samples),
        raw,
        samples,
        convergence_ratio,
    })
}

/// Value at `x = 0` of the interpolating polynomial through `points`.
fn neville_at_zero(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let mut p: Vec<f64> = points.iter().map(|p| p.1).collect();
    let m = p.len();
    for level in 1..m {
        for i in 0..m - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
        }
    }
    p[0]
}
