//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! spectral quantities built on it: numerical rank, pseudoinverse, range
//! projector, nullspace basis and semidefiniteness.

use super::hermitian::{symmetrize, HermitianMatrix};
use super::matrix::{CMatrix, C64};
use super::tolerance::TolerancePolicy;
use crate::error::{Error, Result};

/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
/// Convergence when the off-diagonal Frobenius mass drops below this times `‖H‖_F`.
pub const OFFDIAG_RTOL: f64 = 1e-14;

/// Eigenvalues sorted in descending order with matching orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Largest eigenvalue magnitude, `max(|λ_1|, |λ_n|)`.
    pub fn spectral_radius(&self) -> f64 {
        match (self.eigenvalues.first(), self.eigenvalues.last()) {
            (Some(a), Some(b)) => a.abs().max(b.abs()),
            _ => 0.0,
        }
    }

    pub fn rank_threshold(&self, tol: &TolerancePolicy) -> f64 {
        tol.rank_rtol * self.spectral_radius()
    }

    /// Whether eigenvalue `i` lies above the rank threshold.
    fn retained(&self, i: usize, tol: &TolerancePolicy) -> bool {
        let r = self.spectral_radius();
        r > 0.0 && self.eigenvalues[i].abs() > tol.rank_rtol * r
    }

    pub fn rank(&self, tol: &TolerancePolicy) -> usize {
        (0..self.dim()).filter(|&i| self.retained(i, tol)).count()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn is_psd(&self, tol: &TolerancePolicy) -> bool {
        self.dim() == 0 || self.min_eigenvalue() >= -tol.psd_rtol * self.max_eigenvalue().max(1.0)
    }

    /// `U diag(f(λ)) U*` over the retained eigenpairs.
    fn spectral_sum(&self, tol: &TolerancePolicy, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for k in (0..n).filter(|&k| self.retained(k, tol)) {
            let w = f(self.eigenvalues[k]);
            for i in 0..n {
                let ui = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += ui * self.vectors[(j, k)].conj();
                }
            }
        }
        symmetrize(&out)
    }

    pub fn pinv_matrix(&self, tol: &TolerancePolicy) -> CMatrix {
        self.spectral_sum(tol, |l| 1.0 / l)
    }

    pub fn range_projector_matrix(&self, tol: &TolerancePolicy) -> CMatrix {
        self.spectral_sum(tol, |_| 1.0)
    }

    /// Orthonormal basis of the numerical nullspace, one vector per column.
    pub fn null_basis(&self, tol: &TolerancePolicy) -> CMatrix {
        let cols: Vec<usize> = (0..self.dim())
            .filter(|&k| !self.retained(k, tol))
            .collect();
        let rows: Vec<usize> = (0..self.dim()).collect();
        self.vectors.select(&rows, &cols)
    }

    /// Product of the retained eigenvalues; 1 when none are retained.
    pub fn gendet(&self, tol: &TolerancePolicy) -> f64 {
        (0..self.dim())
            .filter(|&k| self.retained(k, tol))
            .map(|k| self.eigenvalues[k])
            .product()
    }

    /// `U diag(λ) U*`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.dim();
        let d = CMatrix::from_diagonal(&self.eigenvalues);
        let u = &self.vectors;
        debug_assert_eq!(u.shape(), (n, n));
        &(u * &d) * &u.adjoint()
    }
}

pub fn hermitian_eig(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    jacobi_eig(h.as_matrix())
}

pub fn numerical_rank(eig: &EigenDecomposition, tol: &TolerancePolicy) -> usize {
    eig.rank(tol)
}

pub fn pinv(h: &HermitianMatrix, tol: &TolerancePolicy) -> Result<HermitianMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(HermitianMatrix::from_hermitian_unchecked(
        eig.pinv_matrix(tol),
    ))
}

pub fn is_psd(h: &HermitianMatrix, tol: &TolerancePolicy) -> Result<bool> {
    Ok(hermitian_eig(h)?.is_psd(tol))
}

pub fn range_projector(h: &HermitianMatrix, tol: &TolerancePolicy) -> Result<HermitianMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(HermitianMatrix::from_hermitian_unchecked(
        eig.range_projector_matrix(tol),
    ))
}

pub(crate) fn herm_pinv(m: &CMatrix, tol: &TolerancePolicy) -> Result<CMatrix> {
    Ok(jacobi_eig(m)?.pinv_matrix(tol))
}

pub(crate) fn herm_rank(m: &CMatrix, tol: &TolerancePolicy) -> Result<usize> {
    Ok(jacobi_eig(m)?.rank(tol))
}

/// Cyclic Jacobi on a square matrix assumed Hermitian; accepts dimension 0.
pub(crate) fn jacobi_eig(m: &CMatrix) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = symmetrize(m);
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = scale == 0.0;
    let mut sweep = 0;
    while !converged {
        if off_diagonal_norm(&a) <= OFFDIAG_RTOL * scale {
            converged = true;
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, sweep);
            }
        }
        sweep += 1;
    }
    debug_assert!(converged);

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    // stable: ties keep Jacobi output order
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]));
    let rows: Vec<usize> = (0..n).collect();
    Ok(EigenDecomposition {
        eigenvalues: order.iter().map(|&i| diag[i]).collect(),
        vectors: v.select(&rows, &order),
    })
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with the unitary `G = diag(1, e^{-iφ}) R(θ)` acting
/// on coordinates `p, q`, and accumulates `V ← V G`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, sweep: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if sweep > 3 && app.abs() + 100.0 * mag == app.abs() && aqq.abs() + 100.0 * mag == aqq.abs() {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }

    let phase = apq / mag;
    let zeta = (aqq - app) / (2.0 * mag);
    let t = if zeta.abs() > 1e150 {
        0.5 / zeta
    } else {
        let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
        sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * g_pp + akq * g_qp;
        let new_kq = akp * g_pq + akq * g_qq;
        a[(k, p)] = new_kp;
        a[(k, q)] = new_kq;
        a[(p, k)] = new_kp.conj();
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = C64::new(app - t * mag, 0.0);
    a[(q, q)] = C64::new(aqq + t * mag, 0.0);
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn close(a: &CMatrix, b: &CMatrix, rtol: f64) -> bool {
        (a - b).frobenius_norm() <= rtol * a.frobenius_norm().max(b.frobenius_norm()).max(1e-300)
    }

    #[test]
    fn identity_spectrum() {
        let eig = hermitian_eig(&HermitianMatrix::identity(3).unwrap()).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0, 1.0]);
        let u = &eig.vectors;
        assert!(close(&(&u.adjoint() * u), &CMatrix::identity(3), 1e-14));
    }

    #[test]
    fn swap_matrix_spectrum() {
        let h = HermitianMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let eig = hermitian_eig(&h).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-15);
        assert!(close(&eig.reconstruct(), h.as_matrix(), 1e-14));
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
        let mut m = CMatrix::from_diagonal(&[2.0, 2.0]);
        m[(0, 1)] = C64::new(0.0, 1.0);
        m[(1, 0)] = C64::new(0.0, -1.0);
        let h = HermitianMatrix::new(m).unwrap();
        let eig = hermitian_eig(&h).unwrap();
        assert!((eig.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(close(&eig.reconstruct(), h.as_matrix(), 1e-14));
    }

    #[test]
    fn zero_matrix() {
        let eig = hermitian_eig(&HermitianMatrix::zeros(4).unwrap()).unwrap();
        assert_eq!(eig.rank(&tol()), 0);
        assert_eq!(eig.gendet(&tol()), 1.0);
        assert!(eig.is_psd(&tol()));
    }

    #[test]
    fn rank_examples() {
        let t = tol();
        let r = |d: &[f64]| {
            numerical_rank(
                &hermitian_eig(&HermitianMatrix::from_diagonal(d).unwrap()).unwrap(),
                &t,
            )
        };
        assert_eq!(r(&[1.0, 1.0, 1.0]), 3);
        assert_eq!(r(&[0.0; 4]), 0);
        assert_eq!(r(&[1.0, 1e-15]), 1);
        assert_eq!(r(&[-2.0, 1.0, 0.0]), 2);
    }

    #[test]
    fn pinv_examples() {
        let t = tol();
        let i3 = HermitianMatrix::identity(3).unwrap();
        assert!(close(
            pinv(&i3, &t).unwrap().as_matrix(),
            i3.as_matrix(),
            1e-15
        ));

        let d = HermitianMatrix::from_diagonal(&[2.0, 0.0]).unwrap();
        let dp = pinv(&d, &t).unwrap();
        assert!(close(
            dp.as_matrix(),
            &CMatrix::from_diagonal(&[0.5, 0.0]),
            1e-15
        ));

        let ones = HermitianMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        let op = pinv(&ones, &t).unwrap();
        let expected = ones.as_matrix().scale(0.25);
        assert!(close(op.as_matrix(), &expected, 1e-14));
        // Penrose conditions for the all-ones case, checked directly.
        let h = ones.as_matrix();
        let hp = op.as_matrix();
        assert!(close(&(&(h * hp) * h), h, 1e-14));
        assert!(close(&(&(hp * h) * hp), hp, 1e-14));
        assert!(close(&(h * hp).adjoint(), &(h * hp), 1e-14));
        assert!(close(&(hp * h).adjoint(), &(hp * h), 1e-14));
    }

    #[test]
    fn psd_examples() {
        let t = tol();
        assert!(is_psd(&HermitianMatrix::identity(2).unwrap(), &t).unwrap());
        assert!(!is_psd(&HermitianMatrix::from_diagonal(&[1.0, -1.0]).unwrap(), &t).unwrap());
        assert!(is_psd(&HermitianMatrix::from_diagonal(&[1.0, -1e-12]).unwrap(), &t).unwrap());
    }

    #[test]
    fn projector_examples() {
        let t = tol();
        let p = |d: &[f64]| {
            range_projector(&HermitianMatrix::from_diagonal(d).unwrap(), &t)
                .unwrap()
                .into_matrix()
        };
        assert!(close(&p(&[1.0, 1.0, 1.0]), &CMatrix::identity(3), 1e-15));
        assert_eq!(p(&[0.0, 0.0]), CMatrix::zeros(2, 2));
        assert!(close(
            &p(&[3.0, 0.0]),
            &CMatrix::from_diagonal(&[1.0, 0.0]),
            1e-15
        ));
    }

    #[test]
    fn empty_input_is_accepted_internally() {
        let eig = jacobi_eig(&CMatrix::zeros(0, 0)).unwrap();
        assert_eq!(eig.dim(), 0);
        assert_eq!(eig.gendet(&tol()), 1.0);
        assert_eq!(
            herm_pinv(&CMatrix::zeros(0, 0), &tol()).unwrap().shape(),
            (0, 0)
        );
    }

    #[test]
    fn ties_keep_solver_order() {
        let eig =
            hermitian_eig(&HermitianMatrix::from_diagonal(&[1.0, 2.0, 1.0]).unwrap()).unwrap();
        assert_eq!(eig.eigenvalues, vec![2.0, 1.0, 1.0]);
        // no rotations were needed, so the eigenvectors are the permuted axes
        assert_eq!(eig.vectors[(1, 0)], C64::new(1.0, 0.0));
        assert_eq!(eig.vectors[(0, 1)], C64::new(1.0, 0.0));
        assert_eq!(eig.vectors[(2, 2)], C64::new(1.0, 0.0));
    }
}
