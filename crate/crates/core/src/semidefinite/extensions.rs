use super::{require_maximal_rank, split, BlockPartition};
use crate::error::Result;
use crate::numeric::{
    herm_pinv, hermitian_eig, CMatrix, HermitianMatrix, TolerancePolicy, FISCHER_RTOL,
    SCHUR_DET_RTOL,
};

/// Generalized Schur complement `H/A = C − B* A⁺ B`.
pub fn schur_complement(
    h: &HermitianMatrix,
    p: BlockPartition,
    tol: &TolerancePolicy,
) -> Result<HermitianMatrix> {
    let v = split(h, p)?;
    let a_pinv = herm_pinv(v.a.as_matrix(), tol)?;
    let correction = &(&v.b.adjoint() * &a_pinv) * &v.b;
    Ok(HermitianMatrix::from_hermitian_unchecked(
        v.c.as_matrix() - &correction,
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FischerReport {
    /// `det₊ H`
    pub lhs: f64,
    /// `det₊ A · det₊ C`
    pub rhs: f64,
    pub b_is_zero: bool,
    pub holds: bool,
    pub equality: bool,
}

/// Fischer's inequality `det₊ H ≤ det₊ A det₊ C`, with equality exactly when
/// `B = 0`, for PSD `H` of maximal rank.
pub fn verify_fischer(
    h: &HermitianMatrix,
    p: BlockPartition,
    tol: &TolerancePolicy,
) -> Result<FischerReport> {
    require_maximal_rank(h, p, tol)?;
    let v = split(h, p)?;
    let lhs = hermitian_eig(h)?.gendet(tol);
    let rhs = hermitian_eig(&v.a)?.gendet(tol) * hermitian_eig(&v.c)?.gendet(tol);
    let equality = if rhs == 0.0 {
        lhs.abs() <= tol.zero_atol
    } else {
        (lhs - rhs).abs() <= FISCHER_RTOL * rhs.abs()
    };
    Ok(FischerReport {
        lhs,
        rhs,
        b_is_zero: v.b.frobenius_norm() <= tol.zero_atol,
        holds: lhs <= rhs * (1.0 + FISCHER_RTOL),
        equality,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchurDetReport {
    /// `det₊ H`
    pub lhs: f64,
    /// `det₊ A · det₊ (H/A)`
    pub rhs: f64,
    pub holds: bool,
}

/// The Schur determinant identity `det₊ H = det₊ A · det₊ H/A` for PSD `H` of
/// maximal rank.
pub fn verify_schur_det(
    h: &HermitianMatrix,
    p: BlockPartition,
    tol: &TolerancePolicy,
) -> Result<SchurDetReport> {
    require_maximal_rank(h, p, tol)?;
    let v = split(h, p)?;
    let lhs = hermitian_eig(h)?.gendet(tol);
    let schur = schur_complement(h, p, tol)?;
    let rhs = hermitian_eig(&v.a)?.gendet(tol) * hermitian_eig(&schur)?.gendet(tol);
    let holds = (lhs - rhs).abs() <= SCHUR_DET_RTOL * lhs.abs().max(rhs.abs());
    Ok(SchurDetReport { lhs, rhs, holds })
}

/// Moore-Penrose inverse assembled from `A⁺` and `(H/A)⁺`:
///
/// ```text
/// H⁺ = [ A⁺ + A⁺B S⁺B*A⁺   −A⁺B S⁺ ]     S = H/A
///      [ −S⁺B*A⁺           S⁺      ]
/// ```
///
/// Valid for PSD `H` of maximal rank; other input is rejected.
pub fn banachiewicz_pinv(
    h: &HermitianMatrix,
    p: BlockPartition,
    tol: &TolerancePolicy,
) -> Result<HermitianMatrix> {
    require_maximal_rank(h, p, tol)?;
    let v = split(h, p)?;
    let a_pinv = herm_pinv(v.a.as_matrix(), tol)?;
    let s_pinv = herm_pinv(schur_complement(h, p, tol)?.as_matrix(), tol)?;

    let ap_b = &a_pinv * &v.b;
    let upper_right = (&ap_b * &s_pinv).scale(-1.0);
    let lower_left = upper_right.adjoint();
    let upper_left = &a_pinv + &(&(&ap_b * &s_pinv) * &ap_b.adjoint());
    let m = CMatrix::from_blocks(&[vec![&upper_left, &upper_right], vec![&lower_left, &s_pinv]])?;
    Ok(HermitianMatrix::from_hermitian_unchecked(m))
}
