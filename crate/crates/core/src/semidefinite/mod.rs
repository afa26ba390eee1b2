//! Partitioned Hermitian matrices `H = [[A, B], [B*, C]]`: block extraction,
//! column inclusion, the maximal-rank condition `N(H) = N(A) ⊕ N(C)`, the
//! generalized determinant and the block identities that survive for
//! semidefinite matrices of maximal rank.

mod extensions;
mod gendet;

pub use extensions::{
    banachiewicz_pinv, schur_complement, verify_fischer, verify_schur_det, FischerReport,
    SchurDetReport,
};
pub use gendet::{gendet, gendet_limit, LimitEstimate, DEFAULT_EPS_SEQUENCE};

use crate::error::{Error, Result};
use crate::numeric::TolerancePolicy;
use crate::numeric::{hermitian_eig, jacobi_eig, CMatrix, EigenDecomposition, HermitianMatrix};

/// Split of `{0..n}` into a leading block of size `k` and a trailing block of size `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    k: usize,
    l: usize,
}

impl BlockPartition {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidPartition(format!(
                "both blocks must be non-empty, got k={k}, l={l}"
            )));
        }
        Ok(Self { k, l })
    }

    /// Partition of an `n`-dimensional matrix with leading block size `k`.
    pub fn leading(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::InvalidPartition(format!(
                "leading block {k} must be smaller than dimension {n}"
            )));
        }
        Self::new(k, n - k)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.k + self.l
    }

    pub fn leading_indices(&self) -> Vec<usize> {
        (0..self.k).collect()
    }

    pub fn trailing_indices(&self) -> Vec<usize> {
        (self.k..self.k + self.l).collect()
    }

    fn check(&self, h: &HermitianMatrix) -> Result<()> {
        if h.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "partition {}+{} does not fit a {}x{} matrix",
                self.k,
                self.l,
                h.dim(),
                h.dim()
            )));
        }
        Ok(())
    }
}

/// The blocks `A`, `B`, `C` of a partitioned Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockView {
    pub a: HermitianMatrix,
    pub b: CMatrix,
    pub c: HermitianMatrix,
}

impl BlockView {
    pub fn reassemble(&self) -> HermitianMatrix {
        let bs = self.b.adjoint();
        let m = CMatrix::from_blocks(&[
            vec![self.a.as_matrix(), &self.b],
            vec![&bs, self.c.as_matrix()],
        ])
        .expect("block shapes are consistent by construction");
        HermitianMatrix::from_hermitian_unchecked(m)
    }
}

pub fn split(h: &HermitianMatrix, p: BlockPartition) -> Result<BlockView> {
    p.check(h)?;
    let lead = p.leading_indices();
    let trail = p.trailing_indices();
    Ok(BlockView {
        a: h.principal(&lead)?,
        b: h.as_matrix().select(&lead, &trail),
        c: h.principal(&trail)?,
    })
}

/// Tests `R(B) ⊂ R(A)` and `R(B*) ⊂ R(C)` through the residuals
/// `‖(I − AA⁺)B‖_F` and `‖(I − CC⁺)B*‖_F`.
pub fn column_inclusion_holds(
    h: &HermitianMatrix,
    p: BlockPartition,
    tol: &TolerancePolicy,
) -> Result<bool> {
    let v = split(h, p)?;
    let pa = hermitian_eig(&v.a)?.range_projector_matrix(tol);
    let pc = hermitian_eig(&v.c)?.range_projector_matrix(tol);
    let bs = v.b.adjoint();
    let res_a = (&v.b - &(&pa * &v.b)).frobenius_norm();
    let res_c = (&bs - &(&pc * &bs)).frobenius_norm();
    let bound = inclusion_bound(h, &v.b, tol);
    Ok(res_a <= bound && res_c <= bound)
}

fn inclusion_bound(h: &HermitianMatrix, b: &CMatrix, tol: &TolerancePolicy) -> f64 {
    tol.zero_atol * (1.0 + b.frobenius_norm()) + tol.inclusion_rtol() * h.frobenius_norm()
}

/// Numerical ranks of `H`, `A` and `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockRanks {
    pub h: usize,
    pub a: usize,
    pub c: usize,
}

impl BlockRanks {
    pub fn is_maximal(&self) -> bool {
        self.h == self.a + self.c
    }
}

/// Ranks of `H` and its diagonal blocks, failing if `H` is not PSD.
pub fn block_ranks(
    h: &HermitianMatrix,
    p: BlockPartition,
    tol: &TolerancePolicy,
) -> Result<BlockRanks> {
    let eig = hermitian_eig(h)?;
    require_psd(&eig, tol)?;
    let v = split(h, p)?;
    Ok(BlockRanks {
        h: eig.rank(tol),
        a: hermitian_eig(&v.a)?.rank(tol),
        c: hermitian_eig(&v.c)?.rank(tol),
    })
}

/// Maximal rank: `rank H = rank A + rank C`, i.e. `N(H) = N(A) ⊕ N(C)`.
pub fn is_maximal_rank(
    h: &HermitianMatrix,
    p: BlockPartition,
    tol: &TolerancePolicy,
) -> Result<bool> {
    Ok(block_ranks(h, p, tol)?.is_maximal())
}

/// Checks that `H` annihilates `w ⊕ 0` for `w ∈ N(A)` and `0 ⊕ u` for `u ∈ N(C)`.
pub fn nullspace_direct_sum_check(
    h: &HermitianMatrix,
    p: BlockPartition,
    tol: &TolerancePolicy,
) -> Result<bool> {
    require_psd(&hermitian_eig(h)?, tol)?;
    let v = split(h, p)?;
    let na = hermitian_eig(&v.a)?.null_basis(tol);
    let nc = hermitian_eig(&v.c)?.null_basis(tol);
    let lifted_a = CMatrix::from_blocks(&[vec![&na], vec![&CMatrix::zeros(p.l(), na.cols())]])?;
    let lifted_c = CMatrix::from_blocks(&[vec![&CMatrix::zeros(p.k(), nc.cols())], vec![&nc]])?;
    let bound = tol.inclusion_rtol() * h.frobenius_norm();
    let worst = |basis: &CMatrix| {
        let image = h.as_matrix() * basis;
        (0..image.cols())
            .map(|j| {
                (0..image.rows())
                    .map(|i| image[(i, j)].norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    };
    Ok(worst(&lifted_a) <= bound && worst(&lifted_c) <= bound)
}

pub(crate) fn require_psd(eig: &EigenDecomposition, tol: &TolerancePolicy) -> Result<()> {
    if eig.is_psd(tol) {
        Ok(())
    } else {
        Err(Error::NotPsd {
            min_eigenvalue: eig.min_eigenvalue(),
        })
    }
}

/// Fails unless `H` is PSD and of maximal rank for `p`.
pub(crate) fn require_maximal_rank(
    h: &HermitianMatrix,
    p: BlockPartition,
    tol: &TolerancePolicy,
) -> Result<BlockRanks> {
    let ranks = block_ranks(h, p, tol)?;
    if !ranks.is_maximal() {
        return Err(Error::NotMaximalRank {
            rank: ranks.h,
            rank_a: ranks.a,
            rank_c: ranks.c,
        });
    }
    Ok(ranks)
}

/// Rank of a square block that may be empty.
pub(crate) fn block_rank(m: &CMatrix, tol: &TolerancePolicy) -> Result<usize> {
    Ok(jacobi_eig(m)?.rank(tol))
}
