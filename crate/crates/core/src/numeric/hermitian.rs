use std::fmt;
use std::ops::Index;

use super::matrix::{CMatrix, C64};
use crate::error::{Error, Result};

/// Relative asymmetry `‖M − M*‖_F / ‖M‖_F` above which construction fails.
pub const ASYMMETRY_RTOL: f64 = 1e-8;

/// A dense Hermitian matrix of dimension at least one.
///
/// Construction symmetrizes the input as `(M + M*)/2`, so the stored entries
/// satisfy `h[i][j] == conj(h[j][i])` exactly and the diagonal is real.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: CMatrix,
}

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() == 0 {
            return Err(Error::Empty);
        }
        check_finite(&m)?;
        let scale = m.frobenius_norm();
        let asym = (&m - &m.adjoint()).frobenius_norm();
        if asym > ASYMMETRY_RTOL * scale {
            return Err(Error::NotHermitian {
                asymmetry: asym / scale,
            });
        }
        Ok(Self {
            inner: symmetrize(&m),
        })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(CMatrix::from_real_rows(rows)?)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(CMatrix::from_diagonal(diag))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(CMatrix::identity(n))
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(CMatrix::zeros(n, n))
    }

    /// Wraps a matrix already known to be Hermitian, symmetrizing away round-off.
    pub(crate) fn from_hermitian_unchecked(m: CMatrix) -> Self {
        debug_assert!(m.is_square() && m.rows() > 0);
        Self {
            inner: symmetrize(&m),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> CMatrix {
        self.inner
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        Self::new(self.inner.scale(c))
    }

    /// Principal submatrix on an index list (must be non-empty).
    pub fn principal(&self, idx: &[usize]) -> Result<Self> {
        if idx.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "index {bad} out of range for dimension {}",
                self.dim()
            )));
        }
        Ok(Self::from_hermitian_unchecked(self.inner.principal(idx)))
    }

    /// Symmetric permutation: `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.dim() {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        self.principal(perm)
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = C64;

    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.inner[idx]
    }
}

impl fmt::Display for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if j > 0 {
                    write!(f, "  ")?;
                }
                let z = self[(i, j)];
                write!(f, "{:>10.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_finite(m: &CMatrix) -> Result<()> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// `(M + M*)/2`; exact on entries that are already conjugate pairs.
pub(crate) fn symmetrize(m: &CMatrix) -> CMatrix {
    let n = m.rows();
    CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    })
}
