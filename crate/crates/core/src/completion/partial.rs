use crate::error::{Error, Result};
use crate::numeric::{CMatrix, HermitianMatrix, C64};

/// A Hermitian matrix with some entries left free.
///
/// The specification pattern is symmetric and conjugate symmetry holds on
/// specified entries; unspecified entries are stored as zero and never read.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialHermitianMatrix {
    n: usize,
    entries: CMatrix,
    specified: Vec<bool>,
}

impl PartialHermitianMatrix {
    /// An `n x n` partial matrix with nothing specified yet.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            entries: CMatrix::zeros(n, n),
            specified: vec![false; n * n],
        }
    }

    pub fn from_hermitian(h: &HermitianMatrix) -> Self {
        let n = h.dim();
        Self {
            n,
            entries: h.as_matrix().clone(),
            specified: vec![true; n * n],
        }
    }

    /// Keeps the entries of `h` where `keep(i, j)` holds; the diagonal is always kept.
    pub fn from_pattern(h: &HermitianMatrix, keep: impl Fn(usize, usize) -> bool) -> Self {
        let n = h.dim();
        let mut p = Self::new(n);
        for i in 0..n {
            for j in i..n {
                if i == j || keep(i, j) {
                    p.put(i, j, h[(i, j)]);
                }
            }
        }
        p
    }

    /// Builds from raw parts, checking pattern symmetry, the diagonal and
    /// conjugate symmetry of specified entries. Unspecified entries are zeroed.
    pub fn from_parts(entries: CMatrix, specified: Vec<bool>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.rows(),
                cols: entries.cols(),
            });
        }
        let n = entries.rows();
        if specified.len() != n * n {
            return Err(Error::DimensionMismatch("pattern size".into()));
        }
        let mut p = Self::new(n);
        for i in 0..n {
            for j in i..n {
                let (a, b) = (specified[i * n + j], specified[j * n + i]);
                if a != b {
                    return Err(Error::InvalidPattern(format!(
                        "pattern is not symmetric at ({i}, {j})"
                    )));
                }
                if !a {
                    continue;
                }
                let z = entries[(i, j)];
                if entries[(j, i)] != z.conj() {
                    return Err(Error::NotHermitian {
                        asymmetry: (entries[(j, i)] - z.conj()).norm(),
                    });
                }
                p.set(i, j, z)?;
            }
        }
        p.validate()?;
        Ok(p)
    }

    /// Specifies entry `(i, j)` and its mirror `(j, i) = conj(z)`.
    pub fn set(&mut self, i: usize, j: usize, z: C64) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::DimensionMismatch(format!(
                "entry ({i}, {j}) out of range for dimension {}",
                self.n
            )));
        }
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite { row: i, col: j });
        }
        if i == j && z.im != 0.0 {
            return Err(Error::NotHermitian {
                asymmetry: z.im.abs(),
            });
        }
        self.put(i, j, z);
        Ok(())
    }

    fn put(&mut self, i: usize, j: usize, z: C64) {
        let n = self.n;
        self.entries[(i, j)] = z;
        self.entries[(j, i)] = z.conj();
        if i == j {
            self.entries[(i, i)] = C64::new(z.re, 0.0);
        }
        self.specified[i * n + j] = true;
        self.specified[j * n + i] = true;
    }

    /// Marks `(i, j)` and `(j, i)` as free.
    pub fn unset(&mut self, i: usize, j: usize) {
        let n = self.n;
        self.entries[(i, j)] = C64::new(0.0, 0.0);
        self.entries[(j, i)] = C64::new(0.0, 0.0);
        self.specified[i * n + j] = false;
        self.specified[j * n + i] = false;
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_specified(&self, i: usize, j: usize) -> bool {
        self.specified[i * self.n + j]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<C64> {
        self.is_specified(i, j).then(|| self.entries[(i, j)])
    }

    /// The stored entries, with zeros at free positions.
    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn is_fully_specified(&self) -> bool {
        self.specified.iter().all(|&s| s)
    }

    /// Free positions `(i, j)` with `i < j`.
    pub fn unspecified_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if !self.is_specified(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_principal_specified(&self, idx: &[usize]) -> bool {
        idx.iter()
            .all(|&i| idx.iter().all(|&j| self.is_specified(i, j)))
    }

    /// The fully specified principal submatrix on `idx`, if it is one.
    pub fn principal(&self, idx: &[usize]) -> Option<CMatrix> {
        self.is_principal_specified(idx)
            .then(|| self.entries.principal(idx))
    }

    /// The whole matrix, when every entry is specified.
    pub fn to_hermitian(&self) -> Result<HermitianMatrix> {
        if !self.is_fully_specified() {
            return Err(Error::InvalidPattern(
                "matrix has unspecified entries".into(),
            ));
        }
        HermitianMatrix::new(self.entries.clone())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Empty);
        }
        if let Some(i) = (0..self.n).find(|&i| !self.is_specified(i, i)) {
            return Err(Error::InvalidPattern(format!(
                "diagonal entry ({i}, {i}) is unspecified"
            )));
        }
        Ok(())
    }

    /// Symmetric relabelling: new index `i` is old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut out = Self::new(n);
        for i in 0..n {
            for j in i..n {
                if self.is_specified(perm[i], perm[j]) {
                    out.put(i, j, self.entries[(perm[i], perm[j])]);
                }
            }
        }
        out
    }
}

/// Three disjoint index sets `α − γ`, `γ = α ∩ β` and `β − γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriPartition {
    pub alpha_only: Vec<usize>,
    pub gamma: Vec<usize>,
    pub beta_only: Vec<usize>,
}

impl TriPartition {
    pub fn new(alpha_only: Vec<usize>, gamma: Vec<usize>, beta_only: Vec<usize>) -> Result<Self> {
        let t = Self {
            alpha_only,
            gamma,
            beta_only,
        };
        let mut all = t.order();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPartition(
                "index sets must be pairwise disjoint".into(),
            ));
        }
        Ok(t)
    }

    /// Contiguous split `a | g | b` of `0..a+g+b`.
    pub fn contiguous(a: usize, g: usize, b: usize) -> Self {
        Self {
            alpha_only: (0..a).collect(),
            gamma: (a..a + g).collect(),
            beta_only: (a + g..a + g + b).collect(),
        }
    }

    /// From two overlapping index sets.
    pub fn from_sets(alpha: &[usize], beta: &[usize]) -> Self {
        let gamma: Vec<usize> = alpha.iter().copied().filter(|i| beta.contains(i)).collect();
        Self {
            alpha_only: alpha
                .iter()
                .copied()
                .filter(|i| !gamma.contains(i))
                .collect(),
            beta_only: beta
                .iter()
                .copied()
                .filter(|i| !gamma.contains(i))
                .collect(),
            gamma,
        }
    }

    pub fn alpha(&self) -> Vec<usize> {
        [self.alpha_only.as_slice(), &self.gamma].concat()
    }

    pub fn beta(&self) -> Vec<usize> {
        [self.gamma.as_slice(), &self.beta_only].concat()
    }

    /// `α − γ`, then `γ`, then `β − γ`.
    pub fn order(&self) -> Vec<usize> {
        [self.alpha_only.as_slice(), &self.gamma, &self.beta_only].concat()
    }

    pub fn sizes(&self) -> (usize, usize, usize) {
        (
            self.alpha_only.len(),
            self.gamma.len(),
            self.beta_only.len(),
        )
    }

    pub(crate) fn require_cover(&self, n: usize) -> Result<()> {
        let mut all = self.order();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidPartition(format!(
                "index sets must cover 0..{n} exactly"
            )));
        }
        Ok(())
    }
}
