//! Random test data: complex Gaussian matrices, unitaries, PSD matrices with
//! prescribed spectra or ranks, maximal-rank partitioned matrices, random
//! chordal patterns and completion instances built on them.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::chordal::{clique_tree, is_chordal, maximal_cliques, PatternGraph};
use crate::completion::PartialHermitianMatrix;
use crate::error::{Error, Result};
use crate::numeric::{hermitian_eig, CMatrix, HermitianMatrix, TolerancePolicy, C64};
use crate::semidefinite::{is_maximal_rank, BlockPartition};

pub fn complex_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * s, im * s)
    })
}

/// `n x r` matrix with orthonormal columns (Gram–Schmidt with one
/// reorthogonalisation pass on a Gaussian matrix).
pub fn random_orthonormal<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> CMatrix {
    assert!(
        r <= n,
        "cannot fit {r} orthonormal columns in dimension {n}"
    );
    loop {
        let mut q = complex_gaussian(n, r, rng);
        let mut ok = true;
        for j in 0..r {
            for _ in 0..2 {
                for k in 0..j {
                    let dot: C64 = (0..n).map(|i| q[(i, k)].conj() * q[(i, j)]).sum();
                    for i in 0..n {
                        let qik = q[(i, k)];
                        q[(i, j)] -= dot * qik;
                    }
                }
            }
            let norm = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for i in 0..n {
                q[(i, j)] /= norm;
            }
        }
        if ok {
            return q;
        }
    }
}

pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    random_orthonormal(n, n, rng)
}

/// `U diag(spectrum) U*` for a random unitary `U`.
pub fn random_with_spectrum<R: Rng + ?Sized>(spectrum: &[f64], rng: &mut R) -> HermitianMatrix {
    let n = spectrum.len();
    let u = random_unitary(n, rng);
    let m = &(&u * &CMatrix::from_diagonal(spectrum)) * &u.adjoint();
    HermitianMatrix::from_hermitian_unchecked(m)
}

/// `G G*` with `G` an `n x r` complex Gaussian matrix; rank `min(n, r)`.
pub fn random_gram<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> HermitianMatrix {
    let g = complex_gaussian(n, r, rng);
    HermitianMatrix::from_hermitian_unchecked(&g * &g.adjoint())
}

/// Positive definite matrix with eigenvalues drawn from `[lo, hi]`.
pub fn random_positive_definite<R: Rng + ?Sized>(
    n: usize,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> HermitianMatrix {
    let spectrum: Vec<f64> = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
    random_with_spectrum(&spectrum, rng)
}

/// PSD matrix of rank `r` whose non-zero eigenvalues lie in `[lo, hi]`.
pub fn random_psd_of_rank<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> HermitianMatrix {
    let mut spectrum: Vec<f64> = (0..r).map(|_| rng.random_range(lo..=hi)).collect();
    spectrum.resize(n, 0.0);
    random_with_spectrum(&spectrum, rng)
}

/// `Q diag(core) Q*` with `Q` an `n x r` orthonormal frame: rank `r`, range random.
fn random_core<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> CMatrix {
    let q = random_orthonormal(n, r, rng);
    let core: Vec<f64> = (0..r).map(|_| rng.random_range(0.5..=2.0)).collect();
    &(&q * &CMatrix::from_diagonal(&core)) * &q.adjoint()
}

/// A PSD matrix `[[A, B], [B*, C]]` of maximal rank with `rank A = rank_a`,
/// `rank C = rank_c`.
///
/// `A` and `C` are positive definite on random subspaces; `B = β P_A G P_C`
/// lies in their ranges, and `β` is halved from 1 until the matrix is PSD,
/// then halved once more for margin. Draws failing the maximal-rank check
/// are rejected and redrawn.
pub fn random_maximal_rank<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rank_a: usize,
    rank_c: usize,
    rng: &mut R,
) -> Result<HermitianMatrix> {
    let p = BlockPartition::leading(n, k)?;
    let l = n - k;
    if rank_a > k || rank_c > l {
        return Err(Error::Precondition(format!(
            "ranks ({rank_a}, {rank_c}) exceed block sizes ({k}, {l})"
        )));
    }
    let tol = TolerancePolicy::default();
    for _ in 0..100 {
        let a = random_core(k, rank_a, rng);
        let c = random_core(l, rank_c, rng);
        let pa = projector(&a, &tol)?;
        let pc = projector(&c, &tol)?;
        let b0 = &(&pa * &complex_gaussian(k, l, rng)) * &pc;
        let mut beta = 1.0;
        let mut found = None;
        for _ in 0..60 {
            let h = assemble(&a, &b0.scale(beta), &c);
            if hermitian_eig(&h)?.is_psd(&tol) {
                found = Some(assemble(&a, &b0.scale(beta * 0.5), &c));
                break;
            }
            beta *= 0.5;
        }
        if let Some(h) = found {
            if is_maximal_rank(&h, p, &tol)? {
                return Ok(h);
            }
        }
    }
    Err(Error::Precondition(
        "could not generate a maximal-rank matrix".into(),
    ))
}

fn projector(m: &CMatrix, tol: &TolerancePolicy) -> Result<CMatrix> {
    Ok(crate::numeric::jacobi_eig(m)?.range_projector_matrix(tol))
}

fn assemble(a: &CMatrix, b: &CMatrix, c: &CMatrix) -> HermitianMatrix {
    let bs = b.adjoint();
    let m = CMatrix::from_blocks(&[vec![a, b], vec![&bs, c]]).expect("consistent blocks");
    HermitianMatrix::from_hermitian_unchecked(m)
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> PatternGraph {
    let mut g = PatternGraph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                g.add_edge(i, j).expect("in range");
            }
        }
    }
    g
}

/// Chordal graph obtained by running the elimination game on a random graph
/// along a random vertex order (each eliminated vertex's remaining
/// neighbours are joined into a clique).
pub fn random_chordal_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> PatternGraph {
    let mut g = random_graph(n, p, rng);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut eliminated = vec![false; n];
    for &v in &order {
        let nb: Vec<usize> = g.neighbors(v).filter(|&u| !eliminated[u]).collect();
        for (a, &x) in nb.iter().enumerate() {
            for &y in &nb[a + 1..] {
                g.add_edge(x, y).expect("in range");
            }
        }
        eliminated[v] = true;
    }
    g
}

/// The kind of data placed on a random chordal pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    /// Restriction of a positive definite matrix.
    PositiveDefinite,
    /// Rank-deficient but of maximal rank at every merge: some rows are
    /// zeroed and vertices private to a single clique are mixed through a
    /// rank-deficient map.
    SingularMaximalRank,
    /// Restriction of a low-rank Gram matrix; maximal-rank hypotheses
    /// generally fail.
    LowRankGram,
}

/// A partial matrix on a random chordal pattern together with the full
/// matrix its specified entries were taken from.
#[derive(Clone, Debug)]
pub struct CompletionInstance {
    pub kind: InstanceKind,
    pub graph: PatternGraph,
    pub source: HermitianMatrix,
    pub partial: PartialHermitianMatrix,
}

pub fn random_completion_instance<R: Rng + ?Sized>(
    n: usize,
    kind: InstanceKind,
    rng: &mut R,
) -> Result<CompletionInstance> {
    let density = rng.random_range(0.15..0.55);
    let graph = random_chordal_graph(n, density, rng);
    let source = match kind {
        InstanceKind::PositiveDefinite => random_positive_definite(n, 0.2, 3.0, rng),
        InstanceKind::LowRankGram => {
            let r = rng.random_range(1..n.max(2));
            random_gram(n, r, rng)
        }
        InstanceKind::SingularMaximalRank => singular_maximal_rank_source(&graph, rng)?,
    };
    let partial = PartialHermitianMatrix::from_pattern(&source, |i, j| graph.has_edge(i, j));
    Ok(CompletionInstance {
        kind,
        graph,
        source,
        partial,
    })
}

/// `R M R*` with `M` positive definite and `R` block diagonal over groups of
/// vertices that always enter the completion together: each clique's
/// private vertices form one group, every other vertex its own group.
/// Groups get a rank-deficient block (singletons occasionally a zero).
fn singular_maximal_rank_source<R: Rng + ?Sized>(
    graph: &PatternGraph,
    rng: &mut R,
) -> Result<HermitianMatrix> {
    let n = graph.n();
    let peo = is_chordal(graph)
        .peo()
        .cloned()
        .ok_or_else(|| Error::Precondition("graph must be chordal".into()))?;
    let tree = clique_tree(&maximal_cliques(graph, &peo)?)?;
    let mut membership = vec![0usize; n];
    for c in &tree.cliques {
        for &v in c {
            membership[v] += 1;
        }
    }
    let mut grouped = vec![false; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for c in &tree.cliques {
        let private: Vec<usize> = c.iter().copied().filter(|&v| membership[v] == 1).collect();
        if private.len() >= 2 {
            private.iter().for_each(|&v| grouped[v] = true);
            groups.push(private);
        }
    }
    groups.extend((0..n).filter(|&v| !grouped[v]).map(|v| vec![v]));

    let mut r = CMatrix::zeros(n, n);
    let mut deficient = false;
    for grp in &groups {
        let s = grp.len();
        let block = if s == 1 {
            if rng.random_bool(0.25) {
                deficient = true;
                CMatrix::zeros(1, 1)
            } else {
                CMatrix::identity(1)
            }
        } else {
            let rank = rng.random_range(0..s);
            deficient = true;
            &complex_gaussian(s, rank, rng) * &complex_gaussian(rank, s, rng)
        };
        r.place(grp, grp, &block);
    }
    if !deficient {
        let v = rng.random_range(0..n);
        r[(v, v)] = C64::new(0.0, 0.0);
    }
    let m = random_positive_definite(n, 0.2, 3.0, rng);
    let h = &(&r * m.as_matrix()) * &r.adjoint();
    Ok(HermitianMatrix::from_hermitian_unchecked(h))
}
