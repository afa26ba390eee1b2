//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use psdcomplete::chordal::PatternGraph;
use psdcomplete::{CMatrix, HermitianMatrix, C64};

pub fn to_na(m: &CMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn from_na(m: &DMatrix<C64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigenvalues from nalgebra's symmetric QR solver, sorted descending.
pub fn na_eigenvalues(h: &HermitianMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(to_na(h.as_matrix()))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// Pseudoinverse from nalgebra's Hermitian eigendecomposition, dropping
/// eigenvalues with `|λ| <= rtol * max|λ|`. (nalgebra's complex SVD
/// `pseudo_inverse` fails the Penrose conditions on some rank-one inputs.)
pub fn na_pinv(h: &HermitianMatrix, rtol: f64) -> CMatrix {
    let e = SymmetricEigen::new(to_na(h.as_matrix()));
    let scale = e.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let inv = e.eigenvalues.map(|l| {
        if l.abs() > rtol * scale {
            C64::new(1.0 / l, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let v = &e.eigenvectors;
    from_na(&(v * DMatrix::from_diagonal(&inv) * v.adjoint()))
}

/// Product of the eigenvalues whose magnitude exceeds `rtol * max|λ|`;
/// 1 when none do.
pub fn nonzero_eigen_product(ev: &[f64], rtol: f64) -> f64 {
    let scale = ev.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    ev.iter().filter(|x| x.abs() > rtol * scale).product()
}

/// Does `s` (|s| >= 4) induce a chordless cycle: connected, every vertex of
/// degree exactly two inside `s`?
pub fn induces_cycle(g: &PatternGraph, s: &[usize]) -> bool {
    if s.len() < 4 {
        return false;
    }
    let deg2 = s
        .iter()
        .all(|&v| s.iter().filter(|&&u| g.has_edge(u, v)).count() == 2);
    if !deg2 {
        return false;
    }
    let mut seen = vec![s[0]];
    let mut stack = vec![s[0]];
    while let Some(v) = stack.pop() {
        for &u in s {
            if g.has_edge(u, v) && !seen.contains(&u) {
                seen.push(u);
                stack.push(u);
            }
        }
    }
    seen.len() == s.len()
}

/// Brute-force chordality: no vertex subset induces a cycle of length >= 4.
pub fn chordal_by_subsets(g: &PatternGraph) -> bool {
    let n = g.n();
    (0u32..(1 << n)).all(|mask| {
        if mask.count_ones() < 4 {
            return true;
        }
        let s: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        !induces_cycle(g, &s)
    })
}

/// Graph on `n` vertices whose edges are the set bits of `mask`, in the
/// order (0,1), (0,2), ..., (n-2,n-1).
pub fn graph_from_mask(n: usize, mask: u64) -> PatternGraph {
    let mut g = PatternGraph::empty(n);
    let mut bit = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask & (1 << bit) != 0 {
                g.add_edge(i, j).unwrap();
            }
            bit += 1;
        }
    }
    g
}

/// Bron–Kerbosch with pivoting; cliques sorted internally and as a list.
pub fn bron_kerbosch(g: &PatternGraph) -> Vec<Vec<usize>> {
    fn go(
        g: &PatternGraph,
        r: Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut c = r;
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = *p.iter().chain(x.iter()).next().unwrap();
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !g.has_edge(pivot, v))
            .collect();
        for v in candidates {
            let mut r2 = r.clone();
            r2.push(v);
            let p2 = p.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            let x2 = x.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            go(g, r2, p2, x2, out);
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    go(g, Vec::new(), (0..g.n()).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

/// Direct check that `order` is a perfect elimination ordering: the
/// neighbours of each vertex that come later in the order form a clique.
pub fn is_peo(g: &PatternGraph, order: &[usize]) -> bool {
    let n = g.n();
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = (0..n)
            .filter(|&u| g.has_edge(u, v) && pos[u] > pos[v])
            .collect();
        later
            .iter()
            .all(|&a| later.iter().all(|&b| a == b || g.has_edge(a, b)))
    })
}
