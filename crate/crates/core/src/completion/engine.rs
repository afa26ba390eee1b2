use super::partial::{PartialHermitianMatrix, TriPartition};
use super::verify::verify_pinv_zero_pattern;
use crate::chordal::{
    clique_tree, is_chordal, maximal_cliques, pattern_graph, Chordality, CliqueTree, MergeStep,
};
use crate::error::{Error, Result};
use crate::numeric::{
    herm_pinv, herm_rank, hermitian_eig, jacobi_eig, CMatrix, HermitianMatrix, TolerancePolicy,
    PINV_RTOL,
};
use crate::semidefinite::block_rank;

/// `X = B C⁺ D` for the layout `[[A, B, X], [B*, C, D], [X*, D*, E]]`, read
/// from `m` at the index sets of `t`. An empty `γ` gives `X = 0`.
fn fill_block(m: &CMatrix, t: &TriPartition, tol: &TolerancePolicy) -> Result<CMatrix> {
    let (a, g, b) = t.sizes();
    if g == 0 {
        return Ok(CMatrix::zeros(a, b));
    }
    let bm = m.select(&t.alpha_only, &t.gamma);
    let cm = m.principal(&t.gamma);
    let dm = m.select(&t.gamma, &t.beta_only);
    let c_pinv = herm_pinv(&cm, tol)?;
    Ok(&(&bm * &c_pinv) * &dm)
}

/// The block `X = B C⁺ D` that completes `H[α ∪ β]` to a PSD matrix when
/// `H[α]` and `H[β]` are fully specified and PSD.
pub fn complete_edge(
    h_ab: &PartialHermitianMatrix,
    t: &TriPartition,
    tol: &TolerancePolicy,
) -> Result<CMatrix> {
    if let Some(&bad) = t.order().iter().find(|&&i| i >= h_ab.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "index {bad} out of range for dimension {}",
            h_ab.dim()
        )));
    }
    for (name, idx) in [("H[alpha]", t.alpha()), ("H[beta]", t.beta())] {
        let sub = h_ab
            .principal(&idx)
            .ok_or_else(|| Error::Precondition(format!("{name} is not fully specified")))?;
        let eig = jacobi_eig(&sub)?;
        if !eig.is_psd(tol) {
            return Err(Error::NotPsd {
                min_eigenvalue: eig.min_eigenvalue(),
            });
        }
    }
    fill_block(h_ab.entries(), t, tol)
}

/// Ranks satisfy `rank H = rank H[α−γ] + rank H[γ] + rank H[β−γ]`.
pub fn rank_additivity_check(
    h: &HermitianMatrix,
    t: &TriPartition,
    tol: &TolerancePolicy,
) -> Result<bool> {
    t.require_cover(h.dim())?;
    let m = h.as_matrix();
    let total = hermitian_eig(h)?.rank(tol);
    let parts = block_rank(&m.principal(&t.alpha_only), tol)?
        + block_rank(&m.principal(&t.gamma), tol)?
        + block_rank(&m.principal(&t.beta_only), tol)?;
    Ok(total == parts)
}

/// Whether the square matrix `m` is of maximal rank for the split after its
/// first `k` rows; empty sides are allowed.
fn split_is_maximal(m: &CMatrix, k: usize, tol: &TolerancePolicy) -> Result<bool> {
    let n = m.rows();
    let lead: Vec<usize> = (0..k).collect();
    let trail: Vec<usize> = (k..n).collect();
    Ok(herm_rank(m, tol)?
        == herm_rank(&m.principal(&lead), tol)? + herm_rank(&m.principal(&trail), tol)?)
}

/// Moore-Penrose inverse of a completed matrix from its 3x3 block structure:
///
/// ```text
/// H⁺ = [ Sα⁺           −Sα⁺BC⁺   0         ]
///      [ −C⁺B*Sα⁺      Ξ         −C⁺DSβ⁺   ]
///      [ 0             −Sβ⁺D*C⁺  Sβ⁺       ]
///
/// Sα = A − BC⁺B*,  Sβ = E − D*C⁺D,
/// Ξ  = C⁺ + C⁺B*Sα⁺BC⁺ + C⁺DSβ⁺D*C⁺
/// ```
///
/// `H` must be PSD with `X = BC⁺D`, and `H[α]`, `H[β]` must be of maximal rank.
pub fn explicit_block_pinv(
    h: &HermitianMatrix,
    t: &TriPartition,
    tol: &TolerancePolicy,
) -> Result<HermitianMatrix> {
    t.require_cover(h.dim())?;
    let eig = hermitian_eig(h)?;
    if !eig.is_psd(tol) {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.min_eigenvalue(),
        });
    }
    let order = t.order();
    let w = h.as_matrix().principal(&order);
    let (na, ng, nb) = t.sizes();
    let blk = |r0: usize, rn: usize, c0: usize, cn: usize| w.block(r0, c0, rn, cn);
    let a = blk(0, na, 0, na);
    let b = blk(0, na, na, ng);
    let x = blk(0, na, na + ng, nb);
    let c = blk(na, ng, na, ng);
    let d = blk(na, ng, na + ng, nb);
    let e = blk(na + ng, nb, na + ng, nb);

    if !split_is_maximal(&w.block(0, 0, na + ng, na + ng), na, tol)?
        || !split_is_maximal(&w.block(na, na, ng + nb, ng + nb), ng, tol)?
    {
        return Err(Error::Precondition(
            "H[alpha] and H[beta] must be of maximal rank".into(),
        ));
    }

    let c_pinv = herm_pinv(&c, tol)?;
    let bc = &b * &c_pinv;
    let cd = &c_pinv * &d;
    let x_gap = (&x - &(&bc * &d)).frobenius_norm();
    if x_gap > PINV_RTOL * h.frobenius_norm() + tol.zero_atol {
        return Err(Error::Precondition(format!(
            "off-corner block differs from B C+ D by {x_gap:e}"
        )));
    }

    let s_alpha = herm_pinv(&(&a - &(&bc * &b.adjoint())), tol)?;
    let s_beta = herm_pinv(&(&e - &(&d.adjoint() * &cd)), tol)?;
    let cb = bc.adjoint();
    let dc = cd.adjoint();

    let ab = (&s_alpha * &bc).scale(-1.0);
    let ba = ab.adjoint();
    let gb = (&cd * &s_beta).scale(-1.0);
    let bg = gb.adjoint();
    let xi = &(&c_pinv + &(&(&cb * &s_alpha) * &bc)) + &(&(&cd * &s_beta) * &dc);
    let zero_ab = CMatrix::zeros(na, nb);
    let zero_ba = CMatrix::zeros(nb, na);
    let permuted = CMatrix::from_blocks(&[
        vec![&s_alpha, &ab, &zero_ab],
        vec![&ba, &xi, &gb],
        vec![&zero_ba, &bg, &s_beta],
    ])?;

    let n = h.dim();
    let mut out = CMatrix::zeros(n, n);
    out.place(&order, &order, &permuted);
    Ok(HermitianMatrix::from_hermitian_unchecked(out))
}

/// What happened at one merge of the completion schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct MergeRecord {
    pub step: MergeStep,
    /// Shape of the filled block `X`, `|α−γ| x |β−γ|`.
    pub filled: (usize, usize),
    /// `H[α]` and `H[β]` were of maximal rank for their splits at `γ`.
    pub hypotheses_hold: bool,
    /// `rank H[α∪β] = rank A + rank C + rank E` after the fill.
    pub rank_additive: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletionReport {
    pub completed: HermitianMatrix,
    pub psd: bool,
    pub rank: usize,
    /// Rank additivity held at every merge.
    pub rank_additive: bool,
    /// Maximal-rank hypotheses held at every merge.
    pub hypotheses_hold: bool,
    pub pinv_zero_pattern_ok: bool,
    pub gendet_value: f64,
    pub tree: CliqueTree,
    pub merge_log: Vec<MergeRecord>,
    pub warnings: Vec<String>,
}

/// Completes a partial Hermitian matrix with a chordal pattern and PSD
/// clique submatrices, merging cliques along a clique tree and filling each
/// new block with `X = B C⁺ D`.
pub fn complete(p: &PartialHermitianMatrix, tol: &TolerancePolicy) -> Result<CompletionReport> {
    let g = pattern_graph(p)?;
    let peo = match is_chordal(&g) {
        Chordality::Chordal { peo } => peo,
        Chordality::NotChordal { witness } => return Err(Error::NotChordal { witness }),
    };
    let cliques = maximal_cliques(&g, &peo)?;
    let tree = clique_tree(&cliques)?;
    complete_along(p, &tree, tol)
}

/// Completion along a caller-supplied clique tree and schedule.
pub fn complete_along(
    p: &PartialHermitianMatrix,
    tree: &CliqueTree,
    tol: &TolerancePolicy,
) -> Result<CompletionReport> {
    tol.validate()?;
    p.validate()?;
    let n = p.dim();
    for clique in &tree.cliques {
        if clique.iter().any(|&i| i >= n) {
            return Err(Error::DimensionMismatch(format!(
                "clique {clique:?} out of range for dimension {n}"
            )));
        }
        let sub = p.principal(clique).ok_or_else(|| {
            Error::Precondition(format!("clique {clique:?} is not fully specified"))
        })?;
        let eig = jacobi_eig(&sub)?;
        if !eig.is_psd(tol) {
            return Err(Error::CliqueNotPsd {
                clique: clique.clone(),
                min_eigenvalue: eig.min_eigenvalue(),
            });
        }
    }
    let visit = tree.visit_order();
    if visit.len() != tree.cliques.len() {
        return Err(Error::NotCliqueTree(
            "schedule does not cover every clique".into(),
        ));
    }
    let covered: usize = {
        let mut seen = vec![false; n];
        tree.cliques.iter().flatten().for_each(|&i| seen[i] = true);
        seen.iter().filter(|&&s| s).count()
    };
    if covered != n {
        return Err(Error::NotCliqueTree(
            "cliques do not cover every index".into(),
        ));
    }

    let mut w = p.entries().clone();
    let mut merged: Vec<usize> = tree.cliques[tree.root].clone();
    let mut merge_log = Vec::with_capacity(tree.merge_order.len());
    let mut warnings = Vec::new();

    for step in &tree.merge_order {
        let clique = &tree.cliques[step.clique];
        let t = TriPartition::from_sets(&merged, clique);
        if t.gamma.len() != step.separator.len() {
            return Err(Error::NotCliqueTree(format!(
                "clique {clique:?} meets merged indices in {:?}, expected {:?}",
                t.gamma, step.separator
            )));
        }
        let (na, ng, nb) = t.sizes();
        let alpha_block = w.principal(&t.alpha());
        let beta_block = w.principal(&t.beta());
        let hypotheses_hold =
            split_is_maximal(&alpha_block, na, tol)? && split_is_maximal(&beta_block, ng, tol)?;

        let x = fill_block(&w, &t, tol)?;
        for (bi, &i) in t.alpha_only.iter().enumerate() {
            for (bj, &j) in t.beta_only.iter().enumerate() {
                if p.is_specified(i, j) {
                    continue;
                }
                w[(i, j)] = x[(bi, bj)];
                w[(j, i)] = x[(bi, bj)].conj();
            }
        }

        let union = t.order();
        let joined = HermitianMatrix::from_hermitian_unchecked(w.principal(&union));
        let rank_additive =
            rank_additivity_check(&joined, &TriPartition::contiguous(na, ng, nb), tol)?;
        if !hypotheses_hold {
            warnings.push(format!(
                "merge of clique {clique:?}: maximal-rank hypotheses fail, uniqueness checks do not apply"
            ));
        } else if !rank_additive {
            warnings.push(format!(
                "merge of clique {clique:?}: rank is not additive although hypotheses hold"
            ));
        }
        merge_log.push(MergeRecord {
            step: step.clone(),
            filled: (na, nb),
            hypotheses_hold,
            rank_additive,
        });
        merged.extend(t.beta_only.iter().copied());
    }

    let completed = HermitianMatrix::from_hermitian_unchecked(w);
    for i in 0..n {
        for j in 0..n {
            if let Some(z) = p.get(i, j) {
                if completed[(i, j)] != z {
                    return Err(Error::Verification(format!(
                        "specified entry ({i}, {j}) changed"
                    )));
                }
            }
        }
    }
    let eig = hermitian_eig(&completed)?;
    let psd = eig.is_psd(tol);
    if !psd {
        return Err(Error::Verification(format!(
            "completed matrix is not PSD (smallest eigenvalue {:e})",
            eig.min_eigenvalue()
        )));
    }
    let hypotheses = merge_log.iter().all(|r| r.hypotheses_hold);
    let zero_pattern = verify_pinv_zero_pattern(p, &completed, tol)?;
    if hypotheses && !zero_pattern.ok {
        warnings.push(format!(
            "pseudoinverse is not zero at {} free position(s) although hypotheses hold",
            zero_pattern.violations.len()
        ));
    }
    Ok(CompletionReport {
        psd,
        rank: eig.rank(tol),
        rank_additive: merge_log.iter().all(|r| r.rank_additive),
        hypotheses_hold: hypotheses,
        pinv_zero_pattern_ok: zero_pattern.ok,
        gendet_value: eig.gendet(tol),
        completed,
        tree: tree.clone(),
        merge_log,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{pinv, relative_distance, C64};

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn tridiagonal(rows: &[&[f64]]) -> PartialHermitianMatrix {
        let h = HermitianMatrix::from_real_rows(rows).unwrap();
        PartialHermitianMatrix::from_pattern(&h, |i, j| j <= i + 1)
    }

    #[test]
    fn scalar_edge_completion() {
        // A=1, B=1, C=2, D=1, E=1  ->  X = 1 * (1/2) * 1
        let p = tridiagonal(&[&[1.0, 1.0, 0.0], &[1.0, 2.0, 1.0], &[0.0, 1.0, 1.0]]);
        let x = complete_edge(&p, &TriPartition::contiguous(1, 1, 1), &tol()).unwrap();
        assert!((x[(0, 0)] - C64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn all_ones_edge_completion() {
        let p = tridiagonal(&[&[1.0, 1.0, 0.0], &[1.0, 1.0, 1.0], &[0.0, 1.0, 1.0]]);
        let x = complete_edge(&p, &TriPartition::contiguous(1, 1, 1), &tol()).unwrap();
        assert!((x[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        let r = complete(&p, &tol()).unwrap();
        assert_eq!(r.rank, 1);
        assert!(!r.hypotheses_hold);
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn zero_coupling_gives_zero_fill() {
        let p = tridiagonal(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let x = complete_edge(&p, &TriPartition::contiguous(1, 1, 1), &tol()).unwrap();
        assert_eq!(x[(0, 0)], C64::new(0.0, 0.0));
        let r = complete(&p, &tol()).unwrap();
        assert_eq!(r.completed, HermitianMatrix::identity(3).unwrap());
    }

    #[test]
    fn empty_separator_gives_zero_block() {
        let h = HermitianMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 3.0]]).unwrap();
        let p = PartialHermitianMatrix::from_pattern(&h, |_, _| false);
        let x = complete_edge(
            &p,
            &TriPartition::new(vec![0], vec![], vec![1]).unwrap(),
            &tol(),
        )
        .unwrap();
        assert_eq!(x.shape(), (1, 1));
        assert_eq!(x[(0, 0)], C64::new(0.0, 0.0));
    }

    #[test]
    fn edge_completion_preconditions() {
        let p = tridiagonal(&[&[1.0, 2.0, 0.0], &[2.0, 1.0, 1.0], &[0.0, 1.0, 1.0]]);
        assert!(matches!(
            complete_edge(&p, &TriPartition::contiguous(1, 1, 1), &tol()),
            Err(Error::NotPsd { .. })
        ));
        let mut q = PartialHermitianMatrix::new(3);
        for i in 0..3 {
            q.set(i, i, C64::new(1.0, 0.0)).unwrap();
        }
        assert!(matches!(
            complete_edge(&q, &TriPartition::contiguous(1, 1, 1), &tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn tridiagonal_half_pattern() {
        let p = tridiagonal(&[&[1.0, 0.5, 0.0], &[0.5, 1.0, 0.5], &[0.0, 0.5, 1.0]]);
        let r = complete(&p, &tol()).unwrap();
        assert!((r.completed[(0, 2)] - C64::new(0.25, 0.0)).norm() < 1e-15);
        assert!(r.psd && r.rank_additive && r.hypotheses_hold && r.pinv_zero_pattern_ok);
        assert_eq!(r.merge_log.len(), 1);
        assert_eq!(r.merge_log[0].filled, (1, 1));
    }

    #[test]
    fn singular_separator() {
        let p = tridiagonal(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]);
        let r = complete(&p, &tol()).unwrap();
        assert_eq!(
            r.completed,
            HermitianMatrix::from_diagonal(&[1.0, 0.0, 1.0]).unwrap()
        );
        assert_eq!(r.rank, 2);
        assert!(r.pinv_zero_pattern_ok && r.rank_additive && r.hypotheses_hold);
        assert_eq!(r.gendet_value, 1.0);
    }

    #[test]
    fn fully_specified_is_unchanged() {
        let h = HermitianMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let r = complete(&PartialHermitianMatrix::from_hermitian(&h), &tol()).unwrap();
        assert_eq!(r.completed, h);
        assert!(r.merge_log.is_empty());
    }

    #[test]
    fn rejects_non_chordal_and_bad_cliques() {
        let h = HermitianMatrix::identity(4).unwrap();
        let cyc = PartialHermitianMatrix::from_pattern(&h, |i, j| j == i + 1 || (i, j) == (0, 3));
        assert!(
            matches!(complete(&cyc, &tol()), Err(Error::NotChordal { witness }) if witness.len() == 4)
        );

        let p = tridiagonal(&[&[1.0, 2.0, 0.0], &[2.0, 1.0, 0.5], &[0.0, 0.5, 1.0]]);
        match complete(&p, &tol()) {
            Err(Error::CliqueNotPsd { clique, .. }) => assert_eq!(clique, vec![0, 1]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn block_pinv_identity_and_tridiagonal() {
        let t = TriPartition::contiguous(1, 1, 1);
        let i3 = HermitianMatrix::identity(3).unwrap();
        let bp = explicit_block_pinv(&i3, &t, &tol()).unwrap();
        assert!(relative_distance(bp.as_matrix(), i3.as_matrix()) < 1e-15);

        let p = tridiagonal(&[&[1.0, 0.5, 0.0], &[0.5, 1.0, 0.5], &[0.0, 0.5, 1.0]]);
        let h = complete(&p, &tol()).unwrap().completed;
        let bp = explicit_block_pinv(&h, &t, &tol()).unwrap();
        let ep = pinv(&h, &tol()).unwrap();
        assert!(relative_distance(bp.as_matrix(), ep.as_matrix()) < 1e-12);
        assert_eq!(bp[(0, 2)], C64::new(0.0, 0.0));
    }

    #[test]
    fn block_pinv_rejects_wrong_fill() {
        let h = HermitianMatrix::from_real_rows(&[
            &[1.0, 0.5, 0.5],
            &[0.5, 1.0, 0.5],
            &[0.5, 0.5, 1.0],
        ])
        .unwrap();
        assert!(matches!(
            explicit_block_pinv(&h, &TriPartition::contiguous(1, 1, 1), &tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rank_additivity_examples() {
        let t = TriPartition::contiguous(1, 1, 1);
        assert!(rank_additivity_check(&HermitianMatrix::identity(3).unwrap(), &t, &tol()).unwrap());
        let ones = HermitianMatrix::new(CMatrix::from_fn(3, 3, |_, _| C64::new(1.0, 0.0))).unwrap();
        assert!(!rank_additivity_check(&ones, &t, &tol()).unwrap());
        let d = HermitianMatrix::from_diagonal(&[1.0, 0.0, 1.0]).unwrap();
        assert!(rank_additivity_check(&d, &t, &tol()).unwrap());
    }
}
