mod common;

use common::*;
use proptest::prelude::*;
use psdcomplete::completion::{complete, complete_along, complete_edge, TriPartition};
use psdcomplete::generate::{
    random_completion_instance, random_gram, random_maximal_rank, random_psd_of_rank, InstanceKind,
};
use psdcomplete::numeric::{hermitian_eig, penrose_residual, pinv, relative_distance};
use psdcomplete::semidefinite::{
    column_inclusion_holds, gendet, nullspace_direct_sum_check, BlockPartition,
};
use psdcomplete::{CMatrix, HermitianMatrix, PartialHermitianMatrix, TolerancePolicy, C64};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn kind(k: u8) -> InstanceKind {
    match k % 3 {
        0 => InstanceKind::PositiveDefinite,
        1 => InstanceKind::SingularMaximalRank,
        _ => InstanceKind::LowRankGram,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pinv_satisfies_penrose(seed in any::<u64>(), n in 1usize..16, r in 0usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_gram(n, r.min(n), &mut rng);
        let hp = pinv(&h, &tol()).unwrap();
        prop_assert!(penrose_residual(h.as_matrix(), hp.as_matrix()) <= 1e-8);
    }

    #[test]
    fn eigenvalues_match_nalgebra(seed in any::<u64>(), n in 1usize..14, r in 0usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_psd_of_rank(n, r.min(n), 0.1, 10.0, &mut rng);
        let ours = hermitian_eig(&h).unwrap();
        let theirs = na_eigenvalues(&h);
        for (a, b) in ours.eigenvalues.iter().zip(&theirs) {
            prop_assert!((a - b).abs() <= 1e-10 * theirs[0].max(1.0));
        }
        prop_assert!(relative_distance(&ours.reconstruct(), h.as_matrix()) <= 1e-12);
    }

    #[test]
    fn gendet_scales_with_rank(seed in any::<u64>(), n in 1usize..10, r in 0usize..10, c in 0.05f64..20.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = r.min(n);
        let h = random_psd_of_rank(n, r, 0.5, 2.0, &mut rng);
        let lhs = gendet(&h.scale(c).unwrap(), &tol()).unwrap();
        let rhs = c.powi(r as i32) * gendet(&h, &tol()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs());
    }

    #[test]
    fn maximal_rank_implies_inclusion_and_direct_sum(seed in any::<u64>(), n in 2usize..10, k in 1usize..9, a in 0usize..9, c in 0usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = k.min(n - 1);
        let (ra, rc) = (a.min(k), c.min(n - k));
        let h = random_maximal_rank(n, k, ra, rc, &mut rng).unwrap();
        let p = BlockPartition::leading(n, k).unwrap();
        prop_assert!(column_inclusion_holds(&h, p, &tol()).unwrap());
        prop_assert!(nullspace_direct_sum_check(&h, p, &tol()).unwrap());
    }

    #[test]
    fn completion_is_permutation_equivariant(seed in any::<u64>(), n in 2usize..10, k in 0u8..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_completion_instance(n, kind(k), &mut rng).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let direct = complete(&inst.partial, &tol()).unwrap().completed;
        let relabelled = complete(&inst.partial.permuted(&perm), &tol()).unwrap().completed;
        let d = relative_distance(relabelled.as_matrix(), direct.permuted(&perm).unwrap().as_matrix());
        prop_assert!(d <= 1e-9, "distance {d:e}");
    }

    #[test]
    fn every_root_gives_the_same_completion(seed in any::<u64>(), n in 2usize..11, k in 0u8..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_completion_instance(n, kind(k), &mut rng).unwrap();
        let base = complete(&inst.partial, &tol()).unwrap();
        for root in 0..base.tree.cliques.len() {
            let tree = base.tree.rerooted(root).unwrap();
            let other = complete_along(&inst.partial, &tree, &tol()).unwrap();
            let d = relative_distance(other.completed.as_matrix(), base.completed.as_matrix());
            prop_assert!(d <= 1e-9, "root {root}: distance {d:e}");
        }
    }

    #[test]
    fn completion_is_psd_and_preserves_data(seed in any::<u64>(), n in 1usize..13, k in 0u8..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_completion_instance(n, kind(k), &mut rng).unwrap();
        let r = complete(&inst.partial, &tol()).unwrap();
        let ev = na_eigenvalues(&r.completed);
        prop_assert!(ev[n - 1] >= -1e-9 * ev[0].max(0.0));
        for i in 0..n {
            for j in 0..n {
                if let Some(z) = inst.partial.get(i, j) {
                    prop_assert_eq!(r.completed[(i, j)], z);
                }
            }
        }
        if r.hypotheses_hold {
            prop_assert!(r.rank_additive && r.pinv_zero_pattern_ok);
        }
    }

    #[test]
    fn completing_a_completion_changes_nothing(seed in any::<u64>(), n in 2usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_completion_instance(n, InstanceKind::PositiveDefinite, &mut rng).unwrap();
        let once = complete(&inst.partial, &tol()).unwrap().completed;
        let full = PartialHermitianMatrix::from_hermitian(&once);
        let twice = complete(&full, &tol()).unwrap();
        prop_assert_eq!(&twice.completed, &once);
        prop_assert_eq!(twice.tree.cliques.len(), 1);
        // refilling the free positions of the completed matrix gives it back
        let refilled = complete(
            &PartialHermitianMatrix::from_pattern(&once, |i, j| inst.partial.is_specified(i, j)),
            &tol(),
        )
        .unwrap()
        .completed;
        prop_assert_eq!(refilled, once);
    }

    /// At every merge, with `α` the indices merged so far and `β` the new
    /// clique, the Schur complement of `H[α∪β]` in its separator block is
    /// block diagonal: `H[α−γ, β−γ] = H[α−γ, γ] H[γ]⁺ H[γ, β−γ]`.
    #[test]
    fn schur_complement_in_separator_is_block_diagonal(seed in any::<u64>(), n in 2usize..12, k in 0u8..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_completion_instance(n, kind(k), &mut rng).unwrap();
        let r = complete(&inst.partial, &tol()).unwrap();
        let w = r.completed.as_matrix();
        let mut merged = r.tree.cliques[r.tree.root].clone();
        for step in &r.tree.merge_order {
            let t = TriPartition::from_sets(&merged, &r.tree.cliques[step.clique]);
            let g = HermitianMatrix::new(w.principal(&t.gamma));
            let cross = w.select(&t.alpha_only, &t.beta_only);
            let predicted = match g {
                Ok(g) => {
                    let gp = pinv(&g, &tol()).unwrap();
                    &(&w.select(&t.alpha_only, &t.gamma) * gp.as_matrix())
                        * &w.select(&t.gamma, &t.beta_only)
                }
                Err(_) => CMatrix::zeros(t.alpha_only.len(), t.beta_only.len()),
            };
            let err = (&cross - &predicted).frobenius_norm();
            prop_assert!(err <= 1e-9 * w.frobenius_norm().max(1.0), "merge {step:?}: {err:e}");
            merged.extend(t.beta_only.iter().copied());
        }
    }
}

/// The determinant of `[[A, B, X], [B*, C, D], [X*, D*, E]]` over a grid of
/// scalar `X` peaks at `X = B C⁻¹ D`.
#[test]
fn scalar_fill_maximizes_determinant_on_a_grid() {
    let t = tol();
    let (a, b, c, d, e) = (2.0, 0.7, 1.5, -0.4, 1.2);
    let mut p = PartialHermitianMatrix::new(3);
    for (i, j, v) in [(0, 0, a), (0, 1, b), (1, 1, c), (1, 2, d), (2, 2, e)] {
        p.set(i, j, C64::new(v, 0.0)).unwrap();
    }
    let x = complete_edge(&p, &TriPartition::contiguous(1, 1, 1), &t).unwrap()[(0, 0)];
    assert!((x.re - b * d / c).abs() < 1e-14 && x.im.abs() < 1e-14);
    let det = |x: C64| {
        let m = CMatrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 2) => x,
            (2, 0) => x.conj(),
            _ => p.get(i, j).unwrap(),
        });
        m.det().unwrap().re
    };
    let best = det(x);
    for re in -20..=20 {
        for im in -20..=20 {
            let y = x + C64::new(re as f64 * 0.01, im as f64 * 0.01);
            assert!(det(y) <= best + 1e-15, "det at {y} exceeds the fill");
        }
    }
}
