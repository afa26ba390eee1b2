use psdcomplete::completion::{complete, explicit_block_pinv, TriPartition};
use psdcomplete::generate::{complex_gaussian, random_positive_definite};
use psdcomplete::numeric::{hermitian_eig, pinv, relative_distance};
use psdcomplete::{CMatrix, HermitianMatrix, PartialHermitianMatrix, TolerancePolicy, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

/// Coefficients `c[0..=n]` of `det(λI − H) = Σ c[k] λ^(n−k)` by the
/// Faddeev–LeVerrier recursion.
fn characteristic_polynomial(h: &CMatrix) -> Vec<C64> {
    let n = h.rows();
    let mut c = vec![C64::new(1.0, 0.0)];
    let mut m = CMatrix::zeros(n, n);
    for k in 1..=n {
        for i in 0..n {
            m[(i, i)] += c[k - 1];
        }
        m = h * &m;
        c.push(-m.trace() / k as f64);
    }
    c
}

fn eval(c: &[C64], x: C64) -> C64 {
    c.iter().fold(C64::new(0.0, 0.0), |acc, &a| acc * x + a)
}

/// Durand–Kerner iteration for all roots of a monic polynomial.
fn roots(c: &[C64]) -> Vec<C64> {
    let n = c.len() - 1;
    let seed = C64::new(0.4, 0.9);
    let scale = 1.0 + c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n).map(|k| seed.powu(k as u32) * scale).collect();
    for _ in 0..2000 {
        let prev = z.clone();
        for i in 0..n {
            let denom: C64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            let step = eval(c, z[i]) / denom;
            z[i] -= step;
        }
        let moved = z
            .iter()
            .zip(&prev)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if moved <= 1e-15 * scale {
            break;
        }
    }
    z
}

#[test]
fn eigenvalues_are_characteristic_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=5 {
        for _ in 0..20 {
            let g = complex_gaussian(n, n, &mut rng);
            let h = HermitianMatrix::new(&g.adjoint() * &g).unwrap();
            let mut expected: Vec<f64> = roots(&characteristic_polynomial(h.as_matrix()))
                .iter()
                .map(|z| z.re)
                .collect();
            expected.sort_by(|a, b| b.total_cmp(a));
            let ours = hermitian_eig(&h).unwrap().eigenvalues;
            for (a, b) in ours.iter().zip(&expected) {
                assert!(
                    (a - b).abs() <= 1e-8 * expected[0],
                    "{ours:?} vs {expected:?}"
                );
            }
        }
    }
}

#[test]
fn characteristic_polynomial_of_known_matrix() {
    // [[2, 1], [1, 2]]: λ² − 4λ + 3
    let h = CMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
    let c = characteristic_polynomial(&h);
    let want = [1.0, -4.0, 3.0];
    for (a, b) in c.iter().zip(want) {
        assert!((a.re - b).abs() < 1e-14 && a.im.abs() < 1e-14);
    }
}

/// `R M R*` with `M` positive definite and `R = diag(Ra, I, Rb)`, where the
/// outer blocks may be rank deficient: the two cliques `α`, `β` are then of
/// maximal rank for the split at `γ`.
fn three_block_source(a: usize, g: usize, b: usize, rng: &mut ChaCha8Rng) -> HermitianMatrix {
    let n = a + g + b;
    let mut r = CMatrix::identity(n);
    for (start, size) in [(0, a), (a + g, b)] {
        if size > 0 && rng.random_bool(0.6) {
            let rank = rng.random_range(0..size);
            let block = &complex_gaussian(size, rank, rng) * &complex_gaussian(rank, size, rng);
            let idx: Vec<usize> = (start..start + size).collect();
            r.place(&idx, &idx, &block);
        }
    }
    let m = random_positive_definite(n, 0.3, 3.0, rng);
    HermitianMatrix::new(&(&r * m.as_matrix()) * &r.adjoint()).unwrap()
}

#[test]
fn block_formula_matches_pinv_on_random_completions() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let t = tol();
    let mut singular = 0;
    for _ in 0..200 {
        let a = rng.random_range(1..=4);
        let g = rng.random_range(1..=3);
        let b = rng.random_range(1..=4);
        let source = three_block_source(a, g, b, &mut rng);
        let p = PartialHermitianMatrix::from_pattern(&source, |i, j| !(i < a && j >= a + g));
        let r = complete(&p, &t).unwrap();
        assert!(r.hypotheses_hold);
        if r.rank < a + g + b {
            singular += 1;
        }
        let split = TriPartition::contiguous(a, g, b);
        let bp = explicit_block_pinv(&r.completed, &split, &t).unwrap();
        let ep = pinv(&r.completed, &t).unwrap();
        let d = relative_distance(bp.as_matrix(), ep.as_matrix());
        assert!(d <= 1e-8, "distance {d:e} for sizes ({a}, {g}, {b})");
        for i in 0..a {
            for j in a + g..a + g + b {
                assert_eq!(bp[(i, j)], C64::new(0.0, 0.0));
            }
        }
    }
    assert!(singular > 20);
}
