use proptest::prelude::*;
use symfact::symplectic::{check_w2_backward, check_w2_backward_with};
use symfact::testmat::{random_pdp, Prng};
use symfact::{
    algorithm_w1, algorithm_w2, cholesky_lower, condition_number, frobenius_norm, gamma, matmul,
    omega, reverse_cholesky_upper, reverse_permute, spectral_norm, BlockFactor, BoundCheckResult,
    GammaParams, Matrix, ReversalPermutation, TriangularMatrix, Verdict,
};

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-9i32..=9, rows * cols).prop_map(move |v| {
        Matrix::from_vec(rows, cols, v.into_iter().map(f64::from).collect()).unwrap()
    })
}

fn real_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-1.0f64..1.0, rows * cols)
        .prop_map(move |v| Matrix::from_vec(rows, cols, v).unwrap())
}

/// `B B^T + I` for a random square `B`, symmetrized.
fn spd(order: usize) -> impl Strategy<Value = Matrix> {
    real_matrix(order, order).prop_map(move |b| {
        let g = matmul(&b, &b.transpose()).unwrap();
        (&g + &Matrix::identity(order)).symmetrize()
    })
}

fn dims() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..6, 1usize..6, 1usize..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integer_matmul_is_associative(
        (a, b, c) in dims().prop_flat_map(|(p, q, r)| (int_matrix(p, q), int_matrix(q, r), int_matrix(r, p)))
    ) {
        let left = matmul(&matmul(&a, &b).unwrap(), &c).unwrap();
        let right = matmul(&a, &matmul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn spectral_and_frobenius_norms_are_compatible(
        a in (1usize..8, 1usize..8).prop_flat_map(|(r, c)| real_matrix(r, c))
    ) {
        let s = spectral_norm(&a).unwrap();
        let f = frobenius_norm(&a);
        let k = (a.rows().min(a.cols()) as f64).sqrt();
        prop_assert!(s <= f * (1.0 + 1e-13));
        prop_assert!(f <= k * s * (1.0 + 1e-13));
    }

    #[test]
    fn spectral_norm_is_permutation_invariant(a in (1usize..9).prop_flat_map(spd)) {
        let pa = reverse_permute(&a).unwrap();
        let (s, sp) = (spectral_norm(&a).unwrap(), spectral_norm(&pa).unwrap());
        prop_assert!((s - sp).abs() <= 1e-13 * s);
    }

    #[test]
    fn scaled_identity_is_perfectly_conditioned(n in 1usize..12, c in 1e-3f64..1e3) {
        prop_assert_eq!(condition_number(&Matrix::identity(n).scale(c)).unwrap(), 1.0);
    }

    #[test]
    fn cholesky_backward_error(a in (1usize..12).prop_flat_map(spd)) {
        let n = a.rows();
        let l = cholesky_lower(&a).unwrap();
        prop_assert!(l.diagonal_is_positive());
        let r = &a - &matmul(l.as_matrix(), &l.as_matrix().transpose()).unwrap();
        let bound = 2.0 * n as f64 * gamma(GammaParams::new(n + 1)).unwrap() * spectral_norm(&a).unwrap();
        prop_assert!(spectral_norm(&r).unwrap() <= bound);
    }

    #[test]
    fn reverse_cholesky_is_the_permuted_cholesky(a in (1usize..10).prop_flat_map(spd)) {
        let p = ReversalPermutation::new(a.rows());
        let u = reverse_cholesky_upper(&a).unwrap();
        let l = cholesky_lower(&p.conjugate(&a).unwrap()).unwrap();
        prop_assert_eq!(u.as_matrix(), &p.conjugate(l.as_matrix()).unwrap());
        prop_assert!(u.diagonal_is_positive());
    }

    #[test]
    fn w1_and_w2_share_leading_columns(n in 1usize..9, seed in any::<u64>()) {
        let p = random_pdp(n, seed).unwrap();
        let (f1, f2) = (algorithm_w1(&p).unwrap(), algorithm_w2(&p).unwrap());
        prop_assert_eq!(f1.l11().as_matrix(), f2.l11().as_matrix());
        prop_assert_eq!(f1.l21(), f2.l21());
        // so the (1,1) blocks of Omega(L1) and Omega(L2) agree bitwise and the (2,2) blocks vanish
        let (o1, o2) = (omega(&f1.assemble()).unwrap(), omega(&f2.assemble()).unwrap());
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(o1[(i, j)], o2[(i, j)]);
                prop_assert_eq!(o1[(i + n, j + n)], 0.0);
                prop_assert_eq!(o2[(i + n, j + n)], 0.0);
            }
        }
    }

    #[test]
    fn w2_is_backward_stable_on_random_pdp(n in 1usize..13, seed in any::<u64>()) {
        let p = random_pdp(n, seed).unwrap();
        prop_assert!(p.assemble().is_symmetric());
        let r = check_w2_backward(&p).unwrap();
        prop_assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn verdict_follows_the_inequality(
        lhs in 0.0f64..2.0, rhs in 0.0f64..2.0, slack in 0.0f64..0.1, floor in 0.0f64..0.1
    ) {
        let r = BoundCheckResult::evaluate("x", lhs, rhs, slack, floor);
        prop_assert_eq!(r.holds(), lhs <= rhs * (1.0 + slack) + floor);
        prop_assert_eq!(r.is_violated(), !r.holds());
    }

    #[test]
    fn prng_is_reproducible(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let a = Prng::new(seed).normal_matrix(rows, cols);
        let b = Prng::new(seed).normal_matrix(rows, cols);
        prop_assert_eq!(a.as_slice(), b.as_slice());
        prop_assert!(a.find_non_finite().is_none());
    }
}

#[test]
fn nan_is_never_a_pass() {
    let r = BoundCheckResult::evaluate("x", f64::NAN, 1.0, 0.0, 0.0);
    assert_eq!(r.verdict, Verdict::Violated);
    let r = BoundCheckResult::evaluate("x", 0.0, f64::NAN, 0.0, 0.0);
    assert_eq!(r.verdict, Verdict::Violated);
}

#[test]
fn corrupted_l22_violates_w2_backward() {
    for n in [2, 5, 10] {
        let p = random_pdp(n, 3).unwrap();
        let f = algorithm_w2(&p).unwrap();
        let mut u = f.l22().as_matrix().clone();
        let scale = u.max_abs();
        u[(0, n - 1)] += 1e-3 * scale;
        let bad = BlockFactor::from_parts(
            f.l11().clone(),
            f.l21().clone(),
            TriangularMatrix::from_triangle(symfact::Shape::Upper, &u),
            f.algorithm(),
        )
        .unwrap();
        assert!(check_w2_backward_with(&p, &bad).unwrap().is_violated());
        assert!(check_w2_backward_with(&p, &f).unwrap().holds());
    }
}
