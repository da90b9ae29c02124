//! Property tests for the exact-arithmetic substrate: canonical rationals,
//! rank/nullspace/solve contracts, Sturm signatures, and rational functions.

use affine_structures::exact::{
    char_poly, format_rational, parse_rational, rat, rat_int, signature_symmetric, sign, to_f64,
    Poly, RatFunction, RatMatrix, Rational,
};
use num::{One, Signed, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn small_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-5i64..=5, r * c)
            .prop_map(move |e| RatMatrix::from_i64(r, c, &e))
    })
}

fn square_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(-4i64..=4, n * n).prop_map(move |e| RatMatrix::from_i64(n, n, &e))
}

fn symmetric_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    square_matrix(n).prop_map(|m| {
        let mut s = RatMatrix::zero(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                *s.at_mut(r, c) = m.at(r, c) + m.at(c, r);
            }
        }
        s
    })
}

fn small_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-6i64..=6, 0..=5).prop_map(|c| Poly::from_i64(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_are_canonical(n in -300i64..=300, d in 1i64..=60) {
        let r = rat(n, d);
        prop_assert!(r.denom().is_positive());
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r.clone());
        prop_assert_eq!(sign(&r) as i64, n.signum());
        prop_assert!((to_f64(&r) - n as f64 / d as f64).abs() < 1e-12);
    }

    #[test]
    fn rank_is_transpose_invariant(m in small_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn nullspace_contract_holds(m in small_matrix()) {
        let (rank, basis) = m.rank_nullspace();
        prop_assert_eq!(rank + basis.len(), m.cols());
        for v in &basis {
            prop_assert!(m.mul_vec(v).iter().all(Rational::is_zero));
            // Canonical form: the basis vector is 1 at its free coordinate.
            prop_assert!(v.iter().any(|x| x.is_one()));
        }
    }

    #[test]
    fn solve_round_trips(m in small_matrix(), seed in proptest::collection::vec(-5i64..=5, 4)) {
        // Build a guaranteed-consistent right-hand side from a known preimage.
        let x: Vec<Rational> = seed.iter().take(m.cols()).map(|&v| rat_int(v)).collect();
        let x = if x.len() == m.cols() { x } else { vec![Rational::zero(); m.cols()] };
        let b = m.mul_vec(&x);
        let sol = m.solve_linear(&b).expect("consistent system has a solution");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }

    #[test]
    fn rref_pivots_are_unit_columns(m in small_matrix()) {
        let (r, pivots) = m.rref();
        for (row, &col) in pivots.iter().enumerate() {
            prop_assert!(r.at(row, col).is_one());
            for other in 0..r.rows() {
                if other != row {
                    prop_assert!(r.at(other, col).is_zero());
                }
            }
        }
    }

    #[test]
    fn signature_counts_sum_to_dimension(s in symmetric_matrix(3)) {
        let (p, n, z) = signature_symmetric(&s).unwrap();
        prop_assert_eq!(p + n + z, 3);
    }

    #[test]
    fn signature_is_congruence_invariant(s in symmetric_matrix(3), p in square_matrix(3)) {
        prop_assume!(!p.det().is_zero());
        let congruent = &(&p.transpose() * &s) * &p;
        prop_assert_eq!(
            signature_symmetric(&congruent).unwrap(),
            signature_symmetric(&s).unwrap()
        );
    }

    #[test]
    fn char_poly_has_det_and_trace_coefficients(m in square_matrix(3)) {
        let cp = char_poly(&m);
        prop_assert_eq!(cp.degree(), Some(3));
        // λ³ − tr(m)λ² + ... ± det(m)
        prop_assert_eq!(cp.coeff(2), -m.trace());
        prop_assert_eq!(cp.coeff(0), -m.det());
    }

    #[test]
    fn divmod_reconstructs_dividend(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        if let Some(rd) = r.degree() {
            prop_assert!(rd < b.degree().unwrap());
        }
    }

    #[test]
    fn gcd_divides_both_and_is_monic(a in small_poly(), b in small_poly()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(g.leading().map_or(false, Rational::is_one));
        prop_assert!(a.divmod(&g).1.is_zero());
        prop_assert!(b.divmod(&g).1.is_zero());
    }

    #[test]
    fn ratfun_is_field_arithmetic(
        f in small_poly(),
        g in small_poly(),
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let q = RatFunction::new(f, g).unwrap();
        let product = &q * &q.inverse().unwrap();
        prop_assert_eq!(product, RatFunction::one());
    }

    #[test]
    fn inverse_round_trips_when_invertible(m in square_matrix(3)) {
        prop_assume!(!m.det().is_zero());
        let inv = m.inverse().unwrap();
        prop_assert_eq!(&m * &inv, RatMatrix::identity(3));
        prop_assert_eq!(&inv * &m, RatMatrix::identity(3));
    }
}

#[test]
fn rank_nullspace_matches_worked_cases() {
    let (rank, basis) = RatMatrix::identity(3).rank_nullspace();
    assert_eq!((rank, basis.len()), (3, 0));

    let (rank, basis) = RatMatrix::zero(2, 3).rank_nullspace();
    assert_eq!(rank, 0);
    assert_eq!(basis.len(), 3);
    for (i, v) in basis.iter().enumerate() {
        let mut unit = vec![Rational::zero(); 3];
        unit[i] = Rational::one();
        assert_eq!(v, &unit);
    }

    let m = RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
    let (rank, basis) = m.rank_nullspace();
    assert_eq!(rank, 1);
    assert_eq!(basis, vec![vec![rat_int(-2), rat_int(1)]]);
}

#[test]
fn solve_linear_matches_worked_cases() {
    let id = RatMatrix::identity(2);
    let b = vec![rat_int(3), rat(-1, 2)];
    assert_eq!(id.solve_linear(&b).unwrap(), b);

    // Underdetermined: free variables are pinned to zero.
    let m = RatMatrix::from_i64(1, 2, &[1, 1]);
    assert_eq!(
        m.solve_linear(&[rat_int(2)]).unwrap(),
        vec![rat_int(2), rat_int(0)]
    );

    let singular = RatMatrix::from_i64(1, 1, &[0]);
    assert!(singular.solve_linear(&[rat_int(1)]).is_none());
}

#[test]
fn signature_matches_diagonal_cases() {
    let d1 = RatMatrix::from_i64(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 0]);
    assert_eq!(signature_symmetric(&d1).unwrap(), (2, 0, 1));
    let d2 = RatMatrix::from_i64(3, 3, &[2, 0, 0, 0, -2, 0, 0, 0, 0]);
    assert_eq!(signature_symmetric(&d2).unwrap(), (1, 1, 1));
    assert!(signature_symmetric(&RatMatrix::from_i64(2, 2, &[0, 1, 0, 0])).is_err());
}

#[test]
fn laurent_inputs_normalize_into_fraction_form() {
    let t_inv = RatFunction::t_power(-2);
    assert!(!t_inv.is_polynomial());
    assert_eq!(&t_inv * &RatFunction::t_power(2), RatFunction::one());
    assert_eq!(t_inv.eval(&rat_int(2)).unwrap(), rat(1, 4));
    assert!(t_inv.limit_at_zero().is_none());
    assert_eq!(
        RatFunction::t_power(3).limit_at_zero().unwrap(),
        Rational::zero()
    );
}

#[test]
fn signed_root_counts_track_known_roots() {
    // t²(t−1)(t+2)² has roots −2 (twice), 0 (twice), 1 (once).
    let p = &(&Poly::from_i64(&[0, 0, 1]) * &Poly::from_i64(&[-1, 1]))
        * &(&Poly::from_i64(&[2, 1]) * &Poly::from_i64(&[2, 1]));
    assert_eq!(p.signed_root_counts(), (2, 2, 1));
    // t² + 1 has no real roots.
    assert_eq!(Poly::from_i64(&[1, 0, 1]).signed_root_counts(), (0, 0, 0));
}
