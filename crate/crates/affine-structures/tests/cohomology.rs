//! Integration tests for symmetric second cohomology: frozen dimension
//! tables for the whole catalog, the coboundary/derivation complement, the
//! squared-differential identity on random data, and verification of both
//! the printed and the corrected representative sets.

use affine_structures::catalog::{algebra_names, Catalog};
use affine_structures::cohomology::{
    check_representatives, coboundary_of_linear, coboundary_value, cocycle_defect, h2_full, h2s,
    is_cocycle, SymmetricCochain,
};
use affine_structures::exact::{rat_int, RatMatrix, Rational};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn catalog() -> Catalog {
    Catalog::load().expect("shipped catalog loads")
}

/// (name, dim cocycles, dim coboundaries, dim quotient), frozen from exact
/// computation and cross-checked by an independent implementation.
const DIMENSION_TABLE: &[(&str, usize, usize, usize)] = &[
    ("mu1_2d", 4, 4, 0),
    ("mu2_2d", 4, 3, 1),
    ("mu3_2d", 4, 4, 0),
    ("mu4_2d", 4, 2, 2),
    ("mu5_2d", 6, 0, 6),
    ("mu6_2d", 4, 3, 1),
    ("mu1_3d", 9, 9, 0),
    ("mu2_3d", 9, 9, 0),
    ("mu3_3d", 9, 8, 1),
    ("mu4_3d", 9, 7, 2),
    ("mu5_3d", 9, 5, 4),
    ("mu6_3d", 9, 8, 1),
    ("mu7_3d", 9, 8, 1),
    ("mu8_3d", 11, 5, 6),
    ("mu9_3d", 9, 7, 2),
    ("mu10_3d", 9, 7, 2),
    ("mu11_3d", 9, 5, 4),
    ("mu12_3d", 9, 5, 4),
    ("mu13_3d", 11, 4, 7),
    ("mu14_3d", 9, 6, 3),
    ("mu15_3d", 18, 0, 18),
];

#[test]
fn dimension_tables_match_frozen_values() {
    let cat = catalog();
    for (name, z, b, h) in DIMENSION_TABLE {
        let a = &cat.algebra(name).unwrap().algebra;
        let result = h2s(a);
        assert_eq!(result.dim_cocycles, *z, "{name} cocycles");
        assert_eq!(result.dim_coboundaries, *b, "{name} coboundaries");
        assert_eq!(result.dim, *h, "{name} quotient");
        assert_eq!(result.representatives.len(), *h, "{name} basis size");
        for rep in &result.representatives {
            assert!(is_cocycle(a, rep), "{name} canonical rep is a cocycle");
        }
    }
}

#[test]
fn coboundary_dimension_complements_derivations() {
    let cat = catalog();
    for entry in cat.algebras() {
        let a = &entry.algebra;
        let n = a.dim();
        assert_eq!(
            h2s(a).dim_coboundaries,
            n * n - a.dim_derivations(),
            "{}",
            a.name()
        );
    }
}

#[test]
fn squared_differential_vanishes_on_random_linear_maps() {
    let cat = catalog();
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed_dd17);
    for entry in cat.algebras() {
        let a = &entry.algebra;
        let n = a.dim();
        for _ in 0..50 {
            let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-9..=9)).collect();
            let f = RatMatrix::from_i64(n, n, &entries);
            let df = coboundary_of_linear(a, &f);
            assert!(
                is_cocycle(a, &df),
                "coboundary of a linear map must be a cocycle ({})",
                a.name()
            );
        }
    }
}

#[test]
fn canonical_representatives_restate_the_quotient() {
    // Feeding an algebra's own canonical basis back through the checker must
    // report a clean spanning set.
    let cat = catalog();
    for name in ["mu5_3d", "mu8_3d", "mu13_3d", "mu4_2d"] {
        let a = &cat.algebra(name).unwrap().algebra;
        let reps = h2s(a).representatives;
        let check = check_representatives(a, &reps);
        assert!(check.non_cocycles.is_empty(), "{name}");
        assert!(check.independent_mod_coboundaries, "{name}");
        assert!(check.spans_complement, "{name}");
    }
}

#[test]
fn tabled_representative_sets_verify_where_clean() {
    let cat = catalog();
    for name in ["mu3_3d", "mu6_3d", "mu7_3d", "mu13_3d", "mu14_3d"] {
        let entry = cat.algebra(name).unwrap();
        let reps = entry
            .expected
            .h2s_representatives
            .as_ref()
            .expect("tabled set present");
        let check = check_representatives(&entry.algebra, reps);
        assert!(check.non_cocycles.is_empty(), "{name}");
        assert!(check.independent_mod_coboundaries, "{name}");
        assert!(check.spans_complement, "{name}");
        assert_eq!(check.quotient_dim, reps.len(), "{name}");
        assert!(
            entry.expected.h2s_representatives_corrected.is_none(),
            "{name} needs no corrected set"
        );
    }
}

#[test]
fn tabled_representative_defects_are_exactly_the_ledgered_ones() {
    let cat = catalog();
    let check_of = |name: &str| {
        let entry = cat.algebra(name).unwrap();
        let reps = entry.expected.h2s_representatives.as_ref().unwrap();
        (
            entry,
            check_representatives(&entry.algebra, reps),
        )
    };

    // Both tabled entries fail the cocycle equation; their defects cancel in
    // the sum, pointing at a split typo.
    let (entry, check) = check_of("mu4_3d");
    assert_eq!(check.non_cocycles, vec![0, 1]);
    let reps = entry.expected.h2s_representatives.as_ref().unwrap();
    let sum = SymmetricCochain::from_coords(
        3,
        reps[0]
            .coords()
            .iter()
            .zip(reps[1].coords())
            .map(|(a, b)| a + b)
            .collect(),
    )
    .unwrap();
    assert!(is_cocycle(&entry.algebra, &sum));

    // All four tabled entries are cocycles but satisfy a coboundary relation.
    let (_, check) = check_of("mu5_3d");
    assert!(check.non_cocycles.is_empty());
    assert!(!check.independent_mod_coboundaries);
    assert_eq!(check.quotient_dim, 4);

    // Two tabled entries coincide, so the six entries only span five classes.
    let (entry, check) = check_of("mu8_3d");
    assert!(check.non_cocycles.is_empty());
    assert!(!check.independent_mod_coboundaries);
    assert_eq!(check.quotient_dim, 6);
    let reps = entry.expected.h2s_representatives.as_ref().unwrap();
    assert_eq!(reps[3], reps[5], "duplicate tabled entry");

    // The second tabled entry is not a cocycle.
    let (entry, check) = check_of("mu9_3d");
    assert_eq!(check.non_cocycles, vec![1]);
    let reps = entry.expected.h2s_representatives.as_ref().unwrap();
    let mut e2 = vec![Rational::zero(); 3];
    e2[1] = rat_int(1);
    assert_eq!(coboundary_value(&entry.algebra, &reps[1], 0, 2, 1), e2);

    // Genuine and independent, but one representative short of the quotient.
    let (_, check) = check_of("mu10_3d");
    assert!(check.non_cocycles.is_empty());
    assert!(check.independent_mod_coboundaries);
    assert!(!check.spans_complement);
    assert_eq!(check.quotient_dim, 2);

    // Same shape one dimension up: three good classes out of four.
    let (_, check) = check_of("mu11_3d");
    assert!(check.non_cocycles.is_empty());
    assert!(check.independent_mod_coboundaries);
    assert!(!check.spans_complement);
    assert_eq!(check.quotient_dim, 4);

    // Sign slips: the first and third tabled entries fail the cocycle
    // equation at the same triple, with defects −e₂ and 2e₂.
    let (entry, check) = check_of("mu12_3d");
    assert_eq!(check.non_cocycles, vec![0, 2]);
    let reps = entry.expected.h2s_representatives.as_ref().unwrap();
    let minus_e2 = vec![rat_int(0), rat_int(-1), rat_int(0)];
    let two_e2 = vec![rat_int(0), rat_int(2), rat_int(0)];
    assert_eq!(coboundary_value(&entry.algebra, &reps[0], 0, 2, 2), minus_e2);
    assert_eq!(coboundary_value(&entry.algebra, &reps[2], 0, 2, 2), two_e2);
}

#[test]
fn corrected_representative_sets_all_verify() {
    let cat = catalog();
    let with_corrections = [
        "mu4_3d", "mu5_3d", "mu8_3d", "mu9_3d", "mu10_3d", "mu11_3d", "mu12_3d",
    ];
    for name in with_corrections {
        let entry = cat.algebra(name).unwrap();
        let reps = entry
            .expected
            .h2s_representatives_corrected
            .as_ref()
            .expect("corrected set shipped");
        let check = check_representatives(&entry.algebra, reps);
        assert!(check.non_cocycles.is_empty(), "{name}");
        assert!(check.independent_mod_coboundaries, "{name}");
        assert!(check.spans_complement, "{name}");
        assert_eq!(reps.len(), check.quotient_dim, "{name}");
    }
}

#[test]
fn full_hochschild_cohomology_vanishes_for_the_rigid_rows() {
    let cat = catalog();
    for name in ["mu1_3d", "mu2_3d"] {
        let a = &cat.algebra(name).unwrap().algebra;
        assert_eq!(h2_full(a).dim, 0, "{name}");
        assert_eq!(h2s(a).dim, 0, "{name}");
    }
    // The remaining three-dimensional entries all deform.
    for name in algebra_names(3) {
        if name == "mu1_3d" || name == "mu2_3d" {
            continue;
        }
        let a = &cat.algebra(&name).unwrap().algebra;
        assert!(h2s(a).dim > 0, "{name}");
    }
}

#[test]
fn two_dimensional_rigid_pair_has_trivial_quotient() {
    let cat = catalog();
    for (name, rigid) in [
        ("mu1_2d", true),
        ("mu2_2d", false),
        ("mu3_2d", true),
        ("mu4_2d", false),
        ("mu5_2d", false),
        ("mu6_2d", false),
    ] {
        let entry = cat.algebra(name).unwrap();
        assert_eq!(h2s(&entry.algebra).dim == 0, rigid, "{name}");
        assert_eq!(entry.expected.rigid, Some(rigid), "{name}");
    }
}

#[test]
fn symmetric_quotient_is_a_base_change_invariant() {
    let cat = catalog();
    for name in ["mu9_3d", "mu10_3d", "mu5_3d", "mu2_2d"] {
        let a = &cat.algebra(name).unwrap().algebra;
        let mut g = RatMatrix::identity(a.dim());
        *g.at_mut(0, a.dim() - 1) = rat_int(3);
        *g.at_mut(0, 0) = rat_int(2);
        let moved = a.transport(&g).unwrap();
        assert_eq!(h2s(&moved).dim, h2s(a).dim, "{name}");
        assert_eq!(
            h2_full(&moved).dim,
            h2_full(a).dim,
            "{name}"
        );
    }
}

#[test]
fn cocycle_defect_reports_none_exactly_on_cocycles() {
    let cat = catalog();
    let a = &cat.algebra("mu10_3d").unwrap().algebra;
    // φ(e₂,e₃) = e₂ is the non-cocycle shape from the neighbouring row; on
    // this algebra it also fails, at a concrete triple.
    let phi = SymmetricCochain::from_entries(
        3,
        &[(1, 2, vec![rat_int(0), rat_int(1), rat_int(0)])],
    )
    .unwrap();
    assert!(cocycle_defect(a, &phi).is_some());
    // Every canonical representative passes.
    for rep in h2s(a).representatives {
        assert_eq!(cocycle_defect(a, &rep), None);
    }
}
