//! Integration tests for the shipped catalog: every data file loads, the
//! rosters are complete, and the asserted flags agree with recomputation.

use affine_structures::catalog::{action_names, algebra_names, torus_names, Catalog};
use affine_structures::exact::rational::rat_int;
use num::Zero;

fn catalog() -> Catalog {
    Catalog::load().expect("shipped catalog loads")
}

#[test]
fn shipped_catalog_has_expected_counts() {
    let cat = catalog();
    assert_eq!(cat.algebras().len(), 21);
    assert_eq!(cat.actions().len(), 21);
    assert_eq!(cat.arrow_sets().len(), 2);
    assert_eq!(cat.tori().len(), 9);
    assert_eq!(cat.errata().len(), 11);
}

#[test]
fn rosters_resolve_in_both_dimensions() {
    let cat = catalog();
    for dim in [2, 3] {
        for name in algebra_names(dim) {
            let entry = cat.algebra(&name).expect("roster algebra present");
            assert_eq!(entry.algebra.dim(), dim, "{name}");
        }
        for name in action_names(dim) {
            let entry = cat.action(&name).expect("roster action present");
            assert_eq!(entry.action.dim(), dim, "{name}");
        }
    }
    for name in torus_names() {
        cat.torus(&name).expect("roster torus present");
    }
}

#[test]
fn every_algebra_has_an_action_and_every_action_an_algebra() {
    let cat = catalog();
    for entry in cat.algebras() {
        let action = cat
            .action_for_algebra(entry.algebra.name())
            .expect("algebra has a closed-form action");
        assert_eq!(action.algebra, entry.algebra.name());
    }
    for action in cat.actions() {
        cat.algebra(&action.algebra).expect("action names a catalog algebra");
    }
}

#[test]
fn unital_flags_match_recomputation() {
    let cat = catalog();
    for entry in cat.algebras() {
        assert_eq!(
            entry.expected.unital,
            entry.algebra.is_unital(),
            "unital flag for {}",
            entry.algebra.name()
        );
    }
    let unital_2d: Vec<&str> = cat
        .algebras()
        .into_iter()
        .filter(|e| e.algebra.dim() == 2 && e.expected.unital)
        .map(|e| e.algebra.name())
        .collect();
    assert_eq!(unital_2d, ["mu1_2d", "mu2_2d", "mu3_2d"]);
    let unital_3d: Vec<&str> = cat
        .algebras()
        .into_iter()
        .filter(|e| e.algebra.dim() == 3 && e.expected.unital)
        .map(|e| e.algebra.name())
        .collect();
    assert_eq!(
        unital_3d,
        ["mu1_3d", "mu2_3d", "mu3_3d", "mu4_3d", "mu5_3d"]
    );
}

#[test]
fn nilpotent_and_complete_flags_match_recomputation() {
    let cat = catalog();
    for entry in cat.algebras() {
        let name = entry.algebra.name();
        assert_eq!(
            entry.expected.nilpotent,
            entry.algebra.is_nilpotent(),
            "nilpotent flag for {name}"
        );
        assert_eq!(
            entry.expected.complete,
            entry.algebra.is_complete(),
            "complete flag for {name}"
        );
        // For commutative associative products the two notions coincide.
        assert_eq!(entry.expected.nilpotent, entry.expected.complete, "{name}");
    }
    let complete_3d: Vec<&str> = cat
        .algebras()
        .into_iter()
        .filter(|e| e.algebra.dim() == 3 && e.expected.complete)
        .map(|e| e.algebra.name())
        .collect();
    assert_eq!(
        complete_3d,
        ["mu11_3d", "mu12_3d", "mu13_3d", "mu14_3d", "mu15_3d"]
    );
}

#[test]
fn trivial_algebra_has_zero_tensor() {
    let cat = catalog();
    let mu15 = &cat.algebra("mu15_3d").unwrap().algebra;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                assert!(mu15.structure_constant(i, j, k).is_zero());
            }
        }
    }
    let mu5 = &cat.algebra("mu5_2d").unwrap().algebra;
    for i in 0..2 {
        for j in 0..2 {
            assert!(mu5.basis_product(i, j).iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn cohomology_dimensions_are_tabled_exactly_for_3d() {
    let cat = catalog();
    let tabled: Vec<usize> = algebra_names(3)
        .iter()
        .map(|n| {
            cat.algebra(n)
                .unwrap()
                .expected
                .dim_h2s
                .expect("3d entries carry a tabled dimension")
        })
        .collect();
    assert_eq!(tabled, [0, 0, 1, 2, 4, 1, 1, 6, 3, 1, 3, 4, 7, 3, 18]);
    for name in algebra_names(2) {
        assert!(cat.algebra(&name).unwrap().expected.dim_h2s.is_none());
    }
    // Full (non-symmetric) dimension is only tabled for the two rigid rows.
    assert_eq!(cat.algebra("mu1_3d").unwrap().expected.dim_h2_full, Some(0));
    assert_eq!(cat.algebra("mu2_3d").unwrap().expected.dim_h2_full, Some(0));
    assert!(cat.algebra("mu8_3d").unwrap().expected.dim_h2_full.is_none());
}

#[test]
fn rigidity_flags_single_out_the_semisimple_rows() {
    let cat = catalog();
    for entry in cat.algebras() {
        let rigid = entry.expected.rigid.expect("rigidity is stated for every row");
        let expected = matches!(
            entry.algebra.name(),
            "mu1_2d" | "mu3_2d" | "mu1_3d" | "mu2_3d"
        );
        assert_eq!(rigid, expected, "{}", entry.algebra.name());
    }
}

#[test]
fn representative_sets_ship_where_tabled() {
    let cat = catalog();
    for name in algebra_names(3) {
        let entry = cat.algebra(&name).unwrap();
        let has_reps = entry.expected.h2s_representatives.is_some();
        // Rows with trivial or untabled bases ship no representative list.
        let expects_reps = !matches!(name.as_str(), "mu1_3d" | "mu2_3d" | "mu15_3d");
        assert_eq!(has_reps, expects_reps, "{name}");
    }
    // Corrected sets ship exactly for the rows whose printed sets are
    // defective; each stays the size of the true quotient dimension.
    for name in algebra_names(3) {
        let entry = cat.algebra(&name).unwrap();
        let corrected = entry.expected.h2s_representatives_corrected.as_ref();
        let expected_len = match name.as_str() {
            "mu4_3d" => Some(2),
            "mu5_3d" => Some(4),
            "mu8_3d" => Some(6),
            "mu9_3d" => Some(2),
            "mu10_3d" => Some(2),
            "mu11_3d" => Some(4),
            "mu12_3d" => Some(4),
            _ => None,
        };
        assert_eq!(corrected.map(Vec::len), expected_len, "{name}");
    }
    let mu8 = cat.algebra("mu8_3d").unwrap();
    let printed = mu8.expected.h2s_representatives.as_ref().unwrap();
    assert_eq!(printed.len(), 6);
    // The printed sixth representative duplicates the fourth.
    assert_eq!(printed[3].coords(), printed[5].coords());
    let corrected = mu8.expected.h2s_representatives_corrected.as_ref().unwrap();
    assert_ne!(corrected[3].coords(), corrected[5].coords());
}

#[test]
fn greek_aliases_resolve() {
    let cat = catalog();
    assert_eq!(
        cat.algebra("μ4_2d").unwrap().algebra.name(),
        "mu4_2d"
    );
    assert_eq!(cat.algebra("MU14_3D").unwrap().algebra.name(), "mu14_3d");
    assert_eq!(cat.torus("Γ6").unwrap().family.name, "gamma6");
    assert!(cat.algebra("mu99_3d").is_err());
}

#[test]
fn arrow_sets_have_the_published_shape() {
    let cat = catalog();
    let two = cat.arrows(2).expect("plane arrows present");
    assert_eq!(two.families.len(), 4);
    assert!(two.unrealized.is_empty());
    assert!(two.families.iter().all(|f| f.family.source == "mu1_2d"));

    let three = cat.arrows(3).expect("three-dimensional arrows present");
    assert_eq!(three.families.len(), 13);
    assert_eq!(
        three.families.iter().filter(|f| f.supplementary).count(),
        1
    );
    assert_eq!(three.unrealized.len(), 2);
    let obstructions: Vec<&str> = three
        .unrealized
        .iter()
        .map(|u| u.obstruction.as_str())
        .collect();
    assert!(obstructions.contains(&"orbit dimension"));
    assert!(obstructions.contains(&"trace proportionality"));
    for fam in &three.families {
        cat.algebra(&fam.family.source).expect("arrow source exists");
        cat.algebra(&fam.family.target).expect("arrow target exists");
    }
}

#[test]
fn closed_form_spot_check_shear_action() {
    let cat = catalog();
    let entry = cat.action("a4_2d").unwrap();
    let map = entry
        .action
        .evaluate_exact(&[rat_int(1), rat_int(2)])
        .expect("polynomial action evaluates exactly");
    assert_eq!(map.linear.at(0, 0), &rat_int(1));
    assert_eq!(map.linear.at(0, 1), &rat_int(0));
    assert_eq!(map.linear.at(1, 0), &rat_int(1));
    assert_eq!(map.linear.at(1, 1), &rat_int(1));
    assert_eq!(map.translation[0], rat_int(1));
    assert_eq!(
        map.translation[1],
        affine_structures::exact::rational::parse_rational("5/2").unwrap()
    );
}

#[test]
fn printed_and_regenerated_variants_ship_where_noted() {
    let cat = catalog();
    assert!(cat.action("a3_2d").unwrap().printed.is_some());
    assert!(cat.action("a10_3d").unwrap().printed.is_some());
    assert!(cat.action("a2_3d").unwrap().regenerated.is_some());
    assert!(cat.action("a1_2d").unwrap().printed.is_none());
    // Domains are stated exactly for the plane actions.
    for name in action_names(2) {
        assert!(cat.action(&name).unwrap().domain.is_some(), "{name}");
    }
    for name in action_names(3) {
        assert!(cat.action(&name).unwrap().domain.is_none(), "{name}");
    }
}

#[test]
fn errata_ledger_is_complete_and_addressable() {
    let cat = catalog();
    let ids: Vec<&str> = cat.errata().iter().map(|e| e.id.as_str()).collect();
    assert_eq!(
        ids,
        ["E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9", "E10", "E11"]
    );
    for id in ids {
        let e = cat.erratum(id).expect("erratum resolves by id");
        assert!(!e.location.is_empty());
        assert!(!e.printed.is_empty());
        assert!(!e.corrected.is_empty());
        assert!(!e.justification.is_empty());
        assert_ne!(e.printed, e.corrected);
    }
    assert!(cat.erratum("e3").is_some(), "ids resolve case-insensitively");
    assert!(cat.erratum("E12").is_none());
}

#[test]
fn citations_are_present_everywhere() {
    let cat = catalog();
    for entry in cat.algebras() {
        assert!(!entry.citation.is_empty());
    }
    for entry in cat.actions() {
        assert!(!entry.citation.is_empty());
    }
    for set in cat.arrow_sets() {
        assert!(!set.citation.is_empty());
        for fam in &set.families {
            assert!(!fam.citation.is_empty());
        }
        for u in &set.unrealized {
            assert!(!u.citation.is_empty());
        }
    }
    for torus in cat.tori() {
        assert!(!torus.citation.is_empty());
    }
}

#[test]
fn torus_families_have_the_published_shape() {
    let cat = catalog();
    for name in ["t2_a4", "t2_a5"] {
        let t = cat.torus(name).unwrap();
        assert_eq!(t.family.param_count(), 2);
    }
    for i in 1..=2 {
        let t = cat.torus(&format!("gamma{i}")).unwrap();
        assert_eq!(t.family.param_count(), 2, "gamma{i}");
    }
    for i in 3..=7 {
        let t = cat.torus(&format!("gamma{i}")).unwrap();
        assert_eq!(t.family.param_count(), 3, "gamma{i}");
    }
    // The shear torus ships the alternate exponential translation pattern.
    assert!(cat.torus("t2_a4").unwrap().alternate_translation.is_some());
    assert!(cat.torus("gamma6").unwrap().alternate_translation.is_none());
    // Quadratic law coefficients as derived: the shear subtracts p·p′.
    assert_eq!(cat.torus("t2_a4").unwrap().law.quad[1][0][0], rat_int(-1));
    assert_eq!(cat.torus("gamma1").unwrap().law.quad[0][1][1], rat_int(1));
    assert_eq!(cat.torus("gamma6").unwrap().law.quad[2][0][1], rat_int(1));
    assert_eq!(cat.torus("gamma6").unwrap().law.quad[2][1][0], rat_int(1));
}
