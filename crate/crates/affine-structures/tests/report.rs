//! Integration tests for the claim-by-claim report over the shipped catalog.

use affine_structures::catalog::Catalog;
use affine_structures::report::{build_report, Verdict, SCHEMA_VERSION};

fn catalog() -> Catalog {
    Catalog::load().expect("shipped catalog loads")
}

#[test]
fn report_has_no_uncovered_mismatch() {
    let report = build_report(&catalog());
    let mismatches: Vec<&str> = report
        .claims
        .iter()
        .filter(|c| c.verdict == Verdict::Mismatch)
        .map(|c| c.expected.as_str())
        .collect();
    assert!(mismatches.is_empty(), "uncovered mismatches: {mismatches:#?}");
    assert!(!report.has_mismatch());
}

#[test]
fn report_verdict_tallies_are_the_published_ones() {
    let report = build_report(&catalog());
    assert_eq!(report.summary.total, report.claims.len());
    // Erratum-verdict claims: two printed action forms, the printed excluded
    // point, three printed cohomology dimensions (rows 9, 10, 11), and seven
    // defective printed representative sets (rows 4, 5, 8, 9, 10, 11, 12).
    assert_eq!(report.summary.errata, 13);
    // The two diagram arrows that provably cannot exist.
    assert_eq!(report.summary.unrealized, 2);
    assert_eq!(report.summary.mismatches, 0);
    assert_eq!(
        report.summary.matches,
        report.summary.total - 13 - 2,
        "all remaining claims match"
    );
}

#[test]
fn report_is_byte_identical_across_runs() {
    let cat = catalog();
    let first = build_report(&cat);
    let second = build_report(&cat);
    assert_eq!(first.to_json(), second.to_json());
    assert_eq!(first.to_markdown(), second.to_markdown());

    // A fresh catalog load must not perturb the output either.
    let third = build_report(&catalog());
    assert_eq!(first.to_json(), third.to_json());
}

#[test]
fn report_json_round_trips_with_versioned_schema() {
    let report = build_report(&catalog());
    let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(value["schema_version"], u64::from(SCHEMA_VERSION));
    let claims = value["claims"].as_array().unwrap();
    assert_eq!(claims.len(), report.summary.total);
    for claim in claims {
        for field in ["citation", "expected", "computed", "verdict"] {
            assert!(claim[field].is_string(), "claim field {field} present");
        }
        assert!(!claim["citation"].as_str().unwrap().is_empty());
    }
    let verdicts: std::collections::BTreeSet<&str> = claims
        .iter()
        .map(|c| c["verdict"].as_str().unwrap())
        .collect();
    assert!(verdicts.contains("match"));
    assert!(verdicts.contains("erratum"));
    assert!(verdicts.contains("unrealized"));
    assert!(!verdicts.contains("mismatch"));
}

#[test]
fn markdown_mirrors_the_claim_table() {
    let report = build_report(&catalog());
    let md = report.to_markdown();
    assert!(md.starts_with("# Catalog verification report"));
    assert!(md.contains("| citation | expected | computed | verdict |"));
    // One table row per claim plus the two header rows.
    let rows = md.lines().filter(|l| l.starts_with('|')).count();
    assert_eq!(rows, report.summary.total + 2);
}

#[test]
fn erratum_claims_point_at_ledger_entries() {
    let cat = catalog();
    let report = build_report(&cat);
    let mut cited = std::collections::BTreeSet::new();
    for claim in report.claims.iter().filter(|c| c.verdict == Verdict::Erratum) {
        let (_, tail) = claim
            .computed
            .split_once("see erratum ")
            .unwrap_or_else(|| panic!("erratum claim names its entry: {}", claim.computed));
        let id: String = tail.chars().take_while(|c| *c != ')').collect();
        assert!(
            cat.erratum(&id).is_some(),
            "claim cites unknown erratum {id}: {}",
            claim.computed
        );
        cited.insert(id);
    }
    // Every ledger entry is exercised by at least one claim.
    let all: std::collections::BTreeSet<String> =
        cat.errata().iter().map(|e| e.id.clone()).collect();
    assert_eq!(cited, all, "every erratum id is cited by a claim");
    // The degeneration claims carry the obstruction names.
    let unrealized: Vec<&str> = report
        .claims
        .iter()
        .filter(|c| c.verdict == Verdict::Unrealized)
        .map(|c| c.computed.as_str())
        .collect();
    assert!(unrealized.iter().any(|c| c.contains("orbit dimension")));
    assert!(unrealized.iter().any(|c| c.contains("trace proportionality")));
}
