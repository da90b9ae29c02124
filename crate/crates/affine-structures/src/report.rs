//! Claim-by-claim verification report: every table row in the catalog is
//! recomputed and judged. Output ordering, seeds, and float formatting are
//! all fixed, so repeated runs are byte-identical.

use std::fmt::Write as _;

use num::Zero;
use serde::Serialize;

use crate::action::{
    compare_closed_form, exp_action_f64, fmt_f64, translation_image_sample, Domain,
};
use crate::algebra::Algebra;
use crate::catalog::{Catalog, ErratumKind};
use crate::cohomology::{check_representatives, h2_full, h2s};
use crate::deformation::verify_arrow;
use crate::exact::matrix::RatMatrix;
use crate::exact::rational::{format_rational, rat_int, Rational};
use crate::lattice::{
    closure_check, descends_to_torus_exact, freeness_check, integral_entries_check,
    inverse_identity_check, CompositionLaw, CrystalDomain,
};

/// Bumped whenever the JSON layout of [`Report`] changes.
pub const SCHEMA_VERSION: u32 = 1;

/// Comparison trials and tolerance used for every closed-form action claim.
const ACTION_TRIALS: usize = 100;
const ACTION_TOL: f64 = 1e-9;
/// Grid size for translation-image domain sampling.
const DOMAIN_SAMPLES: usize = 1000;
/// Integer draws for the torus group checks.
const TORUS_TRIALS: usize = 200;

/// How a recomputed value relates to the printed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Recomputation reproduces the printed value exactly (or within the
    /// stated tolerance for float comparisons).
    Match,
    /// Recomputation disagrees with the printed value, and the disagreement
    /// is covered by an entry in the errata ledger.
    Erratum,
    /// The printed statement asserts a degeneration that provably cannot
    /// exist; the claim records the obstruction.
    Unrealized,
    /// Recomputation disagrees and no erratum covers it.
    Mismatch,
}

/// One verified statement about a catalog row.
#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub citation: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
}

/// Verdict tallies over all claims.
#[derive(Debug, Default, Clone, Copy, Serialize)]
pub struct Summary {
    pub total: usize,
    pub matches: usize,
    pub errata: usize,
    pub unrealized: usize,
    pub mismatches: usize,
}

/// The full report, one claim per recomputed table statement.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub claims: Vec<Claim>,
    pub summary: Summary,
}

impl Report {
    pub fn has_mismatch(&self) -> bool {
        self.summary.mismatches > 0
    }

    /// Deterministic pretty JSON.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Markdown rendering: one table per verdict-bearing section.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Catalog verification report\n\n");
        writeln!(out, "Schema version {}.", self.schema_version).unwrap();
        writeln!(
            out,
            "{} claims: {} match, {} errata, {} unrealized, {} mismatches.\n",
            self.summary.total,
            self.summary.matches,
            self.summary.errata,
            self.summary.unrealized,
            self.summary.mismatches
        )
        .unwrap();
        out.push_str("| citation | expected | computed | verdict |\n");
        out.push_str("| --- | --- | --- | --- |\n");
        for c in &self.claims {
            writeln!(
                out,
                "| {} | {} | {} | {} |",
                escape_cell(&c.citation),
                escape_cell(&c.expected),
                escape_cell(&c.computed),
                verdict_name(c.verdict)
            )
            .unwrap();
        }
        out
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Match => "match",
        Verdict::Erratum => "erratum",
        Verdict::Unrealized => "unrealized",
        Verdict::Mismatch => "mismatch",
    }
}

fn escape_cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn tally(claims: &[Claim]) -> Summary {
    let mut s = Summary {
        total: claims.len(),
        ..Summary::default()
    };
    for c in claims {
        match c.verdict {
            Verdict::Match => s.matches += 1,
            Verdict::Erratum => s.errata += 1,
            Verdict::Unrealized => s.unrealized += 1,
            Verdict::Mismatch => s.mismatches += 1,
        }
    }
    s
}

/// Recomputes every catalog statement and assembles the claims in canonical
/// order: algebras, cohomology, rigidity, actions, domains, arrows, tori.
pub fn build_report(cat: &Catalog) -> Report {
    let mut claims = Vec::new();
    algebra_claims(cat, &mut claims);
    cohomology_claims(cat, &mut claims);
    rigidity_claims(cat, &mut claims);
    action_claims(cat, &mut claims);
    domain_claims(cat, &mut claims);
    arrow_claims(cat, &mut claims);
    torus_claims(cat, &mut claims);
    let summary = tally(&claims);
    Report {
        schema_version: SCHEMA_VERSION,
        claims,
        summary,
    }
}

fn flag_string(unital: bool, nilpotent: bool, complete: bool) -> String {
    format!("unital={unital}, nilpotent={nilpotent}, complete={complete}")
}

fn algebra_claims(cat: &Catalog, claims: &mut Vec<Claim>) {
    for entry in cat.algebras() {
        let a = &entry.algebra;
        let axioms_ok = a.is_commutative() && a.is_associative();
        let expected = format!(
            "{}: commutative associative; {}",
            a.name(),
            flag_string(
                entry.expected.unital,
                entry.expected.nilpotent,
                entry.expected.complete
            )
        );
        let computed_flags = flag_string(a.is_unital(), a.is_nilpotent(), a.is_complete());
        let computed = format!(
            "{}: {}; {}",
            a.name(),
            if axioms_ok {
                "commutative associative".to_string()
            } else {
                "axiom failure".to_string()
            },
            computed_flags
        );
        let verdict = if expected == computed.replace("axiom failure", "commutative associative")
            && axioms_ok
        {
            Verdict::Match
        } else {
            Verdict::Mismatch
        };
        claims.push(Claim {
            citation: entry.citation.clone(),
            expected,
            computed,
            verdict,
        });
    }
}

/// Table row number embedded in a catalog name such as `mu11_3d`.
fn table_row(name: &str) -> Option<u32> {
    let digits: String = name
        .chars()
        .skip_while(|c| !c.is_ascii_digit())
        .take_while(char::is_ascii_digit)
        .collect();
    digits.parse().ok()
}

/// Ledger entry for the cohomology-table row of `name` with the given kind,
/// if one exists. Row numbers are matched with their trailing comma so that
/// row 1 never matches row 11.
fn cohomology_erratum<'a>(
    cat: &'a Catalog,
    name: &str,
    kind: ErratumKind,
) -> Option<&'a crate::catalog::Erratum> {
    let row = table_row(name)?;
    let marker = format!("row {row},");
    cat.errata().iter().find(|e| {
        e.kind == kind && e.location.contains("second-cohomology") && e.location.contains(&marker)
    })
}

fn cohomology_claims(cat: &Catalog, claims: &mut Vec<Claim>) {
    for entry in cat.algebras() {
        let a = &entry.algebra;
        if let Some(tabled) = entry.expected.dim_h2s {
            let computed_dim = h2s(a).dim;
            let covering = cohomology_erratum(cat, a.name(), ErratumKind::H2sDimension).filter(|e| {
                e.printed == tabled.to_string() && e.corrected == computed_dim.to_string()
            });
            let (verdict, note) = if computed_dim == tabled {
                (Verdict::Match, String::new())
            } else if let Some(err) = covering {
                (Verdict::Erratum, format!(" (see erratum {})", err.id))
            } else {
                (Verdict::Mismatch, String::new())
            };
            claims.push(Claim {
                citation: entry.citation.clone(),
                expected: format!("{}: dim H2_s = {}", a.name(), tabled),
                computed: format!("{}: dim H2_s = {}{}", a.name(), computed_dim, note),
                verdict,
            });
        }
        if let Some(tabled) = entry.expected.dim_h2_full {
            let computed_dim = h2_full(a).dim;
            claims.push(Claim {
                citation: entry.citation.clone(),
                expected: format!("{}: dim H2 = {}", a.name(), tabled),
                computed: format!("{}: dim H2 = {}", a.name(), computed_dim),
                verdict: if computed_dim == tabled {
                    Verdict::Match
                } else {
                    Verdict::Mismatch
                },
            });
        }
        if let Some(reps) = &entry.expected.h2s_representatives {
            let check = check_representatives(a, reps);
            let ok = check.non_cocycles.is_empty()
                && check.independent_mod_coboundaries
                && check.spans_complement;
            let (verdict, computed) = if ok {
                (
                    Verdict::Match,
                    format!(
                        "{}: {} cocycles, independent modulo coboundaries, spanning",
                        a.name(),
                        reps.len()
                    ),
                )
            } else {
                let corrected_ok = entry.expected.h2s_representatives_corrected.as_ref().map(
                    |fixed| {
                        let c = check_representatives(a, fixed);
                        c.non_cocycles.is_empty()
                            && c.independent_mod_coboundaries
                            && c.spans_complement
                    },
                );
                // A defective printed set is only an expected outcome when the
                // ledger documents the row (as a basis defect, or as a
                // dimension defect that the printed set cannot span).
                let ledger_entry = cohomology_erratum(cat, a.name(), ErratumKind::H2sBasis)
                    .or_else(|| cohomology_erratum(cat, a.name(), ErratumKind::H2sDimension));
                let mut detail = format!("{}: printed set", a.name());
                if !check.non_cocycles.is_empty() {
                    write!(detail, " has non-cocycles at {:?}", check.non_cocycles).unwrap();
                } else if !check.independent_mod_coboundaries {
                    detail.push_str(" is dependent modulo coboundaries");
                } else {
                    detail.push_str(" does not span the quotient");
                }
                match (corrected_ok, ledger_entry) {
                    (Some(true), Some(err)) => {
                        write!(detail, "; corrected set verifies (see erratum {})", err.id)
                            .unwrap();
                        (Verdict::Erratum, detail)
                    }
                    _ => (Verdict::Mismatch, detail),
                }
            };
            claims.push(Claim {
                citation: entry.citation.clone(),
                expected: format!(
                    "{}: printed representatives form a basis of the quotient",
                    a.name()
                ),
                computed,
                verdict,
            });
        }
    }
}

fn rigidity_claims(cat: &Catalog, claims: &mut Vec<Claim>) {
    for entry in cat.algebras() {
        let Some(rigid) = entry.expected.rigid else {
            continue;
        };
        if !rigid {
            continue;
        }
        let a = &entry.algebra;
        // Plane rows are backed by the symmetric quotient, space rows by the
        // full Hochschild quotient.
        let (kind, dim) = if a.dim() == 2 {
            ("dim H2_s", h2s(a).dim)
        } else {
            ("dim H2", h2_full(a).dim)
        };
        claims.push(Claim {
            citation: entry.citation.clone(),
            expected: format!("{}: rigid, so {} = 0", a.name(), kind),
            computed: format!("{}: {} = {}", a.name(), kind, dim),
            verdict: if dim == 0 {
                Verdict::Match
            } else {
                Verdict::Mismatch
            },
        });
    }
}

fn compare_claim(
    citation: &str,
    algebra: &Algebra,
    cf: &crate::action::ClosedFormAction,
    expected: String,
    covering: Option<&crate::catalog::Erratum>,
) -> Claim {
    match compare_closed_form(algebra, cf, ACTION_TRIALS, ACTION_TOL) {
        Ok(rep) => Claim {
            citation: citation.to_string(),
            expected,
            computed: format!(
                "{}: max deviation {} over {} draws",
                cf.name,
                fmt_f64(rep.max_deviation),
                rep.trials
            ),
            verdict: if covering.is_some() {
                // The ledger says this form should fail; passing means the
                // ledger itself is wrong.
                Verdict::Mismatch
            } else {
                Verdict::Match
            },
        },
        Err(failure) => Claim {
            citation: citation.to_string(),
            expected,
            // A printed variant only ships when an erratum documents why it
            // fails, so the failure is the expected outcome there.
            verdict: if covering.is_some() {
                Verdict::Erratum
            } else {
                Verdict::Mismatch
            },
            computed: match covering {
                Some(err) => format!("{}: {failure} (see erratum {})", cf.name, err.id),
                None => format!("{}: {failure}", cf.name),
            },
        },
    }
}

/// Ledger entry for the printed action row of `name`, if one exists.
fn action_erratum<'a>(
    cat: &'a Catalog,
    name: &str,
    dim: usize,
) -> Option<&'a crate::catalog::Erratum> {
    let row = table_row(name)?;
    let marker = format!("row {row},");
    let table = if dim == 2 { "two-dimensional action" } else { "three-dimensional action" };
    cat.errata().iter().find(|e| {
        e.kind == ErratumKind::ActionComponent
            && e.location.contains(table)
            && e.location.contains(&marker)
    })
}

fn action_claims(cat: &Catalog, claims: &mut Vec<Claim>) {
    for entry in cat.actions() {
        let algebra = &cat
            .algebra(&entry.algebra)
            .expect("action references a catalog algebra")
            .algebra;
        claims.push(compare_claim(
            &entry.citation,
            algebra,
            &entry.action,
            format!("{}: closed form equals exp of the representation", entry.name),
            None,
        ));
        if let Some(printed) = &entry.printed {
            claims.push(compare_claim(
                &entry.citation,
                algebra,
                printed,
                format!("{}: printed form equals exp of the representation", entry.name),
                action_erratum(cat, &entry.name, algebra.dim()),
            ));
        }
        if let Some(regen) = &entry.regenerated {
            claims.push(compare_claim(
                &entry.citation,
                algebra,
                regen,
                format!("{}: regenerated form equals exp of the representation", entry.name),
                None,
            ));
        }
    }
}

fn domain_claims(cat: &Catalog, claims: &mut Vec<Claim>) {
    for entry in cat.actions() {
        let Some(domain) = &entry.domain else {
            continue;
        };
        let algebra = &cat.algebra(&entry.algebra).expect("algebra exists").algebra;
        let expected = format!("{}: translation image is {}", entry.name, describe_domain(domain));
        let claim = match translation_image_sample(algebra, domain, DOMAIN_SAMPLES) {
            Ok(rep) => Claim {
                citation: entry.citation.clone(),
                expected,
                computed: format!(
                    "{}: {} samples inside, boundary evidence {}",
                    entry.name,
                    rep.samples,
                    fmt_f64(rep.evidence)
                ),
                verdict: Verdict::Match,
            },
            Err(violation) => Claim {
                citation: entry.citation.clone(),
                expected,
                computed: format!("{}: {violation}", entry.name),
                verdict: Verdict::Mismatch,
            },
        };
        claims.push(claim);

        // The third plane row prints the wrong excluded point: show that the
        // printed point is attained while the corrected one is approached but
        // never reached.
        if let (Domain::Punctured { exclude }, Some(err)) =
            (domain, cat.erratum("E2").filter(|_| entry.name == "a3_2d"))
        {
            let attained = exp_action_f64(algebra, &[std::f64::consts::LN_2, 0.0]).translation;
            let printed_point = (1.0, 0.0);
            let hit = ((attained[0] - printed_point.0).powi(2)
                + (attained[1] - printed_point.1).powi(2))
            .sqrt();
            claims.push(Claim {
                citation: err.location.clone(),
                expected: format!("{}: excluded point is {}", entry.name, err.printed),
                computed: format!(
                    "{}: printed point attained to distance {} at parameters (ln 2, 0); \
                     corrected puncture ({}, {}) never attained (see erratum {})",
                    entry.name,
                    fmt_f64(hit),
                    fmt_f64(exclude.0),
                    fmt_f64(exclude.1),
                    err.id
                ),
                verdict: if hit < ACTION_TOL {
                    Verdict::Erratum
                } else {
                    Verdict::Mismatch
                },
            });
        }
    }
}

fn describe_domain(d: &Domain) -> String {
    match d {
        Domain::All => "the whole plane".to_string(),
        Domain::HalfPlaneXAboveMinusOne => "the half-plane x > -1".to_string(),
        Domain::Punctured { exclude } => format!(
            "the plane minus ({}, {})",
            fmt_f64(exclude.0),
            fmt_f64(exclude.1)
        ),
    }
}

fn arrow_claims(cat: &Catalog, claims: &mut Vec<Claim>) {
    for set in cat.arrow_sets() {
        for record in &set.families {
            let fam = &record.family;
            let source = &cat.algebra(&fam.source).expect("arrow source").algebra;
            let target = &cat.algebra(&fam.target).expect("arrow target").algebra;
            let expected = format!(
                "transporting {} limits to {} at t = 0{}",
                fam.source,
                fam.target,
                if record.supplementary {
                    " (supplementary)"
                } else {
                    ""
                }
            );
            let claim = match verify_arrow(fam, source, target) {
                Ok(cert) => Claim {
                    citation: record.citation.clone(),
                    expected,
                    computed: format!(
                        "verified; orbit dimension {} -> {}",
                        cert.transported_orbit_dim, cert.limit_orbit_dim
                    ),
                    verdict: if cert.limit_orbit_dim < cert.transported_orbit_dim {
                        Verdict::Match
                    } else {
                        Verdict::Mismatch
                    },
                },
                Err(e) => Claim {
                    citation: record.citation.clone(),
                    expected,
                    computed: format!("{e}"),
                    verdict: Verdict::Mismatch,
                },
            };
            claims.push(claim);
        }
        for u in &set.unrealized {
            let source = &cat.algebra(&u.source).expect("unrealized source").algebra;
            let target = &cat.algebra(&u.target).expect("unrealized target").algebra;
            let confirmed = match u.obstruction.as_str() {
                "orbit dimension" => {
                    crate::deformation::orbit_dimension_obstructed(target, source)
                }
                "trace proportionality" => {
                    crate::deformation::trace_shape_obstructed(target, source)
                }
                _ => false,
            };
            claims.push(Claim {
                citation: u.citation.clone(),
                expected: format!(
                    "diagram draws {} in the closure of the {} orbit",
                    u.target, u.source
                ),
                computed: format!("obstructed: {} — {}", u.obstruction, u.note),
                verdict: if confirmed {
                    Verdict::Unrealized
                } else {
                    Verdict::Mismatch
                },
            });
        }
    }
}

fn law_matches(found: &CompositionLaw, stored: &CompositionLaw) -> bool {
    found.quad == stored.quad
}

fn torus_claims(cat: &Catalog, claims: &mut Vec<Claim>) {
    for entry in cat.tori() {
        let fam = &entry.family;
        // Group law: the fitted composition law must equal the stored one.
        let law_claim = match closure_check(fam, TORUS_TRIALS) {
            Ok(found) if law_matches(&found, &entry.law) => Claim {
                citation: entry.citation.clone(),
                expected: format!("{}: {}", fam.name, entry.law.describe(&fam.params)),
                computed: format!("{}: {}", fam.name, found.describe(&fam.params)),
                verdict: Verdict::Match,
            },
            Ok(found) => Claim {
                citation: entry.citation.clone(),
                expected: format!("{}: {}", fam.name, entry.law.describe(&fam.params)),
                computed: format!("{}: {}", fam.name, found.describe(&fam.params)),
                verdict: Verdict::Mismatch,
            },
            Err(e) => Claim {
                citation: entry.citation.clone(),
                expected: format!("{}: {}", fam.name, entry.law.describe(&fam.params)),
                computed: format!("{}: {e}", fam.name),
                verdict: Verdict::Mismatch,
            },
        };
        claims.push(law_claim);

        // Crystallographic action: inverses, integrality, freeness, descent.
        let mut failures = Vec::new();
        if let Err(e) = inverse_identity_check(fam, TORUS_TRIALS) {
            failures.push(format!("inverse: {e}"));
        }
        if let Err(e) = integral_entries_check(fam, TORUS_TRIALS) {
            failures.push(format!("integrality: {e}"));
        }
        if let Err(e) = freeness_check(fam, TORUS_TRIALS) {
            failures.push(format!("freeness: {e}"));
        }
        let sample = fam.element(&vec![1; fam.param_count()]).expect("pattern evaluates");
        if !descends_to_torus_exact(&sample) {
            failures.push("descent: non-integral linear part".to_string());
        }
        claims.push(Claim {
            citation: entry.citation.clone(),
            expected: format!(
                "{}: free integral affine action on {}",
                fam.name,
                match fam.domain {
                    CrystalDomain::All => "the whole space",
                    CrystalDomain::HalfSpaceXAboveMinusOne => "the half-space x > -1",
                }
            ),
            computed: if failures.is_empty() {
                format!(
                    "{}: inverses, integrality, freeness, descent verified at {} draws",
                    fam.name, TORUS_TRIALS
                )
            } else {
                format!("{}: {}", fam.name, failures.join("; "))
            },
            verdict: if failures.is_empty() {
                Verdict::Match
            } else {
                Verdict::Mismatch
            },
        });

        // Families restricted to a half-space carry fixed points confined to
        // its boundary plane: exhibit the plane and check it stays outside.
        if fam.domain == CrystalDomain::HalfSpaceXAboveMinusOne {
            claims.push(fixed_plane_claim(entry));
        }

        // The alternate translation pattern (exponential image) composes
        // additively but leaves the integral points.
        if let Some(alt) = &entry.alternate_translation {
            claims.push(alternate_translation_claim(entry, alt));
        }
    }
}

fn fixed_plane_claim(entry: &crate::catalog::TorusEntry) -> Claim {
    let fam = &entry.family;
    let n = fam.dim;
    let mut plane_confirmed = true;
    for params in [[1i64, 0], [0, 1], [1, 1], [2, -3]] {
        let m = fam.element(&params).expect("pattern evaluates");
        if m.is_identity() {
            continue;
        }
        let shifted = &m.linear - &RatMatrix::identity(n);
        let rhs: Vec<Rational> = m.translation.iter().map(|t| -t.clone()).collect();
        match shifted.solve_linear(&rhs) {
            Some(point) => {
                if point[0] != rat_int(-1) {
                    plane_confirmed = false;
                }
                // Every fixed direction must stay inside the plane x = -1.
                let (_, nullspace) = shifted.rank_nullspace();
                if nullspace.iter().any(|v| !v[0].is_zero()) {
                    plane_confirmed = false;
                }
            }
            None => plane_confirmed = false,
        }
    }
    Claim {
        citation: entry.citation.clone(),
        expected: format!(
            "{}: fixed points lie on the plane x = -1, outside the half-space",
            fam.name
        ),
        computed: if plane_confirmed {
            format!("{}: sampled non-identity elements fix only x = -1", fam.name)
        } else {
            format!("{}: a sampled fixed point leaves the plane x = -1", fam.name)
        },
        verdict: if plane_confirmed {
            Verdict::Match
        } else {
            Verdict::Mismatch
        },
    }
}

fn alternate_translation_claim(
    entry: &crate::catalog::TorusEntry,
    alt: &[crate::expr::Expr],
) -> Claim {
    let fam = &entry.family;
    let alt_family = crate::lattice::CrystalFamily::new(
        format!("{}_exponential", fam.name),
        fam.dim,
        fam.params.clone(),
        fam.linear.clone(),
        alt.to_vec(),
        fam.domain,
    )
    .expect("alternate pattern is well-formed");
    let additive = matches!(
        closure_check(&alt_family, TORUS_TRIALS),
        Ok(law) if law.quad.iter().flatten().flatten().all(Zero::is_zero)
    );
    let odd = alt_family.element(&[1, 0]).expect("pattern evaluates");
    let non_integral = odd.translation.iter().any(|v| !v.is_integer());
    Claim {
        citation: entry.citation.clone(),
        expected: format!(
            "{}: exponential translation pattern composes additively but is not integral",
            fam.name
        ),
        computed: format!(
            "{}: additive={}, odd-parameter translation ({}) integral={}",
            fam.name,
            additive,
            odd.translation
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(", "),
            !non_integral
        ),
        verdict: if additive && non_integral {
            Verdict::Match
        } else {
            Verdict::Mismatch
        },
    }
}
