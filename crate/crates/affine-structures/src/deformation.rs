//! Degenerations: transporting a product along a curve of base changes and
//! taking the exact limit at `t → 0`.
//!
//! A [`DegenerationFamily`] records a curve `g(t)` of invertible matrices.
//! Its `source` names the algebra being transported and its `target` names
//! the limit, so the family certifies that the target lies in the closure of
//! the source's base-change orbit. Everything stays in rational functions, so
//! "the limit exists" and "the limit equals the catalog tensor" are decidable
//! statements, not numerical judgments.
//!
//! Two exact obstructions are provided for arrows that refuse to appear:
//! orbit dimensions can only drop strictly along a proper degeneration, and
//! the identity `T = β·v·vᵀ` between the trace form and the trace vector is
//! inherited by transports (where `T ↦ gᵀTg`, `v ↦ gᵀv`) and by entrywise
//! limits, so a limit whose `β` disagrees with the transported algebra's `β`
//! is impossible.

use num::{One, Zero};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::exact::matrix::RatMatrix;
use crate::exact::ratfun::{RatFunction, RfMatrix};
use crate::exact::rational::Rational;
use crate::fingerprint;

/// A named curve of base changes with rational-function entries.
#[derive(Debug, Clone)]
pub struct DegenerationFamily {
    /// Name of the algebra being transported along the curve.
    pub source: String,
    /// Name of the algebra the transported product limits to at `t = 0`.
    pub target: String,
    pub matrix: RfMatrix,
    pub note: Option<String>,
}

/// Structure constants as rational functions of the curve parameter.
pub type RfTensor = Vec<Vec<Vec<RatFunction>>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("curve matrix must be {0}x{0}")]
    ShapeMismatch(usize),
    #[error("curve matrix is singular as a rational-function matrix")]
    IdenticallySingular,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LimitError {
    #[error("structure constant c[{i}][{j}][{k}] has a pole at t = 0")]
    Pole { i: usize, j: usize, k: usize },
    #[error("limit product is not commutative at basis pair ({0},{1})")]
    NotCommutative(usize, usize),
    #[error("limit product is not associative at basis triple ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrowError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error("limit differs from the target at c[{i}][{j}][{k}]")]
    TensorMismatch { i: usize, j: usize, k: usize },
    #[error("curve matrix is not evaluable and invertible at t = 1")]
    NotInvertibleAtOne,
    #[error("transport at t = 1 changed the fingerprint, so the generic fiber left the orbit")]
    GenericFiberChanged,
}

/// Transports `a` along the curve: `c_t[i][j] = g(t)⁻¹ · μ(g(t)e_i, g(t)e_j)`.
pub fn transport_family(a: &Algebra, g: &RfMatrix) -> Result<RfTensor, FamilyError> {
    let n = a.dim();
    if g.rows() != n || g.cols() != n {
        return Err(FamilyError::ShapeMismatch(n));
    }
    let g_inv = g.inverse().map_err(|_| FamilyError::IdenticallySingular)?;
    let cols: Vec<Vec<RatFunction>> = (0..n).map(|i| g.col(i)).collect();
    let mut tensor = vec![vec![vec![RatFunction::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            // μ(g e_i, g e_j) with rational-function coordinates.
            let mut prod = vec![RatFunction::zero(); n];
            for p in 0..n {
                if cols[i][p].is_zero() {
                    continue;
                }
                for q in 0..n {
                    if cols[j][q].is_zero() {
                        continue;
                    }
                    let factor = &cols[i][p] * &cols[j][q];
                    for (k, c) in a.basis_product(p, q).iter().enumerate() {
                        if !c.is_zero() {
                            let term = &factor * &RatFunction::constant(c.clone());
                            prod[k] = &prod[k] + &term;
                        }
                    }
                }
            }
            tensor[i][j] = g_inv.mul_vec(&prod);
        }
    }
    Ok(tensor)
}

/// Entrywise limit of a structure tensor at `t → 0`, validated as a
/// commutative associative product.
pub fn limit_at_zero(name: impl Into<String>, tensor: &RfTensor) -> Result<Algebra, LimitError> {
    let n = tensor.len();
    let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
    for (i, plane) in tensor.iter().enumerate() {
        for (j, row) in plane.iter().enumerate() {
            for (k, entry) in row.iter().enumerate() {
                c[i][j][k] = entry.limit_at_zero().ok_or(LimitError::Pole { i, j, k })?;
            }
        }
    }
    let limit = Algebra::new(name, n, c).expect("shape constructed to match");
    if let Some((i, j)) = limit.check_commutative() {
        return Err(LimitError::NotCommutative(i, j));
    }
    if let Some((i, j, k)) = limit.check_associative() {
        return Err(LimitError::NotAssociative(i, j, k));
    }
    Ok(limit)
}

/// Certificate for a verified arrow: the orbit dimensions of both ends.
///
/// A proper degeneration strictly decreases orbit dimension, so callers can
/// assert `limit_orbit_dim < transported_orbit_dim` for every shipped family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrowCertificate {
    pub transported_orbit_dim: usize,
    pub limit_orbit_dim: usize,
}

/// Verifies a family against the two algebras it names.
///
/// Passing means: the transported tensor has an entrywise limit at `t = 0`
/// equal to the target's structure constants (strict tensor equality), and
/// the curve is invertible at `t = 1` with an unchanged fingerprint there, so
/// the generic fiber genuinely stays in the source's orbit.
pub fn verify_arrow(
    fam: &DegenerationFamily,
    source: &Algebra,
    target: &Algebra,
) -> Result<ArrowCertificate, ArrowError> {
    let tensor = transport_family(source, &fam.matrix)?;
    let limit = limit_at_zero(format!("{}@limit", fam.source), &tensor)?;
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            for k in 0..source.dim() {
                if limit.structure_constant(i, j, k) != target.structure_constant(i, j, k) {
                    return Err(ArrowError::TensorMismatch { i, j, k });
                }
            }
        }
    }
    let at_one = fam
        .matrix
        .eval(&Rational::one())
        .ok_or(ArrowError::NotInvertibleAtOne)?;
    let generic = source
        .transport(&at_one)
        .map_err(|_| ArrowError::NotInvertibleAtOne)?;
    if fingerprint(&generic) != fingerprint(source) {
        return Err(ArrowError::GenericFiberChanged);
    }
    Ok(ArrowCertificate {
        transported_orbit_dim: source.orbit_dimension(),
        limit_orbit_dim: target.orbit_dimension(),
    })
}

/// Shape of the pair (trace vector `v`, trace form `T`) with respect to the
/// identity `T = β·v·vᵀ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceShape {
    /// `v = 0` and `T = 0`.
    Zero,
    /// `v ≠ 0` and `T = β·v·vᵀ` for the (unique) recorded β.
    Proportional(Rational),
    /// No β satisfies the identity.
    NotProportional,
}

/// Classifies the trace data of an algebra.
pub fn trace_shape(a: &Algebra) -> TraceShape {
    let v = a.trace_vector();
    let t = a.trace_form();
    let n = a.dim();
    if v.iter().all(Zero::is_zero) {
        return if t.is_zero() {
            TraceShape::Zero
        } else {
            TraceShape::NotProportional
        };
    }
    let p = v.iter().position(|x| !x.is_zero()).unwrap();
    let beta = t.at(p, p).clone() / (&v[p] * &v[p]);
    for i in 0..n {
        for j in 0..n {
            if *t.at(i, j) != &beta * &(&v[i] * &v[j]) {
                return TraceShape::NotProportional;
            }
        }
    }
    TraceShape::Proportional(beta)
}

/// Orbit-dimension obstruction for the arrow `source → target` (meaning:
/// source lies in the closure of the target's orbit). A proper degeneration
/// strictly shrinks orbit dimension, so the arrow is impossible whenever the
/// source's orbit is at least as large as the target's while the two algebras
/// are distinguishable by fingerprint.
pub fn orbit_dimension_obstructed(arrow_source: &Algebra, arrow_target: &Algebra) -> bool {
    arrow_source.orbit_dimension() >= arrow_target.orbit_dimension()
        && fingerprint(arrow_source) != fingerprint(arrow_target)
}

/// Trace-proportionality obstruction for the arrow `source → target`.
///
/// Under a base change `g` the invariants move by `v ↦ gᵀv`, `T ↦ gᵀTg`, so
/// `T = β·v·vᵀ` transports with the same β and passes to entrywise limits.
/// If the transported algebra satisfies the identity, every limit must repeat
/// the same β or collapse to `v = 0, T = 0`; a source violating that cannot
/// be reached.
pub fn trace_shape_obstructed(arrow_source: &Algebra, arrow_target: &Algebra) -> bool {
    match trace_shape(arrow_target) {
        TraceShape::Zero => trace_shape(arrow_source) != TraceShape::Zero,
        TraceShape::Proportional(beta) => !matches!(
            trace_shape(arrow_source),
            TraceShape::Zero) && trace_shape(arrow_source) != TraceShape::Proportional(beta),
        TraceShape::NotProportional => false,
    }
}

/// Result of a bounded degeneration search.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(DegenerationFamily),
    NotFound {
        obstruction: String,
        candidates_tried: usize,
    },
}

/// Searches for a family certifying the arrow `source → target`, i.e. a curve
/// transporting `target` whose limit is exactly `source`.
///
/// The orbit-dimension obstruction is checked first. Candidates then have the
/// shape `g = P · diag(t^{a₁..a_n}) · Q` with exponents in `[-3, 3]` and `P`,
/// `Q` drawn from a deterministic catalogue of invertible integer matrices
/// with entries in `[-2, 2]` (identity first, then increasing entry norm,
/// lexicographic within a norm block). Candidates are enumerated by the
/// weighted complexity `sᵃ + sᴾ + 50·s^Q` of the three indices, so simple
/// exponent/P combinations are exhausted before Q starts to vary. A candidate
/// whose limit exists but lands off the catalog representative may be
/// finished by one constant base change over the signed permutations.
pub fn search_degeneration(source: &Algebra, target: &Algebra, budget: usize) -> SearchOutcome {
    let n = source.dim();
    assert_eq!(n, target.dim(), "search requires equal dimensions");

    if target.orbit_dimension() <= source.orbit_dimension()
        && fingerprint(source) != fingerprint(target)
    {
        return SearchOutcome::NotFound {
            obstruction: "orbit dimension".into(),
            candidates_tried: 0,
        };
    }

    let exps = exponent_vectors(n);
    let mats = base_change_catalogue(n);
    let fixups = signed_permutations(n);
    let mut tried = 0usize;

    let max_s = (exps.len() - 1) + (mats.len() - 1) + 50 * (mats.len() - 1);
    for s in 0..=max_s {
        for iq in 0..=(s / 50).min(mats.len() - 1) {
            let rem = s - 50 * iq;
            for ia in 0..=rem.min(exps.len() - 1) {
                let ip = rem - ia;
                if ip >= mats.len() {
                    continue;
                }
                if tried >= budget {
                    return SearchOutcome::NotFound {
                        obstruction: "budget exhausted".into(),
                        candidates_tried: tried,
                    };
                }
                tried += 1;
                let g = assemble_curve(&mats[ip], &exps[ia], &mats[iq]);
                let Ok(tensor) = transport_family(target, &g) else {
                    continue;
                };
                let Ok(limit) = limit_at_zero("candidate", &tensor) else {
                    continue;
                };
                if limit.same_products(source) {
                    return SearchOutcome::Found(DegenerationFamily {
                        source: target.name().to_string(),
                        target: source.name().to_string(),
                        matrix: g,
                        note: Some("found by bounded family search".into()),
                    });
                }
                for h in &fixups {
                    if limit
                        .transport(h)
                        .is_ok_and(|moved| moved.same_products(source))
                    {
                        let matrix = &g * &RfMatrix::from_rat_matrix(h);
                        return SearchOutcome::Found(DegenerationFamily {
                            source: target.name().to_string(),
                            target: source.name().to_string(),
                            matrix,
                            note: Some(
                                "found by bounded family search with a final constant base change"
                                    .into(),
                            ),
                        });
                    }
                }
            }
        }
    }
    SearchOutcome::NotFound {
        obstruction: "candidate space exhausted".into(),
        candidates_tried: tried,
    }
}

/// `g = P · diag(t^{a₁..a_n}) · Q` assembled entrywise.
fn assemble_curve(p: &RatMatrix, exps: &[i64], q: &RatMatrix) -> RfMatrix {
    let n = exps.len();
    let mut g = RfMatrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            let mut acc = RatFunction::zero();
            for k in 0..n {
                if p.at(r, k).is_zero() || q.at(k, c).is_zero() {
                    continue;
                }
                let coeff = p.at(r, k) * q.at(k, c);
                let term = &RatFunction::constant(coeff) * &RatFunction::t_power(exps[k]);
                acc = &acc + &term;
            }
            *g.at_mut(r, c) = acc;
        }
    }
    g
}

/// All exponent vectors in `[-3, 3]^n`, sorted by (sum of absolute values,
/// lexicographic order).
fn exponent_vectors(n: usize) -> Vec<Vec<i64>> {
    let mut all = Vec::new();
    let mut cur = vec![0i64; n];
    fill_exponents(n, 0, &mut cur, &mut all);
    all.sort_by_key(|v| {
        let norm: i64 = v.iter().map(|x| x.abs()).sum();
        (norm, v.clone())
    });
    all
}

fn fill_exponents(n: usize, at: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if at == n {
        out.push(cur.clone());
        return;
    }
    for v in -3..=3 {
        cur[at] = v;
        fill_exponents(n, at + 1, cur, out);
    }
}

/// Deterministic catalogue of invertible integer matrices with entries in
/// `[-2, 2]`: the identity, then blocks of increasing total entry norm, each
/// block sorted lexicographically by flattened entries; capped in size.
fn base_change_catalogue(n: usize) -> Vec<RatMatrix> {
    const CAP: usize = 320;
    let mut list = vec![RatMatrix::identity(n)];
    let mut norm = n as i64; // minimum entry norm of an invertible matrix
    while list.len() < CAP && norm <= 2 * (n * n) as i64 {
        let mut block = Vec::new();
        let mut cur = vec![0i64; n * n];
        fill_norm_vectors(n * n, 0, norm, &mut cur, &mut block);
        block.sort();
        for flat in block {
            if list.len() >= CAP {
                break;
            }
            if det_i64(n, &flat) == 0 {
                continue;
            }
            let m = RatMatrix::from_i64(n, n, &flat);
            if m == list[0] {
                continue; // identity already listed first
            }
            list.push(m);
        }
        norm += 1;
    }
    list
}

/// All integer vectors of the given length with entries in `[-2, 2]` and the
/// exact total absolute norm.
fn fill_norm_vectors(len: usize, at: usize, remaining: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if at == len {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let slots_left = (len - at - 1) as i64;
    for v in -2i64..=2 {
        let rest = remaining - v.abs();
        if rest < 0 || rest > 2 * slots_left {
            continue;
        }
        cur[at] = v;
        fill_norm_vectors(len, at + 1, rest, cur, out);
    }
    cur[at] = 0;
}

/// Integer determinant of a small flattened matrix (cofactor expansion).
fn det_i64(n: usize, flat: &[i64]) -> i64 {
    match n {
        1 => flat[0],
        2 => flat[0] * flat[3] - flat[1] * flat[2],
        3 => {
            flat[0] * (flat[4] * flat[8] - flat[5] * flat[7])
                - flat[1] * (flat[3] * flat[8] - flat[5] * flat[6])
                + flat[2] * (flat[3] * flat[7] - flat[4] * flat[6])
        }
        _ => {
            let m = RatMatrix::from_i64(n, n, flat);
            if m.det().is_zero() {
                0
            } else {
                1
            }
        }
    }
}

/// The signed permutation matrices in a deterministic order.
fn signed_permutations(n: usize) -> Vec<RatMatrix> {
    let mut perms = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut perms);
    let mut out = Vec::new();
    for p in &perms {
        for signs in 0..(1u32 << n) {
            let mut m = RatMatrix::zero(n, n);
            for (col, &row) in p.iter().enumerate() {
                let v = if signs & (1 << col) == 0 { 1 } else { -1 };
                *m.at_mut(row, col) = crate::exact::rational::rat_int(v);
            }
            out.push(m);
        }
    }
    out
}

fn permute(items: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
    if at == items.len() {
        out.push(items.clone());
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, out);
        items.swap(at, i);
    }
}
