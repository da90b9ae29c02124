//! Affine maps and the exponential of the affine representation attached to
//! a left-symmetric product.
//!
//! A product with coordinates `x` yields the `(n+1)×(n+1)` block matrix
//! `[[L_x, x], [0, 0]]`; its exponential is an affine map `v ↦ Av + τ`. When
//! `L_x` is nilpotent the series terminates and the map is exact-rational;
//! otherwise a scaling-and-squaring exponential produces a float map. The
//! closed-form actions shipped as data are compared against this exponential,
//! which is the source of truth.

use std::collections::HashMap;
use std::fmt;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::exact::matrix::{MatrixError, RatMatrix};
use crate::exact::rational::{format_rational, rat_int, to_f64, Rational};
use crate::expr::{EvalError, Expr};

/// Seed for the deterministic parameter draws used by the comparison and
/// group-law checks.
const PARAM_SEED: u64 = 0x5eed_ac7e;

/// Exact affine map `v ↦ Av + τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMapQ {
    pub linear: RatMatrix,
    pub translation: Vec<Rational>,
}

impl AffineMapQ {
    pub fn identity(n: usize) -> Self {
        AffineMapQ {
            linear: RatMatrix::identity(n),
            translation: vec![Rational::zero(); n],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    /// Composition `(A,τ)∘(A′,τ′) = (AA′, Aτ′ + τ)`.
    pub fn compose(&self, other: &AffineMapQ) -> AffineMapQ {
        let linear = &self.linear * &other.linear;
        let mut translation = self.linear.mul_vec(&other.translation);
        for (t, s) in translation.iter_mut().zip(&self.translation) {
            *t = t.clone() + s;
        }
        AffineMapQ { linear, translation }
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = self.linear.mul_vec(v);
        for (o, t) in out.iter_mut().zip(&self.translation) {
            *o = o.clone() + t;
        }
        out
    }

    pub fn inverse(&self) -> Result<AffineMapQ, MatrixError> {
        let inv = self.linear.inverse()?;
        let translation = inv
            .mul_vec(&self.translation)
            .into_iter()
            .map(|t| -t)
            .collect();
        Ok(AffineMapQ { linear: inv, translation })
    }

    /// Homogeneous `(n+1)×(n+1)` form with last row `(0, …, 0, 1)`.
    pub fn homogeneous(&self) -> RatMatrix {
        let n = self.dim();
        let mut m = RatMatrix::zero(n + 1, n + 1);
        for r in 0..n {
            for c in 0..n {
                *m.at_mut(r, c) = self.linear.at(r, c).clone();
            }
            *m.at_mut(r, n) = self.translation[r].clone();
        }
        *m.at_mut(n, n) = Rational::one();
        m
    }

    pub fn is_identity(&self) -> bool {
        self.linear == RatMatrix::identity(self.dim())
            && self.translation.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> AffineMapF {
        let n = self.dim();
        let linear = (0..n)
            .map(|r| (0..n).map(|c| to_f64(self.linear.at(r, c))).collect())
            .collect();
        let translation = self.translation.iter().map(to_f64).collect();
        AffineMapF { linear, translation }
    }
}

impl fmt::Display for AffineMapQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        write!(f, "linear [")?;
        for r in 0..n {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..n {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rational(self.linear.at(r, c)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "], translation (")?;
        for (i, t) in self.translation.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(t))?;
        }
        write!(f, ")")
    }
}

/// Float affine map `v ↦ Av + τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMapF {
    pub linear: Vec<Vec<f64>>,
    pub translation: Vec<f64>,
}

impl AffineMapF {
    pub fn identity(n: usize) -> Self {
        let linear = (0..n)
            .map(|r| (0..n).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
            .collect();
        AffineMapF { linear, translation: vec![0.0; n] }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn compose(&self, other: &AffineMapF) -> AffineMapF {
        let n = self.dim();
        let mut linear = vec![vec![0.0; n]; n];
        let mut translation = self.translation.clone();
        for r in 0..n {
            for c in 0..n {
                linear[r][c] = (0..n).map(|k| self.linear[r][k] * other.linear[k][c]).sum();
            }
            translation[r] += (0..n)
                .map(|k| self.linear[r][k] * other.translation[k])
                .sum::<f64>();
        }
        AffineMapF { linear, translation }
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|r| {
                self.translation[r]
                    + (0..n).map(|c| self.linear[r][c] * v[c]).sum::<f64>()
            })
            .collect()
    }

    /// Largest entrywise absolute difference over both blocks.
    pub fn max_deviation(&self, other: &AffineMapF) -> f64 {
        let mut dev: f64 = 0.0;
        for (r1, r2) in self.linear.iter().zip(&other.linear) {
            for (a, b) in r1.iter().zip(r2) {
                dev = dev.max((a - b).abs());
            }
        }
        for (a, b) in self.translation.iter().zip(&other.translation) {
            dev = dev.max((a - b).abs());
        }
        dev
    }

    pub fn deviation_from_identity(&self) -> f64 {
        self.max_deviation(&AffineMapF::identity(self.dim()))
    }

    pub fn det_linear(&self) -> f64 {
        det_f64(&self.linear)
    }
}

impl fmt::Display for AffineMapF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "linear [")?;
        for (r, row) in self.linear.iter().enumerate() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", fmt_f64(*v))?;
            }
            write!(f, "]")?;
        }
        write!(f, "], translation (")?;
        for (i, t) in self.translation.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_f64(*t))?;
        }
        write!(f, ")")
    }
}

/// Formats a float with 15 significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let s = format!("{v:.14e}");
    // Trim trailing zeros in the mantissa for readability.
    if let Some((mant, exp)) = s.split_once('e') {
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        let e: i32 = exp.parse().unwrap_or(0);
        if (-4..=15).contains(&e) {
            // Re-render small exponents in plain notation.
            let plain = format!("{v:.*}", (14 - e).max(0) as usize);
            let plain = if plain.contains('.') {
                plain.trim_end_matches('0').trim_end_matches('.').to_string()
            } else {
                plain
            };
            return plain;
        }
        return format!("{mant}e{e}");
    }
    s
}

/// The `(n+1)×(n+1)` representation matrix `[[L_x, x], [0, 0]]`.
pub fn rep_matrix(a: &Algebra, x: &[Rational]) -> RatMatrix {
    let n = a.dim();
    assert_eq!(x.len(), n, "coordinate length mismatch");
    let l = a.left_mult(x);
    let mut m = RatMatrix::zero(n + 1, n + 1);
    for r in 0..n {
        for c in 0..n {
            *m.at_mut(r, c) = l.at(r, c).clone();
        }
        *m.at_mut(r, n) = x[r].clone();
    }
    m
}

/// Exact exponential of a nilpotent square matrix; `None` when the matrix is
/// not nilpotent (the series would not terminate).
pub fn exp_exact(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "exponential requires a square matrix");
    let mut sum = RatMatrix::identity(n);
    let mut power = RatMatrix::identity(n);
    let mut factorial = Rational::one();
    for k in 1..=n {
        power = &power * m;
        if power.is_zero() {
            return Some(sum);
        }
        factorial = factorial * rat_int(k as i64);
        sum = &sum + &power.scale(&factorial.recip());
    }
    // A nilpotent n×n matrix vanishes by its n-th power.
    None
}

/// Scaling-and-squaring float exponential: halve until the 1-norm is below
/// 1/2, run an 18-term series, then square back up.
pub fn exp_f64(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    let norm = (0..n)
        .map(|c| (0..n).map(|r| m[r][c].abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm / scale >= 0.5 {
        squarings += 1;
        scale *= 2.0;
    }
    let scaled: Vec<Vec<f64>> = m
        .iter()
        .map(|row| row.iter().map(|v| v / scale).collect())
        .collect();
    let mut sum = identity_f64(n);
    let mut power = identity_f64(n);
    let mut factorial = 1.0;
    for k in 1..=18u32 {
        power = mul_f64(&power, &scaled);
        factorial *= f64::from(k);
        for r in 0..n {
            for c in 0..n {
                sum[r][c] += power[r][c] / factorial;
            }
        }
    }
    for _ in 0..squarings {
        sum = mul_f64(&sum, &sum);
    }
    sum
}

fn identity_f64(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|r| (0..n).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn mul_f64(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for r in 0..n {
        for c in 0..n {
            out[r][c] = (0..n).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

fn det_f64(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() < 1e-300 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    det
}

/// Exact affine action `exp([[L_x, x], [0, 0]])`; `None` unless `L_x` is
/// nilpotent.
pub fn exp_action_exact(a: &Algebra, x: &[Rational]) -> Option<AffineMapQ> {
    let n = a.dim();
    let e = exp_exact(&rep_matrix(a, x))?;
    let mut linear = RatMatrix::zero(n, n);
    let mut translation = Vec::with_capacity(n);
    for r in 0..n {
        for c in 0..n {
            *linear.at_mut(r, c) = e.at(r, c).clone();
        }
        translation.push(e.at(r, n).clone());
    }
    Some(AffineMapQ { linear, translation })
}

/// Float affine action built directly from float structure constants.
pub fn exp_action_f64(a: &Algebra, x: &[f64]) -> AffineMapF {
    let n = a.dim();
    assert_eq!(x.len(), n, "coordinate length mismatch");
    let mut rep = vec![vec![0.0; n + 1]; n + 1];
    for j in 0..n {
        for k in 0..n {
            rep[k][j] = (0..n)
                .map(|i| x[i] * to_f64(a.structure_constant(i, j, k)))
                .sum();
        }
    }
    for (r, &v) in x.iter().enumerate() {
        rep[r][n] = v;
    }
    let e = exp_f64(&rep);
    let linear = (0..n).map(|r| e[r][..n].to_vec()).collect();
    let translation = (0..n).map(|r| e[r][n]).collect();
    AffineMapF { linear, translation }
}

/// Float affine action that prefers the exact nilpotent path.
pub fn exp_action(a: &Algebra, x: &[Rational]) -> AffineMapF {
    if let Some(exact) = exp_action_exact(a, x) {
        return exact.to_f64();
    }
    let xf: Vec<f64> = x.iter().map(to_f64).collect();
    exp_action_f64(a, &xf)
}

#[derive(Debug, Error)]
pub enum ActionError {
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("component {component} uses unknown variable `{variable}`")]
    UnknownVariable { component: usize, variable: String },
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
}

/// A closed-form affine action: the image of a point under the group element
/// with the given parameters, one expression per coordinate.
#[derive(Debug, Clone)]
pub struct ClosedFormAction {
    pub name: String,
    pub params: Vec<String>,
    pub coords: Vec<String>,
    pub components: Vec<Expr>,
}

impl ClosedFormAction {
    pub fn new(
        name: impl Into<String>,
        params: Vec<String>,
        coords: Vec<String>,
        components: Vec<Expr>,
    ) -> Result<Self, ActionError> {
        if components.len() != coords.len() {
            return Err(ActionError::ComponentCount {
                expected: coords.len(),
                got: components.len(),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in params.iter().chain(&coords) {
            if !seen.insert(v.clone()) {
                return Err(ActionError::DuplicateVariable(v.clone()));
            }
        }
        for (i, comp) in components.iter().enumerate() {
            for v in comp.variables() {
                if !seen.contains(&v) {
                    return Err(ActionError::UnknownVariable {
                        component: i,
                        variable: v,
                    });
                }
            }
        }
        Ok(ClosedFormAction {
            name: name.into(),
            params,
            coords,
            components,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Extracts the affine map at the given parameter values by evaluating
    /// the components at the origin and at each coordinate basis point.
    pub fn evaluate(&self, params: &[f64]) -> Result<AffineMapF, EvalError> {
        let n = self.dim();
        assert_eq!(params.len(), self.params.len(), "parameter count mismatch");
        let mut env: HashMap<String, f64> = self
            .params
            .iter()
            .cloned()
            .zip(params.iter().copied())
            .collect();
        for c in &self.coords {
            env.insert(c.clone(), 0.0);
        }
        let translation: Vec<f64> = self
            .components
            .iter()
            .map(|c| c.eval_f64(&env))
            .collect::<Result<_, _>>()?;
        let mut linear = vec![vec![0.0; n]; n];
        for j in 0..n {
            env.insert(self.coords[j].clone(), 1.0);
            for (i, comp) in self.components.iter().enumerate() {
                linear[i][j] = comp.eval_f64(&env)? - translation[i];
            }
            env.insert(self.coords[j].clone(), 0.0);
        }
        Ok(AffineMapF { linear, translation })
    }

    /// Exact evaluation; fails unless every transcendental argument reduces
    /// to zero at the given parameters.
    pub fn evaluate_exact(&self, params: &[Rational]) -> Result<AffineMapQ, EvalError> {
        let n = self.dim();
        assert_eq!(params.len(), self.params.len(), "parameter count mismatch");
        let mut env: HashMap<String, Rational> = self
            .params
            .iter()
            .cloned()
            .zip(params.iter().cloned())
            .collect();
        for c in &self.coords {
            env.insert(c.clone(), Rational::zero());
        }
        let translation: Vec<Rational> = self
            .components
            .iter()
            .map(|c| c.eval_exact(&env))
            .collect::<Result<_, _>>()?;
        let mut linear = RatMatrix::zero(n, n);
        for j in 0..n {
            env.insert(self.coords[j].clone(), Rational::one());
            for (i, comp) in self.components.iter().enumerate() {
                *linear.at_mut(i, j) = comp.eval_exact(&env)? - &translation[i];
            }
            env.insert(self.coords[j].clone(), Rational::zero());
        }
        Ok(AffineMapQ { linear, translation })
    }

    /// Direct evaluation of the components at explicit parameter and point
    /// values, without assuming affineness.
    pub fn evaluate_at_point(&self, params: &[f64], point: &[f64]) -> Result<Vec<f64>, EvalError> {
        let mut env: HashMap<String, f64> = self
            .params
            .iter()
            .cloned()
            .zip(params.iter().copied())
            .collect();
        for (c, v) in self.coords.iter().zip(point) {
            env.insert(c.clone(), *v);
        }
        self.components.iter().map(|c| c.eval_f64(&env)).collect()
    }
}

#[derive(Debug, Error)]
pub enum CompareFailure {
    #[error("closed form could not be evaluated at draw {draw}: {source}")]
    Eval {
        draw: usize,
        #[source]
        source: EvalError,
    },
    #[error("deviation {deviation:.3e} exceeds tolerance at draw {draw}, parameters {params:?}")]
    Deviation {
        draw: usize,
        params: Vec<f64>,
        deviation: f64,
    },
}

/// Outcome of a passing closed-form comparison.
#[derive(Debug, Clone, Copy)]
pub struct CompareReport {
    pub trials: usize,
    pub max_deviation: f64,
}

/// Compares a closed-form action against `exp(rep)` at deterministic random
/// parameter draws in `[-2, 2]^k`, including an affineness spot check at a
/// random point.
pub fn compare_closed_form(
    a: &Algebra,
    cf: &ClosedFormAction,
    trials: usize,
    tol: f64,
) -> Result<CompareReport, CompareFailure> {
    assert_eq!(a.dim(), cf.dim(), "algebra and action dimensions differ");
    let mut rng = ChaCha8Rng::seed_from_u64(PARAM_SEED);
    let mut max_deviation: f64 = 0.0;
    for draw in 0..trials {
        let params: Vec<f64> = (0..cf.params.len())
            .map(|_| rng.gen_range(-2.0..=2.0))
            .collect();
        let point: Vec<f64> = (0..cf.dim()).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let printed = cf
            .evaluate(&params)
            .map_err(|source| CompareFailure::Eval { draw, source })?;
        let computed = exp_action_f64(a, &params);
        let mut deviation = printed.max_deviation(&computed);
        let direct = cf
            .evaluate_at_point(&params, &point)
            .map_err(|source| CompareFailure::Eval { draw, source })?;
        for (d, e) in direct.iter().zip(printed.apply(&point)) {
            deviation = deviation.max((d - e).abs());
        }
        if deviation > tol {
            return Err(CompareFailure::Deviation {
                draw,
                params,
                deviation,
            });
        }
        max_deviation = max_deviation.max(deviation);
    }
    Ok(CompareReport {
        trials,
        max_deviation,
    })
}

#[derive(Debug, Error)]
pub enum GroupLawFailure {
    #[error("representation matrices fail to commute for x = ({}), y = ({})", fmt_coords(.x), fmt_coords(.y))]
    RepsDontCommute { x: Vec<Rational>, y: Vec<Rational> },
    #[error("exp action not additive (deviation {deviation:.3e}) for x = ({}), y = ({})", fmt_coords(.x), fmt_coords(.y))]
    NotAdditive {
        x: Vec<Rational>,
        y: Vec<Rational>,
        deviation: f64,
    },
}

fn fmt_coords(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

/// Verifies that the representation is abelian: representation matrices
/// commute exactly and `exp` turns coordinate addition into composition
/// (within `1e-9`), over deterministic integer draws in `[-2, 2]^n`.
pub fn group_law_check(a: &Algebra, trials: usize) -> Result<(), GroupLawFailure> {
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(PARAM_SEED ^ 0x600d_1a3);
    for _ in 0..trials {
        let x: Vec<Rational> = (0..n).map(|_| rat_int(rng.gen_range(-2..=2))).collect();
        let y: Vec<Rational> = (0..n).map(|_| rat_int(rng.gen_range(-2..=2))).collect();
        let rx = rep_matrix(a, &x);
        let ry = rep_matrix(a, &y);
        if &rx * &ry != &ry * &rx {
            return Err(GroupLawFailure::RepsDontCommute { x, y });
        }
        let sum: Vec<Rational> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        let composed = exp_action(a, &x).compose(&exp_action(a, &y));
        let added = exp_action(a, &sum);
        let deviation = composed.max_deviation(&added);
        if deviation > 1e-9 {
            return Err(GroupLawFailure::NotAdditive { x, y, deviation });
        }
    }
    Ok(())
}

/// Domain predicate for the translation parts of a two-dimensional action.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// The whole plane.
    All,
    /// The half-plane `x > -1`.
    HalfPlaneXAboveMinusOne,
    /// The plane minus one excluded point.
    Punctured { exclude: (f64, f64) },
}

#[derive(Debug, Clone, Copy)]
pub struct DomainReport {
    pub samples: usize,
    /// Boundary-approach evidence: the smallest gap to the forbidden set, or
    /// the attained span for the unconstrained domain.
    pub evidence: f64,
}

#[derive(Debug, Error)]
pub enum DomainViolation {
    #[error("translation part ({0}, {1}) leaves the stated domain")]
    OutsideDomain(f64, f64),
    #[error("sampled translations stay {0} away from the domain boundary")]
    NoDensityEvidence(f64),
}

/// Samples translation parts of `exp(rep)` over a deterministic parameter
/// grid in `[-6, 6]²` and checks them against a domain predicate, including
/// evidence that the samples approach the domain's boundary.
pub fn translation_image_sample(
    a: &Algebra,
    domain: &Domain,
    samples: usize,
) -> Result<DomainReport, DomainViolation> {
    assert_eq!(a.dim(), 2, "domain sampling is for two-dimensional actions");
    let k = (samples as f64).sqrt().ceil().max(2.0) as usize;
    let grid: Vec<f64> = (0..k)
        .map(|i| -6.0 + 12.0 * (i as f64) / ((k - 1) as f64))
        .collect();
    let mut points = Vec::with_capacity(k * k);
    for p in &grid {
        for q in &grid {
            points.push(exp_action_f64(a, &[*p, *q]).translation);
        }
    }
    let count = points.len();
    match domain {
        Domain::All => {
            let mut span = f64::INFINITY;
            for axis in 0..2 {
                let min = points.iter().map(|t| t[axis]).fold(f64::INFINITY, f64::min);
                let max = points
                    .iter()
                    .map(|t| t[axis])
                    .fold(f64::NEG_INFINITY, f64::max);
                if min > -5.9 || max < 5.9 {
                    return Err(DomainViolation::NoDensityEvidence(max - min));
                }
                span = span.min(max - min);
            }
            Ok(DomainReport {
                samples: count,
                evidence: span,
            })
        }
        Domain::HalfPlaneXAboveMinusOne => {
            let mut gap = f64::INFINITY;
            for t in &points {
                if t[0] <= -1.0 {
                    return Err(DomainViolation::OutsideDomain(t[0], t[1]));
                }
                gap = gap.min(t[0] + 1.0);
            }
            if gap >= 0.01 {
                return Err(DomainViolation::NoDensityEvidence(gap));
            }
            Ok(DomainReport {
                samples: count,
                evidence: gap,
            })
        }
        Domain::Punctured { exclude } => {
            let mut gap = f64::INFINITY;
            for t in &points {
                let d = ((t[0] - exclude.0).powi(2) + (t[1] - exclude.1).powi(2)).sqrt();
                if d < 1e-12 {
                    return Err(DomainViolation::OutsideDomain(t[0], t[1]));
                }
                gap = gap.min(d);
            }
            if gap >= 0.01 {
                return Err(DomainViolation::NoDensityEvidence(gap));
            }
            Ok(DomainReport {
                samples: count,
                evidence: gap,
            })
        }
    }
}
