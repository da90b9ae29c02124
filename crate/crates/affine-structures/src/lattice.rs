//! Integer affine families: group closure with discovered composition laws,
//! integral inverses, fixed-point-freeness on a stated domain, and descent to
//! torus maps.
//!
//! A [`CrystalFamily`] stores an affine map pattern whose entries are
//! expressions in integer parameters. Closure and inversion are decided
//! exactly: a composed or inverted map is matched back onto the pattern by an
//! exact Newton solve (patterns are polynomial, so the iteration terminates),
//! and the solution must be integral. Composition laws have the shape
//! `params″ = params + params′ + (bilinear term)`, which the checker fits
//! from basis pairs and re-verifies on every draw.

use std::collections::BTreeSet;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::action::AffineMapQ;
use crate::exact::matrix::RatMatrix;
use crate::exact::rational::{format_rational, rat_int, Rational};
use crate::expr::{EvalError, Expr};

/// Seed for the deterministic integer parameter draws.
const LATTICE_SEED: u64 = 0x5eed_c275;

/// Domain on which a family must act without fixed points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrystalDomain {
    /// The whole space.
    All,
    /// The half-space `x > -1` (first coordinate).
    HalfSpaceXAboveMinusOne,
}

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("linear pattern must be {0}×{0}")]
    LinearShape(usize),
    #[error("translation pattern must have length {0}")]
    TranslationShape(usize),
    #[error("pattern uses unknown variable `{0}`")]
    UnknownVariable(String),
}

/// An affine map pattern with integer parameters.
#[derive(Debug, Clone)]
pub struct CrystalFamily {
    pub name: String,
    pub dim: usize,
    pub params: Vec<String>,
    pub linear: Vec<Vec<Expr>>,
    pub translation: Vec<Expr>,
    pub domain: CrystalDomain,
}

impl CrystalFamily {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        params: Vec<String>,
        linear: Vec<Vec<Expr>>,
        translation: Vec<Expr>,
        domain: CrystalDomain,
    ) -> Result<Self, PatternError> {
        if linear.len() != dim || linear.iter().any(|row| row.len() != dim) {
            return Err(PatternError::LinearShape(dim));
        }
        if translation.len() != dim {
            return Err(PatternError::TranslationShape(dim));
        }
        let allowed: BTreeSet<&String> = params.iter().collect();
        for e in linear.iter().flatten().chain(&translation) {
            for v in e.variables() {
                if !allowed.contains(&v) {
                    return Err(PatternError::UnknownVariable(v));
                }
            }
        }
        Ok(CrystalFamily {
            name: name.into(),
            dim,
            params,
            linear,
            translation,
            domain,
        })
    }

    #[inline]
    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    /// The family element at integer parameters.
    pub fn element(&self, params: &[i64]) -> Result<AffineMapQ, EvalError> {
        let rational: Vec<Rational> = params.iter().map(|&v| rat_int(v)).collect();
        self.element_rational(&rational)
    }

    /// The pattern evaluated at arbitrary rational parameters.
    pub fn element_rational(&self, params: &[Rational]) -> Result<AffineMapQ, EvalError> {
        assert_eq!(params.len(), self.param_count(), "parameter count mismatch");
        let env: std::collections::HashMap<String, Rational> = self
            .params
            .iter()
            .cloned()
            .zip(params.iter().cloned())
            .collect();
        let mut linear = RatMatrix::zero(self.dim, self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                *linear.at_mut(r, c) = self.linear[r][c].eval_exact(&env)?;
            }
        }
        let translation = self
            .translation
            .iter()
            .map(|e| e.eval_exact(&env))
            .collect::<Result<_, _>>()?;
        Ok(AffineMapQ { linear, translation })
    }
}

/// Matches a concrete affine map back onto the family pattern: returns the
/// parameter vector reproducing it exactly, if one exists.
///
/// Polynomial patterns are handled by an exact Newton iteration — each step
/// solves the linearization of the pattern at the current estimate — which
/// terminates in a few steps for the triangular parameter dependencies that
/// occur here. The result is verified by re-evaluation before it is returned.
pub fn solve_params(fam: &CrystalFamily, m: &AffineMapQ) -> Option<Vec<Rational>> {
    let k = fam.param_count();
    let n = fam.dim;
    let entry_count = n * n + n;
    let flatten = |map: &AffineMapQ| -> Vec<Rational> {
        let mut out = Vec::with_capacity(entry_count);
        for r in 0..n {
            for c in 0..n {
                out.push(map.linear.at(r, c).clone());
            }
        }
        out.extend(map.translation.iter().cloned());
        out
    };
    let target = flatten(m);
    let mut est = vec![Rational::zero(); k];
    for step in 0..=4 {
        let current = flatten(&fam.element_rational(&est).ok()?);
        if current == target {
            return Some(est);
        }
        if step == 4 {
            break;
        }
        let mut jacobian = RatMatrix::zero(entry_count, k);
        for i in 0..k {
            let mut shifted = est.clone();
            shifted[i] = shifted[i].clone() + Rational::one();
            let at_shift = flatten(&fam.element_rational(&shifted).ok()?);
            for (row, (s, c)) in at_shift.iter().zip(&current).enumerate() {
                *jacobian.at_mut(row, i) = s - c;
            }
        }
        let rhs: Vec<Rational> = target.iter().zip(&current).map(|(t, c)| t - c).collect();
        let delta = jacobian.solve_linear(&rhs)?;
        for (e, d) in est.iter_mut().zip(delta) {
            *e = e.clone() + d;
        }
    }
    None
}

/// A composition law `params″ = params + params′ + Σ quad[k][i][j]·paramᵢ·param′ⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionLaw {
    pub quad: Vec<Vec<Vec<Rational>>>,
}

impl CompositionLaw {
    pub fn predict(&self, left: &[Rational], right: &[Rational]) -> Vec<Rational> {
        let k = self.quad.len();
        (0..k)
            .map(|c| {
                let mut acc = &left[c] + &right[c];
                for i in 0..k {
                    for j in 0..k {
                        if !self.quad[c][i][j].is_zero() {
                            acc = acc + &self.quad[c][i][j] * &(&left[i] * &right[j]);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.quad
            .iter()
            .flatten()
            .flatten()
            .all(|v| v.is_integer())
    }

    /// Human-readable rendering such as `p'' = p + p' + q*q'; q'' = q + q'`.
    pub fn describe(&self, params: &[String]) -> String {
        let k = self.quad.len();
        let mut parts = Vec::with_capacity(k);
        for c in 0..k {
            let mut s = format!("{}'' = {} + {}'", params[c], params[c], params[c]);
            for i in 0..k {
                for j in 0..k {
                    let coeff = &self.quad[c][i][j];
                    if coeff.is_zero() {
                        continue;
                    }
                    let term = format!("{}*{}'", params[i], params[j]);
                    if coeff.is_one() {
                        s.push_str(&format!(" + {term}"));
                    } else if (-coeff.clone()).is_one() {
                        s.push_str(&format!(" - {term}"));
                    } else {
                        s.push_str(&format!(" + {}*{term}", format_rational(coeff)));
                    }
                }
            }
            parts.push(s);
        }
        parts.join("; ")
    }
}

#[derive(Debug, Error)]
pub enum LatticeFailure {
    #[error("pattern failed to evaluate: {0}")]
    Eval(#[from] EvalError),
    #[error("element at zero parameters is not the identity")]
    NotIdentityAtZero,
    #[error("composition of {left:?} and {right:?} has no integral preimage in the family")]
    NotClosed { left: Vec<i64>, right: Vec<i64> },
    #[error("fitted composition law fails exact re-verification at {left:?}, {right:?}")]
    LawMismatch { left: Vec<i64>, right: Vec<i64> },
    #[error("element at {params:?} has no integral inverse in the family")]
    NoIntegralInverse { params: Vec<i64> },
    #[error("element at {params:?} has a non-integral entry")]
    NonIntegralEntry { params: Vec<i64> },
}

/// Checks group closure over deterministic integer draws in `[-5, 5]^k` and
/// returns the discovered composition law.
pub fn closure_check(fam: &CrystalFamily, trials: usize) -> Result<CompositionLaw, LatticeFailure> {
    let k = fam.param_count();
    if !fam.element(&vec![0; k])?.is_identity() {
        return Err(LatticeFailure::NotIdentityAtZero);
    }
    // Fit the bilinear coefficients from basis parameter pairs.
    let mut quad = vec![vec![vec![Rational::zero(); k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut left = vec![0i64; k];
            let mut right = vec![0i64; k];
            left[i] = 1;
            right[j] = 1;
            let m = fam.element(&left)?.compose(&fam.element(&right)?);
            let sol = solve_params(fam, &m).ok_or(LatticeFailure::NotClosed {
                left: left.clone(),
                right: right.clone(),
            })?;
            for c in 0..k {
                let linear_part = rat_int(left[c] + right[c]);
                quad[c][i][j] = &sol[c] - &linear_part;
            }
        }
    }
    let law = CompositionLaw { quad };
    let mut rng = ChaCha8Rng::seed_from_u64(LATTICE_SEED);
    for _ in 0..trials {
        let left: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
        let right: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
        let m = fam.element(&left)?.compose(&fam.element(&right)?);
        let sol = solve_params(fam, &m).ok_or(LatticeFailure::NotClosed {
            left: left.clone(),
            right: right.clone(),
        })?;
        if sol.iter().any(|v| !v.is_integer()) {
            return Err(LatticeFailure::NotClosed { left, right });
        }
        let left_r: Vec<Rational> = left.iter().map(|&v| rat_int(v)).collect();
        let right_r: Vec<Rational> = right.iter().map(|&v| rat_int(v)).collect();
        if law.predict(&left_r, &right_r) != sol {
            return Err(LatticeFailure::LawMismatch { left, right });
        }
    }
    Ok(law)
}

/// Checks that sampled elements invert inside the family with integer
/// parameters, and that the zero element is the identity.
pub fn inverse_identity_check(fam: &CrystalFamily, trials: usize) -> Result<(), LatticeFailure> {
    let k = fam.param_count();
    if !fam.element(&vec![0; k])?.is_identity() {
        return Err(LatticeFailure::NotIdentityAtZero);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(LATTICE_SEED ^ 0x1);
    for _ in 0..trials {
        let params: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
        let m = fam.element(&params)?;
        let inv = m
            .inverse()
            .map_err(|_| LatticeFailure::NoIntegralInverse { params: params.clone() })?;
        let sol = solve_params(fam, &inv)
            .ok_or(LatticeFailure::NoIntegralInverse { params: params.clone() })?;
        if sol.iter().any(|v| !v.is_integer()) {
            return Err(LatticeFailure::NoIntegralInverse { params });
        }
        debug_assert!(inv.compose(&m).is_identity());
    }
    Ok(())
}

/// Checks that sampled elements have integer linear parts and translations.
pub fn integral_entries_check(fam: &CrystalFamily, trials: usize) -> Result<(), LatticeFailure> {
    let k = fam.param_count();
    let mut rng = ChaCha8Rng::seed_from_u64(LATTICE_SEED ^ 0x2);
    for _ in 0..trials {
        let params: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
        let m = fam.element(&params)?;
        let mut entries: Vec<&Rational> = m.translation.iter().collect();
        for r in 0..fam.dim {
            for c in 0..fam.dim {
                entries.push(m.linear.at(r, c));
            }
        }
        if entries.iter().any(|v| !v.is_integer()) {
            return Err(LatticeFailure::NonIntegralEntry { params });
        }
    }
    Ok(())
}

#[derive(Debug, Error)]
pub enum FreenessFailure {
    #[error("pattern failed to evaluate: {0}")]
    Eval(#[from] EvalError),
    #[error("element at {params:?} fixes the in-domain point ({})", fmt_point(.point))]
    FixedPointInDomain {
        params: Vec<i64>,
        point: Vec<Rational>,
    },
}

fn fmt_point(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

/// Checks that non-identity sampled elements have no fixed point inside the
/// family's domain: `(L - I)x = -τ` is solved exactly and any solution set is
/// intersected with the domain.
pub fn freeness_check(fam: &CrystalFamily, trials: usize) -> Result<(), FreenessFailure> {
    let k = fam.param_count();
    let n = fam.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(LATTICE_SEED ^ 0x3);
    for _ in 0..trials {
        let params: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
        let m = fam.element(&params)?;
        if m.is_identity() {
            continue;
        }
        let shifted = &m.linear - &RatMatrix::identity(n);
        let rhs: Vec<Rational> = m.translation.iter().map(|t| -t.clone()).collect();
        let Some(particular) = shifted.solve_linear(&rhs) else {
            continue; // no fixed points at all
        };
        match fam.domain {
            CrystalDomain::All => {
                return Err(FreenessFailure::FixedPointInDomain {
                    params,
                    point: particular,
                });
            }
            CrystalDomain::HalfSpaceXAboveMinusOne => {
                let (_, nullspace) = shifted.rank_nullspace();
                if let Some(dir) = nullspace.iter().find(|v| !v[0].is_zero()) {
                    // The first coordinate is unconstrained on the fixed set:
                    // exhibit a fixed point with x = 0.
                    let t = -&particular[0] / &dir[0];
                    let witness: Vec<Rational> = particular
                        .iter()
                        .zip(dir)
                        .map(|(p, d)| p + &t * d)
                        .collect();
                    return Err(FreenessFailure::FixedPointInDomain { params, point: witness });
                }
                if particular[0] > rat_int(-1) {
                    return Err(FreenessFailure::FixedPointInDomain {
                        params,
                        point: particular,
                    });
                }
                // Fixed points exist but lie outside the domain: acceptable.
            }
        }
    }
    Ok(())
}

/// Searches for a pair of sampled elements that fail to commute; `None` means
/// every sampled pair commuted exactly.
pub fn commutation_witness(
    fam: &CrystalFamily,
    trials: usize,
) -> Result<Option<(Vec<i64>, Vec<i64>)>, EvalError> {
    let k = fam.param_count();
    let mut rng = ChaCha8Rng::seed_from_u64(LATTICE_SEED ^ 0x4);
    for _ in 0..trials {
        let left: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
        let right: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
        let a = fam.element(&left)?;
        let b = fam.element(&right)?;
        if a.compose(&b) != b.compose(&a) {
            return Ok(Some((left, right)));
        }
    }
    Ok(None)
}

/// An exact affine map induces a torus map iff its linear part is integral.
pub fn descends_to_torus_exact(m: &AffineMapQ) -> bool {
    let n = m.dim();
    (0..n).all(|r| (0..n).all(|c| m.linear.at(r, c).is_integer()))
}

/// Float variant: linear entries within `1e-9` of integers.
pub fn descends_to_torus(linear: &[Vec<f64>]) -> bool {
    linear
        .iter()
        .flatten()
        .all(|&v| (v - v.round()).abs() < 1e-9)
}
