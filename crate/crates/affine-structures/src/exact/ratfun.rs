//! Rational functions in one variable `t` and small matrices of them.
//!
//! Every value is kept in the reduced canonical form `num/den` with a monic
//! denominator and `gcd(num, den) = 1`. Laurent-style inputs such as `t^-2`
//! normalize into this shape, and reduction makes pole detection trivial: the
//! function has a pole at `t = 0` exactly when the denominator vanishes there.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};
use thiserror::Error;

use super::matrix::{MatrixError, RatMatrix};
use super::poly::Poly;
use super::rational::Rational;

/// A reduced rational function `num(t) / den(t)` with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunction {
    num: Poly,
    den: Poly,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFunError {
    #[error("division by the zero rational function")]
    DivisionByZero,
}

impl RatFunction {
    /// Builds `num / den`, reducing to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, RatFunError> {
        if den.is_zero() {
            return Err(RatFunError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunction {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, r1) = num.divmod(&g);
        debug_assert!(r1.is_zero());
        let (mut den, r2) = den.divmod(&g);
        debug_assert!(r2.is_zero());
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = Rational::one() / lead;
        num = num.scale(&inv);
        den = den.scale(&inv);
        RatFunction { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunction::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFunction::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunction::from_poly(Poly::one())
    }

    /// The variable `t` itself.
    pub fn var() -> Self {
        RatFunction::from_poly(Poly::monomial(Rational::one(), 1))
    }

    /// `t^k` for any integer `k`, negative exponents landing in the denominator.
    pub fn t_power(k: i64) -> Self {
        if k >= 0 {
            RatFunction::from_poly(Poly::monomial(Rational::one(), k as usize))
        } else {
            RatFunction {
                num: Poly::one(),
                den: Poly::monomial(Rational::one(), (-k) as usize),
            }
        }
    }

    #[inline]
    pub fn num(&self) -> &Poly {
        &self.num
    }

    #[inline]
    pub fn den(&self) -> &Poly {
        &self.den
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is the constant 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inverse(&self) -> Option<RatFunction> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Option<RatFunction> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = RatFunction::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Value at `t = x`, or `None` when `x` is a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Limit as `t → 0`: the finite value, or `None` at a pole.
    ///
    /// Because the fraction is reduced, a vanishing denominator at 0 forces a
    /// nonvanishing numerator there, so "denominator vanishes" is exactly
    /// "pole" — no indeterminate 0/0 case can survive reduction.
    pub fn limit_at_zero(&self) -> Option<Rational> {
        self.eval(&Rational::zero())
    }
}

impl Add for &RatFunction {
    type Output = RatFunction;
    fn add(self, rhs: &RatFunction) -> RatFunction {
        RatFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunction {
    type Output = RatFunction;
    fn sub(self, rhs: &RatFunction) -> RatFunction {
        RatFunction::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFunction {
    type Output = RatFunction;
    fn mul(self, rhs: &RatFunction) -> RatFunction {
        RatFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunction {
    type Output = RatFunction;
    fn div(self, rhs: &RatFunction) -> RatFunction {
        let inv = rhs
            .inverse()
            .expect("division by the zero rational function");
        self * &inv
    }
}

impl Neg for &RatFunction {
    type Output = RatFunction;
    fn neg(self) -> RatFunction {
        RatFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Matrix with rational-function entries, sized for base-change curves.
///
/// Determinants use Laplace expansion and inverses the adjugate formula, which
/// is entirely adequate at the 2–4 row sizes these curves live at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RfMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFunction>,
}

impl RfMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RatFunction>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(RfMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RfMatrix {
            rows,
            cols,
            entries: vec![RatFunction::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RfMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = RatFunction::one();
        }
        m
    }

    /// Lifts a constant rational matrix to rational-function entries.
    pub fn from_rat_matrix(m: &RatMatrix) -> Self {
        let mut out = RfMatrix::zero(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                *out.at_mut(r, c) = RatFunction::constant(m.at(r, c).clone());
            }
        }
        out
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &RatFunction {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut RatFunction {
        &mut self.entries[r * self.cols + c]
    }

    pub fn col(&self, c: usize) -> Vec<RatFunction> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[RatFunction]) -> Vec<RatFunction> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| !self.at(r, c).is_zero() && !v[c].is_zero())
                    .fold(RatFunction::zero(), |acc, c| &acc + &(self.at(r, c) * &v[c]))
            })
            .collect()
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det(&self) -> RatFunction {
        assert_eq!(self.rows, self.cols, "determinant requires a square matrix");
        match self.rows {
            0 => RatFunction::one(),
            1 => self.at(0, 0).clone(),
            n => {
                let mut acc = RatFunction::zero();
                for c in 0..n {
                    if self.at(0, c).is_zero() {
                        continue;
                    }
                    let term = self.at(0, c) * &self.minor(0, c).det();
                    acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> RfMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 0..self.rows {
            if r == skip_r {
                continue;
            }
            for c in 0..self.cols {
                if c == skip_c {
                    continue;
                }
                entries.push(self.at(r, c).clone());
            }
        }
        RfMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Exact inverse via the adjugate, or `Singular` when the determinant is 0.
    pub fn inverse(&self) -> Result<RfMatrix, MatrixError> {
        assert_eq!(self.rows, self.cols, "inverse requires a square matrix");
        let det = self.det();
        let det_inv = det.inverse().ok_or(MatrixError::Singular)?;
        let n = self.rows;
        let mut inv = RfMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                // adjugate: transposed cofactor, hence (c, r) minor here
                let cof = self.minor(c, r).det();
                let signed = if (r + c) % 2 == 0 { cof } else { -&cof };
                *inv.at_mut(r, c) = &signed * &det_inv;
            }
        }
        Ok(inv)
    }

    /// Entrywise evaluation at `t = x`; `None` if any entry has a pole there.
    pub fn eval(&self, x: &Rational) -> Option<RatMatrix> {
        let mut vals = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            vals.push(e.eval(x)?);
        }
        Some(RatMatrix::new(self.rows, self.cols, vals).expect("shape preserved"))
    }

    /// Entrywise limit at `t → 0`; reports the first polar position on failure.
    pub fn limit_at_zero(&self) -> Result<RatMatrix, (usize, usize)> {
        let mut vals = Vec::with_capacity(self.entries.len());
        for r in 0..self.rows {
            for c in 0..self.cols {
                match self.at(r, c).limit_at_zero() {
                    Some(v) => vals.push(v),
                    None => return Err((r, c)),
                }
            }
        }
        Ok(RatMatrix::new(self.rows, self.cols, vals).expect("shape preserved"))
    }
}

impl Mul for &RfMatrix {
    type Output = RfMatrix;
    fn mul(self, rhs: &RfMatrix) -> RfMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = RfMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.at(r, k).is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = &out.at(r, c).clone() + &(self.at(r, k) * rhs.at(k, c));
                    *out.at_mut(r, c) = v;
                }
            }
        }
        out
    }
}
