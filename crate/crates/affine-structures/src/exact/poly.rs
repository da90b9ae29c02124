//! Univariate polynomials over exact rationals.
//!
//! Coefficients are stored densely (`coeffs[i]` multiplies `t^i`) with
//! trailing zeros trimmed, so the zero polynomial has an empty coefficient
//! vector. Beyond ring arithmetic this module provides Euclidean division,
//! monic gcd, Sturm chains, and exact real-root sign counts — enough to read
//! off the signature of a symmetric matrix from its characteristic polynomial
//! without ever leaving the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::matrix::{MatrixError, RatMatrix};
use super::rational::{format_rational, rat_int, sign, Rational};

/// Dense univariate polynomial over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Builds a polynomial from low-to-high coefficients, trimming zeros.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c · t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^k` (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    /// Scales so the leading coefficient becomes 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = Rational::one() / l.clone();
                Poly::from_coeffs(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    ///
    /// Panics on a zero divisor — callers guard that case.
    pub fn divmod(&self, divisor: &Poly) -> (Poly, Poly) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (Poly::zero(), self.clone());
        }
        let q_len = rem.len() - d_deg;
        let mut quot = vec![Rational::zero(); q_len];
        for i in (0..q_len).rev() {
            let lead = rem[i + d_deg].clone();
            if lead.is_zero() {
                continue;
            }
            let factor = lead / &d_lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let v = rem[i + j].clone() - &factor * dc;
                rem[i + j] = v;
            }
            quot[i] = factor;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor (Euclid's algorithm).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Number of zero roots, i.e. the `t^k` content exponent.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `t^k`.
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Counts real roots **with multiplicity** on the negative axis, at zero,
    /// and on the positive axis. Exact for any nonzero polynomial.
    pub fn signed_root_counts(&self) -> (usize, usize, usize) {
        assert!(!self.is_zero(), "the zero polynomial has no root count");
        let zeros = self.zero_root_multiplicity();
        let q = self.shift_down(zeros);
        let (neg, pos) = count_nonzero_roots(&q);
        (neg, zeros, pos)
    }
}

/// Positive/negative real roots with multiplicity of `q`, where `q(0) ≠ 0`.
///
/// Multiple roots are peeled off through `gcd(q, q')`: the square-free part
/// `q / g` carries each distinct root once (counted by a Sturm chain) and `g`
/// carries every root with multiplicity reduced by one, so recursing on `g`
/// restores the multiplicities.
fn count_nonzero_roots(q: &Poly) -> (usize, usize) {
    if q.degree().is_none_or(|d| d == 0) {
        return (0, 0);
    }
    let g = q.gcd(&q.derivative());
    if g.degree() == Some(0) {
        return sturm_count(q);
    }
    let (sf, rem) = q.divmod(&g);
    debug_assert!(rem.is_zero(), "gcd must divide its argument");
    let (dn, dp) = sturm_count(&sf);
    let (gn, gp) = count_nonzero_roots(&g);
    (dn + gn, dp + gp)
}

/// Distinct negative/positive real roots of a square-free `q` with `q(0) ≠ 0`.
fn sturm_count(q: &Poly) -> (usize, usize) {
    let chain = sturm_chain(q);
    let at_zero = variations(chain.iter().map(|p| sign(&p.eval(&Rational::zero()))));
    let at_pos_inf = variations(chain.iter().map(|p| p.leading().map_or(0, sign)));
    let at_neg_inf = variations(chain.iter().map(|p| {
        let Some(d) = p.degree() else { return 0 };
        let s = p.leading().map_or(0, sign);
        if d % 2 == 0 {
            s
        } else {
            -s
        }
    }));
    let neg = at_neg_inf - at_zero;
    let pos = at_zero - at_pos_inf;
    (neg, pos)
}

/// Canonical Sturm chain `q, q', -rem, …`.
fn sturm_chain(q: &Poly) -> Vec<Poly> {
    let mut chain = vec![q.clone(), q.derivative()];
    while chain.last().is_some_and(|p| !p.is_zero()) {
        let n = chain.len();
        let (_, r) = chain[n - 2].divmod(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

/// Sign variations in a sequence, skipping zeros.
fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Characteristic polynomial of a square matrix via Newton's identities.
///
/// Returns the monic polynomial `det(λI − M)` in the variable `λ`, computed
/// from the power traces `p_k = tr(M^k)` — no symbolic determinant needed.
pub fn char_poly(m: &RatMatrix) -> Poly {
    assert_eq!(m.rows(), m.cols(), "characteristic polynomial needs a square matrix");
    let n = m.rows();
    let mut power = RatMatrix::identity(n);
    let mut traces = Vec::with_capacity(n);
    for _ in 0..n {
        power = &power * m;
        traces.push(power.trace());
    }
    // e_k = (1/k) Σ_{i=1..k} (−1)^{i−1} e_{k−i} p_i, with e_0 = 1.
    let mut e = vec![Rational::one()];
    for k in 1..=n {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &traces[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / rat_int(k as i64));
    }
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (k, ek) in e.into_iter().enumerate() {
        // coefficient of λ^{n−k} is (−1)^k e_k
        coeffs[n - k] = if k % 2 == 0 { ek } else { -ek };
    }
    Poly::from_coeffs(coeffs)
}

/// Signature `(n₊, n₋, n₀)` of a symmetric rational matrix.
///
/// All eigenvalues of a real symmetric matrix are real, so the inertia is the
/// signed root count of the characteristic polynomial, which Sturm chains
/// deliver exactly.
pub fn signature_symmetric(m: &RatMatrix) -> Result<(usize, usize, usize), MatrixError> {
    for r in 0..m.rows() {
        for c in 0..r {
            if m.at(r, c) != m.at(c, r) {
                return Err(MatrixError::NotSymmetric(r, c));
            }
        }
    }
    if m.rows() == 0 {
        return Ok((0, 0, 0));
    }
    let (neg, zero, pos) = char_poly(m).signed_root_counts();
    Ok((pos, neg, zero))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = coeffs[i + j].clone() + a * b;
                coeffs[i + j] = v;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
