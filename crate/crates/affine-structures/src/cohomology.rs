//! Second cohomology of commutative associative algebras.
//!
//! Two flavours are computed, both exactly. The symmetric theory takes
//! cochains `φ : S²A → A` with coboundary
//! `δφ(x,y,z) = x·φ(y,z) − φ(x·y,z) + φ(x,y·z) − φ(x,y)·z`,
//! which governs deformations inside the commutative world; the full theory
//! uses the same operator on all bilinear cochains. Coboundaries come from
//! linear maps via `δf(x,y) = x·f(y) − f(x·y) + f(x)·y`, whose kernel is the
//! derivation algebra — so the coboundary dimension is always `n² − dim Der`.
//!
//! Quotient representatives are canonical: the cocycle basis is reduced
//! modulo the echelon form of the coboundary space, surviving residues are
//! pivot-normalized, and the same reduction validates any externally supplied
//! representative set by span comparison instead of verbatim matching.

use num::{One, Zero};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::exact::matrix::RatMatrix;
use crate::exact::rational::Rational;

/// Symmetric bilinear cochain `φ(e_i, e_j) ∈ A`, stored for `i ≤ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricCochain {
    n: usize,
    /// Flat coordinates: pair-major, `pair_index(i,j)·n + k`.
    coords: Vec<Rational>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CochainError {
    #[error("cochain index ({0},{1}) out of range for dimension {2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("cochain value must have {0} coordinates")]
    ValueLength(usize),
}

/// Number of unordered basis pairs in dimension `n`.
pub fn pair_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of the unordered pair `(i, j)` with `i ≤ j` in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * (2 * n - i + 1) / 2 + (j - i)
}

impl SymmetricCochain {
    pub fn zero(n: usize) -> Self {
        SymmetricCochain {
            n,
            coords: vec![Rational::zero(); pair_count(n) * n],
        }
    }

    /// Builds a cochain from sparse entries `(i, j, value)` with 0-based
    /// `i ≤ j`; unspecified pairs are zero.
    pub fn from_entries(
        n: usize,
        entries: &[(usize, usize, Vec<Rational>)],
    ) -> Result<Self, CochainError> {
        let mut c = SymmetricCochain::zero(n);
        for (i, j, value) in entries {
            if *i > *j || *j >= n {
                return Err(CochainError::IndexOutOfRange(*i, *j, n));
            }
            if value.len() != n {
                return Err(CochainError::ValueLength(n));
            }
            for (k, v) in value.iter().enumerate() {
                c.coords[pair_index(n, *i, *j) * n + k] = v.clone();
            }
        }
        Ok(c)
    }

    pub fn from_coords(n: usize, coords: Vec<Rational>) -> Result<Self, CochainError> {
        if coords.len() != pair_count(n) * n {
            return Err(CochainError::ValueLength(pair_count(n) * n));
        }
        Ok(SymmetricCochain { n, coords })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Value on a basis pair, symmetrized for `i > j`.
    pub fn value(&self, i: usize, j: usize) -> Vec<Rational> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let base = pair_index(self.n, i, j) * self.n;
        self.coords[base..base + self.n].to_vec()
    }

    /// Bilinear extension to arbitrary coordinate vectors.
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                let factor = &x[i] * &y[j];
                let val = self.value(i, j);
                for k in 0..self.n {
                    if !val[k].is_zero() {
                        let v = out[k].clone() + &factor * &val[k];
                        out[k] = v;
                    }
                }
            }
        }
        out
    }

    /// True when every coordinate vanishes.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

fn basis_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `δφ(e_i, e_j, e_k) = e_i·φ(e_j,e_k) − φ(e_i·e_j, e_k) + φ(e_i, e_j·e_k) − φ(e_i,e_j)·e_k`.
pub fn coboundary_value(
    a: &Algebra,
    phi: &SymmetricCochain,
    i: usize,
    j: usize,
    k: usize,
) -> Vec<Rational> {
    let n = a.dim();
    let ei = basis_vector(n, i);
    let ej = basis_vector(n, j);
    let ek = basis_vector(n, k);
    let t1 = a.product(&ei, &phi.apply(&ej, &ek));
    let t2 = phi.apply(a.basis_product(i, j), &ek);
    let t3 = phi.apply(&ei, a.basis_product(j, k));
    let t4 = a.product(&phi.apply(&ei, &ej), &ek);
    vec_sub(&vec_add(&vec_sub(&t1, &t2), &t3), &t4)
}

/// First basis triple (0-based) where `δφ` fails to vanish, if any.
pub fn cocycle_defect(a: &Algebra, phi: &SymmetricCochain) -> Option<(usize, usize, usize)> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if coboundary_value(a, phi, i, j, k).iter().any(|v| !v.is_zero()) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

pub fn is_cocycle(a: &Algebra, phi: &SymmetricCochain) -> bool {
    cocycle_defect(a, phi).is_none()
}

/// The coboundary of a linear map, `δf(x,y) = x·f(y) − f(x·y) + f(x)·y`.
pub fn coboundary_of_linear(a: &Algebra, f: &RatMatrix) -> SymmetricCochain {
    let n = a.dim();
    let mut phi = SymmetricCochain::zero(n);
    for i in 0..n {
        for j in i..n {
            let ei = basis_vector(n, i);
            let ej = basis_vector(n, j);
            let t1 = a.product(&ei, &f.mul_vec(&ej));
            let t2 = f.mul_vec(a.basis_product(i, j));
            let t3 = a.product(&f.mul_vec(&ei), &ej);
            let value = vec_add(&vec_sub(&t1, &t2), &t3);
            let base = pair_index(n, i, j) * n;
            for (k, v) in value.into_iter().enumerate() {
                phi.coords[base + k] = v;
            }
        }
    }
    phi
}

/// Matrix of `δ` on symmetric cochains: one row per triple coordinate
/// `(i,j,k,l)`, one column per cochain coordinate.
fn symmetric_delta_matrix(a: &Algebra) -> RatMatrix {
    let n = a.dim();
    let cols = pair_count(n) * n;
    let mut m = RatMatrix::zero(n * n * n * n, cols);
    for col in 0..cols {
        let mut coords = vec![Rational::zero(); cols];
        coords[col] = Rational::one();
        let phi = SymmetricCochain::from_coords(n, coords).expect("length matches");
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let value = coboundary_value(a, &phi, i, j, k);
                    for (l, v) in value.into_iter().enumerate() {
                        *m.at_mut(((i * n + j) * n + k) * n + l, col) = v;
                    }
                }
            }
        }
    }
    m
}

/// Canonical echelon basis of the coboundary space inside symmetric cochains.
fn coboundary_space_basis(a: &Algebra) -> Vec<Vec<Rational>> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let mut f = RatMatrix::zero(n, n);
            *f.at_mut(r, c) = Rational::one();
            rows.push(coboundary_of_linear(a, &f).coords().to_vec());
        }
    }
    RatMatrix::from_rows(rows)
        .expect("uniform row lengths")
        .row_space_basis()
}

/// Reduce `v` against rows in reduced echelon form (pivot entries 1, pivot
/// columns cleared), returning the canonical residue.
fn reduce_mod(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    let mut r = v.to_vec();
    for row in rows {
        let p = row
            .iter()
            .position(|x| !x.is_zero())
            .expect("echelon rows are nonzero");
        if !r[p].is_zero() {
            let f = r[p].clone();
            for (ri, wi) in r.iter_mut().zip(row) {
                let v = ri.clone() - &f * wi;
                *ri = v;
            }
        }
    }
    r
}

/// Result of a symmetric (or full) second-cohomology computation.
#[derive(Debug, Clone)]
pub struct H2s {
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim: usize,
    /// Canonical representatives: one cocycle per quotient dimension, reduced
    /// modulo coboundaries and pivot-normalized.
    pub representatives: Vec<SymmetricCochain>,
}

/// Symmetric second cohomology with canonical quotient representatives.
pub fn h2s(a: &Algebra) -> H2s {
    let n = a.dim();
    let (_, z_basis) = symmetric_delta_matrix(a).rank_nullspace();
    let b_basis = coboundary_space_basis(a);
    let dim_cocycles = z_basis.len();
    let dim_coboundaries = b_basis.len();

    let mut reducer = b_basis;
    let mut reps = Vec::new();
    for z in &z_basis {
        let residue = reduce_mod(&reducer, z);
        if residue.iter().all(Zero::is_zero) {
            continue;
        }
        let p = residue.iter().position(|x| !x.is_zero()).unwrap();
        let inv = Rational::one() / residue[p].clone();
        let normalized: Vec<Rational> = residue.iter().map(|x| x * &inv).collect();
        reps.push(SymmetricCochain::from_coords(n, normalized.clone()).expect("length matches"));
        reducer.push(normalized);
        reducer = RatMatrix::from_rows(reducer)
            .expect("uniform row lengths")
            .row_space_basis();
    }
    debug_assert_eq!(reps.len(), dim_cocycles - dim_coboundaries);
    H2s {
        dim_cocycles,
        dim_coboundaries,
        dim: dim_cocycles - dim_coboundaries,
        representatives: reps,
    }
}

/// Full (not-necessarily-symmetric) second cohomology dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct H2Full {
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim: usize,
}

/// Second cohomology over all bilinear cochains, same coboundary operator.
pub fn h2_full(a: &Algebra) -> H2Full {
    let n = a.dim();
    let cols = n * n * n; // cochain coordinates ((i,j),k), no symmetry imposed
    let value_of = |coords: &[Rational], i: usize, j: usize| -> Vec<Rational> {
        coords[(i * n + j) * n..(i * n + j) * n + n].to_vec()
    };
    let apply = |coords: &[Rational], x: &[Rational], y: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            for j in 0..n {
                if x[i].is_zero() || y[j].is_zero() {
                    continue;
                }
                let factor = &x[i] * &y[j];
                for (k, v) in value_of(coords, i, j).iter().enumerate() {
                    if !v.is_zero() {
                        let acc = out[k].clone() + &factor * v;
                        out[k] = acc;
                    }
                }
            }
        }
        out
    };

    let mut delta = RatMatrix::zero(n * n * n * n, cols);
    for col in 0..cols {
        let mut coords = vec![Rational::zero(); cols];
        coords[col] = Rational::one();
        for i in 0..n {
            let ei = basis_vector(n, i);
            for j in 0..n {
                let ej = basis_vector(n, j);
                for k in 0..n {
                    let ek = basis_vector(n, k);
                    let t1 = a.product(&ei, &apply(&coords, &ej, &ek));
                    let t2 = apply(&coords, a.basis_product(i, j), &ek);
                    let t3 = apply(&coords, &ei, a.basis_product(j, k));
                    let t4 = a.product(&apply(&coords, &ei, &ej), &ek);
                    let value = vec_sub(&vec_add(&vec_sub(&t1, &t2), &t3), &t4);
                    for (l, v) in value.into_iter().enumerate() {
                        *delta.at_mut(((i * n + j) * n + k) * n + l, col) = v;
                    }
                }
            }
        }
    }
    let (_, z_basis) = delta.rank_nullspace();

    let mut rows = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let mut f = RatMatrix::zero(n, n);
            *f.at_mut(r, c) = Rational::one();
            let mut coords = vec![Rational::zero(); cols];
            for i in 0..n {
                let ei = basis_vector(n, i);
                for j in 0..n {
                    let ej = basis_vector(n, j);
                    let t1 = a.product(&ei, &f.mul_vec(&ej));
                    let t2 = f.mul_vec(a.basis_product(i, j));
                    let t3 = a.product(&f.mul_vec(&ei), &ej);
                    let value = vec_add(&vec_sub(&t1, &t2), &t3);
                    for (k, v) in value.into_iter().enumerate() {
                        coords[(i * n + j) * n + k] = v;
                    }
                }
            }
            rows.push(coords);
        }
    }
    let b_dim = RatMatrix::from_rows(rows)
        .expect("uniform row lengths")
        .row_space_basis()
        .len();

    H2Full {
        dim_cocycles: z_basis.len(),
        dim_coboundaries: b_dim,
        dim: z_basis.len() - b_dim,
    }
}

/// Outcome of validating an externally supplied representative set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeCheck {
    /// Indices (into the supplied list) of entries that are not cocycles.
    pub non_cocycles: Vec<usize>,
    /// Whether the supplied cocycles are linearly independent modulo
    /// coboundaries (duplicates or coboundary-differences fail this).
    pub independent_mod_coboundaries: bool,
    /// Whether the supplied set spans a full complement of the coboundaries
    /// inside the cocycles, i.e. represents a basis of the quotient.
    pub spans_complement: bool,
    /// Computed quotient dimension, for comparison with the supplied count.
    pub quotient_dim: usize,
}

/// Validates a representative set by spans, not by verbatim comparison.
pub fn check_representatives(a: &Algebra, supplied: &[SymmetricCochain]) -> RepresentativeCheck {
    let h = h2s(a);
    let non_cocycles: Vec<usize> = supplied
        .iter()
        .enumerate()
        .filter(|(_, phi)| !is_cocycle(a, phi))
        .map(|(idx, _)| idx)
        .collect();

    let b_basis = coboundary_space_basis(a);
    let mut reducer = b_basis;
    let mut independent = true;
    for (idx, phi) in supplied.iter().enumerate() {
        if non_cocycles.contains(&idx) {
            independent = false;
            continue;
        }
        let residue = reduce_mod(&reducer, phi.coords());
        if residue.iter().all(Zero::is_zero) {
            independent = false;
            continue;
        }
        reducer.push(residue);
        reducer = RatMatrix::from_rows(reducer)
            .expect("uniform row lengths")
            .row_space_basis();
    }

    let spans = independent && non_cocycles.is_empty() && supplied.len() == h.dim;
    RepresentativeCheck {
        non_cocycles,
        independent_mod_coboundaries: independent,
        spans_complement: spans,
        quotient_dim: h.dim,
    }
}
