//! Structure-constant algebras over the rationals.
//!
//! An [`Algebra`] stores the full product tensor `e_i · e_j = Σ_k c[i][j][k] e_k`
//! and answers every classification question exactly: commutativity and
//! associativity witnesses, units, annihilators, the power filtration, the
//! trace form and its kernel (the radical), derivations, base changes, and the
//! completeness test for the induced affine action. Nothing here rounds.

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact::matrix::{MatrixError, RatMatrix};
use crate::exact::poly::signature_symmetric;
use crate::exact::rational::{rat_int, Rational};

/// Finite-dimensional algebra given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    dim: usize,
    /// `c[i][j]` is the coordinate vector of `e_i · e_j`.
    c: Vec<Vec<Vec<Rational>>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure tensor shape does not match dimension {0}")]
    ShapeMismatch(usize),
    #[error("base change matrix must be invertible")]
    SingularBaseChange,
    #[error("base change matrix must be {dim}x{dim}, got {rows}x{cols}")]
    BaseChangeShape { dim: usize, rows: usize, cols: usize },
}

/// Invariant tuple used to tell algebras apart without finding an isomorphism.
///
/// Every field is preserved by base change, so distinct fingerprints certify
/// non-isomorphic algebras. `pairing_signature` refines the case where the
/// product lands in a line: the product is then a symmetric form with values
/// in that line, and its signature (normalized so the larger count is first,
/// since the line has no preferred orientation) survives base change too.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub has_unit: bool,
    pub nilpotency_index: Option<usize>,
    pub dim_square: usize,
    pub dim_annihilator: usize,
    pub dim_radical: usize,
    pub dim_radical_square: usize,
    pub trace_signature: (usize, usize, usize),
    pub dim_derivations: usize,
    pub dim_h2s: usize,
    pub complete: bool,
    pub pairing_signature: Option<(usize, usize)>,
}

fn basis_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

impl Algebra {
    /// Builds an algebra after validating the tensor shape.
    pub fn new(name: impl Into<String>, dim: usize, c: Vec<Vec<Vec<Rational>>>) -> Result<Self, AlgebraError> {
        let ok = c.len() == dim
            && c.iter()
                .all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !ok {
            return Err(AlgebraError::ShapeMismatch(dim));
        }
        Ok(Algebra {
            name: name.into(),
            dim,
            c,
        })
    }

    /// The zero product on `dim` generators.
    pub fn zero_algebra(name: impl Into<String>, dim: usize) -> Self {
        Algebra {
            name: name.into(),
            dim,
            c: vec![vec![vec![Rational::zero(); dim]; dim]; dim],
        }
    }

    #[inline]
    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `e_i · e_j`.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        &self.c[i][j]
    }

    #[inline]
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// Bilinear product of coordinate vectors.
    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        assert!(x.len() == self.dim && y.len() == self.dim, "operand length mismatch");
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let factor = &x[i] * &y[j];
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        let v = out[k].clone() + &factor * &self.c[i][j][k];
                        out[k] = v;
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication `y ↦ x · y`.
    pub fn left_mult(&self, x: &[Rational]) -> RatMatrix {
        let mut m = RatMatrix::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.product(x, &basis_vector(self.dim, j));
            for k in 0..self.dim {
                *m.at_mut(k, j) = col[k].clone();
            }
        }
        m
    }

    /// Matrix of right multiplication `y ↦ y · x`.
    pub fn right_mult(&self, x: &[Rational]) -> RatMatrix {
        let mut m = RatMatrix::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.product(&basis_vector(self.dim, j), x);
            for k in 0..self.dim {
                *m.at_mut(k, j) = col[k].clone();
            }
        }
        m
    }

    /// First basis pair (lexicographic, 0-based) breaking commutativity.
    pub fn check_commutative(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.c[i][j] != self.c[j][i] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.check_commutative().is_none()
    }

    /// First basis triple (lexicographic, 0-based) breaking associativity.
    pub fn check_associative(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            let ei = basis_vector(self.dim, i);
            for j in 0..self.dim {
                let ej = basis_vector(self.dim, j);
                let ij = self.product(&ei, &ej);
                for k in 0..self.dim {
                    let ek = basis_vector(self.dim, k);
                    let left = self.product(&ij, &ek);
                    let right = self.product(&ei, &self.product(&ej, &ek));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.check_associative().is_none()
    }

    /// First basis triple (0-based) violating
    /// `x·(y·z) − y·(x·z) = (x·y)·z − (y·x)·z`.
    ///
    /// For a commutative product this is exactly the associativity defect; the
    /// general form also covers non-commutative products paired with a Lie
    /// bracket via [`Algebra::bracket_defect`].
    pub fn left_symmetric_defect(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            let ei = basis_vector(self.dim, i);
            for j in 0..self.dim {
                let ej = basis_vector(self.dim, j);
                for k in 0..self.dim {
                    let ek = basis_vector(self.dim, k);
                    let lhs: Vec<Rational> = {
                        let a = self.product(&ei, &self.product(&ej, &ek));
                        let b = self.product(&ej, &self.product(&ei, &ek));
                        a.iter().zip(&b).map(|(x, y)| x - y).collect()
                    };
                    let rhs: Vec<Rational> = {
                        let a = self.product(&self.product(&ei, &ej), &ek);
                        let b = self.product(&self.product(&ej, &ei), &ek);
                        a.iter().zip(&b).map(|(x, y)| x - y).collect()
                    };
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First basis pair (0-based) where `e_i·e_j − e_j·e_i` differs from the
    /// given bracket tensor `bracket[i][j]`.
    pub fn bracket_defect(&self, bracket: &[Vec<Vec<Rational>>]) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let comm: Vec<Rational> = self.c[i][j]
                    .iter()
                    .zip(&self.c[j][i])
                    .map(|(a, b)| a - b)
                    .collect();
                if comm != bracket[i][j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The two-sided unit, if one exists. Units are unique when present.
    pub fn unit(&self) -> Option<Vec<Rational>> {
        let n = self.dim;
        // Solve u · e_j = e_j for all j, then confirm the right-hand side too.
        let mut sys = RatMatrix::zero(n * n, n);
        let mut rhs = vec![Rational::zero(); n * n];
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    *sys.at_mut(j * n + k, i) = self.c[i][j][k].clone();
                }
                rhs[j * n + k] = if j == k { Rational::one() } else { Rational::zero() };
            }
        }
        let u = sys.solve_linear(&rhs)?;
        for j in 0..n {
            let ej = basis_vector(n, j);
            if self.product(&ej, &u) != ej {
                return None;
            }
        }
        Some(u)
    }

    pub fn is_unital(&self) -> bool {
        self.unit().is_some()
    }

    /// Canonical basis of `{x : x·A = A·x = 0}`.
    pub fn annihilator_basis(&self) -> Vec<Vec<Rational>> {
        let n = self.dim;
        let mut sys = RatMatrix::zero(2 * n * n, n);
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    *sys.at_mut(j * n + k, i) = self.c[i][j][k].clone();
                    *sys.at_mut(n * n + j * n + k, i) = self.c[j][i][k].clone();
                }
            }
        }
        sys.rank_nullspace().1
    }

    /// Canonical basis of the product subspace `A · A`.
    pub fn square_basis(&self) -> Vec<Vec<Rational>> {
        let rows: Vec<Vec<Rational>> = (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| self.c[i][j].clone()))
            .collect();
        RatMatrix::from_rows(rows)
            .expect("uniform row lengths")
            .row_space_basis()
    }

    /// Dimensions of the descending powers `A ⊇ A² ⊇ A³ ⊇ …`, listed until
    /// the sequence hits zero or stabilizes.
    pub fn power_filtration(&self) -> Vec<usize> {
        let mut dims = vec![self.dim];
        let mut current: Vec<Vec<Rational>> =
            (0..self.dim).map(|i| basis_vector(self.dim, i)).collect();
        loop {
            let mut rows = Vec::new();
            for x in &current {
                for j in 0..self.dim {
                    rows.push(self.product(x, &basis_vector(self.dim, j)));
                }
            }
            let next = if rows.is_empty() {
                Vec::new()
            } else {
                RatMatrix::from_rows(rows)
                    .expect("uniform row lengths")
                    .row_space_basis()
            };
            let d = next.len();
            let last = *dims.last().unwrap();
            dims.push(d);
            if d == 0 || d == last {
                return dims;
            }
            current = next;
        }
    }

    /// Smallest `k` with `A^k = 0`, or `None` when the powers never vanish.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let dims = self.power_filtration();
        if *dims.last().unwrap() == 0 {
            Some(dims.len())
        } else {
            None
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    /// Traces of the basis left multiplications, `v_i = tr L_{e_i}`.
    pub fn trace_vector(&self) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| self.left_mult(&basis_vector(self.dim, i)).trace())
            .collect()
    }

    /// The symmetric trace form `T_{ij} = tr(L_{e_i} L_{e_j})`.
    pub fn trace_form(&self) -> RatMatrix {
        let mults: Vec<RatMatrix> = (0..self.dim)
            .map(|i| self.left_mult(&basis_vector(self.dim, i)))
            .collect();
        let mut t = RatMatrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..=i {
                let v = (&mults[i] * &mults[j]).trace();
                *t.at_mut(i, j) = v.clone();
                *t.at_mut(j, i) = v;
            }
        }
        t
    }

    /// Signature `(n₊, n₋, n₀)` of the trace form.
    pub fn trace_signature(&self) -> (usize, usize, usize) {
        signature_symmetric(&self.trace_form()).expect("trace form is symmetric")
    }

    /// Canonical basis of the radical, computed as the trace-form kernel.
    ///
    /// For a commutative associative algebra in characteristic zero the
    /// trace-form kernel is precisely the ideal of nilpotent elements; the
    /// catalog tests double-check nilpotency and the ideal property.
    pub fn radical_basis(&self) -> Vec<Vec<Rational>> {
        self.trace_form().rank_nullspace().1
    }

    /// Canonical basis of `rad(A) · rad(A)`, the product subspace of the
    /// radical with itself.
    ///
    /// This refines the radical dimension: two algebras can share every
    /// coarse dimension count yet differ in how far the radical squares
    /// collapse, e.g. a radical that multiplies to zero versus one whose
    /// square is a line.
    pub fn radical_square_basis(&self) -> Vec<Vec<Rational>> {
        let rad = self.radical_basis();
        if rad.is_empty() {
            return Vec::new();
        }
        let rows: Vec<Vec<Rational>> = rad
            .iter()
            .flat_map(|u| rad.iter().map(|v| self.product(u, v)))
            .collect();
        RatMatrix::from_rows(rows)
            .expect("uniform row lengths")
            .row_space_basis()
    }

    /// All derivations `D(xy) = D(x)y + xD(y)` as a canonical list of matrices.
    pub fn derivations(&self) -> Vec<RatMatrix> {
        let n = self.dim;
        // Unknowns: matrix entries d_{ab} flattened as a*n + b.
        let mut sys = RatMatrix::zero(n * n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let row = (i * n + j) * n + k;
                    for b in 0..n {
                        // D applied to the product: d_{kb} c_{ijb}
                        let v = sys.at(row, k * n + b).clone() + &self.c[i][j][b];
                        *sys.at_mut(row, k * n + b) = v;
                    }
                    for a in 0..n {
                        // product rule terms: -d_{ai} c_{ajk} and -d_{aj} c_{iak}
                        let v = sys.at(row, a * n + i).clone() - &self.c[a][j][k];
                        *sys.at_mut(row, a * n + i) = v;
                        let v = sys.at(row, a * n + j).clone() - &self.c[i][a][k];
                        *sys.at_mut(row, a * n + j) = v;
                    }
                }
            }
        }
        sys.rank_nullspace()
            .1
            .into_iter()
            .map(|flat| RatMatrix::new(n, n, flat).expect("n^2 entries"))
            .collect()
    }

    pub fn dim_derivations(&self) -> usize {
        self.derivations().len()
    }

    /// Dimension of the base-change orbit through this product,
    /// `n² − dim Der`.
    pub fn orbit_dimension(&self) -> usize {
        self.dim * self.dim - self.dim_derivations()
    }

    /// The transported product `μ_g(x, y) = g⁻¹ μ(gx, gy)`.
    pub fn transport(&self, g: &RatMatrix) -> Result<Algebra, AlgebraError> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(AlgebraError::BaseChangeShape {
                dim: self.dim,
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        let g_inv = g.inverse().map_err(|e| match e {
            MatrixError::Singular => AlgebraError::SingularBaseChange,
            _ => AlgebraError::SingularBaseChange,
        })?;
        let cols: Vec<Vec<Rational>> = (0..self.dim).map(|i| g.col(i)).collect();
        let mut c = vec![vec![vec![Rational::zero(); self.dim]; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                c[i][j] = g_inv.mul_vec(&self.product(&cols[i], &cols[j]));
            }
        }
        Ok(Algebra {
            name: format!("{}@transported", self.name),
            dim: self.dim,
            c,
        })
    }

    /// Completeness of the induced affine action.
    ///
    /// Complete means every right multiplication is nilpotent. Nilpotency
    /// forces `tr R_x = 0`, and that trace condition is linear, so checking it
    /// on the basis is exact; a seeded sample of random elements then confirms
    /// nilpotency itself rather than just its trace shadow.
    pub fn is_complete(&self) -> bool {
        let traces_vanish = (0..self.dim)
            .all(|i| self.right_mult(&basis_vector(self.dim, i)).trace().is_zero());
        if !traces_vanish {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ab41);
        for _ in 0..10 {
            let x: Vec<Rational> = (0..self.dim)
                .map(|_| rat_int(rng.gen_range(-9..=9)))
                .collect();
            let r = self.right_mult(&x);
            let mut power = RatMatrix::identity(self.dim);
            for _ in 0..self.dim {
                power = &power * &r;
            }
            if !power.is_zero() {
                return false;
            }
        }
        true
    }

    /// Signature of the line-valued product form, defined when `dim A·A = 1`.
    ///
    /// Writing `x·y = B(x,y)·w` against the canonical generator `w` of `A·A`
    /// gives a symmetric form `B`; flipping `w` swaps its positive and
    /// negative counts, so the pair is normalized with the larger count first.
    pub fn pairing_signature(&self) -> Option<(usize, usize)> {
        let sq = self.square_basis();
        if sq.len() != 1 || !self.is_commutative() {
            return None;
        }
        let w = &sq[0];
        let p = w.iter().position(|v| !v.is_zero()).expect("nonzero generator");
        debug_assert!(w[p].is_one(), "canonical generator is pivot-normalized");
        let mut b = RatMatrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                *b.at_mut(i, j) = self.c[i][j][p].clone();
            }
        }
        let (pos, neg, _) = signature_symmetric(&b).expect("commutative product gives a symmetric form");
        Some(if pos >= neg { (pos, neg) } else { (neg, pos) })
    }

    /// True when the two algebras have identical structure constants.
    pub fn same_products(&self, other: &Algebra) -> bool {
        self.dim == other.dim && self.c == other.c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    /// e₁ unit, e₂² = 0 — the 2-generator algebra of dual numbers.
    fn dual_numbers() -> Algebra {
        let mut c = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        c[0][0][0] = Rational::one();
        c[0][1][1] = Rational::one();
        c[1][0][1] = Rational::one();
        Algebra::new("dual", 2, c).unwrap()
    }

    /// e₁² = e₂, all other products zero.
    fn null_square() -> Algebra {
        let mut c = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        c[0][0][1] = Rational::one();
        Algebra::new("null_square", 2, c).unwrap()
    }

    #[test]
    fn dual_numbers_are_unital_commutative_associative() {
        let a = dual_numbers();
        assert_eq!(a.check_commutative(), None);
        assert_eq!(a.check_associative(), None);
        assert_eq!(a.unit(), Some(vec![Rational::one(), Rational::zero()]));
        assert!(!a.is_nilpotent());
        assert!(!a.is_complete());
    }

    #[test]
    fn null_square_is_nilpotent_of_index_three() {
        let a = null_square();
        assert_eq!(a.power_filtration(), vec![2, 1, 0]);
        assert_eq!(a.nilpotency_index(), Some(3));
        assert!(a.unit().is_none());
        assert!(a.is_complete());
        assert_eq!(a.pairing_signature(), Some((1, 0)));
    }

    #[test]
    fn zero_algebra_filtration_and_annihilator() {
        let a = Algebra::zero_algebra("zero", 2);
        assert_eq!(a.power_filtration(), vec![2, 0]);
        assert_eq!(a.nilpotency_index(), Some(2));
        assert_eq!(a.annihilator_basis().len(), 2);
        assert_eq!(a.dim_derivations(), 4);
        assert_eq!(a.orbit_dimension(), 0);
    }

    #[test]
    fn left_and_right_mult_agree_with_products() {
        let a = dual_numbers();
        let x = vec![rat(1, 2), rat(-3, 1)];
        let y = vec![rat(2, 1), rat(5, 2)];
        assert_eq!(a.left_mult(&x).mul_vec(&y), a.product(&x, &y));
        assert_eq!(a.right_mult(&x).mul_vec(&y), a.product(&y, &x));
    }

    #[test]
    fn trace_form_of_dual_numbers() {
        let a = dual_numbers();
        // L_{e1} = I has tr(L1 L1) = 2; every product with e2 is traceless.
        let t = a.trace_form();
        assert_eq!(t.at(0, 0), &rat_int(2));
        assert!(t.at(0, 1).is_zero() && t.at(1, 1).is_zero());
        assert_eq!(a.trace_signature(), (1, 0, 1));
        assert_eq!(a.radical_basis(), vec![vec![Rational::zero(), Rational::one()]]);
    }

    #[test]
    fn derivations_satisfy_the_product_rule() {
        let a = dual_numbers();
        let ders = a.derivations();
        assert_eq!(ders.len(), 1); // scaling of e2
        for d in &ders {
            for i in 0..2 {
                for j in 0..2 {
                    let ei = basis_vector(2, i);
                    let ej = basis_vector(2, j);
                    let lhs = d.mul_vec(&a.product(&ei, &ej));
                    let rhs: Vec<Rational> = a
                        .product(&d.mul_vec(&ei), &ej)
                        .iter()
                        .zip(&a.product(&ei, &d.mul_vec(&ej)))
                        .map(|(u, v)| u + v)
                        .collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn transport_by_identity_is_identity() {
        let a = dual_numbers();
        let b = a.transport(&RatMatrix::identity(2)).unwrap();
        assert!(a.same_products(&b));
    }

    #[test]
    fn transport_preserves_invariants() {
        let a = null_square();
        let g = RatMatrix::from_i64(2, 2, &[1, 2, -1, 3]);
        let b = a.transport(&g).unwrap();
        assert_eq!(b.check_associative(), None);
        assert_eq!(b.nilpotency_index(), a.nilpotency_index());
        assert_eq!(b.dim_derivations(), a.dim_derivations());
        assert_eq!(b.trace_signature(), a.trace_signature());
    }

    #[test]
    fn singular_base_change_is_rejected() {
        let a = dual_numbers();
        let g = RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(a.transport(&g), Err(AlgebraError::SingularBaseChange));
    }

    #[test]
    fn associativity_witness_is_lexicographically_first() {
        // e1² = e1 and e2² = e1 with mixed products zero: every triple before
        // (0,1,1) associates, while (e1·e2)·e2 = 0 differs from
        // e1·(e2·e2) = e1² = e1, so (0,1,1) is the reported witness.
        let mut c = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        c[0][0][0] = Rational::one();
        c[1][1][0] = Rational::one();
        let b = Algebra::new("assoc_defect", 2, c).unwrap();
        assert_eq!(b.check_associative(), Some((0, 1, 1)));
    }
}
