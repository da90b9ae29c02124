//! Exact verification workbench for commutative associative structure-constant
//! algebras in low dimension: classification fingerprints, symmetric
//! second-cohomology tables, degenerations along base-change curves, the
//! affine actions the algebras induce, and the lattice subgroups those actions
//! contain.

pub mod action;
pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod deformation;
pub mod exact;
pub mod expr;
pub mod lattice;
pub mod report;

use algebra::{Algebra, Fingerprint};

/// Assembles the full invariant fingerprint of an algebra, including the
/// symmetric second-cohomology dimension.
pub fn fingerprint(a: &Algebra) -> Fingerprint {
    Fingerprint {
        dim: a.dim(),
        has_unit: a.is_unital(),
        nilpotency_index: a.nilpotency_index(),
        dim_square: a.square_basis().len(),
        dim_annihilator: a.annihilator_basis().len(),
        dim_radical: a.radical_basis().len(),
        dim_radical_square: a.radical_square_basis().len(),
        trace_signature: a.trace_signature(),
        dim_derivations: a.dim_derivations(),
        dim_h2s: cohomology::h2s(a).dim,
        complete: a.is_complete(),
        pairing_signature: a.pairing_signature(),
    }
}
