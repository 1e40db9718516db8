//! Exact integer linear algebra: Smith normal form over `Z`, Howell forms
//! over `Z/N`, and bookkeeping for finitely generated abelian groups.
//!
//! Nothing in here uses floating point.

mod abelian;
mod howell;
mod matrix;

pub use abelian::{
    cokernel_invariants, homomorphism_kernel_invariants, lattice_quotient_invariants, section_invariants,
    subgroup_invariants, subgroup_quotient_invariants, AbelianInvariants,
};
pub(crate) use abelian::to_bigint_vec;
pub use howell::{
    howell_form, kernel_mod, kernel_mod_rows, FiniteQuotient, HowellBasis, StreamingEchelon, MAX_MODULUS,
};
pub use matrix::{integer_kernel, smith_decomposition, smith_normal_form, IntMatrix, SmithDecomposition};
