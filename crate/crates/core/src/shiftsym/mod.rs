//! Shifted tangent complexes of quotient stacks at a point, shifted
//! 2-forms as graded pairings, nondegeneracy as cone acyclicity decided by
//! exact ranks, and builders for BG, [𝔤*/G] and [G/Gᵃᵈ].

mod complex;
mod builders;
mod witness;

pub use complex::{
    cohomology_dims, cone, dual_shifted, is_acyclic, is_chain_map, validate_complex, ChainMap,
    PtComplex,
};
pub use builders::{
    build_adjoint_at, build_adjoint_group, build_bg, build_coadjoint_at, graded_antisymmetric,
    induced_chain_map, nondegeneracy_verdict, nondegenerate, NondegeneracyVerdict, ShiftedTwoForm,
};
pub use witness::IsotropyWitness;
