//! Lie algebras by structure constants, invariant pairings, matrix-group
//! realizations with exact rational / finite-field points, Maurer-Cartan
//! calculus and the conjugation vector field.
//!
//! Sign convention used throughout: the group acts on itself by
//! g ↦ hgh⁻¹, so the action field of x ∈ 𝔤 is v_x(g) = xg − gx. With this
//! choice ⟨β(v_x), x⟩ = 0 holds exactly for any invariant pairing, which
//! is the identity the Cartan-model checks rely on.

mod lie;
mod group;
mod sample;
mod spec_file;

pub use lie::{basis_vec as basis_coord_vec, InvariantPairing, LieData, LieVerdict, PairingVerdict, killing_form};
pub use group::{Family, GroupPoint, MatrixGroup, MaurerCartan, maurer_cartan, conjugation_field};
pub use sample::{sample_points, sample_one, sample_one_point, sample_lie_element, SampleError, SampleField};
pub use spec_file::{GroupSpecFile, PairingSpec, load_group_spec, parse_group_spec, trace_gram};
