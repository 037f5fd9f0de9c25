//! Cartan-model equivariant differential forms on affine G-spaces:
//! exact evaluation, de Rham differential via jets or symbolic partials,
//! contraction with the action field, the Cartan differential d_LR + u·d,
//! and closure checks for ω₀ + u·ω₁ on [G/Gᵃᵈ].

mod gspace;
mod form;
mod closure;

pub use gspace::{basis_left_inverse, GSpace, PolyMap};
pub use form::{
    build_coadjoint_form, build_omega0, build_omega1, eval_checked, lie_coords, pair_coords,
    CartanElement, EqForm, Form,
};
pub use closure::{
    build_adjoint_structure, check_cartan_closure, check_equivariance, AdjointStructure,
    ClosureError, ClosureReport,
};

#[cfg(test)]
pub(crate) mod testutil {
    use crate::exactalg::{rat_int, Rat};
    use num::Zero;
    use rand::Rng;
    use rand_chacha::ChaCha20Rng;

    pub(crate) fn random_combo(basis: &[Vec<Rat>], rng: &mut ChaCha20Rng) -> Vec<Rat> {
        let n = basis[0].len();
        let mut out = vec![Rat::zero(); n];
        for b in basis {
            let c = rat_int(rng.gen_range(-2..=2));
            for i in 0..n {
                out[i] += &c * &b[i];
            }
        }
        out
    }
}
