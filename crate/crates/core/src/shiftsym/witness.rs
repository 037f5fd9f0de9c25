use crate::eqforms::{CartanElement, GSpace};
use crate::exactalg::{ExactError, Rat};
use std::sync::Arc;

/// Path-to-zero witness: a degree-0 equivariant element γ whose Cartan
/// differential cancels the pulled-back form, cartan_diff(γ) + f*ω = 0.
/// Holding the pullback explicitly keeps the closure identity checkable
/// by evaluation alone.
#[derive(Clone)]
pub struct IsotropyWitness {
    pub space: Arc<GSpace>,
    pub gamma: CartanElement,
    pub pulled_omega: CartanElement,
}

impl IsotropyWitness {
    /// Evaluate every u-component of cartan_diff(γ) + f*ω at the given
    /// (x, point, tangent-vector) arguments; all must vanish exactly.
    pub fn closure_holds_at(
        &self,
        x: &[Rat],
        pt: &[Rat],
        tangent_basis: &[Vec<Rat>],
    ) -> Result<bool, ExactError> {
        let total = self.gamma.cartan_diff(&self.space).add(&self.pulled_omega);
        for form in total.summands.values() {
            let deg = form.degree();
            if deg > tangent_basis.len() {
                continue;
            }
            // all strictly increasing tuples of basis vectors
            let idxs: Vec<usize> = (0..tangent_basis.len()).collect();
            let mut tuple = vec![0usize; deg];
            if !check_tuples(form, x, pt, tangent_basis, &idxs, &mut tuple, 0, 0)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[allow(clippy::too_many_arguments)]
fn check_tuples(
    form: &crate::eqforms::Form,
    x: &[Rat],
    pt: &[Rat],
    basis: &[Vec<Rat>],
    idxs: &[usize],
    tuple: &mut Vec<usize>,
    pos: usize,
    start: usize,
) -> Result<bool, ExactError> {
    use num::Zero;
    if pos == tuple.len() {
        let vecs: Vec<Vec<Rat>> = tuple.iter().map(|&i| basis[i].clone()).collect();
        let v = form.eval_rat(x, pt, &vecs)?;
        return Ok(v.is_zero());
    }
    for i in start..idxs.len() {
        tuple[pos] = idxs[i];
        if !check_tuples(form, x, pt, basis, idxs, tuple, pos + 1, i + 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}
