use super::form::{build_omega0, build_omega1, CartanElement, EqForm, Form};
use super::gspace::GSpace;
use crate::exactalg::{ExactError, Rat, Rationals};
use crate::liecore::{sample_lie_element, sample_points, InvariantPairing, MatrixGroup, SampleError};
use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use std::sync::Arc;

/// Closure verdict for ω = ω₀ + u·ω₁ on [G/Gᵃᵈ], split into the three
/// exact identities the Cartan differential decomposes into.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub dlr_omega0_zero: bool,
    pub d_omega0_plus_dlr_omega1_zero: bool,
    pub d_omega1_zero: bool,
    pub samples: usize,
}

impl ClosureReport {
    pub fn all(&self) -> bool {
        self.dlr_omega0_zero && self.d_omega0_plus_dlr_omega1_zero && self.d_omega1_zero
    }
}

pub struct AdjointStructure {
    pub space: Arc<GSpace>,
    pub omega0: EqForm,
    pub omega1: EqForm,
}

pub fn build_adjoint_structure(
    group: &Arc<MatrixGroup>,
    pairing: &InvariantPairing,
) -> Result<AdjointStructure, ExactError> {
    let space = Arc::new(GSpace::adjoint(group.clone()));
    let omega0 = build_omega0(group, pairing)?;
    let omega1 = build_omega1(group, pairing)?;
    Ok(AdjointStructure { space, omega0, omega1 })
}

impl AdjointStructure {
    pub fn cartan_element(&self) -> CartanElement {
        CartanElement::new(vec![
            (0, Form::Concrete(self.omega0.clone())),
            (1, Form::Concrete(self.omega1.clone())),
        ])
    }
}

/// Verify the three identities d_LRω₀ = 0, dω₀ + d_LRω₁ = 0, dω₁ = 0 at
/// `samples` random points, on all basis directions / pairs / triples of a
/// deterministic tangent basis plus random combinations.
pub fn check_cartan_closure(
    group: &Arc<MatrixGroup>,
    pairing: &InvariantPairing,
    samples: usize,
    seed: u64,
) -> Result<ClosureReport, ClosureError> {
    let st = build_adjoint_structure(group, pairing).map_err(ClosureError::Exact)?;
    let q = Rationals;
    let d_omega0 = st.omega0.de_rham();
    let d_omega1 = st.omega1.de_rham();
    let dlr_omega0 = st.omega0.contract_action(&st.space).map_err(ClosureError::Exact)?;
    let iota_omega1 = st.omega1.contract_action(&st.space).map_err(ClosureError::Exact)?;
    let pts = sample_points(group, &q, samples, seed).map_err(ClosureError::Sample)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let dim = group.dim();

    let xzero = vec![Rat::zero(); dim];
    let mut ok1 = true;
    let mut ok2 = true;
    let mut ok3 = true;
    for m in &pts {
        let tb = st.space.tangent_basis_at(&q, &m.data);
        let x = sample_lie_element(&q, dim, &mut rng);
        // identity 1 on every basis element and one random x
        for k in 0..dim {
            let mut xe = vec![Rat::zero(); dim];
            xe[k] = crate::exactalg::rat_int(1);
            ok1 &= dlr_omega0.eval(&q, &xe, &m.data, &[]).unwrap().is_zero();
        }
        ok1 &= dlr_omega0.eval(&q, &x, &m.data, &[]).unwrap().is_zero();
        // identity 2 on all tangent-basis pairs: dω₀ + d_LRω₁ = 0, i.e.
        // dω₀(x) = ι_{v_x}ω₁ since d_LR = −ι
        let c2a = d_omega0.coeffs_at(&q, &x, &m.data).unwrap();
        let c2b = iota_omega1.coeffs_at(&q, &x, &m.data).unwrap();
        for i in 0..tb.len() {
            for j in i + 1..tb.len() {
                let vs = vec![tb[i].clone(), tb[j].clone()];
                let a = EqForm::contract_with(&q, &c2a, &vs);
                let b = EqForm::contract_with(&q, &c2b, &vs);
                ok2 &= (a - b).is_zero();
            }
        }
        // identity 3 on all tangent-basis quadruples
        let c3 = d_omega1.coeffs_at(&q, &xzero, &m.data).unwrap();
        let n = tb.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for e in c + 1..n {
                        let vs = vec![tb[a].clone(), tb[b].clone(), tb[c].clone(), tb[e].clone()];
                        ok3 &= EqForm::contract_with(&q, &c3, &vs).is_zero();
                    }
                }
            }
        }
        if n < 4 {
            // dimension below 4: restriction of any 4-form vanishes for rank
            // reasons; still exercise the evaluator on dependent vectors
            let vs = vec![tb[0].clone(), tb[0].clone(), tb[0].clone(), tb[0].clone()];
            ok3 &= d_omega1.eval(&q, &xzero, &m.data, &vs).unwrap().is_zero();
        }
    }
    Ok(ClosureReport {
        dlr_omega0_zero: ok1,
        d_omega0_plus_dlr_omega1_zero: ok2,
        d_omega1_zero: ok3,
        samples: pts.len(),
    })
}

#[derive(Debug)]
pub enum ClosureError {
    Exact(ExactError),
    Sample(SampleError),
}

impl std::fmt::Display for ClosureError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosureError::Exact(e) => write!(f, "{e}"),
            ClosureError::Sample(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ClosureError {}

/// Equivariance of a form: f(Ad_h x, h·p, h·v…) = f(x, p, v…) at samples.
pub fn check_equivariance(
    space: &GSpace,
    form: &Form,
    x: &[Rat],
    h: &crate::exactalg::Mat<Rat>,
    pt: &[Rat],
    vecs: &[Vec<Rat>],
) -> Result<bool, ExactError> {
    let q = Rationals;
    let lhs = form.eval_rat(x, pt, vecs)?;
    let adh = space.group.ad_matrix(&q, h);
    let adx = crate::exactalg::mat_vec(&q, &adh, x);
    let hpt = space.act(&q, h, pt);
    let hv: Vec<Vec<Rat>> = vecs.iter().map(|v| space.act_tangent(&q, h, pt, v)).collect();
    let rhs = form.eval_rat(&adx, &hpt, &hv)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::trace_gram;

    fn sl2_setup() -> (Arc<MatrixGroup>, InvariantPairing) {
        let g = Arc::new(MatrixGroup::sl2());
        let p = InvariantPairing::new(g.lie.clone(), trace_gram(&g));
        (g, p)
    }

    #[test]
    fn sl2_cartan_closure() {
        let (g, p) = sl2_setup();
        let r = check_cartan_closure(&g, &p, 20, 0).unwrap();
        assert!(r.all(), "{r:?}");
    }

    #[test]
    fn torus_cartan_closure() {
        let g = Arc::new(MatrixGroup::torus(1));
        let gram = crate::exactalg::mat_identity(&Rationals, 1);
        let p = InvariantPairing::new(g.lie.clone(), gram);
        let r = check_cartan_closure(&g, &p, 10, 1).unwrap();
        assert!(r.all());
    }

    #[test]
    fn cartan_diff_of_full_element_vanishes_at_samples() {
        // the packaged ω₀ + uω₁ is closed for the full differential
        let (g, p) = sl2_setup();
        let st = build_adjoint_structure(&g, &p).unwrap();
        let elt = st.cartan_element();
        let diff = elt.cartan_diff(&st.space);
        let q = Rationals;
        let pts = sample_points(&g, &q, 5, 3).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for m in &pts {
            let x = sample_lie_element(&q, 3, &mut rng);
            let tb = st.space.tangent_basis_at(&q, &m.data);
            for (u, form) in &diff.summands {
                let deg = form.degree();
                if deg > tb.len() {
                    continue;
                }
                let vs: Vec<Vec<Rat>> = (0..deg).map(|i| tb[i].clone()).collect();
                let v = form.eval_rat(&x, &m.data, &vs).unwrap();
                assert!(v.is_zero(), "u^{u} component nonzero");
            }
        }
    }

    #[test]
    fn cartan_diff_of_omega0_alone_sees_the_key() {
        // d(ω₀) alone is nonzero;  it equals −d_LR ω₁ when evaluated
        let (g, p) = sl2_setup();
        let st = build_adjoint_structure(&g, &p).unwrap();
        let q = Rationals;
        let d0 = st.omega0.de_rham();
        let iota1 = st.omega1.contract_action(&st.space).unwrap();
        let pts = sample_points(&g, &q, 10, 4).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let mut saw_nonzero = false;
        for m in &pts {
            let x = sample_lie_element(&q, 3, &mut rng);
            let tb = st.space.tangent_basis_at(&q, &m.data);
            for i in 0..tb.len() {
                for j in i + 1..tb.len() {
                    let vs = vec![tb[i].clone(), tb[j].clone()];
                    let a = d0.eval(&q, &x, &m.data, &vs).unwrap();
                    let b = iota1.eval(&q, &x, &m.data, &vs).unwrap();
                    assert_eq!(a, b);
                    saw_nonzero |= !a.is_zero();
                }
            }
        }
        assert!(saw_nonzero, "dω₀ should not vanish identically");
    }

    #[test]
    fn built_forms_are_equivariant() {
        let (g, p) = sl2_setup();
        let st = build_adjoint_structure(&g, &p).unwrap();
        let q = Rationals;
        let pts = sample_points(&g, &q, 6, 5).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let w0 = Form::Concrete(st.omega0.clone());
        let w1 = Form::Concrete(st.omega1.clone());
        for w in [&pts[0], &pts[1]] {
            for m in &pts[2..] {
                let x = sample_lie_element(&q, 3, &mut rng);
                let tb = st.space.tangent_basis_at(&q, &m.data);
                let v1 = crate::eqforms::testutil::random_combo(&tb, &mut rng);
                assert!(check_equivariance(&st.space, &w0, &x, w, &m.data, &[v1.clone()])
                    .unwrap());
                let v2 = crate::eqforms::testutil::random_combo(&tb, &mut rng);
                let v3 = crate::eqforms::testutil::random_combo(&tb, &mut rng);
                assert!(check_equivariance(&st.space, &w1, &x, w, &m.data, &[v1, v2, v3])
                    .unwrap());
            }
        }
    }
}
