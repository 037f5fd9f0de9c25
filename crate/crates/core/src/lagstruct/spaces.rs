use crate::eqforms::{build_omega0, build_omega1, EqForm, Form, GSpace, PolyMap};
use crate::exactalg::{
    kernel_t, rank_t, ExactError, Mat, Rat, Rationals,
};
use crate::liecore::{InvariantPairing, SampleField};
use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use std::sync::Arc;

/// Exact point sampling on preset charts.
#[derive(Debug, Clone)]
pub enum PointSampler {
    /// chart with no equations: any coordinate vector is a point
    Free,
    /// chart is the group itself
    GroupChart(Arc<crate::liecore::MatrixGroup>),
    /// conjugates h·base·h⁻¹ of a base point, h sampled from the group
    Conjugates { group: Arc<crate::liecore::MatrixGroup>, base: Mat<Rat> },
    Product(Box<PointSampler>, Box<PointSampler>),
    /// the empty chart
    Point,
}

impl PointSampler {
    pub fn sample(&self, rng: &mut ChaCha20Rng) -> Vec<Rat> {
        let q = Rationals;
        match self {
            PointSampler::Free => {
                // small random rationals; dimension recovered by caller
                unreachable!("Free sampler needs dimension; use sample_dim")
            }
            PointSampler::GroupChart(g) => {
                crate::liecore::sample_one_point(g, &q, rng).data
            }
            PointSampler::Conjugates { group, base } => {
                let h = crate::liecore::sample_one_point(group, &q, rng);
                let hi = group.invert_point(&q, &h);
                crate::exactalg::mat_mul(&q, &crate::exactalg::mat_mul(&q, &h, base), &hi).data
            }
            PointSampler::Product(a, b) => {
                let mut out = a.sample(rng);
                out.extend(b.sample(rng));
                out
            }
            PointSampler::Point => Vec::new(),
        }
    }

    pub fn sample_dim(&self, ncoords: usize, rng: &mut ChaCha20Rng) -> Vec<Rat> {
        match self {
            PointSampler::Free => (0..ncoords).map(|_| Rationals.random_el(rng)).collect(),
            other => other.sample(rng),
        }
    }
}

/// Hamiltonian space over [𝔤*/G]: equivariant μ: X → 𝔤* and an invariant
/// 2-form γ with ι_{v_x}γ = μ*dx, dγ = 0, γ nondegenerate.
#[derive(Clone)]
pub struct HamiltonianSpace {
    pub name: String,
    pub space: Arc<GSpace>,
    /// μ in dual-basis coordinates: dim(𝔤) output polynomials
    pub mu: PolyMap,
    pub gamma: Form,
    pub sampler: PointSampler,
}

/// Quasi-Hamiltonian space over [G/Gᵃᵈ]: group-valued μ with the AMM
/// axioms, all checked by exact evaluation.
#[derive(Clone)]
pub struct QuasiHamiltonianSpace {
    pub name: String,
    pub space: Arc<GSpace>,
    /// μ: X → G, entries of the image matrix
    pub mu: PolyMap,
    pub gamma: Form,
    pub pairing: InvariantPairing,
    pub sampler: PointSampler,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct StructureVerdict {
    /// γ invariance and μ equivariance at sampled group elements
    pub invariant: bool,
    /// ι_{v_x}γ = μ*⟨β,x⟩ (or μ*dx in the Hamiltonian case)
    pub moment_condition: bool,
    /// dγ = −μ*ω₁ (or dγ = 0)
    pub closure: bool,
    /// ker(γ) ∩ ker(dμ) = 0 (or γ nondegenerate) at each sample
    pub nondegenerate: bool,
    pub samples: usize,
}

impl StructureVerdict {
    pub fn all(&self) -> bool {
        self.invariant && self.moment_condition && self.closure && self.nondegenerate
    }

    pub fn failed_identities(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.invariant {
            out.push("a:invariance");
        }
        if !self.moment_condition {
            out.push("b:moment-condition");
        }
        if !self.closure {
            out.push("c:closure");
        }
        if !self.nondegenerate {
            out.push("d:nondegeneracy");
        }
        out
    }
}

/// Options for the quasi-Hamiltonian check; dropping the ω₁ correction
/// replaces identity (c) by dγ = 0.
#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub samples: usize,
    pub seed: u64,
    pub omega1_correction: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { samples: 20, seed: 0, omega1_correction: true }
    }
}

pub fn check_quasi_hamiltonian(
    qh: &QuasiHamiltonianSpace,
    opts: CheckOptions,
) -> Result<StructureVerdict, ExactError> {
    let q = Rationals;
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let group = &qh.space.group;
    let gdim = group.dim();
    let target = Arc::new(group.clone());
    let omega0 = build_omega0(&target, &qh.pairing)?;
    let omega1 = build_omega1(&target, &qh.pairing)?;
    let d_gamma = Form::ExtD(Box::new(qh.gamma.clone()));
    let pulled_omega1 =
        Form::Pullback { map: qh.mu.clone(), inner: Box::new(Form::Concrete(omega1)) };
    let pulled_omega0 =
        Form::Pullback { map: qh.mu.clone(), inner: Box::new(Form::Concrete(omega0)) };

    let mut invariant = true;
    let mut moment = true;
    let mut closure = true;
    let mut nondeg = true;

    for _ in 0..opts.samples {
        let pt = qh.sampler.sample_dim(qh.space.ncoords, &mut rng);
        debug_assert!(qh.space.is_point(&q, &pt));
        let tb = qh.space.tangent_basis_at(&q, &pt);
        let tdim = tb.len();
        let h = crate::liecore::sample_one_point(group, &q, &mut rng);
        let xzero = vec![Rat::zero(); gdim];

        // (a) γ invariance and μ equivariance under h
        let hpt = qh.space.act(&q, &h, &pt);
        let hi = group.invert_point(&q, &h);
        let mu_pt = qh.mu.eval(&q, &pt);
        let mu_hpt = qh.mu.eval(&q, &hpt);
        let mu_mat = Mat { rows: group.n, cols: group.n, data: mu_pt.clone() };
        let conj = crate::exactalg::mat_mul(
            &q,
            &crate::exactalg::mat_mul(&q, &h, &mu_mat),
            &hi,
        );
        invariant &= conj.data == mu_hpt;
        if tdim >= 2 {
            let v = random_combo(&tb, &mut rng);
            let w = random_combo(&tb, &mut rng);
            let lhs = qh.gamma.eval_rat(&xzero, &pt, &[v.clone(), w.clone()])?;
            let hv = qh.space.act_tangent(&q, &h, &pt, &v);
            let hw = qh.space.act_tangent(&q, &h, &pt, &w);
            let rhs = qh.gamma.eval_rat(&xzero, &hpt, &[hv, hw])?;
            invariant &= lhs == rhs;
        }

        // (b) ι_{v_x}γ = μ*⟨β, x⟩ for every basis x against every basis w
        for k in 0..gdim {
            let mut x = vec![Rat::zero(); gdim];
            x[k] = crate::exactalg::rat_int(1);
            let vx = qh.space.inf_action_at(&q, &x, &pt);
            for w in &tb {
                let lhs = qh.gamma.eval_rat(&xzero, &pt, &[vx.clone(), w.clone()])?;
                let rhs = pulled_omega0.eval_rat(&x, &pt, &[w.clone()])?;
                moment &= lhs == rhs;
            }
        }

        // (c) dγ = −μ*ω₁ (or dγ = 0 with the correction dropped) on basis
        // triples
        for i in 0..tdim {
            for j in i + 1..tdim {
                for k in j + 1..tdim {
                    let vs = vec![tb[i].clone(), tb[j].clone(), tb[k].clone()];
                    let lhs = d_gamma.eval_rat(&xzero, &pt, &vs)?;
                    let rhs = if opts.omega1_correction {
                        -pulled_omega1.eval_rat(&xzero, &pt, &vs)?
                    } else {
                        Rat::zero()
                    };
                    closure &= lhs == rhs;
                }
            }
        }

        // (d) ker γ ∩ ker dμ = 0 via the rank of the stacked matrix
        let gamma_mat = Mat::from_fn(tdim, tdim, |i, j| {
            qh.gamma.eval_rat(&xzero, &pt, &[tb[i].clone(), tb[j].clone()]).expect("2-form")
        });
        let dmu = Mat::from_fn(group.n * group.n, tdim, |i, j| {
            let (_, push) = qh.mu.push(&q, &pt, &tb[j]);
            push[i].clone()
        });
        let stacked = gamma_mat.vstack(&dmu);
        nondeg &= kernel_t(&q, &stacked).is_empty();
    }

    Ok(StructureVerdict {
        invariant,
        moment_condition: moment,
        closure,
        nondegenerate: nondeg,
        samples: opts.samples,
    })
}

pub fn check_hamiltonian(
    h: &HamiltonianSpace,
    opts: CheckOptions,
) -> Result<StructureVerdict, ExactError> {
    let q = Rationals;
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let group = &h.space.group;
    let gdim = group.dim();
    let d_gamma = Form::ExtD(Box::new(h.gamma.clone()));

    let mut invariant = true;
    let mut moment = true;
    let mut closure = true;
    let mut nondeg = true;

    for _ in 0..opts.samples {
        let pt = h.sampler.sample_dim(h.space.ncoords, &mut rng);
        let tb = h.space.tangent_basis_at(&q, &pt);
        let tdim = tb.len();
        let he = crate::liecore::sample_one_point(group, &q, &mut rng);
        let xzero = vec![Rat::zero(); gdim];

        // (a) invariance of γ and coadjoint equivariance of μ
        let hpt = h.space.act(&q, &he, &pt);
        let mu_pt = h.mu.eval(&q, &pt);
        let mu_hpt = h.mu.eval(&q, &hpt);
        // μ(h·p) must equal the coadjoint action of h on μ(p):
        // ⟨μ(h·p), x⟩ = ⟨μ(p), Ad_{h⁻¹} x⟩
        let ad_hi = group.ad_matrix(&q, &group.invert_point(&q, &he));
        for k in 0..gdim {
            let adx = ad_hi.col(k);
            let rhs: Rat = mu_pt.iter().zip(&adx).map(|(a, b)| a * b).sum();
            invariant &= mu_hpt[k] == rhs;
        }
        if tdim >= 2 {
            let v = random_combo(&tb, &mut rng);
            let w = random_combo(&tb, &mut rng);
            let lhs = h.gamma.eval_rat(&xzero, &pt, &[v.clone(), w.clone()])?;
            let hv = h.space.act_tangent(&q, &he, &pt, &v);
            let hw = h.space.act_tangent(&q, &he, &pt, &w);
            invariant &= lhs == h.gamma.eval_rat(&xzero, &hpt, &[hv, hw])?;
        }

        // (b) ι_{v_x}γ = μ*dx on all basis pairs
        for k in 0..gdim {
            let mut x = vec![Rat::zero(); gdim];
            x[k] = crate::exactalg::rat_int(1);
            let vx = h.space.inf_action_at(&q, &x, &pt);
            for w in &tb {
                let lhs = h.gamma.eval_rat(&xzero, &pt, &[vx.clone(), w.clone()])?;
                let (_, push) = h.mu.push(&q, &pt, w);
                moment &= lhs == push[k];
            }
        }

        // (c) dγ = 0
        for i in 0..tdim {
            for j in i + 1..tdim {
                for k in j + 1..tdim {
                    let vs = vec![tb[i].clone(), tb[j].clone(), tb[k].clone()];
                    closure &= d_gamma.eval_rat(&xzero, &pt, &vs)?.is_zero();
                }
            }
        }

        // (d) γ nondegenerate on the tangent space
        let gamma_mat = Mat::from_fn(tdim, tdim, |i, j| {
            h.gamma.eval_rat(&xzero, &pt, &[tb[i].clone(), tb[j].clone()]).expect("2-form")
        });
        nondeg &= rank_t(&q, &gamma_mat) == tdim;
    }

    Ok(StructureVerdict {
        invariant,
        moment_condition: moment,
        closure,
        nondegenerate: nondeg,
        samples: opts.samples,
    })
}

pub(crate) fn random_combo(basis: &[Vec<Rat>], rng: &mut ChaCha20Rng) -> Vec<Rat> {
    use rand::Rng;
    if basis.is_empty() {
        return Vec::new();
    }
    let n = basis[0].len();
    let mut out = vec![Rat::zero(); n];
    for b in basis {
        let c = crate::exactalg::rat_int(rng.gen_range(-2..=2));
        for i in 0..n {
            out[i] += &c * &b[i];
        }
    }
    out
}

/// Evaluate γ against a tangent basis as an exact matrix.
pub fn gamma_matrix(
    gamma: &Form,
    gdim: usize,
    pt: &[Rat],
    tb: &[Vec<Rat>],
) -> Result<Mat<Rat>, ExactError> {
    let xz = vec![Rat::zero(); gdim];
    let n = tb.len();
    let mut m = crate::exactalg::mat_zero(&Rationals, n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, gamma.eval_rat(&xz, pt, &[tb[i].clone(), tb[j].clone()])?);
        }
    }
    Ok(m)
}

/// EqForm wrapper so degree-0 2-forms built concretely still accept the
/// (empty in 𝔤) evaluation convention used above.
pub fn concrete_two_form(e: EqForm) -> Form {
    Form::Concrete(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_failed_identity_names() {
        let v = StructureVerdict {
            invariant: true,
            moment_condition: false,
            closure: true,
            nondegenerate: true,
            samples: 1,
        };
        assert_eq!(v.failed_identities(), vec!["b:moment-condition"]);
        assert!(!v.all());
    }
}
