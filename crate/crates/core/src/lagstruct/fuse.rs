use super::presets::block_gram;
use super::spaces::{check_quasi_hamiltonian, CheckOptions, QuasiHamiltonianSpace};
use crate::eqforms::{basis_left_inverse, Form, PolyMap};
use crate::exactalg::{ExactError, Mat, Polynomial, Rat};
use crate::liecore::{Family, InvariantPairing, MatrixGroup};
use std::sync::Arc;

#[derive(Debug)]
pub enum FuseError {
    /// The acting group does not start with two equal factors.
    NotFusable(String),
    /// The input failed its own quasi-Hamiltonian check.
    InputFails(Vec<&'static str>),
    Exact(ExactError),
}

impl std::fmt::Display for FuseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FuseError::NotFusable(s) => write!(f, "cannot fuse: {s}"),
            FuseError::InputFails(ids) => write!(f, "input fails quasi-Hamiltonian check: {ids:?}"),
            FuseError::Exact(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FuseError {}

/// Internal fusion: compose the two leading G-factors of a G×G×H-space
/// through group multiplication, correcting the 2-form by
/// ½⟨μ₁*θ, μ₂*θ̄⟩. The input must pass its own check first.
pub fn fuse(q: &QuasiHamiltonianSpace, opts: CheckOptions) -> Result<QuasiHamiltonianSpace, FuseError> {
    let verdict = check_quasi_hamiltonian(q, opts).map_err(FuseError::Exact)?;
    if !verdict.all() {
        return Err(FuseError::InputFails(verdict.failed_identities()));
    }
    fuse_unchecked(q)
}

/// The fusion construction itself (used by `fuse` after the gate, and by
/// tests that deliberately feed through unchecked data).
pub fn fuse_unchecked(q: &QuasiHamiltonianSpace) -> Result<QuasiHamiltonianSpace, FuseError> {
    let big = &q.space.group;
    let factors = match &big.family {
        Family::Product(fs) if fs.len() >= 2 && fs[0] == fs[1] => fs.clone(),
        other => {
            return Err(FuseError::NotFusable(format!(
                "group {} is not G×G×H with equal leading factors",
                other.label()
            )))
        }
    };
    let g_fam = factors[0].clone();
    let g_group = Arc::new(MatrixGroup::from_family(&g_fam));
    let ng = g_group.n;
    let rest_fams: Vec<Family> = factors[2..].to_vec();
    let (new_group, nh) = if rest_fams.is_empty() {
        (g_group.clone(), 0)
    } else {
        let h_fam = if rest_fams.len() == 1 {
            rest_fams[0].clone()
        } else {
            Family::Product(rest_fams.clone())
        };
        let h_group = MatrixGroup::from_family(&h_fam);
        let nh = h_group.n;
        (Arc::new(MatrixGroup::product(&g_group, &h_group)), nh)
    };

    // φ: new → big, (g, h) ↦ (g, g, h)
    let n_new = new_group.n;
    let n_big = big.n;
    let nv = n_new * n_new;
    let mut phi = vec![Polynomial::zero(nv); n_big * n_big];
    for i in 0..ng {
        for j in 0..ng {
            let v = Polynomial::var(nv, i * n_new + j);
            phi[i * n_big + j] = v.clone();
            phi[(ng + i) * n_big + (ng + j)] = v;
        }
    }
    for i in 0..nh {
        for j in 0..nh {
            phi[(2 * ng + i) * n_big + (2 * ng + j)] =
                Polynomial::var(nv, (ng + i) * n_new + (ng + j));
        }
    }
    let phi = PolyMap::new(nv, phi);
    let space = Arc::new(q.space.restrict_action(new_group.clone(), &phi));

    // moment blocks of the input
    let nvars = q.space.ncoords;
    let mu1 = block_of(&q.mu, n_big, 0, ng, nvars);
    let mu2 = block_of(&q.mu, n_big, ng, ng, nvars);
    // fused moment map: (μ₁·μ₂, μ_H)
    let prod = mat_poly_mul(ng, &mu1.out, &mu2.out);
    let mut mu_out = vec![Polynomial::zero(nvars); n_new * n_new];
    for i in 0..ng {
        for j in 0..ng {
            mu_out[i * n_new + j] = prod[i * ng + j].clone();
        }
    }
    for i in 0..nh {
        for j in 0..nh {
            mu_out[(ng + i) * n_new + (ng + j)] =
                q.mu.out[(2 * ng + i) * n_big + (2 * ng + j)].clone();
        }
    }
    let mu = PolyMap::new(nvars, mu_out);

    // γ' = γ + ½⟨μ₁*θ, μ₂*θ̄⟩
    let g_gram = sub_gram(&q.pairing.gram, 0, g_group.dim());
    let correction = Form::PairingWedge {
        m1: mu1,
        m2: mu2,
        group: g_group.clone(),
        gram: g_gram.clone(),
        left_inv: basis_left_inverse(&g_group),
        bar1: false,
        bar2: true,
    };
    let gamma = Form::Sum(vec![q.gamma.clone(), correction]);

    let new_gram = if nh == 0 {
        g_gram
    } else {
        let h_dim = new_group.dim() - g_group.dim();
        let h_gram = sub_gram(&q.pairing.gram, 2 * g_group.dim(), h_dim);
        block_gram(&g_gram, &h_gram)
    };

    Ok(QuasiHamiltonianSpace {
        name: format!("fuse({})", q.name),
        space,
        mu,
        gamma,
        pairing: InvariantPairing::new(new_group.lie.clone(), new_gram),
        sampler: q.sampler.clone(),
    })
}

fn block_of(mu: &PolyMap, n_big: usize, off: usize, n: usize, nvars: usize) -> PolyMap {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(mu.out[(off + i) * n_big + (off + j)].clone());
        }
    }
    let _ = nvars;
    PolyMap::new(mu.nin, out)
}

fn mat_poly_mul(n: usize, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let nvars = a[0].nvars;
    let mut out = vec![Polynomial::zero(nvars); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut p = Polynomial::zero(nvars);
            for k in 0..n {
                p = p.add(&a[i * n + k].mul(&b[k * n + j]));
            }
            out[i * n + j] = p;
        }
    }
    out
}

fn sub_gram(gram: &Mat<Rat>, off: usize, d: usize) -> Mat<Rat> {
    Mat::from_fn(d, d, |i, j| gram.at(off + i, off + j).clone())
}
