use super::spaces::{gamma_matrix, QuasiHamiltonianSpace};
use crate::exactalg::{
    kernel_t, mat_identity, rank_t, row_space_rank, solve_t, ExactError, Mat, Rat, Rationals,
};
use num::Zero;
use serde::Serialize;

/// Reduction report at a point of μ⁻¹(e): the induced pairing on
/// ker(dμ)/im(v) with exact well-definedness, skewness and rank checks.
#[derive(Debug, Clone, Serialize)]
pub struct ReduceReport {
    pub at_identity_fiber: bool,
    pub action_inside_kernel: bool,
    pub descends: bool,
    pub skew: bool,
    pub nondegenerate: bool,
    pub kernel_dim: usize,
    pub action_image_dim: usize,
    pub reduced_dim: usize,
    pub reduced_rank: usize,
}

impl ReduceReport {
    pub fn all(&self) -> bool {
        self.at_identity_fiber
            && self.action_inside_kernel
            && self.descends
            && self.skew
            && self.nondegenerate
    }
}

/// Quasi-Hamiltonian reduction at pt with μ(pt) = e: γ descends to
/// ker(dμ_pt)/im(v_·(pt)) where it must be skew and nondegenerate.
pub fn reduce(q: &QuasiHamiltonianSpace, pt: &[Rat]) -> Result<ReduceReport, ExactError> {
    let f = Rationals;
    let group = &q.space.group;
    let n = group.n;
    let mu_val = q.mu.eval(&f, pt);
    let at_identity_fiber = {
        let id = mat_identity(&f, n);
        mu_val == id.data
    };
    let tb = q.space.tangent_basis_at(&f, pt);
    let tdim = tb.len();

    // dμ in the tangent basis
    let dmu = Mat::from_fn(n * n, tdim, |i, j| {
        let (_, push) = q.mu.push(&f, pt, &tb[j]);
        push[i].clone()
    });
    let ker = kernel_t(&f, &dmu);
    let kernel_dim = ker.len();
    // kernel vectors in ambient coordinates
    let ker_amb: Vec<Vec<Rat>> = ker
        .iter()
        .map(|c| {
            let mut v = vec![Rat::zero(); q.space.ncoords];
            for (j, cj) in c.iter().enumerate() {
                for i in 0..q.space.ncoords {
                    v[i] += cj * &tb[j][i];
                }
            }
            v
        })
        .collect();

    // action image v_x(pt) for the Lie basis
    let gdim = group.dim();
    let mut action_vecs = Vec::new();
    for k in 0..gdim {
        let mut x = vec![Rat::zero(); gdim];
        x[k] = crate::exactalg::rat_int(1);
        action_vecs.push(q.space.inf_action_at(&f, &x, pt));
    }
    let action_image_dim = row_space_rank(&f, &action_vecs);

    // express action vectors in the kernel basis (they must lie inside)
    let ker_mat = if kernel_dim == 0 {
        Mat { rows: q.space.ncoords, cols: 0, data: vec![] }
    } else {
        Mat::from_fn(q.space.ncoords, kernel_dim, |i, j| ker_amb[j][i].clone())
    };
    let mut action_in_kernel = true;
    let mut action_coords = Vec::new();
    for v in &action_vecs {
        match solve_t(&f, &ker_mat, v) {
            Some(c) => action_coords.push(c),
            None => {
                action_in_kernel = false;
            }
        }
    }

    // γ on the kernel basis
    let gamma_k = gamma_matrix(&q.gamma, gdim, pt, &ker_amb)?;
    // descends iff γ(im v, ker) = 0
    let mut descends = true;
    if action_in_kernel {
        for c in &action_coords {
            for j in 0..kernel_dim {
                let mut acc = Rat::zero();
                for (i, ci) in c.iter().enumerate() {
                    acc += ci * gamma_k.at(i, j);
                }
                descends &= acc.is_zero();
            }
        }
    } else {
        descends = false;
    }

    // quotient: complete the action image to a kernel basis; the reduced
    // pairing is γ on the complement modulo the image
    let mut span: Vec<Vec<Rat>> = Vec::new();
    for c in &action_coords {
        span.push(c.clone());
    }
    let mut quotient_idx = Vec::new();
    for i in 0..kernel_dim {
        let mut e = vec![Rat::zero(); kernel_dim];
        e[i] = crate::exactalg::rat_int(1);
        let before = row_space_rank(&f, &span);
        span.push(e.clone());
        if row_space_rank(&f, &span) > before {
            quotient_idx.push(i);
        } else {
            span.pop();
        }
    }
    let reduced_dim = quotient_idx.len();
    let reduced = Mat::from_fn(reduced_dim, reduced_dim, |a, b| {
        gamma_k.at(quotient_idx[a], quotient_idx[b]).clone()
    });
    let skew = (0..reduced_dim)
        .all(|i| (0..reduced_dim).all(|j| reduced.at(i, j) == &-reduced.at(j, i).clone()));
    let reduced_rank = rank_t(&f, &reduced);

    Ok(ReduceReport {
        at_identity_fiber,
        action_inside_kernel: action_in_kernel,
        descends,
        skew,
        nondegenerate: reduced_rank == reduced_dim,
        kernel_dim,
        action_image_dim,
        reduced_dim,
        reduced_rank,
    })
}
