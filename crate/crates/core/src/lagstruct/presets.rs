use super::spaces::{HamiltonianSpace, PointSampler, QuasiHamiltonianSpace};
use crate::eqforms::{basis_left_inverse, EqForm, Form, GSpace, PolyMap};
use crate::exactalg::{rat, rat_int, ExactError, Mat, Polynomial, Rat, Rationals};
use crate::liecore::{trace_gram, InvariantPairing, MatrixGroup};
use num::Zero;
use std::sync::Arc;

fn entry_poly(nvars: usize, n: usize, off: usize, i: usize, j: usize) -> Polynomial {
    Polynomial::var(nvars, off + i * n + j)
}

/// Product of two matrix polynomials given entrywise.
fn poly_mat_mul(n: usize, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
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

/// The internally fused double D(G) = G × G with diagonal conjugation,
/// μ(a,b) = aba⁻¹b⁻¹ and the AMM 2-form
/// γ_D = ½⟨a*θ, b*θ̄⟩ + ½⟨a*θ̄, b*θ⟩.
pub fn double(group: &Arc<MatrixGroup>, pairing: &InvariantPairing) -> QuasiHamiltonianSpace {
    let n = group.n;
    let gv = n * n;
    let nvars = 2 * gv;
    let adjoint = GSpace::adjoint(group.clone());
    let prod = GSpace::product_over(
        Arc::new(MatrixGroup::product(group, group)),
        &adjoint,
        &adjoint,
    );
    let diag = diagonal_hom(group);
    let space = Arc::new(prod.restrict_action(group.clone(), &diag));

    // μ = a·b·a⁻¹·b⁻¹
    let a_entries: Vec<Polynomial> = (0..gv).map(|v| Polynomial::var(nvars, v)).collect();
    let b_entries: Vec<Polynomial> = (0..gv).map(|v| Polynomial::var(nvars, gv + v)).collect();
    let a_inv: Vec<Polynomial> = group
        .inverse_map
        .iter()
        .map(|p| p.remap(&(0..gv).collect::<Vec<_>>(), nvars))
        .collect();
    let b_inv: Vec<Polynomial> = group
        .inverse_map
        .iter()
        .map(|p| p.remap(&(gv..2 * gv).collect::<Vec<_>>(), nvars))
        .collect();
    let mu_entries = poly_mat_mul(
        n,
        &poly_mat_mul(n, &poly_mat_mul(n, &a_entries, &b_entries), &a_inv),
        &b_inv,
    );
    let mu = PolyMap::new(nvars, mu_entries);

    let proj_a = PolyMap::new(nvars, a_entries);
    let proj_b = PolyMap::new(nvars, b_entries);
    let left_inv = basis_left_inverse(group);
    let gamma = Form::Sum(vec![
        Form::PairingWedge {
            m1: proj_a.clone(),
            m2: proj_b.clone(),
            group: group.clone(),
            gram: pairing.gram.clone(),
            left_inv: left_inv.clone(),
            bar1: false,
            bar2: true,
        },
        Form::PairingWedge {
            m1: proj_a,
            m2: proj_b,
            group: group.clone(),
            gram: pairing.gram.clone(),
            left_inv,
            bar1: true,
            bar2: false,
        },
    ]);

    QuasiHamiltonianSpace {
        name: format!("double({})", group.family.label()),
        space,
        mu,
        gamma,
        pairing: pairing.clone(),
        sampler: PointSampler::Product(
            Box::new(PointSampler::GroupChart(group.clone())),
            Box::new(PointSampler::GroupChart(group.clone())),
        ),
    }
}

/// Block-diagonal embedding h ↦ (h, h) as a polynomial map on entries.
pub fn diagonal_hom(group: &MatrixGroup) -> PolyMap {
    let n = group.n;
    let gv = n * n;
    let big = 2 * n;
    let mut out = vec![Polynomial::zero(gv); big * big];
    for i in 0..n {
        for j in 0..n {
            out[i * big + j] = Polynomial::var(gv, i * n + j);
            out[(n + i) * big + (n + j)] = Polynomial::var(gv, i * n + j);
        }
    }
    PolyMap::new(gv, out)
}

/// Conjugacy-class chart in SL₂: X = {det = 1, tr = c} for a regular
/// semisimple base point (c ≠ ±2), μ the inclusion, and the AMM class
/// form γ(v_x, v_y)|_g = ½(⟨x, Ad_g y⟩ − ⟨y, Ad_g x⟩) made polynomial by
/// the exact solution x(v) = (v·g⁻¹ − g⁻¹·v)/(4 − c²) of xg − gx = v.
pub fn sl2_conjugacy_class(
    group: &Arc<MatrixGroup>,
    pairing: &InvariantPairing,
    base: &Mat<Rat>,
) -> Result<QuasiHamiltonianSpace, ExactError> {
    assert_eq!(group.n, 2, "conjugacy-class chart is the SL2 instance");
    let q = Rationals;
    if !group.is_point(&q, base) {
        return Err(ExactError::UnsupportedScalar("base point not in the group"));
    }
    let c = base.at(0, 0) + base.at(1, 1);
    let disc = rat_int(4) - &c * &c;
    if disc.is_zero() {
        return Err(ExactError::UnsupportedScalar(
            "conjugacy-class chart needs a regular semisimple base (tr ≠ ±2)",
        ));
    }
    let gv = 4;
    let adjoint = GSpace::adjoint(group.clone());
    let mut equations = adjoint.equations.clone();
    // tr(g) = c
    let tr = Polynomial::var(gv, 0)
        .add(&Polynomial::var(gv, 3))
        .sub(&Polynomial::constant(gv, c.clone()));
    equations.push(tr);
    let space = Arc::new(GSpace::new(
        group.clone(),
        gv,
        equations,
        adjoint.action.clone(),
        format!("O(tr={c})"),
    ));

    let mu = PolyMap::identity(gv);

    // γ as a concrete 2-form: coefficient of dx_{e1}∧dx_{e2} is
    // γ(E_{e1}, E_{e2}) with the solve formula
    let s = disc.recip();
    let left_inv = basis_left_inverse(group);
    let d = group.dim();
    let adj: Vec<Polynomial> = group.inverse_map.clone();
    // x(E_e) entries as polynomials in g
    let solve_coords: Vec<Vec<Polynomial>> = (0..gv)
        .map(|e| {
            let ee: Vec<Polynomial> = (0..gv)
                .map(|v| {
                    if v == e {
                        Polynomial::constant(gv, rat_int(1))
                    } else {
                        Polynomial::zero(gv)
                    }
                })
                .collect();
            let x_mat: Vec<Polynomial> = poly_mat_mul(2, &ee, &adj)
                .iter()
                .zip(poly_mat_mul(2, &adj, &ee))
                .map(|(a, b)| a.sub(&b).scale(&s))
                .collect();
            // Lie coordinates of x
            (0..d)
                .map(|r| {
                    let mut p = Polynomial::zero(gv);
                    for v in 0..gv {
                        let l = left_inv.at(r, v);
                        if !l.is_zero() {
                            p = p.add(&x_mat[v].scale(l));
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    // Ad_g in Lie coordinates, symbolically: coords of g·b_k·g⁻¹
    let ad_polys: Vec<Vec<Polynomial>> = (0..d)
        .map(|k| {
            let bk: Vec<Polynomial> = (0..gv)
                .map(|v| Polynomial::constant(gv, group.basis_mats[k].at(v / 2, v % 2).clone()))
                .collect();
            let g_entries: Vec<Polynomial> = (0..gv).map(|v| Polynomial::var(gv, v)).collect();
            let conj = poly_mat_mul(2, &poly_mat_mul(2, &g_entries, &bk), &adj);
            (0..d)
                .map(|r| {
                    let mut p = Polynomial::zero(gv);
                    for v in 0..gv {
                        let l = left_inv.at(r, v);
                        if !l.is_zero() {
                            p = p.add(&conj[v].scale(l));
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    let pair_polys = |a: &[Polynomial], b: &[Polynomial]| -> Polynomial {
        let mut p = Polynomial::zero(gv);
        for i in 0..d {
            for j in 0..d {
                let g = pairing.gram.at(i, j);
                if !g.is_zero() && !a[i].is_zero() && !b[j].is_zero() {
                    p = p.add(&a[i].mul(&b[j]).scale(g));
                }
            }
        }
        p
    };
    let mut gamma = EqForm::zero(gv, d, 2, 0);
    let half = rat(1, 2);
    for e1 in 0..gv {
        for e2 in e1 + 1..gv {
            // ⟨x₁, Ad_g x₂⟩ − ⟨x₂, Ad_g x₁⟩ with Ad_g x = Σ_k x_k·Ad(b_k)
            let ad_x2: Vec<Polynomial> = (0..d)
                .map(|r| {
                    let mut p = Polynomial::zero(gv);
                    for k in 0..d {
                        if !solve_coords[e2][k].is_zero() {
                            p = p.add(&solve_coords[e2][k].mul(&ad_polys[k][r]));
                        }
                    }
                    p
                })
                .collect();
            let ad_x1: Vec<Polynomial> = (0..d)
                .map(|r| {
                    let mut p = Polynomial::zero(gv);
                    for k in 0..d {
                        if !solve_coords[e1][k].is_zero() {
                            p = p.add(&solve_coords[e1][k].mul(&ad_polys[k][r]));
                        }
                    }
                    p
                })
                .collect();
            let coeff = pair_polys(&solve_coords[e1], &ad_x2)
                .sub(&pair_polys(&solve_coords[e2], &ad_x1))
                .scale(&half);
            gamma.add_term(vec![e1, e2], coeff.extend(gv + d));
        }
    }

    Ok(QuasiHamiltonianSpace {
        name: format!("conjclass(tr={c})"),
        space,
        mu,
        gamma: Form::Concrete(gamma),
        pairing: pairing.clone(),
        sampler: PointSampler::Conjugates { group: group.clone(), base: base.clone() },
    })
}

/// The one-point quasi-Hamiltonian space with μ ≡ e and γ = 0.
pub fn point_at_identity(
    group: &Arc<MatrixGroup>,
    pairing: &InvariantPairing,
) -> QuasiHamiltonianSpace {
    let n = group.n;
    let space = Arc::new(GSpace::point(group.clone()));
    let mu = PolyMap::new(
        0,
        (0..n * n)
            .map(|v| {
                Polynomial::constant(0, if v / n == v % n { rat_int(1) } else { Rat::zero() })
            })
            .collect(),
    );
    QuasiHamiltonianSpace {
        name: "point-at-e".into(),
        space,
        mu,
        gamma: Form::Concrete(EqForm::zero(0, group.dim(), 2, 0)),
        pairing: pairing.clone(),
        sampler: PointSampler::Point,
    }
}

/// T*V for the standard representation of SL₂: γ = Σ dqᵢ∧dpᵢ and
/// μ(q,p)(x) = ⟨p, x·q⟩.
pub fn sl2_cotangent(group: &Arc<MatrixGroup>) -> HamiltonianSpace {
    assert_eq!(group.n, 2);
    let n = 2;
    let gv = n * n;
    let ncoords = 2 * n; // (q1, q2, p1, p2)
    let total = gv + ncoords;
    // action: q ↦ g·q, p ↦ adj(g)ᵀ·p
    let mut action = Vec::new();
    for i in 0..n {
        let mut poly = Polynomial::zero(total);
        for k in 0..n {
            poly = poly.add(
                &Polynomial::var(total, i * n + k).mul(&Polynomial::var(total, gv + k)),
            );
        }
        action.push(poly);
    }
    for i in 0..n {
        let mut poly = Polynomial::zero(total);
        for k in 0..n {
            // (adj(g)ᵀ)_{ik} = adj(g)_{ki}
            let adj_ki = group.inverse_map[k * n + i].remap(&(0..gv).collect::<Vec<_>>(), total);
            poly = poly.add(&adj_ki.mul(&Polynomial::var(total, gv + n + k)));
        }
        action.push(poly);
    }
    let space = Arc::new(GSpace::new(group.clone(), ncoords, Vec::new(), action, "T*V"));

    // μ_k = pᵀ·b_k·q in dual-basis coordinates
    let d = group.dim();
    let mu_out: Vec<Polynomial> = (0..d)
        .map(|k| {
            let mut poly = Polynomial::zero(ncoords);
            for i in 0..n {
                for j in 0..n {
                    let c = group.basis_mats[k].at(i, j);
                    if !c.is_zero() {
                        poly = poly.add(
                            &Polynomial::var(ncoords, n + i)
                                .mul(&Polynomial::var(ncoords, j))
                                .scale(c),
                        );
                    }
                }
            }
            poly
        })
        .collect();
    let mu = PolyMap::new(ncoords, mu_out);

    let mut gamma = EqForm::zero(ncoords, d, 2, 0);
    for i in 0..n {
        gamma.add_term(vec![i, n + i], Polynomial::constant(ncoords + d, rat_int(1)));
    }
    HamiltonianSpace {
        name: "cotangent(SL2 std rep)".into(),
        space,
        mu,
        gamma: Form::Concrete(gamma),
        sampler: PointSampler::Free,
    }
}

/// External product of quasi-Hamiltonian spaces: a G₁×G₂-space with block
/// moment map and γ₁ ⊞ γ₂.
pub fn product_qh(
    a: &QuasiHamiltonianSpace,
    b: &QuasiHamiltonianSpace,
) -> QuasiHamiltonianSpace {
    let pg = Arc::new(MatrixGroup::product(&a.space.group, &b.space.group));
    let space = Arc::new(GSpace::product_over(pg.clone(), &a.space, &b.space));
    let (na, nb) = (a.space.group.n, b.space.group.n);
    let nbig = na + nb;
    let nvars = a.space.ncoords + b.space.ncoords;
    // block moment map
    let mut mu_out = vec![Polynomial::zero(nvars); nbig * nbig];
    let map_a: Vec<usize> = (0..a.space.ncoords).collect();
    let map_b: Vec<usize> = (a.space.ncoords..nvars).collect();
    for i in 0..na {
        for j in 0..na {
            mu_out[i * nbig + j] = a.mu.out[i * na + j].remap(&map_a, nvars);
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            mu_out[(na + i) * nbig + (na + j)] = b.mu.out[i * nb + j].remap(&map_b, nvars);
        }
    }
    let mu = PolyMap::new(nvars, mu_out);
    // γ = pr₁*γ₁ + pr₂*γ₂
    let pr1 = PolyMap::new(nvars, map_a.iter().map(|&v| Polynomial::var(nvars, v)).collect());
    let pr2 = PolyMap::new(nvars, map_b.iter().map(|&v| Polynomial::var(nvars, v)).collect());
    let gamma = Form::Sum(vec![
        Form::Pullback { map: pr1, inner: Box::new(a.gamma.clone()) },
        Form::Pullback { map: pr2, inner: Box::new(b.gamma.clone()) },
    ]);
    let gram = block_gram(&a.pairing.gram, &b.pairing.gram);
    QuasiHamiltonianSpace {
        name: format!("{}×{}", a.name, b.name),
        space,
        mu,
        gamma,
        pairing: InvariantPairing::new(pg.lie.clone(), gram),
        sampler: PointSampler::Product(Box::new(a.sampler.clone()), Box::new(b.sampler.clone())),
    }
}

pub fn block_gram(a: &Mat<Rat>, b: &Mat<Rat>) -> Mat<Rat> {
    let (da, db) = (a.rows, b.rows);
    Mat::from_fn(da + db, da + db, |i, j| {
        if i < da && j < da {
            a.at(i, j).clone()
        } else if i >= da && j >= da {
            b.at(i - da, j - da).clone()
        } else {
            Rat::zero()
        }
    })
}

/// Standard presets by name, over SL₂ with the trace pairing.
pub fn standard_sl2() -> (Arc<MatrixGroup>, InvariantPairing) {
    let g = Arc::new(MatrixGroup::sl2());
    let p = InvariantPairing::new(g.lie.clone(), trace_gram(&g));
    (g, p)
}

pub fn sl2_regular_base() -> Mat<Rat> {
    // tr = 3: regular semisimple over Q
    Mat::from_rows(vec![vec![rat_int(2), rat_int(1)], vec![rat_int(1), rat_int(1)]])
}
