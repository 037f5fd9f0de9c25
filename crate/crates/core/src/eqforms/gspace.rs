use crate::exactalg::{
    kernel_t, mat_mul, rat_int, Field, Jet, JetField, Mat, Polynomial, Rat, Rationals,
};
use crate::liecore::MatrixGroup;
use num::Zero;
use std::sync::Arc;

/// Polynomial map between affine charts.
#[derive(Debug, Clone)]
pub struct PolyMap {
    pub nin: usize,
    pub out: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(nin: usize, out: Vec<Polynomial>) -> PolyMap {
        for p in &out {
            assert_eq!(p.nvars, nin);
        }
        PolyMap { nin, out }
    }

    pub fn identity(n: usize) -> PolyMap {
        PolyMap::new(n, (0..n).map(|i| Polynomial::var(n, i)).collect())
    }

    pub fn nout(&self) -> usize {
        self.out.len()
    }

    pub fn eval<F: Field>(&self, f: &F, pt: &[F::El]) -> Vec<F::El> {
        self.out.iter().map(|p| p.eval(f, pt).expect("arity")).collect()
    }

    /// Image point together with the pushforward of a tangent vector,
    /// computed by one jet pass.
    pub fn push<F: Field>(&self, f: &F, pt: &[F::El], v: &[F::El]) -> (Vec<F::El>, Vec<F::El>) {
        let jf = JetField::new(f.clone());
        let args: Vec<Jet<F::El>> = pt
            .iter()
            .zip(v)
            .map(|(a, b)| Jet { v: a.clone(), d: b.clone() })
            .collect();
        let out = self.eval(&jf, &args);
        (out.iter().map(|j| j.v.clone()).collect(), out.into_iter().map(|j| j.d).collect())
    }

    pub fn compose(&self, inner: &PolyMap) -> PolyMap {
        assert_eq!(self.nin, inner.nout());
        PolyMap::new(inner.nin, self.out.iter().map(|p| p.compose(&inner.out)).collect())
    }
}

/// Affine G-space: a matrix-coordinate chart with defining equations and
/// the group action as a polynomial map in (group entries, chart coords).
#[derive(Debug, Clone)]
pub struct GSpace {
    pub group: Arc<MatrixGroup>,
    pub ncoords: usize,
    pub equations: Vec<Polynomial>,
    /// action(g, p): polynomials in n² + ncoords variables (g first)
    pub action: Vec<Polynomial>,
    /// infinitesimal action: for each Lie basis element, the coordinates of
    /// v_k(p) as polynomials in the chart coordinates
    pub inf_action: Vec<Vec<Polynomial>>,
    pub label: String,
}

impl GSpace {
    pub fn new(
        group: Arc<MatrixGroup>,
        ncoords: usize,
        equations: Vec<Polynomial>,
        action: Vec<Polynomial>,
        label: impl Into<String>,
    ) -> GSpace {
        let gv = group.n * group.n;
        for e in &equations {
            assert_eq!(e.nvars, ncoords);
        }
        assert_eq!(action.len(), ncoords);
        for a in &action {
            assert_eq!(a.nvars, gv + ncoords);
        }
        let inf_action = derive_infinitesimal(&group, ncoords, &action);
        GSpace { group, ncoords, equations, action, inf_action, label: label.into() }
    }

    pub fn gdim(&self) -> usize {
        self.group.dim()
    }

    pub fn is_point<F: Field>(&self, f: &F, pt: &[F::El]) -> bool {
        assert_eq!(pt.len(), self.ncoords);
        self.equations.iter().all(|e| f.is_zero(&e.eval(f, pt).expect("arity")))
    }

    pub fn is_tangent_at<F: Field>(&self, f: &F, pt: &[F::El], v: &[F::El]) -> bool {
        let jf = JetField::new(f.clone());
        let args: Vec<Jet<F::El>> = pt
            .iter()
            .zip(v)
            .map(|(a, b)| Jet { v: a.clone(), d: b.clone() })
            .collect();
        self.equations.iter().all(|e| f.is_zero(&e.eval(&jf, &args).expect("arity").d))
    }

    /// Deterministic basis of the Zariski tangent space at pt (kernel of
    /// the equation Jacobian).
    pub fn tangent_basis_at<F: Field>(&self, f: &F, pt: &[F::El]) -> Vec<Vec<F::El>> {
        if self.equations.is_empty() {
            return (0..self.ncoords)
                .map(|i| {
                    let mut v = vec![f.zero(); self.ncoords];
                    v[i] = f.one();
                    v
                })
                .collect();
        }
        let jac = Mat::from_fn(self.equations.len(), self.ncoords, |r, c| {
            self.equations[r].partial(c).eval(f, pt).expect("arity")
        });
        kernel_t(f, &jac)
    }

    pub fn act<F: Field>(&self, f: &F, g: &Mat<F::El>, pt: &[F::El]) -> Vec<F::El> {
        let mut args = g.data.clone();
        args.extend_from_slice(pt);
        self.action.iter().map(|p| p.eval(f, &args).expect("arity")).collect()
    }

    /// Pushforward of a tangent vector under the action of g.
    pub fn act_tangent<F: Field>(
        &self,
        f: &F,
        g: &Mat<F::El>,
        pt: &[F::El],
        v: &[F::El],
    ) -> Vec<F::El> {
        let jf = JetField::new(f.clone());
        let mut args: Vec<Jet<F::El>> =
            g.data.iter().map(|a| Jet { v: a.clone(), d: f.zero() }).collect();
        args.extend(pt.iter().zip(v).map(|(a, b)| Jet { v: a.clone(), d: b.clone() }));
        self.action.iter().map(|p| p.eval(&jf, &args).expect("arity").d).collect()
    }

    /// v_x(pt) for x given by Lie coordinates.
    pub fn inf_action_at<F: Field>(&self, f: &F, x: &[F::El], pt: &[F::El]) -> Vec<F::El> {
        assert_eq!(x.len(), self.gdim());
        let mut out = vec![f.zero(); self.ncoords];
        for (k, polys) in self.inf_action.iter().enumerate() {
            if f.is_zero(&x[k]) {
                continue;
            }
            for (m, p) in polys.iter().enumerate() {
                let val = p.eval(f, pt).expect("arity");
                out[m] = f.add(&out[m], &f.mul(&x[k], &val));
            }
        }
        out
    }

    /// The group itself with the conjugation action g ↦ hgh⁻¹.
    pub fn adjoint(group: Arc<MatrixGroup>) -> GSpace {
        let n = group.n;
        let gv = n * n;
        let total = gv + gv;
        // h·g·h⁻¹ where h = first block of variables, g = second
        let mut action = Vec::with_capacity(gv);
        for i in 0..n {
            for j in 0..n {
                let mut p = Polynomial::zero(total);
                for k in 0..n {
                    for l in 0..n {
                        // h_{ik} g_{kl} (h⁻¹)_{lj}
                        let h_ik = Polynomial::var(total, i * n + k);
                        let g_kl = Polynomial::var(total, gv + k * n + l);
                        let hinv = group.inverse_map[l * n + j]
                            .remap(&(0..gv).collect::<Vec<_>>(), total);
                        p = p.add(&h_ik.mul(&g_kl).mul(&hinv));
                    }
                }
                action.push(p);
            }
        }
        let equations = group.equations.clone();
        let label = format!("[{}/{}^ad]", group.family.label(), group.family.label());
        GSpace::new(group, gv, equations, action, label)
    }

    /// 𝔤* with the coadjoint action: (h·φ) = (Ad_{h⁻¹})ᵀ φ in dual-basis
    /// coordinates.
    pub fn coadjoint(group: Arc<MatrixGroup>) -> GSpace {
        let d = group.dim();
        let n = group.n;
        let gv = n * n;
        let total = gv + d;
        // Ad_{h⁻¹} as a d×d matrix of polynomials in the h entries
        let ad_inv = symbolic_ad_of_inverse(&group);
        let mut action = Vec::with_capacity(d);
        for i in 0..d {
            // (h·φ)_i = Σ_k (Ad_{h⁻¹})ᵀ_{ik} φ_k = Σ_k ⟨coordinate k of Ad_{h⁻¹}b_i⟩ φ_k
            let mut p = Polynomial::zero(total);
            for k in 0..d {
                let coeff = ad_inv[i][k].remap(&(0..gv).collect::<Vec<_>>(), total);
                let phi_k = Polynomial::var(total, gv + k);
                p = p.add(&coeff.mul(&phi_k));
            }
            action.push(p);
        }
        let label = format!("[{}*/{}]", group.family.label(), group.family.label());
        GSpace::new(group, d, Vec::new(), action, label)
    }

    /// Product of two spaces over the product group (block action).
    pub fn product(a: &GSpace, b: &GSpace) -> GSpace {
        let pg = Arc::new(MatrixGroup::product(&a.group, &b.group));
        Self::product_over(pg, a, b)
    }

    /// Product of two spaces with a prescribed product group whose first
    /// block acts on `a` and second block on `b`.
    pub fn product_over(pg: Arc<MatrixGroup>, a: &GSpace, b: &GSpace) -> GSpace {
        let (na, nb) = (a.group.n, b.group.n);
        let n = pg.n;
        assert_eq!(n, na + nb);
        let gv = n * n;
        let total = gv + a.ncoords + b.ncoords;
        let map_ga: Vec<usize> = (0..na * na).map(|v| (v / na) * n + (v % na)).collect();
        let map_gb: Vec<usize> =
            (0..nb * nb).map(|v| (v / nb + na) * n + (v % nb + na)).collect();
        let mut action = Vec::new();
        for p in &a.action {
            // variables of p: [ga entries..., a coords...]
            let mut map: Vec<usize> = map_ga.clone();
            map.extend((0..a.ncoords).map(|c| gv + c));
            action.push(p.remap(&map, total));
        }
        for p in &b.action {
            let mut map: Vec<usize> = map_gb.clone();
            map.extend((0..b.ncoords).map(|c| gv + a.ncoords + c));
            action.push(p.remap(&map, total));
        }
        let mut equations = Vec::new();
        for e in &a.equations {
            equations.push(e.remap(&(0..a.ncoords).collect::<Vec<_>>(), a.ncoords + b.ncoords));
        }
        for e in &b.equations {
            equations.push(
                e.remap(
                    &(a.ncoords..a.ncoords + b.ncoords).collect::<Vec<_>>(),
                    a.ncoords + b.ncoords,
                ),
            );
        }
        let label = format!("{}×{}", a.label, b.label);
        GSpace::new(pg, a.ncoords + b.ncoords, equations, action, label)
    }

    /// Same chart, acted on through a group homomorphism φ: H → G given by
    /// polynomials in the H entries.
    pub fn restrict_action(&self, new_group: Arc<MatrixGroup>, phi: &PolyMap) -> GSpace {
        let hv = new_group.n * new_group.n;
        assert_eq!(phi.nin, hv);
        assert_eq!(phi.nout(), self.group.n * self.group.n);
        let total = hv + self.ncoords;
        // action'(h, p) = action(φ(h), p)
        let mut args: Vec<Polynomial> = phi
            .out
            .iter()
            .map(|p| p.remap(&(0..hv).collect::<Vec<_>>(), total))
            .collect();
        args.extend((0..self.ncoords).map(|c| Polynomial::var(total, hv + c)));
        let action = self.action.iter().map(|p| p.compose(&args)).collect();
        GSpace::new(new_group, self.ncoords, self.equations.clone(), action, self.label.clone())
    }

    /// A point with trivial chart (no coordinates).
    pub fn point(group: Arc<MatrixGroup>) -> GSpace {
        let gv = group.n * group.n;
        let _ = gv;
        GSpace::new(group, 0, Vec::new(), Vec::new(), "point")
    }
}

/// d/dt|₀ action(e + t·b_k, p) for each Lie basis element b_k, symbolically.
fn derive_infinitesimal(
    group: &MatrixGroup,
    ncoords: usize,
    action: &[Polynomial],
) -> Vec<Vec<Polynomial>> {
    let n = group.n;
    let gv = n * n;
    let id_vals: Vec<Rat> = (0..gv)
        .map(|v| if v / n == v % n { rat_int(1) } else { Rat::zero() })
        .collect();
    // ∂action_m/∂g_e at g = id, as polynomials in the chart coords
    let mut partials: Vec<Vec<Polynomial>> = Vec::with_capacity(ncoords);
    for m in 0..ncoords {
        let mut row = Vec::with_capacity(gv);
        for e in 0..gv {
            row.push(action[m].partial(e).substitute_prefix(&id_vals));
        }
        partials.push(row);
    }
    group
        .basis_mats
        .iter()
        .map(|b| {
            (0..ncoords)
                .map(|m| {
                    let mut p = Polynomial::zero(ncoords);
                    for e in 0..gv {
                        let c = b.at(e / n, e % n);
                        if !c.is_zero() {
                            p = p.add(&partials[m][e].scale(c));
                        }
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// Ad_{h⁻¹} on 𝔤 as polynomials in the entries of h: expand h⁻¹·b_k·h in
/// the Lie basis using a constant left inverse of the flattened basis.
fn symbolic_ad_of_inverse(group: &MatrixGroup) -> Vec<Vec<Polynomial>> {
    let n = group.n;
    let gv = n * n;
    let d = group.dim();
    let q = Rationals;
    // rows of ad_inv[k] = coordinates of h⁻¹ b_k h
    let left_inv = basis_left_inverse(group);
    let mut out = Vec::with_capacity(d);
    for b in &group.basis_mats {
        // entries of h⁻¹·b·h as polynomials in h
        let mut conj = vec![Polynomial::zero(gv); gv];
        for i in 0..n {
            for j in 0..n {
                let mut p = Polynomial::zero(gv);
                for k in 0..n {
                    for l in 0..n {
                        if b.at(k, l).is_zero() {
                            continue;
                        }
                        let hinv_ik = &group.inverse_map[i * n + k];
                        let h_lj = Polynomial::var(gv, l * n + j);
                        p = p.add(&hinv_ik.mul(&h_lj).scale(b.at(k, l)));
                    }
                }
                conj[i * n + j] = p;
            }
        }
        // coordinates = left_inv · conj
        let coords: Vec<Polynomial> = (0..d)
            .map(|r| {
                let mut p = Polynomial::zero(gv);
                for e in 0..gv {
                    let c = left_inv.at(r, e);
                    if !c.is_zero() {
                        p = p.add(&conj[e].scale(c));
                    }
                }
                p
            })
            .collect();
        out.push(coords);
    }
    let _ = q;
    out
}

/// Constant matrix L with L·flatten(m) = Lie coordinates of m for m in the
/// span of the basis: L = (AᵀA)⁻¹Aᵀ.
pub fn basis_left_inverse(group: &MatrixGroup) -> Mat<Rat> {
    let q = Rationals;
    let n = group.n;
    let d = group.dim();
    let a = Mat::from_fn(n * n, d, |r, c| group.basis_mats[c].at(r / n, r % n).clone());
    let at = a.transpose();
    let ata = mat_mul(&q, &at, &a);
    let inv = crate::exactalg::invert_t(&q, &ata).expect("basis independent");
    mat_mul(&q, &inv, &at)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::mat_vec;
    use crate::liecore::{conjugation_field, sample_points};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn adjoint_action_is_conjugation() {
        let q = Rationals;
        let g = Arc::new(MatrixGroup::sl2());
        let x = GSpace::adjoint(g.clone());
        let pts = sample_points(&g, &q, 3, 1).unwrap();
        let h = &pts[0];
        let p = &pts[1];
        let moved = x.act(&q, h, &p.data);
        let hi = g.invert_point(&q, h);
        let expect = mat_mul(&q, &mat_mul(&q, h, p), &hi);
        assert_eq!(moved, expect.data);
        assert!(x.is_point(&q, &moved));
    }

    #[test]
    fn adjoint_infinitesimal_matches_conjugation_field() {
        let q = Rationals;
        let g = Arc::new(MatrixGroup::sl2());
        let x = GSpace::adjoint(g.clone());
        let pts = sample_points(&g, &q, 4, 2).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        for p in &pts {
            let coords = crate::liecore::sample_lie_element(&q, 3, &mut rng);
            let xm = g.lie_to_matrix(&q, &coords);
            let v = x.inf_action_at(&q, &coords, &p.data);
            let expect = conjugation_field(&q, &xm, p);
            assert_eq!(v, expect.data);
            assert!(x.is_tangent_at(&q, &p.data, &v));
        }
    }

    #[test]
    fn coadjoint_action_preserves_canonical_pairing() {
        // ⟨h·φ, Ad_h x⟩ = ⟨φ, x⟩ with coadjoint defined via Ad_{h⁻¹}ᵀ
        let q = Rationals;
        let g = Arc::new(MatrixGroup::sl2());
        let x = GSpace::coadjoint(g.clone());
        assert_eq!(x.ncoords, 3);
        let pts = sample_points(&g, &q, 3, 5).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for h in &pts {
            let phi = crate::liecore::sample_lie_element(&q, 3, &mut rng);
            let xv = crate::liecore::sample_lie_element(&q, 3, &mut rng);
            let moved = x.act(&q, h, &phi);
            let ad = g.ad_matrix(&q, h);
            let adx = mat_vec(&q, &ad, &xv);
            let lhs: Rat = moved.iter().zip(&adx).map(|(a, b)| a * b).sum();
            let rhs: Rat = phi.iter().zip(&xv).map(|(a, b)| a * b).sum();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tangent_basis_dimension() {
        let q = Rationals;
        let g = Arc::new(MatrixGroup::sl2());
        let x = GSpace::adjoint(g.clone());
        let pts = sample_points(&g, &q, 3, 3).unwrap();
        for p in &pts {
            let tb = x.tangent_basis_at(&q, &p.data);
            assert_eq!(tb.len(), 3); // dim SL2
            for v in &tb {
                assert!(x.is_tangent_at(&q, &p.data, v));
            }
        }
    }

    #[test]
    fn product_space_acts_blockwise() {
        let q = Rationals;
        let g = Arc::new(MatrixGroup::sl2());
        let xa = GSpace::adjoint(g.clone());
        let xb = GSpace::coadjoint(g.clone());
        let prod = GSpace::product(&xa, &xb);
        assert_eq!(prod.ncoords, 7);
        assert_eq!(prod.gdim(), 6);
        let pg = prod.group.clone();
        let hp = sample_points(&pg, &q, 1, 4).unwrap().remove(0);
        let pa = sample_points(&g, &q, 1, 5).unwrap().remove(0);
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let phi = crate::liecore::sample_lie_element(&q, 3, &mut rng);
        let mut pt = pa.data.clone();
        pt.extend(phi.clone());
        assert!(prod.is_point(&q, &pt));
        let moved = prod.act(&q, &hp, &pt);
        // first block of hp conjugates pa
        let ha = Mat::from_fn(2, 2, |i, j| hp.at(i, j).clone());
        let expect_a = xa.act(&q, &ha, &pa.data);
        assert_eq!(&moved[..4], &expect_a[..]);
    }
}
