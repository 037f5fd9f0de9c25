use super::gspace::{basis_left_inverse, GSpace, PolyMap};
use crate::exactalg::{Dyn, DynField, ExactError, Field, Mat, Polynomial, Rat};
use crate::liecore::{InvariantPairing, MatrixGroup};
use num::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Cartan-model equivariant form with explicit polynomial coefficients.
/// Coefficients live in the ring k[chart coords, ξ] with the ξ variables
/// (Lie coordinates) appended after the chart coordinates; the ξ-degree is
/// homogeneous and equals `gweight`.
#[derive(Debug, Clone)]
pub struct EqForm {
    pub ncoords: usize,
    pub gdim: usize,
    pub p: usize,
    pub gweight: usize,
    /// strictly increasing index tuples of length p → coefficient
    pub coeffs: BTreeMap<Vec<usize>, Polynomial>,
}

impl EqForm {
    pub fn zero(ncoords: usize, gdim: usize, p: usize, gweight: usize) -> EqForm {
        EqForm { ncoords, gdim, p, gweight, coeffs: BTreeMap::new() }
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: Polynomial) {
        assert_eq!(idx.len(), self.p);
        assert!(idx.windows(2).all(|w| w[0] < w[1]), "indices must be strictly increasing");
        assert_eq!(c.nvars, self.ncoords + self.gdim);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn eval<F: Field>(
        &self,
        f: &F,
        x: &[F::El],
        pt: &[F::El],
        vecs: &[Vec<F::El>],
    ) -> Result<F::El, ExactError> {
        if x.len() != self.gdim {
            return Err(ExactError::Dimension { expected: self.gdim, got: x.len() });
        }
        if pt.len() != self.ncoords {
            return Err(ExactError::Dimension { expected: self.ncoords, got: pt.len() });
        }
        if vecs.len() != self.p {
            return Err(ExactError::Dimension { expected: self.p, got: vecs.len() });
        }
        let mut args = pt.to_vec();
        args.extend_from_slice(x);
        let mut acc = f.zero();
        for (idx, c) in &self.coeffs {
            let cv = c.eval(f, &args)?;
            if f.is_zero(&cv) {
                continue;
            }
            let det = alt_det(f, vecs, idx);
            acc = f.add(&acc, &f.mul(&cv, &det));
        }
        Ok(acc)
    }

    /// Coefficient tensor evaluated at a (point, x) pair; pair with
    /// `contract_with` to evaluate on many vector tuples cheaply.
    pub fn coeffs_at<F: Field>(
        &self,
        f: &F,
        x: &[F::El],
        pt: &[F::El],
    ) -> Result<Vec<(Vec<usize>, F::El)>, ExactError> {
        let mut args = pt.to_vec();
        args.extend_from_slice(x);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (idx, c) in &self.coeffs {
            let v = c.eval(f, &args)?;
            if !f.is_zero(&v) {
                out.push((idx.clone(), v));
            }
        }
        Ok(out)
    }

    pub fn contract_with<F: Field>(
        f: &F,
        coeffs: &[(Vec<usize>, F::El)],
        vecs: &[Vec<F::El>],
    ) -> F::El {
        let mut acc = f.zero();
        for (idx, cv) in coeffs {
            let det = alt_det(f, vecs, idx);
            acc = f.add(&acc, &f.mul(cv, &det));
        }
        acc
    }

    /// Exterior derivative, symbolically: d(c·dx_I) = Σ_k ∂c/∂x_k dx_k∧dx_I.
    pub fn de_rham(&self) -> EqForm {
        let mut out = EqForm::zero(self.ncoords, self.gdim, self.p + 1, self.gweight);
        for (idx, c) in &self.coeffs {
            for k in 0..self.ncoords {
                if idx.contains(&k) {
                    continue;
                }
                let dc = c.partial(k);
                if dc.is_zero() {
                    continue;
                }
                let (new_idx, sign) = insert_index(idx, k);
                out.add_term(new_idx, if sign < 0 { dc.neg() } else { dc });
            }
        }
        out
    }

    /// ι_{v_ξ}: contraction with the action field, ξ-linearly. Raises
    /// gweight by one and lowers the form degree.
    pub fn contract_action(&self, space: &GSpace) -> Result<EqForm, ExactError> {
        if self.p == 0 {
            return Err(ExactError::Dimension { expected: 1, got: 0 });
        }
        assert_eq!(space.ncoords, self.ncoords);
        let total = self.ncoords + self.gdim;
        let mut out = EqForm::zero(self.ncoords, self.gdim, self.p - 1, self.gweight + 1);
        // v_ξ coordinate polys, extended to the (coords, ξ) ring
        let vpolys: Vec<Polynomial> = (0..self.ncoords)
            .map(|m| {
                let mut p = Polynomial::zero(total);
                for (k, polys) in space.inf_action.iter().enumerate() {
                    let xi_k = Polynomial::var(total, self.ncoords + k);
                    let ext = polys[m].extend(total);
                    p = p.add(&ext.mul(&xi_k));
                }
                p
            })
            .collect();
        for (idx, c) in &self.coeffs {
            for (j, &i) in idx.iter().enumerate() {
                let mut rest = idx.clone();
                rest.remove(j);
                let mut term = c.mul(&vpolys[i]);
                if j % 2 == 1 {
                    term = term.neg();
                }
                out.add_term(rest, term);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &EqForm) -> EqForm {
        assert_eq!(self.p, other.p);
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx.clone(), c.neg());
        }
        out
    }
}

fn insert_index(idx: &[usize], k: usize) -> (Vec<usize>, i32) {
    let pos = idx.iter().position(|&i| i > k).unwrap_or(idx.len());
    let mut out = Vec::with_capacity(idx.len() + 1);
    out.extend_from_slice(&idx[..pos]);
    out.push(k);
    out.extend_from_slice(&idx[pos..]);
    (out, if pos % 2 == 0 { 1 } else { -1 })
}

fn alt_det<F: Field>(f: &F, vecs: &[Vec<F::El>], idx: &[usize]) -> F::El {
    let p = idx.len();
    match p {
        0 => f.one(),
        1 => vecs[0][idx[0]].clone(),
        _ => {
            // Laplace expansion along the first vector
            let mut acc = f.zero();
            for (row, &i) in idx.iter().enumerate() {
                let sub_idx: Vec<usize> =
                    idx.iter().enumerate().filter(|&(r, _)| r != row).map(|(_, &v)| v).collect();
                let minor = alt_det(f, &vecs[1..], &sub_idx);
                let term = f.mul(&vecs[0][i], &minor);
                acc = if row % 2 == 0 { f.add(&acc, &term) } else { f.sub(&acc, &term) };
            }
            acc
        }
    }
}

/// Lazily combined equivariant form. Concrete forms carry polynomial
/// coefficients; the other nodes evaluate pointwise (with jets where a
/// derivative is needed), which keeps pullbacks along high-degree moment
/// maps cheap.
#[derive(Debug, Clone)]
pub enum Form {
    Concrete(EqForm),
    /// Pullback along an equivariant polynomial chart map (ξ passes through).
    Pullback { map: PolyMap, inner: Box<Form> },
    Sum(Vec<Form>),
    Scale(Rat, Box<Form>),
    /// Lazy exterior derivative: alternating jet formula with constant
    /// extensions of the arguments.
    ExtD(Box<Form>),
    /// Lazy contraction with the action field of the given space.
    Contract { space: Arc<GSpace>, inner: Box<Form> },
    /// ½(⟨φ₁(dm1·), φ₂(dm2·)⟩ − swap) where φᵢ is θ or θ̄ per the bar
    /// flags: the AMM-style wedge pairings (fusion correction, the double).
    PairingWedge {
        m1: PolyMap,
        m2: PolyMap,
        group: Arc<MatrixGroup>,
        gram: Mat<Rat>,
        left_inv: Mat<Rat>,
        bar1: bool,
        bar2: bool,
    },
}

impl Form {
    pub fn degree(&self) -> usize {
        match self {
            Form::Concrete(e) => e.p,
            Form::Pullback { inner, .. } => inner.degree(),
            Form::Sum(v) => v.first().map_or(0, |f| f.degree()),
            Form::Scale(_, inner) => inner.degree(),
            Form::ExtD(inner) => inner.degree() + 1,
            Form::Contract { inner, .. } => inner.degree() - 1,
            Form::PairingWedge { .. } => 2,
        }
    }

    pub fn gweight(&self) -> usize {
        match self {
            Form::Concrete(e) => e.gweight,
            Form::Pullback { inner, .. } => inner.gweight(),
            Form::Sum(v) => v.first().map_or(0, |f| f.gweight()),
            Form::Scale(_, inner) => inner.gweight(),
            Form::ExtD(inner) => inner.gweight(),
            Form::Contract { inner, .. } => inner.gweight() + 1,
            Form::PairingWedge { .. } => 0,
        }
    }

    /// Pointwise evaluation over the runtime-kinded scalars. Lazy exterior
    /// derivatives lift the kind to jets-over-jets as deep as they stack.
    pub fn eval_dyn(
        &self,
        f: &DynField,
        x: &[Dyn],
        pt: &[Dyn],
        vecs: &[Vec<Dyn>],
    ) -> Result<Dyn, ExactError> {
        match self {
            Form::Concrete(e) => e.eval(f, x, pt, vecs),
            Form::Pullback { map, inner } => {
                let zero = vec![f.zero(); pt.len()];
                let (image, _) = push_map_dyn(map, f, pt, &zero);
                let pushed: Vec<Vec<Dyn>> =
                    vecs.iter().map(|v| push_map_dyn(map, f, pt, v).1).collect();
                inner.eval_dyn(f, x, &image, &pushed)
            }
            Form::Sum(terms) => {
                let mut acc = f.zero();
                for t in terms {
                    acc = f.add(&acc, &t.eval_dyn(f, x, pt, vecs)?);
                }
                Ok(acc)
            }
            Form::Scale(c, inner) => {
                let cv = f.from_rat(c)?;
                Ok(f.mul(&cv, &inner.eval_dyn(f, x, pt, vecs)?))
            }
            Form::ExtD(inner) => {
                let jf = f.jets();
                let mut acc = f.zero();
                for i in 0..vecs.len() {
                    let jpt: Vec<Dyn> = pt
                        .iter()
                        .zip(&vecs[i])
                        .map(|(a, b)| jf.jet(a.clone(), b.clone()))
                        .collect();
                    let jx: Vec<Dyn> =
                        x.iter().map(|a| jf.jet(a.clone(), f.zero())).collect();
                    let jvecs: Vec<Vec<Dyn>> = vecs
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, v)| v.iter().map(|a| jf.jet(a.clone(), f.zero())).collect())
                        .collect();
                    let term = inner.eval_dyn(&jf, &jx, &jpt, &jvecs)?.deriv_part().clone();
                    acc = if i % 2 == 0 { f.add(&acc, &term) } else { f.sub(&acc, &term) };
                }
                Ok(acc)
            }
            Form::Contract { space, inner } => {
                let vx = space.inf_action_at(f, x, pt);
                let mut all = Vec::with_capacity(vecs.len() + 1);
                all.push(vx);
                all.extend_from_slice(vecs);
                inner.eval_dyn(f, x, pt, &all)
            }
            Form::PairingWedge { m1, m2, group, gram, left_inv, bar1, bar2 } => {
                if vecs.len() != 2 {
                    return Err(ExactError::Dimension { expected: 2, got: vecs.len() });
                }
                let half = f.inv(&f.from_int(2))?;
                let t1 = pairing_wedge_term(
                    f, m1, m2, group, gram, left_inv, pt, &vecs[0], &vecs[1], *bar1, *bar2,
                )?;
                let t2 = pairing_wedge_term(
                    f, m1, m2, group, gram, left_inv, pt, &vecs[1], &vecs[0], *bar1, *bar2,
                )?;
                Ok(f.mul(&half, &f.sub(&t1, &t2)))
            }
        }
    }

    /// Evaluation over the rationals.
    pub fn eval_rat(
        &self,
        x: &[Rat],
        pt: &[Rat],
        vecs: &[Vec<Rat>],
    ) -> Result<Rat, ExactError> {
        let f = DynField::rat();
        let xd: Vec<Dyn> = x.iter().map(|q| Dyn::Rat(q.clone())).collect();
        let ptd: Vec<Dyn> = pt.iter().map(|q| Dyn::Rat(q.clone())).collect();
        let vd: Vec<Vec<Dyn>> = vecs
            .iter()
            .map(|v| v.iter().map(|q| Dyn::Rat(q.clone())).collect())
            .collect();
        Ok(self.eval_dyn(&f, &xd, &ptd, &vd)?.expect_rat().clone())
    }

    /// Evaluation over F_p.
    pub fn eval_fp(
        &self,
        p: u16,
        x: &[crate::exactalg::FpEl],
        pt: &[crate::exactalg::FpEl],
        vecs: &[Vec<crate::exactalg::FpEl>],
    ) -> Result<crate::exactalg::FpEl, ExactError> {
        let f = DynField::fp(p);
        let xd: Vec<Dyn> = x.iter().map(|q| Dyn::Fp(*q)).collect();
        let ptd: Vec<Dyn> = pt.iter().map(|q| Dyn::Fp(*q)).collect();
        let vd: Vec<Vec<Dyn>> =
            vecs.iter().map(|v| v.iter().map(|q| Dyn::Fp(*q)).collect()).collect();
        Ok(self.eval_dyn(&f, &xd, &ptd, &vd)?.expect_fp())
    }

    pub fn neg(self) -> Form {
        Form::Scale(-crate::exactalg::rat_int(1), Box::new(self))
    }
}

/// Image point and pushforward of one tangent vector under a chart map,
/// by lifting the dynamic kind one jet level.
pub fn push_map_dyn(
    map: &PolyMap,
    f: &DynField,
    pt: &[Dyn],
    v: &[Dyn],
) -> (Vec<Dyn>, Vec<Dyn>) {
    let jf = f.jets();
    let args: Vec<Dyn> = pt.iter().zip(v).map(|(a, b)| jf.jet(a.clone(), b.clone())).collect();
    let out: Vec<Dyn> = map.out.iter().map(|p| p.eval(&jf, &args).expect("arity")).collect();
    (
        out.iter().map(|j| j.value_part().clone()).collect(),
        out.iter().map(|j| j.deriv_part().clone()).collect(),
    )
}

/// ⟨φ₁(dm1(u))|_{m1(p)}, φ₂(dm2(v))|_{m2(p)}⟩ with φ = θ or θ̄
#[allow(clippy::too_many_arguments)]
fn pairing_wedge_term(
    f: &DynField,
    m1: &PolyMap,
    m2: &PolyMap,
    group: &MatrixGroup,
    gram: &Mat<Rat>,
    left_inv: &Mat<Rat>,
    pt: &[Dyn],
    u: &[Dyn],
    v: &[Dyn],
    bar1: bool,
    bar2: bool,
) -> Result<Dyn, ExactError> {
    let n = group.n;
    let (g1, du) = push_map_dyn(m1, f, pt, u);
    let (g2, dv) = push_map_dyn(m2, f, pt, v);
    let g1m = Mat { rows: n, cols: n, data: g1 };
    let g2m = Mat { rows: n, cols: n, data: g2 };
    let du = Mat { rows: n, cols: n, data: du };
    let dv = Mat { rows: n, cols: n, data: dv };
    let phi1 = if bar1 {
        crate::exactalg::mat_mul(f, &du, &group.invert_point(f, &g1m))
    } else {
        crate::exactalg::mat_mul(f, &group.invert_point(f, &g1m), &du)
    };
    let phi2 = if bar2 {
        crate::exactalg::mat_mul(f, &dv, &group.invert_point(f, &g2m))
    } else {
        crate::exactalg::mat_mul(f, &group.invert_point(f, &g2m), &dv)
    };
    let a = lie_coords(f, left_inv, &phi1);
    let b = lie_coords(f, left_inv, &phi2);
    pair_coords(f, gram, &a, &b)
}

pub fn lie_coords<F: Field>(f: &F, left_inv: &Mat<Rat>, m: &Mat<F::El>) -> Vec<F::El> {
    (0..left_inv.rows)
        .map(|r| {
            let mut acc = f.zero();
            for e in 0..left_inv.cols {
                let c = left_inv.at(r, e);
                if !c.is_zero() {
                    let cf = f.from_rat(c).expect("rational basis");
                    acc = f.add(&acc, &f.mul(&cf, &m.data[e]));
                }
            }
            acc
        })
        .collect()
}

pub fn pair_coords<F: Field>(
    f: &F,
    gram: &Mat<Rat>,
    a: &[F::El],
    b: &[F::El],
) -> Result<F::El, ExactError> {
    let mut acc = f.zero();
    for i in 0..a.len() {
        for j in 0..b.len() {
            let g = gram.at(i, j);
            if !g.is_zero() {
                let gf = f.from_rat(g)?;
                acc = f.add(&acc, &f.mul(&gf, &f.mul(&a[i], &b[j])));
            }
        }
    }
    Ok(acc)
}

/// Element of the Cartan complex: Σ_j ω_j u^j with distinct u-powers and a
/// homogeneous total degree p + 2·gweight + 2·u_power.
#[derive(Debug, Clone)]
pub struct CartanElement {
    pub summands: BTreeMap<u32, Form>,
}

impl CartanElement {
    pub fn new(summands: Vec<(u32, Form)>) -> CartanElement {
        let mut map: BTreeMap<u32, Form> = BTreeMap::new();
        for (u, form) in summands {
            match map.remove(&u) {
                None => {
                    map.insert(u, form);
                }
                Some(prev) => {
                    map.insert(u, Form::Sum(vec![prev, form]));
                }
            }
        }
        let c = CartanElement { summands: map };
        debug_assert!(c.homogeneous_total_degree().is_some(), "inhomogeneous Cartan element");
        c
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.homogeneous_total_degree()
    }

    /// Total degree p + 2·(𝔤-weight); the Cartan differential raises it
    /// by one in every component, independent of the u-power.
    fn homogeneous_total_degree(&self) -> Option<usize> {
        let mut deg = None;
        for (_u, form) in &self.summands {
            let d = form.degree() + 2 * form.gweight();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg.or(Some(0))
    }

    /// The Cartan differential d_LR + u·d. d_LR acts as −ι_{v_ξ} (zero on
    /// 0-forms); d is the de Rham differential shifted one u-power up.
    pub fn cartan_diff(&self, space: &Arc<GSpace>) -> CartanElement {
        let mut parts: Vec<(u32, Form)> = Vec::new();
        for (&u, form) in &self.summands {
            if form.degree() > 0 {
                let contracted =
                    Form::Contract { space: space.clone(), inner: Box::new(form.clone()) };
                parts.push((u, contracted.neg()));
            }
            let d = match form {
                Form::Concrete(e) => Form::Concrete(e.de_rham()),
                other => Form::ExtD(Box::new(other.clone())),
            };
            parts.push((u + 1, d));
        }
        CartanElement::new(parts)
    }

    /// Pullback along an equivariant chart map.
    pub fn pullback(&self, map: &PolyMap) -> CartanElement {
        CartanElement::new(
            self.summands
                .iter()
                .map(|(&u, f)| {
                    (u, Form::Pullback { map: map.clone(), inner: Box::new(f.clone()) })
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &CartanElement) -> CartanElement {
        let mut parts: Vec<(u32, Form)> =
            self.summands.iter().map(|(&u, f)| (u, f.clone())).collect();
        parts.extend(other.summands.iter().map(|(&u, f)| (u, f.clone())));
        CartanElement::new(parts)
    }

    pub fn neg(&self) -> CartanElement {
        CartanElement::new(
            self.summands.iter().map(|(&u, f)| (u, f.clone().neg())).collect(),
        )
    }
}

/// ω₀(x) = ⟨β, x⟩ on the adjoint chart: 1-form of 𝔤-weight 1.
pub fn build_omega0(
    group: &Arc<MatrixGroup>,
    pairing: &InvariantPairing,
) -> Result<EqForm, ExactError> {
    ensure_invariant(pairing)?;
    let n = group.n;
    let gv = n * n;
    let d = group.dim();
    let left_inv = basis_left_inverse(group);
    let mut form = EqForm::zero(gv, d, 1, 1);
    let total = gv + d;
    for e in 0..gv {
        // β(E_e) = ½(g⁻¹·E_e + E_e·g⁻¹), entries as polynomials in g
        let (r, c) = (e / n, e % n);
        let mut beta = vec![Polynomial::zero(gv); gv];
        for i in 0..n {
            for j in 0..n {
                // (g⁻¹ E_{rc})_{ij} = (g⁻¹)_{ir}·δ_{cj}; (E_{rc} g⁻¹)_{ij} = δ_{ir}(g⁻¹)_{cj}
                let mut p = Polynomial::zero(gv);
                if j == c {
                    p = p.add(&group.inverse_map[i * n + r]);
                }
                if i == r {
                    p = p.add(&group.inverse_map[c * n + j]);
                }
                beta[i * n + j] = p.scale(&crate::exactalg::rat(1, 2));
            }
        }
        // coords_k(β) then ⟨β, ξ⟩
        let mut coeff = Polynomial::zero(total);
        for k in 0..d {
            let mut ck = Polynomial::zero(gv);
            for ee in 0..gv {
                let l = left_inv.at(k, ee);
                if !l.is_zero() {
                    ck = ck.add(&beta[ee].scale(l));
                }
            }
            if ck.is_zero() {
                continue;
            }
            for l in 0..d {
                let g = pairing.gram.at(k, l);
                if !g.is_zero() {
                    let xi = Polynomial::var(total, gv + l);
                    coeff = coeff.add(&ck.extend(total).mul(&xi).scale(g));
                }
            }
        }
        form.add_term(vec![e], coeff);
    }
    Ok(form)
}

/// ω₁ = ½⟨θ, [θ, θ]⟩ in the alternating-evaluation normalization (the
/// coefficient making d ω₀ + d_LR ω₁ = 0 exact): a 3-form of 𝔤-weight 0.
pub fn build_omega1(
    group: &Arc<MatrixGroup>,
    pairing: &InvariantPairing,
) -> Result<EqForm, ExactError> {
    ensure_invariant(pairing)?;
    let n = group.n;
    let gv = n * n;
    let d = group.dim();
    let left_inv = basis_left_inverse(group);
    // θ(E_e) = g⁻¹·E_e in Lie coordinates, one polynomial vector per e
    let mut theta_coords: Vec<Vec<Polynomial>> = Vec::with_capacity(gv);
    for e in 0..gv {
        let (r, c) = (e / n, e % n);
        let mut th = vec![Polynomial::zero(gv); gv];
        for i in 0..n {
            th[i * n + c] = group.inverse_map[i * n + r].clone();
        }
        let coords: Vec<Polynomial> = (0..d)
            .map(|k| {
                let mut ck = Polynomial::zero(gv);
                for ee in 0..gv {
                    let l = left_inv.at(k, ee);
                    if !l.is_zero() {
                        ck = ck.add(&th[ee].scale(l));
                    }
                }
                ck
            })
            .collect();
        theta_coords.push(coords);
    }
    let lie = &group.lie;
    let total = gv + d;
    let mut form = EqForm::zero(gv, d, 3, 0);
    let half = crate::exactalg::rat(1, 2);
    for e1 in 0..gv {
        for e2 in e1 + 1..gv {
            for e3 in e2 + 1..gv {
                // ½⟨θ(E_{e1}), [θ(E_{e2}), θ(E_{e3})]⟩
                let mut bracket = vec![Polynomial::zero(gv); d];
                for i in 0..d {
                    for j in 0..d {
                        if theta_coords[e2][i].is_zero() || theta_coords[e3][j].is_zero() {
                            continue;
                        }
                        let prod = theta_coords[e2][i].mul(&theta_coords[e3][j]);
                        for k in 0..d {
                            let s = &lie.c[i][j][k];
                            if !s.is_zero() {
                                bracket[k] = bracket[k].add(&prod.scale(s));
                            }
                        }
                    }
                }
                let mut coeff = Polynomial::zero(gv);
                for k in 0..d {
                    if theta_coords[e1][k].is_zero() {
                        continue;
                    }
                    for l in 0..d {
                        let g = pairing.gram.at(k, l);
                        if !g.is_zero() && !bracket[l].is_zero() {
                            coeff = coeff.add(&theta_coords[e1][k].mul(&bracket[l]).scale(g));
                        }
                    }
                }
                form.add_term(vec![e1, e2, e3], coeff.scale(&half).extend(total));
            }
        }
    }
    Ok(form)
}

/// Canonical 1-form of [𝔤*/G]: ω(x)(φ̇) = φ̇(x) in dual coordinates.
pub fn build_coadjoint_form(group: &Arc<MatrixGroup>) -> EqForm {
    let d = group.dim();
    let total = d + d;
    let mut form = EqForm::zero(d, d, 1, 1);
    for k in 0..d {
        form.add_term(vec![k], Polynomial::var(total, d + k));
    }
    form
}

fn ensure_invariant(pairing: &InvariantPairing) -> Result<(), ExactError> {
    let v = pairing.check();
    if !v.symmetric || !v.invariant {
        return Err(ExactError::UnsupportedScalar("pairing is not symmetric invariant"));
    }
    Ok(())
}

/// Public checked evaluation over the rationals: validates arity and
/// tangency before delegating.
pub fn eval_checked(
    space: &GSpace,
    form: &Form,
    x: &[Rat],
    pt: &[Rat],
    vecs: &[Vec<Rat>],
) -> Result<Rat, ExactError> {
    let q = crate::exactalg::Rationals;
    if vecs.len() != form.degree() {
        return Err(ExactError::Dimension { expected: form.degree(), got: vecs.len() });
    }
    for v in vecs {
        if !space.is_tangent_at(&q, pt, v) {
            return Err(ExactError::UnsupportedScalar("eval: vector not tangent"));
        }
    }
    form.eval_rat(x, pt, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_int, Rationals};
    use crate::liecore::{sample_lie_element, sample_points, LieData};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn rationals() -> Rationals {
        Rationals
    }

    #[test]
    fn de_rham_of_x_i_dx_j() {
        // d(x_0 dx_1) = dx_0 ∧ dx_1 on a free 2-dim chart
        let mut f = EqForm::zero(2, 0, 1, 0);
        f.add_term(vec![1], Polynomial::var(2, 0));
        let df = f.de_rham();
        let q = rationals();
        let e0 = vec![rat_int(1), rat_int(0)];
        let e1 = vec![rat_int(0), rat_int(1)];
        let pt = vec![rat_int(5), rat_int(7)];
        assert_eq!(df.eval(&q, &[], &pt, &[e0.clone(), e1.clone()]).unwrap(), rat_int(1));
        assert_eq!(df.eval(&q, &[], &pt, &[e1.clone(), e0.clone()]).unwrap(), rat_int(-1));
        assert_eq!(df.eval(&q, &[], &pt, &[e0.clone(), e0.clone()]).unwrap(), rat_int(0));
        // d of a constant-coefficient 0-form is 0
        let c = EqForm::zero(2, 0, 0, 0);
        assert!(c.de_rham().coeffs.is_empty());
    }

    #[test]
    fn d_squared_vanishes_symbolically_and_lazily() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        // random degree-≤3 coefficient 1-form on a 3-dim chart
        for trial in 0..5 {
            let mut f = EqForm::zero(3, 0, 1, 0);
            for i in 0..3 {
                let mut p = Polynomial::zero(3);
                for _ in 0..4 {
                    use rand::Rng;
                    let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=1)).collect();
                    p = p.add(&Polynomial::constant(3, rat_int(rng.gen_range(-4..=4)))
                        .mul(&monomial(3, &e)));
                }
                f.add_term(vec![i], p);
            }
            let ddf = f.de_rham().de_rham();
            assert!(ddf.coeffs.is_empty(), "symbolic d² ≠ 0 at trial {trial}");
            // lazy route agrees at 20 random points
            let lazy_dd = Form::ExtD(Box::new(Form::ExtD(Box::new(Form::Concrete(f)))));
            for _ in 0..20 {
                use rand::Rng;
                let pt: Vec<Rat> = (0..3).map(|_| rat_int(rng.gen_range(-3..=3))).collect();
                let vs: Vec<Vec<Rat>> = (0..3)
                    .map(|_| (0..3).map(|_| rat_int(rng.gen_range(-2..=2))).collect())
                    .collect();
                assert_eq!(lazy_dd.eval_rat(&[], &pt, &vs).unwrap(), rat_int(0));
            }
        }
    }

    fn monomial(nv: usize, e: &[u32]) -> Polynomial {
        let mut p = Polynomial::constant(nv, rat_int(1));
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                p = p.mul(&Polynomial::var(nv, i));
            }
        }
        p
    }

    #[test]
    fn contraction_on_zero_form_errors() {
        let g = Arc::new(crate::liecore::MatrixGroup::sl2());
        let space = GSpace::adjoint(g);
        let f = EqForm::zero(4, 3, 0, 0);
        assert!(f.contract_action(&space).is_err());
    }

    #[test]
    fn contraction_of_coordinate_differential_is_action_coordinate() {
        let q = rationals();
        let g = Arc::new(crate::liecore::MatrixGroup::sl2());
        let space = Arc::new(GSpace::adjoint(g.clone()));
        // ι_{v_ξ} dx_e = (v_ξ)_e, checked against conjugation_field
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let pts = sample_points(&g, &q, 5, 6).unwrap();
        for e in 0..4 {
            let mut f = EqForm::zero(4, 3, 1, 0);
            f.add_term(vec![e], Polynomial::constant(7, rat_int(1)));
            let contracted = f.contract_action(&space).unwrap();
            for m in &pts {
                let x = sample_lie_element(&q, 3, &mut rng);
                let xm = g.lie_to_matrix(&q, &x);
                let vx = crate::liecore::conjugation_field(&q, &xm, m);
                let got = contracted.eval(&q, &x, &m.data, &[]).unwrap();
                assert_eq!(got, vx.data[e]);
            }
        }
    }

    #[test]
    fn alternation_under_swap() {
        let q = rationals();
        let g = Arc::new(crate::liecore::MatrixGroup::sl2());
        let pairing = InvariantPairing::new(
            g.lie.clone(),
            crate::liecore::trace_gram(&g),
        );
        let w1 = build_omega1(&g, &pairing).unwrap();
        let pts = sample_points(&g, &q, 3, 8).unwrap();
        let space = GSpace::adjoint(g.clone());
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for m in &pts {
            let tb = space.tangent_basis_at(&q, &m.data);
            let mut vs: Vec<Vec<Rat>> = Vec::new();
            for _ in 0..3 {
                vs.push(random_combo(&tb, &mut rng));
            }
            let xz = vec![Rat::zero(); 3];
            let a = w1.eval(&q, &xz, &m.data, &vs).unwrap();
            vs.swap(0, 2);
            let b = w1.eval(&q, &xz, &m.data, &vs).unwrap();
            assert_eq!(a, -b);
        }
    }

    use crate::eqforms::testutil::random_combo;

    #[test]
    fn omega1_theta_equals_theta_bar_version() {
        // ½⟨θ,[θ,θ]⟩ = ½⟨θ̄,[θ̄,θ̄]⟩ at sampled points: evaluate the built
        // form against a direct θ̄ evaluation
        let q = rationals();
        let g = Arc::new(crate::liecore::MatrixGroup::sl2());
        let pairing = InvariantPairing::new(
            g.lie.clone(),
            crate::liecore::trace_gram(&g),
        );
        let w1 = build_omega1(&g, &pairing).unwrap();
        let space = GSpace::adjoint(g.clone());
        let left_inv = basis_left_inverse(&g);
        let pts = sample_points(&g, &q, 20, 10).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for m in &pts {
            let tb = space.tangent_basis_at(&q, &m.data);
            let vs: Vec<Vec<Rat>> = (0..3).map(|_| random_combo(&tb, &mut rng)).collect();
            let built = w1.eval(&q, &vec![Rat::zero(); 3], &m.data, &vs).unwrap();
            // direct θ̄ route
            let gi = g.invert_point(&q, m);
            let tb_mats: Vec<Mat<Rat>> = vs
                .iter()
                .map(|v| {
                    let vm = Mat { rows: 2, cols: 2, data: v.clone() };
                    crate::exactalg::mat_mul(&q, &vm, &gi)
                })
                .collect();
            let coords: Vec<Vec<Rat>> =
                tb_mats.iter().map(|t| lie_coords(&q, &left_inv, t)).collect();
            let br = g.lie.bracket(&coords[1], &coords[2]);
            let direct = pair_coords(&q, &pairing.gram, &coords[0], &br).unwrap() * rat(1, 2);
            assert_eq!(built, direct);
        }
    }

    #[test]
    fn omega1_vanishes_for_abelian() {
        let g = Arc::new(crate::liecore::MatrixGroup::torus(2));
        let gram = crate::exactalg::mat_identity(&Rationals, 2);
        let pairing = InvariantPairing::new(g.lie.clone(), gram);
        let w1 = build_omega1(&g, &pairing).unwrap();
        assert!(w1.coeffs.is_empty());
    }

    #[test]
    fn omega1_at_identity_is_half_trace_bracket() {
        // SL2, trace pairing, g = e: ω₁(v₁,v₂,v₃) = ½ tr(v₁[v₂,v₃])
        let q = rationals();
        let g = Arc::new(crate::liecore::MatrixGroup::sl2());
        let pairing = InvariantPairing::new(
            g.lie.clone(),
            crate::liecore::trace_gram(&g),
        );
        let w1 = build_omega1(&g, &pairing).unwrap();
        let id = g.identity(&q);
        let h = g.basis_mats[0].clone();
        let e = g.basis_mats[1].clone();
        let fm = g.basis_mats[2].clone();
        let vs = vec![h.data.clone(), e.data.clone(), fm.data.clone()];
        let got = w1.eval(&q, &vec![Rat::zero(); 3], &id.data, &vs).unwrap();
        // tr(h·[e,f]) = tr(h·h) = 2, so ω₁ = 1
        assert_eq!(got, rat_int(1));
    }

    #[test]
    fn lie_data_is_shared() {
        let _ = LieData::sl2();
    }
}
