use crate::exactalg::{rat_int, Mat, Rat, Rationals};
use crate::exactalg::{rank_t};
use num::Zero;

/// Lie algebra given by structure constants c[i][j] = coordinates of
/// [e_i, e_j] in the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LieData {
    pub dim: usize,
    pub names: Vec<String>,
    pub c: Vec<Vec<Vec<Rat>>>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LieVerdict {
    /// (i, j) pairs violating c_{ij} = −c_{ji}
    pub antisymmetry_violations: Vec<(usize, usize)>,
    /// (i, j, k) triples violating the Jacobi identity
    pub jacobi_violations: Vec<(usize, usize, usize)>,
}

impl LieVerdict {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry_violations.is_empty() && self.jacobi_violations.is_empty()
    }
}

impl LieData {
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Rat>>>) -> LieData {
        let dim = names.len();
        assert_eq!(c.len(), dim);
        for row in &c {
            assert_eq!(row.len(), dim);
            for v in row {
                assert_eq!(v.len(), dim);
            }
        }
        LieData { dim, names, c }
    }

    pub fn abelian(dim: usize) -> LieData {
        let names = (0..dim).map(|i| format!("t{i}")).collect();
        let zero = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        LieData::new(names, zero)
    }

    /// sl2 with basis (h, e, f): [h,e] = 2e, [h,f] = −2f, [e,f] = h.
    pub fn sl2() -> LieData {
        let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
        let set = |c: &mut Vec<Vec<Vec<Rat>>>, i: usize, j: usize, k: usize, v: i64| {
            c[i][j][k] = rat_int(v);
            c[j][i][k] = rat_int(-v);
        };
        set(&mut c, 0, 1, 1, 2);
        set(&mut c, 0, 2, 2, -2);
        set(&mut c, 1, 2, 0, 1);
        LieData::new(vec!["h".into(), "e".into(), "f".into()], c)
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &xy * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad(e_i) acting on the basis.
    pub fn ad(&self, i: usize) -> Mat<Rat> {
        Mat::from_fn(self.dim, self.dim, |k, j| self.c[i][j][k].clone())
    }

    /// Direct triple-loop verification of antisymmetry and Jacobi.
    pub fn check(&self) -> LieVerdict {
        let mut v = LieVerdict::default();
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                if (0..d).any(|k| self.c[i][j][k] != -&self.c[j][i][k]) {
                    if i <= j {
                        v.antisymmetry_violations.push((i, j));
                    }
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let ei = basis_vec(d, i);
                    let ej = basis_vec(d, j);
                    let ek = basis_vec(d, k);
                    let t1 = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let t2 = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let t3 = self.bracket(&ek, &self.bracket(&ei, &ej));
                    let sum: Vec<Rat> =
                        t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| a + b + c).collect();
                    if sum.iter().any(|x| !x.is_zero()) {
                        v.jacobi_violations.push((i, j, k));
                    }
                }
            }
        }
        v
    }
}

pub fn basis_vec(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = rat_int(1);
    v
}

/// Killing form K(x, y) = tr(ad x ∘ ad y) from the structure constants.
pub fn killing_form(l: &LieData) -> Mat<Rat> {
    let ads: Vec<Mat<Rat>> = (0..l.dim).map(|i| l.ad(i)).collect();
    Mat::from_fn(l.dim, l.dim, |i, j| {
        let prod = crate::exactalg::mat_mul(&Rationals, &ads[i], &ads[j]);
        (0..l.dim).map(|k| prod.at(k, k).clone()).fold(Rat::zero(), |a, b| a + b)
    })
}

/// Invariant symmetric bilinear pairing on a Lie algebra, as a gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantPairing {
    pub lie: LieData,
    pub gram: Mat<Rat>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairingVerdict {
    pub symmetric: bool,
    pub invariant: bool,
    pub nondegenerate: bool,
    /// basis triples (x, y, z) violating ⟨[x,y],z⟩ + ⟨y,[x,z]⟩ = 0
    pub invariance_violations: Vec<(usize, usize, usize)>,
}

impl PairingVerdict {
    pub fn all(&self) -> bool {
        self.symmetric && self.invariant && self.nondegenerate
    }
}

impl InvariantPairing {
    pub fn new(lie: LieData, gram: Mat<Rat>) -> InvariantPairing {
        assert_eq!(gram.rows, lie.dim);
        assert_eq!(gram.cols, lie.dim);
        InvariantPairing { lie, gram }
    }

    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.lie.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.lie.dim {
                if !y[j].is_zero() {
                    acc += &x[i] * &y[j] * self.gram.at(i, j);
                }
            }
        }
        acc
    }

    /// Symmetry, infinitesimal invariance on all basis triples, and
    /// nondegeneracy (full rank of the gram matrix).
    pub fn check(&self) -> PairingVerdict {
        let d = self.lie.dim;
        let symmetric = (0..d).all(|i| (0..d).all(|j| self.gram.at(i, j) == self.gram.at(j, i)));
        let mut violations = Vec::new();
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let bxy = self.lie.bracket(&basis_vec(d, x), &basis_vec(d, y));
                    let bxz = self.lie.bracket(&basis_vec(d, x), &basis_vec(d, z));
                    let s = self.pair(&bxy, &basis_vec(d, z)) + self.pair(&basis_vec(d, y), &bxz);
                    if !s.is_zero() {
                        violations.push((x, y, z));
                    }
                }
            }
        }
        let nondegenerate = rank_t(&Rationals, &self.gram) == d;
        PairingVerdict {
            symmetric,
            invariant: violations.is_empty(),
            invariance_violations: violations,
            nondegenerate,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn sl2_is_valid() {
        assert!(LieData::sl2().check().is_valid());
        assert!(LieData::abelian(4).check().is_valid());
    }

    #[test]
    fn broken_sl2_reports_jacobi() {
        // perturb the single tensor entry c^h_{ef} to 2, leaving its
        // antisymmetric partner untouched
        let mut l = LieData::sl2();
        l.c[1][2][0] = rat_int(2);
        let v = l.check();
        assert!(!v.is_valid());
        assert!(!v.jacobi_violations.is_empty());
        assert!(!v.antisymmetry_violations.is_empty());
    }

    #[test]
    fn killing_form_sl2() {
        // K(h,h) = 8, K(e,f) = 4, everything else 0
        let k = killing_form(&LieData::sl2());
        assert_eq!(k.at(0, 0), &rat_int(8));
        assert_eq!(k.at(1, 2), &rat_int(4));
        assert_eq!(k.at(2, 1), &rat_int(4));
        assert_eq!(k.at(0, 1), &rat_int(0));
        assert_eq!(k.at(1, 1), &rat_int(0));
    }

    #[test]
    fn killing_pairing_verdict() {
        let l = LieData::sl2();
        let k = killing_form(&l);
        let p = InvariantPairing::new(l.clone(), k);
        let v = p.check();
        assert!(v.symmetric && v.invariant && v.nondegenerate);

        // trace form on sl2: tr(h²) = 2, tr(ef) = 1
        let tr = Mat::from_rows(vec![
            vec![rat_int(2), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(0)],
        ]);
        assert!(InvariantPairing::new(l.clone(), tr).check().all());

        // perturbing K(h,h) to 9 breaks invariance
        let mut bad = killing_form(&l);
        bad.set(0, 0, rat_int(9));
        let v = InvariantPairing::new(l, bad).check();
        assert!(v.symmetric && !v.invariant && !v.invariance_violations.is_empty());
    }

    #[test]
    fn killing_equals_trace_of_adjoints() {
        // cross-check bracket/ad bookkeeping on a scaled basis
        let l = LieData::sl2();
        let k = killing_form(&l);
        let p = InvariantPairing::new(l.clone(), k.clone());
        let x = vec![rat(1, 2), rat_int(3), rat_int(-1)];
        let y = vec![rat_int(2), rat(1, 3), rat_int(5)];
        // K(x,y) via gram = tr(ad x ad y) computed directly
        let mut adx = crate::exactalg::mat_zero(&Rationals, 3, 3);
        let mut ady = crate::exactalg::mat_zero(&Rationals, 3, 3);
        for i in 0..3 {
            for r in 0..3 {
                for c in 0..3 {
                    let v = adx.at(r, c) + &x[i] * l.ad(i).at(r, c);
                    adx.set(r, c, v);
                    let v = ady.at(r, c) + &y[i] * l.ad(i).at(r, c);
                    ady.set(r, c, v);
                }
            }
        }
        let prod = crate::exactalg::mat_mul(&Rationals, &adx, &ady);
        let tr = (0..3).map(|k| prod.at(k, k).clone()).fold(Rat::zero(), |a, b| a + b);
        assert_eq!(p.pair(&x, &y), tr);
    }
}
