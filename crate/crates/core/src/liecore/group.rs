use super::lie::LieData;
use crate::exactalg::{
    invert_t, mat_identity, mat_mul, mat_sub, rat_int, ExactError, Field, Jet, JetField, Mat,
    Polynomial, Rat, Rationals,
};
use num::Zero;

/// Matrix-group family tag. Tori of rank r are realized as diagonal
/// matrices of size r+1 with determinant 1, so that inversion stays
/// polynomial. Products embed block-diagonally.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    SpecialLinear(usize),
    SpecialOrthogonal(usize),
    Symplectic(usize),
    Torus(usize),
    Product(Vec<Family>),
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::SpecialLinear(n) => format!("SL{n}"),
            Family::SpecialOrthogonal(n) => format!("SO{n}"),
            Family::Symplectic(n) => format!("Sp{n}"),
            Family::Torus(r) => format!("T{r}"),
            Family::Product(fs) => fs.iter().map(|f| f.label()).collect::<Vec<_>>().join("x"),
        }
    }
}

/// A matrix group with exact Lie data: defining polynomial equations in
/// the n² entry variables (row-major), a matrix realization of the Lie
/// algebra basis, and a polynomial formula for inversion.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub family: Family,
    pub n: usize,
    pub lie: LieData,
    pub basis_mats: Vec<Mat<Rat>>,
    pub equations: Vec<Polynomial>,
    pub inverse_map: Vec<Polynomial>,
}

/// A group element over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint<T> {
    pub m: Mat<T>,
}

pub fn entry_var(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

fn entry_poly(n: usize, i: usize, j: usize) -> Polynomial {
    Polynomial::var(n * n, entry_var(n, i, j))
}

/// Leibniz determinant of the generic n×n matrix of entry variables.
fn det_poly(n: usize) -> Polynomial {
    let mut out = Polynomial::zero(n * n);
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p, sign| {
        let mut term = Polynomial::constant(n * n, rat_int(sign));
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(&entry_poly(n, i, j));
        }
        out = out.add(&term);
    });
    out
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], i64)) {
    let n = p.len();
    if k == n {
        let mut sign = 1i64;
        let mut seen = vec![false; n];
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        f(p, sign);
        return;
    }
    for i in k..n {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Adjugate as a matrix of polynomials: adj(M)_{ij} = (−1)^{i+j}·minor_{ji}.
fn adjugate_polys(n: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(n * n); n * n];
    if n == 1 {
        out[0] = Polynomial::constant(1, rat_int(1));
        return out;
    }
    for i in 0..n {
        for j in 0..n {
            // minor of (j, i)
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = n - 1;
            let sub = det_poly(m);
            // remap the (n−1)² minor variables into the big ring
            let map: Vec<usize> = (0..m * m)
                .map(|v| entry_var(n, rows[v / m], cols[v % m]))
                .collect();
            let mut minor = sub.remap(&map, n * n);
            if (i + j) % 2 == 1 {
                minor = minor.neg();
            }
            out[entry_var(n, i, j)] = minor;
        }
    }
    out
}

fn transpose_polys(n: usize) -> Vec<Polynomial> {
    (0..n * n)
        .map(|v| entry_poly(n, v % n, v / n))
        .collect()
}

fn standard_j(k: usize) -> Mat<Rat> {
    let n = 2 * k;
    Mat::from_fn(n, n, |i, j| {
        if i < k && j == i + k {
            rat_int(1)
        } else if i >= k && j == i - k {
            rat_int(-1)
        } else {
            Rat::zero()
        }
    })
}

fn e_mat(n: usize, i: usize, j: usize) -> Mat<Rat> {
    Mat::from_fn(n, n, |r, c| if r == i && c == j { rat_int(1) } else { Rat::zero() })
}

impl MatrixGroup {
    pub fn special_linear(n: usize) -> MatrixGroup {
        assert!(n >= 2);
        let mut basis = Vec::new();
        let mut names = Vec::new();
        for i in 0..n - 1 {
            let mut m = e_mat(n, i, i);
            m = mat_sub(&Rationals, &m, &e_mat(n, i + 1, i + 1));
            basis.push(m);
            names.push(format!("h{i}"));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    basis.push(e_mat(n, i, j));
                    names.push(format!("e{i}{j}"));
                }
            }
        }
        let equations = vec![det_poly(n).sub(&Polynomial::constant(n * n, rat_int(1)))];
        Self::from_parts(Family::SpecialLinear(n), n, names, basis, equations, adjugate_polys(n))
    }

    /// SL2 with basis ordered (h, e, f) to match `LieData::sl2`.
    pub fn sl2() -> MatrixGroup {
        let g = Self::special_linear(2);
        debug_assert_eq!(g.lie.names, vec!["h0", "e01", "e10"]);
        g
    }

    pub fn special_orthogonal(n: usize) -> MatrixGroup {
        assert!(n >= 2);
        let mut basis = Vec::new();
        let mut names = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                basis.push(mat_sub(&Rationals, &e_mat(n, i, j), &e_mat(n, j, i)));
                names.push(format!("a{i}{j}"));
            }
        }
        let mut equations = Vec::new();
        // MᵀM = I, upper triangle
        for i in 0..n {
            for j in i..n {
                let mut p = Polynomial::zero(n * n);
                for k in 0..n {
                    p = p.add(&entry_poly(n, k, i).mul(&entry_poly(n, k, j)));
                }
                let delta = if i == j { rat_int(1) } else { Rat::zero() };
                equations.push(p.sub(&Polynomial::constant(n * n, delta)));
            }
        }
        equations.push(det_poly(n).sub(&Polynomial::constant(n * n, rat_int(1))));
        Self::from_parts(
            Family::SpecialOrthogonal(n),
            n,
            names,
            basis,
            equations,
            transpose_polys(n),
        )
    }

    pub fn symplectic(n: usize) -> MatrixGroup {
        assert!(n >= 2 && n % 2 == 0);
        let k = n / 2;
        let jm = standard_j(k);
        let mut basis = Vec::new();
        let mut names = Vec::new();
        // X = [[A, B], [C, −Aᵀ]] with B, C symmetric
        for i in 0..k {
            for j in 0..k {
                let m = mat_sub(&Rationals, &e_mat(n, i, j), &e_mat(n, k + j, k + i));
                basis.push(m);
                names.push(format!("a{i}{j}"));
            }
        }
        for i in 0..k {
            for j in i..k {
                let mut m = e_mat(n, i, k + j);
                if i != j {
                    m = crate::exactalg::mat_add(&Rationals, &m, &e_mat(n, j, k + i));
                }
                basis.push(m);
                names.push(format!("b{i}{j}"));
                let mut m = e_mat(n, k + i, j);
                if i != j {
                    m = crate::exactalg::mat_add(&Rationals, &m, &e_mat(n, k + j, i));
                }
                basis.push(m);
                names.push(format!("c{i}{j}"));
            }
        }
        // MᵀJM = J, strict upper triangle (the matrix is antisymmetric)
        let mut equations = Vec::new();
        for r in 0..n {
            for s in r + 1..n {
                let mut p = Polynomial::zero(n * n);
                for a in 0..n {
                    for b in 0..n {
                        if !jm.at(a, b).is_zero() {
                            let term = entry_poly(n, a, r).mul(&entry_poly(n, b, s));
                            p = p.add(&term.scale(jm.at(a, b)));
                        }
                    }
                }
                equations.push(p.sub(&Polynomial::constant(n * n, jm.at(r, s).clone())));
            }
        }
        // M⁻¹ = −J Mᵀ J
        let nvars = n * n;
        let mut inverse = vec![Polynomial::zero(nvars); nvars];
        for i in 0..n {
            for j in 0..n {
                let mut p = Polynomial::zero(nvars);
                for a in 0..n {
                    for b in 0..n {
                        let c = -(jm.at(i, a).clone() * jm.at(b, j).clone());
                        if !c.is_zero() {
                            p = p.add(&entry_poly(n, b, a).scale(&c));
                        }
                    }
                }
                inverse[entry_var(n, i, j)] = p;
            }
        }
        Self::from_parts(Family::Symplectic(n), n, names, basis, equations, inverse)
    }

    pub fn torus(rank: usize) -> MatrixGroup {
        assert!(rank >= 1);
        let n = rank + 1;
        let mut basis = Vec::new();
        let mut names = Vec::new();
        for i in 0..rank {
            basis.push(mat_sub(&Rationals, &e_mat(n, i, i), &e_mat(n, rank, rank)));
            names.push(format!("t{i}"));
        }
        let mut equations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    equations.push(entry_poly(n, i, j));
                }
            }
        }
        equations.push(det_poly(n).sub(&Polynomial::constant(n * n, rat_int(1))));
        Self::from_parts(Family::Torus(rank), n, names, basis, equations, adjugate_polys(n))
    }

    /// Block-diagonal product. Lie data is the direct sum.
    pub fn product(a: &MatrixGroup, b: &MatrixGroup) -> MatrixGroup {
        let n = a.n + b.n;
        let nvars = n * n;
        let embed = |m: &Mat<Rat>, off: usize| -> Mat<Rat> {
            Mat::from_fn(n, n, |i, j| {
                if i >= off && j >= off && i - off < m.rows && j - off < m.cols {
                    m.at(i - off, j - off).clone()
                } else {
                    Rat::zero()
                }
            })
        };
        let var_map = |g: &MatrixGroup, off: usize| -> Vec<usize> {
            (0..g.n * g.n)
                .map(|v| entry_var(n, v / g.n + off, v % g.n + off))
                .collect()
        };
        let mut basis = Vec::new();
        let mut names = Vec::new();
        for (i, m) in a.basis_mats.iter().enumerate() {
            basis.push(embed(m, 0));
            names.push(format!("L.{}", a.lie.names[i]));
        }
        for (i, m) in b.basis_mats.iter().enumerate() {
            basis.push(embed(m, a.n));
            names.push(format!("R.{}", b.lie.names[i]));
        }
        let mut equations = Vec::new();
        let map_a = var_map(a, 0);
        let map_b = var_map(b, a.n);
        for e in &a.equations {
            equations.push(e.remap(&map_a, nvars));
        }
        for e in &b.equations {
            equations.push(e.remap(&map_b, nvars));
        }
        for i in 0..n {
            for j in 0..n {
                let off_block = (i < a.n) != (j < a.n);
                if off_block {
                    equations.push(entry_poly(n, i, j));
                }
            }
        }
        let mut inverse = vec![Polynomial::zero(nvars); nvars];
        for i in 0..a.n {
            for j in 0..a.n {
                inverse[entry_var(n, i, j)] =
                    a.inverse_map[entry_var(a.n, i, j)].remap(&map_a, nvars);
            }
        }
        for i in 0..b.n {
            for j in 0..b.n {
                inverse[entry_var(n, i + a.n, j + a.n)] =
                    b.inverse_map[entry_var(b.n, i, j)].remap(&map_b, nvars);
            }
        }
        let family = Family::Product(vec![a.family.clone(), b.family.clone()]);
        Self::from_parts(family, n, names, basis, equations, inverse)
    }

    fn from_parts(
        family: Family,
        n: usize,
        names: Vec<String>,
        basis: Vec<Mat<Rat>>,
        equations: Vec<Polynomial>,
        inverse_map: Vec<Polynomial>,
    ) -> MatrixGroup {
        let lie = lie_from_matrix_basis(names, &basis);
        MatrixGroup { family, n, lie, basis_mats: basis, equations, inverse_map }
    }

    pub fn dim(&self) -> usize {
        self.lie.dim
    }

    pub fn identity<F: Field>(&self, f: &F) -> Mat<F::El> {
        mat_identity(f, self.n)
    }

    /// Matrix of a Lie-algebra coordinate vector over any field.
    pub fn lie_to_matrix<F: Field>(&self, f: &F, x: &[F::El]) -> Mat<F::El> {
        assert_eq!(x.len(), self.dim());
        let mut out = crate::exactalg::mat_zero(f, self.n, self.n);
        for (k, b) in self.basis_mats.iter().enumerate() {
            for i in 0..self.n {
                for j in 0..self.n {
                    if !b.at(i, j).is_zero() {
                        let c = f.from_rat(b.at(i, j)).expect("integral basis");
                        let v = f.add(out.at(i, j), &f.mul(&c, &x[k]));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Coordinates of a matrix in the Lie basis, if it lies in the span.
    pub fn matrix_to_lie<F: Field>(&self, f: &F, m: &Mat<F::El>) -> Option<Vec<F::El>> {
        let rows = self.n * self.n;
        let a = Mat::from_fn(rows, self.dim(), |r, c| {
            f.from_rat(self.basis_mats[c].at(r / self.n, r % self.n)).expect("integral basis")
        });
        let b: Vec<F::El> = m.data.clone();
        crate::exactalg::solve_t(f, &a, &b)
    }

    pub fn is_point<F: Field>(&self, f: &F, m: &Mat<F::El>) -> bool {
        assert_eq!((m.rows, m.cols), (self.n, self.n));
        self.equations.iter().all(|eq| {
            let v = eq.eval(f, &m.data).expect("entry count");
            f.is_zero(&v)
        })
    }

    /// Linearized defining equations vanish at (g, v)?
    pub fn is_tangent_at<F: Field>(&self, f: &F, g: &Mat<F::El>, v: &Mat<F::El>) -> bool {
        let jf = JetField::new(f.clone());
        let args: Vec<Jet<F::El>> = g
            .data
            .iter()
            .zip(&v.data)
            .map(|(gv, dv)| Jet { v: gv.clone(), d: dv.clone() })
            .collect();
        self.equations.iter().all(|eq| {
            let out = eq.eval(&jf, &args).expect("entry count");
            f.is_zero(&out.d)
        })
    }

    /// Polynomial inversion: adjugate for SL/torus, transpose for SO,
    /// −JMᵀJ for Sp, blockwise for products.
    pub fn invert_point<F: Field>(&self, f: &F, g: &Mat<F::El>) -> Mat<F::El> {
        let vals: Vec<F::El> = self
            .inverse_map
            .iter()
            .map(|p| p.eval(f, &g.data).expect("entry count"))
            .collect();
        Mat { rows: self.n, cols: self.n, data: vals }
    }

    /// Matrix of Ad_g on 𝔤 in the Lie basis.
    pub fn ad_matrix<F: Field>(&self, f: &F, g: &Mat<F::El>) -> Mat<F::El> {
        let gi = self.invert_point(f, g);
        let cols: Vec<Vec<F::El>> = (0..self.dim())
            .map(|k| {
                let bk = self.basis_mats[k].map(|q| f.from_rat(q).expect("integral basis"));
                let conj = mat_mul(f, &mat_mul(f, g, &bk), &gi);
                self.matrix_to_lie(f, &conj).expect("Ad preserves the Lie algebra")
            })
            .collect();
        Mat::from_fn(self.dim(), self.dim(), |i, j| cols[j][i].clone())
    }
}

/// Structure constants recovered from matrix commutators of the basis.
fn lie_from_matrix_basis(names: Vec<String>, basis: &[Mat<Rat>]) -> LieData {
    let dim = basis.len();
    let n = basis[0].rows;
    let q = Rationals;
    let rows = n * n;
    let a = Mat::from_fn(rows, dim, |r, c| basis[c].at(r / n, r % n).clone());
    let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let comm = mat_sub(
                &q,
                &mat_mul(&q, &basis[i], &basis[j]),
                &mat_mul(&q, &basis[j], &basis[i]),
            );
            let coords = crate::exactalg::solve_t(&q, &a, &comm.data)
                .expect("commutator stays in the Lie algebra");
            c[i][j] = coords;
        }
    }
    LieData::new(names, c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaurerCartan<T> {
    pub theta: Mat<T>,
    pub theta_bar: Mat<T>,
    pub beta: Mat<T>,
}

/// θ = g⁻¹v, θ̄ = vg⁻¹, β = ½(θ + θ̄) for a tangent vector v at g.
pub fn maurer_cartan<F: Field>(
    group: &MatrixGroup,
    f: &F,
    g: &Mat<F::El>,
    v: &Mat<F::El>,
) -> Result<MaurerCartan<F::El>, ExactError> {
    if !group.is_tangent_at(f, g, v) {
        return Err(ExactError::UnsupportedScalar("maurer_cartan: vector not tangent"));
    }
    let gi = group.invert_point(f, g);
    let theta = mat_mul(f, &gi, v);
    let theta_bar = mat_mul(f, v, &gi);
    let half = f.inv(&f.from_int(2))?;
    let beta = crate::exactalg::mat_scale(f, &half, &crate::exactalg::mat_add(f, &theta, &theta_bar));
    Ok(MaurerCartan { theta, theta_bar, beta })
}

/// Infinitesimal conjugation action: v_x(g) = xg − gx.
pub fn conjugation_field<F: Field>(
    f: &F,
    x: &Mat<F::El>,
    g: &Mat<F::El>,
) -> Mat<F::El> {
    mat_sub(f, &mat_mul(f, x, g), &mat_mul(f, g, x))
}

/// Exact matrix inverse over a field (general fallback; group points use
/// `invert_point`).
pub fn matrix_inverse<F: Field>(f: &F, m: &Mat<F::El>) -> Option<Mat<F::El>> {
    invert_t(f, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{mat_vec, rat, Fp};
    use crate::liecore::lie::basis_vec;

    fn rm(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(rat_int).collect()).collect(),
        )
    }

    #[test]
    fn sl2_structure_constants_match_reference() {
        let g = MatrixGroup::sl2();
        assert_eq!(g.lie.c, LieData::sl2().c);
        assert!(g.lie.check().is_valid());
    }

    #[test]
    fn families_validate() {
        for g in [
            MatrixGroup::special_linear(3),
            MatrixGroup::special_orthogonal(3),
            MatrixGroup::symplectic(4),
            MatrixGroup::torus(2),
            MatrixGroup::product(&MatrixGroup::sl2(), &MatrixGroup::sl2()),
        ] {
            assert!(g.lie.check().is_valid(), "{:?}", g.family);
            // basis elements tangent at the identity
            let q = Rationals;
            let id = g.identity(&q);
            for b in &g.basis_mats {
                assert!(g.is_tangent_at(&q, &id, b), "{:?}", g.family);
            }
            assert!(g.is_point(&q, &id));
        }
    }

    #[test]
    fn inverse_map_inverts() {
        let q = Rationals;
        let g = MatrixGroup::sl2();
        let m = rm(vec![vec![2, 3], vec![3, 5]]); // det 1
        assert!(g.is_point(&q, &m));
        let mi = g.invert_point(&q, &m);
        assert_eq!(mat_mul(&q, &m, &mi), g.identity(&q));

        let sp = MatrixGroup::symplectic(2); // Sp2 = SL2
        assert!(sp.is_point(&q, &m));
        let mi = sp.invert_point(&q, &m);
        assert_eq!(mat_mul(&q, &m, &mi), sp.identity(&q));
    }

    #[test]
    fn maurer_cartan_identities() {
        let q = Rationals;
        let g = MatrixGroup::sl2();
        let id = g.identity(&q);
        let e = g.basis_mats[1].clone();
        let mc = maurer_cartan(&g, &q, &id, &e).unwrap();
        assert_eq!(mc.theta, e);
        assert_eq!(mc.theta_bar, e);
        assert_eq!(mc.beta, e);

        // g = diag(2, 1/2), v = g·e → θ = e, θ̄ = g e g⁻¹ = 4e
        let d = Mat::from_rows(vec![
            vec![rat_int(2), Rat::zero()],
            vec![Rat::zero(), rat(1, 2)],
        ]);
        let v = mat_mul(&q, &d, &e);
        let mc = maurer_cartan(&g, &q, &d, &v).unwrap();
        assert_eq!(mc.theta, e);
        assert_eq!(mc.theta_bar, crate::exactalg::mat_scale(&q, &rat_int(4), &e));
    }

    #[test]
    fn maurer_cartan_rejects_non_tangent() {
        let q = Rationals;
        let g = MatrixGroup::sl2();
        let id = g.identity(&q);
        // identity matrix is not tangent to SL2 at e (trace 2 ≠ 0)
        assert!(maurer_cartan(&g, &q, &id, &id).is_err());
    }

    #[test]
    fn conjugation_field_examples() {
        let q = Rationals;
        let g = MatrixGroup::sl2();
        let h = g.basis_mats[0].clone();
        let id = g.identity(&q);
        let z = conjugation_field(&q, &h, &id);
        assert!(z.data.iter().all(|x| x.is_zero()));

        // G=SL2, x=h, g=unipotent(1): v = h·g − g·h = [[0,2],[0,0]]
        let u = rm(vec![vec![1, 1], vec![0, 1]]);
        let v = conjugation_field(&q, &h, &u);
        assert_eq!(v, rm(vec![vec![0, 2], vec![0, 0]]));
        assert!(g.is_tangent_at(&q, &u, &v));
    }

    #[test]
    fn ad_matrix_respects_bracket_and_pairing() {
        let q = Rationals;
        let g = MatrixGroup::sl2();
        let u = rm(vec![vec![1, 2], vec![1, 3]]); // det 1
        let ad = g.ad_matrix(&q, &u);
        // Ad_g[x, y] = [Ad_g x, Ad_g y] on basis pairs
        for i in 0..3 {
            for j in 0..3 {
                let bij = g.lie.bracket(&basis_vec(3, i), &basis_vec(3, j));
                let lhs = mat_vec(&q, &ad, &bij);
                let rhs = g
                    .lie
                    .bracket(&mat_vec(&q, &ad, &basis_vec(3, i)), &mat_vec(&q, &ad, &basis_vec(3, j)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ad_matrix_over_fp() {
        let f = Fp::new(7).unwrap();
        let g = MatrixGroup::sl2();
        let m = Mat::from_rows(vec![vec![f.el(1), f.el(3)], vec![f.el(2), f.el(7)]]);
        assert!(g.is_point(&f, &m));
        let ad = g.ad_matrix(&f, &m);
        assert_eq!(ad.rows, 3);
    }

    #[test]
    fn product_group_blocks() {
        let q = Rationals;
        let gg = MatrixGroup::product(&MatrixGroup::sl2(), &MatrixGroup::torus(1));
        assert_eq!(gg.n, 4);
        assert_eq!(gg.dim(), 4);
        let m = Mat::from_fn(4, 4, |i, j| {
            let a = rm(vec![vec![2, 3], vec![3, 5]]);
            if i < 2 && j < 2 {
                a.at(i, j).clone()
            } else if i == j && i >= 2 {
                if i == 2 { rat_int(3) } else { rat(1, 3) }
            } else {
                Rat::zero()
            }
        });
        assert!(gg.is_point(&q, &m));
        let mi = gg.invert_point(&q, &m);
        assert_eq!(mat_mul(&q, &m, &mi), gg.identity(&q));
    }
}
