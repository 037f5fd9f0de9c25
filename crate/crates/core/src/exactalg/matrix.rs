use super::scalar::{ExactError, Field, Fp, Rat, Rationals, Scalar, ScalarKind};

/// Dense matrix over an exact field, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows_data: Vec<Vec<T>>) -> Mat<T> {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, |r| r.len());
        for r in &rows_data {
            assert_eq!(r.len(), cols, "ragged rows");
        }
        Mat { rows, cols, data: rows_data.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Mat<T> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn hstack(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { other.at(i, j - self.cols).clone() }
        })
    }

    pub fn vstack(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self.at(i, j).clone() } else { other.at(i - self.rows, j).clone() }
        })
    }

    pub fn map<S>(&self, f: impl Fn(&T) -> S) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

pub fn zero<F: Field>(f: &F, rows: usize, cols: usize) -> Mat<F::El> {
    Mat { rows, cols, data: vec![f.zero(); rows * cols] }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Mat<F::El> {
    Mat::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn add<F: Field>(f: &F, a: &Mat<F::El>, b: &Mat<F::El>) -> Mat<F::El> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Mat::from_fn(a.rows, a.cols, |i, j| f.add(a.at(i, j), b.at(i, j)))
}

pub fn sub<F: Field>(f: &F, a: &Mat<F::El>, b: &Mat<F::El>) -> Mat<F::El> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Mat::from_fn(a.rows, a.cols, |i, j| f.sub(a.at(i, j), b.at(i, j)))
}

pub fn scale<F: Field>(f: &F, c: &F::El, a: &Mat<F::El>) -> Mat<F::El> {
    a.map(|x| f.mul(c, x))
}

pub fn mul<F: Field>(f: &F, a: &Mat<F::El>, b: &Mat<F::El>) -> Mat<F::El> {
    assert_eq!(a.cols, b.rows, "inner dimensions");
    Mat::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = f.zero();
        for k in 0..a.cols {
            acc = f.add(&acc, &f.mul(a.at(i, k), b.at(k, j)));
        }
        acc
    })
}

pub fn mat_vec<F: Field>(f: &F, a: &Mat<F::El>, v: &[F::El]) -> Vec<F::El> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut acc = f.zero();
            for k in 0..a.cols {
                acc = f.add(&acc, &f.mul(a.at(i, k), &v[k]));
            }
            acc
        })
        .collect()
}

/// Reduced row echelon form. Pivot choice is the first nonzero entry in
/// column order, so the result is deterministic.
pub fn rref<F: Field>(f: &F, m: &Mat<F::El>) -> (Mat<F::El>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !f.is_zero(a.at(i, c))) else { continue };
        if pr != r {
            for j in 0..a.cols {
                let tmp = a.at(r, j).clone();
                let v = a.at(pr, j).clone();
                a.set(r, j, v);
                a.set(pr, j, tmp);
            }
        }
        let piv_inv = f.inv(a.at(r, c)).expect("pivot nonzero");
        for j in 0..a.cols {
            a.set(r, j, f.mul(&piv_inv, a.at(r, j)));
        }
        for i in 0..a.rows {
            if i != r && !f.is_zero(a.at(i, c)) {
                let factor = a.at(i, c).clone();
                for j in 0..a.cols {
                    let v = f.sub(a.at(i, j), &f.mul(&factor, a.at(r, j)));
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank_t<F: Field>(f: &F, m: &Mat<F::El>) -> usize {
    rref(f, m).1.len()
}

/// Basis of the right kernel {v : m v = 0}; free variables set to 1 in
/// column order.
pub fn kernel_t<F: Field>(f: &F, m: &Mat<F::El>) -> Vec<Vec<F::El>> {
    let (r, pivots) = rref(f, m);
    let mut basis = Vec::new();
    let piv_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..m.cols {
        if piv_set.contains(&free) {
            continue;
        }
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.at(row, free));
        }
        basis.push(v);
    }
    basis
}

/// One solution of m x = b, if any.
pub fn solve_t<F: Field>(f: &F, m: &Mat<F::El>, b: &[F::El]) -> Option<Vec<F::El>> {
    assert_eq!(m.rows, b.len());
    let aug = m.hstack(&Mat { rows: b.len(), cols: 1, data: b.to_vec() });
    let (r, pivots) = rref(f, &aug);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![f.zero(); m.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.at(row, m.cols).clone();
    }
    Some(x)
}

pub fn invert_t<F: Field>(f: &F, m: &Mat<F::El>) -> Option<Mat<F::El>> {
    assert_eq!(m.rows, m.cols);
    let aug = m.hstack(&identity(f, m.rows));
    let (r, pivots) = rref(f, &aug);
    if pivots.len() != m.rows || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(Mat::from_fn(m.rows, m.cols, |i, j| r.at(i, m.cols + j).clone()))
}

/// Rank of the row space spanned by the given vectors.
pub fn row_space_rank<F: Field>(f: &F, vecs: &[Vec<F::El>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    rank_t(f, &Mat::from_rows(vecs.to_vec()))
}

/// Dynamic matrix over `Scalar` entries, homogeneous in scalar kind.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    inner: Mat<Scalar>,
    kind: Option<ScalarKind>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Matrix, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Dimension { expected: rows * cols, got: entries.len() });
        }
        let kind = entries.first().map(|e| e.kind());
        if let Some(k) = kind {
            if entries.iter().any(|e| e.kind() != k) {
                return Err(ExactError::MixedKinds);
            }
        }
        Ok(Matrix { inner: Mat { rows, cols, data: entries }, kind })
    }

    pub fn from_rat(m: Mat<Rat>) -> Matrix {
        let kind = if m.data.is_empty() { None } else { Some(ScalarKind::Rat) };
        Matrix { inner: m.map(|q| Scalar::Rat(q.clone())), kind }
    }

    pub fn rows(&self) -> usize {
        self.inner.rows
    }

    pub fn cols(&self) -> usize {
        self.inner.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        self.inner.at(i, j)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix { inner: self.inner.transpose(), kind: self.kind }
    }

    fn field_kind(&self, op: &'static str) -> Result<ScalarKind, ExactError> {
        match self.kind {
            None | Some(ScalarKind::Rat) => Ok(ScalarKind::Rat),
            Some(ScalarKind::Fp(p)) => Ok(ScalarKind::Fp(p)),
            Some(ScalarKind::JetRat) | Some(ScalarKind::JetFp(_)) => {
                Err(ExactError::UnsupportedScalar(op))
            }
        }
    }

    fn to_rat(&self) -> Mat<Rat> {
        self.inner.map(|s| match s {
            Scalar::Rat(q) => q.clone(),
            _ => unreachable!("kind checked"),
        })
    }

    fn to_fp(&self) -> Mat<super::scalar::FpEl> {
        self.inner.map(|s| match s {
            Scalar::Fp(x) => *x,
            _ => unreachable!("kind checked"),
        })
    }
}

/// Rank over a field by exact Gaussian elimination; jets are rejected.
pub fn rank(m: &Matrix) -> Result<usize, ExactError> {
    match m.field_kind("rank")? {
        ScalarKind::Fp(p) => Ok(rank_t(&Fp { p }, &m.to_fp())),
        _ => Ok(rank_t(&Rationals, &m.to_rat())),
    }
}

/// Basis of the right kernel; |basis| = cols − rank and m·v = 0 exactly.
pub fn kernel_basis(m: &Matrix) -> Result<Vec<Vec<Scalar>>, ExactError> {
    match m.field_kind("kernel_basis")? {
        ScalarKind::Fp(p) => Ok(kernel_t(&Fp { p }, &m.to_fp())
            .into_iter()
            .map(|v| v.into_iter().map(Scalar::Fp).collect())
            .collect()),
        _ => Ok(kernel_t(&Rationals, &m.to_rat())
            .into_iter()
            .map(|v| v.into_iter().map(Scalar::Rat).collect())
            .collect()),
    }
}

/// One exact solution of m x = b over a field, if consistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, ExactError> {
    match m.field_kind("solve")? {
        ScalarKind::Fp(p) => {
            let f = Fp { p };
            let bb: Vec<_> = b
                .iter()
                .map(|s| match s {
                    Scalar::Fp(x) if x.p == p => Ok(*x),
                    _ => Err(ExactError::MixedKinds),
                })
                .collect::<Result<_, _>>()?;
            Ok(solve_t(&f, &m.to_fp(), &bb).map(|v| v.into_iter().map(Scalar::Fp).collect()))
        }
        _ => {
            let bb: Vec<_> = b
                .iter()
                .map(|s| s.as_rat().cloned().ok_or(ExactError::MixedKinds))
                .collect::<Result<_, _>>()?;
            Ok(solve_t(&Rationals, &m.to_rat(), &bb)
                .map(|v| v.into_iter().map(Scalar::Rat).collect()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_int, Jet};

    fn rmat(rows: Vec<Vec<i64>>) -> Matrix {
        let r = rows.len();
        let c = rows[0].len();
        Matrix::new(
            r,
            c,
            rows.into_iter().flatten().map(|n| Scalar::Rat(rat_int(n))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_identity_zero_proportional() {
        assert_eq!(rank(&rmat(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])).unwrap(), 3);
        assert_eq!(rank(&rmat(vec![vec![0, 0], vec![0, 0]])).unwrap(), 0);
        assert_eq!(rank(&rmat(vec![vec![1, 2], vec![2, 4]])).unwrap(), 1);
    }

    #[test]
    fn rank_rejects_jets() {
        let j = Scalar::JetRat(Jet { v: rat_int(1), d: rat_int(0) });
        let m = Matrix::new(1, 1, vec![j]).unwrap();
        assert!(matches!(rank(&m), Err(ExactError::UnsupportedScalar(_))));
    }

    #[test]
    fn kernel_cases() {
        let id = rmat(vec![vec![1, 0], vec![0, 1]]);
        assert!(kernel_basis(&id).unwrap().is_empty());

        let z = rmat(vec![vec![0, 0, 0], vec![0, 0, 0]]);
        assert_eq!(kernel_basis(&z).unwrap().len(), 3);

        let row = rmat(vec![vec![1, 1]]);
        let k = kernel_basis(&row).unwrap();
        assert_eq!(k.len(), 1);
        // substitution check: m·v = 0
        let sum = k[0][0].add(&k[0][1]).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn kernel_vectors_annihilated_fp() {
        let f = Fp::new(7).unwrap();
        let m = Mat::from_rows(vec![
            vec![f.el(1), f.el(2), f.el(3)],
            vec![f.el(2), f.el(4), f.el(6)],
            vec![f.el(0), f.el(1), f.el(5)],
        ]);
        let ker = kernel_t(&f, &m);
        assert_eq!(ker.len(), 3 - rank_t(&f, &m));
        for v in &ker {
            for x in mat_vec(&f, &m, v) {
                assert_eq!(x.v, 0);
            }
        }
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let mats = [
            vec![vec![1, 2, 3], vec![4, 5, 6]],
            vec![vec![0, 0], vec![1, 7], vec![2, 14]],
            vec![vec![3]],
        ];
        for m in mats {
            let a = rmat(m);
            assert_eq!(rank(&a).unwrap(), rank(&a.transpose()).unwrap());
        }
    }

    #[test]
    fn solve_and_invert() {
        let q = Rationals;
        let m = Mat::from_rows(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(3)],
        ]);
        let x = solve_t(&q, &m, &[rat_int(5), rat_int(10)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(3)]);
        let mi = invert_t(&q, &m).unwrap();
        assert_eq!(mul(&q, &m, &mi), identity(&q, 2));
        let sing = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ]);
        assert!(invert_t(&q, &sing).is_none());
        assert!(solve_t(&q, &sing, &[rat_int(0), rat_int(1)]).is_none());
        assert_eq!(rat(1, 2) + rat(1, 2), rat_int(1));
    }
}
