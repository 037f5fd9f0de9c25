use crate::exactalg::{mat_mul, rank_t, Field, Mat};

/// Finite complex of based vector spaces over an exact field, supported on
/// a contiguous degree range. `diffs[i]` maps degree `min_deg + i` to the
/// next degree and has shape dims[i+1] × dims[i].
#[derive(Debug, Clone, PartialEq)]
pub struct PtComplex<T> {
    pub min_deg: i32,
    pub dims: Vec<usize>,
    pub diffs: Vec<Mat<T>>,
}

impl<T: Clone + PartialEq + std::fmt::Debug> PtComplex<T> {
    pub fn new(min_deg: i32, dims: Vec<usize>, diffs: Vec<Mat<T>>) -> PtComplex<T> {
        assert_eq!(diffs.len() + 1, dims.len().max(1));
        for (i, d) in diffs.iter().enumerate() {
            assert_eq!(d.cols, dims[i], "differential {i} domain");
            assert_eq!(d.rows, dims[i + 1], "differential {i} codomain");
        }
        PtComplex { min_deg, dims, diffs }
    }

    pub fn max_deg(&self) -> i32 {
        self.min_deg + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, deg: i32) -> usize {
        let i = deg - self.min_deg;
        if i < 0 || i as usize >= self.dims.len() {
            0
        } else {
            self.dims[i as usize]
        }
    }

    pub fn diff(&self, deg: i32) -> Option<&Mat<T>> {
        let i = deg - self.min_deg;
        if i < 0 || i as usize >= self.diffs.len() {
            None
        } else {
            Some(&self.diffs[i as usize])
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (i, &d) in self.dims.iter().enumerate() {
            let deg = self.min_deg + i as i32;
            if deg.rem_euclid(2) == 0 {
                chi += d as i64;
            } else {
                chi -= d as i64;
            }
        }
        chi
    }
}

pub fn validate_complex<F: Field>(f: &F, c: &PtComplex<F::El>) -> bool {
    for i in 0..c.diffs.len().saturating_sub(1) {
        let comp = mat_mul(f, &c.diffs[i + 1], &c.diffs[i]);
        if comp.data.iter().any(|x| !f.is_zero(x)) {
            return false;
        }
    }
    true
}

/// Dimensions of the cohomology in each degree, by exact rank computation.
pub fn cohomology_dims<F: Field>(f: &F, c: &PtComplex<F::El>) -> Vec<(i32, usize)> {
    let mut out = Vec::new();
    for i in 0..c.dims.len() {
        let deg = c.min_deg + i as i32;
        let rank_out = c.diff(deg).map_or(0, |d| rank_t(f, d));
        let rank_in = c.diff(deg - 1).map_or(0, |d| rank_t(f, d));
        out.push((deg, c.dims[i] - rank_out - rank_in));
    }
    out
}

pub fn is_acyclic<F: Field>(f: &F, c: &PtComplex<F::El>) -> bool {
    cohomology_dims(f, c).iter().all(|&(_, h)| h == 0)
}

/// Degreewise chain map between complexes (blocks may be absent where
/// either side is zero).
#[derive(Debug, Clone)]
pub struct ChainMap<T> {
    pub blocks: std::collections::BTreeMap<i32, Mat<T>>,
}

impl<T: Clone + PartialEq + std::fmt::Debug> ChainMap<T> {
    pub fn block(&self, deg: i32) -> Option<&Mat<T>> {
        self.blocks.get(&deg)
    }
}

pub fn is_chain_map<F: Field>(
    f: &F,
    a: &PtComplex<F::El>,
    b: &PtComplex<F::El>,
    phi: &ChainMap<F::El>,
) -> bool {
    let lo = a.min_deg.min(b.min_deg);
    let hi = a.max_deg().max(b.max_deg());
    for deg in lo..hi {
        // φ_{deg+1} ∘ d_A = d_B ∘ φ_deg
        let lhs = match (phi.block(deg + 1), a.diff(deg)) {
            (Some(p), Some(d)) => Some(mat_mul(f, p, d)),
            _ => None,
        };
        let rhs = match (b.diff(deg), phi.block(deg)) {
            (Some(d), Some(p)) => Some(mat_mul(f, d, p)),
            _ => None,
        };
        let zero_lhs = lhs.as_ref().map_or(true, |m| m.data.iter().all(|x| f.is_zero(x)));
        let zero_rhs = rhs.as_ref().map_or(true, |m| m.data.iter().all(|x| f.is_zero(x)));
        match (lhs, rhs) {
            (Some(l), Some(r)) => {
                if l != r {
                    return false;
                }
            }
            _ => {
                if !(zero_lhs && zero_rhs) {
                    return false;
                }
            }
        }
    }
    true
}

/// Mapping cone of φ: A → B: C_k = A_{k+1} ⊕ B_k with
/// d(a, b) = (−d_A a, φ(a) + d_B b).
pub fn cone<F: Field>(
    f: &F,
    a: &PtComplex<F::El>,
    b: &PtComplex<F::El>,
    phi: &ChainMap<F::El>,
) -> PtComplex<F::El> {
    let lo = (a.min_deg - 1).min(b.min_deg);
    let hi = a.max_deg().max(b.max_deg());
    let mut dims = Vec::new();
    for deg in lo..=hi {
        dims.push(a.dim(deg + 1) + b.dim(deg));
    }
    let mut diffs = Vec::new();
    for deg in lo..hi {
        let rows = a.dim(deg + 2) + b.dim(deg + 1);
        let cols = a.dim(deg + 1) + b.dim(deg);
        let mut m = crate::exactalg::mat_zero(f, rows, cols);
        if let Some(da) = a.diff(deg + 1) {
            for i in 0..da.rows {
                for j in 0..da.cols {
                    m.set(i, j, f.neg(da.at(i, j)));
                }
            }
        }
        if let Some(p) = phi.block(deg + 1) {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    m.set(a.dim(deg + 2) + i, j, p.at(i, j).clone());
                }
            }
        }
        if let Some(db) = b.diff(deg) {
            for i in 0..db.rows {
                for j in 0..db.cols {
                    m.set(a.dim(deg + 2) + i, a.dim(deg + 1) + j, db.at(i, j).clone());
                }
            }
        }
        diffs.push(m);
    }
    PtComplex::new(lo, dims, diffs)
}

/// Dual complex shifted by n: D_k = (V_{−n−k})*, with differential
/// λ ↦ λ∘d (transpose blocks, no extra signs; rank checks are insensitive
/// and the chain-map convention is fixed accordingly).
pub fn dual_shifted<F: Field>(f: &F, c: &PtComplex<F::El>, n: i64) -> PtComplex<F::El> {
    let lo = -(n as i32) - c.max_deg();
    let hi = -(n as i32) - c.min_deg;
    let mut dims = Vec::new();
    for deg in lo..=hi {
        dims.push(c.dim(-(n as i32) - deg));
    }
    let mut diffs = Vec::new();
    for deg in lo..hi {
        // D_deg = (V_{−n−deg})* → D_{deg+1} = (V_{−n−deg−1})*: transpose of
        // d: V_{−n−deg−1} → V_{−n−deg}
        let src = -(n as i32) - deg - 1;
        let m = match c.diff(src) {
            Some(d) => d.transpose(),
            None => crate::exactalg::mat_zero(f, c.dim(src), c.dim(src + 1)),
        };
        diffs.push(m);
    }
    PtComplex::new(lo, dims, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat_int, Rat, Rationals};

    fn rm(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat_int).collect()).collect())
    }

    #[test]
    fn cohomology_of_short_complex() {
        // 0 → k → k² → k → 0 with d₀ = (1,0)ᵀ, d₁ = (0,1): exact in the
        // middle, trivial H at the ends
        let q = Rationals;
        let c = PtComplex::new(
            0,
            vec![1, 2, 1],
            vec![rm(vec![vec![1], vec![0]]), rm(vec![vec![0, 1]])],
        );
        assert!(validate_complex(&q, &c));
        let h = cohomology_dims(&q, &c);
        assert_eq!(h, vec![(0, 0), (1, 0), (2, 0)]);
        assert!(is_acyclic(&q, &c));
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let q = Rationals;
        let a = PtComplex::new(0, vec![2, 1], vec![rm(vec![vec![1, 1]])]);
        let phi = ChainMap {
            blocks: [(0, rm(vec![vec![1, 0], vec![0, 1]])), (1, rm(vec![vec![1]]))]
                .into_iter()
                .collect(),
        };
        assert!(is_chain_map(&q, &a, &a, &phi));
        let c = cone(&q, &a, &a, &phi);
        assert!(validate_complex(&q, &c));
        assert!(is_acyclic(&q, &c));
    }

    #[test]
    fn cone_detects_non_iso() {
        let q = Rationals;
        let a = PtComplex::new(0, vec![1], vec![]);
        let phi = ChainMap { blocks: [(0, rm(vec![vec![0]]))].into_iter().collect() };
        let c = cone(&q, &a, &a, &phi);
        assert!(!is_acyclic(&q, &c));
    }

    #[test]
    fn dual_shift_dims() {
        let q = Rationals;
        let a = PtComplex::new(-1, vec![3, 2], vec![rm(vec![vec![1, 0, 0], vec![0, 1, 0]])]);
        let d = dual_shifted(&q, &a, 1);
        // degrees: −1 ↦ (V_0)* (dim 2), 0 ↦ (V_{−1})* (dim 3)
        assert_eq!(d.min_deg, -1);
        assert_eq!(d.dims, vec![2, 3]);
        assert!(validate_complex(&q, &d));
    }
}
