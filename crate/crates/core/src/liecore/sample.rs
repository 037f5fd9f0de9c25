use super::group::{Family, MatrixGroup};
use crate::exactalg::{invert_t, mat_mul, rat_int, Field, Fp, FpEl, Mat, Rat, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum SampleError {
    ZeroCount,
    /// Cayley transform kept hitting singular I + A.
    Exhausted { family: String },
}

impl fmt::Display for SampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleError::ZeroCount => write!(f, "sample count must be ≥ 1"),
            SampleError::Exhausted { family } => {
                write!(f, "could not sample a point of {family} (singular Cayley denominators)")
            }
        }
    }
}

impl std::error::Error for SampleError {}

/// Field that can draw random elements (for sample points and vectors).
pub trait SampleField: Field {
    /// Arbitrary element, small enough to keep exact arithmetic cheap.
    fn random_el(&self, rng: &mut ChaCha20Rng) -> Self::El;

    fn random_unit(&self, rng: &mut ChaCha20Rng) -> Self::El {
        loop {
            let x = self.random_el(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

impl SampleField for Rationals {
    fn random_el(&self, rng: &mut ChaCha20Rng) -> Rat {
        rat_int(rng.gen_range(-3..=3))
    }
}

impl SampleField for Fp {
    fn random_el(&self, rng: &mut ChaCha20Rng) -> FpEl {
        FpEl { p: self.p, v: rng.gen_range(0..self.p) }
    }
}

impl<F: SampleField> SampleField for crate::exactalg::JetField<F> {
    fn random_el(&self, rng: &mut ChaCha20Rng) -> Self::El {
        crate::exactalg::Jet { v: self.base.random_el(rng), d: self.base.random_el(rng) }
    }
}

/// One sample point, panicking on sampler exhaustion (used by preset
/// samplers where the families are known-good).
pub fn sample_one_point<F: SampleField>(
    group: &MatrixGroup,
    f: &F,
    rng: &mut ChaCha20Rng,
) -> Mat<F::El> {
    sample_one(group, f, rng).expect("sampling exhausted")
}

/// Random small Lie-algebra coordinates.
pub fn sample_lie_element<F: SampleField>(f: &F, dim: usize, rng: &mut ChaCha20Rng) -> Vec<F::El> {
    (0..dim).map(|_| f.random_el(rng)).collect()
}

/// Exact group points: products of elementary matrices for special-linear
/// (and blockwise for products), Cayley transforms (I−A)(I+A)⁻¹ of random
/// Lie elements for orthogonal/symplectic, random units for tori.
/// Deterministic for a given seed.
pub fn sample_points<F: SampleField>(
    group: &MatrixGroup,
    f: &F,
    count: usize,
    seed: u64,
) -> Result<Vec<Mat<F::El>>, SampleError> {
    if count == 0 {
        return Err(SampleError::ZeroCount);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_one(group, f, &mut rng)).collect()
}

pub fn sample_one<F: SampleField>(
    group: &MatrixGroup,
    f: &F,
    rng: &mut ChaCha20Rng,
) -> Result<Mat<F::El>, SampleError> {
    let m = match &group.family {
        Family::SpecialLinear(n) => sample_special_linear(f, *n, rng),
        Family::SpecialOrthogonal(_) | Family::Symplectic(_) => sample_cayley(group, f, rng)?,
        Family::Torus(r) => sample_torus(f, *r, rng),
        Family::Product(fams) => {
            let mut blocks = Vec::new();
            for fam in fams {
                let sub = MatrixGroup::from_family(fam);
                blocks.push((sub.n, sample_one(&sub, f, rng)?));
            }
            let n = group.n;
            let mut out = crate::exactalg::mat_zero(f, n, n);
            let mut off = 0;
            for (bn, b) in blocks {
                for i in 0..bn {
                    for j in 0..bn {
                        out.set(off + i, off + j, b.at(i, j).clone());
                    }
                }
                off += bn;
            }
            out
        }
    };
    debug_assert!(group.is_point(f, &m));
    Ok(m)
}

fn sample_special_linear<F: SampleField>(f: &F, n: usize, rng: &mut ChaCha20Rng) -> Mat<F::El> {
    let mut m = crate::exactalg::mat_identity(f, n);
    for _ in 0..2 * n + 2 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let lambda = f.random_el(rng);
        let mut e = crate::exactalg::mat_identity(f, n);
        e.set(i, j, lambda);
        m = mat_mul(f, &m, &e);
    }
    m
}

fn sample_cayley<F: SampleField>(
    group: &MatrixGroup,
    f: &F,
    rng: &mut ChaCha20Rng,
) -> Result<Mat<F::El>, SampleError> {
    let id = crate::exactalg::mat_identity(f, group.n);
    for _ in 0..200 {
        let coords = sample_lie_element(f, group.dim(), rng);
        let a = group.lie_to_matrix(f, &coords);
        let plus = crate::exactalg::mat_add(f, &id, &a);
        let Some(plus_inv) = invert_t(f, &plus) else { continue };
        let minus = crate::exactalg::mat_sub(f, &id, &a);
        return Ok(mat_mul(f, &minus, &plus_inv));
    }
    Err(SampleError::Exhausted { family: group.family.label() })
}

fn sample_torus<F: SampleField>(f: &F, rank: usize, rng: &mut ChaCha20Rng) -> Mat<F::El> {
    let n = rank + 1;
    let mut m = crate::exactalg::mat_zero(f, n, n);
    let mut prod = f.one();
    for i in 0..rank {
        let d = f.random_unit(rng);
        prod = f.mul(&prod, &d);
        m.set(i, i, d);
    }
    m.set(rank, rank, f.inv(&prod).expect("product of units"));
    m
}

impl MatrixGroup {
    pub fn from_family(fam: &Family) -> MatrixGroup {
        match fam {
            Family::SpecialLinear(n) => MatrixGroup::special_linear(*n),
            Family::SpecialOrthogonal(n) => MatrixGroup::special_orthogonal(*n),
            Family::Symplectic(n) => MatrixGroup::symplectic(*n),
            Family::Torus(r) => MatrixGroup::torus(*r),
            Family::Product(fs) => {
                let groups: Vec<MatrixGroup> = fs.iter().map(MatrixGroup::from_family).collect();
                let mut it = groups.into_iter();
                let first = it.next().expect("nonempty product");
                it.fold(first, |acc, g| MatrixGroup::product(&acc, &g))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_samples_have_det_one() {
        let g = MatrixGroup::sl2();
        let pts = sample_points(&g, &Rationals, 10, 0).unwrap();
        for m in &pts {
            let det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
            assert_eq!(det, rat_int(1));
        }
        // determinism
        let again = sample_points(&g, &Rationals, 10, 0).unwrap();
        assert_eq!(pts, again);
        let other = sample_points(&g, &Rationals, 10, 1).unwrap();
        assert_ne!(pts, other);
    }

    #[test]
    fn so3_samples_orthogonal_exactly() {
        let g = MatrixGroup::special_orthogonal(3);
        let q = Rationals;
        for m in sample_points(&g, &q, 5, 7).unwrap() {
            let mtm = mat_mul(&q, &m.transpose(), &m);
            assert_eq!(mtm, crate::exactalg::mat_identity(&q, 3));
        }
    }

    #[test]
    fn sp4_samples_preserve_j() {
        let g = MatrixGroup::symplectic(4);
        let q = Rationals;
        for m in sample_points(&g, &q, 3, 11).unwrap() {
            assert!(g.is_point(&q, &m));
        }
    }

    #[test]
    fn torus_rank1_over_f5() {
        let g = MatrixGroup::torus(1);
        let f = Fp::new(5).unwrap();
        for m in sample_points(&g, &f, 20, 3).unwrap() {
            let d = m.at(0, 0);
            assert!(d.v >= 1 && d.v <= 4);
            assert!(g.is_point(&f, &m));
        }
    }

    #[test]
    fn zero_count_rejected() {
        let g = MatrixGroup::sl2();
        assert!(matches!(sample_points(&g, &Rationals, 0, 0), Err(SampleError::ZeroCount)));
    }

    #[test]
    fn theta_bar_is_ad_of_theta() {
        use crate::liecore::group::maurer_cartan;
        let q = Rationals;
        let g = MatrixGroup::sl2();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let pts = sample_points(&g, &q, 20, 9).unwrap();
        for m in &pts {
            let x = sample_lie_element(&q, 3, &mut rng);
            let xm = g.lie_to_matrix(&q, &x);
            let v = crate::liecore::group::conjugation_field(&q, &xm, m);
            let mc = maurer_cartan(&g, &q, m, &v).unwrap();
            // θ̄ = g θ g⁻¹
            let gi = g.invert_point(&q, m);
            let conj = mat_mul(&q, &mat_mul(&q, m, &mc.theta), &gi);
            assert_eq!(mc.theta_bar, conj);
        }
    }
}
