use super::scalar::{ExactError, Field, Jet, JetField, Rat, Rationals};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Multivariate polynomial with rational coefficients. Terms map an
/// exponent vector (length = variable count) to a nonzero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Polynomial {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(e, Rat::from_integer(1.into()));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }

    /// Formal partial derivative ∂/∂x_i.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert(e2, c * Rat::from_integer(e[i].into()));
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Degree in the last `k` variables (used for the 𝔤-weight bookkeeping
    /// of equivariant forms).
    pub fn degree_in_suffix(&self, k: usize) -> u32 {
        self.terms
            .keys()
            .map(|e| e[self.nvars - k..].iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Exact evaluation at a point of any supported field.
    pub fn eval<F: Field>(&self, f: &F, point: &[F::El]) -> Result<F::El, ExactError> {
        if point.len() != self.nvars {
            return Err(ExactError::Dimension { expected: self.nvars, got: point.len() });
        }
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = f.from_rat(c)?;
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = f.mul(&t, &point[i]);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Extend variables on the right: same polynomial in a larger ring.
    pub fn extend(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.resize(nvars, 0);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Shift variable indices by `offset` inside a ring with `nvars` variables.
    pub fn shift(&self, offset: usize, nvars: usize) -> Polynomial {
        assert!(offset + self.nvars <= nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = vec![0u32; nvars];
                    e2[offset..offset + self.nvars].copy_from_slice(e);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Substitute rational constants for the first `vals.len()` variables,
    /// returning a polynomial in the remaining ones.
    pub fn substitute_prefix(&self, vals: &[Rat]) -> Polynomial {
        let k = vals.len();
        assert!(k <= self.nvars);
        let mut out = Polynomial::zero(self.nvars - k);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            for i in 0..k {
                for _ in 0..e[i] {
                    coeff *= &vals[i];
                }
                if coeff.is_zero() {
                    break;
                }
            }
            out.insert(e[k..].to_vec(), coeff);
        }
        out
    }

    /// Reinterpret in a ring with `new_nvars` variables, sending variable
    /// i to variable map[i].
    pub fn remap(&self, map: &[usize], new_nvars: usize) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        assert!(map.iter().all(|&m| m < new_nvars));
        Polynomial {
            nvars: new_nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = vec![0u32; new_nvars];
                    for (i, &k) in e.iter().enumerate() {
                        e2[map[i]] += k;
                    }
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Substitute polynomials for all variables.
    pub fn compose(&self, args: &[Polynomial]) -> Polynomial {
        assert_eq!(args.len(), self.nvars);
        let nv = args.first().map_or(0, |p| p.nvars);
        let mut out = Polynomial::zero(nv);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(nv, c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&args[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    write!(f, "·x{i}")?;
                } else if k > 1 {
                    write!(f, "·x{i}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Exact value and directional derivative of `p` at `point` along
/// `direction`, computed by jet arithmetic.
pub fn poly_eval_jet(
    p: &Polynomial,
    point: &[Rat],
    direction: &[Rat],
) -> Result<(Rat, Rat), ExactError> {
    if point.len() != p.nvars || direction.len() != p.nvars {
        return Err(ExactError::Dimension { expected: p.nvars, got: point.len().max(direction.len()) });
    }
    let jf = JetField::new(Rationals);
    let args: Vec<Jet<Rat>> = point
        .iter()
        .zip(direction)
        .map(|(v, d)| Jet { v: v.clone(), d: d.clone() })
        .collect();
    let out = p.eval(&jf, &args)?;
    Ok((out.v, out.d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat_int, Fp};
    use rand::{Rng, SeedableRng};

    #[test]
    fn eval_jet_square() {
        let x = Polynomial::var(1, 0);
        let p = x.mul(&x);
        let (v, d) = poly_eval_jet(&p, &[rat_int(3)], &[rat_int(1)]).unwrap();
        assert_eq!((v, d), (rat_int(9), rat_int(6)));
    }

    #[test]
    fn eval_jet_constant() {
        let p = Polynomial::constant(1, rat_int(5));
        let (v, d) = poly_eval_jet(&p, &[rat_int(2)], &[rat_int(1)]).unwrap();
        assert_eq!((v, d), (rat_int(5), rat_int(0)));
    }

    #[test]
    fn eval_jet_xy() {
        let p = Polynomial::var(2, 0).mul(&Polynomial::var(2, 1));
        let (v, d) =
            poly_eval_jet(&p, &[rat_int(2), rat_int(3)], &[rat_int(1), rat_int(1)]).unwrap();
        assert_eq!((v, d), (rat_int(6), rat_int(5)));
    }

    #[test]
    fn eval_jet_dimension_mismatch() {
        let p = Polynomial::var(2, 0);
        assert!(poly_eval_jet(&p, &[rat_int(1)], &[rat_int(1)]).is_err());
    }

    #[test]
    fn jet_derivative_matches_symbolic_partials() {
        // 100 random polynomials, degree ≤ 4, ≤ 6 variables
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(42);
        for _ in 0..100 {
            let nv = rng.gen_range(1..=6);
            let mut p = Polynomial::zero(nv);
            for _ in 0..rng.gen_range(1..=8) {
                let e: Vec<u32> = (0..nv).map(|_| rng.gen_range(0..=2)).collect();
                if e.iter().sum::<u32>() > 4 {
                    continue;
                }
                p.insert(e, rat_int(rng.gen_range(-5..=5)));
            }
            let point: Vec<Rat> = (0..nv).map(|_| rat_int(rng.gen_range(-3..=3))).collect();
            let dir: Vec<Rat> = (0..nv).map(|_| rat_int(rng.gen_range(-3..=3))).collect();
            let (_, jet_d) = poly_eval_jet(&p, &point, &dir).unwrap();
            let mut sym = rat_int(0);
            for i in 0..nv {
                sym += p.partial(i).eval(&Rationals, &point).unwrap() * dir[i].clone();
            }
            assert_eq!(jet_d, sym);
        }
    }

    #[test]
    fn eval_over_fp_and_compose() {
        let f = Fp::new(7).unwrap();
        // p = x0² + 3
        let p = Polynomial::var(1, 0)
            .mul(&Polynomial::var(1, 0))
            .add(&Polynomial::constant(1, rat_int(3)));
        assert_eq!(p.eval(&f, &[f.el(4)]).unwrap(), f.el(19));
        let q = p.compose(&[Polynomial::var(2, 1)]);
        assert_eq!(q.nvars, 2);
        assert_eq!(
            q.eval(&Rationals, &[rat_int(9), rat_int(2)]).unwrap(),
            rat_int(7)
        );
    }
}
