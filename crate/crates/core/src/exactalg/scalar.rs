use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Arbitrary-precision rational. `num`'s `Ratio` keeps values in lowest
/// terms with a positive denominator, which is exactly the invariant the
/// substrate promises.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    /// Operation only defined over a field (rationals or F_p), not jets.
    UnsupportedScalar(&'static str),
    /// Matrix or vector entries mix scalar kinds.
    MixedKinds,
    /// Rational has a denominator divisible by the field characteristic.
    BadReduction { p: u16 },
    /// Shape mismatch in a linear-algebra or evaluation operation.
    Dimension { expected: usize, got: usize },
    /// Division by zero / non-invertible element.
    NotInvertible,
    /// Modulus is not an odd prime below 2^16.
    BadModulus(u64),
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::UnsupportedScalar(op) => write!(f, "{op}: unsupported scalar kind (jets are not field entries)"),
            ExactError::MixedKinds => write!(f, "entries mix scalar kinds"),
            ExactError::BadReduction { p } => write!(f, "denominator not invertible mod {p}"),
            ExactError::Dimension { expected, got } => write!(f, "dimension mismatch: expected {expected}, got {got}"),
            ExactError::NotInvertible => write!(f, "element not invertible"),
            ExactError::BadModulus(p) => write!(f, "modulus {p} is not an odd prime < 2^16"),
        }
    }
}

impl std::error::Error for ExactError {}

/// Element of F_p, reduced to [0, p). The modulus travels with the value
/// so mixed-modulus arithmetic is caught immediately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FpEl {
    pub p: u16,
    pub v: u16,
}

/// First-order jet (dual number) `v + ε·d`, ε² = 0. Jet evaluation of a
/// polynomial map yields the exact directional derivative in the ε part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet<T> {
    pub v: T,
    pub d: T,
}

/// Field-of-definition object: elements carry no global context (F_p has a
/// runtime modulus), so arithmetic is routed through one of these.
pub trait Field: Clone {
    type El: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Result<Self::El, ExactError>;
    fn is_zero(&self, a: &Self::El) -> bool {
        *a == self.zero()
    }
    /// Image of a rational constant in this field.
    fn from_rat(&self, q: &Rat) -> Result<Self::El, ExactError>;
    fn from_int(&self, n: i64) -> Self::El {
        self.from_rat(&Rat::from_integer(n.into())).expect("integer reduces in any field")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type El = Rat;
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn inv(&self, a: &Rat) -> Result<Rat, ExactError> {
        if a.is_zero() {
            Err(ExactError::NotInvertible)
        } else {
            Ok(a.recip())
        }
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn from_rat(&self, q: &Rat) -> Result<Rat, ExactError> {
        Ok(q.clone())
    }
}

/// Prime field F_p with p an odd prime below 2^16, so products fit in
/// native words and brute-force group enumeration stays cheap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u16,
}

impl Fp {
    pub fn new(p: u64) -> Result<Fp, ExactError> {
        if p < 3 || p >= (1 << 16) || !is_prime(p) {
            return Err(ExactError::BadModulus(p));
        }
        Ok(Fp { p: p as u16 })
    }

    pub fn el(&self, n: i64) -> FpEl {
        let p = self.p as i64;
        FpEl { p: self.p, v: (((n % p) + p) % p) as u16 }
    }

    fn check(&self, a: &FpEl) {
        assert_eq!(a.p, self.p, "mixed F_p moduli: {} vs {}", a.p, self.p);
    }

    pub fn pow(&self, a: FpEl, mut e: u64) -> FpEl {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for Fp {
    type El = FpEl;
    fn zero(&self) -> FpEl {
        FpEl { p: self.p, v: 0 }
    }
    fn one(&self) -> FpEl {
        FpEl { p: self.p, v: 1 % self.p }
    }
    fn add(&self, a: &FpEl, b: &FpEl) -> FpEl {
        self.check(a);
        self.check(b);
        FpEl { p: self.p, v: ((a.v as u32 + b.v as u32) % self.p as u32) as u16 }
    }
    fn sub(&self, a: &FpEl, b: &FpEl) -> FpEl {
        self.check(a);
        self.check(b);
        FpEl { p: self.p, v: ((a.v as u32 + self.p as u32 - b.v as u32) % self.p as u32) as u16 }
    }
    fn mul(&self, a: &FpEl, b: &FpEl) -> FpEl {
        self.check(a);
        self.check(b);
        FpEl { p: self.p, v: ((a.v as u32 * b.v as u32) % self.p as u32) as u16 }
    }
    fn neg(&self, a: &FpEl) -> FpEl {
        self.check(a);
        FpEl { p: self.p, v: if a.v == 0 { 0 } else { self.p - a.v } }
    }
    fn inv(&self, a: &FpEl) -> Result<FpEl, ExactError> {
        self.check(a);
        if a.v == 0 {
            return Err(ExactError::NotInvertible);
        }
        Ok(self.pow(*a, self.p as u64 - 2))
    }
    fn from_rat(&self, q: &Rat) -> Result<FpEl, ExactError> {
        let p_big = BigInt::from(self.p);
        let num = q.numer() % &p_big;
        let den = q.denom() % &p_big;
        let to_el = |x: BigInt| -> FpEl {
            let mut r = x % &p_big;
            if r.is_negative() {
                r += &p_big;
            }
            let digits = r.to_u64_digits().1;
            FpEl { p: self.p, v: *digits.first().unwrap_or(&0) as u16 }
        };
        let d = to_el(den);
        if d.v == 0 {
            return Err(ExactError::BadReduction { p: self.p });
        }
        Ok(self.mul(&to_el(num), &self.inv(&d)?))
    }
}

/// Jets over a base field. ε² = 0 gives the product rule; inversion uses
/// 1/(v + εd) = v⁻¹ − ε d v⁻².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JetField<F: Field> {
    pub base: F,
}

impl<F: Field> JetField<F> {
    pub fn new(base: F) -> Self {
        JetField { base }
    }

    pub fn constant(&self, v: F::El) -> Jet<F::El> {
        Jet { v, d: self.base.zero() }
    }

    pub fn variable(&self, v: F::El, d: F::El) -> Jet<F::El> {
        Jet { v, d }
    }
}

impl<F: Field> Field for JetField<F> {
    type El = Jet<F::El>;
    fn zero(&self) -> Self::El {
        Jet { v: self.base.zero(), d: self.base.zero() }
    }
    fn one(&self) -> Self::El {
        Jet { v: self.base.one(), d: self.base.zero() }
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        Jet { v: self.base.add(&a.v, &b.v), d: self.base.add(&a.d, &b.d) }
    }
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        Jet { v: self.base.sub(&a.v, &b.v), d: self.base.sub(&a.d, &b.d) }
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        Jet {
            v: self.base.mul(&a.v, &b.v),
            d: self.base.add(&self.base.mul(&a.v, &b.d), &self.base.mul(&a.d, &b.v)),
        }
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        Jet { v: self.base.neg(&a.v), d: self.base.neg(&a.d) }
    }
    fn inv(&self, a: &Self::El) -> Result<Self::El, ExactError> {
        let vi = self.base.inv(&a.v)?;
        let vi2 = self.base.mul(&vi, &vi);
        Ok(Jet { v: vi.clone(), d: self.base.neg(&self.base.mul(&a.d, &vi2)) })
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        self.base.is_zero(&a.v) && self.base.is_zero(&a.d)
    }
    fn from_rat(&self, q: &Rat) -> Result<Self::El, ExactError> {
        Ok(Jet { v: self.base.from_rat(q)?, d: self.base.zero() })
    }
}

/// Runtime-kinded scalar with arbitrary jet nesting depth. `Form`
/// evaluation uses this instead of `JetField<JetField<…>>` so that lazy
/// exterior derivatives can stack without monomorphizing an unbounded
/// tower of types.
#[derive(Debug, Clone, PartialEq)]
pub enum Dyn {
    Rat(Rat),
    Fp(FpEl),
    Jet(Box<Dyn>, Box<Dyn>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynKind {
    Rat,
    Fp(u16),
    Jet(Box<DynKind>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynField {
    pub kind: DynKind,
}

impl Dyn {
    pub fn expect_rat(&self) -> &Rat {
        match self {
            Dyn::Rat(q) => q,
            _ => panic!("expected rational dyn scalar"),
        }
    }

    pub fn expect_fp(&self) -> FpEl {
        match self {
            Dyn::Fp(x) => *x,
            _ => panic!("expected F_p dyn scalar"),
        }
    }

    pub fn value_part(&self) -> &Dyn {
        match self {
            Dyn::Jet(v, _) => v,
            other => other,
        }
    }

    pub fn deriv_part(&self) -> &Dyn {
        match self {
            Dyn::Jet(_, d) => d,
            _ => panic!("not a jet"),
        }
    }
}

impl DynField {
    pub fn rat() -> DynField {
        DynField { kind: DynKind::Rat }
    }

    pub fn fp(p: u16) -> DynField {
        DynField { kind: DynKind::Fp(p) }
    }

    /// The field of jets over this one (same Rust type, deeper kind).
    pub fn jets(&self) -> DynField {
        DynField { kind: DynKind::Jet(Box::new(self.kind.clone())) }
    }

    pub fn base(&self) -> DynField {
        match &self.kind {
            DynKind::Jet(k) => DynField { kind: (**k).clone() },
            _ => panic!("not a jet field"),
        }
    }

    pub fn jet(&self, v: Dyn, d: Dyn) -> Dyn {
        Dyn::Jet(Box::new(v), Box::new(d))
    }

    fn zero_of(kind: &DynKind) -> Dyn {
        match kind {
            DynKind::Rat => Dyn::Rat(Rat::zero()),
            DynKind::Fp(p) => Dyn::Fp(FpEl { p: *p, v: 0 }),
            DynKind::Jet(k) => Dyn::Jet(Box::new(Self::zero_of(k)), Box::new(Self::zero_of(k))),
        }
    }

    fn binop(
        a: &Dyn,
        b: &Dyn,
        fr: &dyn Fn(&Rat, &Rat) -> Rat,
        fp: &dyn Fn(&Fp, &FpEl, &FpEl) -> FpEl,
        jet: &dyn Fn(&Dyn, &Dyn, &Dyn, &Dyn) -> (Dyn, Dyn),
    ) -> Dyn {
        match (a, b) {
            (Dyn::Rat(x), Dyn::Rat(y)) => Dyn::Rat(fr(x, y)),
            (Dyn::Fp(x), Dyn::Fp(y)) => {
                assert_eq!(x.p, y.p, "mixed F_p moduli");
                Dyn::Fp(fp(&Fp { p: x.p }, x, y))
            }
            (Dyn::Jet(av, ad), Dyn::Jet(bv, bd)) => {
                let (v, d) = jet(av, ad, bv, bd);
                Dyn::Jet(Box::new(v), Box::new(d))
            }
            _ => panic!("mixed dyn scalar kinds: {a:?} vs {b:?}"),
        }
    }
}

impl Field for DynField {
    type El = Dyn;

    fn zero(&self) -> Dyn {
        Self::zero_of(&self.kind)
    }

    fn one(&self) -> Dyn {
        match &self.kind {
            DynKind::Rat => Dyn::Rat(Rat::one()),
            DynKind::Fp(p) => Dyn::Fp(Fp { p: *p }.one()),
            DynKind::Jet(k) => {
                let base = DynField { kind: (**k).clone() };
                Dyn::Jet(Box::new(base.one()), Box::new(base.zero()))
            }
        }
    }

    fn add(&self, a: &Dyn, b: &Dyn) -> Dyn {
        DynField::binop(a, b, &|x, y| x + y, &|f, x, y| f.add(x, y), &|av, ad, bv, bd| {
            (self.base().add(av, bv), self.base().add(ad, bd))
        })
    }

    fn sub(&self, a: &Dyn, b: &Dyn) -> Dyn {
        DynField::binop(a, b, &|x, y| x - y, &|f, x, y| f.sub(x, y), &|av, ad, bv, bd| {
            (self.base().sub(av, bv), self.base().sub(ad, bd))
        })
    }

    fn mul(&self, a: &Dyn, b: &Dyn) -> Dyn {
        DynField::binop(a, b, &|x, y| x * y, &|f, x, y| f.mul(x, y), &|av, ad, bv, bd| {
            let base = self.base();
            let v = base.mul(av, bv);
            let d = base.add(&base.mul(av, bd), &base.mul(ad, bv));
            (v, d)
        })
    }

    fn neg(&self, a: &Dyn) -> Dyn {
        match a {
            Dyn::Rat(x) => Dyn::Rat(-x),
            Dyn::Fp(x) => Dyn::Fp(Fp { p: x.p }.neg(x)),
            Dyn::Jet(v, d) => {
                let base = self.base();
                Dyn::Jet(Box::new(base.neg(v)), Box::new(base.neg(d)))
            }
        }
    }

    fn inv(&self, a: &Dyn) -> Result<Dyn, ExactError> {
        match a {
            Dyn::Rat(x) => Ok(Dyn::Rat(Rationals.inv(x)?)),
            Dyn::Fp(x) => Ok(Dyn::Fp(Fp { p: x.p }.inv(x)?)),
            Dyn::Jet(v, d) => {
                let base = self.base();
                let vi = base.inv(v)?;
                let vi2 = base.mul(&vi, &vi);
                let nd = base.neg(&base.mul(d, &vi2));
                Ok(Dyn::Jet(Box::new(vi), Box::new(nd)))
            }
        }
    }

    fn is_zero(&self, a: &Dyn) -> bool {
        match a {
            Dyn::Rat(x) => x.is_zero(),
            Dyn::Fp(x) => x.v == 0,
            Dyn::Jet(v, d) => {
                let base = self.base();
                base.is_zero(v) && base.is_zero(d)
            }
        }
    }

    fn from_rat(&self, q: &Rat) -> Result<Dyn, ExactError> {
        match &self.kind {
            DynKind::Rat => Ok(Dyn::Rat(q.clone())),
            DynKind::Fp(p) => Ok(Dyn::Fp(Fp { p: *p }.from_rat(q)?)),
            DynKind::Jet(k) => {
                let base = DynField { kind: (**k).clone() };
                Ok(Dyn::Jet(Box::new(base.from_rat(q)?), Box::new(base.zero())))
            }
        }
    }
}

/// Dynamic scalar: one of the supported exact kinds. Rationals are always
/// in lowest terms with positive denominator (maintained by `Ratio`);
/// F_p values are reduced to [0, p).
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rat(Rat),
    Fp(FpEl),
    JetRat(Jet<Rat>),
    JetFp(Jet<FpEl>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    Rat,
    Fp(u16),
    JetRat,
    JetFp(u16),
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rat(_) => ScalarKind::Rat,
            Scalar::Fp(x) => ScalarKind::Fp(x.p),
            Scalar::JetRat(_) => ScalarKind::JetRat,
            Scalar::JetFp(j) => ScalarKind::JetFp(j.v.p),
        }
    }

    pub fn is_field_kind(&self) -> bool {
        matches!(self, Scalar::Rat(_) | Scalar::Fp(_))
    }

    pub fn from_rat(q: Rat) -> Scalar {
        Scalar::Rat(q)
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Rat(q) => Some(q),
            _ => None,
        }
    }

    fn binop(
        &self,
        other: &Scalar,
        fr: impl Fn(&Rationals, &Rat, &Rat) -> Rat,
        fp: impl Fn(&Fp, &FpEl, &FpEl) -> FpEl,
        jr: impl Fn(&JetField<Rationals>, &Jet<Rat>, &Jet<Rat>) -> Jet<Rat>,
        jp: impl Fn(&JetField<Fp>, &Jet<FpEl>, &Jet<FpEl>) -> Jet<FpEl>,
    ) -> Result<Scalar, ExactError> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(fr(&Rationals, a, b))),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.p == b.p => Ok(Scalar::Fp(fp(&Fp { p: a.p }, a, b))),
            (Scalar::JetRat(a), Scalar::JetRat(b)) => {
                Ok(Scalar::JetRat(jr(&JetField::new(Rationals), a, b)))
            }
            (Scalar::JetFp(a), Scalar::JetFp(b)) if a.v.p == b.v.p => {
                Ok(Scalar::JetFp(jp(&JetField::new(Fp { p: a.v.p }), a, b)))
            }
            _ => Err(ExactError::MixedKinds),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, ExactError> {
        self.binop(other, Field::add, Field::add, Field::add, Field::add)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, ExactError> {
        self.binop(other, Field::sub, Field::sub, Field::sub, Field::sub)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, ExactError> {
        self.binop(other, Field::mul, Field::mul, Field::mul, Field::mul)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp(a) => Scalar::Fp(Fp { p: a.p }.neg(a)),
            Scalar::JetRat(a) => Scalar::JetRat(JetField::new(Rationals).neg(a)),
            Scalar::JetFp(a) => Scalar::JetFp(JetField::new(Fp { p: a.v.p }).neg(a)),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ExactError> {
        match self {
            Scalar::Rat(a) => Ok(Scalar::Rat(Rationals.inv(a)?)),
            Scalar::Fp(a) => Ok(Scalar::Fp(Fp { p: a.p }.inv(a)?)),
            Scalar::JetRat(a) => Ok(Scalar::JetRat(JetField::new(Rationals).inv(a)?)),
            Scalar::JetFp(a) => Ok(Scalar::JetFp(JetField::new(Fp { p: a.v.p }).inv(a)?)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(a) => a.is_zero(),
            Scalar::Fp(a) => a.v == 0,
            Scalar::JetRat(a) => a.v.is_zero() && a.d.is_zero(),
            Scalar::JetFp(a) => a.v.v == 0 && a.d.v == 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Fp(x) => write!(f, "{} (mod {})", x.v, x.p),
            Scalar::JetRat(j) => write!(f, "{} + ε·{}", j.v, j.d),
            Scalar::JetFp(j) => write!(f, "{} + ε·{} (mod {})", j.v.v, j.d.v, j.v.p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_int};

    #[test]
    fn fp_reduced_representatives() {
        let f = Fp::new(7).unwrap();
        assert_eq!(f.el(-3).v, 4);
        assert_eq!(f.el(14).v, 0);
        let x = f.el(5);
        assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
    }

    #[test]
    fn modulus_cap() {
        assert!(Fp::new(65521).is_ok());
        assert!(Fp::new(65537).is_err());
        assert!(Fp::new(6).is_err());
        assert!(Fp::new(2).is_err());
    }

    #[test]
    fn rat_lowest_terms() {
        let q = rat(6, -4);
        assert_eq!(q, rat(-3, 2));
        assert!(q.denom() > &num::BigInt::from(0));
    }

    #[test]
    fn jet_product_rule() {
        // f(x) = x², f(3 + ε) = 9 + 6ε
        let jf = JetField::new(Rationals);
        let x = jf.variable(rat_int(3), rat_int(1));
        let sq = jf.mul(&x, &x);
        assert_eq!(sq.v, rat_int(9));
        assert_eq!(sq.d, rat_int(6));
    }

    #[test]
    fn jet_inverse() {
        // 1/(2+ε) = 1/2 - ε/4
        let jf = JetField::new(Rationals);
        let x = jf.variable(rat_int(2), rat_int(1));
        let i = jf.inv(&x).unwrap();
        assert_eq!(i.v, rat(1, 2));
        assert_eq!(i.d, rat(-1, 4));
    }

    #[test]
    fn scalar_mixed_kind_errors() {
        let f = Fp::new(5).unwrap();
        let a = Scalar::Rat(rat_int(1));
        let b = Scalar::Fp(f.el(2));
        assert_eq!(a.add(&b), Err(ExactError::MixedKinds));
        let c = Scalar::Fp(Fp::new(7).unwrap().el(2));
        assert_eq!(b.add(&c), Err(ExactError::MixedKinds));
    }

    #[test]
    fn field_axioms_sampled() {
        // associativity, distributivity, inverses over F_13 and Q
        let f = Fp::new(13).unwrap();
        for a in 0..13i64 {
            for b in 0..13i64 {
                for c in [1i64, 5, 12] {
                    let (x, y, z) = (f.el(a), f.el(b), f.el(c));
                    assert_eq!(f.add(&f.add(&x, &y), &z), f.add(&x, &f.add(&y, &z)));
                    assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
                    assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
                    assert_eq!(f.mul(&z, &f.inv(&z).unwrap()), f.one());
                }
            }
        }
        let q = Rationals;
        let samples = [rat(3, 7), rat(-2, 5), rat_int(4), rat(22, 3)];
        for x in &samples {
            for y in &samples {
                for z in &samples {
                    assert_eq!(q.mul(&q.mul(x, y), z), q.mul(x, &q.mul(y, z)));
                    assert_eq!(q.mul(x, &q.add(y, z)), q.add(&q.mul(x, y), &q.mul(x, z)));
                }
                assert_eq!(q.mul(x, &q.inv(x).unwrap()), q.one());
            }
        }
    }
}
