//! Exact coefficient fields: ℚ, 𝔽_p, 𝔽_{p^k} and rational function fields 𝔽(Y) with
//! their root extensions.

mod fp;
mod frac;
mod galois;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use fp::{inv_mod, is_prime, mul_mod, pow_mod, Fp, MAX_PRIME};
pub use frac::{FnField, FracElement};
pub use galois::{GaloisField, GfElem};

use crate::error::{Error, Result};

/// A coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Q,
    Fp(u64),
    Gf(Arc<GaloisField>),
    Fn(Arc<FnField>),
}

/// An element of some [`Field`]; binary operations require both sides in the same field.
#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Q(BigRational),
    Fp(Fp),
    Gf(GfElem),
    Frac(Arc<FracElement>),
}

impl Field {
    pub fn fp(p: u64) -> Result<Field> {
        fp::check_modulus(p)?;
        Ok(Field::Fp(p))
    }

    pub fn gf(p: u64, k: u32) -> Result<Field> {
        if k == 1 {
            return Field::fp(p);
        }
        Ok(Field::Gf(GaloisField::new(p, k)?))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(n.clone())),
            Field::Fp(p) => Scalar::Fp(Fp {
                value: bigint_mod(n, *p),
                p: *p,
            }),
            Field::Gf(g) => Scalar::Gf(GfElem::new(g, &[bigint_mod(n, g.p())])),
            Field::Fn(f) => {
                Scalar::Frac(Arc::new(FracElement::constant(f, f.base().from_bigint(n))))
            }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes in characteristic p.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        num.div(&den)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => *p,
            Field::Gf(g) => g.p(),
            Field::Fn(f) => f.base().characteristic(),
        }
    }

    /// Number of elements for finite fields.
    pub fn size(&self) -> Option<u128> {
        match self {
            Field::Fp(p) => Some(*p as u128),
            Field::Gf(g) => Some(g.size()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// The `j`-th element of a fixed enumeration: 0, 1, 2, … for ℚ and for the prime
    /// subfield, then base-p digit vectors for extensions.
    pub fn element(&self, j: u128) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(j))),
            Field::Fp(p) => Scalar::Fp(Fp {
                value: (j % *p as u128) as u64,
                p: *p,
            }),
            Field::Gf(g) => Scalar::Gf(GfElem {
                c: g.element(j),
                field: g.clone(),
            }),
            Field::Fn(f) => f.base().element(j).embed_into(self).expect("base embeds"),
        }
    }

    /// Base field of a function field, otherwise the field itself.
    pub fn base(&self) -> Field {
        match self {
            Field::Fn(f) => f.base().clone(),
            other => other.clone(),
        }
    }

    /// Whether the field is perfect (every element has a p-th root).
    pub fn is_perfect(&self) -> bool {
        match self {
            Field::Fn(f) => f.base().characteristic() == 0 || f.vars().is_empty(),
            _ => true,
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Q, Scalar::Q(_)) => true,
            (Field::Fp(p), Scalar::Fp(x)) => x.p == *p,
            (Field::Gf(g), Scalar::Gf(x)) => Arc::ptr_eq(g, &x.field) || **g == *x.field,
            (Field::Fn(f), Scalar::Frac(x)) => Arc::ptr_eq(f, x.field()) || **f == **x.field(),
            _ => false,
        }
    }

    /// Parses a coefficient: integers or `num/den`; for function fields any rational
    /// expression in the parameters.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        match self {
            Field::Fn(_) => crate::mpoly::parse_scalar(self, t),
            Field::Gf(g) if t.starts_with('[') => {
                let inner = t.trim_start_matches('[').trim_end_matches(']');
                let mut c = Vec::new();
                for part in inner.split(',').filter(|s| !s.trim().is_empty()) {
                    let v: i128 = part
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad residue '{part}'")))?;
                    c.push(v.rem_euclid(g.p() as i128) as u64);
                }
                if c.len() > g.degree() as usize {
                    return Err(Error::Parse(format!("too many coordinates in '{t}'")));
                }
                Ok(Scalar::Gf(GfElem::new(g, &c)))
            }
            _ => {
                let r = parse_rational(t)?;
                self.from_rational(&r)
            }
        }
    }

    /// Name used in serialized headers.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Field::Q => "q",
            Field::Fp(_) => "fp",
            Field::Gf(_) => "gf",
            Field::Fn(_) => "fn",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "QQ"),
            Field::Fp(p) => write!(f, "GF({p})"),
            Field::Gf(g) => write!(f, "GF({}^{})", g.p(), g.degree()),
            Field::Fn(x) => write!(f, "{}({})", x.base(), x.vars().join(",")),
        }
    }
}

pub(crate) fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn parse_rational(t: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number '{t}'"));
    if let Some((a, b)) = t.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(BigRational::new(a, b))
    } else {
        let a: BigInt = t.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(a))
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("coefficient field mismatch: {a:?} vs {b:?}")
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp(x) => Field::Fp(x.p),
            Scalar::Gf(x) => Field::Gf(x.field.clone()),
            Scalar::Frac(x) => Field::Fn(x.field().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(x) => x.value == 0,
            Scalar::Gf(x) => x.is_zero(),
            Scalar::Frac(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(x) => x.value == 1 % x.p,
            Scalar::Gf(x) => x.c[0] == 1 && x.c[1..].iter().all(|&c| c == 0),
            Scalar::Frac(x) => x.is_one(),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(-r),
            Scalar::Fp(x) => Scalar::Fp(Fp {
                value: fp::sub_mod(0, x.value, x.p),
                p: x.p,
            }),
            Scalar::Gf(x) => {
                let p = x.field.p();
                let c = x.c.iter().map(|&v| fp::sub_mod(0, v, p)).collect();
                Scalar::Gf(GfElem {
                    c,
                    field: x.field.clone(),
                })
            }
            Scalar::Frac(x) => Scalar::Frac(Arc::new(x.neg())),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.p == b.p => Scalar::Fp(Fp {
                value: fp::add_mod(a.value, b.value, a.p),
                p: a.p,
            }),
            (Scalar::Gf(a), Scalar::Gf(b)) => {
                let p = a.field.p();
                let c =
                    a.c.iter()
                        .zip(&b.c)
                        .map(|(&x, &y)| fp::add_mod(x, y, p))
                        .collect();
                Scalar::Gf(GfElem {
                    c,
                    field: a.field.clone(),
                })
            }
            (Scalar::Frac(a), Scalar::Frac(b)) => Scalar::Frac(Arc::new(a.add(b))),
            _ => mismatch(self, other),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.p == b.p => Scalar::Fp(Fp {
                value: mul_mod(a.value, b.value, a.p),
                p: a.p,
            }),
            (Scalar::Gf(a), Scalar::Gf(b)) => Scalar::Gf(GfElem {
                c: a.field.mul(&a.c, &b.c),
                field: a.field.clone(),
            }),
            (Scalar::Frac(a), Scalar::Frac(b)) => Scalar::Frac(Arc::new(a.mul(b))),
            _ => mismatch(self, other),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(match self {
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::Fp(x) => Scalar::Fp(Fp {
                value: inv_mod(x.value, x.p).unwrap(),
                p: x.p,
            }),
            Scalar::Gf(x) => Scalar::Gf(GfElem {
                c: x.field.inv(&x.c).unwrap(),
                field: x.field.clone(),
            }),
            Scalar::Frac(x) => Scalar::Frac(Arc::new(x.inv()?)),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The p-th root in a finite field (Frobenius inverse).
    pub fn pth_root(&self) -> Result<Scalar> {
        match self {
            Scalar::Fp(_) => Ok(self.clone()),
            Scalar::Gf(x) => {
                // a^{p^{k−1}} inverts Frobenius
                let mut r = self.clone();
                for _ in 1..x.field.degree() {
                    r = r.pow(x.field.p());
                }
                Ok(r)
            }
            Scalar::Q(_) => Err(Error::Unsupported("p-th root in characteristic 0".into())),
            Scalar::Frac(_) => Err(Error::Unsupported("p-th root in a function field".into())),
        }
    }

    /// Image of this scalar in a field that contains its own field.
    pub fn embed_into(&self, target: &Field) -> Result<Scalar> {
        if target.contains(self) {
            return Ok(self.clone());
        }
        match (self, target) {
            (Scalar::Fp(x), Field::Gf(g)) if g.p() == x.p => {
                Ok(Scalar::Gf(GfElem::new(g, &[x.value])))
            }
            (_, Field::Fn(f)) => {
                let inner = self.embed_into(f.base())?;
                Ok(Scalar::Frac(Arc::new(FracElement::constant(f, inner))))
            }
            (Scalar::Q(r), Field::Fp(_) | Field::Gf(_)) => target.from_rational(r),
            _ => Err(Error::Context(format!("cannot embed {self} into {target}"))),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_fp(&self) -> Option<u64> {
        match self {
            Scalar::Fp(x) => Some(x.value),
            _ => None,
        }
    }

    pub fn as_frac(&self) -> Option<&FracElement> {
        match self {
            Scalar::Frac(x) => Some(x),
            _ => None,
        }
    }

    /// Coefficient complexity: 0 for base-field scalars, max(deg num, deg den) for
    /// rational functions.
    pub fn complexity(&self) -> u32 {
        match self {
            Scalar::Frac(x) => x.complexity(),
            _ => 0,
        }
    }

    /// Total order used for canonical sorting of outputs (not a field order).
    pub fn canonical_cmp(&self, other: &Scalar) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp(a), Scalar::Fp(b)) => a.symmetric().cmp(&b.symmetric()),
            (Scalar::Gf(a), Scalar::Gf(b)) => a.c.iter().rev().cmp(b.c.iter().rev()),
            _ => self.to_string().cmp(&other.to_string()),
        }
    }

    /// Whether printing needs parentheses inside a product.
    pub(crate) fn is_compound(&self) -> bool {
        match self {
            Scalar::Q(_) => false,
            Scalar::Gf(x) => x.c.iter().filter(|&&v| v != 0).count() > 1,
            Scalar::Frac(x) => !x.is_constant_like(),
            Scalar::Fp(_) => false,
        }
    }

    pub(crate) fn is_negative_looking(&self) -> bool {
        matches!(self, Scalar::Q(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(x) => write!(f, "{}", x.value),
            Scalar::Gf(x) => write!(f, "{x}"),
            Scalar::Frac(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar::$m(self, rhs)
            }
        }
    };
}
scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fields() -> Vec<Field> {
        vec![
            Field::Q,
            Field::fp(7).unwrap(),
            Field::gf(3, 2).unwrap(),
            Field::fp(2).unwrap(),
        ]
    }

    #[test]
    fn fp_examples() {
        let f = Field::fp(7).unwrap();
        let a = f.from_i64(2);
        let b = f.from_i64(5);
        assert_eq!(a.div(&b).unwrap(), f.from_i64(6));
        assert!(f.zero().inv().is_err());
        assert_eq!(f.parse("3/2").unwrap(), f.from_i64(5));
        assert_eq!(f.parse("-1").unwrap(), f.from_i64(6));
    }

    #[test]
    fn embedding() {
        let g = Field::gf(5, 2).unwrap();
        let x = Field::fp(5).unwrap().from_i64(3);
        assert_eq!(x.embed_into(&g).unwrap(), g.from_i64(3));
        assert!(Field::Q
            .from_i64(1)
            .embed_into(&Field::fp(3).unwrap())
            .is_ok());
        assert!(x.embed_into(&Field::fp(7).unwrap()).is_err());
    }

    #[test]
    fn pth_roots() {
        let g = Field::gf(3, 3).unwrap();
        for j in 0..27 {
            let a = g.element(j);
            assert_eq!(a.pth_root().unwrap().pow(3), a);
        }
    }

    proptest! {
        #[test]
        fn field_axioms(i in 0usize..4, a in -50i64..50, b in -50i64..50, c in -50i64..50) {
            let f = &fields()[i];
            let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, f.zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn gf_axioms(x in 0u128..49, y in 0u128..49, z in 0u128..49) {
            let f = Field::gf(7, 2).unwrap();
            let (a, b, c) = (f.element(x), f.element(y), f.element(z));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
    }
}
