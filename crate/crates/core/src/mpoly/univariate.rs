//! Dense univariate polynomials over a coefficient field.

use std::fmt;

use smallvec::SmallVec;

use super::poly::{MPoly, Mono, Ring};
use crate::coeff::{Field, Scalar};
use crate::error::{Error, Result};

/// Coefficients low to high, no trailing zeros; empty means zero.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: Field,
    c: Vec<Scalar>,
}

impl UPoly {
    pub fn new(field: &Field, mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly {
            field: field.clone(),
            c,
        }
    }

    pub fn zero(field: &Field) -> Self {
        UPoly {
            field: field.clone(),
            c: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &Field, a: Scalar) -> Self {
        Self::new(field, vec![a])
    }

    /// x
    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn from_ints(field: &Field, c: &[i64]) -> Self {
        Self::new(field, c.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with −∞ mapped to 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc().is_one() {
            return self.clone();
        }
        self.scale(&self.lc().inv().unwrap())
    }

    pub fn scale(&self, a: &Scalar) -> Self {
        Self::new(&self.field, self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly {
            field: self.field.clone(),
            c: self.c.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            &self.field,
            (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            &self.field,
            (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.field, out)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly {
            field: self.field.clone(),
            c,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::Arithmetic("division by zero polynomial".into()));
        }
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let inv = d.lc().inv()?;
        let mut r = self.c.clone();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd].mul(&inv);
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].sub(&t.mul(b));
            }
            q[k] = t;
        }
        r.truncate(dd);
        Ok((Self::new(&self.field, q), Self::new(&self.field, r)))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).expect("nonzero divisor").1
    }

    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Arithmetic("inexact univariate division".into()));
        }
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·o = g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            &self.field,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&self.field.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = x.zero_like();
        for a in self.c.iter().rev() {
            acc = acc
                .mul(x)
                .add(&a.embed_into(&x.field()).expect("embeddable"));
        }
        acc
    }

    /// self(g)
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.field);
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(&self.field, a.clone()));
        }
        acc
    }

    /// base^e mod m
    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut acc = Self::one(&self.field).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() == 0 || self.gcd(&self.derivative()).deg() == 0 && !self.derivative().is_zero()
    }

    /// Reads `f` as a polynomial in variable `v`; errors if other variables occur.
    pub fn from_mpoly(f: &MPoly, v: usize) -> Result<Self> {
        let d = f.degree_in(v).unwrap_or(0) as usize;
        let mut c = vec![f.field().zero(); d + 1];
        for (m, a) in f.terms() {
            if m.iter().enumerate().any(|(i, &e)| i != v && e > 0) {
                return Err(Error::InvalidInput(format!(
                    "{f} is not univariate in {}",
                    f.ring().vars()[v]
                )));
            }
            c[m[v] as usize] = a.clone();
        }
        Ok(Self::new(f.field(), c))
    }

    pub fn to_mpoly(&self, ring: &Ring, v: usize) -> MPoly {
        let terms = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| {
                let mut m: Mono = SmallVec::from_elem(0, ring.nvars());
                m[v] = i as u32;
                (m, a.embed_into(ring.field()).expect("embeddable"))
            })
            .collect();
        MPoly::from_terms(ring, terms)
    }

    pub fn map_field(&self, target: &Field, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        Ok(Self::new(
            target,
            self.c.iter().map(f).collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn canonical_cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| {
            for (a, b) in self.c.iter().zip(&o.c) {
                let c = a.canonical_cmp(b);
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = super::poly::PolyRing::new(
            self.field.clone(),
            vec!["x".into()],
            super::MonomialOrder::Lex,
        );
        write!(f, "{}", self.to_mpoly(&ring, 0))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Resultant by the Euclidean algorithm.
pub fn resultant(a: &UPoly, b: &UPoly) -> Scalar {
    let field = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return field.zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = field.one();
    loop {
        let (da, db) = (a.deg(), b.deg());
        if db == 0 {
            return acc.mul(&b.lc().pow(da as u64));
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return field.zero();
        }
        // res(a,b) = (−1)^{da·db} lc(b)^{da−dr} res(b, r)
        let dr = r.deg();
        if (da * db) % 2 == 1 {
            acc = acc.neg();
        }
        acc = acc.mul(&b.lc().pow((da - dr) as u64));
        a = b;
        b = r;
    }
}

/// disc(f) = (−1)^{n(n−1)/2} res(f, f′) / lc(f).
pub fn discriminant(f: &UPoly) -> Scalar {
    let n = f.deg();
    let r = resultant(f, &f.derivative());
    let s = if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        r.neg()
    } else {
        r
    };
    s.div(&f.lc()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let q = Field::Q;
        let a = UPoly::from_ints(&q, &[-1, 0, 1]);
        let b = UPoly::from_ints(&q, &[1, 1]);
        let (quo, r) = a.divrem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(quo, UPoly::from_ints(&q, &[-1, 1]));
        assert_eq!(a.gcd(&UPoly::from_ints(&q, &[1, 2, 1])), b);
        let (g, s, t) = a.xgcd(&UPoly::from_ints(&q, &[2, 1]));
        assert!(g.is_one());
        assert!(s
            .mul(&a)
            .add(&t.mul(&UPoly::from_ints(&q, &[2, 1])))
            .is_one());
    }

    #[test]
    fn discriminants() {
        let q = Field::Q;
        // x^2 + b x + c: b^2 − 4c
        assert_eq!(
            discriminant(&UPoly::from_ints(&q, &[3, 5, 1])),
            q.from_i64(13)
        );
        // x^3 − x: 4
        assert_eq!(
            discriminant(&UPoly::from_ints(&q, &[0, -1, 0, 1])),
            q.from_i64(4)
        );
        assert_eq!(
            resultant(
                &UPoly::from_ints(&q, &[-1, 0, 1]),
                &UPoly::from_ints(&q, &[1, 1])
            ),
            q.zero()
        );
    }

    #[test]
    fn powmod_frobenius() {
        let f7 = Field::fp(7).unwrap();
        let m = UPoly::from_ints(&f7, &[3, 0, 0, 1]);
        let x = UPoly::x(&f7);
        let a = x.powmod(49, &m);
        let b = x.powmod(7, &m).powmod(7, &m);
        assert_eq!(a, b);
    }
}
