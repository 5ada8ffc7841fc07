//! Rational functions over a base field, in normalized numerator/denominator form.

use std::fmt;
use std::sync::Arc;

use super::{Field, Scalar};
use crate::error::{Error, Result};
use crate::mpoly::{gcd, MPoly, MonomialOrder, PolyRing, Ring};

/// 𝔽(Y₁..Y_ℓ) presented in root variables W_i with Y_i = W_i^{p^e}.
#[derive(Debug)]
pub struct FnField {
    base: Field,
    vars: Vec<String>,
    root_exp: u32,
    ring: Ring,
}

impl PartialEq for FnField {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.vars == other.vars && self.root_exp == other.root_exp
    }
}
impl Eq for FnField {}

impl FnField {
    pub fn new(base: Field, vars: Vec<String>, root_exp: u32) -> Result<Arc<Self>> {
        if matches!(base, Field::Fn(_)) {
            return Err(Error::InvalidInput(
                "nested function fields are not supported".into(),
            ));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate parameter name {v}")));
            }
        }
        if base.characteristic() == 0 && root_exp != 0 {
            return Err(Error::InvalidExtension(
                "root extensions need positive characteristic".into(),
            ));
        }
        let ring = PolyRing::new(base.clone(), vars.clone(), MonomialOrder::Grevlex);
        Ok(Arc::new(FnField {
            base,
            vars,
            root_exp,
            ring,
        }))
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn root_exp(&self) -> u32 {
        self.root_exp
    }

    /// Polynomial ring of numerators and denominators (in the W variables).
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// p^e, the exponent relating Y and W.
    pub fn root_power(&self) -> u64 {
        let p = self.base.characteristic();
        if self.root_exp == 0 {
            1
        } else {
            p.pow(self.root_exp)
        }
    }

    /// The parameter Y_i = W_i^{p^e}.
    pub fn param(self: &Arc<Self>, i: usize) -> Scalar {
        let w = MPoly::var(&self.ring, i).pow(self.root_power() as u32);
        Scalar::Frac(Arc::new(FracElement::from_poly(self, w)))
    }

    /// The root variable W_i itself.
    pub fn root_var(self: &Arc<Self>, i: usize) -> Scalar {
        Scalar::Frac(Arc::new(FracElement::from_poly(
            self,
            MPoly::var(&self.ring, i),
        )))
    }

    pub fn with_root_exp(&self, e: u32) -> Result<Arc<Self>> {
        FnField::new(self.base.clone(), self.vars.clone(), e)
    }
}

#[derive(Clone)]
pub struct FracElement {
    num: MPoly,
    den: MPoly,
    field: Arc<FnField>,
    complexity: u32,
}

impl PartialEq for FracElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.num == other.num && self.den == other.den
    }
}
impl Eq for FracElement {}

impl FracElement {
    pub fn constant(field: &Arc<FnField>, c: Scalar) -> Self {
        let num = MPoly::constant(&field.ring, c);
        Self::from_poly(field, num)
    }

    pub fn from_poly(field: &Arc<FnField>, num: MPoly) -> Self {
        let den = MPoly::one(&field.ring);
        let complexity = num.degree().unwrap_or(0);
        FracElement {
            num,
            den,
            field: field.clone(),
            complexity,
        }
    }

    /// num/den normalized: common gcd removed and denominator monic.
    pub fn from_polys(field: &Arc<FnField>, num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::normalized(field, num, den))
    }

    fn normalized(field: &Arc<FnField>, num: MPoly, den: MPoly) -> Self {
        let (mut num, mut den) = (num, den);
        if num.is_zero() {
            den = MPoly::one(&field.ring);
        } else if !den.is_constant() && !num.is_constant() {
            let g = gcd(&num, &den);
            if !g.is_constant() {
                num = num.exact_div(&g).expect("gcd divides numerator");
                den = den.exact_div(&g).expect("gcd divides denominator");
            }
        }
        let lc = den.lc().clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let complexity = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        FracElement {
            num,
            den,
            field: field.clone(),
            complexity,
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn field(&self) -> &Arc<FnField> {
        &self.field
    }

    /// Smallest known d with the element in C(d).
    pub fn complexity(&self) -> u32 {
        self.complexity
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub(crate) fn is_constant_like(&self) -> bool {
        self.den.is_one() && self.num.nterms() <= 1 && self.num.is_constant()
    }

    pub fn neg(&self) -> Self {
        FracElement {
            num: self.num.neg(),
            den: self.den.clone(),
            field: self.field.clone(),
            complexity: self.complexity,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let r = if self.den == other.den {
            Self::normalized(&self.field, self.num.add(&other.num), self.den.clone())
        } else {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            Self::normalized(&self.field, num, self.den.mul(&other.den))
        };
        debug_assert!(r.complexity <= self.complexity + other.complexity);
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            let num = self.num.mul(&other.num);
            let complexity = num.degree().unwrap_or(0);
            return FracElement {
                num,
                den: self.den.clone(),
                field: self.field.clone(),
                complexity,
            };
        }
        let r = Self::normalized(
            &self.field,
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        );
        debug_assert!(r.complexity <= self.complexity + other.complexity);
        r
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(Self::normalized(
            &self.field,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    /// Evaluates at a point for the W variables.
    pub fn specialize(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.field.vars.len() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, field has {} parameters",
                point.len(),
                self.field.vars.len()
            )));
        }
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::Specialization {
                denominator: self.den.to_string(),
            });
        }
        self.num.eval(point)?.div(&d)
    }

    /// Re-expresses the element over the root extension with exponent `e`.
    pub fn lift_to_root_extension(&self, e: u32) -> Result<Self> {
        let cur = self.field.root_exp;
        if e < cur {
            return Err(Error::InvalidExtension(format!(
                "cannot lower root exponent {cur} to {e}"
            )));
        }
        if e == cur {
            return Ok(self.clone());
        }
        let target = self.field.with_root_exp(e)?;
        let p = self.field.base.characteristic();
        let power = p.pow(e - cur) as u32;
        let images: Vec<MPoly> = (0..self.field.vars.len())
            .map(|i| MPoly::var(&target.ring, i).pow(power))
            .collect();
        let num = self.num.substitute(&target.ring, &images)?;
        let den = self.den.substitute(&target.ring, &images)?;
        let mut r = Self::normalized(&target, num, den);
        r.complexity = r.complexity.max(self.complexity * power);
        Ok(r)
    }
}

impl fmt::Display for FracElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &MPoly| {
            if p.nterms() > 1 || (p.nterms() == 1 && !p.is_constant() && !p.lc().is_one()) {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", wrap(&self.num))
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for FracElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
