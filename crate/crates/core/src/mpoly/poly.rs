//! Sparse multivariate polynomials with terms sorted by the ring's monomial order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::order::{CompiledOrder, MonomialOrder};
use crate::coeff::{Field, Scalar};
use crate::error::{Error, Result};

pub type Mono = SmallVec<[u32; 8]>;

/// Variables, coefficient field and monomial order of a polynomial ring.
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
    cmp: CompiledOrder,
}

pub type Ring = Arc<PolyRing>;

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.order == other.order && self.field == other.field
    }
}
impl Eq for PolyRing {}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Ring {
        Self::try_new(field, vars, order).expect("valid ring")
    }

    pub fn try_new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        order.validate(vars.len())?;
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable {v}")));
            }
        }
        let cmp = CompiledOrder::new(&order, vars.len());
        Ok(Arc::new(PolyRing {
            field,
            vars,
            order,
            cmp,
        }))
    }

    /// Ring over `field` with variables named `prefix1..prefixn`, grevlex.
    pub fn with_names(field: Field, prefix: &str, n: usize) -> Ring {
        Self::new(
            field,
            (1..=n).map(|i| format!("{prefix}{i}")).collect(),
            MonomialOrder::Grevlex,
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.cmp.cmp(a, b)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        PolyRing::new(self.field.clone(), self.vars.clone(), order)
    }

    pub fn with_field(&self, field: Field) -> Ring {
        PolyRing::new(field, self.vars.clone(), self.order.clone())
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// b / a, assuming a divides b.
pub fn mono_div(b: &[u32], a: &[u32]) -> Mono {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

#[derive(Clone)]
pub struct MPoly {
    ring: Ring,
    terms: Vec<(Mono, Scalar)>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for MPoly {}

impl MPoly {
    pub fn zero(ring: &Ring) -> Self {
        MPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        let m: Mono = SmallVec::from_elem(0, ring.nvars());
        MPoly {
            ring: ring.clone(),
            terms: vec![(m, c)],
        }
    }

    pub fn from_int(ring: &Ring, n: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(n))
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        let mut m: Mono = SmallVec::from_elem(0, ring.nvars());
        m[i] = 1;
        MPoly {
            ring: ring.clone(),
            terms: vec![(m, ring.field.one())],
        }
    }

    pub fn monomial(ring: &Ring, exps: &[u32], c: Scalar) -> Self {
        assert_eq!(exps.len(), ring.nvars());
        if c.is_zero() {
            return Self::zero(ring);
        }
        MPoly {
            ring: ring.clone(),
            terms: vec![(Mono::from_slice(exps), c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Mono, Scalar)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Mono, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        MPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Terms already sorted descending and free of zeros and duplicates.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Mono, Scalar)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Mono, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Scalar)> {
        self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    /// Leading monomial; panics on zero.
    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Scalar {
        match self.terms.first() {
            Some(t) => t.1.clone(),
            None => self.ring.field.zero(),
        }
    }

    /// The constant term.
    pub fn constant_term(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if m.iter().all(|&e| e == 0) => c.clone(),
            _ => self.ring.field.zero(),
        }
    }

    pub fn coeff(&self, m: &[u32]) -> Scalar {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.ring.field.zero())
    }

    /// Total degree; `None` stands for −∞ (zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| mono_deg(&t.0)).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|t| t.0[var]).max()
    }

    /// Weighted degree W·deg_X + deg_Z for a partition of the variables.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        self.terms
            .iter()
            .map(|t| {
                t.0.iter()
                    .zip(weights)
                    .map(|(&e, &w)| e as u64 * w as u64)
                    .sum()
            })
            .max()
    }

    /// Maximum coefficient complexity (the d′ of P(d, d′)).
    pub fn coeff_complexity(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.1.complexity())
            .max()
            .unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.0[var] > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.iter().all(|t| Some(mono_deg(&t.0)) == d)
    }

    fn check(&self, other: &MPoly) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.check(other);
        let ring = &self.ring;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add_scaled_shifted(&self.ring.field.from_i64(-1), None, other)
    }

    /// self + c·m·g, where `m = None` means the unit monomial.
    pub fn add_scaled_shifted(&self, c: &Scalar, m: Option<&[u32]>, g: &MPoly) -> MPoly {
        self.check(g);
        if c.is_zero() || g.is_zero() {
            return self.clone();
        }
        let ring = &self.ring;
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let mut i = 0;
        for (gm, gc) in &g.terms {
            let sm: Mono = match m {
                Some(m) => mono_mul(gm, m),
                None => gm.clone(),
            };
            let sc = c.mul(gc);
            while i < a.len() && ring.cmp(&a[i].0, &sm) == Ordering::Greater {
                out.push(a[i].clone());
                i += 1;
            }
            if i < a.len() && a[i].0 == sm {
                let s = a[i].1.add(&sc);
                if !s.is_zero() {
                    out.push((sm, s));
                }
                i += 1;
            } else {
                out.push((sm, sc));
            }
        }
        out.extend_from_slice(&a[i..]);
        MPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.mul(c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &[u32], c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, d)| (mono_mul(x, m), d.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(&self.ring);
        }
        let (small, big) = if self.nterms() <= other.nterms() {
            (self, other)
        } else {
            (other, self)
        };
        if small.nterms() == 1 {
            return big.mul_term(&small.terms[0].0, &small.terms[0].1);
        }
        let mut terms = Vec::with_capacity(self.nterms() * other.nterms());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((mono_mul(ma, mb), ca.mul(cb)));
            }
        }
        MPoly::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
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

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        if self.is_zero() || self.terms[0].1.is_one() {
            return self.clone();
        }
        self.scale(&self.terms[0].1.inv().unwrap())
    }

    /// Exact quotient self / g; errors when g does not divide self.
    pub fn exact_div(&self, g: &MPoly) -> Result<MPoly> {
        self.check(g);
        if g.is_zero() {
            return Err(Error::Arithmetic("division by zero polynomial".into()));
        }
        if g.is_constant() {
            return Ok(self.scale(&g.lc().inv()?));
        }
        let inv = g.lc().inv()?;
        let glm = g.lm().clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while !rem.is_zero() {
            let (m, c) = rem.terms[0].clone();
            if !mono_divides(&glm, &m) {
                return Err(Error::Arithmetic("inexact polynomial division".into()));
            }
            let qm = mono_div(&m, &glm);
            let qc = c.mul(&inv);
            rem = rem.add_scaled_shifted(&qc.neg(), Some(&qm), g);
            quot.push((qm, qc));
        }
        Ok(MPoly::from_sorted(&self.ring, quot))
    }

    /// Formal partial derivative.
    pub fn partial(&self, var: usize) -> MPoly {
        let f = &self.ring.field;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let k = f.from_i64(m[var] as i64);
            let c2 = c.mul(&k);
            if c2.is_zero() {
                continue;
            }
            let mut m2 = m.clone();
            m2[var] -= 1;
            terms.push((m2, c2));
        }
        MPoly::from_terms(&self.ring, terms)
    }

    /// Evaluates at a point whose coordinates lie in the coefficient field or an extension of it.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.nvars() {
            return Err(Error::InvalidInput("point dimension mismatch".into()));
        }
        let target = match point.first() {
            Some(p) => p.field(),
            None => self.ring.field.clone(),
        };
        let maxdeg: Vec<u32> = (0..self.ring.nvars())
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Scalar>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = vec![target.one()];
                for k in 0..d as usize {
                    v.push(v[k].mul(x));
                }
                v
            })
            .collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = c.embed_into(&target)?;
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` (polynomials in `target`) for variable i.
    pub fn substitute(&self, target: &Ring, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidInput("wrong number of images".into()));
        }
        let maxdeg: Vec<u32> = (0..self.ring.nvars())
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        let mut powers: Vec<Vec<MPoly>> = Vec::new();
        for (img, &d) in images.iter().zip(&maxdeg) {
            let mut v = vec![MPoly::one(target)];
            for k in 0..d as usize {
                let next = v[k].mul(img);
                v.push(next);
            }
            powers.push(v);
        }
        let mut terms: Vec<(Mono, Scalar)> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.embed_into(target.field())?);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            terms.extend(t.terms);
        }
        Ok(MPoly::from_terms(target, terms))
    }

    /// Moves the polynomial into `target`, sending variable i to `map[i]`. Fails when a
    /// dropped variable occurs.
    pub fn rename(&self, target: &Ring, map: &[Option<usize>]) -> Result<MPoly> {
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut m2: Mono = SmallVec::from_elem(0, n);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => m2[j] += e,
                    None => {
                        return Err(Error::InvalidInput(format!(
                            "variable {} cannot be dropped",
                            self.ring.vars[i]
                        )))
                    }
                }
            }
            terms.push((m2, c.embed_into(target.field())?));
        }
        Ok(MPoly::from_terms(target, terms))
    }

    /// Same polynomial viewed in a ring with identical variables but another order.
    pub fn reorder(&self, target: &Ring) -> MPoly {
        assert_eq!(self.ring.vars, target.vars);
        if same_ring(&self.ring, target) {
            return self.clone();
        }
        MPoly::from_terms(target, self.terms.clone())
    }

    /// Applies `f` to every coefficient, landing in `target` (same variable count).
    pub fn map_coeffs(
        &self,
        target: &Ring,
        f: impl Fn(&Scalar) -> Result<Scalar>,
    ) -> Result<MPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Ok(MPoly::from_terms(target, terms))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], e)
                    }
                })
                .collect();
            let (neg, cabs) = if c.is_negative_looking() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let cs = if cabs.is_compound() {
                format!("({cabs})")
            } else {
                cabs.to_string()
            };
            if mono.is_empty() {
                write!(f, "{cs}")?;
            } else if cabs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{cs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
