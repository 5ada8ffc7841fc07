//! Zero-dimensional ideals: quotient algebras, primitive elements and maximal ideals.

use std::collections::{HashMap, HashSet};

use crate::coeff::{Field, Scalar};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, is_zero_dimensional, krull_dimension, GroebnerBasis, Ideal};
use crate::limits;
use crate::linalg::{self, Matrix};
use crate::mpoly::{
    factor_upoly, mono_divides, squarefree_decomposition, MPoly, Mono, Ring, UPoly,
};

#[cfg(test)]
mod tests;

const FACTOR_SEED: u64 = 0x5eed;

/// Standard-monomial basis of K[X]/I for a zero-dimensional I.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    gb: GroebnerBasis,
    monomials: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

pub fn quotient_basis(ideal: &Ideal) -> Result<QuotientBasis> {
    let gb = ideal.gb()?.clone();
    if !gb.is_unit() && !is_zero_dimensional(ideal)? {
        return Err(Error::PositiveDimensional);
    }
    Ok(QuotientBasis::from_gb(gb))
}

impl QuotientBasis {
    /// Caller guarantees the basis is zero-dimensional.
    pub(crate) fn from_gb(gb: GroebnerBasis) -> Self {
        let n = gb.ring().nvars();
        let lms: Vec<Mono> = gb.polys().iter().map(|g| g.lm().clone()).collect();
        let standard = |m: &Mono| !lms.iter().any(|l| mono_divides(l, m));
        let mut monomials = Vec::new();
        if !gb.is_unit() {
            let one: Mono = std::iter::repeat_n(0, n).collect();
            let mut seen = HashSet::new();
            let mut stack = vec![one.clone()];
            seen.insert(one);
            while let Some(m) = stack.pop() {
                for v in 0..n {
                    let mut next = m.clone();
                    next[v] += 1;
                    if standard(&next) && seen.insert(next.clone()) {
                        stack.push(next);
                    }
                }
                monomials.push(m);
            }
        }
        let ring = gb.ring().clone();
        monomials.sort_by(|a, b| ring.cmp(a, b));
        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        QuotientBasis {
            gb,
            monomials,
            index,
        }
    }

    pub fn ring(&self) -> &Ring {
        self.gb.ring()
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn field(&self) -> &Field {
        self.ring().field()
    }

    /// Standard monomials in increasing order.
    pub fn monomials(&self) -> &[Mono] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn reduce(&self, f: &MPoly) -> Result<MPoly> {
        self.gb.normal_form(f)
    }

    /// Coordinates of f mod I in the standard basis.
    pub fn coords(&self, f: &MPoly) -> Result<Vec<Scalar>> {
        let r = self.reduce(f)?;
        let mut v = vec![self.field().zero(); self.dim()];
        for (m, c) in r.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    pub fn element(&self, v: &[Scalar]) -> MPoly {
        let terms = self
            .monomials
            .iter()
            .cloned()
            .zip(v.iter().cloned())
            .collect();
        MPoly::from_terms(self.ring(), terms)
    }

    /// Matrix of multiplication by f; column j holds the coordinates of f·b_j.
    pub fn mul_matrix(&self, f: &MPoly) -> Result<Matrix> {
        let d = self.dim();
        let mut m = vec![vec![self.field().zero(); d]; d];
        for (j, b) in self.monomials.iter().enumerate() {
            let col = self.coords(&f.mul_term(b, &self.field().one()))?;
            for (i, x) in col.into_iter().enumerate() {
                m[i][j] = x;
            }
        }
        Ok(m)
    }

    pub fn mul(&self, a: &MPoly, b: &MPoly) -> Result<MPoly> {
        self.reduce(&a.mul(b))
    }

    pub fn pow(&self, a: &MPoly, mut e: u128) -> Result<MPoly> {
        let mut acc = self.reduce(&MPoly::one(self.ring()))?;
        let mut base = self.reduce(a)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
            limits::check_time()?;
        }
        Ok(acc)
    }

    /// The powers 1, f, f², … up to the first linear dependence, and the monic relation.
    fn power_chain(&self, f: &MPoly) -> Result<(Vec<Vec<Scalar>>, UPoly)> {
        let field = self.field().clone();
        let d = self.dim();
        let mut powers: Vec<Vec<Scalar>> = Vec::new();
        // echelon rows: (vector, pivot, combination over the powers)
        let mut rows: Vec<(Vec<Scalar>, usize, Vec<Scalar>)> = Vec::new();
        let mut cur = self.reduce(&MPoly::one(self.ring()))?;
        for k in 0..=d {
            let v = self.coords(&cur)?;
            powers.push(v.clone());
            let mut w = v;
            let mut combo = vec![field.zero(); k + 1];
            combo[k] = field.one();
            for (row, piv, rc) in &rows {
                if w[*piv].is_zero() {
                    continue;
                }
                let t = w[*piv].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.sub(&t.mul(y));
                    }
                }
                for (x, y) in combo.iter_mut().zip(rc) {
                    *x = x.sub(&t.mul(y));
                }
            }
            match w.iter().position(|x| !x.is_zero()) {
                None => {
                    powers.pop();
                    return Ok((powers, UPoly::new(&field, combo)));
                }
                Some(p) => {
                    let inv = w[p].inv()?;
                    let w: Vec<Scalar> = w.iter().map(|x| x.mul(&inv)).collect();
                    let combo = combo.iter().map(|x| x.mul(&inv)).collect();
                    rows.push((w, p, combo));
                }
            }
            cur = self.mul(&cur, f)?;
        }
        Err(Error::Internal(
            "power chain exceeded the quotient dimension".into(),
        ))
    }

    /// Minimal polynomial of f in K[X]/I.
    pub fn minpoly(&self, f: &MPoly) -> Result<UPoly> {
        Ok(self.power_chain(f)?.1)
    }

    /// Writes `target` as a polynomial of degree < deg minpoly(f) in f, if possible.
    pub fn express_in_powers(&self, target: &MPoly, f: &MPoly) -> Result<Option<UPoly>> {
        let (powers, _) = self.power_chain(f)?;
        let t = self.coords(target)?;
        let d = self.dim();
        let m: Matrix = (0..d)
            .map(|i| powers.iter().map(|p| p[i].clone()).collect())
            .collect();
        Ok(linalg::solve(&m, &t, self.field()).map(|c| UPoly::new(self.field(), c)))
    }

    /// Whether every nonzero standard-basis element of a sample is invertible, i.e. the
    /// quotient behaves like a field on it.
    pub fn is_field_on(&self, samples: &[MPoly]) -> Result<bool> {
        for s in samples {
            let mp = self.minpoly(s)?;
            if self.reduce(s)?.is_zero() {
                continue;
            }
            if mp.coeff(0).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Largest e with p^e dividing n.
pub fn min_root_exponent(ext_degree: u64, p: u64) -> u32 {
    if p < 2 || ext_degree == 0 {
        return 0;
    }
    let mut n = ext_degree;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Data expressing each coordinate through a primitive element β = Σ c_i X_i:
/// X_i ≡ numerators[i](β) / denominator(β).
#[derive(Clone, Debug, PartialEq)]
pub struct PrimitiveElementData {
    pub direction: Vec<Scalar>,
    pub beta_minpoly: UPoly,
    pub denominator: UPoly,
    pub numerators: Vec<UPoly>,
}

impl PrimitiveElementData {
    pub fn beta(&self, ring: &Ring) -> MPoly {
        linear_form(ring, &self.direction)
    }

    /// The generators ⟨g(β), P₀(β)·X_i − P_i(β)⟩.
    pub fn generators(&self, ring: &Ring) -> Vec<MPoly> {
        let beta = self.beta(ring);
        let mut out = vec![upoly_at(&self.beta_minpoly, &beta)];
        let p0 = upoly_at(&self.denominator, &beta);
        for (i, pi) in self.numerators.iter().enumerate() {
            out.push(p0.mul(&MPoly::var(ring, i)).sub(&upoly_at(pi, &beta)));
        }
        out
    }

    /// Largest degree among the reconstruction polynomials.
    pub fn max_degree(&self) -> usize {
        self.numerators
            .iter()
            .chain([&self.denominator])
            .map(|p| p.deg())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct MaximalIdeal {
    pub gb: GroebnerBasis,
    pub residue_degree: usize,
    pub separable: bool,
    pub primitive: PrimitiveElementData,
}

impl MaximalIdeal {
    pub fn ideal(&self) -> Ideal {
        Ideal::from_gb(self.gb.clone())
    }

    pub fn generators(&self) -> Vec<MPoly> {
        self.primitive.generators(self.gb.ring())
    }
}

pub fn linear_form(ring: &Ring, c: &[Scalar]) -> MPoly {
    let terms = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| {
            let mut m: Mono = std::iter::repeat_n(0, ring.nvars()).collect();
            m[i] = 1;
            (m, x.clone())
        })
        .collect();
    MPoly::from_terms(ring, terms)
}

/// u(t) by Horner's rule.
pub fn upoly_at(u: &UPoly, t: &MPoly) -> MPoly {
    let ring = t.ring();
    let mut acc = MPoly::zero(ring);
    for c in u.coeffs().iter().rev() {
        acc = acc.mul(t).add(&MPoly::constant(ring, c.clone()));
    }
    acc
}

/// Candidate directions: moment-curve points (1, t, t², …) first, then all nonzero tuples
/// over a finite field, capped at `cap` candidates.
pub fn direction_candidates(field: &Field, n: usize, cap: usize) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    let mut seen = HashSet::new();
    let q = match field {
        Field::Fn(f) => f.base().size(),
        other => other.size(),
    };
    let moment_count = q.map(|q| q.min(cap as u128)).unwrap_or(cap as u128);
    for j in 0..moment_count {
        let t = field.element(j);
        let mut c = Vec::with_capacity(n);
        let mut x = field.one();
        for _ in 0..n {
            c.push(x.clone());
            x = x.mul(&t);
        }
        if seen.insert(format!("{c:?}")) {
            out.push(c);
        }
        if out.len() >= cap {
            return out;
        }
    }
    if let Some(q) = q {
        let total = (q as f64).powi(n as i32);
        let limit = if total > cap as f64 {
            cap as u128 * 4
        } else {
            total as u128
        };
        for idx in 1..limit {
            let mut c = Vec::with_capacity(n);
            let mut k = idx;
            for _ in 0..n {
                c.push(field.element(k % q));
                k /= q;
            }
            if seen.insert(format!("{c:?}")) {
                out.push(c);
            }
            if out.len() >= cap {
                break;
            }
        }
    }
    out
}

fn direction_cap(n: usize, dim: usize) -> usize {
    (n * dim * dim + 1).max(64)
}

/// Squarefree part of a univariate polynomial with separable factors.
fn separable_radical(h: &UPoly) -> Result<UPoly> {
    let field = h.field();
    match field {
        Field::Q => Ok(h.exact_div(&h.gcd(&h.derivative()))?.monic()),
        Field::Fp(_) | Field::Gf(_) => Ok(squarefree_decomposition(h)
            .into_iter()
            .fold(UPoly::one(field), |a, (f, _)| a.mul(&f))),
        Field::Fn(ff) => {
            let g = h.gcd(&h.derivative());
            if g.deg() == 0 {
                return Ok(h.monic());
            }
            if field.is_perfect() {
                let f = factor_upoly(h, FACTOR_SEED)?;
                return Ok(f.into_iter().fold(UPoly::one(field), |a, (f, _)| a.mul(&f)));
            }
            Err(Error::Separability {
                required_e: ff.root_exp() + 1,
            })
        }
    }
}

/// The radical of a zero-dimensional ideal: I plus the squarefree parts of the coordinate
/// eliminants.
pub fn radical(ideal: &Ideal) -> Result<Ideal> {
    let qb = quotient_basis(ideal)?;
    let ring = ideal.ring().clone();
    let mut extra = Vec::new();
    for v in 0..ring.nvars() {
        let x = MPoly::var(&ring, v);
        let h = qb.minpoly(&x)?;
        let s = separable_radical(&h)?;
        if s.deg() < h.deg() {
            extra.push(upoly_at(&s, &x));
        }
    }
    if extra.is_empty() {
        return Ok(ideal.clone());
    }
    let r = ideal.add_gens(&extra);
    r.gb()?;
    Ok(r)
}

/// Looks for a direction whose linear form generates the whole quotient algebra.
fn find_primitive_direction(qb: &QuotientBasis) -> Result<Option<(Vec<Scalar>, MPoly, UPoly)>> {
    let ring = qb.ring();
    let d = qb.dim();
    for c in direction_candidates(qb.field(), ring.nvars(), direction_cap(ring.nvars(), d)) {
        limits::check_time()?;
        let beta = linear_form(ring, &c);
        let mp = qb.minpoly(&beta)?;
        if mp.deg() == d {
            return Ok(Some((c, beta, mp)));
        }
    }
    Ok(None)
}

/// Reconstruction data for the factor `g` of the eliminant of β, given X_i ≡ reps[i](β).
fn reconstruction(direction: Vec<Scalar>, g: &UPoly, reps: &[UPoly]) -> PrimitiveElementData {
    let denominator = g.derivative();
    let numerators = reps.iter().map(|r| r.mul(&denominator).rem(g)).collect();
    PrimitiveElementData {
        direction,
        beta_minpoly: g.clone(),
        denominator,
        numerators,
    }
}

fn coordinate_reps(qb: &QuotientBasis, beta: &MPoly) -> Result<Vec<UPoly>> {
    let ring = qb.ring();
    (0..ring.nvars())
        .map(|i| {
            qb.express_in_powers(&MPoly::var(ring, i), beta)?
                .ok_or_else(|| {
                    Error::Internal("coordinate outside the span of a primitive element".into())
                })
        })
        .collect()
}

fn inseparable_error(field: &Field, r: usize) -> Error {
    let e0 = match field {
        Field::Fn(f) => f.root_exp(),
        _ => 0,
    };
    let bump = min_root_exponent(r as u64, field.characteristic()).max(1);
    Error::Separability {
        required_e: e0 + bump,
    }
}

/// Primitive element of K[X]/m together with the reconstruction polynomials.
pub fn primitive_element(ideal: &Ideal, m: &Ideal) -> Result<PrimitiveElementData> {
    let m_gb = m.gb()?;
    for g in ideal.gens() {
        if !m_gb.normal_form(g)?.is_zero() {
            return Err(Error::InvalidInput(
                "the maximal ideal does not contain the ideal".into(),
            ));
        }
    }
    let qb = quotient_basis(m)?;
    if qb.dim() == 0 {
        return Err(Error::InvalidInput(
            "the unit ideal has no residue field".into(),
        ));
    }
    primitive_for_field(&qb)
}

fn primitive_for_field(qb: &QuotientBasis) -> Result<PrimitiveElementData> {
    match find_primitive_direction(qb)? {
        Some((c, beta, mp)) => {
            let reps = coordinate_reps(qb, &beta)?;
            Ok(reconstruction(c, &mp, &reps))
        }
        None if !qb.field().is_perfect() => Err(inseparable_error(qb.field(), qb.dim())),
        None => Err(Error::ExtendField(format!(
            "no primitive linear form among the candidate directions over {}",
            qb.field().kind_name()
        ))),
    }
}

fn finish(ring: &Ring, data: PrimitiveElementData) -> Result<MaximalIdeal> {
    let gb = buchberger(&data.generators(ring))?;
    let separable = data.beta_minpoly.gcd(&data.beta_minpoly.derivative()).deg() == 0;
    Ok(MaximalIdeal {
        gb,
        residue_degree: data.beta_minpoly.deg(),
        separable,
        primitive: data,
    })
}

/// All maximal ideals containing a zero-dimensional ideal.
pub fn extract_maximal(ideal: &Ideal) -> Result<Vec<MaximalIdeal>> {
    if krull_dimension(ideal)? > 0 {
        return Err(Error::PositiveDimensional);
    }
    let ring = ideal.ring().clone();
    let rad = radical(ideal)?;
    let qb = quotient_basis(&rad)?;
    if qb.dim() == 0 {
        return Ok(Vec::new());
    }
    if let Some((c, beta, h)) = find_primitive_direction(&qb)? {
        let reps = coordinate_reps(&qb, &beta)?;
        let mut out = Vec::new();
        for (g, _) in factor_upoly(&h, FACTOR_SEED)? {
            out.push(finish(&ring, reconstruction(c.clone(), &g, &reps))?);
        }
        return Ok(out);
    }
    if !qb.field().is_finite() {
        return Err(inseparable_error(qb.field(), qb.dim()));
    }
    let mut out = Vec::new();
    for m in frobenius_split(&rad, &qb)? {
        let mq = quotient_basis(&m)?;
        out.push(finish(&ring, primitive_for_field(&mq)?)?);
    }
    Ok(out)
}

/// Splits a reduced finite-dimensional algebra over a finite field into its field factors
/// using the fixed subalgebra of Frobenius.
fn frobenius_split(rad: &Ideal, qb: &QuotientBasis) -> Result<Vec<Ideal>> {
    let field = qb.field().clone();
    let q = field.size().expect("finite field");
    let d = qb.dim();
    let mut fix: Matrix = vec![vec![field.zero(); d]; d];
    for (j, mono) in qb.monomials().iter().enumerate() {
        let b = MPoly::monomial(qb.ring(), mono, field.one());
        let col = qb.coords(&qb.pow(&b, q)?)?;
        for (i, x) in col.into_iter().enumerate() {
            fix[i][j] = if i == j { x.sub(&field.one()) } else { x };
        }
    }
    let fixed = linalg::nullspace(&fix, d, &field);
    let count = fixed.len();
    let mut parts = vec![rad.clone()];
    for v in &fixed {
        if parts.len() == count {
            break;
        }
        let b = qb.element(v);
        let mut next = Vec::new();
        for part in parts {
            let pq = quotient_basis(&part)?;
            let mp = pq.minpoly(&b)?;
            if mp.deg() <= 1 {
                next.push(part);
                continue;
            }
            for (lin, _) in factor_upoly(&mp, FACTOR_SEED)? {
                let root = lin.coeff(0).neg();
                let piece = part.add_gens(&[b.sub(&MPoly::constant(qb.ring(), root))]);
                piece.gb()?;
                next.push(piece);
            }
        }
        parts = next;
    }
    if parts.len() != count {
        return Err(Error::Internal(
            "Frobenius splitting did not separate all components".into(),
        ));
    }
    Ok(parts)
}
