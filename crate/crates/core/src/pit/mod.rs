//! Identity testing for sums of three products of low-degree polynomials with a squarefree
//! summand: circuits, plane restrictions, the normal form, the certified white-box search
//! and the black-box hitting sets.

mod certify;
mod normal;
pub mod sample;
#[cfg(test)]
mod tests;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::coeff::FnField;
use crate::error::{Error, Result};
use crate::mpoly::{mono_deg, Mono, MonomialOrder, PolyRing};
use crate::{Field, MPoly, Ring, Scalar};

pub use certify::{
    certify_nonzero, certify_nonzero_with, CertifyOptions, Route, SStarCertificate, SStarChecks,
    Verdict, Witness,
};
pub use normal::{normal_form, NormalForm};

/// F = Σ_i Π_j f_{i,j} over a polynomial ring.
#[derive(Clone, Debug)]
pub struct Circuit {
    ring: Ring,
    summands: Vec<Vec<MPoly>>,
    squarefree: Option<usize>,
}

impl Circuit {
    pub fn new(ring: &Ring, summands: Vec<Vec<MPoly>>, squarefree: Option<usize>) -> Result<Self> {
        for s in &summands {
            for f in s {
                if f.is_zero() {
                    return Err(Error::InvalidInput(
                        "circuit factors must be nonzero".into(),
                    ));
                }
                if f.ring().vars() != ring.vars() || f.field() != ring.field() {
                    return Err(Error::Context("factor lives in another ring".into()));
                }
            }
        }
        if let Some(i) = squarefree {
            if i >= summands.len() {
                return Err(Error::InvalidInput(format!(
                    "squarefree summand {i} out of range"
                )));
            }
        }
        let summands = summands
            .into_iter()
            .map(|s| s.into_iter().map(|f| f.reorder(ring)).collect())
            .collect();
        Ok(Circuit {
            ring: ring.clone(),
            summands,
            squarefree,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn summands(&self) -> &[Vec<MPoly>] {
        &self.summands
    }

    pub fn squarefree_summand(&self) -> Option<usize> {
        self.squarefree
    }

    /// Number of summands.
    pub fn k(&self) -> usize {
        self.summands.len()
    }

    /// Largest summand degree.
    pub fn d(&self) -> u32 {
        (0..self.k())
            .map(|i| self.summand_degree(i))
            .max()
            .unwrap_or(0)
    }

    /// Largest factor degree.
    pub fn delta(&self) -> u32 {
        self.summands
            .iter()
            .flatten()
            .filter_map(|f| f.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn summand_degree(&self, i: usize) -> u32 {
        self.summands[i].iter().filter_map(|f| f.degree()).sum()
    }

    pub fn summand(&self, i: usize) -> MPoly {
        self.summands[i]
            .iter()
            .fold(MPoly::one(&self.ring), |acc, f| acc.mul(f))
    }

    pub fn expand(&self) -> MPoly {
        (0..self.k()).fold(MPoly::zero(&self.ring), |acc, i| acc.add(&self.summand(i)))
    }

    /// Every factor homogeneous and all summands of one degree.
    pub fn is_homogeneous(&self) -> bool {
        self.summands.iter().flatten().all(|f| f.is_homogeneous())
            && (0..self.k()).all(|i| self.summand_degree(i) == self.d())
    }

    /// Σ Π f_{i,j}(point), evaluated factor by factor in the field of the point.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        let target = match point.first() {
            Some(x) => x.field(),
            None => self.field().clone(),
        };
        let mut acc = target.zero();
        for s in &self.summands {
            let mut prod = target.one();
            for f in s {
                prod = prod.mul(&f.eval(point)?);
                if prod.is_zero() {
                    break;
                }
            }
            acc = acc.add(&prod);
        }
        Ok(acc)
    }

    /// The same circuit with coefficients moved into an extension field.
    pub fn over(&self, field: &Field) -> Result<Circuit> {
        if field == self.field() {
            return Ok(self.clone());
        }
        let ring = self.ring.with_field(field.clone());
        let summands = self
            .summands
            .iter()
            .map(|s| {
                s.iter()
                    .map(|f| f.map_coeffs(&ring, |c| c.embed_into(field)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Circuit {
            ring,
            summands,
            squarefree: self.squarefree,
        })
    }

    /// Factor-wise homogenization with a new first variable X0; summands of lower degree
    /// receive extra X0 factors.
    pub fn homogenized(&self) -> Result<Circuit> {
        let ring = self.ring.clone();
        let mut vars = vec![fresh_name(&ring, "X0")];
        vars.extend(ring.vars().iter().cloned());
        let hom = PolyRing::new(ring.field().clone(), vars, MonomialOrder::Grevlex);
        let d0 = self.d();
        let x0 = MPoly::var(&hom, 0);
        let mut summands = Vec::with_capacity(self.k());
        for (i, s) in self.summands.iter().enumerate() {
            let mut out: Vec<MPoly> = s.iter().map(|f| homogenize_into(f, &hom)).collect();
            for _ in self.summand_degree(i)..d0 {
                out.push(x0.clone());
            }
            summands.push(out);
        }
        Circuit::new(&hom, summands, self.squarefree)
    }
}

fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = base.to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

fn homogenize_into(f: &MPoly, hom: &Ring) -> MPoly {
    let e = f.degree().unwrap_or(0);
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut m2: Mono = SmallVec::with_capacity(m.len() + 1);
            m2.push(e - mono_deg(m));
            m2.extend_from_slice(m);
            (m2, c.clone())
        })
        .collect();
    MPoly::from_terms(hom, terms)
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s.iter()
                        .map(|g| format!("({g})"))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneMode {
    Affine,
    Projective,
}

#[derive(Clone, Debug)]
pub enum PlaneParams {
    /// Independent parameters Y_{r,i} in a rational function field.
    Symbolic(Arc<FnField>),
    /// A point a = (a₀ | a₁ | a₂) ∈ 𝔽^{3n}, row-major.
    Point(Vec<Scalar>),
}

/// X_i ↦ a_{0,i}(Ẑ₀) + a_{1,i}Z₁ + a_{2,i}Z₂.
#[derive(Clone, Debug)]
pub struct PlaneRestriction {
    pub mode: PlaneMode,
    pub n: usize,
    pub params: PlaneParams,
}

impl PlaneRestriction {
    pub fn symbolic(base: &Field, n: usize, mode: PlaneMode) -> Result<Self> {
        let mut names = Vec::with_capacity(3 * n);
        for r in 0..3 {
            for i in 1..=n {
                names.push(format!("Y{r}_{i}"));
            }
        }
        let k = FnField::new(base.clone(), names, 0)?;
        Ok(PlaneRestriction {
            mode,
            n,
            params: PlaneParams::Symbolic(k),
        })
    }

    pub fn at_point(point: Vec<Scalar>, mode: PlaneMode) -> Result<Self> {
        if point.is_empty() || !point.len().is_multiple_of(3) {
            return Err(Error::InvalidInput(
                "plane parameters need 3n coordinates".into(),
            ));
        }
        let field = point[0].field();
        if point.iter().any(|x| !field.contains(x)) {
            return Err(Error::Context(
                "plane parameters in different fields".into(),
            ));
        }
        Ok(PlaneRestriction {
            mode,
            n: point.len() / 3,
            params: PlaneParams::Point(point),
        })
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.params, PlaneParams::Symbolic(_))
    }

    pub fn field(&self) -> Field {
        match &self.params {
            PlaneParams::Symbolic(k) => Field::Fn(k.clone()),
            PlaneParams::Point(p) => p[0].field(),
        }
    }

    pub fn with_mode(&self, mode: PlaneMode) -> Self {
        PlaneRestriction {
            mode,
            ..self.clone()
        }
    }

    /// a_{r,i} with r ∈ {0,1,2} and i 0-based.
    pub fn coefficient(&self, r: usize, i: usize) -> Scalar {
        match &self.params {
            PlaneParams::Symbolic(k) => k.param(r * self.n + i),
            PlaneParams::Point(p) => p[r * self.n + i].clone(),
        }
    }

    pub fn point(&self) -> Option<&[Scalar]> {
        match &self.params {
            PlaneParams::Point(p) => Some(p),
            PlaneParams::Symbolic(_) => None,
        }
    }

    /// Substitutes the parameters of a symbolic plane.
    pub fn specialize(&self, a: &[Scalar]) -> Result<Self> {
        match &self.params {
            PlaneParams::Point(_) => Ok(self.clone()),
            PlaneParams::Symbolic(_) => {
                if a.len() != 3 * self.n {
                    return Err(Error::InvalidInput(
                        "specialization point has the wrong length".into(),
                    ));
                }
                PlaneRestriction::at_point(a.to_vec(), self.mode)
            }
        }
    }

    /// Z₁, Z₂ (affine) or Z0, Z1, Z2 (projective) over the parameter field.
    pub fn target_ring(&self) -> Ring {
        let vars: Vec<String> = match self.mode {
            PlaneMode::Affine => vec!["Z1".into(), "Z2".into()],
            PlaneMode::Projective => vec!["Z0".into(), "Z1".into(), "Z2".into()],
        };
        PolyRing::new(self.field(), vars, MonomialOrder::Grevlex)
    }

    /// The image of the plane coordinates z in 𝔽ⁿ.
    pub fn point_on(&self, z: &[Scalar]) -> Result<Vec<Scalar>> {
        let (z0, z1, z2) = match (self.mode, z) {
            (PlaneMode::Affine, [a, b]) => (self.field().one(), a, b),
            (PlaneMode::Projective, [a, b, c]) => (a.clone(), b, c),
            _ => {
                return Err(Error::InvalidInput(
                    "plane coordinate count mismatch".into(),
                ))
            }
        };
        let f = self.field();
        let (z0, z1, z2) = (z0.embed_into(&f)?, z1.embed_into(&f)?, z2.embed_into(&f)?);
        Ok((0..self.n)
            .map(|i| {
                self.coefficient(0, i)
                    .mul(&z0)
                    .add(&self.coefficient(1, i).mul(&z1))
                    .add(&self.coefficient(2, i).mul(&z2))
            })
            .collect())
    }

    /// Whether the direction vectors a₁, a₂ are linearly independent (point planes only).
    pub fn is_nondegenerate(&self) -> bool {
        let Some(p) = self.point() else { return true };
        let n = self.n;
        let (a1, a2) = (&p[n..2 * n], &p[2 * n..]);
        for i in 0..n {
            for j in i + 1..n {
                if !a1[i].mul(&a2[j]).sub(&a1[j].mul(&a2[i])).is_zero() {
                    return true;
                }
            }
        }
        false
    }
}

/// f(a₀(Ẑ₀) + a₁Z₁ + a₂Z₂) in the plane's target ring.
pub fn restrict(f: &MPoly, plane: &PlaneRestriction) -> Result<MPoly> {
    if f.ring().nvars() != plane.n {
        return Err(Error::InvalidInput(format!(
            "{} variables but the plane has {}",
            f.ring().nvars(),
            plane.n
        )));
    }
    let target = plane.target_ring();
    let z = |v: usize| MPoly::var(&target, v);
    let images: Vec<MPoly> = (0..plane.n)
        .map(|i| {
            let lead = match plane.mode {
                PlaneMode::Affine => MPoly::constant(&target, plane.coefficient(0, i)),
                PlaneMode::Projective => z(0).scale(&plane.coefficient(0, i)),
            };
            let off = if plane.mode == PlaneMode::Projective {
                1
            } else {
                0
            };
            lead.add(&z(off).scale(&plane.coefficient(1, i)))
                .add(&z(off + 1).scale(&plane.coefficient(2, i)))
        })
        .collect();
    f.substitute(&target, &images)
}

/// Variable names of the affine chart Ẑ_chart = 1 of the projective plane.
fn chart_vars(chart: usize) -> [&'static str; 2] {
    match chart {
        0 => ["Z1", "Z2"],
        1 => ["Z0", "Z2"],
        _ => ["Z0", "Z1"],
    }
}

/// The projective restriction dehomogenized at Ẑ_chart = 1, in a two-variable ring.
pub fn restrict_chart(f: &MPoly, plane: &PlaneRestriction, chart: usize) -> Result<MPoly> {
    if chart > 2 {
        return Err(Error::InvalidInput("chart index must be 0, 1 or 2".into()));
    }
    let proj = restrict(f, &plane.with_mode(PlaneMode::Projective))?;
    let names = chart_vars(chart);
    let ring = PolyRing::new(
        plane.field(),
        names.iter().map(|s| s.to_string()).collect(),
        MonomialOrder::Grevlex,
    );
    let mut images = Vec::with_capacity(3);
    let mut next = 0;
    for v in 0..3 {
        if v == chart {
            images.push(MPoly::one(&ring));
        } else {
            images.push(MPoly::var(&ring, next));
            next += 1;
        }
    }
    proj.substitute(&ring, &images)
}

/// Whether res(f) is separable over 𝔽(Y)(c₁Z₁ + c₂Z₂): the Z₁-derivative D_res(f) and the
/// Z₁-leading coefficient a_d are both nonzero.
pub fn check_restricted_separability(f: &MPoly, c1: &Scalar, c2: &Scalar) -> Result<bool> {
    let n = f.ring().nvars();
    let field = f.field().clone();
    let d = f
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if d == 0 {
        return Err(Error::InvalidInput("constant polynomial".into()));
    }
    if c2.is_zero() {
        return Err(Error::InvalidInput("c₂ must be nonzero".into()));
    }
    // ring: Y_{0,1..n}, Y_{1,..}, Y_{2,..}, Z1, X
    let mut names = Vec::with_capacity(3 * n + 2);
    for r in 0..3 {
        for i in 1..=n {
            names.push(format!("Y{r}_{i}"));
        }
    }
    names.push("Z1".into());
    names.push("X".into());
    let ring = PolyRing::new(field.clone(), names, MonomialOrder::Grevlex);
    let y = |r: usize, i: usize| MPoly::var(&ring, r * n + i);
    let z1 = MPoly::var(&ring, 3 * n);
    let x = MPoly::var(&ring, 3 * n + 1);
    let c2inv = c2.inv()?;
    let ratio = c1.mul(&c2inv);
    let t: Vec<MPoly> = (0..n)
        .map(|i| {
            y(0, i)
                .add(&y(1, i).mul(&z1))
                .add(&y(2, i).scale(&c2inv).mul(&x.sub(&z1.scale(c1))))
        })
        .collect();
    let slope: Vec<MPoly> = (0..n)
        .map(|i| y(1, i).sub(&y(2, i).scale(&ratio)))
        .collect();
    let mut dres = MPoly::zero(&ring);
    for i in 0..n {
        let di = f.partial(i);
        if di.is_zero() {
            continue;
        }
        dres = dres.add(&di.substitute(&ring, &t)?.mul(&slope[i]));
    }
    let top = MPoly::from_terms(
        f.ring(),
        f.terms()
            .iter()
            .filter(|(m, _)| mono_deg(m) == d)
            .cloned()
            .collect(),
    );
    let ad = top.substitute(&ring, &slope)?;
    Ok(!dres.is_zero() && !ad.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Grid,
    LowWeight,
    Boosted,
    PlaneUnion,
    Certified,
    Dehomogenized,
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::Grid => "grid",
            Provenance::LowWeight => "low-weight",
            Provenance::Boosted => "boosted",
            Provenance::PlaneUnion => "plane-union",
            Provenance::Certified => "certified",
            Provenance::Dehomogenized => "dehomogenized",
        }
    }

    pub fn from_name(name: &str) -> Option<Provenance> {
        [
            Provenance::Grid,
            Provenance::LowWeight,
            Provenance::Boosted,
            Provenance::PlaneUnion,
            Provenance::Certified,
            Provenance::Dehomogenized,
        ]
        .into_iter()
        .find(|p| p.name() == name)
    }
}

/// A finite point set over `field` (the base field or an extension of it).
#[derive(Clone, Debug)]
pub struct HittingSet {
    pub field: Field,
    pub nvars: usize,
    pub points: Vec<Vec<Scalar>>,
    pub provenance: Provenance,
}

impl HittingSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// A point where f is nonzero, if any.
    pub fn first_hit(&self, f: &MPoly) -> Result<Option<&[Scalar]>> {
        let lifted = lift(f, &self.field)?;
        for p in &self.points {
            if !lifted.eval(p)?.is_zero() {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    pub fn hits_circuit(&self, c: &Circuit) -> Result<bool> {
        let lifted = c.over(&self.field)?;
        for p in &self.points {
            if !lifted.eval(p)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn lift(f: &MPoly, field: &Field) -> Result<MPoly> {
    if f.field() == field {
        return Ok(f.clone());
    }
    let ring = f.ring().with_field(field.clone());
    f.map_coeffs(&ring, |c| c.embed_into(field))
}

/// The smallest field in the fixed tower 𝔽_p ⊂ 𝔽_{p^k} with at least `min_size` elements.
pub fn extension_for(field: &Field, min_size: u128) -> Result<Field> {
    match field {
        Field::Q => Ok(Field::Q),
        Field::Fp(p) => {
            let mut k = 1u32;
            let mut size = *p as u128;
            while size < min_size {
                k += 1;
                size = size.checked_mul(*p as u128).ok_or_else(|| {
                    Error::ExtendField(format!("no extension of GF({p}) with {min_size} elements"))
                })?;
            }
            Field::gf(*p, k)
        }
        Field::Gf(g) if g.size() >= min_size => Ok(field.clone()),
        Field::Gf(g) => Err(Error::ExtendField(format!(
            "GF({}^{}) has fewer than {min_size} elements and does not embed further",
            g.p(),
            g.degree()
        ))),
        Field::Fn(_) => Err(Error::Unsupported(
            "hitting sets over function fields".into(),
        )),
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Size of the bounded-degree generator for m variables and degree D.
pub fn bounded_degree_size(m: usize, degree: usize) -> u128 {
    if m <= degree + 1 {
        return (degree as u128 + 1).pow(m as u32);
    }
    (0..=degree)
        .map(|w| binomial(m as u128, w as u128) * (degree as u128).pow(w as u32))
        .sum()
}

/// The full grid S^m when m ≤ D+1, otherwise the points of S^m with at most D nonzero
/// coordinates; S is the first D+1 field elements. Every nonzero polynomial of degree
/// ≤ D has a monomial whose support T has |T| ≤ D, and setting the variables outside a
/// minimal such support to zero leaves a nonzero polynomial with individual degrees ≤ D
/// on the grid S^T.
pub fn bounded_degree_hitting_set(m: usize, degree: usize, field: &Field) -> Result<HittingSet> {
    let ext = extension_for(field, degree as u128 + 1)?;
    let values: Vec<Scalar> = (1..=degree as u128).map(|j| ext.element(j)).collect();
    let mut points = Vec::new();
    let zero = ext.zero();
    let max_weight = if degree == 0 {
        0
    } else if m <= degree + 1 {
        m
    } else {
        degree
    };
    for w in 0..=max_weight {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut digits = vec![0usize; w];
            loop {
                let mut p = vec![zero.clone(); m];
                for (k, &pos) in support.iter().enumerate() {
                    p[pos] = values[digits[k]].clone();
                }
                points.push(p);
                let mut k = w;
                while k > 0 {
                    k -= 1;
                    digits[k] += 1;
                    if digits[k] < values.len() {
                        break;
                    }
                    digits[k] = 0;
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX || w == 0 {
                    break;
                }
            }
            if !next_combination(&mut support, m) {
                break;
            }
        }
    }
    let provenance = if m <= degree + 1 {
        Provenance::Grid
    } else {
        Provenance::LowWeight
    };
    Ok(HittingSet {
        field: ext,
        nvars: m,
        points,
        provenance,
    })
}

fn next_combination(c: &mut [usize], m: usize) -> bool {
    let w = c.len();
    let mut i = w;
    while i > 0 {
        i -= 1;
        if c[i] < m - w + i {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Number of curve points emitted by [`boost_epsilon`].
pub fn boosted_count(h_len: usize, degree: usize, eps: (u64, u64)) -> u128 {
    if h_len <= 1 {
        return h_len as u128;
    }
    let (num, den) = (eps.0 as u128, eps.1 as u128);
    (degree as u128 * (h_len as u128 - 1) * den).div_ceil(num) + 1
}

/// Points on the degree-(|H|−1) curve C with C(t_j) = H_j, at the parameters t = first
/// `count` field elements (so H itself is emitted first). A degree-≤D polynomial that is
/// nonzero somewhere on H restricts to a nonzero polynomial of degree ≤ D(|H|−1) in t.
pub fn boost_epsilon(h: &HittingSet, eps: (u64, u64), degree: usize) -> Result<HittingSet> {
    if eps.0 == 0 || eps.0 >= eps.1 {
        return Err(Error::InvalidInput(
            "eps must lie strictly between 0 and 1".into(),
        ));
    }
    if h.len() <= 1 {
        return Ok(h.clone());
    }
    let count = boosted_count(h.len(), degree, eps);
    let ext = extension_for(&h.field, count)?;
    let nodes: Vec<Scalar> = (0..h.len() as u128).map(|j| ext.element(j)).collect();
    let pts: Vec<Vec<Scalar>> = h
        .points
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| x.embed_into(&ext))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut weights = Vec::with_capacity(nodes.len());
    for (j, tj) in nodes.iter().enumerate() {
        let mut prod = ext.one();
        for (k, tk) in nodes.iter().enumerate() {
            if k != j {
                prod = prod.mul(&tj.sub(tk));
            }
        }
        weights.push(prod.inv()?);
    }
    let mut points = pts.clone();
    for j in h.len() as u128..count {
        let t = ext.element(j);
        let diffs: Vec<Scalar> = nodes.iter().map(|tk| t.sub(tk)).collect();
        let ell = diffs.iter().fold(ext.one(), |acc, x| acc.mul(x));
        let mut p = vec![ext.zero(); h.nvars];
        for (k, hk) in pts.iter().enumerate() {
            let lk = ell.mul(&weights[k]).div(&diffs[k])?;
            for (x, y) in p.iter_mut().zip(hk) {
                *x = x.add(&lk.mul(y));
            }
        }
        points.push(p);
    }
    Ok(HittingSet {
        field: ext,
        nvars: h.nvars,
        points,
        provenance: Provenance::Boosted,
    })
}

/// Source of candidate planes.
pub trait PlaneProvider {
    fn planes(
        &self,
        n: usize,
        delta: usize,
        d: usize,
        field: &Field,
    ) -> Result<Vec<PlaneRestriction>>;
}

/// Planes parameterized by the boosted bounded-degree generator in 𝔽^{3n}; degenerate
/// parameter points (a₁ ∥ a₂) are dropped.
#[derive(Clone, Debug)]
pub struct BoostedGridProvider {
    /// Degree of the generator; `None` means δ.
    pub degree: Option<usize>,
    pub eps: (u64, u64),
}

impl Default for BoostedGridProvider {
    fn default() -> Self {
        BoostedGridProvider {
            degree: None,
            eps: (1, 2),
        }
    }
}

impl BoostedGridProvider {
    /// Field large enough for the family.
    pub fn field_for(&self, n: usize, delta: usize, field: &Field) -> Result<Field> {
        let degree = self.degree.unwrap_or(delta);
        let h = bounded_degree_size(3 * n, degree);
        extension_for(
            field,
            boosted_count(h as usize, degree, self.eps).max(degree as u128 + 1),
        )
    }
}

impl PlaneProvider for BoostedGridProvider {
    fn planes(
        &self,
        n: usize,
        delta: usize,
        _d: usize,
        field: &Field,
    ) -> Result<Vec<PlaneRestriction>> {
        let degree = self.degree.unwrap_or(delta);
        let ext = self.field_for(n, delta, field)?;
        let base = bounded_degree_hitting_set(3 * n, degree, &ext)?;
        let boosted = boost_epsilon(&base, self.eps, degree)?;
        let mut out = Vec::new();
        for p in boosted.points {
            let plane = PlaneRestriction::at_point(p, PlaneMode::Affine)?;
            if plane.is_nondegenerate() {
                out.push(plane);
            }
        }
        Ok(out)
    }
}

/// Candidate planes for the dimension conditions of the justify and easy cases.
pub fn plane_family(
    n: usize,
    delta: usize,
    d: usize,
    field: &Field,
    provider: &dyn PlaneProvider,
) -> Result<Vec<PlaneRestriction>> {
    provider.planes(n, delta, d, field)
}

fn plane_key(p: &PlaneRestriction) -> String {
    p.point()
        .map(|x| {
            x.iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .unwrap_or_default()
}

/// Grid S² on a plane, S the first `size` elements of the plane's field.
pub fn plane_grid(plane: &PlaneRestriction, size: usize) -> Result<Vec<Vec<Scalar>>> {
    let f = plane.field();
    let s: Vec<Scalar> = (0..size as u128).map(|j| f.element(j)).collect();
    let mut out = Vec::with_capacity(size * size);
    for z1 in &s {
        for z2 in &s {
            out.push(plane.point_on(&[z1.clone(), z2.clone()])?);
        }
    }
    Ok(out)
}

fn main_planes(
    n: usize,
    d: usize,
    delta: usize,
    field: &Field,
    degree: usize,
    min_size: u128,
) -> Result<Vec<PlaneRestriction>> {
    let eps = (1, 2);
    let family = BoostedGridProvider {
        degree: Some(delta),
        eps,
    };
    let main = BoostedGridProvider {
        degree: Some(degree),
        eps,
    };
    let need = [
        boosted_count(bounded_degree_size(3 * n, delta) as usize, delta, eps),
        boosted_count(bounded_degree_size(3 * n, degree) as usize, degree, eps),
        d as u128 + 1,
        delta as u128 + 1,
        degree as u128 + 1,
        min_size,
    ];
    let ext = extension_for(field, need.into_iter().max().unwrap())?;
    let mut seen = HashSet::new();
    let mut planes = Vec::new();
    for p in plane_family(n, delta, d, &ext, &family)?
        .into_iter()
        .chain(main.planes(n, delta, d, &ext)?)
    {
        if seen.insert(plane_key(&p)) {
            planes.push(p);
        }
    }
    Ok(planes)
}

fn union_on_planes(
    planes: &[PlaneRestriction],
    n: usize,
    d: usize,
    field: Field,
) -> Result<HittingSet> {
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    for p in planes {
        for x in plane_grid(p, d + 1)? {
            let key = x
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",");
            if seen.insert(key) {
                points.push(x);
            }
        }
    }
    Ok(HittingSet {
        field,
        nvars: n,
        points,
        provenance: Provenance::PlaneUnion,
    })
}

/// Union of (d+1)² grids on the default plane family and on the planes of the boosted
/// degree-D generator.
pub fn hitting_set_main(
    n: usize,
    d: usize,
    delta: usize,
    field: &Field,
    degree: usize,
) -> Result<HittingSet> {
    main_with_min(n, d, delta, field, degree, 0)
}

fn main_with_min(
    n: usize,
    d: usize,
    delta: usize,
    field: &Field,
    degree: usize,
    min_size: u128,
) -> Result<HittingSet> {
    let planes = main_planes(n, d, delta, field, degree, min_size)?;
    let ext = match planes.first() {
        Some(p) => p.field(),
        None => extension_for(field, (d as u128 + 1).max(min_size))?,
    };
    union_on_planes(&planes, n, d, ext)
}

/// Picks φ from the sequence identity, then a ↦ (Σ tⁱaᵢ, a₁, …, a_n) for t = 1, 2, …
/// until every point has a nonzero first coordinate; returns the first row of φ and the
/// dehomogenized points (a₁/a₀, …, a_n/a₀) of φ(H).
pub fn dehomogenize_points(h: &HittingSet) -> Result<(Vec<Scalar>, HittingSet)> {
    let f = h.field.clone();
    let pts: Vec<&Vec<Scalar>> = h
        .points
        .iter()
        .filter(|p| p.iter().any(|x| !x.is_zero()))
        .collect();
    let m = h.nvars;
    if m == 0 {
        return Err(Error::InvalidInput(
            "points need at least one coordinate".into(),
        ));
    }
    let bound = f.size().unwrap_or(u128::MAX);
    let mut j: u128 = 0;
    loop {
        let row: Vec<Scalar> = if j == 0 {
            let mut r = vec![f.zero(); m];
            r[0] = f.one();
            r
        } else {
            if j >= bound {
                return Err(Error::ExtendField(
                    "no invertible map makes all first coordinates nonzero".into(),
                ));
            }
            let t = f.element(j);
            let mut r = Vec::with_capacity(m);
            let mut pw = f.one();
            for _ in 0..m {
                r.push(pw.clone());
                pw = pw.mul(&t);
            }
            r
        };
        let firsts: Vec<Scalar> = pts
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&row)
                    .fold(f.zero(), |acc, (x, c)| acc.add(&x.mul(c)))
            })
            .collect();
        if firsts.iter().all(|x| !x.is_zero()) {
            let mut points = Vec::with_capacity(pts.len());
            for (p, a0) in pts.iter().zip(&firsts) {
                let inv = a0.inv()?;
                points.push(p[1..].iter().map(|x| x.mul(&inv)).collect());
            }
            let out = HittingSet {
                field: f,
                nvars: m - 1,
                points,
                provenance: Provenance::Dehomogenized,
            };
            return Ok((row, out));
        }
        j += 1;
    }
}

/// Hitting set for inhomogeneous circuits: the homogeneous set in n+1 variables, moved by
/// an invertible map so no point lies at infinity, then dehomogenized.
pub fn hitting_set_inhom(
    n: usize,
    d: usize,
    delta: usize,
    field: &Field,
    degree: usize,
) -> Result<HittingSet> {
    let mut h = main_with_min(n + 1, d, delta, field, degree, 0)?;
    let need = (n as u128 + 1) * h.len() as u128 + 2;
    if h.field.size().is_some_and(|s| s < need) {
        h = main_with_min(n + 1, d, delta, field, degree, need)?;
    }
    Ok(dehomogenize_points(&h)?.1)
}
