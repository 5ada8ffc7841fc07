//! Ideals with a cached Gröbner basis, and the ideal-theoretic operations built on
//! elimination.

use std::sync::OnceLock;

use super::buchberger::{buchberger, buchberger_with_cofactors, GroebnerBasis};
use super::reduce::reduce;
use crate::coeff::{Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg;
use crate::mpoly::{MPoly, MonomialOrder, PolyRing, Ring};

pub struct Ideal {
    ring: Ring,
    gens: Vec<MPoly>,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<MPoly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn from_gb(gb: GroebnerBasis) -> Self {
        let ring = gb.ring().clone();
        let gens = gb.polys().to_vec();
        let cell = OnceLock::new();
        let _ = cell.set(gb);
        Ideal {
            ring,
            gens,
            gb: cell,
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, vec![MPoly::one(ring)])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn gb(&self) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = if self.gens.is_empty() {
            GroebnerBasis::from_reduced(&self.ring, Vec::new())
        } else {
            buchberger(&self.gens)?
        };
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap())
    }

    pub fn contains(&self, f: &MPoly) -> Result<bool> {
        self.gb()?.contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.gb()?.contains_all(other.gens())
    }

    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        Ok(self.gb()?.polys() == other.gb()?.polys())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn normal_form(&self, f: &MPoly) -> Result<MPoly> {
        self.gb()?.normal_form(f)
    }

    pub fn add(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn add_gens(&self, extra: &[MPoly]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        Ideal::new(&self.ring, g)
    }
}

/// Ring with `extra` fresh variables appended, grevlex.
pub fn extend_ring(ring: &Ring, extra: usize, prefix: &str) -> Ring {
    let mut vars = ring.vars().to_vec();
    for i in 0..extra {
        let mut name = format!("{prefix}{}", i + 1);
        while vars.contains(&name) {
            name.insert(0, '_');
        }
        vars.push(name);
    }
    PolyRing::new(ring.field().clone(), vars, MonomialOrder::Grevlex)
}

/// Embeds `f` into a ring whose first variables are those of `f`'s ring.
pub fn embed(f: &MPoly, target: &Ring) -> MPoly {
    let map: Vec<Option<usize>> = (0..f.ring().nvars()).map(Some).collect();
    f.rename(target, &map).expect("prefix embedding")
}

/// Reduced GB of I ∩ K[remaining variables], in the subring on the remaining variables
/// (grevlex), computed under the block order that compares eliminated variables first.
pub fn eliminate(ideal: &Ideal, elim: &[usize]) -> Result<GroebnerBasis> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let keep: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
    let sub = PolyRing::new(
        ring.field().clone(),
        keep.iter().map(|&i| ring.vars()[i].clone()).collect(),
        MonomialOrder::Grevlex,
    );
    if ideal.gens().is_empty() {
        return Ok(GroebnerBasis::from_reduced(&sub, Vec::new()));
    }
    let block = ring.with_order(MonomialOrder::elimination(elim.to_vec()));
    let gens: Vec<MPoly> = ideal.gens().iter().map(|g| g.reorder(&block)).collect();
    let gb = buchberger(&gens)?;
    let mut map = vec![None; n];
    for (j, &i) in keep.iter().enumerate() {
        map[i] = Some(j);
    }
    let mut out = Vec::new();
    for g in gb.polys() {
        if elim.iter().all(|&e| !g.uses_var(e)) {
            out.push(g.rename(&sub, &map)?);
        }
    }
    out.sort_by(|a, b| sub.cmp(a.lm(), b.lm()));
    Ok(GroebnerBasis::from_reduced(&sub, out))
}

/// Cofactors h with f = Σ h_i·gens_i, or `None` when f ∉ I.
pub fn ideal_member(f: &MPoly, ideal: &Ideal) -> Result<Option<Vec<MPoly>>> {
    let ring = ideal.ring();
    if f.is_zero() {
        return Ok(Some(vec![MPoly::zero(ring); ideal.gens().len()]));
    }
    if ideal.gens().is_empty() {
        return Ok(None);
    }
    let (gb, matrix) = buchberger_with_cofactors(ideal.gens())?;
    let res = reduce(f, gb.polys())?;
    if !res.remainder.is_zero() {
        return Ok(None);
    }
    let mut h = vec![MPoly::zero(ring); ideal.gens().len()];
    for (q, row) in res.cofactors.iter().zip(&matrix) {
        if q.is_zero() {
            continue;
        }
        for (x, m) in h.iter_mut().zip(row) {
            *x = x.add(&q.mul(m));
        }
    }
    Ok(Some(h))
}

/// I ∩ J by eliminating a tag T from T·I + (1 − T)·J.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let ring = i.ring();
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let big = extend_ring(ring, 1, "T");
    let n = ring.nvars();
    let t = MPoly::var(&big, n);
    let omt = MPoly::one(&big).sub(&t);
    let mut gens: Vec<MPoly> = i.gens().iter().map(|g| embed(g, &big).mul(&t)).collect();
    gens.extend(j.gens().iter().map(|g| embed(g, &big).mul(&omt)));
    let gb = eliminate(&Ideal::new(&big, gens), &[n])?;
    Ok(Ideal::from_gb(GroebnerBasis::from_reduced(
        ring,
        relabel(gb.polys(), ring)?,
    )))
}

fn relabel(ps: &[MPoly], ring: &Ring) -> Result<Vec<MPoly>> {
    let n = ring.nvars();
    let map: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut out: Vec<MPoly> = ps
        .iter()
        .map(|p| p.rename(ring, &map))
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    Ok(out)
}

/// ⋂ I_k through ⟨1 − Σ T_k⟩ + Σ T_k·I_k, eliminating the tags.
pub fn multi_intersect(ideals: &[Ideal]) -> Result<Ideal> {
    let first = ideals
        .first()
        .ok_or_else(|| Error::InvalidInput("empty ideal list".into()))?;
    if ideals.len() == 1 {
        return Ok(first.clone());
    }
    let ring = first.ring();
    if ideals.iter().any(|i| i.is_zero()) {
        return Ok(Ideal::zero(ring));
    }
    let k = ideals.len();
    let n = ring.nvars();
    let big = extend_ring(ring, k, "T");
    let mut sum = MPoly::one(&big);
    let mut gens = Vec::new();
    for (t, id) in ideals.iter().enumerate() {
        let tv = MPoly::var(&big, n + t);
        sum = sum.sub(&tv);
        gens.extend(id.gens().iter().map(|g| embed(g, &big).mul(&tv)));
    }
    gens.insert(0, sum);
    let tags: Vec<usize> = (n..n + k).collect();
    let gb = eliminate(&Ideal::new(&big, gens), &tags)?;
    Ok(Ideal::from_gb(GroebnerBasis::from_reduced(
        ring,
        relabel(gb.polys(), ring)?,
    )))
}

/// (I : J) = ⋂_i (1/g_i)(I ∩ ⟨g_i⟩).
pub fn quotient(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if j.is_zero() {
        return Err(Error::UndefinedQuotient);
    }
    let ring = i.ring();
    let mut parts = Vec::new();
    for g in j.gens() {
        let cap = intersect(i, &Ideal::new(ring, vec![g.clone()]))?;
        let divided: Vec<MPoly> = cap
            .gens()
            .iter()
            .map(|h| h.exact_div(g))
            .collect::<Result<_>>()?;
        parts.push(Ideal::new(ring, divided));
    }
    if parts.len() == 1 {
        let p = parts.pop().unwrap();
        let gb = p.gb()?.clone();
        return Ok(Ideal::from_gb(gb));
    }
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = intersect(&acc, p)?;
    }
    Ok(acc)
}

/// (I : f^∞) via ⟨I, 1 − T·f⟩ ∩ K[X].
pub fn saturate(i: &Ideal, f: &MPoly) -> Result<Ideal> {
    let ring = i.ring();
    let big = extend_ring(ring, 1, "T");
    let n = ring.nvars();
    let mut gens: Vec<MPoly> = i.gens().iter().map(|g| embed(g, &big)).collect();
    gens.push(MPoly::one(&big).sub(&MPoly::var(&big, n).mul(&embed(f, &big))));
    let gb = eliminate(&Ideal::new(&big, gens), &[n])?;
    Ok(Ideal::from_gb(GroebnerBasis::from_reduced(
        ring,
        relabel(gb.polys(), ring)?,
    )))
}

/// Preimage in K[X] of c·Id_A(J) for A = K[X]/I, namely ((c·J + I) : (J + I)).
pub fn idealizer_preimage(i: &Ideal, j_gens: &[MPoly], c: &MPoly) -> Result<GroebnerBasis> {
    if i.contains(c)? {
        return Err(Error::InvalidScaling);
    }
    let ring = i.ring();
    let cj: Vec<MPoly> = j_gens.iter().map(|g| g.mul(c)).collect();
    let num = i.add_gens(&cj);
    let den = Ideal::new(ring, j_gens.to_vec());
    if den.is_zero() {
        return Err(Error::UndefinedQuotient);
    }
    Ok(quotient(&num, &den)?.add(i).gb()?.clone())
}

fn combined_ring(ring: &Ring, target: &Ring) -> Ring {
    let mut vars: Vec<String> = (0..ring.nvars()).map(|i| format!("_x{i}")).collect();
    vars.extend(target.vars().iter().cloned());
    PolyRing::new(
        ring.field().clone(),
        vars,
        MonomialOrder::elimination((0..ring.nvars()).collect()),
    )
}

fn graph_ideal(i: &Ideal, images: &[MPoly], target: &Ring) -> Result<(Ring, Vec<MPoly>)> {
    if images.len() != target.nvars() {
        return Err(Error::InvalidInput(
            "one image per target variable required".into(),
        ));
    }
    let ring = i.ring();
    let big = combined_ring(ring, target);
    let n = ring.nvars();
    let mut gens: Vec<MPoly> = i.gens().iter().map(|g| embed(g, &big)).collect();
    for (k, g) in images.iter().enumerate() {
        gens.push(MPoly::var(&big, n + k).sub(&embed(g, &big)));
    }
    Ok((big, gens))
}

/// ker(K[Z] → K[X]/I, Z_k ↦ images[k]), as a GB in `target`.
pub fn ring_hom_kernel(i: &Ideal, images: &[MPoly], target: &Ring) -> Result<GroebnerBasis> {
    let (big, gens) = graph_ideal(i, images, target)?;
    let n = i.ring().nvars();
    let gb = buchberger(&gens)?;
    let map: Vec<Option<usize>> = (0..big.nvars()).map(|v| v.checked_sub(n)).collect();
    let mut out = Vec::new();
    for g in gb.polys() {
        if (0..n).all(|v| !g.uses_var(v)) {
            out.push(g.rename(target, &map)?.reorder(target));
        }
    }
    // re-reduce under the target's own order
    if out.is_empty() {
        return Ok(GroebnerBasis::from_reduced(target, out));
    }
    buchberger(&out)
}

/// h ∈ K[Z] with φ(h) ≡ f mod I, read off as the remainder modulo the graph ideal.
pub fn hom_preimage(f: &MPoly, i: &Ideal, images: &[MPoly], target: &Ring) -> Result<MPoly> {
    let (big, gens) = graph_ideal(i, images, target)?;
    let n = i.ring().nvars();
    let gb = buchberger(&gens)?;
    let r = gb.normal_form(&embed(f, &big))?;
    if (0..n).any(|v| r.uses_var(v)) {
        return Err(Error::NotInImage);
    }
    let map: Vec<Option<usize>> = (0..big.nvars()).map(|v| v.checked_sub(n)).collect();
    r.rename(target, &map)
}

/// Solves A·x = b with free variables set to zero.
pub fn solve_linear(a: &[Vec<Scalar>], b: &[Scalar], field: &Field) -> Result<Option<Vec<Scalar>>> {
    if a.len() != b.len() || a.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(Error::InvalidInput("inconsistent system dimensions".into()));
    }
    Ok(linalg::solve(&a.to_vec(), b, field))
}

/// Krull dimension of K[X]/I from maximal independent sets modulo lt(I); −1 for the unit ideal.
pub fn krull_dimension(i: &Ideal) -> Result<i64> {
    let n = i.ring().nvars();
    let gb = i.gb()?;
    if gb.is_unit() {
        return Ok(-1);
    }
    if gb.is_empty() {
        return Ok(n as i64);
    }
    let lms: Vec<u64> = gb
        .polys()
        .iter()
        .map(|g| {
            g.lm()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |a, (v, _)| a | (1 << v))
        })
        .collect();
    if n > 20 {
        return Err(Error::Unsupported(
            "dimension count beyond 20 variables".into(),
        ));
    }
    let mut best = 0;
    for s in 0u64..(1 << n) {
        let size = s.count_ones();
        if size > best && lms.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    Ok(best as i64)
}

/// Dimension of K[X]/I as a vector space when I is zero-dimensional.
pub fn is_zero_dimensional(i: &Ideal) -> Result<bool> {
    Ok(krull_dimension(i)? == 0)
}
