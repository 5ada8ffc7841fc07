use normpit_core::pit::{Circuit, HittingSet};
use normpit_core::{Field, MPoly, Ring, Scalar};

use crate::{OracleError, Result};

const MAX_ENTRIES: u128 = 1 << 22;
const MAX_GRID: u128 = 1 << 20;

/// Coefficients indexed by exponent tuples with every exponent ≤ `cap`, stored in
/// mixed radix (cap+1) with the first variable least significant.
#[derive(Clone, Debug)]
pub struct DensePoly {
    field: Field,
    nvars: usize,
    cap: u32,
    coeffs: Vec<Scalar>,
}

impl DensePoly {
    pub fn zero(field: &Field, nvars: usize, cap: u32) -> Result<Self> {
        let size = (cap as u128 + 1).checked_pow(nvars as u32).unwrap_or(u128::MAX);
        if size > MAX_ENTRIES {
            return Err(OracleError::Cap(size));
        }
        Ok(DensePoly { field: field.clone(), nvars, cap, coeffs: vec![field.zero(); size as usize] })
    }

    fn index(&self, exps: &[u32]) -> Option<usize> {
        let mut idx = 0usize;
        for &e in exps.iter().rev() {
            if e > self.cap {
                return None;
            }
            idx = idx * (self.cap as usize + 1) + e as usize;
        }
        Some(idx)
    }

    fn exps(&self, mut idx: usize) -> Vec<u32> {
        let base = self.cap as usize + 1;
        (0..self.nvars)
            .map(|_| {
                let e = (idx % base) as u32;
                idx /= base;
                e
            })
            .collect()
    }

    pub fn from_poly(f: &MPoly, cap: u32) -> Result<Self> {
        let mut out = DensePoly::zero(f.field(), f.ring().nvars(), cap)?;
        for (m, c) in f.terms() {
            let i = out.index(m).ok_or_else(|| OracleError::Precondition(format!("exponent above cap {cap}")))?;
            out.coeffs[i] = out.coeffs[i].add(c);
        }
        Ok(out)
    }

    pub fn one(field: &Field, nvars: usize, cap: u32) -> Result<Self> {
        let mut out = DensePoly::zero(field, nvars, cap)?;
        out.coeffs[0] = field.one();
        Ok(out)
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.index(exps).map_or_else(|| self.field.zero(), |i| self.coeffs[i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        DensePoly { coeffs, ..self.clone() }
    }

    /// Schoolbook product; fails if an exponent of the product exceeds the cap.
    pub fn mul(&self, other: &DensePoly) -> Result<DensePoly> {
        let mut out = DensePoly::zero(&self.field, self.nvars, self.cap)?;
        let b: Vec<(Vec<u32>, &Scalar)> =
            other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (other.exps(j), c)).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.exps(i);
            for (eb, c) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let k = out.index(&e).ok_or_else(|| OracleError::Precondition("product exceeds the degree cap".into()))?;
                out.coeffs[k] = out.coeffs[k].add(&a.mul(c));
            }
        }
        Ok(out)
    }

    pub fn to_poly(&self, ring: &Ring) -> MPoly {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exps(i).into_iter().collect(), c.clone()))
            .collect();
        MPoly::from_terms(ring, terms)
    }
}

/// Σᵢ Πⱼ f_{i,j} expanded densely with exponent cap d.
pub fn dense_expand(c: &Circuit) -> Result<DensePoly> {
    let cap = c.d();
    let (field, n) = (c.field(), c.nvars());
    let mut total = DensePoly::zero(field, n, cap)?;
    for summand in c.summands() {
        let mut prod = DensePoly::one(field, n, cap)?;
        for f in summand {
            prod = prod.mul(&DensePoly::from_poly(f, cap)?)?;
        }
        total = total.add(&prod);
    }
    Ok(total)
}

/// Σ c·Π xᵢ^{eᵢ} with the coefficients carried into the field of the point.
pub fn eval_poly(f: &MPoly, point: &[Scalar]) -> Result<Scalar> {
    let target = point.first().map_or_else(|| f.field().clone(), Scalar::field);
    let mut acc = target.zero();
    for (m, c) in f.terms() {
        let mut t = c.embed_into(&target)?;
        for (x, &e) in point.iter().zip(m.iter()) {
            for _ in 0..e {
                t = t.mul(x);
            }
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

pub fn eval_circuit(c: &Circuit, point: &[Scalar]) -> Result<Scalar> {
    let target = point.first().map_or_else(|| c.field().clone(), Scalar::field);
    let mut acc = target.zero();
    for summand in c.summands() {
        let mut prod = target.one();
        for f in summand {
            prod = prod.mul(&eval_poly(f, point)?);
        }
        acc = acc.add(&prod);
    }
    Ok(acc)
}

/// Nonzeroness by dense expansion, cross-checked on the grid Sⁿ with |S| = d + 1 inside
/// 𝔽_{p^ext} (or inside the base field when `ext_degree` ≤ 1).
pub fn brute_force_nonzero(c: &Circuit, ext_degree: u32) -> Result<bool> {
    let dense = !dense_expand(c)?.is_zero();
    let field = match (c.field(), ext_degree) {
        (Field::Fp(p), e) if e > 1 => Field::gf(*p, e)?,
        (f, e) if e > 1 => return Err(OracleError::Precondition(format!("no extension of degree {e} over {f}"))),
        (f, _) => f.clone(),
    };
    let d = c.d() as u128;
    if field.size().is_some_and(|q| q <= d) {
        return Err(OracleError::Precondition(format!("{field} has at most d = {d} elements")));
    }
    let grid_size = (d + 1).checked_pow(c.nvars() as u32).unwrap_or(u128::MAX);
    if grid_size > MAX_GRID {
        return Err(OracleError::Cap(grid_size));
    }
    let values: Vec<Scalar> = (0..=d).map(|j| field.element(j)).collect();
    let n = c.nvars();
    let mut grid = false;
    for idx in 0..grid_size {
        let mut k = idx;
        let point: Vec<Scalar> = (0..n)
            .map(|_| {
                let v = values[(k % (d + 1)) as usize].clone();
                k /= d + 1;
                v
            })
            .collect();
        if !eval_circuit(c, &point)?.is_zero() {
            grid = true;
            break;
        }
    }
    if grid != dense {
        return Err(OracleError::Disagreement { dense, grid });
    }
    Ok(dense)
}

/// Either the circuit is identically zero or some point of `h` is a non-root.
pub fn verify_hitting_set(h: &HittingSet, c: &Circuit) -> Result<bool> {
    if dense_expand(c)?.is_zero() {
        return Ok(true);
    }
    for p in &h.points {
        if !eval_circuit(c, p)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}
