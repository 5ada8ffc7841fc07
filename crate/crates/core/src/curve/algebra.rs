//! Arithmetic in K(α)[X̄]/⟨F⟩ for a monic F over K[α], and K[α]-lattices inside it.

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::mpoly::UPoly;

/// Element Σ num_j(α)·X̄^j / den(α), kept with gcd(num, den) = 1 and den monic.
#[derive(Clone, Debug, PartialEq)]
pub struct Elem {
    pub num: Vec<UPoly>,
    pub den: UPoly,
}

/// The algebra K[α][X̄]/⟨F⟩; `relation` holds F_0..F_{s−1} with F = X̄^s + Σ F_j X̄^j.
#[derive(Clone, Debug)]
pub struct FunctionAlgebra {
    field: Field,
    relation: Vec<UPoly>,
}

impl FunctionAlgebra {
    /// `monic` lists the coefficients of F in X̄ from degree 0 up to s, the last being 1.
    pub fn new(field: &Field, monic: &[UPoly]) -> Result<Self> {
        let s = monic
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidInput("empty relation".into()))?;
        if s == 0 || !monic[s].is_one() {
            return Err(Error::InvalidInput(
                "relation must be monic of positive degree".into(),
            ));
        }
        Ok(FunctionAlgebra {
            field: field.clone(),
            relation: monic[..s].to_vec(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.relation.len()
    }

    /// F as coefficient list including the leading 1.
    pub fn relation(&self) -> Vec<UPoly> {
        let mut r = self.relation.clone();
        r.push(UPoly::one(&self.field));
        r
    }

    pub fn zero(&self) -> Elem {
        Elem {
            num: vec![UPoly::zero(&self.field); self.degree()],
            den: UPoly::one(&self.field),
        }
    }

    pub fn from_poly(&self, a: UPoly) -> Elem {
        let mut e = self.zero();
        e.num[0] = a;
        e
    }

    pub fn one(&self) -> Elem {
        self.from_poly(UPoly::one(&self.field))
    }

    pub fn alpha(&self) -> Elem {
        self.from_poly(UPoly::x(&self.field))
    }

    pub fn generator(&self) -> Elem {
        let mut e = self.zero();
        if self.degree() == 1 {
            e.num[0] = self.relation[0].neg();
        } else {
            e.num[1] = UPoly::one(&self.field);
        }
        e
    }

    pub fn make(&self, num: Vec<UPoly>, den: UPoly) -> Result<Elem> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        let mut g = den.clone();
        for c in &num {
            if g.deg() == 0 {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        let lc = den.lc();
        let inv = lc.inv()?;
        let g = g.monic();
        let num = num
            .iter()
            .map(|c| Ok(c.exact_div(&g)?.scale(&inv)))
            .collect::<Result<Vec<_>>>()?;
        let den = den.exact_div(&g)?.scale(&inv);
        if num.iter().all(|c| c.is_zero()) {
            return Ok(self.zero());
        }
        Ok(Elem { num, den })
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        x.num.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let g = x.den.gcd(&y.den);
        let lx = y.den.exact_div(&g)?;
        let ly = x.den.exact_div(&g)?;
        let num = x
            .num
            .iter()
            .zip(&y.num)
            .map(|(a, b)| a.mul(&lx).add(&b.mul(&ly)))
            .collect();
        self.make(num, x.den.mul(&lx))
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        Elem {
            num: x.num.iter().map(|c| c.neg()).collect(),
            den: x.den.clone(),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.add(x, &self.neg(y))
    }

    /// Polynomial product reduced modulo F.
    fn mul_vec(&self, a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
        let s = self.degree();
        let mut prod = vec![UPoly::zero(&self.field); 2 * s - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = prod[i + j].add(&x.mul(y));
                }
            }
        }
        for k in (s..2 * s - 1).rev() {
            let c = std::mem::replace(&mut prod[k], UPoly::zero(&self.field));
            if c.is_zero() {
                continue;
            }
            for (j, fj) in self.relation.iter().enumerate() {
                prod[k - s + j] = prod[k - s + j].sub(&c.mul(fj));
            }
        }
        prod.truncate(s);
        prod
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.make(self.mul_vec(&x.num, &y.num), x.den.mul(&y.den))
    }

    pub fn scale(&self, x: &Elem, a: &UPoly) -> Result<Elem> {
        self.make(x.num.iter().map(|c| c.mul(a)).collect(), x.den.clone())
    }

    pub fn div_poly(&self, x: &Elem, a: &UPoly) -> Result<Elem> {
        self.make(x.num.clone(), x.den.mul(a))
    }

    pub fn pow(&self, x: &Elem, e: u32) -> Result<Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Trace of the numerator as a K[α]-linear map, together with the denominator.
    pub fn trace(&self, x: &Elem) -> (UPoly, UPoly) {
        let s = self.degree();
        let mut t = UPoly::zero(&self.field);
        for j in 0..s {
            let mut basis = vec![UPoly::zero(&self.field); s];
            basis[j] = UPoly::one(&self.field);
            t = t.add(&self.mul_vec(&x.num, &basis)[j]);
        }
        (t, x.den.clone())
    }
}

/// Fraction-free determinant over K[α].
pub fn det_upoly(m: &[Vec<UPoly>], field: &Field) -> Result<UPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(UPoly::one(field));
    }
    let mut a: Vec<Vec<UPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = UPoly::one(field);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(UPoly::zero(field));
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { d.neg() } else { d })
}

/// A full-rank K[α]-lattice in Frac, stored as upper-triangular rows over a common
/// denominator, the row i pivot sitting in column i.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub rows: Vec<Vec<UPoly>>,
    pub den: UPoly,
}

impl Lattice {
    /// Lattice spanned by the given elements; they must span Frac over K(α).
    pub fn span(alg: &FunctionAlgebra, elems: &[Elem]) -> Result<Lattice> {
        let field = alg.field().clone();
        let s = alg.degree();
        let mut den = UPoly::one(&field);
        for e in elems {
            let g = den.gcd(&e.den);
            den = den.mul(&e.den.exact_div(&g)?);
        }
        let mut rows: Vec<Vec<UPoly>> = elems
            .iter()
            .filter(|e| !alg.is_zero(e))
            .map(|e| {
                let f = den.exact_div(&e.den)?;
                Ok(e.num.iter().map(|c| c.mul(&f)).collect())
            })
            .collect::<Result<_>>()?;
        let mut out: Vec<Vec<UPoly>> = Vec::with_capacity(s);
        for col in 0..s {
            loop {
                let nonzero: Vec<usize> = (0..rows.len())
                    .filter(|&i| !rows[i][col].is_zero())
                    .collect();
                if nonzero.is_empty() {
                    return Err(Error::InvalidInput(
                        "elements do not span the function field".into(),
                    ));
                }
                let piv = *nonzero.iter().min_by_key(|&&i| rows[i][col].deg()).unwrap();
                if nonzero.len() == 1 {
                    let mut r = rows.swap_remove(piv);
                    let inv = r[col].lc().inv()?;
                    for c in r.iter_mut() {
                        *c = c.scale(&inv);
                    }
                    out.push(r);
                    break;
                }
                let prow = rows[piv].clone();
                for &i in &nonzero {
                    if i == piv {
                        continue;
                    }
                    let (q, _) = rows[i][col].divrem(&prow[col])?;
                    for (x, y) in rows[i].iter_mut().zip(&prow) {
                        *x = x.sub(&q.mul(y));
                    }
                }
            }
        }
        for j in 1..s {
            for i in 0..j {
                if out[i][j].deg() >= out[j][j].deg() && !out[i][j].is_zero() {
                    let (q, _) = out[i][j].divrem(&out[j][j])?;
                    let pj = out[j].clone();
                    for (x, y) in out[i].iter_mut().zip(&pj) {
                        *x = x.sub(&q.mul(y));
                    }
                }
            }
        }
        let mut g = den.clone();
        for r in &out {
            for c in r {
                if !c.is_zero() && g.deg() > 0 {
                    g = g.gcd(c);
                }
            }
        }
        if g.deg() > 0 {
            for r in out.iter_mut() {
                for c in r.iter_mut() {
                    *c = c.exact_div(&g)?;
                }
            }
            den = den.exact_div(&g)?;
        }
        Ok(Lattice { rows: out, den })
    }

    pub fn basis(&self, alg: &FunctionAlgebra) -> Result<Vec<Elem>> {
        self.rows
            .iter()
            .map(|r| alg.make(r.clone(), self.den.clone()))
            .collect()
    }

    /// Subtracts lattice multiples so each numerator coordinate has degree below the pivot,
    /// returning the remainder; zero exactly when x lies in the lattice.
    pub fn reduce(&self, alg: &FunctionAlgebra, x: &Elem) -> Result<Elem> {
        let g = self.den.gcd(&x.den);
        let common = self.den.mul(&x.den.exact_div(&g)?);
        let fx = common.exact_div(&x.den)?;
        let fl = common.exact_div(&self.den)?;
        let mut v: Vec<UPoly> = x.num.iter().map(|c| c.mul(&fx)).collect();
        for j in 0..v.len() {
            let piv = self.rows[j][j].mul(&fl);
            let (q, _) = v[j].divrem(&piv)?;
            if q.is_zero() {
                continue;
            }
            for (k, c) in self.rows[j].iter().enumerate() {
                v[k] = v[k].sub(&q.mul(&c.mul(&fl)));
            }
        }
        alg.make(v, common)
    }

    pub fn contains(&self, alg: &FunctionAlgebra, x: &Elem) -> Result<bool> {
        Ok(alg.is_zero(&self.reduce(alg, x)?))
    }

    /// det(rows)/den^s, the index of the power-basis lattice in this one (inverted).
    pub fn determinant(&self, field: &Field) -> Result<(UPoly, UPoly)> {
        let d = self
            .rows
            .iter()
            .enumerate()
            .fold(UPoly::one(field), |a, (i, r)| a.mul(&r[i]));
        Ok((d, self.den.pow(self.rows.len() as u64)))
    }
}

/// The discriminant of a tuple via the trace form; zero when the tuple is dependent.
pub fn trace_discriminant(alg: &FunctionAlgebra, tuple: &[Elem]) -> Result<(UPoly, UPoly)> {
    let field = alg.field().clone();
    let n = tuple.len();
    let mut m = vec![vec![UPoly::zero(&field); n]; n];
    let mut den = UPoly::one(&field);
    let mut traces = vec![vec![(UPoly::zero(&field), UPoly::one(&field)); n]; n];
    for i in 0..n {
        for j in i..n {
            let t = alg.trace(&alg.mul(&tuple[i], &tuple[j])?);
            traces[i][j] = t.clone();
            traces[j][i] = t;
        }
    }
    for row in &traces {
        for (_, d) in row {
            let g = den.gcd(d);
            den = den.mul(&d.exact_div(&g)?);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let (t, d) = &traces[i][j];
            m[i][j] = t.mul(&den.exact_div(d)?);
        }
    }
    let det = det_upoly(&m, &field)?;
    Ok((det, den.pow(n as u64)))
}
