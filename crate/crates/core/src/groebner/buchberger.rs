//! Buchberger's algorithm with the normal selection strategy and both pruning criteria,
//! optionally tracking each basis element as a combination of the input generators.

use std::collections::BTreeSet;

use super::reduce::{normal_form, reduce};
use crate::error::{Error, Result};
use crate::limits;
use crate::mpoly::{mono_deg, mono_div, mono_divides, mono_lcm, MPoly, Ring};

/// A reduced, monic Gröbner basis sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    ring: Ring,
    polys: Vec<MPoly>,
}

impl GroebnerBasis {
    pub(crate) fn from_reduced(ring: &Ring, polys: Vec<MPoly>) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            polys,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_one()
    }

    pub fn normal_form(&self, f: &MPoly) -> Result<MPoly> {
        normal_form(f, &self.polys)
    }

    pub fn contains(&self, f: &MPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_all(&self, fs: &[MPoly]) -> Result<bool> {
        for f in fs {
            if !self.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn max_degree(&self) -> u32 {
        self.polys
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }
}

struct Elem {
    poly: MPoly,
    rep: Option<Vec<MPoly>>,
}

fn scale_rep(rep: &[MPoly], m: &[u32], c: &crate::coeff::Scalar) -> Vec<MPoly> {
    rep.iter().map(|r| r.mul_term(m, c)).collect()
}

fn sub_rep(a: &mut [MPoly], b: &[MPoly]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = x.sub(y);
    }
}

fn make_monic(e: &mut Elem) {
    let lc = e.poly.lc();
    if lc.is_one() {
        return;
    }
    let inv = lc.inv().expect("nonzero");
    e.poly = e.poly.scale(&inv);
    if let Some(r) = e.rep.as_mut() {
        for x in r.iter_mut() {
            *x = x.scale(&inv);
        }
    }
}

/// Reduces `f` (with representation `rep`) modulo the basis, updating the representation.
fn reduce_elem(f: MPoly, rep: Option<Vec<MPoly>>, basis: &[Elem]) -> Result<Elem> {
    match rep {
        None => {
            let polys: Vec<MPoly> = basis.iter().map(|e| e.poly.clone()).collect();
            Ok(Elem {
                poly: normal_form(&f, &polys)?,
                rep: None,
            })
        }
        Some(mut rep) => {
            let polys: Vec<MPoly> = basis.iter().map(|e| e.poly.clone()).collect();
            let res = reduce(&f, &polys)?;
            for (q, e) in res.cofactors.iter().zip(basis) {
                if q.is_zero() {
                    continue;
                }
                let br = e.rep.as_ref().unwrap();
                for (x, y) in rep.iter_mut().zip(br) {
                    *x = x.sub(&q.mul(y));
                }
            }
            Ok(Elem {
                poly: res.remainder,
                rep: Some(rep),
            })
        }
    }
}

fn compute(gens: &[MPoly], track: bool) -> Result<(GroebnerBasis, Option<Vec<Vec<MPoly>>>)> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::InvalidInput("empty generator list".into())),
    };
    let k = gens.len();
    let zero = MPoly::zero(&ring);
    let mut basis: Vec<Elem> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let rep = track.then(|| {
            let mut r = vec![zero.clone(); k];
            r[i] = MPoly::one(&ring);
            r
        });
        let mut e = Elem {
            poly: g.clone(),
            rep,
        };
        make_monic(&mut e);
        basis.push(e);
    }
    if basis.is_empty() {
        let m = track.then(Vec::new);
        return Ok((GroebnerBasis::from_reduced(&ring, Vec::new()), m));
    }
    // pending pairs keyed by (lcm degree, i, j)
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 1..basis.len() {
        for i in 0..j {
            let l = mono_lcm(basis[i].poly.lm(), basis[j].poly.lm());
            pending.insert((mono_deg(&l), i, j));
        }
    }
    let mut processed = 0usize;
    while let Some(&key) = pending.iter().next() {
        pending.remove(&key);
        let (_, i, j) = key;
        processed += 1;
        limits::check_pairs(processed)?;
        limits::check_time()?;
        let (li, lj) = (basis[i].poly.lm().clone(), basis[j].poly.lm().clone());
        let l = mono_lcm(&li, &lj);
        done.insert((i, j));
        // criterion 1: coprime leading monomials
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // criterion 2: chain through some k whose pairs with i and j are already handled
        let chain = (0..basis.len()).any(|t| {
            t != i
                && t != j
                && mono_divides(basis[t].poly.lm(), &l)
                && done.contains(&(i.min(t), i.max(t)))
                && done.contains(&(j.min(t), j.max(t)))
        });
        if chain {
            continue;
        }
        let one = ring.field().one();
        let mi = mono_div(&l, &li);
        let mj = mono_div(&l, &lj);
        let s = basis[i]
            .poly
            .mul_term(&mi, &one)
            .sub(&basis[j].poly.mul_term(&mj, &one));
        let srep = if track {
            let mut a = scale_rep(basis[i].rep.as_ref().unwrap(), &mi, &one);
            sub_rep(
                &mut a,
                &scale_rep(basis[j].rep.as_ref().unwrap(), &mj, &one),
            );
            Some(a)
        } else {
            None
        };
        let mut h = reduce_elem(s, srep, &basis)?;
        if h.poly.is_zero() {
            continue;
        }
        limits::check_degree(h.poly.degree().unwrap_or(0))?;
        make_monic(&mut h);
        let n = basis.len();
        basis.push(h);
        for t in 0..n {
            let l = mono_lcm(basis[t].poly.lm(), basis[n].poly.lm());
            pending.insert((mono_deg(&l), t, n));
        }
    }
    log::debug!(target: "groebner", "{} generators, {processed} pairs processed, {} elements before minimalization", k, basis.len());
    // minimalize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let li = basis[i].poly.lm();
        let dominated = (0..basis.len()).any(|t| {
            t != i && mono_divides(basis[t].poly.lm(), li) && (basis[t].poly.lm() != li || t < i)
        });
        if !dominated {
            keep.push(i);
        }
    }
    let mut basis: Vec<Elem> = basis
        .into_iter()
        .enumerate()
        .filter(|(i, _)| keep.contains(i))
        .map(|(_, e)| e)
        .collect();
    basis.sort_by(|a, b| ring.cmp(a.poly.lm(), b.poly.lm()));
    // inter-reduce: tails of each element modulo the others
    for i in 0..basis.len() {
        let e = std::mem::replace(
            &mut basis[i],
            Elem {
                poly: zero.clone(),
                rep: None,
            },
        );
        let polys: Vec<MPoly> = basis.iter().map(|x| x.poly.clone()).collect();
        let res = reduce(&e.poly, &polys)?;
        let mut rep = e.rep;
        if let Some(r) = rep.as_mut() {
            for (q, b) in res.cofactors.iter().zip(basis.iter()) {
                if q.is_zero() {
                    continue;
                }
                for (x, y) in r.iter_mut().zip(b.rep.as_ref().unwrap()) {
                    *x = x.sub(&q.mul(y));
                }
            }
        }
        let mut ne = Elem {
            poly: res.remainder,
            rep,
        };
        make_monic(&mut ne);
        basis[i] = ne;
    }
    let matrix = track.then(|| basis.iter().map(|e| e.rep.clone().unwrap()).collect());
    let polys = basis.into_iter().map(|e| e.poly).collect();
    Ok((GroebnerBasis::from_reduced(&ring, polys), matrix))
}

/// Reduced Gröbner basis of the ideal generated by `gens` under the ring's order.
pub fn buchberger(gens: &[MPoly]) -> Result<GroebnerBasis> {
    Ok(compute(gens, false)?.0)
}

/// Reduced Gröbner basis together with the matrix expressing each basis element in the
/// input generators: `basis[i] = Σ_j matrix[i][j]·gens[j]`.
pub fn buchberger_with_cofactors(gens: &[MPoly]) -> Result<(GroebnerBasis, Vec<Vec<MPoly>>)> {
    let (gb, m) = compute(gens, true)?;
    Ok((gb, m.unwrap()))
}
