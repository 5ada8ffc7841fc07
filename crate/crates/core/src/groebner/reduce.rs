//! Multivariate division: largest term first, lowest-index divisor.

use super::super::mpoly::{mono_div, mono_divides, MPoly, Mono};
use crate::coeff::Scalar;
use crate::error::Result;
use crate::limits;

/// f = remainder + Σ cofactors[i]·G[i].
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionResult {
    pub remainder: MPoly,
    pub cofactors: Vec<MPoly>,
}

fn find_divisor(g: &[MPoly], m: &[u32]) -> Option<usize> {
    g.iter()
        .position(|gi| !gi.is_zero() && mono_divides(gi.lm(), m))
}

/// Full reduction of `f` modulo `g`, recording the quotients.
pub fn reduce(f: &MPoly, g: &[MPoly]) -> Result<ReductionResult> {
    let mut p = f.clone();
    let mut rem: Vec<(Mono, Scalar)> = Vec::new();
    let mut quo: Vec<Vec<(Mono, Scalar)>> = vec![Vec::new(); g.len()];
    let invs: Vec<Option<Scalar>> = g
        .iter()
        .map(|x| if x.is_zero() { None } else { x.lc().inv().ok() })
        .collect();
    let mut steps = 0u32;
    while !p.is_zero() {
        steps += 1;
        if steps.is_multiple_of(256) {
            limits::check_time()?;
        }
        let (m, c) = p.terms()[0].clone();
        match find_divisor(g, &m) {
            Some(i) => {
                let qm = mono_div(&m, g[i].lm());
                let qc = c.mul(invs[i].as_ref().unwrap());
                p = p.add_scaled_shifted(&qc.neg(), Some(&qm), &g[i]);
                quo[i].push((qm, qc));
            }
            None => {
                let mut t = p.into_terms();
                let head = t.remove(0);
                rem.push(head);
                p = MPoly::from_sorted(f.ring(), t);
            }
        }
    }
    Ok(ReductionResult {
        remainder: MPoly::from_sorted(f.ring(), rem),
        cofactors: quo
            .into_iter()
            .map(|t| MPoly::from_terms(f.ring(), t))
            .collect(),
    })
}

/// Remainder only.
pub fn normal_form(f: &MPoly, g: &[MPoly]) -> Result<MPoly> {
    let mut p = f.clone();
    let mut rem: Vec<(Mono, Scalar)> = Vec::new();
    let mut steps = 0u32;
    while !p.is_zero() {
        steps += 1;
        if steps.is_multiple_of(256) {
            limits::check_time()?;
        }
        let m = p.lm().clone();
        match find_divisor(g, &m) {
            Some(i) => {
                let qm = mono_div(&m, g[i].lm());
                let qc = p.lc().div(&g[i].lc())?;
                p = p.add_scaled_shifted(&qc.neg(), Some(&qm), &g[i]);
            }
            None => {
                let mut t = p.into_terms();
                let head = t.remove(0);
                rem.push(head);
                p = MPoly::from_sorted(f.ring(), t);
            }
        }
    }
    Ok(MPoly::from_sorted(f.ring(), rem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::mpoly::{parse_poly, PolyRing};

    #[test]
    fn spec_example() {
        let r = PolyRing::with_names(Field::Q, "X", 2);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let res = reduce(&p("X1^2*X2"), &[p("X1^2-X2")]).unwrap();
        assert_eq!(res.remainder, p("X2^2"));
        assert_eq!(res.cofactors, vec![p("X2")]);
        let res = reduce(&p("X2+1"), &[p("X1^2-X2"), p("X1")]).unwrap();
        assert_eq!(res.remainder, p("X2+1"));
        assert!(res.cofactors.iter().all(|c| c.is_zero()));
    }
}
