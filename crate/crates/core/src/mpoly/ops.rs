//! Structural operations: homogenization, Kronecker map, content, squarefreeness.

use smallvec::SmallVec;

use super::gcd::{gcd, gcd_many, lcm};
use super::poly::{mono_deg, MPoly, Mono, PolyRing, Ring};
use crate::coeff::{Field, FracElement, Scalar};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Ring with a fresh variable `X0` placed first.
pub fn prepend_var(ring: &Ring, name: &str) -> Ring {
    let mut vars = vec![name.to_string()];
    vars.extend(ring.vars().iter().cloned());
    PolyRing::new(ring.field().clone(), vars, super::MonomialOrder::Grevlex)
}

/// Σ F_i(X/X₀)·X₀^{d₀} with d₀ = max deg F_i; returns the sum and d₀.
pub fn homogenize(parts: &[MPoly]) -> Result<(MPoly, u32)> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidInput("empty part list".into()))?;
    if parts.iter().any(|p| p.is_zero()) {
        return Err(Error::InvalidInput("zero part".into()));
    }
    let d0 = parts.iter().filter_map(|p| p.degree()).max().unwrap();
    let hom = prepend_var(first.ring(), &fresh_name(first.ring(), "X0"));
    let mut terms = Vec::new();
    for p in parts {
        for (m, c) in p.terms() {
            let mut m2: Mono = SmallVec::with_capacity(m.len() + 1);
            m2.push(d0 - mono_deg(m));
            m2.extend_from_slice(m);
            terms.push((m2, c.clone()));
        }
    }
    Ok((MPoly::from_terms(&hom, terms), d0))
}

fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = base.to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Sends X_i (1-based) to X^{(d+1)^i}.
pub fn kronecker(f: &MPoly, d: u32) -> Result<MPoly> {
    if let Some(df) = f.degree() {
        if df > d {
            return Err(Error::BoundViolation(format!(
                "degree {df} exceeds Kronecker bound {d}"
            )));
        }
    }
    let base = d as u64 + 1;
    let ring = PolyRing::new(
        f.field().clone(),
        vec!["X".into()],
        super::MonomialOrder::Lex,
    );
    let mut terms = Vec::with_capacity(f.nterms());
    for (m, c) in f.terms() {
        let mut e: u64 = 0;
        let mut w: u64 = 1;
        for &x in m.iter() {
            w = w
                .checked_mul(base)
                .ok_or_else(|| Error::BoundViolation("Kronecker exponent overflow".into()))?;
            e = w
                .checked_mul(x as u64)
                .and_then(|t| t.checked_add(e))
                .ok_or_else(|| Error::BoundViolation("Kronecker exponent overflow".into()))?;
        }
        let e: u32 = e
            .try_into()
            .map_err(|_| Error::BoundViolation("Kronecker exponent overflow".into()))?;
        terms.push((SmallVec::from_slice(&[e]), c.clone()));
    }
    Ok(MPoly::from_terms(&ring, terms))
}

/// Inverse of [`kronecker`] on images of polynomials of degree ≤ d in `target`'s variables.
pub fn kronecker_inverse(g: &MPoly, target: &Ring, d: u32) -> Result<MPoly> {
    let base = d as u64 + 1;
    let n = target.nvars();
    let mut terms = Vec::with_capacity(g.nterms());
    for (m, c) in g.terms() {
        let mut e = m[0] as u64;
        if !e.is_multiple_of(base) {
            return Err(Error::BoundViolation(
                "exponent not in the Kronecker image".into(),
            ));
        }
        e /= base;
        let mut m2: Mono = SmallVec::from_elem(0, n);
        for x in m2.iter_mut() {
            *x = (e % base) as u32;
            e /= base;
        }
        if e != 0 {
            return Err(Error::BoundViolation(
                "exponent not in the Kronecker image".into(),
            ));
        }
        terms.push((m2, c.clone()));
    }
    Ok(MPoly::from_terms(target, terms))
}

/// Content over 𝔽(Y): gcd of the numerators over lcm of the denominators. Over other
/// fields every nonzero coefficient is a unit and the content is 1.
pub fn content(f: &MPoly) -> Result<Scalar> {
    if f.is_zero() {
        return Err(Error::InvalidInput("content of the zero polynomial".into()));
    }
    let Field::Fn(ff) = f.field() else {
        return Ok(f.field().one());
    };
    let nums: Vec<MPoly> = f
        .terms()
        .iter()
        .map(|(_, c)| c.as_frac().unwrap().num().clone())
        .collect();
    let dens: Vec<MPoly> = f
        .terms()
        .iter()
        .map(|(_, c)| c.as_frac().unwrap().den().clone())
        .collect();
    let g = gcd_many(&nums);
    let l = dens.iter().skip(1).fold(dens[0].clone(), |a, b| lcm(&a, b));
    Ok(Scalar::Frac(Arc::new(FracElement::from_polys(ff, g, l)?)))
}

/// f/cont(f), which has polynomial coefficients in the parameters.
pub fn primitive_part(f: &MPoly) -> Result<MPoly> {
    let c = content(f)?;
    Ok(f.scale(&c.inv()?))
}

/// Whether `f` has no repeated irreducible factor over the algebraic closure.
pub fn squarefree_check(f: &MPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "squarefreeness of the zero polynomial".into(),
        ));
    }
    if f.is_constant() {
        return Ok(true);
    }
    if let Field::Fn(ff) = f.field() {
        if !ff.vars().is_empty() {
            // Over 𝔽(W) pass to the primitive part in 𝔽[W][X], a polynomial over the perfect base.
            let pp = primitive_part(f)?;
            let n = f.ring().nvars();
            let mut vars = f.ring().vars().to_vec();
            vars.extend(ff.vars().iter().map(|v| format!("{v}'")));
            let big = PolyRing::new(ff.base().clone(), vars, super::MonomialOrder::Grevlex);
            let mut acc = MPoly::zero(&big);
            for (m, c) in pp.terms() {
                let x = c.as_frac().unwrap();
                debug_assert!(x.den().is_one());
                let shift: Vec<Option<usize>> = (0..ff.vars().len()).map(|i| Some(n + i)).collect();
                let lifted = x.num().rename(&big, &shift)?;
                let mut mm: Vec<u32> = m.to_vec();
                mm.extend(std::iter::repeat_n(0, ff.vars().len()));
                acc = acc.add(&lifted.mul_term(&mm, &big.field().one()));
            }
            return squarefree_check(&acc);
        }
    }
    let mut g = f.clone();
    for i in 0..f.ring().nvars() {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &f.partial(i));
    }
    Ok(g.is_constant())
}

pub fn partial_derivative(f: &MPoly, var: usize) -> Result<MPoly> {
    if var >= f.ring().nvars() {
        return Err(Error::InvalidInput(format!(
            "variable index {var} out of range"
        )));
    }
    Ok(f.partial(var))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FnField;
    use crate::mpoly::parse_poly;
    use proptest::prelude::*;

    fn qring(n: usize) -> Ring {
        PolyRing::with_names(Field::Q, "X", n)
    }

    #[test]
    fn homogenize_examples() {
        let r = qring(1);
        let (h, d0) = homogenize(&[
            parse_poly(&r, "X1+1").unwrap(),
            parse_poly(&r, "X1^2").unwrap(),
        ])
        .unwrap();
        assert_eq!(d0, 2);
        assert_eq!(h, parse_poly(h.ring(), "X1*X0 + X0^2 + X1^2").unwrap());
        assert!(h.is_homogeneous());
        assert!(homogenize(&[]).is_err());
        assert!(homogenize(&[MPoly::zero(&r)]).is_err());
    }

    #[test]
    fn kronecker_examples() {
        let r = qring(2);
        let k = kronecker(&parse_poly(&r, "X1*X2").unwrap(), 2).unwrap();
        assert_eq!(k.to_string(), "X^12");
        assert_eq!(
            kronecker(&parse_poly(&r, "5").unwrap(), 2)
                .unwrap()
                .to_string(),
            "5"
        );
        assert!(kronecker(&parse_poly(&r, "X1^3").unwrap(), 2).is_err());
    }

    #[test]
    fn content_examples() {
        let ff = FnField::new(Field::Q, vec!["Y1".into()], 0).unwrap();
        let r = PolyRing::new(
            Field::Fn(ff),
            vec!["X".into()],
            super::super::MonomialOrder::Grevlex,
        );
        let f = parse_poly(&r, "Y1*X + Y1^2").unwrap();
        assert_eq!(content(&f).unwrap().to_string(), "Y1");
        let g = parse_poly(&r, "(1/Y1)*X + 1").unwrap();
        assert_eq!(content(&g).unwrap().to_string(), "1/Y1");
        assert_eq!(
            primitive_part(&g).unwrap(),
            parse_poly(&r, "X + Y1").unwrap()
        );
    }

    #[test]
    fn squarefree_examples() {
        let r = qring(2);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        assert!(!squarefree_check(&p("X1^2*X2")).unwrap());
        assert!(squarefree_check(&p("X1*X2*(X1+X2)")).unwrap());
        assert!(squarefree_check(&p("X2^2 - X1^2*(X1+1)")).unwrap());
        let r3 = PolyRing::with_names(Field::fp(3).unwrap(), "X", 2);
        assert!(!squarefree_check(&parse_poly(&r3, "X1^3 + X2^3").unwrap()).unwrap());
        assert!(squarefree_check(&parse_poly(&r3, "X1^3 + X2").unwrap()).unwrap());
        // X^p − Y is irreducible over 𝔽_p(Y)
        let ff = FnField::new(Field::fp(3).unwrap(), vec!["Y1".into()], 0).unwrap();
        let rf = PolyRing::new(
            Field::Fn(ff),
            vec!["X".into()],
            super::super::MonomialOrder::Grevlex,
        );
        assert!(squarefree_check(&parse_poly(&rf, "X^3 - Y1").unwrap()).unwrap());
        assert!(!squarefree_check(&parse_poly(&rf, "Y1*(X-Y1)^2").unwrap()).unwrap());
    }

    #[test]
    fn partials() {
        let r3 = PolyRing::with_names(Field::fp(3).unwrap(), "X", 2);
        assert!(partial_derivative(&parse_poly(&r3, "X1^3").unwrap(), 0)
            .unwrap()
            .is_zero());
        let r = qring(2);
        assert_eq!(
            partial_derivative(&parse_poly(&r, "X1^2*X2").unwrap(), 1).unwrap(),
            parse_poly(&r, "X1^2").unwrap()
        );
        assert!(partial_derivative(&parse_poly(&r, "X1").unwrap(), 2).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn kronecker_preserves_terms(c in proptest::collection::vec(-3i64..4, 10)) {
            let r = qring(3);
            let f = parse_poly(&r, &format!("{}*X1^2*X2+{}*X3^3+{}*X1*X2*X3+{}*X2^2+{}*X1+{}",
                c[0], c[1], c[2], c[3], c[4], c[5])).unwrap();
            let d = f.degree().unwrap_or(0);
            let k = kronecker(&f, d).unwrap();
            prop_assert_eq!(k.nterms(), f.nterms());
            prop_assert!(k.degree().unwrap_or(0) as u64 <= (d as u64 + 1).pow(4));
            prop_assert_eq!(kronecker_inverse(&k, &r, d).unwrap(), f);
        }

        #[test]
        fn homogenized_is_homogeneous(c in proptest::collection::vec(1i64..4, 4)) {
            let r = qring(2);
            let a = parse_poly(&r, &format!("X1^{}+X2", c[0])).unwrap();
            let b = parse_poly(&r, &format!("{}*X1*X2^{}+1", c[1], c[2])).unwrap();
            let (h, d0) = homogenize(&[a, b]).unwrap();
            prop_assert!(h.terms().iter().all(|(m, _)| mono_deg(m) == d0));
        }

        #[test]
        fn gauss_lemma(a in proptest::collection::vec(-3i64..4, 4), b in proptest::collection::vec(-3i64..4, 4)) {
            let ff = FnField::new(Field::Q, vec!["Y1".into(), "Y2".into()], 0).unwrap();
            let r = PolyRing::new(Field::Fn(ff), vec!["X".into()], super::super::MonomialOrder::Grevlex);
            let g = parse_poly(&r, &format!("({}*Y1+{})*X + (Y2+{})*Y1 + {}", a[0], a[1], a[2], a[3])).unwrap();
            let h = parse_poly(&r, &format!("(Y1*Y2+{})/(Y2+1)*X^2 + {}*Y1 + {}*Y2 + {}", b[0], b[1], b[2], b[3])).unwrap();
            if !g.is_zero() && !h.is_zero() {
                let lhs = content(&g.mul(&h)).unwrap();
                let rhs = content(&g).unwrap().mul(&content(&h).unwrap());
                // equal up to a base-field unit
                let ratio = lhs.div(&rhs).unwrap();
                let fr = ratio.as_frac().unwrap();
                prop_assert!(fr.num().is_constant() && fr.den().is_constant());
            }
        }
    }
}
