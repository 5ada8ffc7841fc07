use normpit_core::{MPoly, Scalar};

use crate::Result;

/// Leading exponent and coefficient under the ring's order, found by a linear scan.
pub fn lead(f: &MPoly) -> Option<(Vec<u32>, Scalar)> {
    let ring = f.ring();
    f.terms()
        .iter()
        .max_by(|a, b| ring.cmp(&a.0, &b.0))
        .map(|(m, c)| (m.to_vec(), c.clone()))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<MPoly>,
    pub remainder: MPoly,
}

/// The textbook multivariate division: the leading term goes to the first divisor whose
/// leading monomial divides it, else to the remainder.
pub fn schoolbook_divide(f: &MPoly, divisors: &[MPoly]) -> Result<Division> {
    let ring = f.ring();
    let leads: Vec<Option<(Vec<u32>, Scalar)>> = divisors.iter().map(lead).collect();
    let mut quotients = vec![MPoly::zero(ring); divisors.len()];
    let mut remainder = MPoly::zero(ring);
    let mut p = f.clone();
    while let Some((m, c)) = lead(&p) {
        let hit = leads.iter().enumerate().find_map(|(i, l)| match l {
            Some((lm, lc)) if divides(lm, &m) => Some((i, lm, lc)),
            _ => None,
        });
        match hit {
            Some((i, lm, lc)) => {
                let e: Vec<u32> = m.iter().zip(lm).map(|(a, b)| a - b).collect();
                let t = MPoly::monomial(ring, &e, c.div(lc)?);
                quotients[i] = quotients[i].add(&t);
                p = p.sub(&t.mul(&divisors[i]));
            }
            None => {
                let t = MPoly::monomial(ring, &m, c);
                remainder = remainder.add(&t);
                p = p.sub(&t);
            }
        }
    }
    Ok(Division { quotients, remainder })
}

pub fn spoly(f: &MPoly, g: &MPoly) -> Result<MPoly> {
    let ring = f.ring();
    let ((mf, cf), (mg, cg)) = match (lead(f), lead(g)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(MPoly::zero(ring)),
    };
    let l: Vec<u32> = mf.iter().zip(&mg).map(|(a, b)| *a.max(b)).collect();
    let sf: Vec<u32> = l.iter().zip(&mf).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = l.iter().zip(&mg).map(|(a, b)| a - b).collect();
    let a = f.mul(&MPoly::monomial(ring, &sf, cf.inv()?));
    let b = g.mul(&MPoly::monomial(ring, &sg, cg.inv()?));
    Ok(a.sub(&b))
}

/// Buchberger's criterion plus reducedness: every S-polynomial divides to zero, every
/// leading coefficient is 1 and no term of an element is divisible by another's leading
/// monomial.
pub fn is_reduced_gb(basis: &[MPoly]) -> Result<bool> {
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if !schoolbook_divide(&spoly(f, g)?, basis)?.remainder.is_zero() {
                return Ok(false);
            }
        }
    }
    for (i, f) in basis.iter().enumerate() {
        let Some((_, c)) = lead(f) else { return Ok(false) };
        if !c.is_one() {
            return Ok(false);
        }
        for (j, g) in basis.iter().enumerate() {
            let lg = lead(g).expect("nonzero").0;
            if i != j && f.terms().iter().any(|(m, _)| divides(&lg, m)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use normpit_core::mpoly::parse_poly;
    use normpit_core::{Field, MonomialOrder, PolyRing};

    #[test]
    fn division_identity_and_lex_example() {
        let r = PolyRing::new(Field::Q, vec!["x".into(), "y".into()], MonomialOrder::Lex);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let f = p("x^2*y + x*y^2 + y^2");
        let gs = [p("x*y - 1"), p("y^2 - 1")];
        let d = schoolbook_divide(&f, &gs).unwrap();
        assert_eq!(d.quotients[0], p("x + y"));
        assert_eq!(d.quotients[1], p("1"));
        assert_eq!(d.remainder, p("x + y + 1"));
        let back = d.quotients.iter().zip(&gs).fold(d.remainder.clone(), |a, (q, g)| a.add(&q.mul(g)));
        assert_eq!(back, f);
    }

    #[test]
    fn reduced_basis_recognition() {
        let r = PolyRing::new(Field::Q, vec!["x".into(), "y".into()], MonomialOrder::Grevlex);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        assert!(is_reduced_gb(&[p("x - y"), p("y^2 - 1")]).unwrap());
        // not a Gröbner basis: the S-polynomial leaves x^2 - y
        assert!(!is_reduced_gb(&[p("x*y - 1"), p("y^2 - x")]).unwrap());
        assert!(!is_reduced_gb(&[p("2*x"), p("y")]).unwrap());
    }

    fn small_poly(r: &normpit_core::Ring) -> impl proptest::strategy::Strategy<Value = MPoly> {
        use proptest::prelude::*;
        let r = r.clone();
        prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 0..5).prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .map(|(c, a, b)| (smallvec_mono(&[a, b]), r.field().from_i64(c)))
                .collect();
            MPoly::from_terms(&r, terms)
        })
    }

    fn smallvec_mono(e: &[u32]) -> normpit_core::mpoly::Mono {
        e.iter().copied().collect()
    }

    proptest::proptest! {
        #[test]
        fn quotients_and_remainder_rebuild_the_dividend(
            (f, g1, g2) in {
                let r = PolyRing::new(Field::Fp(11), vec!["x".into(), "y".into()], MonomialOrder::Grevlex);
                (small_poly(&r), small_poly(&r), small_poly(&r))
            }
        ) {
            let gs: Vec<MPoly> = [g1, g2].into_iter().filter(|g| !g.is_zero()).collect();
            let d = schoolbook_divide(&f, &gs).unwrap();
            let back = d.quotients.iter().zip(&gs).fold(d.remainder.clone(), |a, (q, g)| a.add(&q.mul(g)));
            proptest::prop_assert_eq!(back, f);
            for (m, _) in d.remainder.terms() {
                for g in &gs {
                    let lm = lead(g).unwrap().0;
                    proptest::prop_assert!(!divides(&lm, m));
                }
            }
        }
    }
}
