//! Multivariate gcd by recursive primitive remainder sequences.

use super::poly::{MPoly, Mono};

/// Coefficients of `f` as a polynomial in variable `v`, lowest degree first.
pub(crate) fn coeffs_in(f: &MPoly, v: usize) -> Vec<MPoly> {
    let d = f.degree_in(v).unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<(Mono, crate::coeff::Scalar)>> = vec![Vec::new(); d + 1];
    for (m, c) in f.terms() {
        let k = m[v] as usize;
        let mut m2 = m.clone();
        m2[v] = 0;
        buckets[k].push((m2, c.clone()));
    }
    buckets
        .into_iter()
        .map(|t| MPoly::from_terms(f.ring(), t))
        .collect()
}

pub(crate) fn from_coeffs(cs: &[MPoly], v: usize, like: &MPoly) -> MPoly {
    let ring = like.ring();
    let mut terms = Vec::new();
    for (k, c) in cs.iter().enumerate() {
        for (m, x) in c.terms() {
            let mut m2 = m.clone();
            m2[v] += k as u32;
            terms.push((m2, x.clone()));
        }
    }
    MPoly::from_terms(ring, terms)
}

fn trim(a: &mut Vec<MPoly>) {
    while a.len() > 1 && a.last().unwrap().is_zero() {
        a.pop();
    }
}

fn main_var(f: &MPoly, g: &MPoly) -> Option<usize> {
    (0..f.ring().nvars())
        .rev()
        .find(|&i| f.uses_var(i) || g.uses_var(i))
}

/// gcd of a list, normalized monic.
pub fn gcd_many(list: &[MPoly]) -> MPoly {
    let mut it = list.iter().filter(|p| !p.is_zero());
    let first = match it.next() {
        Some(p) => p.monic(),
        None => {
            return list
                .first()
                .map(|p| MPoly::zero(p.ring()))
                .expect("nonempty list")
        }
    };
    let mut acc = first;
    for p in it {
        if acc.is_one() {
            break;
        }
        acc = gcd(&acc, p);
    }
    acc
}

fn primitive(cs: &[MPoly]) -> (MPoly, Vec<MPoly>) {
    let c = gcd_many(cs);
    if c.is_one() || c.is_zero() {
        return (c, cs.to_vec());
    }
    let out = cs
        .iter()
        .map(|x| x.exact_div(&c).expect("content divides"))
        .collect();
    (c, out)
}

/// Pseudo-remainder of a by b in the main variable.
fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut r);
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = x.mul(lb);
        }
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&lr.mul(bk));
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        if r.is_empty() {
            r.push(MPoly::zero(lb.ring()));
        }
        trim(&mut r);
    }
    r
}

fn is_zero_vec(a: &[MPoly]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Greatest common divisor over the coefficient field, normalized to leading
/// coefficient 1 (zero only when both inputs vanish).
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return MPoly::one(f.ring());
    }
    let v = match main_var(f, g) {
        Some(v) => v,
        None => return MPoly::one(f.ring()),
    };
    let fa = coeffs_in(f, v);
    let ga = coeffs_in(g, v);
    let (cf, mut a) = primitive(&fa);
    let (cg, mut b) = primitive(&ga);
    let c = gcd(&cf, &cg);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = prem(&a, &b);
        if is_zero_vec(&r) {
            break;
        }
        let (_, rp) = primitive(&r);
        a = b;
        b = rp;
    }
    let h = if b.len() == 1 {
        // constant in v: the primitive parts are coprime in v
        MPoly::one(f.ring())
    } else {
        let (_, bp) = primitive(&b);
        from_coeffs(&bp, v, f)
    };
    h.mul(&c).monic()
}

pub fn lcm(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() || g.is_zero() {
        return MPoly::zero(f.ring());
    }
    let d = gcd(f, g);
    f.exact_div(&d).expect("gcd divides").mul(g).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::mpoly::{parse_poly, PolyRing};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let r = PolyRing::with_names(Field::Q, "X", 3);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        assert_eq!(gcd(&p("X1^2-X2^2"), &p("X1^2+2*X1*X2+X2^2")), p("X1+X2"));
        assert_eq!(gcd(&p("2*X1*X3+4"), &p("X1*X3+2")), p("X1*X3+2"));
        assert!(gcd(&p("X1+1"), &p("X2+1")).is_one());
        assert_eq!(lcm(&p("X1*X2"), &p("X2*X3")), p("X1*X2*X3"));
    }

    proptest! {
        #[test]
        fn gcd_recovers_common_factor(c in proptest::collection::vec(-3i64..4, 9)) {
            let r = PolyRing::with_names(Field::fp(101).unwrap(), "X", 3);
            let p = |s: String| parse_poly(&r, &s).unwrap();
            let h = p(format!("X1*X2+{}*X3+{}", c[0], c[1]));
            let a = p(format!("{}*X1^2+X3*X2+{}", c[2], c[3]));
            let b = p(format!("X2^2+{}*X1+{}*X3+{}", c[4], c[5], c[6]));
            let g = gcd(&h.mul(&a), &h.mul(&b));
            prop_assert!(h.mul(&a).exact_div(&g).is_ok());
            prop_assert!(h.mul(&b).exact_div(&g).is_ok());
            prop_assert!(g.exact_div(&h.monic()).is_ok());
        }
    }
}
