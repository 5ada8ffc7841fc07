use normpit_core::curve::OrderPresentation;
use normpit_core::{MPoly, Scalar};

use crate::division::{is_reduced_gb, schoolbook_divide};
use crate::linear::solve;
use crate::Result;

const MAX_DEGREE: usize = 6;
const MAX_COEFF_DEGREE: u32 = 12;

/// The smallest k and a monic T^k + Σ_{i<k} aᵢ(α)·Tⁱ in the relation ideal, with
/// deg aᵢ ≤ `coeff_bound`, found by linear algebra on remainders modulo the relations.
pub fn monic_relation(o: &OrderPresentation, var: usize, max_k: usize, coeff_bound: u32) -> Result<Option<MPoly>> {
    let ring = &o.ring;
    let field = ring.field().clone();
    let rel = o.relations.polys();
    let nf = |p: &MPoly| -> Result<MPoly> { Ok(schoolbook_divide(p, rel)?.remainder) };
    let t = MPoly::var(ring, var);
    let alpha = MPoly::var(ring, o.alpha_var);
    for k in 1..=max_k {
        let mut cols: Vec<MPoly> = Vec::new();
        let mut shapes: Vec<MPoly> = Vec::new();
        for i in 0..k {
            for e in 0..=coeff_bound {
                let shape = alpha.pow(e).mul(&t.pow(i as u32));
                cols.push(nf(&shape)?);
                shapes.push(shape);
            }
        }
        let target = nf(&t.pow(k as u32))?;
        let mut monos: Vec<Vec<u32>> = Vec::new();
        for p in cols.iter().chain([&target]) {
            for (m, _) in p.terms() {
                if !monos.iter().any(|x| x[..] == m[..]) {
                    monos.push(m.to_vec());
                }
            }
        }
        let a: Vec<Vec<Scalar>> = monos.iter().map(|m| cols.iter().map(|c| c.coeff(m)).collect()).collect();
        let b: Vec<Scalar> = monos.iter().map(|m| target.coeff(m).neg()).collect();
        if let Some(x) = solve(&a, &b, &field)? {
            let rel = shapes.iter().zip(x).fold(t.pow(k as u32), |acc, (s, c)| acc.add(&s.scale(&c)));
            return Ok(Some(rel));
        }
    }
    Ok(None)
}

/// Every generator of the order is integral over K[α] and every relation vanishes on the
/// generators' values in the function field.
pub fn integrality_witness_check(o: &OrderPresentation) -> Result<bool> {
    if !is_reduced_gb(o.relations.polys())? {
        return Ok(false);
    }
    let alg = o.algebra();
    for h in o.relations.polys() {
        if !alg.is_zero(&o.elem_of(h)?) {
            return Ok(false);
        }
    }
    for var in (0..o.ring.nvars()).filter(|&v| v != o.alpha_var) {
        if monic_relation(o, var, MAX_DEGREE, MAX_COEFF_DEGREE)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use normpit_core::curve::{initial_order, trager_normalize, CurveContext};
    use normpit_core::mpoly::parse_poly;
    use normpit_core::{Field, MonomialOrder, PolyRing};

    fn order(f: &str, field: Field) -> OrderPresentation {
        let r = PolyRing::new(field.clone(), vec!["X".into(), "Y".into()], MonomialOrder::Grevlex);
        let ctx = CurveContext::with_direction(&parse_poly(&r, f).unwrap(), field.one(), field.zero()).unwrap();
        trager_normalize(&ctx).unwrap()
    }

    #[test]
    fn node_generator_is_integral() {
        let o = order("Y^2 - X^2*(X + 1)", Field::Q);
        assert!(integrality_witness_check(&o).unwrap());
        let rel = monic_relation(&o, 2, 4, 4).unwrap().unwrap();
        assert_eq!(rel, parse_poly(&o.ring, "T3^2 - T1 - 1").unwrap());
    }

    #[test]
    fn cusp_and_parabola() {
        let cusp = order("Y^2 - X^3", Field::Fp(7));
        assert_eq!(monic_relation(&cusp, 2, 4, 4).unwrap().unwrap(), parse_poly(&cusp.ring, "T3^2 - T1").unwrap());
        assert!(integrality_witness_check(&cusp).unwrap());
        let r = PolyRing::new(Field::Q, vec!["X".into(), "Y".into()], MonomialOrder::Grevlex);
        let ctx = CurveContext::with_direction(&parse_poly(&r, "Y - X^2").unwrap(), Field::Q.one(), Field::Q.zero()).unwrap();
        let o = initial_order(&ctx).unwrap();
        assert!(integrality_witness_check(&o).unwrap());
        assert_eq!(monic_relation(&o, 1, 2, 4).unwrap().unwrap().degree(), Some(2));
    }
}
