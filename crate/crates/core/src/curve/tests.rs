use proptest::prelude::*;

use super::*;
use crate::mpoly::parse_poly;

fn plane(field: Field) -> Ring {
    PolyRing::new(field, vec!["X".into(), "Y".into()], MonomialOrder::Grevlex)
}

fn curve(field: Field, f: &str) -> MPoly {
    parse_poly(&plane(field), f).unwrap()
}

fn same_ideal(a: &Ideal, b: &Ideal) -> bool {
    a.contains_ideal(b).unwrap() && b.contains_ideal(a).unwrap()
}

fn node_ctx(field: Field) -> CurveContext {
    let f = curve(field.clone(), "Y^2 - X^2*(X + 1)");
    CurveContext::with_direction(&f, field.one(), field.zero()).unwrap()
}

#[test]
fn univariate_discriminants() {
    let r = PolyRing::new(
        Field::Q,
        vec!["T".into(), "a".into(), "b".into()],
        MonomialOrder::Grevlex,
    );
    let f = parse_poly(&r, "T^2 + a*T + b").unwrap();
    assert_eq!(
        disc_univariate(&f, 0).unwrap(),
        parse_poly(&r, "a^2 - 4*b").unwrap()
    );
    let cubic = parse_poly(&r, "T^3 + a*T + b").unwrap();
    assert_eq!(
        disc_univariate(&cubic, 0).unwrap(),
        parse_poly(&r, "-4*a^3 - 27*b^2").unwrap()
    );
    let lead = parse_poly(&r, "2*T^2 + b").unwrap();
    assert!(disc_univariate(&lead, 0).is_err());
}

#[test]
fn node_minpoly_and_discriminant() {
    let ctx = node_ctx(Field::Q);
    assert_eq!(ctx.degree(), 2);
    assert_eq!(ctx.minpoly().to_string(), "T^2 - A^3 - A^2");
    let o = initial_order(&ctx).unwrap();
    // disc of T^2 - α^2(α+1) is 4α^2(α+1), made monic
    assert_eq!(o.disc_gen, UPoly::from_ints(&Field::Q, &[0, 0, 1, 1]));
    let d = disc_univariate(ctx.minpoly(), 0).unwrap();
    assert_eq!(d.to_string(), "4*A^3 + 4*A^2");
}

#[test]
fn trace_form_discriminant() {
    let alg = FunctionAlgebra::new(
        &Field::Q,
        &[
            UPoly::from_ints(&Field::Q, &[0, -1]),
            UPoly::zero(&Field::Q),
            UPoly::one(&Field::Q),
        ],
    )
    .unwrap();
    // X̄^2 = α: the trace matrix of (1, X̄) is [[2, 0], [0, 2α]]
    let (num, den) = trace_discriminant(&alg, &[alg.one(), alg.generator()]).unwrap();
    assert_eq!(
        num.exact_div(&den).unwrap(),
        UPoly::from_ints(&Field::Q, &[0, 4])
    );
    let (num, _) = trace_discriminant(&alg, &[alg.one(), alg.one()]).unwrap();
    assert!(num.is_zero());
    // change of basis by A = [[1, 0], [1, 3]] multiplies by det(A)^2 = 9
    let b = alg
        .add(
            &alg.one(),
            &alg.scale(
                &alg.generator(),
                &UPoly::constant(&Field::Q, Field::Q.from_i64(3)),
            )
            .unwrap(),
        )
        .unwrap();
    let (num, den) = trace_discriminant(&alg, &[alg.one(), b]).unwrap();
    assert_eq!(
        num.exact_div(&den).unwrap(),
        UPoly::from_ints(&Field::Q, &[0, 36])
    );
}

#[test]
fn disc_tuple_flags_dependence() {
    let ctx = node_ctx(Field::Q);
    let o = initial_order(&ctx).unwrap();
    let r = &o.ring;
    let one = MPoly::one(r);
    let t2 = MPoly::var(r, 1);
    let (d, degenerate) = disc_tuple(&o, &[one.clone(), t2]).unwrap();
    assert!(!degenerate);
    assert_eq!(d.monic(), o.disc_gen);
    let (d, degenerate) = disc_tuple(&o, &[one.clone(), one]).unwrap();
    assert!(degenerate && d.is_zero());
}

fn figure_one(o: &OrderPresentation) -> Ideal {
    let gens = ["T2^2 - T1^2*(T1 + 1)", "T1*T3 - T2", "T3^2 - (T1 + 1)"];
    Ideal::new(
        &o.ring,
        gens.iter()
            .map(|g| parse_poly(&o.ring, g).unwrap())
            .collect(),
    )
}

#[test]
fn node_normalizes_to_the_standard_presentation() {
    for field in [Field::Q, Field::fp(7).unwrap()] {
        let ctx = node_ctx(field);
        let o = trager_normalize(&ctx).unwrap();
        assert_eq!(o.steps.len(), 1);
        assert_eq!(o.steps[0].adjoined, "Y / X");
        assert!(same_ideal(&o.ideal(), &figure_one(&o)));
        assert_eq!(o.disc_degree(), 1);
        assert!(is_integrally_closed(&o).unwrap().0);
        // the new generator is integral
        let rel = integral_relation(&o, 2).unwrap();
        assert_eq!(rel, parse_poly(rel.ring(), "T3^2 - T1 - 1").unwrap());
    }
}

#[test]
fn cusp_and_conic_step_counts() {
    for field in [Field::Q, Field::fp(7).unwrap()] {
        let cusp = curve(field.clone(), "Y^2 - X^3");
        let ctx = CurveContext::with_direction(&cusp, field.one(), field.zero()).unwrap();
        let o = trager_normalize(&ctx).unwrap();
        assert_eq!(o.steps.len(), 1);
        // the closure is K[Y/X] with (Y/X)^2 = X, so disc(1, Y/X) = 4X
        assert_eq!(o.disc_degree(), 1);
        assert_eq!(o.steps[0].adjoined, "Y / X");

        let conic = curve(field.clone(), "X^2 + Y^2 - 1");
        let ctx = CurveContext::new(&conic).unwrap();
        let o = trager_normalize(&ctx).unwrap();
        assert!(o.steps.is_empty());

        let parabola = curve(field.clone(), "Y - X^2");
        let o = trager_normalize(&CurveContext::new(&parabola).unwrap()).unwrap();
        assert!(o.steps.is_empty());
    }
}

#[test]
fn tacnode_drops_discriminant_each_step() {
    let f = curve(Field::Q, "Y^2 - X^4 - X^5");
    let ctx = CurveContext::with_direction(&f, Field::Q.one(), Field::Q.zero()).unwrap();
    let o = trager_normalize(&ctx).unwrap();
    assert_eq!(o.steps.len(), 2);
    let mut prev = initial_order(&ctx).unwrap().disc_degree();
    for s in o.steps.iter().skip(1) {
        assert!(s.disc_degree + 2 <= prev);
        prev = s.disc_degree;
    }
    assert!(o.disc_degree() + 2 <= prev);
    assert!(is_integrally_closed(&o).unwrap().0);
}

#[test]
fn general_direction_node() {
    let f = curve(Field::Q, "Y^2 - X^2*(X + 1)");
    let ctx = CurveContext::new(&f).unwrap();
    assert_eq!(ctx.degree(), 3);
    let o = trager_normalize(&ctx).unwrap();
    assert!(is_integrally_closed(&o).unwrap().0);
    let o0 = initial_order(&ctx).unwrap();
    assert!(o0.disc_degree() >= o.disc_degree() + 2);
}

#[test]
fn reducible_and_non_monic_curves_are_rejected() {
    let f = curve(Field::Q, "X*Y");
    assert!(CurveContext::with_direction(&f, Field::Q.one(), Field::Q.zero()).is_err());
    let g = curve(Field::Q, "(Y - X)*(Y + X) - 1");
    assert!(CurveContext::new(&g).is_ok());
    let h = curve(Field::Q, "Y^2 - X^2");
    assert!(CurveContext::new(&h).is_err());
}

#[test]
fn localization_examples() {
    let r = plane(Field::Q);
    let i = Ideal::new(&r, vec![parse_poly(&r, "X*Y - 1").unwrap()]);
    let loc = localization_presentation(&i, &parse_poly(&r, "X").unwrap()).unwrap();
    assert_eq!(loc.ring().nvars(), 3);
    let u = MPoly::var(loc.ring(), 2);
    let y = MPoly::var(loc.ring(), 1);
    // 1/X = Y in this ring
    assert!(loc.contains(&u.sub(&y)).unwrap());
    let j = Ideal::new(&r, vec![parse_poly(&r, "X").unwrap()]);
    assert!(localization_presentation(&j, &parse_poly(&r, "X^2").unwrap()).is_err());
}

fn node_points(o: &OrderPresentation) -> Vec<MaximalIdeal> {
    let t1 = MPoly::var(&o.ring, 0);
    maximal_ideals_containing(o, &[t1]).unwrap()
}

#[test]
fn node_valuations() {
    let ctx = node_ctx(Field::Q);
    let o = trager_normalize(&ctx).unwrap();
    let points = node_points(&o);
    assert_eq!(points.len(), 2);
    let x = MPoly::var(&o.ring, 0);
    let y = MPoly::var(&o.ring, 1);
    let z = MPoly::var(&o.ring, 2);
    let mut unit_quotient = 0;
    for m in &points {
        let v = ValuationWitness::new(&o, m).unwrap();
        assert_eq!(v.ord(&x).unwrap(), Some(1));
        assert_eq!(v.ord(&y).unwrap(), Some(1));
        assert_eq!(v.ord_fraction(&y, &x).unwrap(), Some(0));
        if v.ord(&z).unwrap() == Some(0) {
            unit_quotient += 1;
        }
        assert_eq!(v.ord(&MPoly::zero(&o.ring)).unwrap(), None);
        assert_eq!(ord_at(&o, m, &x).unwrap(), Some(1));
    }
    assert_eq!(unit_quotient, 2);
    let o0 = initial_order(&ctx).unwrap();
    let m0 = maximal_ideals_containing(&o0, &[MPoly::var(&o0.ring, 0)]).unwrap();
    assert!(matches!(
        ord_at(&o0, &m0[0], &MPoly::var(&o0.ring, 0)),
        Err(Error::NotClosed)
    ));
}

#[test]
fn normalization_is_idempotent() {
    let ctx = node_ctx(Field::fp(7).unwrap());
    let o = trager_normalize(&ctx).unwrap();
    let (closed, witnesses) = is_integrally_closed(&o).unwrap();
    assert!(closed && witnesses.is_empty());
}

fn small_poly(r: &Ring, coeffs: &[i64]) -> MPoly {
    let f = r.field().clone();
    let monos = [[0u32, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let terms = monos
        .iter()
        .zip(coeffs)
        .map(|(m, c)| (m.iter().copied().collect(), f.from_i64(*c)))
        .collect();
    MPoly::from_terms(r, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn valuation_axioms(a in proptest::collection::vec(-3i64..4, 4), b in proptest::collection::vec(-3i64..4, 4)) {
        let ctx = node_ctx(Field::Q);
        let o = trager_normalize(&ctx).unwrap();
        let r = o.ring.clone();
        let (f, g) = (small_poly(&r, &a), small_poly(&r, &b));
        for m in node_points(&o) {
            let v = ValuationWitness::new(&o, &m).unwrap();
            let (vf, vg) = (v.ord(&f).unwrap(), v.ord(&g).unwrap());
            let vfg = v.ord(&f.mul(&g)).unwrap();
            match (vf, vg) {
                (Some(x), Some(y)) => prop_assert_eq!(vfg, Some(x + y)),
                _ => prop_assert_eq!(vfg, None),
            }
            let vs = v.ord(&f.add(&g)).unwrap();
            if let (Some(x), Some(y)) = (vf, vg) {
                prop_assert!(vs.is_none_or(|s| s >= x.min(y)));
            }
        }
    }
}
