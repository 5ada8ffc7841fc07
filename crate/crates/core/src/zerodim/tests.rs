use proptest::prelude::*;

use super::*;
use crate::groebner::Ideal;
use crate::mpoly::{parse_poly, MonomialOrder, PolyRing};

fn ring_over(field: Field, names: &[&str]) -> Ring {
    PolyRing::new(
        field,
        names.iter().map(|s| s.to_string()).collect(),
        MonomialOrder::Grevlex,
    )
}

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| parse_poly(r, g).unwrap()).collect())
}

fn check_reconstruction(r: &Ring, m: &Ideal, data: &PrimitiveElementData) {
    let gb = m.gb().unwrap();
    let beta = data.beta(r);
    assert!(gb.contains(&upoly_at(&data.beta_minpoly, &beta)).unwrap());
    let p0 = upoly_at(&data.denominator, &beta);
    assert!(!gb.contains(&p0).unwrap());
    for (i, pi) in data.numerators.iter().enumerate() {
        let lhs = MPoly::var(r, i).mul(&p0).sub(&upoly_at(pi, &beta));
        assert!(
            gb.contains(&lhs).unwrap(),
            "reconstruction fails for X{}",
            i + 1
        );
    }
}

#[test]
fn quotient_basis_examples() {
    let r = ring_over(Field::Q, &["X1", "X2"]);
    let qb = quotient_basis(&ideal(&r, &["X1^2 - 1", "X2"])).unwrap();
    let shown: Vec<String> = qb
        .monomials()
        .iter()
        .map(|m| MPoly::monomial(&r, m, Field::Q.one()).to_string())
        .collect();
    assert_eq!(shown, vec!["1", "X1"]);
    assert_eq!(quotient_basis(&ideal(&r, &["X1", "X2"])).unwrap().dim(), 1);
    assert!(matches!(
        quotient_basis(&ideal(&r, &["X1*X2"])),
        Err(Error::PositiveDimensional)
    ));
    assert_eq!(quotient_basis(&ideal(&r, &["1"])).unwrap().dim(), 0);
}

#[test]
fn multiplication_matrix_matches_minpoly() {
    let r = ring_over(Field::Q, &["X"]);
    let qb = quotient_basis(&ideal(&r, &["X^3 - 2*X + 5"])).unwrap();
    let x = MPoly::var(&r, 0);
    let m = qb.mul_matrix(&x).unwrap();
    // companion matrix: last column is (-5, 2, 0)
    assert_eq!(m[0][2], Field::Q.from_i64(-5));
    assert_eq!(m[1][2], Field::Q.from_i64(2));
    assert_eq!(
        qb.minpoly(&x).unwrap(),
        UPoly::from_ints(&Field::Q, &[5, -2, 0, 1])
    );
}

#[test]
fn primitive_element_examples() {
    let r = ring_over(Field::Q, &["X1", "X2"]);
    let m = ideal(&r, &["X1^2 - 2", "X2^2 - 3"]);
    let data = primitive_element(&m, &m).unwrap();
    let one = Field::Q.one();
    assert_eq!(data.direction, vec![one.clone(), one.clone()]);
    assert_eq!(
        data.beta_minpoly,
        UPoly::from_ints(&Field::Q, &[1, 0, -10, 0, 1])
    );
    check_reconstruction(&r, &m, &data);
    let qb = quotient_basis(&m).unwrap();
    assert_eq!(qb.minpoly(&MPoly::var(&r, 0)).unwrap().deg(), 2);

    let r1 = ring_over(Field::Q, &["X"]);
    let m1 = ideal(&r1, &["X^3 - 2"]);
    let d1 = primitive_element(&m1, &m1).unwrap();
    assert_eq!(d1.direction, vec![one]);
    check_reconstruction(&r1, &m1, &d1);
    // P1/P0 is T itself in the residue field
    let t = UPoly::x(&Field::Q);
    assert!(d1.numerators[0]
        .sub(&t.mul(&d1.denominator))
        .rem(&d1.beta_minpoly)
        .is_zero());
}

#[test]
fn primitive_element_rejects_non_containing() {
    let r = ring_over(Field::Q, &["X"]);
    let i = ideal(&r, &["X^2 - 1"]);
    let m = ideal(&r, &["X - 2"]);
    assert!(matches!(
        primitive_element(&i, &m),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn min_root_exponent_examples() {
    assert_eq!(min_root_exponent(12, 2), 2);
    assert_eq!(min_root_exponent(7, 2), 0);
    assert_eq!(min_root_exponent(27 * 5, 3), 3);
}

fn gb_strings(m: &MaximalIdeal) -> Vec<String> {
    m.gb.polys().iter().map(|g| g.to_string()).collect()
}

#[test]
fn extract_maximal_examples() {
    let r = ring_over(Field::Q, &["X"]);
    let ms = extract_maximal(&ideal(&r, &["X^2 - 1"])).unwrap();
    let mut shown: Vec<Vec<String>> = ms.iter().map(gb_strings).collect();
    shown.sort();
    assert_eq!(
        shown,
        vec![vec!["X + 1".to_string()], vec!["X - 1".to_string()]]
    );

    let ms = extract_maximal(&ideal(&r, &["X^2 + 1"])).unwrap();
    assert_eq!(ms.len(), 1);
    assert_eq!(ms[0].residue_degree, 2);
    assert_eq!(gb_strings(&ms[0]), vec!["X^2 + 1"]);

    let r2 = ring_over(Field::Q, &["X1", "X2"]);
    let i = ideal(&r2, &["X1^2 - 2", "X2^2 - 2"]);
    let ms = extract_maximal(&i).unwrap();
    assert_eq!(
        ms.iter().map(|m| m.residue_degree).collect::<Vec<_>>(),
        vec![2, 2]
    );
    for m in &ms {
        assert!(m.gb.contains_all(i.gens()).unwrap());
        check_reconstruction(&r2, &m.ideal(), &m.primitive);
    }
    let sum = ms[0].ideal().add(&ms[1].ideal());
    assert!(sum.is_unit().unwrap());
}

#[test]
fn extract_maximal_non_radical() {
    let r = ring_over(Field::Q, &["X", "Y"]);
    let ms = extract_maximal(&ideal(&r, &["(X - 1)^2*(X + 2)", "Y - X"])).unwrap();
    assert_eq!(ms.len(), 2);
    for m in &ms {
        assert_eq!(m.residue_degree, 1);
        assert_eq!(quotient_basis(&m.ideal()).unwrap().dim(), 1);
    }
    let r1 = ring_over(Field::Q, &["X"]);
    let ms = extract_maximal(&ideal(&r1, &["X^2"])).unwrap();
    assert_eq!(gb_strings(&ms[0]), vec!["X"]);
}

#[test]
fn extract_maximal_small_field_needs_splitting() {
    // four rational points over F2: no linear form separates them
    let f2 = Field::fp(2).unwrap();
    let r = ring_over(f2.clone(), &["X1", "X2"]);
    let i = ideal(&r, &["X1^2 + X1", "X2^2 + X2"]);
    let rad = quotient_basis(&i).unwrap();
    assert_eq!(rad.dim(), 4);
    let ms = extract_maximal(&i).unwrap();
    assert_eq!(ms.len(), 4);
    for m in &ms {
        assert_eq!(m.residue_degree, 1);
        assert!(m.gb.contains_all(i.gens()).unwrap());
    }
    for a in 0..4 {
        for b in a + 1..4 {
            assert!(ms[a].ideal().add(&ms[b].ideal()).is_unit().unwrap());
        }
    }

    let f3 = Field::fp(3).unwrap();
    let r3 = ring_over(f3, &["X"]);
    let ms = extract_maximal(&ideal(&r3, &["X^2 + 1"])).unwrap();
    assert_eq!(ms.len(), 1);
    assert_eq!(ms[0].residue_degree, 2);
}

#[test]
fn radical_drops_repeated_factors() {
    let r = ring_over(Field::Q, &["X", "Y"]);
    let rad = radical(&ideal(&r, &["X^2", "Y^3 - Y^2"])).unwrap();
    assert_eq!(quotient_basis(&rad).unwrap().dim(), 2);
    assert!(rad.contains(&parse_poly(&r, "X").unwrap()).unwrap());
}

#[test]
fn direction_candidates_start_on_moment_curve() {
    let c = direction_candidates(&Field::Q, 3, 5);
    let shown: Vec<Vec<String>> = c
        .iter()
        .map(|v| v.iter().map(|x| format!("{x}")).collect())
        .collect();
    assert_eq!(shown[0], vec!["1", "0", "0"]);
    assert_eq!(shown[2], vec!["1", "2", "4"]);
    let f2 = Field::fp(2).unwrap();
    let c2 = direction_candidates(&f2, 2, 100);
    assert_eq!(c2.len(), 3);
}

fn f7_points(gens: &[MPoly]) -> usize {
    let f = gens[0].field().clone();
    let mut count = 0;
    for a in 0..7 {
        for b in 0..7 {
            let pt = [f.from_i64(a), f.from_i64(b)];
            if gens.iter().all(|g| g.eval(&pt).unwrap().is_zero()) {
                count += 1;
            }
        }
    }
    count
}

fn zero_dim_strategy() -> impl Strategy<Value = Vec<MPoly>> {
    let r = ring_over(Field::fp(7).unwrap(), &["X1", "X2"]);
    let lower = proptest::collection::vec(((0u32..2, 0u32..2), -3i64..4), 0..4);
    (
        2u32..4,
        lower.clone(),
        lower,
        proptest::option::of(((0u32..2, 0u32..2), -3i64..4)),
    )
        .prop_map(move |(d, l1, l2, extra)| {
            let f = r.field().clone();
            let mk = |lead: [u32; 2], low: &[((u32, u32), i64)]| {
                let mut terms: Vec<(Mono, Scalar)> =
                    vec![(lead.iter().copied().collect(), f.one())];
                terms.extend(
                    low.iter()
                        .map(|((a, b), c)| ([*a, *b].into_iter().collect(), f.from_i64(*c))),
                );
                MPoly::from_terms(&r, terms)
            };
            let mut gens = vec![mk([d, 0], &l1), mk([0, d], &l2)];
            if let Some(((a, b), c)) = extra.filter(|(m, _)| *m != (1, 1)) {
                gens.push(mk([1, 1], &[((a, b), c)]));
            }
            gens
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extraction_invariants(gens in zero_dim_strategy()) {
        let r = gens[0].ring().clone();
        let i = Ideal::new(&r, gens.clone());
        let qb = quotient_basis(&i).unwrap();
        let d = gens.iter().map(|g| g.degree().unwrap()).max().unwrap() as usize;
        prop_assert!(qb.dim() <= d * d);
        let ms = extract_maximal(&i).unwrap();
        let rad = quotient_basis(&radical(&i).unwrap()).unwrap();
        let mut total = 0;
        for m in &ms {
            prop_assert!(m.gb.contains_all(&gens).unwrap());
            prop_assert_eq!(quotient_basis(&m.ideal()).unwrap().dim(), m.residue_degree);
            prop_assert!(m.separable);
            prop_assert!(m.primitive.max_degree() <= qb.dim());
            check_reconstruction(&r, &m.ideal(), &m.primitive);
            total += m.residue_degree;
        }
        prop_assert_eq!(total, rad.dim());
        prop_assert!(total <= qb.dim());
        for a in 0..ms.len() {
            for b in a + 1..ms.len() {
                prop_assert!(ms[a].ideal().add(&ms[b].ideal()).is_unit().unwrap());
            }
        }
        let rational = ms.iter().filter(|m| m.residue_degree == 1).count();
        prop_assert_eq!(rational, f7_points(&gens));
    }

    #[test]
    fn min_root_exponent_definition(p in prop::sample::select(vec![2u64, 3, 5, 7]), e in 0u32..5, m in 1u64..50) {
        let m = if m % p == 0 { m + 1 } else { m };
        prop_assert_eq!(min_root_exponent(p.pow(e) * m, p), e);
    }
}
