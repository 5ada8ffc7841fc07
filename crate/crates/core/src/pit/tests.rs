use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::sample::{cancelling_circuit, random_circuit, random_factor, ring_for, CircuitShape};
use super::*;
use crate::groebner::{krull_dimension, Ideal};
use crate::mpoly::parse_poly;

fn f7() -> Field {
    Field::fp(7).unwrap()
}

fn ring3(field: Field) -> Ring {
    PolyRing::with_names(field, "X", 3)
}

fn poly(r: &Ring, s: &str) -> MPoly {
    parse_poly(r, s).unwrap()
}

fn circuit(r: &Ring, summands: &[&[&str]], sf: usize) -> Circuit {
    let s = summands
        .iter()
        .map(|fs| fs.iter().map(|f| poly(r, f)).collect())
        .collect();
    Circuit::new(r, s, Some(sf)).unwrap()
}

fn shape(n: usize, d: usize, delta: usize, p: u64) -> CircuitShape {
    CircuitShape {
        n,
        d,
        delta,
        field: Field::fp(p).unwrap(),
        homogeneous: true,
    }
}

fn ints(field: &Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| field.from_i64(x)).collect()
}

#[test]
fn restriction_of_a_coordinate() {
    let r = PolyRing::with_names(Field::Q, "X", 2);
    let plane = PlaneRestriction::symbolic(&Field::Q, 2, PlaneMode::Affine).unwrap();
    let x1 = restrict(&MPoly::var(&r, 0), &plane).unwrap();
    let t = plane.target_ring();
    let expected = MPoly::constant(&t, plane.coefficient(0, 0))
        .add(&MPoly::var(&t, 0).scale(&plane.coefficient(1, 0)))
        .add(&MPoly::var(&t, 1).scale(&plane.coefficient(2, 0)));
    assert_eq!(x1, expected);
    assert_eq!(x1.to_string(), "(Y1_1)*Z1 + (Y2_1)*Z2 + (Y0_1)");
    let c = restrict(&MPoly::from_int(&r, 5), &plane).unwrap();
    assert!(c.is_constant() && c.constant_term() == plane.field().from_i64(5));
}

#[test]
fn projective_restriction_keeps_degree_and_homogeneity() {
    let r = ring3(f7());
    let f = poly(&r, "X1^2*X2 + 3*X2*X3^2 - X3^3");
    let a = PlaneRestriction::at_point(
        ints(&f7(), &[1, 2, 0, 3, 1, 5, 0, 4, 1]),
        PlaneMode::Projective,
    )
    .unwrap();
    let g = restrict(&f, &a).unwrap();
    assert!(g.is_homogeneous());
    assert_eq!(g.degree(), Some(3));
    let sym = PlaneRestriction::symbolic(&f7(), 3, PlaneMode::Projective).unwrap();
    let gs = restrict(&f, &sym).unwrap();
    assert!(gs.is_homogeneous() && gs.degree() == Some(3));
    // specializing the symbolic restriction agrees with restricting at the point
    let pt = a.point().unwrap().to_vec();
    let specialized = restrict(&f, &sym.specialize(&pt).unwrap()).unwrap();
    assert_eq!(specialized, g);
}

#[test]
fn charts_dehomogenize_the_projective_restriction() {
    let r = ring3(f7());
    let f = poly(&r, "X1*X2 - X3^2");
    let a =
        PlaneRestriction::at_point(ints(&f7(), &[1, 0, 2, 0, 1, 1, 3, 1, 0]), PlaneMode::Affine)
            .unwrap();
    assert_eq!(
        restrict_chart(&f, &a, 0).unwrap(),
        restrict(&f, &a)
            .unwrap()
            .reorder(&restrict_chart(&f, &a, 0).unwrap().ring().clone())
    );
    for chart in 1..3 {
        let g = restrict_chart(&f, &a, chart).unwrap();
        assert_eq!(g.ring().nvars(), 2);
        assert!(g.degree().unwrap() <= 2);
    }
}

#[test]
fn restricted_separability() {
    let f2 = Field::fp(2).unwrap();
    let r = ring3(f2.clone());
    assert!(check_restricted_separability(&poly(&r, "X1"), &f2.one(), &f2.one()).unwrap());
    let f3 = Field::fp(3).unwrap();
    let r3 = ring3(f3.clone());
    let cubic = poly(&r3, "X1^3 + X1*X2*X3 + X2^2*X3 + X3^3 + X1 + 1");
    assert!(check_restricted_separability(&cubic, &f3.one(), &f3.from_i64(2)).unwrap());
    // a p-th power has all partial derivatives zero
    let power = poly(&r3, "X1^3 + X2^3");
    assert!(!check_restricted_separability(&power, &f3.one(), &f3.one()).unwrap());
}

#[test]
fn normal_form_merges_proportional_summands() {
    let r = ring3(f7());
    let c = circuit(
        &r,
        &[&["X1", "X2"], &["X3", "X1 + X2"], &["3*X3", "X1 + X2"]],
        0,
    );
    let nf = normal_form(&c).unwrap();
    let NormalForm::K2 { circuit, .. } = &nf else {
        panic!("expected two summands, got {}", nf.name())
    };
    assert_eq!(circuit.k(), 2);
    assert_eq!(circuit.expand(), c.expand());
    assert_eq!(circuit.summand(1), poly(&r, "4*X3*(X1 + X2)"));
}

#[test]
fn normal_form_main_orders_factors() {
    let r = ring3(f7());
    let c = circuit(
        &r,
        &[&["X2 + X3", "X1"], &["X2", "X3"], &["X1 + 2*X2", "X1 - X3"]],
        0,
    );
    let nf = normal_form(&c).unwrap();
    let NormalForm::Main { circuit, common } = &nf else {
        panic!("expected main, got {}", nf.name())
    };
    assert!(common.is_empty());
    let f01 = &circuit.summands()[0][0];
    for i in 1..3 {
        assert!(circuit.summand(i).exact_div(f01).is_err());
    }
    assert!(circuit
        .summand(1)
        .add(&circuit.summand(2))
        .exact_div(f01)
        .is_err());
}

#[test]
fn normal_form_extracts_common_factor() {
    let r = ring3(f7());
    let c = circuit(
        &r,
        &[
            &["X1 + X2", "X3"],
            &["X1 + X2", "X1"],
            &["2*X1 + 2*X2", "X2 - X3"],
        ],
        1,
    );
    let nf = normal_form(&c).unwrap();
    assert_eq!(nf.common().len(), 1);
    assert_eq!(nf.common()[0], poly(&r, "X1 + X2"));
    assert_eq!(nf.circuit().expand().mul(&nf.common()[0]), c.expand());
    assert!(nf
        .circuit()
        .summands()
        .iter()
        .all(|s| s.iter().filter(|f| !f.is_constant()).count() == 1));
}

#[test]
fn normal_form_cancellation_and_justify() {
    let r = ring3(f7());
    let zero = circuit(
        &r,
        &[&["X1", "X2"], &["X1", "X3"], &["-1*X1", "X2 + X3"]],
        0,
    );
    let nf = normal_form(&zero).unwrap();
    assert!(nf.is_zero());
    let just = circuit(&r, &[&["X1", "X2"], &["X1", "X3"], &["X2", "X3 + X1"]], 0);
    match normal_form(&just).unwrap() {
        NormalForm::Justify {
            factor,
            divides,
            circuit,
            ..
        } => {
            let f = &circuit.summands()[0][factor];
            assert!(circuit.summand(divides).exact_div(f).is_ok());
            assert!(circuit.summand(3 - divides).exact_div(f).is_err());
        }
        other => panic!("expected justify, got {}", other.name()),
    }
    let not_sf = circuit(&r, &[&["X1", "X1"], &["X2", "X3"], &["X3", "X3"]], 0);
    assert!(matches!(
        normal_form(&not_sf),
        Err(Error::UnsupportedClass(_))
    ));
}

#[test]
fn bounded_degree_generators() {
    let h = bounded_degree_hitting_set(1, 2, &Field::Q).unwrap();
    let pts: Vec<String> = h.points.iter().map(|p| p[0].to_string()).collect();
    assert_eq!(pts, ["0", "1", "2"]);
    let g = bounded_degree_hitting_set(2, 1, &Field::Q).unwrap();
    assert_eq!(g.len(), 4);
    assert_eq!(g.provenance, Provenance::Grid);
    let lw = bounded_degree_hitting_set(9, 1, &f7()).unwrap();
    assert_eq!(lw.len() as u128, bounded_degree_size(9, 1));
    assert_eq!(lw.len(), 10);
    let lw2 = bounded_degree_hitting_set(6, 2, &f7()).unwrap();
    assert_eq!(lw2.len() as u128, bounded_degree_size(6, 2));
    // 𝔽₂ is too small for degree 3, so the points live in 𝔽₄
    let small = bounded_degree_hitting_set(2, 3, &Field::fp(2).unwrap()).unwrap();
    assert_eq!(small.field.size(), Some(4));
}

#[test]
fn boosting_small_sets() {
    let one = HittingSet {
        field: f7(),
        nvars: 2,
        points: vec![ints(&f7(), &[1, 2])],
        provenance: Provenance::Grid,
    };
    assert_eq!(boost_epsilon(&one, (1, 2), 3).unwrap().points, one.points);
    let two = HittingSet {
        field: f7(),
        nvars: 2,
        points: vec![ints(&f7(), &[1, 2]), ints(&f7(), &[3, 1])],
        provenance: Provenance::Grid,
    };
    let b = boost_epsilon(&two, (1, 2), 1).unwrap();
    assert!(b.len() >= 3);
    assert_eq!(b.points[..2], two.points[..]);
    let (p, q) = (&b.points[0], &b.points[1]);
    for x in &b.points[2..] {
        // (x − p) ∥ (q − p)
        let cross = x[0]
            .sub(&p[0])
            .mul(&q[1].sub(&p[1]))
            .sub(&x[1].sub(&p[1]).mul(&q[0].sub(&p[0])));
        assert!(cross.is_zero());
    }
    assert!(boost_epsilon(&two, (1, 1), 1).is_err());
}

#[test]
fn plane_family_meets_codimension_two_properly() {
    let r = ring3(f7());
    let fam = plane_family(3, 1, 4, &f7(), &BoostedGridProvider::default()).unwrap();
    assert!(!fam.is_empty());
    assert!(fam.len() <= 3 * 3 * 3 * 4 * 4);
    let (x1, x2) = (MPoly::var(&r, 0), MPoly::var(&r, 1));
    let meets = |gens: &[MPoly], want: i64| {
        fam.iter().any(|p| {
            let rs: Vec<MPoly> = gens.iter().map(|g| restrict(g, p).unwrap()).collect();
            let t = rs[0].ring().clone();
            krull_dimension(&Ideal::new(&t, rs)).unwrap() == want
        })
    };
    assert!(meets(&[x1.clone(), x2], 0));
    assert!(meets(&[x1], 1));
}

#[test]
fn dehomogenization_examples() {
    let f = Field::Q;
    let h = HittingSet {
        field: f.clone(),
        nvars: 3,
        points: vec![ints(&f, &[1, 2, 3])],
        provenance: Provenance::Grid,
    };
    let (_, star) = dehomogenize_points(&h).unwrap();
    assert_eq!(star.points, vec![ints(&f, &[2, 3])]);
    let h = HittingSet {
        field: f7(),
        nvars: 3,
        points: vec![
            ints(&f7(), &[0, 1, 0]),
            ints(&f7(), &[1, 0, 0]),
            ints(&f7(), &[0, 0, 0]),
        ],
        provenance: Provenance::Grid,
    };
    let (row, star) = dehomogenize_points(&h).unwrap();
    assert_eq!(star.len(), 2);
    for p in h.points.iter().filter(|p| p.iter().any(|x| !x.is_zero())) {
        let first = p
            .iter()
            .zip(&row)
            .fold(f7().zero(), |acc, (x, c)| acc.add(&x.mul(c)));
        assert!(!first.is_zero());
    }
}

#[test]
fn homogenization_identity() {
    let r = ring3(f7());
    let c = Circuit::new(
        &r,
        vec![
            vec![poly(&r, "X1 + 1"), poly(&r, "X2 - X3 + 2")],
            vec![poly(&r, "X3 + 4")],
            vec![poly(&r, "X1*X2 + 1")],
        ],
        Some(0),
    )
    .unwrap();
    let h = c.homogenized().unwrap();
    assert!(h.is_homogeneous());
    let a = ints(&f7(), &[3, 1, 5, 2]);
    let a0 = a[0].clone();
    let deh: Vec<Scalar> = a[1..].iter().map(|x| x.div(&a0).unwrap()).collect();
    assert_eq!(
        c.eval(&deh).unwrap().mul(&a0.pow(c.d() as u64)),
        h.eval(&a).unwrap()
    );
}

#[test]
fn zero_circuits_certify_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in [shape(3, 4, 1, 7), shape(3, 4, 2, 5)] {
        for _ in 0..3 {
            let c = cancelling_circuit(&mut rng, &s).unwrap();
            assert!(c.expand().is_zero());
            assert!(certify_nonzero(&c, 0).unwrap().is_zero());
        }
    }
}

#[test]
fn random_nonzero_circuits_get_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut routes = std::collections::BTreeMap::new();
    for s in [shape(3, 4, 1, 7), shape(3, 3, 2, 5)] {
        for _ in 0..6 {
            let c = random_circuit(&mut rng, &s).unwrap();
            let v = certify_nonzero(&c, 0).unwrap();
            let w = v.witness().expect("nonzero circuit");
            assert!(!c.eval(&w.point).unwrap().is_zero());
            assert!(!c.expand().is_zero());
            if let Route::Hard(cert) = &w.route {
                assert!(cert.verify());
                assert!(cert.n[0] < cert.n[1]);
            }
            *routes.entry(w.route.name()).or_insert(0) += 1;
        }
    }
    assert!(!routes.contains_key("fallback"), "{routes:?}");
}

#[test]
fn inhomogeneous_circuits_certify() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s = CircuitShape {
        homogeneous: false,
        ..shape(3, 3, 1, 7)
    };
    for _ in 0..4 {
        let c = random_circuit(&mut rng, &s).unwrap();
        let v = certify_nonzero(&c, 0).unwrap();
        assert_eq!(v.is_zero(), c.expand().is_zero());
        if let Some(w) = v.witness() {
            assert!(!c.eval(&w.point).unwrap().is_zero());
        }
    }
}

#[test]
fn main_hitting_set_hits_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = hitting_set_main(3, 4, 1, &f7(), 1).unwrap();
    assert_eq!(h.provenance, Provenance::PlaneUnion);
    for _ in 0..10 {
        let c = random_circuit(&mut rng, &shape(3, 4, 1, 7)).unwrap();
        assert!(h.hits_circuit(&c).unwrap());
    }
    let z = cancelling_circuit(&mut rng, &shape(3, 4, 1, 7)).unwrap();
    assert!(!h.hits_circuit(&z).unwrap());
    let sizes: Vec<usize> = (3..=5)
        .map(|n| hitting_set_main(n, 4, 1, &f7(), 1).unwrap().len())
        .collect();
    // linear growth in n for fixed δ and D
    assert!(sizes[2] <= 3 * sizes[0], "{sizes:?}");
}

#[test]
fn inhomogeneous_hitting_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let h = hitting_set_inhom(3, 3, 1, &f7(), 1).unwrap();
    assert_eq!(h.nvars, 3);
    let s = CircuitShape {
        homogeneous: false,
        ..shape(3, 3, 1, 7)
    };
    for _ in 0..10 {
        let c = random_circuit(&mut rng, &s).unwrap();
        assert!(h.hits_circuit(&c).unwrap());
    }
}

#[test]
fn random_factors_have_the_requested_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r = ring_for(&shape(3, 4, 2, 5));
    for _ in 0..10 {
        let q = random_factor(&mut rng, &r, 2, true);
        assert!(q.is_homogeneous() && q.degree() == Some(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn restrict_is_a_ring_homomorphism(a in proptest::collection::vec(0i64..7, 9), seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring3(f7());
        let f = random_factor(&mut rng, &r, 2, false);
        let g = random_factor(&mut rng, &r, 1, false);
        let plane = PlaneRestriction::at_point(ints(&f7(), &a), PlaneMode::Affine).unwrap();
        let (rf, rg) = (restrict(&f, &plane).unwrap(), restrict(&g, &plane).unwrap());
        prop_assert_eq!(restrict(&f.add(&g), &plane).unwrap(), rf.add(&rg));
        prop_assert_eq!(restrict(&f.mul(&g), &plane).unwrap(), rf.mul(&rg));
    }

    #[test]
    fn bounded_degree_set_hits_random_polynomials(coeffs in proptest::collection::vec(-3i64..4, 20)) {
        // all monomials of degree ≤ 3 in three variables
        let r = ring3(Field::Q);
        let mut f = MPoly::zero(&r);
        let mut k = 0;
        for a in 0..=3u32 {
            for b in 0..=3 - a {
                for c in 0..=3 - a - b {
                    f = f.add(&MPoly::monomial(&r, &[a, b, c], Field::Q.from_i64(coeffs[k])));
                    k += 1;
                }
            }
        }
        let h = bounded_degree_hitting_set(3, 3, &Field::Q).unwrap();
        prop_assert_eq!(h.first_hit(&f).unwrap().is_some(), !f.is_zero());
    }

    #[test]
    fn boosted_sets_keep_most_points(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = PolyRing::with_names(f7(), "X", 2);
        let f = random_factor(&mut rng, &r, 3, false);
        let h = bounded_degree_hitting_set(2, 3, &f7()).unwrap();
        let b = boost_epsilon(&h, (1, 2), 3).unwrap();
        let lifted = f.map_coeffs(&r.with_field(b.field.clone()), |c| c.embed_into(&b.field)).unwrap();
        let zeros = b.points.iter().filter(|p| lifted.eval(p).unwrap().is_zero()).count();
        prop_assert!(2 * zeros <= b.len());
    }
}
