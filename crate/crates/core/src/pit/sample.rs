//! Seeded random circuits for tests, calibration and the CLI suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::det;
use crate::mpoly::{mono_deg, squarefree_check, Mono};
use crate::{Field, MPoly, MonomialOrder, PolyRing, Ring, Scalar};

use super::Circuit;

#[derive(Clone, Debug)]
pub struct CircuitShape {
    pub n: usize,
    /// Degree of every summand (homogeneous) or of the squarefree summand (inhomogeneous).
    pub d: usize,
    pub delta: usize,
    pub field: Field,
    pub homogeneous: bool,
}

pub fn ring_for(shape: &CircuitShape) -> Ring {
    PolyRing::with_names(shape.field.clone(), "X", shape.n).with_order(MonomialOrder::Grevlex)
}

fn random_scalar(rng: &mut ChaCha8Rng, field: &Field) -> Scalar {
    match field.size() {
        Some(q) => field.element(rng.gen_range(0..q)),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

fn monomials(n: usize, degree: u32, homogeneous: bool) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut m: Mono = smallvec::smallvec![0; n];
    fn rec(i: usize, left: u32, m: &mut Mono, out: &mut Vec<Mono>, exact: bool) {
        if i + 1 == m.len() {
            if exact {
                m[i] = left;
                out.push(m.clone());
            } else {
                for e in 0..=left {
                    m[i] = e;
                    out.push(m.clone());
                }
            }
            m[i] = 0;
            return;
        }
        for e in 0..=left {
            m[i] = e;
            rec(i + 1, left - e, m, out, exact);
        }
        m[i] = 0;
    }
    if n == 0 {
        return vec![m];
    }
    rec(0, degree, &mut m, &mut out, homogeneous);
    out
}

/// Symmetric matrix of the quadratic part, after homogenization for affine quadrics.
fn quadric_is_smooth(f: &MPoly) -> bool {
    let field = f.field().clone();
    if field.characteristic() == 2 {
        return true;
    }
    let n = f.ring().nvars();
    let homogeneous = f.is_homogeneous();
    let size = if homogeneous { n } else { n + 1 };
    let half = field.from_i64(2).inv().expect("odd characteristic");
    let mut m = vec![vec![field.zero(); size]; size];
    for (mono, c) in f.terms() {
        let mut idx: Vec<usize> = Vec::new();
        for (v, &e) in mono.iter().enumerate() {
            let slot = if homogeneous { v } else { v + 1 };
            for _ in 0..e {
                idx.push(slot);
            }
        }
        while idx.len() < 2 {
            idx.push(0);
        }
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = m[i][i].add(c);
        } else {
            let h = c.mul(&half);
            m[i][j] = m[i][j].add(&h);
            m[j][i] = m[j][i].add(&h);
        }
    }
    !det(&m, &field).is_zero()
}

/// A random factor of exact degree `degree`; quadrics are absolutely irreducible.
pub fn random_factor(rng: &mut ChaCha8Rng, ring: &Ring, degree: u32, homogeneous: bool) -> MPoly {
    let field = ring.field().clone();
    let monos = monomials(ring.nvars(), degree, homogeneous);
    loop {
        let terms = monos
            .iter()
            .map(|m| (m.clone(), random_scalar(rng, &field)))
            .collect();
        let f = MPoly::from_terms(ring, terms);
        if f.degree() != Some(degree)
            || f.terms()
                .iter()
                .filter(|(m, _)| mono_deg(m) == degree)
                .count()
                == 0
        {
            continue;
        }
        if degree == 2 && (ring.nvars() < 3 || !quadric_is_smooth(&f)) {
            continue;
        }
        return f;
    }
}

fn random_degrees(rng: &mut ChaCha8Rng, d: usize, delta: usize) -> Vec<u32> {
    let mut left = d;
    let mut out = Vec::new();
    while left > 0 {
        let e = rng.gen_range(1..=delta.min(left));
        out.push(e as u32);
        left -= e;
    }
    out
}

pub fn random_summand(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    d: usize,
    delta: usize,
    homogeneous: bool,
) -> Vec<MPoly> {
    let delta = if ring.nvars() < 3 { 1 } else { delta };
    random_degrees(rng, d, delta)
        .into_iter()
        .map(|e| random_factor(rng, ring, e, homogeneous))
        .collect()
}

fn squarefree_summand(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    d: usize,
    delta: usize,
    homogeneous: bool,
) -> Result<Vec<MPoly>> {
    loop {
        let s = random_summand(rng, ring, d, delta, homogeneous);
        let prod = s.iter().fold(MPoly::one(ring), |acc, f| acc.mul(f));
        if squarefree_check(&prod)? {
            return Ok(s);
        }
    }
}

/// Three summands, one of them squarefree at a random position.
pub fn random_circuit(rng: &mut ChaCha8Rng, shape: &CircuitShape) -> Result<Circuit> {
    let ring = ring_for(shape);
    let sf = rng.gen_range(0..3);
    let mut summands = Vec::with_capacity(3);
    for i in 0..3 {
        let d = if shape.homogeneous || i == sf {
            shape.d
        } else {
            rng.gen_range(1..=shape.d)
        };
        if i == sf {
            summands.push(squarefree_summand(
                rng,
                &ring,
                d,
                shape.delta,
                shape.homogeneous,
            )?);
        } else {
            summands.push(random_summand(
                rng,
                &ring,
                d,
                shape.delta,
                shape.homogeneous,
            ));
        }
    }
    Circuit::new(&ring, summands, Some(sf))
}

/// A·l₁ + A·l₂ − A·(l₁ + l₂) with A·l₁ squarefree.
pub fn cancelling_circuit(rng: &mut ChaCha8Rng, shape: &CircuitShape) -> Result<Circuit> {
    let ring = ring_for(shape);
    loop {
        let common = random_summand(rng, &ring, shape.d - 1, shape.delta, shape.homogeneous);
        let l1 = random_factor(rng, &ring, 1, shape.homogeneous);
        let l2 = random_factor(rng, &ring, 1, shape.homogeneous);
        let l3 = l1.add(&l2).neg();
        if l3.degree() != Some(1) {
            continue;
        }
        let with = |l: &MPoly| {
            let mut s = common.clone();
            s.push(l.clone());
            s
        };
        let f0 = with(&l1);
        let prod = f0.iter().fold(MPoly::one(&ring), |acc, f| acc.mul(f));
        if !squarefree_check(&prod)? {
            continue;
        }
        return Circuit::new(&ring, vec![f0, with(&l2), with(&l3)], Some(0));
    }
}
