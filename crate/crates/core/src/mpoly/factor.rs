//! Univariate factorization over ℚ (Zassenhaus), 𝔽_p and 𝔽_{p^k} (Berlekamp or
//! Cantor–Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::MPoly;
use super::univariate::UPoly;
use crate::coeff::{is_prime, Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg::nullspace;

pub type Factors = Vec<(UPoly, u32)>;

/// Largest field size for which Berlekamp's deterministic splitting is used.
const BERLEKAMP_MAX_Q: u128 = 4096;

fn sort_factors(f: &mut Factors) {
    f.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
}

/// Monic irreducible factors with multiplicities; the unit is the leading coefficient.
pub fn factor_upoly(f: &UPoly, seed: u64) -> Result<Factors> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "cannot factor the zero polynomial".into(),
        ));
    }
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let mut out = match f.field() {
        Field::Q => factor_q(f)?,
        Field::Fp(_) | Field::Gf(_) => factor_ff(f, seed),
        Field::Fn(ff) => {
            let base = ff.base().clone();
            let mut cs = Vec::new();
            for c in f.coeffs() {
                let x = c.as_frac().expect("function field element");
                if !(x.num().is_constant() && x.den().is_constant()) {
                    return Err(Error::Unsupported(
                        "factorization over a function field with parameters present".into(),
                    ));
                }
                cs.push(x.num().constant_term().div(&x.den().constant_term())?);
            }
            let g = UPoly::new(&base, cs);
            factor_upoly(&g, seed)?
                .into_iter()
                .map(|(h, e)| Ok((h.map_field(f.field(), |c| c.embed_into(f.field()))?, e)))
                .collect::<Result<Factors>>()?
        }
    };
    sort_factors(&mut out);
    Ok(out)
}

/// Factors a polynomial in at most one variable, returning factors in the same ring.
pub fn factor_univariate(f: &MPoly) -> Result<Vec<(MPoly, u32)>> {
    factor_univariate_seeded(f, 0)
}

pub fn factor_univariate_seeded(f: &MPoly, seed: u64) -> Result<Vec<(MPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let used: Vec<usize> = (0..f.ring().nvars()).filter(|&i| f.uses_var(i)).collect();
    if used.len() > 1 {
        return Err(Error::InvalidInput(format!("{f} is not univariate")));
    }
    let Some(&v) = used.first() else {
        return Ok(Vec::new());
    };
    let u = UPoly::from_mpoly(f, v)?;
    Ok(factor_upoly(&u, seed)?
        .into_iter()
        .map(|(h, e)| (h.to_mpoly(f.ring(), v), e))
        .collect())
}

pub fn is_irreducible(f: &UPoly) -> Result<bool> {
    let fs = factor_upoly(f, 0)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

// ---------- finite fields ----------

fn frobenius_pth_root(f: &UPoly, p: usize) -> UPoly {
    let c: Vec<Scalar> = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| a.pth_root().unwrap())
        .collect();
    UPoly::new(f.field(), c)
}

/// Squarefree decomposition of a monic polynomial over a finite field.
pub fn squarefree_decomposition(f: &UPoly) -> Factors {
    let p = f.field().characteristic() as usize;
    let mut out = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        if f.deg() == 0 {
            return out;
        }
        for (g, e) in squarefree_decomposition(&frobenius_pth_root(f, p)) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).unwrap();
        if fac.deg() > 0 {
            out.push((fac.monic(), i));
        }
        i += 1;
        c = c.exact_div(&y).unwrap();
        w = y;
    }
    if c.deg() > 0 {
        for (g, e) in squarefree_decomposition(&frobenius_pth_root(&c.monic(), p)) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// a^q mod m, computed as k applications of the p-power map.
fn frob(a: &UPoly, m: &UPoly, p: u64, k: u32) -> UPoly {
    let mut r = a.rem(m);
    for _ in 0..k {
        r = r.powmod(p as u128, m);
    }
    r
}

fn field_pk(field: &Field) -> (u64, u32) {
    match field {
        Field::Fp(p) => (*p, 1),
        Field::Gf(g) => (g.p(), g.degree()),
        _ => unreachable!("finite field expected"),
    }
}

fn factor_ff(f: &UPoly, seed: u64) -> Factors {
    let f = f.monic();
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (g, e) in squarefree_decomposition(&f) {
        for h in split_squarefree(&g, &mut rng) {
            out.push((h, e));
        }
    }
    out
}

/// Irreducible factors of a monic squarefree polynomial over a finite field.
pub fn split_squarefree(f: &UPoly, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    if f.deg() <= 1 {
        return vec![f.clone()];
    }
    let q = f.field().size().unwrap_or(u128::MAX);
    if q <= BERLEKAMP_MAX_Q {
        berlekamp(f)
    } else {
        let mut out = Vec::new();
        for (g, d) in distinct_degree(f) {
            equal_degree(&g, d, rng, &mut out);
        }
        out
    }
}

/// Berlekamp: split along the kernel of Frobenius − 1 on 𝔽_q[x]/(f).
fn berlekamp(f: &UPoly) -> Vec<UPoly> {
    let field = f.field().clone();
    let n = f.deg();
    let (p, k) = field_pk(&field);
    let xq = frob(&UPoly::x(&field), f, p, k);
    // column i = x^{qi} − x^i
    let mut cols = Vec::with_capacity(n);
    let mut cur = UPoly::one(&field);
    for i in 0..n {
        let mut col: Vec<Scalar> = (0..n).map(|j| cur.coeff(j)).collect();
        col[i] = col[i].sub(&field.one());
        cols.push(col);
        cur = cur.mul(&xq).rem(f);
    }
    let mat: Vec<Vec<Scalar>> = (0..n)
        .map(|j| (0..n).map(|i| cols[i][j].clone()).collect())
        .collect();
    let basis = nullspace(&mat, n, &field);
    let r = basis.len();
    if r == 1 {
        return vec![f.clone()];
    }
    let q = field.size().unwrap();
    let mut factors = vec![f.clone()];
    for v in &basis {
        let vp = UPoly::new(&field, v.clone());
        if vp.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors {
            if g.deg() <= 1 {
                next.push(g);
                continue;
            }
            // the gcds with v − s over all s partition g
            let mut left = g.deg();
            for j in 0..q {
                let s = field.element(j);
                let h = g.gcd(&vp.sub(&UPoly::constant(&field, s)));
                if h.deg() > 0 {
                    left -= h.deg();
                    next.push(h);
                }
                if left == 0 {
                    break;
                }
            }
        }
        factors = next;
        if factors.len() == r {
            break;
        }
    }
    factors
}

fn distinct_degree(f: &UPoly) -> Vec<(UPoly, usize)> {
    let field = f.field().clone();
    let (p, k) = field_pk(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = UPoly::x(&field);
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = frob(&h, &rest, p, k);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            rest = rest.exact_div(&g).unwrap();
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let dd = rest.deg();
        out.push((rest.monic(), dd));
    }
    out
}

fn random_poly(field: &Field, deg: usize, rng: &mut ChaCha8Rng) -> UPoly {
    let q = field.size().unwrap();
    UPoly::new(
        field,
        (0..=deg)
            .map(|_| field.element(rng.gen_range(0..q)))
            .collect(),
    )
}

fn equal_degree(f: &UPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UPoly>) {
    if f.deg() == d {
        out.push(f.monic());
        return;
    }
    let field = f.field().clone();
    let (p, k) = field_pk(&field);
    loop {
        let a = random_poly(&field, f.deg() - 1, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace to 𝔽_2: a + a^2 + … + a^{2^{kd−1}}
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..(k as usize * d) {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // norm to 𝔽_q then the quadratic character: a^{(q^d−1)/2}
            let mut nrm = a.rem(f);
            let mut t = nrm.clone();
            for _ in 1..d {
                t = frob(&t, f, p, k);
                nrm = nrm.mul(&t).rem(f);
            }
            let mut r = nrm;
            // r^{(q−1)/2} with q = p^k: (q−1)/2 = (p−1)/2 · (1 + p + … + p^{k−1})
            let mut s = r.clone();
            let mut acc = r.clone();
            for _ in 1..k {
                s = s.powmod(p as u128, f);
                acc = acc.mul(&s).rem(f);
            }
            r = acc.powmod(((p - 1) / 2) as u128, f);
            r.sub(&UPoly::one(&field))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.exact_div(&g).unwrap().monic();
            equal_degree(&g, d, rng, out);
            equal_degree(&h, d, rng, out);
            return;
        }
    }
}

// ---------- rationals ----------

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn zsym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(a: &[BigInt], field: &Field) -> UPoly {
    UPoly::new(field, a.iter().map(|x| field.from_bigint(x)).collect())
}

fn from_fp(a: &UPoly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|x| BigInt::from(x.as_fp().unwrap()))
        .collect()
}

fn zcontent(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn zprimitive(a: &[BigInt]) -> ZPoly {
    let c = zcontent(a);
    let mut out: ZPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|x| x.is_negative()) {
        out = out.into_iter().map(|x| -x).collect();
    }
    out
}

fn upoly_to_z(f: &UPoly) -> ZPoly {
    let den = f.coeffs().iter().fold(BigInt::one(), |l, c| {
        l.lcm(c.as_rational().unwrap().denom())
    });
    let z: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.numer() * (&den / r.denom())
        })
        .collect();
    zprimitive(&z)
}

fn z_to_upoly(a: &[BigInt]) -> UPoly {
    UPoly::new(
        &Field::Q,
        a.iter()
            .map(|x| Scalar::Q(BigRational::from_integer(x.clone())))
            .collect(),
    )
}

/// Yun's squarefree decomposition in characteristic 0.
fn yun(f: &UPoly) -> Factors {
    let mut out = Vec::new();
    let df = f.derivative();
    let mut a = f.gcd(&df);
    let mut b = f.exact_div(&a).unwrap();
    let mut c = df.exact_div(&a).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        a = b.gcd(&d);
        b = b.exact_div(&a).unwrap();
        c = d.exact_div(&a).unwrap();
        if a.deg() > 0 {
            out.push((a.monic(), i));
        }
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

fn factor_q(f: &UPoly) -> Result<Factors> {
    let mut out = Vec::new();
    for (g, e) in yun(&f.monic()) {
        for h in zassenhaus(&upoly_to_z(&g)) {
            out.push((z_to_upoly(&h).monic(), e));
        }
    }
    Ok(out)
}

/// Lifts f ≡ a·b (mod p), with f, a, b monic, to modulus p^k.
fn hensel_two(f: &[BigInt], a: &UPoly, b: &UPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let fp = a.field().clone();
    let (_, s, t) = a.xgcd(b);
    let pb = BigInt::from(p);
    let mut za = from_fp(a);
    let mut zb = from_fp(b);
    let mut pj = pb.clone();
    for _ in 1..k {
        let prod = zmul(&za, &zb);
        let n = f.len().max(prod.len());
        let e: ZPoly = (0..n)
            .map(|i| {
                let x = f.get(i).cloned().unwrap_or_default()
                    - prod.get(i).cloned().unwrap_or_default();
                debug_assert!((&x % &pj).is_zero());
                x / &pj
            })
            .collect();
        let e = to_fp(&e, &fp);
        if !e.is_zero() {
            let (qq, alpha) = t.mul(&e).divrem(a).unwrap();
            let beta = qq.mul(b).add(&s.mul(&e)).rem(b);
            let aa = from_fp(&alpha);
            let bb = from_fp(&beta);
            for (i, x) in aa.iter().enumerate() {
                za[i] += x * &pj;
            }
            for (i, x) in bb.iter().enumerate() {
                zb[i] += x * &pj;
            }
        }
        pj *= &pb;
    }
    (zmod(&za, &pj), zmod(&zb, &pj))
}

fn hensel_multi(f: &[BigInt], fs: &[UPoly], p: u64, k: u32, out: &mut Vec<ZPoly>) {
    if fs.len() == 1 {
        out.push(zmod(f, &BigInt::from(p).pow(k)));
        return;
    }
    let mid = fs.len() / 2;
    let one = UPoly::one(fs[0].field());
    let a = fs[..mid].iter().fold(one.clone(), |x, y| x.mul(y));
    let b = fs[mid..].iter().fold(one, |x, y| x.mul(y));
    let (za, zb) = hensel_two(f, &a, &b, p, k);
    hensel_multi(&za, &fs[..mid], p, k, out);
    hensel_multi(&zb, &fs[mid..], p, k, out);
}

fn zdivides(h: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = z_to_upoly(g).divrem(&z_to_upoly(h)).ok()?;
    if !r.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    for c in q.coeffs() {
        let r = c.as_rational().unwrap();
        if !r.is_integer() {
            return None;
        }
        out.push(r.numer().clone());
    }
    Some(out)
}

/// Irreducible factors over ℤ of a primitive squarefree polynomial with positive leading coefficient.
fn zassenhaus(g: &[BigInt]) -> Vec<ZPoly> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g.to_vec()];
    }
    let lc = g[n].clone();
    let gq = z_to_upoly(g);
    // choose the prime giving the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<UPoly>)> = None;
    let mut tried = 0;
    let mut p = 11u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    while tried < 5 {
        p += 2;
        if !is_prime(p) || (&lc % p).is_zero() {
            continue;
        }
        let field = Field::Fp(p);
        let gp = to_fp(g, &field);
        if !gp.is_squarefree() {
            continue;
        }
        tried += 1;
        let fs = split_squarefree(&gp.monic(), &mut rng);
        if best.as_ref().is_none_or(|b| fs.len() < b.1.len()) {
            best = Some((p, fs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, mut fs) = best.unwrap();
    if fs.len() == 1 {
        return vec![g.to_vec()];
    }
    fs.sort_by(|a, b| a.canonical_cmp(b));
    // coefficient bound for factors, times |lc|
    let maxc = g.iter().map(|x| x.abs()).max().unwrap();
    let bound = BigInt::from(2).pow(n as u32 + 1) * BigInt::from(n + 1) * maxc * lc.abs();
    let mut k = 1;
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    // lift the monic factorization of g/lc
    let lcinv = lc.modinv(&m).expect("lc invertible mod p^k");
    let monic_g: ZPoly = g.iter().map(|x| (x * &lcinv).mod_floor(&m)).collect();
    let mut lifted = Vec::new();
    hensel_multi(&monic_g, &fs, p, k, &mut lifted);
    // recombination
    let mut out = Vec::new();
    let mut cur = g.to_vec();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lcc = cur.last().unwrap().clone();
            let mut h = vec![lcc.clone()];
            for &i in &idx {
                h = zmod(&zmul(&h, &lifted[i]), &m);
            }
            let h = zprimitive(&zsym(&h, &m));
            if let Some(q) = zdivides(&h, &cur) {
                out.push(h);
                cur = zprimitive(&q);
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
            // next combination
            let mut j = s;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                if idx[j] < r - s + j {
                    idx[j] += 1;
                    for l in j + 1..s {
                        idx[l] = idx[l - 1] + 1;
                    }
                    j = usize::MAX;
                    break;
                }
            }
            if j != usize::MAX {
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    debug_assert_eq!(
        out.iter()
            .fold(z_to_upoly(&[BigInt::one()]), |a, h| a.mul(&z_to_upoly(h)))
            .monic(),
        gq.monic()
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn show(fs: &Factors) -> Vec<(String, u32)> {
        fs.iter().map(|(f, e)| (f.to_string(), *e)).collect()
    }

    #[test]
    fn small_examples() {
        let q = Field::Q;
        let f = factor_upoly(&UPoly::from_ints(&q, &[-1, 0, 1]), 0).unwrap();
        assert_eq!(
            show(&f),
            vec![("x - 1".to_string(), 1), ("x + 1".to_string(), 1)]
        );
        let f5 = Field::fp(5).unwrap();
        let f = factor_upoly(&UPoly::from_ints(&f5, &[1, 0, 1]), 0).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0, UPoly::from_ints(&f5, &[-2, 1]));
        assert_eq!(f[1].0, UPoly::from_ints(&f5, &[2, 1]));
        assert!(is_irreducible(&UPoly::from_ints(&q, &[1, 0, -10, 0, 1])).unwrap());
    }

    #[test]
    fn repeated_and_inseparable() {
        let f3 = Field::fp(3).unwrap();
        // x^3 − 2 = (x + 1)^3 over 𝔽_3, times (x + 2)^2
        let a = UPoly::from_ints(&f3, &[-2, 0, 0, 1]).mul(&UPoly::from_ints(&f3, &[2, 1]).pow(2));
        let fs = factor_upoly(&a, 1).unwrap();
        assert_eq!(
            fs,
            vec![
                (UPoly::from_ints(&f3, &[2, 1]), 2),
                (UPoly::from_ints(&f3, &[1, 1]), 3)
            ]
        );
        let q = Field::Q;
        let b = UPoly::from_ints(&q, &[0, 0, 1]).mul(&UPoly::from_ints(&q, &[-2, 0, 1]));
        let fs = factor_upoly(&b, 0).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], (UPoly::from_ints(&q, &[0, 1]), 2));
    }

    #[test]
    fn swinnerton_dyer_like() {
        let q = Field::Q;
        // (x^4 − 10x^2 + 1)(x^2 − 3x + 7)(3x − 1)
        let a = UPoly::from_ints(&q, &[1, 0, -10, 0, 1])
            .mul(&UPoly::from_ints(&q, &[7, -3, 1]))
            .mul(&UPoly::from_ints(&q, &[-1, 3]));
        let fs = factor_upoly(&a, 0).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(
            fs.iter().map(|f| f.0.deg()).collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
    }

    #[test]
    fn large_field_uses_cantor_zassenhaus() {
        let f = Field::fp(1_000_003).unwrap();
        let a = UPoly::from_ints(&f, &[-1, 0, 0, 0, 0, 0, 1]);
        let fs = factor_upoly(&a, 7).unwrap();
        let prod = fs
            .iter()
            .fold(UPoly::one(&f), |x, (g, e)| x.mul(&g.pow(*e as u64)));
        assert_eq!(prod, a);
        for (g, _) in &fs {
            assert!(is_irreducible_by_search(g));
        }
        let g4 = Field::gf(2, 4).unwrap();
        let b = UPoly::new(
            &g4,
            vec![
                g4.one(),
                g4.zero(),
                g4.zero(),
                g4.zero(),
                g4.zero(),
                g4.one(),
            ],
        );
        let fs = factor_upoly(&b, 3).unwrap();
        let prod = fs
            .iter()
            .fold(UPoly::one(&g4), |x, (g, e)| x.mul(&g.pow(*e as u64)));
        assert_eq!(prod, b);
    }

    /// No monic divisor of degree ≤ n/2 exists, checked by root/low-degree search over small fields.
    fn is_irreducible_by_search(g: &UPoly) -> bool {
        let n = g.deg();
        if n <= 1 {
            return true;
        }
        // over a big prime field, use Rabin's test as an independent check
        let field = g.field().clone();
        let (p, k) = field_pk(&field);
        let x = UPoly::x(&field);
        let xq_n = (0..n).fold(x.clone(), |h, _| frob(&h, g, p, k));
        if xq_n != x.rem(g) {
            return false;
        }
        for d in 1..n {
            if n.is_multiple_of(d) && is_prime((n / d) as u64) {
                let h = (0..d).fold(x.clone(), |h, _| frob(&h, g, p, k));
                if g.gcd(&h.sub(&x)).deg() > 0 {
                    return false;
                }
            }
        }
        true
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn product_reexpands_q(a in proptest::collection::vec(-5i64..6, 1..4),
                               b in proptest::collection::vec(-5i64..6, 1..4),
                               c in proptest::collection::vec(-5i64..6, 1..3)) {
            let q = Field::Q;
            let mut a = a; a.push(1);
            let mut b = b; b.push(2);
            let mut c = c; c.push(-1);
            let f = UPoly::from_ints(&q, &a).mul(&UPoly::from_ints(&q, &b)).mul(&UPoly::from_ints(&q, &c));
            let fs = factor_upoly(&f, 0).unwrap();
            let prod = fs.iter().fold(UPoly::one(&q), |x, (g, e)| x.mul(&g.pow(*e as u64)));
            prop_assert_eq!(prod, f.monic());
            for (g, _) in &fs {
                prop_assert!(g.lc().is_one());
            }
        }

        #[test]
        fn product_reexpands_fp(a in proptest::collection::vec(0i64..7, 2..9), seed in 0u64..100) {
            let f7 = Field::fp(7).unwrap();
            let mut a = a; a.push(1);
            let f = UPoly::from_ints(&f7, &a);
            let fs = factor_upoly(&f, seed).unwrap();
            let prod = fs.iter().fold(UPoly::one(&f7), |x, (g, e)| x.mul(&g.pow(*e as u64)));
            prop_assert_eq!(prod, f.clone());
            for (g, _) in &fs {
                // exhaustive: no root and no proper factor over 𝔽_7 of smaller degree
                prop_assert!(is_irreducible_by_search(g));
            }
            prop_assert_eq!(fs.clone(), factor_upoly(&f, seed + 1).unwrap());
        }
    }
}
