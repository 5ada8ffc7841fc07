//! Finite fields 𝔽_{p^k} = 𝔽_p[a]/(m(a)) used when a prime field is too small.

use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::fp::{add_mod, check_modulus, inv_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};

pub(crate) type Coeffs = SmallVec<[u64; 4]>;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct GaloisField {
    p: u64,
    k: u32,
    /// Monic irreducible modulus, low degree first, length k+1.
    modulus: Vec<u64>,
}

impl GaloisField {
    /// The field with `p^k` elements, modulus = first irreducible in enumeration order.
    pub fn new(p: u64, k: u32) -> Result<Arc<Self>> {
        check_modulus(p)?;
        if k == 0 {
            return Err(Error::InvalidInput(
                "extension degree must be positive".into(),
            ));
        }
        let size = (p as u128).checked_pow(k);
        if size.is_none() || size.unwrap() > (1u128 << 100) {
            return Err(Error::InvalidInput(format!("field {p}^{k} too large")));
        }
        let modulus = first_irreducible(p, k as usize);
        Ok(Arc::new(GaloisField { p, k, modulus }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.k)
    }

    pub(crate) fn reduce(&self, mut c: Vec<u64>) -> Coeffs {
        let k = self.k as usize;
        let p = self.p;
        while c.len() > k {
            let top = c.pop().unwrap();
            if top != 0 {
                let base = c.len() - k;
                for i in 0..k {
                    let t = mul_mod(top, self.modulus[i], p);
                    c[base + i] = sub_mod(c[base + i], t, p);
                }
            }
        }
        c.resize(k, 0);
        Coeffs::from_vec(c)
    }

    pub(crate) fn mul(&self, a: &[u64], b: &[u64]) -> Coeffs {
        let p = self.p;
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
        self.reduce(prod)
    }

    pub(crate) fn inv(&self, a: &[u64]) -> Option<Coeffs> {
        let p = self.p;
        let a = trim(a.to_vec());
        if a.is_empty() {
            return None;
        }
        let (g, s) = ext_gcd_left(&a, &self.modulus, p);
        debug_assert_eq!(g, vec![1]);
        let _ = g;
        Some(self.reduce(s))
    }

    /// The `j`-th element in base-`p` digit order.
    pub(crate) fn element(&self, mut j: u128) -> Coeffs {
        let mut c = Coeffs::new();
        for _ in 0..self.k {
            c.push((j % self.p as u128) as u64);
            j /= self.p as u128;
        }
        c
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let inv_lc = inv_mod(m[dm], p).unwrap();
    while a.len() > dm && !a.is_empty() {
        let top = *a.last().unwrap();
        if top == 0 {
            a.pop();
            continue;
        }
        let q = mul_mod(top, inv_lc, p);
        let base = a.len() - 1 - dm;
        for i in 0..=dm {
            a[base + i] = sub_mod(a[base + i], mul_mod(q, m[i], p), p);
        }
        a.pop();
    }
    trim(a)
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
        }
    }
    poly_rem(prod, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Returns (g, s) with s·a ≡ g mod m, g monic.
fn ext_gcd_left(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1) = (Vec::<u64>::new(), vec![1u64]);
    while !r1.is_empty() {
        // polynomial long division r0 = q r1 + r
        let mut r = r0.clone();
        let d1 = r1.len() - 1;
        let inv_lc = inv_mod(r1[d1], p).unwrap();
        let mut q = vec![0u64; r.len().saturating_sub(d1).max(1)];
        while r.len() > d1 && !r.is_empty() {
            let top = *r.last().unwrap();
            let shift = r.len() - 1 - d1;
            let c = mul_mod(top, inv_lc, p);
            q[shift] = c;
            for i in 0..=d1 {
                r[shift + i] = sub_mod(r[shift + i], mul_mod(c, r1[i], p), p);
            }
            r = trim(r);
        }
        // s = s0 - q s1
        let mut qs = vec![0u64; q.len() + s1.len()];
        for (i, &x) in q.iter().enumerate() {
            for (j, &y) in s1.iter().enumerate() {
                qs[i + j] = add_mod(qs[i + j], mul_mod(x, y, p), p);
            }
        }
        let mut s = s0.clone();
        s.resize(s.len().max(qs.len()), 0);
        for (i, &x) in qs.iter().enumerate() {
            s[i] = sub_mod(s[i], x, p);
        }
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, trim(s));
    }
    let inv = inv_mod(*r0.last().unwrap(), p).unwrap();
    let g = r0.iter().map(|&x| mul_mod(x, inv, p)).collect();
    let s = s0.iter().map(|&x| mul_mod(x, inv, p)).collect();
    (g, s)
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k <= 1 {
        return true;
    }
    // x^{p^i} mod f, checking gcd(f, x^{p^i} − x) = 1 for i ≤ k/2
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 1..=k / 2 {
        // raise to the p-th power by square-and-multiply
        let mut base = xp.clone();
        let mut acc = vec![1u64];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = sub_mod(diff[1], 1, p);
        let g = poly_gcd(f, &trim(diff), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let mut digits = vec![0u64; k];
    loop {
        // increment digits as a base-p counter
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if digits[0] == 0 {
            continue;
        }
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
}

/// An element of a [`GaloisField`].
#[derive(Clone)]
pub struct GfElem {
    pub(crate) c: Coeffs,
    pub(crate) field: Arc<GaloisField>,
}

impl GfElem {
    pub fn new(field: &Arc<GaloisField>, coeffs: &[u64]) -> Self {
        let p = field.p;
        let c = field.reduce(coeffs.iter().map(|&x| x % p).collect());
        GfElem {
            c,
            field: field.clone(),
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

impl PartialEq for GfElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}
impl Eq for GfElem {}

impl fmt::Debug for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.c.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, _) => format!("{c}*a"),
                (_, 1) => format!("a^{i}"),
                _ => format!("{c}*a^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join("+"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_and_f49_arithmetic() {
        for (p, k) in [(2u64, 2u32), (7, 2), (3, 3), (5, 4)] {
            let f = GaloisField::new(p, k).unwrap();
            let q = f.size();
            // every nonzero element has an inverse; multiplicative group order is q − 1
            for j in 1..q.min(300) {
                let a = f.element(j);
                let b = f.inv(&a).unwrap();
                let one = f.mul(&a, &b);
                assert_eq!(one[0], 1);
                assert!(one[1..].iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn modulus_irreducible() {
        let f = GaloisField::new(2, 3).unwrap();
        // x^3 + x + 1 is the first irreducible cubic over 𝔽_2
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }
}
