//! Prime-field residues with overflow-checked arithmetic.

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 61;

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    // a, b < p < 2^61 so the sum cannot overflow
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `p`, `None` when `a ≡ 0`.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Checks that `p` is a usable prime modulus.
pub fn check_modulus(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::InvalidInput(format!("modulus {p} exceeds 2^61")));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    Ok(())
}

/// An element of 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub value: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(value: i128, p: u64) -> Self {
        Fp {
            value: value.rem_euclid(p as i128) as u64,
            p,
        }
    }

    /// Representative in (−p/2, p/2].
    pub fn symmetric(&self) -> i128 {
        if self.value > self.p / 2 {
            self.value as i128 - self.p as i128
        } else {
            self.value as i128
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(7) && is_prime(2305843009213693951));
        assert!(!is_prime(1) && !is_prime(91) && !is_prime(3215031751));
    }

    #[test]
    fn inverse_roundtrip() {
        for p in [2u64, 5, 7, 1_000_000_007] {
            for a in 1..20u64.min(p) {
                let b = inv_mod(a, p).unwrap();
                assert_eq!(mul_mod(a, b, p), 1);
            }
            assert_eq!(inv_mod(0, p), None);
        }
    }

    #[test]
    fn large_modulus_no_overflow() {
        let p = 2305843009213693951u64;
        let a = p - 1;
        assert_eq!(mul_mod(a, a, p), 1);
        assert_eq!(add_mod(a, a, p), p - 2);
        assert_eq!(sub_mod(0, 1, p), p - 1);
    }
}
