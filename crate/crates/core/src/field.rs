//! Prime-field arithmetic for small primes.
//!
//! Residues are carried as plain `u32` values in `0..p`; the modulus travels
//! with the containing structure (polynomial, operator, matrix). The helpers
//! here are the only place where modular reduction happens.

use std::fmt;

use crate::error::{Error, Result};

/// Largest prime accepted anywhere in the crate.
pub const MAX_PRIME: u32 = 13;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Validates a modulus against the configured bound.
pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) && p <= MAX_PRIME {
        Ok(())
    } else {
        Err(Error::InvalidModulus(p))
    }
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    a * b % p
}

/// Reduces a signed integer into `0..p`.
#[inline]
pub fn from_i64(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; panics on zero.
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow(a, (p - 2) as u64, p)
}

/// Binomial coefficient C(n, k) mod p via Lucas' theorem.
pub fn binom(mut n: u64, mut k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let pp = p as u64;
    let mut r = 1u32;
    while k > 0 || n > 0 {
        let (ni, ki) = ((n % pp) as u32, (k % pp) as u32);
        if ki > ni {
            return 0;
        }
        r = mul(r, small_binom(ni, ki, p), p);
        n /= pp;
        k /= pp;
    }
    r
}

// C(n, k) mod p for n < p, where every factorial is invertible.
fn small_binom(n: u32, k: u32, p: u32) -> u32 {
    let num = falling(n as u64, k as u64, p);
    let den = factorial(k as u64, p);
    mul(num, inv(den, p), p)
}

/// Falling factorial n (n-1) ... (n-k+1) mod p.
pub fn falling(n: u64, k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut r = 1 % p;
    for i in 0..k {
        r = mul(r, ((n - i) % p as u64) as u32, p);
        if r == 0 {
            break;
        }
    }
    r
}

pub fn factorial(n: u64, p: u32) -> u32 {
    falling(n, n, p)
}

/// Multinomial coefficient (sum parts)! / prod(part!) mod p, as a product of binomials.
pub fn multinomial(parts: &[u64], p: u32) -> u32 {
    let mut total = 0u64;
    let mut r = 1 % p;
    for &k in parts {
        total += k;
        r = mul(r, binom(total, k, p), p);
        if r == 0 {
            break;
        }
    }
    r
}

/// An element of the prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { value: from_i64(value, p), p })
    }

    pub(crate) fn from_raw(value: u32, p: u32) -> Self {
        debug_assert!(value < p);
        Self { value, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| Self::from_raw(inv(self.value, self.p), self.p))
    }
}

macro_rules! field_binop {
    ($tr:ident, $method:ident, $f:path) => {
        impl std::ops::$tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                assert_eq!(self.p, rhs.p, "modulus mismatch");
                FieldElement::from_raw($f(self.value, rhs.value, self.p), self.p)
            }
        }
    };
}

field_binop!(Add, add, add);
field_binop!(Sub, sub, sub);
field_binop!(Mul, mul, mul);

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::from_raw(neg(self.value, self.p), self.p)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom_exact(n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        let mut r: u128 = 1;
        for i in 0..k {
            r = r * (n - i) as u128 / (i + 1) as u128;
        }
        r
    }

    #[test]
    fn primes_within_bound() {
        let accepted: Vec<u32> = (0..20).filter(|&p| check_prime(p).is_ok()).collect();
        assert_eq!(accepted, vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(check_prime(14), Err(Error::InvalidModulus(14)));
    }

    #[test]
    fn lucas_matches_exact_binomials() {
        for p in [2, 3, 5, 7, 13] {
            for n in 0..40u64 {
                for k in 0..=n + 1 {
                    assert_eq!(binom(n, k, p) as u128, binom_exact(n, k) % p as u128, "C({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn binomial_of_p_vanishes_inside() {
        for p in [2, 3, 5, 7, 11, 13] {
            for j in 1..p as u64 {
                assert_eq!(binom(p as u64, j, p), 0);
            }
        }
    }

    #[test]
    fn multinomial_small() {
        // 4!/(2!1!1!) = 12
        assert_eq!(multinomial(&[2, 1, 1], 5), 2);
        assert_eq!(multinomial(&[2, 1, 1], 13), 12);
    }

    #[test]
    fn field_element_ops() {
        let a = FieldElement::new(4, 5).unwrap();
        let b = FieldElement::new(-2, 5).unwrap();
        assert_eq!((a + b).value(), 2);
        assert_eq!((a * b).value(), 2);
        assert_eq!((a * a.inverse().unwrap()).value(), 1);
        assert!(FieldElement::new(0, 5).unwrap().inverse().is_none());
    }
}
