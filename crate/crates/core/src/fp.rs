//! The prime field F_p for odd p, with canonical representatives in [0, p).

use crate::error::{Error, Result};
use core::fmt;

/// Field descriptor. Construction is the single place where primality of `p`
/// is checked (trial division; inputs are desk-scale by design).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpField {
    p: u32,
}

impl FpField {
    /// Odd primes only, p < 2^16.
    pub fn new(p: u32) -> Result<Self> {
        if !(3..(1 << 16)).contains(&p) || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FpField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, value: i64) -> FpElem {
        FpElem::new(self.p, value)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue class mod p. Carries its modulus; mixing moduli is a programming
/// error and asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    p: u32,
    value: u32,
}

impl FpElem {
    /// `p` is assumed to come from a validated [`FpField`].
    pub fn new(p: u32, value: i64) -> Self {
        let m = p as i64;
        let v = ((value % m) + m) % m;
        FpElem { p, value: v as u32 }
    }

    pub fn zero(p: u32) -> Self {
        FpElem { p, value: 0 }
    }

    pub fn one(p: u32) -> Self {
        FpElem { p, value: 1 }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        // p prime, so a^(p-2) is the inverse
        Ok(self.pow((self.p - 2) as u128))
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let p = self.p as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        FpElem {
            p: self.p,
            value: acc as u32,
        }
    }

    /// The field constant a/b (b invertible), e.g. 3/2.
    pub fn fraction(p: u32, a: i64, b: i64) -> Result<Self> {
        let den = FpElem::new(p, b);
        Ok(FpElem::new(p, a) * den.inv()?)
    }
}

impl core::ops::Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        let v = self.value as u64 + rhs.value as u64;
        FpElem {
            p: self.p,
            value: (v % self.p as u64) as u32,
        }
    }
}

impl core::ops::Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        let v = self.value as u64 + (self.p - rhs.value) as u64;
        FpElem {
            p: self.p,
            value: (v % self.p as u64) as u32,
        }
    }
}

impl core::ops::Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        let v = self.value as u64 * rhs.value as u64;
        FpElem {
            p: self.p,
            value: (v % self.p as u64) as u32,
        }
    }
}

impl core::ops::Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        if self.value == 0 {
            self
        } else {
            FpElem {
                p: self.p,
                value: self.p - self.value,
            }
        }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_requires_odd_prime() {
        assert!(FpField::new(5).is_ok());
        assert!(FpField::new(2).is_err());
        assert!(FpField::new(9).is_err());
        assert!(FpField::new(1).is_err());
        assert!(FpField::new(91).is_err()); // 7 * 13
        assert!(FpField::new(65537).is_err()); // >= 2^16
    }

    #[test]
    fn inverses() {
        assert_eq!(FpElem::new(5, 2).inv().unwrap(), FpElem::new(5, 3));
        assert_eq!(FpElem::new(5, 1).inv().unwrap(), FpElem::new(5, 1));
        assert_eq!(FpElem::new(7, 3).inv().unwrap(), FpElem::new(7, 5));
        assert_eq!(FpElem::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_axioms_random_triples() {
        // deterministic LCG; no need for a real RNG here
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for &p in &[3u32, 5, 7, 11, 13] {
            for _ in 0..200 {
                let a = FpElem::new(p, next() as i64);
                let b = FpElem::new(p, next() as i64);
                let c = FpElem::new(p, next() as i64);
                assert_eq!((a + b) + c, a + (b + c));
                assert_eq!((a * b) * c, a * (b * c));
                assert_eq!(a * (b + c), a * b + a * c);
                assert_eq!(a + (-a), FpElem::zero(p));
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), FpElem::one(p));
                }
            }
        }
    }

    #[test]
    fn fraction_constant() {
        // 3/2 = 4 in F_5
        assert_eq!(FpElem::fraction(5, 3, 2).unwrap(), FpElem::new(5, 4));
        assert_eq!(FpElem::fraction(3, 3, 2).unwrap(), FpElem::zero(3));
    }
}
