//! Exact rationals with computable p-adic valuation and mod-p reduction.

use crate::error::{Error, Result};
use crate::fp::FpElem;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Canonical rational (gcd 1, positive denominator) over arbitrary-precision
/// integers. `BigRational` maintains the canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicRational {
    r: BigRational,
}

impl PadicRational {
    pub fn zero() -> Self {
        PadicRational {
            r: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        PadicRational {
            r: BigRational::from_integer(BigInt::from(n)),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        PadicRational {
            r: BigRational::from_integer(n),
        }
    }

    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(PadicRational {
            r: BigRational::new(num, den),
        })
    }

    pub fn from_frac(num: i64, den: i64) -> Result<Self> {
        Self::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        PadicRational { r }
    }

    pub fn ratio(&self) -> &BigRational {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.r.is_integer()
    }

    /// ν_p(x) = ν_p(num) - ν_p(den); `None` for x = 0 (valuation +inf).
    pub fn nu(&self, p: u32) -> Option<i64> {
        if self.r.is_zero() {
            return None;
        }
        // gcd(num, den) = 1, so p divides at most one of them
        Some(int_nu(self.r.numer(), p) - int_nu(self.r.denom(), p))
    }

    /// Reduction mod p; defined iff ν_p >= 0.
    pub fn reduce_mod(&self, p: u32) -> Result<FpElem> {
        match self.nu(p) {
            None => Ok(FpElem::zero(p)),
            Some(v) if v < 0 => Err(Error::NegativeValuation),
            Some(v) if v > 0 => Ok(FpElem::zero(p)),
            _ => {
                let pb = BigInt::from(p);
                let n = self.r.numer().mod_floor_to_u32(&pb);
                let d = self.r.denom().mod_floor_to_u32(&pb);
                Ok(FpElem::new(p, n as i64) * FpElem::new(p, d as i64).inv()?)
            }
        }
    }
}

fn int_nu(x: &BigInt, p: u32) -> i64 {
    debug_assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0i64;
    let mut cur = x.abs();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&cur, &pb);
        if r.is_zero() {
            v += 1;
            cur = q;
        } else {
            return v;
        }
    }
}

trait ModFloorU32 {
    fn mod_floor_to_u32(&self, m: &BigInt) -> u32;
}

impl ModFloorU32 for BigInt {
    fn mod_floor_to_u32(&self, m: &BigInt) -> u32 {
        use num_traits::ToPrimitive;
        num_integer::Integer::mod_floor(self, m).to_u32().unwrap()
    }
}

impl core::ops::Add for PadicRational {
    type Output = PadicRational;
    fn add(self, rhs: Self) -> Self {
        PadicRational { r: self.r + rhs.r }
    }
}

impl core::ops::Sub for PadicRational {
    type Output = PadicRational;
    fn sub(self, rhs: Self) -> Self {
        PadicRational { r: self.r - rhs.r }
    }
}

impl core::ops::Mul for PadicRational {
    type Output = PadicRational;
    fn mul(self, rhs: Self) -> Self {
        PadicRational { r: self.r * rhs.r }
    }
}

impl core::ops::Neg for PadicRational {
    type Output = PadicRational;
    fn neg(self) -> Self {
        PadicRational { r: -self.r }
    }
}

impl fmt::Display for PadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_and_reduction() {
        let x = PadicRational::from_frac(50, 3).unwrap();
        assert_eq!(x.nu(5), Some(2));
        assert_eq!(x.reduce_mod(5).unwrap(), FpElem::zero(5));

        let y = PadicRational::from_frac(2, 15).unwrap();
        assert_eq!(y.nu(5), Some(-1));
        assert_eq!(y.reduce_mod(5), Err(Error::NegativeValuation));
        assert_eq!(y.nu(3), Some(-1));
        assert_eq!(y.nu(7), Some(0));
        // 2/15 = 2 * inv(15) = 2 * inv(1) = 2 mod 7
        assert_eq!(y.reduce_mod(7).unwrap(), FpElem::new(7, 2));

        assert_eq!(PadicRational::zero().nu(13), None);
        assert_eq!(PadicRational::zero().reduce_mod(13).unwrap(), FpElem::zero(13));

        let neg = PadicRational::from_frac(-27, 4).unwrap();
        // -27/4 mod 11 = 7
        assert_eq!(neg.reduce_mod(11).unwrap(), FpElem::new(11, 7));
    }
}
