//! Common interface of the two coefficient rings (F_p and truncated F_p((t))).

use crate::error::Result;
use crate::fp::FpElem;
use crate::laurent::LaurentScalar;
use core::fmt;

pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    const RING_NAME: &'static str;

    fn prime(&self) -> u32;
    fn zero(p: u32) -> Self;
    fn one(p: u32) -> Self;
    /// Embedding of the residue r mod p.
    fn from_residue(p: u32, r: i64) -> Self;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn inv_ref(&self) -> Result<Self>;
    fn pow_u(&self, e: u128) -> Self;

    /// Tri-state zero test: `None` when undecidable at certified precision.
    fn certainly_zero(&self) -> Option<bool>;
    fn is_one(&self) -> bool;
}

impl Scalar for FpElem {
    const RING_NAME: &'static str = "fp";

    fn prime(&self) -> u32 {
        self.p()
    }
    fn zero(p: u32) -> Self {
        FpElem::zero(p)
    }
    fn one(p: u32) -> Self {
        FpElem::one(p)
    }
    fn from_residue(p: u32, r: i64) -> Self {
        FpElem::new(p, r)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn neg_ref(&self) -> Self {
        -*self
    }
    fn inv_ref(&self) -> Result<Self> {
        self.inv()
    }
    fn pow_u(&self, e: u128) -> Self {
        self.pow(e)
    }
    fn certainly_zero(&self) -> Option<bool> {
        Some(self.is_zero())
    }
    fn is_one(&self) -> bool {
        self.value() == 1
    }
}

impl Scalar for LaurentScalar {
    const RING_NAME: &'static str = "laurent";

    fn prime(&self) -> u32 {
        self.p()
    }
    fn zero(p: u32) -> Self {
        LaurentScalar::zero(p)
    }
    fn one(p: u32) -> Self {
        LaurentScalar::one(p)
    }
    fn from_residue(p: u32, r: i64) -> Self {
        LaurentScalar::from_residue(p, r)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn inv_ref(&self) -> Result<Self> {
        self.inv()
    }
    fn pow_u(&self, e: u128) -> Self {
        self.pow(e)
    }
    fn certainly_zero(&self) -> Option<bool> {
        LaurentScalar::certainly_zero(self)
    }
    fn is_one(&self) -> bool {
        LaurentScalar::is_one(self)
    }
}
