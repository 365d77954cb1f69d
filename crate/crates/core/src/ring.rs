//! The coefficient-ring interface used by Witt vectors and polynomial evaluation.
//!
//! Elements carry their own context (field, truncation degree, characteristic),
//! so constructors take a template element.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::CycNum;

pub trait CoeffRing: Clone + fmt::Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: &BigInt) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// Whether both elements live in the same ring.
    fn compatible(&self, other: &Self) -> bool;
    fn ring_name(&self) -> String;

    fn pow_u(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Rings receiving an embedding of the cyclotomic field.
pub trait CycAlgebra: CoeffRing {
    fn from_cyc(&self, c: &CycNum) -> Self;
}

impl CycAlgebra for CycNum {
    fn from_cyc(&self, c: &CycNum) -> Self {
        c.clone()
    }
}

impl CoeffRing for CycNum {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        self.field().from_bigint(n)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn compatible(&self, other: &Self) -> bool {
        self.field() == other.field()
    }
    fn ring_name(&self) -> String {
        self.field().to_string()
    }
    fn pow_u(&self, n: u64) -> Self {
        self.pow(n)
    }
}

impl CoeffRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
    fn ring_name(&self) -> String {
        "Q".into()
    }
}
