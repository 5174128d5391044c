//! The differential fields the operator algebra runs over: Q(z) and F_p(z),
//! both with the derivation d/dz.

use std::fmt::Debug;

use crate::arith::fp::{FpPoly, FpRatFn};
use crate::arith::rational::int;
use crate::arith::RatFn;

pub trait DiffField: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn derivative(&self) -> Self;
    fn mul_z(&self) -> Self;

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
}

impl DiffField for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero()
    }
    fn one_like(&self) -> Self {
        RatFn::one()
    }
    fn from_i64_like(&self, k: i64) -> Self {
        RatFn::constant(int(k))
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        RatFn::inv(self)
    }
    fn derivative(&self) -> Self {
        RatFn::derivative(self)
    }
    fn mul_z(&self) -> Self {
        RatFn::mul_z(self)
    }
}

impl DiffField for FpRatFn {
    fn zero_like(&self) -> Self {
        FpRatFn::zero(self.prime())
    }
    fn one_like(&self) -> Self {
        FpRatFn::one(self.prime())
    }
    fn from_i64_like(&self, k: i64) -> Self {
        let p = self.prime();
        FpRatFn::from_poly(FpPoly::constant(p, k.rem_euclid(p as i64) as u64))
    }
    fn is_zero(&self) -> bool {
        FpRatFn::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        FpRatFn::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FpRatFn::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FpRatFn::mul(self, o)
    }
    fn neg(&self) -> Self {
        FpRatFn::neg(self)
    }
    fn inv(&self) -> Self {
        FpRatFn::inv(self)
    }
    fn derivative(&self) -> Self {
        FpRatFn::derivative(self)
    }
    fn mul_z(&self) -> Self {
        FpRatFn::mul_z(self)
    }
}
