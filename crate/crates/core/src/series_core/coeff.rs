//! The coefficient-ring abstraction shared by all series operations.

use super::rational::{qo, qz, Q};
use super::ratfn::RatFn;
use num_traits::Zero;
use std::fmt::Debug;

/// A commutative Q-algebra usable as a series coefficient.
///
/// Zero and one are produced from an existing element so that instances
/// carrying context (a cohomology ring) can be used.
pub trait Coeff: Clone + Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, s: &Q) -> Self;
    fn is_nil(&self) -> bool;
    /// Multiplicative inverse, when it exists.
    fn inv(&self) -> Option<Self>;

    fn neg(&self) -> Self {
        self.scale(&-qo())
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn from_q_like(&self, s: &Q) -> Self {
        self.one_like().scale(s)
    }
}

impl Coeff for Q {
    fn zero_like(&self) -> Self {
        qz()
    }
    fn one_like(&self) -> Self {
        qo()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, s: &Q) -> Self {
        self * s
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(qo() / self)
        }
    }
}

impl Coeff for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero()
    }
    fn one_like(&self) -> Self {
        RatFn::one()
    }
    fn add(&self, o: &Self) -> Self {
        RatFn::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFn::mul(self, o)
    }
    fn scale(&self, s: &Q) -> Self {
        RatFn::scale(self, s)
    }
    fn is_nil(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFn::inv(self).ok()
    }
}
