use std::fmt;

use crate::error::Result;
use crate::numberfield::interval::RatInterval;
use crate::numberfield::{Context, NFElem, QElem};

/// Coefficient field for polynomials and rational functions.
///
/// Values carry their own context, so constants are produced from an
/// existing value of the same field (`zero_like`, `lift`).
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Embed a base-field element into this field.
    fn lift(&self, x: &NFElem) -> Self;
    fn ctx(&self) -> &Context;
    /// Real enclosure of the embedded value.
    fn enclose(&self, bits: u32) -> RatInterval;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self {
        self.lift(&NFElem::from_int(self.ctx(), n))
    }
}

impl Field for NFElem {
    fn zero_like(&self) -> Self {
        NFElem::zero(self.ctx())
    }
    fn one_like(&self) -> Self {
        NFElem::one(self.ctx())
    }
    fn is_zero(&self) -> bool {
        NFElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        NFElem::inv(self)
    }
    fn lift(&self, x: &NFElem) -> Self {
        x.clone()
    }
    fn ctx(&self) -> &Context {
        NFElem::ctx(self)
    }
    fn enclose(&self, bits: u32) -> RatInterval {
        NFElem::enclose(self, bits)
    }
    fn is_one(&self) -> bool {
        NFElem::is_one(self)
    }
}

impl Field for QElem {
    fn zero_like(&self) -> Self {
        QElem::from_base(NFElem::zero(self.ctx()), self.d())
    }
    fn one_like(&self) -> Self {
        QElem::from_base(NFElem::one(self.ctx()), self.d())
    }
    fn is_zero(&self) -> bool {
        QElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        QElem::inv(self)
    }
    fn lift(&self, x: &NFElem) -> Self {
        QElem::lift(self, x)
    }
    fn ctx(&self) -> &Context {
        QElem::ctx(self)
    }
    fn enclose(&self, bits: u32) -> RatInterval {
        QElem::enclose(self, bits)
    }
}
