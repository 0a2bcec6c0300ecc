use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::context::Context;
use super::elem::{NFElem, SIGN_START_BITS};
use super::interval::RatInterval;
use crate::error::{Error, Result};

/// An element u + v·√D of Q(λ_p)(√D), with D a positive element of Q(λ_p).
///
/// D is not canonicalized, so two values are only comparable componentwise
/// when they share the same D. [`QElem::value_eq`] compares across
/// different D exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QElem {
    u: NFElem,
    v: NFElem,
    d: NFElem,
}

impl QElem {
    pub fn new(u: NFElem, v: NFElem, d: NFElem) -> Result<Self> {
        if d.sign() != Ordering::Greater {
            return Err(Error::NonPositiveDiscriminant);
        }
        u.checked_add(&v)?;
        u.checked_add(&d)?;
        Ok(QElem { u, v, d })
    }

    /// Embed a base-field element.
    pub fn from_base(u: NFElem, d: &NFElem) -> Self {
        let v = NFElem::zero(u.ctx());
        QElem { u, v, d: d.clone() }
    }

    /// √D itself.
    pub fn sqrt_d(d: &NFElem) -> Self {
        QElem {
            u: NFElem::zero(d.ctx()),
            v: NFElem::one(d.ctx()),
            d: d.clone(),
        }
    }

    pub fn u(&self) -> &NFElem {
        &self.u
    }

    pub fn v(&self) -> &NFElem {
        &self.v
    }

    pub fn d(&self) -> &NFElem {
        &self.d
    }

    pub fn ctx(&self) -> &Context {
        self.u.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_base(&self) -> bool {
        self.v.is_zero()
    }

    /// Lift a base element into this element's extension.
    pub fn lift(&self, x: &NFElem) -> QElem {
        QElem::from_base(x.clone(), &self.d)
    }

    fn check(&self, other: &QElem) -> Result<()> {
        self.u.checked_add(&other.u)?;
        if self.d != other.d {
            return Err(Error::DiscriminantMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &QElem) -> Result<QElem> {
        self.check(o)?;
        Ok(QElem {
            u: &self.u + &o.u,
            v: &self.v + &o.v,
            d: self.d.clone(),
        })
    }

    pub fn checked_sub(&self, o: &QElem) -> Result<QElem> {
        self.check(o)?;
        Ok(QElem {
            u: &self.u - &o.u,
            v: &self.v - &o.v,
            d: self.d.clone(),
        })
    }

    pub fn checked_mul(&self, o: &QElem) -> Result<QElem> {
        self.check(o)?;
        let u = &(&self.u * &o.u) + &(&(&self.v * &o.v) * &self.d);
        let v = &(&self.u * &o.v) + &(&self.v * &o.u);
        Ok(QElem {
            u,
            v,
            d: self.d.clone(),
        })
    }

    /// u² − v²D, the product with the conjugate.
    pub fn norm(&self) -> NFElem {
        &(&self.u * &self.u) - &(&(&self.v * &self.v) * &self.d)
    }

    pub fn inv(&self) -> Result<QElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        if n.is_zero() {
            // D is a square in Q(λ_p) and |u/v| is √D, so the value lies in the base field
            let mut r = &self.u / &self.v;
            if r.is_negative() {
                r = -r;
            }
            let value = &self.u + &(&self.v * &r);
            return Ok(QElem::from_base(value.inv()?, &self.d));
        }
        let ninv = n.inv()?;
        Ok(QElem {
            u: &self.u * &ninv,
            v: -(&self.v * &ninv),
            d: self.d.clone(),
        })
    }

    pub fn checked_div(&self, o: &QElem) -> Result<QElem> {
        self.check(o)?;
        self.checked_mul(&o.inv()?)
    }

    pub fn conj(&self) -> QElem {
        QElem {
            u: self.u.clone(),
            v: -&self.v,
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, c: &NFElem) -> QElem {
        QElem {
            u: &self.u * c,
            v: &self.v * c,
            d: self.d.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> QElem {
        let mut acc = self.lift(&NFElem::one(self.ctx()));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign of the real number u + v√D.
    pub fn sign(&self) -> Ordering {
        let su = self.u.sign();
        let sv = self.v.sign();
        if sv == Ordering::Equal || su == sv {
            return if su == Ordering::Equal { sv } else { su };
        }
        if su == Ordering::Equal {
            return sv;
        }
        // opposite signs: the larger square wins
        let u2 = &self.u * &self.u;
        let v2d = &(&self.v * &self.v) * &self.d;
        match u2.cmp_real(&v2d) {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Real order. Across different D, equality is decided exactly and
    /// otherwise enclosures are refined until they separate.
    pub fn cmp_real(&self, other: &QElem) -> Ordering {
        if self.d == other.d {
            return (self - other).sign();
        }
        if self.value_eq(other) {
            return Ordering::Equal;
        }
        let mut bits = SIGN_START_BITS;
        loop {
            let a = self.enclose(bits);
            let b = other.enclose(bits);
            if a.hi() < b.lo() {
                return Ordering::Less;
            }
            if b.hi() < a.lo() {
                return Ordering::Greater;
            }
            bits = bits.checked_mul(2).expect("distinct reals separate");
        }
    }

    /// Exact equality of real values, allowing different D.
    pub fn value_eq(&self, other: &QElem) -> bool {
        if self.d == other.d {
            return self == other;
        }
        // s1 = v1√D1, s2 = v2√D2; need t + s1 - s2 = 0 with t = u1 - u2
        let t = &self.u - &other.u;
        let s1sq = &(&self.v * &self.v) * &self.d;
        let s2sq = &(&other.v * &other.v) * &other.d;
        let sign_s1 = self.v.sign();
        let sign_s2 = other.v.sign();
        if sign_s1 == Ordering::Equal || sign_s2 == Ordering::Equal {
            // t + s1 = 0 or t - s2 = 0: signs opposite and squares equal
            let (s_sq, s_sign) = if sign_s1 == Ordering::Equal {
                (s2sq, sign_s2.reverse())
            } else {
                (s1sq, sign_s1)
            };
            return (&t * &t) == s_sq && t.sign() == s_sign.reverse();
        }
        // w = s1 - s2 must equal -t. First compare the squares:
        // w² = s1² + s2² - 2 v1 v2 √(D1 D2) = t²  ⇔  2 v1 v2 √(D1 D2) = R
        let r = &(&s1sq + &s2sq) - &(&t * &t);
        let v1v2 = &self.v * &other.v;
        let lhs_sq = &(&(&v1v2 * &v1v2) * &(&self.d * &other.d)) * &NFElem::from_int(self.ctx(), 4);
        if lhs_sq != &r * &r || v1v2.sign() != r.sign() {
            return false;
        }
        // then the signs: sign(s1 - s2) must equal sign(-t)
        let w_sign = match (sign_s1, sign_s2) {
            (Ordering::Greater, Ordering::Less) => Ordering::Greater,
            (Ordering::Less, Ordering::Greater) => Ordering::Less,
            (Ordering::Greater, Ordering::Greater) => s1sq.cmp_real(&s2sq),
            _ => s2sq.cmp_real(&s1sq),
        };
        w_sign == t.sign().reverse()
    }

    /// Interval image at the given precision.
    pub fn enclose(&self, bits: u32) -> RatInterval {
        let u = self.u.enclose(bits);
        if self.v.is_zero() {
            return u;
        }
        let v = self.v.enclose(bits);
        let s = self.d.enclose(bits).sqrt(bits);
        &u + &(&v * &s)
    }

    pub fn to_f64(&self) -> f64 {
        self.u.to_f64() + self.v.to_f64() * self.d.to_f64().sqrt()
    }
}

impl fmt::Debug for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else if self.u.is_zero() {
            write!(f, "({})√({})", self.v, self.d)
        } else {
            write!(f, "{} + ({})√({})", self.u, self.v, self.d)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QElem> for &QElem {
            type Output = QElem;
            fn $method(self, rhs: &QElem) -> QElem {
                self.$checked(rhs).expect("QElem arithmetic")
            }
        }
        impl $trait<QElem> for QElem {
            type Output = QElem;
            fn $method(self, rhs: QElem) -> QElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QElem {
    type Output = QElem;
    fn neg(self) -> QElem {
        QElem {
            u: -&self.u,
            v: -&self.v,
            d: self.d.clone(),
        }
    }
}

impl Neg for QElem {
    type Output = QElem;
    fn neg(self) -> QElem {
        -&self
    }
}
