//! Closed intervals with exact rational endpoints.
//!
//! Arithmetic is exact, so every enclosure is conservative by construction.
//! [`RatInterval::round_out`] snaps endpoints outward to a dyadic grid to keep
//! the bit size of long computations bounded.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "empty interval");
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(BigRational::from_integer(n.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every point of the interval, or `None` when it straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Largest absolute value attained on the interval.
    pub fn mag(&self) -> BigRational {
        std::cmp::max(self.lo.abs(), self.hi.abs())
    }

    pub fn recip(&self) -> Option<RatInterval> {
        if self.contains_zero() {
            return None;
        }
        Some(RatInterval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn square(&self) -> RatInterval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            RatInterval::new(BigRational::zero(), std::cmp::max(a, b))
        } else if a <= b {
            RatInterval::new(a, b)
        } else {
            RatInterval::new(b, a)
        }
    }

    /// Enclosure of the square root; negative parts of the input are clamped to zero.
    pub fn sqrt(&self, bits: u32) -> RatInterval {
        let lo = if self.lo.is_positive() {
            sqrt_bound(&self.lo, bits, false)
        } else {
            BigRational::zero()
        };
        let hi = if self.hi.is_positive() {
            sqrt_bound(&self.hi, bits, true)
        } else {
            BigRational::zero()
        };
        RatInterval::new(lo, hi)
    }

    /// Widen both endpoints to multiples of 2^-bits.
    pub fn round_out(&self, bits: u32) -> RatInterval {
        RatInterval::new(
            dyadic_floor(&self.lo, bits),
            -dyadic_floor(&-&self.hi, bits),
        )
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }
}

fn dyadic_floor(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = x * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.floor().to_integer(), scale)
}

fn sqrt_bound(x: &BigRational, bits: u32, upper: bool) -> BigRational {
    // sqrt(n/d) = sqrt(n*d)/d; scale by 4^bits to get `bits` fractional bits
    let shift = 2 * bits as usize;
    let nd: BigInt = x.numer() * x.denom();
    let scaled = nd << shift;
    let mut r = scaled.sqrt();
    if upper && &r * &r != scaled {
        r += 1;
    }
    let den = x.denom() << bits as usize;
    BigRational::new(r, den)
}

impl Add for &RatInterval {
    type Output = RatInterval;
    fn add(self, rhs: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &RatInterval {
    type Output = RatInterval;
    fn sub(self, rhs: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &RatInterval {
    type Output = RatInterval;
    fn mul(self, rhs: &RatInterval) -> RatInterval {
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }
}

impl Mul<&BigRational> for &RatInterval {
    type Output = RatInterval;
    fn mul(self, rhs: &BigRational) -> RatInterval {
        let a = &self.lo * rhs;
        let b = &self.hi * rhs;
        if rhs.is_negative() {
            RatInterval::new(b, a)
        } else {
            RatInterval::new(a, b)
        }
    }
}

/// Rectangular complex interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl ComplexInterval {
    pub fn new(re: RatInterval, im: RatInterval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: RatInterval) -> Self {
        ComplexInterval {
            re,
            im: RatInterval::from_int(0),
        }
    }

    pub fn zero() -> Self {
        Self::real(RatInterval::from_int(0))
    }

    pub fn one() -> Self {
        Self::real(RatInterval::from_int(1))
    }

    /// Upper bound on |z| for every z in the rectangle (max of |re| + |im|).
    pub fn mag_bound(&self) -> BigRational {
        self.re.mag() + self.im.mag()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn recip(&self) -> Option<ComplexInterval> {
        // 1/(a+bi) = (a - bi)/(a^2 + b^2)
        let norm = &self.re.square() + &self.im.square();
        let inv = norm.recip()?;
        Some(ComplexInterval {
            re: &self.re * &inv,
            im: &(-&self.im) * &inv,
        })
    }

    pub fn round_out(&self, bits: u32) -> ComplexInterval {
        ComplexInterval {
            re: self.re.round_out(bits),
            im: self.im.round_out(bits),
        }
    }

    pub fn powi(&self, n: u32, bits: u32) -> ComplexInterval {
        let mut acc = ComplexInterval::one();
        for _ in 0..n {
            acc = (&acc * self).round_out(bits);
        }
        acc
    }
}

impl Add for &ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Mul<&RatInterval> for &ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: &RatInterval) -> ComplexInterval {
        ComplexInterval {
            re: &self.re * rhs,
            im: &self.im * rhs,
        }
    }
}

/// Exact rational from a finite f64.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_encloses() {
        let two = RatInterval::from_int(2);
        let s = two.sqrt(64);
        assert!(s.lo() * s.lo() <= r(2, 1));
        assert!(s.hi() * s.hi() >= r(2, 1));
        assert!(s.width() <= r(1, 1 << 62));
        let four = RatInterval::from_int(4).sqrt(10);
        assert_eq!(four, RatInterval::from_int(2));
    }

    #[test]
    fn mul_handles_signs() {
        let a = RatInterval::new(r(-1, 1), r(2, 1));
        let b = RatInterval::new(r(-3, 1), r(1, 1));
        let c = &a * &b;
        assert_eq!(c, RatInterval::new(r(-6, 1), r(3, 1)));
    }

    #[test]
    fn round_out_is_outward() {
        let x = RatInterval::new(r(1, 3), r(2, 3));
        let y = x.round_out(8);
        assert!(y.lo() <= x.lo() && y.hi() >= x.hi());
        assert!((y.lo() * r(256, 1)).is_integer());
        assert!((y.hi() * r(256, 1)).is_integer());
    }

    #[test]
    fn complex_recip() {
        let z = ComplexInterval::new(RatInterval::from_int(0), RatInterval::from_int(1));
        let w = z.recip().unwrap();
        assert_eq!(w.re, RatInterval::from_int(0));
        assert_eq!(w.im, RatInterval::from_int(-1));
        assert!(ComplexInterval::zero().recip().is_none());
    }
}
