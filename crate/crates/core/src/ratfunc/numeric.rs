use super::func::RatFunc;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::numberfield::interval::{ComplexInterval, RatInterval};

fn enclose_coeffs<F: Field>(p: &Poly<F>, bits: u32) -> Vec<RatInterval> {
    p.coeffs().iter().map(|c| c.enclose(bits).round_out(bits)).collect()
}

fn horner(coeffs: &[RatInterval], z0: &ComplexInterval, bits: u32) -> ComplexInterval {
    let mut acc = ComplexInterval::zero();
    for c in coeffs.iter().rev() {
        acc = (&acc * z0).round_out(bits);
        acc.re = &acc.re + c;
    }
    acc
}

/// Horner evaluation of p at z0 with every coefficient replaced by its enclosure.
pub fn eval_poly_numeric<F: Field>(p: &Poly<F>, z0: &ComplexInterval, bits: u32) -> ComplexInterval {
    horner(&enclose_coeffs(p, bits + 8), z0, bits + 8)
}

/// A rational function with coefficient enclosures computed once, for
/// evaluation at many points.
#[derive(Clone, Debug)]
pub struct NumericRatFunc {
    num: Vec<RatInterval>,
    den: Vec<RatInterval>,
    bits: u32,
}

impl NumericRatFunc {
    pub fn new<F: Field>(f: &RatFunc<F>, bits: u32) -> Self {
        NumericRatFunc {
            num: enclose_coeffs(f.num(), bits + 8),
            den: enclose_coeffs(f.den(), bits + 8),
            bits,
        }
    }

    /// Certified enclosure of f(z0).
    pub fn eval(&self, z0: &ComplexInterval) -> Result<ComplexInterval> {
        let w = self.bits + 8;
        let n = horner(&self.num, z0, w);
        let d = horner(&self.den, z0, w);
        let dinv = d.recip().ok_or(Error::PoleProximity)?;
        Ok((&n * &dinv).round_out(w))
    }
}

/// Certified enclosure of f(z0).
///
/// Errors with [`Error::PoleProximity`] when the denominator's enclosure
/// contains zero.
pub fn eval_numeric<F: Field>(f: &RatFunc<F>, z0: &ComplexInterval, bits: u32) -> Result<ComplexInterval> {
    NumericRatFunc::new(f, bits).eval(z0)
}

/// Exact complex point as a degenerate interval.
pub fn complex_point(re: &num_rational::BigRational, im: &num_rational::BigRational) -> ComplexInterval {
    ComplexInterval::new(RatInterval::point(re.clone()), RatInterval::point(im.clone()))
}
