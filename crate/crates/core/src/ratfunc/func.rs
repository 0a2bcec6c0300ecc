use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::heckealg::Mat2;
use crate::numberfield::{NFElem, QElem};

/// num/den with gcd 1 and monic denominator; zero is 0/1.
#[derive(Clone, PartialEq)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            let one = Poly::one(den.proto());
            return RatFunc { num, den: one };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let l = den.lead().unwrap().clone();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let li = l.inv().unwrap();
            RatFunc {
                num: num.scale(&li),
                den: den.scale(&li),
            }
        }
    }

    pub fn zero(proto: &F) -> Self {
        RatFunc {
            num: Poly::zero(proto),
            den: Poly::one(proto),
        }
    }

    pub fn constant(c: F) -> Self {
        let one = Poly::one(&c);
        RatFunc {
            num: Poly::constant(c),
            den: one,
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let one = Poly::one(p.proto());
        RatFunc { num: p, den: one }
    }

    /// c·z^n for any integer n.
    pub fn monomial(c: F, n: i64) -> Self {
        let one = c.one_like();
        if n >= 0 {
            Self::from_poly(Poly::monomial(c, n as usize))
        } else {
            Self::normalized(Poly::constant(c), Poly::monomial(one, (-n) as usize))
        }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn proto(&self) -> &F {
        self.num.proto()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        // over lcm(den1, den2) to keep degrees down
        let g = self.den.gcd(&o.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        Self::normalized(num, self.den.mul(&d2))
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.proto());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        // gcd(num, den) = 1 is preserved by powers
        RatFunc {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// Value at a finite point, or `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).div(&d).unwrap())
    }

    /// deg num − deg den; `None` for the zero function.
    pub fn degree_gap(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    /// Value at ∞: ratio of leading coefficients for equal degrees, 0 when
    /// deg num < deg den, `None` when the function has a pole at ∞.
    pub fn value_at_infinity(&self) -> Option<F> {
        match self.degree_gap() {
            None => Some(self.proto().clone()),
            Some(g) if g < 0 => Some(self.proto().clone()),
            Some(0) => Some(self.num.lead().unwrap().div(self.den.lead().unwrap()).unwrap()),
            _ => None,
        }
    }

    pub fn map<G: Field>(&self, proto: &G, f: impl Fn(&F) -> G + Copy) -> RatFunc<G> {
        RatFunc::normalized(self.num.map(proto, f), self.den.map(proto, f))
    }

    /// Weight-2k slash: (f|M)(z) = (cz + d)^{−2k} f(Mz).
    pub fn slash(&self, m: &Mat2, k: u32) -> Self {
        let proto = self.proto();
        let (a, b, c, d) = (proto.lift(&m.a), proto.lift(&m.b), proto.lift(&m.c), proto.lift(&m.d));
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap();
        let top = dn.max(dd);
        // f(Mz) = N_h / D_h with both homogenized to degree `top`
        let nh = self.num.homogenize(&a, &b, &c, &d, top);
        let dh = self.den.homogenize(&a, &b, &c, &d, top);
        let factor = Poly::new(vec![d, c], proto).pow(2 * k);
        Self::normalized(nh, dh.mul(&factor))
    }
}

impl RatFunc<NFElem> {
    /// Embed into Q(λ_p)(√D).
    pub fn lift_to(&self, d: &NFElem) -> RatFunc<QElem> {
        let proto = QElem::from_base(NFElem::zero(d.ctx()), d);
        self.map(&proto, |c| QElem::from_base(c.clone(), d))
    }
}

impl RatFunc<QElem> {
    /// Coefficients in the base field, if no √D part survives.
    pub fn descend(&self) -> Option<RatFunc<NFElem>> {
        let base = |p: &Poly<QElem>| -> Option<Poly<NFElem>> {
            let zero = NFElem::zero(p.proto().ctx());
            let v: Option<Vec<NFElem>> = p
                .coeffs()
                .iter()
                .map(|c| c.is_base().then(|| c.u().clone()))
                .collect();
            Some(Poly::new(v?, &zero))
        };
        // normalization makes den monic, so a base-field function has a base
        // den and base num
        Some(RatFunc {
            num: base(&self.num)?,
            den: base(&self.den)?,
        })
    }

    pub fn disc(&self) -> &NFElem {
        self.proto().d()
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heckealg::generators;
    use crate::numberfield::{make_context, Context};

    fn poly(ctx: &Context, c: &[i64]) -> Poly<NFElem> {
        Poly::new(c.iter().map(|&x| NFElem::from_int(ctx, x)).collect(), &NFElem::zero(ctx))
    }

    #[test]
    fn normalization() {
        let ctx = make_context(3).unwrap();
        // (2z + 2)/(2z² − 2) = 1/(z − 1)
        let f = RatFunc::new(poly(&ctx, &[2, 2]), poly(&ctx, &[-2, 0, 2])).unwrap();
        assert_eq!(f.num(), &poly(&ctx, &[1]));
        assert_eq!(f.den(), &poly(&ctx, &[-1, 1]));
        let z = RatFunc::new(poly(&ctx, &[]), poly(&ctx, &[3, 1])).unwrap();
        assert_eq!(z, RatFunc::zero(&NFElem::zero(&ctx)));
        assert!(RatFunc::new(poly(&ctx, &[1]), poly(&ctx, &[])).is_err());
    }

    #[test]
    fn slash_inverse_z_by_t() {
        let ctx = make_context(3).unwrap();
        let (_, t, _) = generators(&ctx);
        let f = RatFunc::monomial(NFElem::one(&ctx), -1);
        assert_eq!(f.slash(&t, 1), f.neg());
        assert_eq!(f.slash(&Mat2::identity(&ctx), 2), f);
    }

    #[test]
    fn slash_action_law() {
        let ctx = make_context(5).unwrap();
        let (s, t, u) = generators(&ctx);
        let f = RatFunc::new(poly(&ctx, &[1, 0, 3]), poly(&ctx, &[-1, 1, 0, 1])).unwrap();
        for k in 1..=3 {
            for (m, n) in [(&s, &t), (&u, &t), (&t, &u)] {
                assert_eq!(f.slash(m, k).slash(n, k), f.slash(&m.mul(n), k));
            }
        }
    }

    #[test]
    fn value_at_infinity() {
        let ctx = make_context(4).unwrap();
        let f = RatFunc::new(poly(&ctx, &[1, 0, 3]), poly(&ctx, &[-1, 0, 2])).unwrap();
        assert_eq!(f.value_at_infinity().unwrap().as_rational().unwrap().to_string(), "3/2");
        assert!(RatFunc::from_poly(poly(&ctx, &[0, 1])).value_at_infinity().is_none());
    }

    #[test]
    fn descend_roundtrip() {
        let ctx = make_context(3).unwrap();
        let f = RatFunc::new(poly(&ctx, &[1]), poly(&ctx, &[-1, -1, 1])).unwrap();
        let g = f.lift_to(&NFElem::from_int(&ctx, 5));
        assert_eq!(g.descend().unwrap(), f);
        let s5 = QElem::sqrt_d(&NFElem::from_int(&ctx, 5));
        assert!(g.scale(&s5).descend().is_none());
    }
}
