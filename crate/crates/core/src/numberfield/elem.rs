use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::context::{Context, NFContext};
use super::interval::RatInterval;
use crate::error::{Error, Result};

/// First precision tried by [`NFElem::sign`].
pub const SIGN_START_BITS: u32 = 64;
/// Hard cap on the precision used by [`NFElem::sign`].
pub const SIGN_CAP_BITS: u32 = 1 << 16;

/// An element of Q(λ_p): rational coefficients in the power basis of λ_p,
/// always reduced modulo the minimal polynomial.
#[derive(Clone)]
pub struct NFElem {
    ctx: Context,
    coeffs: Vec<BigRational>,
}

impl NFElem {
    pub fn zero(ctx: &Context) -> Self {
        NFElem {
            ctx: ctx.clone(),
            coeffs: vec![BigRational::zero(); ctx.degree()],
        }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Context, n: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(ctx: &Context, r: BigRational) -> Self {
        let mut e = Self::zero(ctx);
        e.coeffs[0] = r;
        e
    }

    /// The generator λ_p.
    pub fn lambda(ctx: &Context) -> Self {
        Self::from_coeffs(ctx, vec![BigRational::zero(), BigRational::one()])
    }

    /// Build from coefficients of any length, reducing modulo m_p.
    pub fn from_coeffs(ctx: &Context, coeffs: Vec<BigRational>) -> Self {
        NFElem {
            ctx: ctx.clone(),
            coeffs: reduce(ctx, coeffs),
        }
    }

    pub fn from_int_coeffs(ctx: &Context, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            ctx,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    /// Reduced coefficients, little-endian in powers of λ_p.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The element as a rational number, if it has no λ part.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// True when every coefficient is an integer, i.e. the element lies in Z[λ_p].
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn check(&self, other: &NFElem) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.same_field(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx.p(),
                right: other.ctx.p(),
            })
        }
    }

    pub fn checked_add(&self, other: &NFElem) -> Result<NFElem> {
        self.check(other)?;
        Ok(NFElem {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &NFElem) -> Result<NFElem> {
        self.check(other)?;
        Ok(NFElem {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &NFElem) -> Result<NFElem> {
        self.check(other)?;
        let n = self.coeffs.len();
        if n == 1 {
            return Ok(NFElem {
                ctx: self.ctx.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(NFElem {
            ctx: self.ctx.clone(),
            coeffs: reduce(&self.ctx, prod),
        })
    }

    pub fn checked_div(&self, other: &NFElem) -> Result<NFElem> {
        self.check(other)?;
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against m_p.
    pub fn inv(&self) -> Result<NFElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m: Vec<BigRational> = self
            .ctx
            .minpoly()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a = trim(self.coeffs.clone());
        // invariant: r0 = s0 * a (mod m), r1 = s1 * a (mod m)
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because m is irreducible and a != 0 mod m
        let c = r1[0].clone();
        debug_assert!(!c.is_zero());
        let coeffs = s1.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_coeffs(&self.ctx, coeffs))
    }

    pub fn pow(&self, n: u32) -> NFElem {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> NFElem {
        NFElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Interval image under λ_p ↦ 2cos(π/p) at the given precision.
    pub fn enclose(&self, bits: u32) -> RatInterval {
        if let Some(r) = self.as_rational() {
            return RatInterval::point(r.clone());
        }
        let x = self.ctx.embedding(bits);
        let mut acc = RatInterval::from_int(0);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &x) + &RatInterval::point(c.clone());
        }
        acc
    }

    /// Certified sign under the real embedding λ_p ↦ 2cos(π/p).
    pub fn sign(&self) -> Ordering {
        self.try_sign().expect("nonzero elements have nonzero real image")
    }

    pub fn try_sign(&self) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        let mut bits = SIGN_START_BITS;
        while bits <= SIGN_CAP_BITS {
            let iv = self.enclose(bits);
            if let Some(s) = iv.sign() {
                if s != Ordering::Equal {
                    return Ok(s);
                }
            }
            bits *= 2;
        }
        Err(Error::PrecisionCap(SIGN_CAP_BITS))
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Compare real images.
    pub fn cmp_real(&self, other: &NFElem) -> Ordering {
        (self - other).sign()
    }

    /// Rough f64 value, for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let lam = 2.0 * (std::f64::consts::PI / self.ctx.p() as f64).cos();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * lam + rat_to_f64(c);
        }
        acc
    }

    /// Positive gcd of the integer coefficients divided by the lcm of the
    /// denominators, i.e. the rational content of the coefficient vector.
    pub fn rational_content(items: &[&NFElem]) -> BigRational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for e in items {
            for c in &e.coeffs {
                g = g.gcd(c.numer());
                l = l.lcm(c.denom());
            }
        }
        if g.is_zero() {
            BigRational::one()
        } else {
            BigRational::new(g, l)
        }
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn reduce(ctx: &NFContext, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let n = ctx.degree();
    if coeffs.len() <= n {
        coeffs.resize(n, BigRational::zero());
        return coeffs;
    }
    let table = ctx.reduction();
    let mut out: Vec<BigRational> = coeffs[..n].to_vec();
    for (i, c) in coeffs.into_iter().enumerate().skip(n) {
        if c.is_zero() {
            continue;
        }
        let k = i - n;
        if k < table.len() {
            for (o, t) in out.iter_mut().zip(&table[k]) {
                if !t.is_zero() {
                    *o += &c * t;
                }
            }
        } else {
            // beyond the table: fold one power at a time
            let mut tail = vec![BigRational::zero(); i + 1];
            tail[i] = c;
            let folded = reduce_slow(ctx, tail);
            for (o, t) in out.iter_mut().zip(folded) {
                *o += t;
            }
        }
    }
    out
}

fn reduce_slow(ctx: &NFContext, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let n = ctx.degree();
    let m = ctx.minpoly();
    while coeffs.len() > n {
        let top = coeffs.pop().unwrap();
        let shift = coeffs.len() - n;
        for i in 0..n {
            coeffs[shift + i] -= &top * BigRational::from_integer(m[i].clone());
        }
    }
    coeffs.resize(n, BigRational::zero());
    coeffs
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let lead = b.last().unwrap().clone();
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut q = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = &rem[i + b.len() - 1] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    rem.truncate(b.len() - 1);
    (trim(q), trim(rem))
}

impl PartialEq for NFElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for NFElem {}

impl std::hash::Hash for NFElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.p().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NFElem {
    /// Polynomial in λ with rational coefficients, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&NFElem> for &NFElem {
            type Output = NFElem;
            /// Panics on a context mismatch; use the `checked_*` form to handle it.
            fn $method(self, rhs: &NFElem) -> NFElem {
                self.$checked(rhs).expect("NFElem arithmetic")
            }
        }
        impl $trait<NFElem> for NFElem {
            type Output = NFElem;
            fn $method(self, rhs: NFElem) -> NFElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&NFElem> for NFElem {
            type Output = NFElem;
            fn $method(self, rhs: &NFElem) -> NFElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &NFElem {
    type Output = NFElem;
    fn neg(self) -> NFElem {
        NFElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for NFElem {
    type Output = NFElem;
    fn neg(self) -> NFElem {
        -&self
    }
}
