use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::numberfield::NFElem;

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
///
/// A zero value of the coefficient field is kept alongside so the zero
/// polynomial still knows its field.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>, proto: &F) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        Poly {
            coeffs,
            zero: proto.zero_like(),
        }
    }

    pub fn zero(proto: &F) -> Self {
        Poly::new(Vec::new(), proto)
    }

    pub fn one(proto: &F) -> Self {
        Poly::constant(proto.one_like())
    }

    pub fn constant(c: F) -> Self {
        let zero = c.zero_like();
        Poly::new(vec![c], &zero)
    }

    /// c·z^n
    pub fn monomial(c: F, n: usize) -> Self {
        let zero = c.zero_like();
        let mut v = vec![zero.clone(); n];
        v.push(c);
        Poly::new(v, &zero)
    }

    /// z − a
    pub fn linear_root(a: &F) -> Self {
        Poly::new(vec![a.neg(), a.one_like()], a)
    }

    /// Lift base-field coefficients into the field of `proto`.
    pub fn from_base(coeffs: &[NFElem], proto: &F) -> Self {
        Poly::new(coeffs.iter().map(|c| proto.lift(c)).collect(), proto)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn proto(&self) -> &F {
        &self.zero
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        Poly::new(v, &self.zero)
    }

    pub fn sub(&self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect();
        Poly::new(v, &self.zero)
    }

    pub fn neg(&self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(Field::neg).collect(), &self.zero)
    }

    pub fn mul(&self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(v, &self.zero)
    }

    pub fn scale(&self, c: &F) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|x| x.mul(c)).collect(), &self.zero)
    }

    /// Multiply by z^n.
    pub fn shift_up(&self, n: usize) -> Poly<F> {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); n];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v, &self.zero)
    }

    pub fn pow(&self, n: u32) -> Poly<F> {
        let mut acc = Poly::one(&self.zero);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: self = q·d + r with deg r < deg d.
    pub fn divrem(&self, d: &Poly<F>) -> Result<(Poly<F>, Poly<F>)> {
        let dl = d.lead().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(&self.zero), self.clone()));
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].mul(&dl);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].sub(&c.mul(dc));
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q, &self.zero), Poly::new(r, &self.zero)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly<F>) -> Result<Poly<F>> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Poly<F> {
        match self.lead() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, o: &Poly<F>) -> Poly<F> {
        let mut a = self.monic();
        let mut b = o.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("b nonzero");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly<F> {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.from_int(i as i64)))
            .collect();
        Poly::new(v, &self.zero)
    }

    /// p(z + a), by repeated synthetic division.
    pub fn taylor_shift(&self, a: &F) -> Poly<F> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c[j + 1].mul(a);
                c[j] = c[j].add(&t);
            }
        }
        Poly::new(c, &self.zero)
    }

    /// Σ c_i (αz + β)^i (γz + δ)^{total − i}, i.e. (γz + δ)^total · p((αz + β)/(γz + δ)).
    pub fn homogenize(&self, alpha: &F, beta: &F, gamma: &F, delta: &F, total: usize) -> Poly<F> {
        debug_assert!(self.coeffs.len() <= total + 1);
        let top = Poly::new(vec![beta.clone(), alpha.clone()], &self.zero);
        let bot = Poly::new(vec![delta.clone(), gamma.clone()], &self.zero);
        let mut top_pows = vec![Poly::one(&self.zero)];
        let mut bot_pows = vec![Poly::one(&self.zero)];
        for _ in 0..total {
            top_pows.push(top_pows.last().unwrap().mul(&top));
            bot_pows.push(bot_pows.last().unwrap().mul(&bot));
        }
        let mut acc = Poly::zero(&self.zero);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&top_pows[i].mul(&bot_pows[total - i]).scale(c));
        }
        acc
    }

    pub fn map<G: Field>(&self, proto: &G, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect(), proto)
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{i}")?,
            }
        }
        Ok(())
    }
}
