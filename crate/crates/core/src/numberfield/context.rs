use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{rational_from_f64, RatInterval};
use crate::error::{Error, Result};

/// The field Q(λ_p), λ_p = 2cos(π/p), together with a certified real
/// enclosure of the embedding.
pub struct NFContext {
    p: u32,
    /// Monic minimal polynomial of λ_p, ascending coefficients.
    minpoly: Vec<BigInt>,
    /// `reduction[i]` expresses λ^(degree + i) in the power basis.
    reduction: Vec<Vec<BigRational>>,
    /// Narrowest enclosure computed so far. Refinement only ever narrows it.
    enclosure: RwLock<RatInterval>,
}

impl fmt::Debug for NFContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NFContext")
            .field("p", &self.p)
            .field("minpoly", &self.minpoly)
            .finish()
    }
}

/// Shared handle to a number-field context.
pub type Context = Arc<NFContext>;

/// Build the context for G_p.
pub fn make_context(p: i64) -> Result<Context> {
    if p < 3 || p > u32::MAX as i64 / 2 {
        return Err(Error::InvalidP(p));
    }
    let p = p as u32;
    let minpoly = real_cyclotomic_minpoly(p);
    let degree = minpoly.len() - 1;

    let mut reduction = Vec::with_capacity(degree.saturating_sub(1));
    // λ^degree = -(m_0 + m_1 λ + ... + m_{n-1} λ^{n-1})
    let mut cur: Vec<BigRational> = minpoly[..degree]
        .iter()
        .map(|c| BigRational::from_integer(-c))
        .collect();
    for _ in 0..degree.saturating_sub(1).max(1) {
        reduction.push(cur.clone());
        // multiply by λ
        let top = cur[degree - 1].clone();
        let mut next = vec![BigRational::zero(); degree];
        next[1..degree].clone_from_slice(&cur[..degree - 1]);
        if !top.is_zero() {
            for i in 0..degree {
                next[i] -= &top * BigRational::from_integer(minpoly[i].clone());
            }
        }
        cur = next;
    }

    let enclosure = initial_enclosure(p, &minpoly)?;
    Ok(Arc::new(NFContext {
        p,
        minpoly,
        reduction,
        enclosure: RwLock::new(enclosure),
    }))
}

impl NFContext {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Minimal polynomial, ascending coefficients.
    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// Minimal polynomial, descending coefficients (the CLI and JSON order).
    pub fn minpoly_descending(&self) -> Vec<BigInt> {
        self.minpoly.iter().rev().cloned().collect()
    }

    pub(crate) fn reduction(&self) -> &[Vec<BigRational>] {
        &self.reduction
    }

    /// Enclosure of 2cos(π/p) of width at most 2^-bits.
    pub fn embedding(&self, bits: u32) -> RatInterval {
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
        {
            let cur = self.enclosure.read().unwrap();
            if cur.width() <= target {
                return cur.clone();
            }
        }
        let mut cur = self.enclosure.read().unwrap().clone();
        let sign_lo = eval_int_poly(&self.minpoly, cur.lo()).cmp(&BigRational::zero());
        while cur.width() > target {
            let mid = cur.midpoint();
            let v = eval_int_poly(&self.minpoly, &mid);
            match v.cmp(&BigRational::zero()) {
                Ordering::Equal => {
                    cur = RatInterval::point(mid);
                    break;
                }
                s if s == sign_lo => cur = RatInterval::new(mid, cur.hi().clone()),
                _ => cur = RatInterval::new(cur.lo().clone(), mid),
            }
        }
        let mut w = self.enclosure.write().unwrap();
        if cur.width() < w.width() {
            *w = cur.clone();
        }
        cur
    }

    /// m_p evaluated over the embedding enclosure at the given precision.
    pub fn minpoly_on_embedding(&self, bits: u32) -> RatInterval {
        let x = self.embedding(bits);
        let mut acc = RatInterval::from_int(0);
        for c in self.minpoly.iter().rev() {
            acc = &(&acc * &x) + &RatInterval::point(BigRational::from_integer(c.clone()));
        }
        acc
    }

    pub fn same_field(&self, other: &NFContext) -> bool {
        self.p == other.p
    }
}

fn eval_int_poly(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn initial_enclosure(p: u32, minpoly: &[BigInt]) -> Result<RatInterval> {
    let approx = 2.0 * (std::f64::consts::PI / p as f64).cos();
    let x = rational_from_f64(approx);
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 40);
    let lo = &x - &eps;
    let hi = &x + &eps;
    let vlo = eval_int_poly(minpoly, &lo);
    let vhi = eval_int_poly(minpoly, &hi);
    if vlo.is_zero() {
        return Ok(RatInterval::point(lo));
    }
    if vhi.is_zero() {
        return Ok(RatInterval::point(hi));
    }
    if vlo.signum() == vhi.signum() {
        return Err(Error::InvalidArgument(format!(
            "no sign change of m_{p} near 2cos(pi/{p})"
        )));
    }
    Ok(RatInterval::new(lo, hi))
}

/// Integer polynomials, ascending coefficients.
fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic integer polynomial.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let ql = num.len() + 1 - dl;
    let mut q = vec![BigInt::zero(); ql];
    for i in (0..ql).rev() {
        let c = rem[i + dl - 1].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..dl {
            rem[i + j] -= &c * &den[j];
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// The n-th cyclotomic polynomial, ascending coefficients.
pub fn cyclotomic(n: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in 1..n {
        if n.is_multiple_of(d) {
            den = poly_mul(&den, &cyclotomic(d));
        }
    }
    poly_div_exact(&num, &den)
}

/// Minimal polynomial of λ_p from the palindromic transform
/// Φ_{2p}(x) = x^h Ψ(x + 1/x).
fn real_cyclotomic_minpoly(p: u32) -> Vec<BigInt> {
    let mut rest = cyclotomic(2 * p);
    let h = (rest.len() - 1) / 2;
    let mut psi = vec![BigInt::zero(); h + 1];
    for j in (0..=h).rev() {
        let c = rest[h + j].clone();
        if c.is_zero() {
            continue;
        }
        // subtract c * x^(h-j) (x^2 + 1)^j
        let mut binom = BigInt::one();
        for i in 0..=j {
            rest[h - j + 2 * i] -= &c * &binom;
            binom = binom * BigInt::from(j - i) / BigInt::from(i + 1);
        }
        psi[j] = c;
    }
    debug_assert!(rest.iter().all(Zero::is_zero));
    psi
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            while n.is_multiple_of(f) {
                n /= f;
            }
            result -= result / f;
        }
        f += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ContextJson {
    pub p: u32,
    /// Descending coefficients.
    pub minpoly: Vec<i64>,
}

impl From<&NFContext> for ContextJson {
    fn from(ctx: &NFContext) -> Self {
        ContextJson {
            p: ctx.p,
            minpoly: ctx
                .minpoly_descending()
                .iter()
                .map(|c| i64::try_from(c).expect("minimal polynomial coefficient fits in i64"))
                .collect(),
        }
    }
}
