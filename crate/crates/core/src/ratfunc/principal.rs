use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::func::RatFunc;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::heckealg::{Branch, Bqf};
use crate::numberfield::{NFElem, QElem};

/// Laurent principal part Σ_{j=1}^{m} c_j (z − center)^{−j}.
///
/// `coeffs` runs from the highest order down: `coeffs[0] = c_m`, the last
/// entry is the residue c_1. An empty list means f is regular at `center`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalPart<F: Field> {
    pub center: F,
    pub coeffs: Vec<F>,
}

impl<F: Field> PrincipalPart<F> {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of (z − center)^{−j}, zero outside 1..=order.
    pub fn coeff(&self, j: usize) -> F {
        let m = self.order();
        if j == 0 || j > m {
            return self.center.zero_like();
        }
        self.coeffs[m - j].clone()
    }

    pub fn scale(&self, c: &F) -> Self {
        PrincipalPart {
            center: self.center.clone(),
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// The part as a rational function.
    pub fn to_ratfunc(&self) -> RatFunc<F> {
        let m = self.order();
        if m == 0 {
            return RatFunc::zero(&self.center);
        }
        // Σ c_j w^{m−j} over w^m, w = z − center
        let w = Poly::linear_root(&self.center);
        let mut num = Poly::zero(&self.center);
        for (i, c) in self.coeffs.iter().enumerate() {
            num = num.add(&w.pow(i as u32).scale(c));
        }
        RatFunc::new(num, w.pow(m as u32)).unwrap()
    }

    /// c with `other` = c·self, if the two are proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<F> {
        if self.center != other.center || self.order() != other.order() || self.is_empty() {
            return None;
        }
        let c = other.coeffs[0].div(&self.coeffs[0]).ok()?;
        (self.scale(&c) == *other).then_some(c)
    }
}

/// Multiplicity of `a` as a root of `p`, and the cofactor.
pub fn root_multiplicity<F: Field>(p: &Poly<F>, a: &F) -> (usize, Poly<F>) {
    let lin = Poly::linear_root(a);
    let mut cur = p.clone();
    let mut m = 0;
    if cur.is_zero() {
        return (0, cur);
    }
    loop {
        let (q, r) = cur.divrem(&lin).unwrap();
        if !r.is_zero() {
            return (m, cur);
        }
        cur = q;
        m += 1;
    }
}

/// Laurent principal part of f at `a`, computed in f's coefficient field.
pub fn principal_part<F: Field>(f: &RatFunc<F>, a: &F) -> PrincipalPart<F> {
    let (m, cof) = root_multiplicity(f.den(), a);
    if m == 0 || f.is_zero() {
        return PrincipalPart {
            center: a.clone(),
            coeffs: Vec::new(),
        };
    }
    // f = N(w + a) / (w^m E(w + a)); expand N/E to order w^{m−1}
    let n = f.num().taylor_shift(a);
    let e = cof.taylor_shift(a);
    let e0_inv = e.coeff(0).inv().expect("cofactor regular at a");
    let mut g: Vec<F> = Vec::with_capacity(m);
    for j in 0..m {
        let mut s = n.coeff(j);
        for (i, gi) in g.iter().enumerate() {
            s = s.sub(&gi.mul(&e.coeff(j - i)));
        }
        g.push(s.mul(&e0_inv));
    }
    PrincipalPart {
        center: a.clone(),
        coeffs: g,
    }
}

/// q_{k,α} = PP_α[D^{k/2} / Q_α(z,1)^k], with Q_α = Q for `Plus` and −Q for
/// `Minus` (the form whose root is α′).
///
/// The coefficient of (z − α)^{−(k−j)} is (−1)^j C(k+j−1, j) / δ^j with
/// δ = α − α′ = √D/A, so the leading coefficient is 1.
pub fn q_k_alpha(q: &Bqf, k: u32, at: Branch) -> Result<PrincipalPart<QElem>> {
    if k == 0 {
        return Err(Error::InvalidArgument("weight exponent k must be at least 1".into()));
    }
    let form = match at {
        Branch::Plus => q.clone(),
        Branch::Minus => q.neg(),
    };
    let alpha = form.alpha()?;
    let delta = alpha.sub(&alpha.conj());
    let delta_inv = delta.inv()?;
    let mut coeffs = Vec::with_capacity(k as usize);
    let mut dpow = alpha.one_like();
    for j in 0..k {
        let c = binomial(BigInt::from(k + j - 1), BigInt::from(j));
        let c = if j % 2 == 1 { -c } else { c };
        let c = NFElem::from_rational(q.ctx(), BigRational::from_integer(c));
        coeffs.push(dpow.lift(&c).mul(&dpow));
        dpow = dpow.mul(&delta_inv);
    }
    Ok(PrincipalPart {
        center: alpha,
        coeffs,
    })
}

/// D^{k/2} / Q(z,1)^k over Q(λ_p)(√D); for odd k, D^{k/2} = D^{(k−1)/2}·√D.
pub fn form_power_function(q: &Bqf, k: u32) -> RatFunc<QElem> {
    let d = q.disc();
    let sqrt_d = QElem::sqrt_d(d);
    let scalar = sqrt_d.pow(k);
    let den = Poly::from_base(&q.dehomogenized(), &sqrt_d.zero_like()).pow(k);
    RatFunc::new(Poly::constant(scalar), den).expect("A ≠ 0 or B ≠ 0")
}

/// Q(z,1)^{−k} over the base field.
pub fn form_inverse_power(q: &Bqf, k: u32) -> RatFunc<NFElem> {
    let zero = NFElem::zero(q.ctx());
    let den = Poly::new(q.dehomogenized().to_vec(), &zero).pow(k);
    RatFunc::new(Poly::one(&zero), den).expect("nonzero form")
}
