use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::dynamics::Cycle;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::heckealg::{generators, u_power, Bqf, Mat2};
use crate::numberfield::interval::ComplexInterval;
use crate::numberfield::serial::{nf_to_json, q_to_json};
use crate::numberfield::{Context, NFElem, QElem};
use crate::ratfunc::{ratfunc_to_json, root_multiplicity, NumericRatFunc, Poly, RatFunc};

/// q + q|T.
pub fn relation_t(ctx: &Context, q: &RatFunc<NFElem>, k: u32) -> RatFunc<NFElem> {
    let (_, t, _) = generators(ctx);
    q.add(&q.slash(&t, k))
}

/// Σ_{i=0}^{p−1} q|U^i.
pub fn relation_u(ctx: &Context, q: &RatFunc<NFElem>, k: u32) -> RatFunc<NFElem> {
    let mut acc = q.clone();
    for i in 1..ctx.p() {
        let m = u_power(ctx, i as i64).expect("i < p");
        acc = acc.add(&q.slash(&m, k));
    }
    acc
}

/// One audited pole.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleEntry {
    pub pole: QElem,
    pub order: usize,
    pub expected_order: usize,
    pub real: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleAudit {
    pub poles: Vec<PoleEntry>,
    /// Degree of the denominator left after removing every recognized factor.
    pub unrecognized_degree: usize,
    pub regular_at_infinity: bool,
    pub zero_pole_order: usize,
    pub qinf_nonzero: bool,
    pub k: u32,
}

impl PoleAudit {
    pub fn orders_ok(&self) -> bool {
        self.poles.iter().all(|e| e.order == e.expected_order && e.real)
    }

    /// Zero-pole order ≤ 2k, and = 2k iff q(∞) ≠ 0.
    pub fn zero_pole_ok(&self) -> bool {
        let top = 2 * self.k as usize;
        self.zero_pole_order <= top && ((self.zero_pole_order == top) == self.qinf_nonzero)
    }

    pub fn passed(&self) -> bool {
        self.orders_ok() && self.unrecognized_degree == 0 && self.regular_at_infinity && self.zero_pole_ok()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "poles": self.poles.iter().map(|e| json!({
                "pole": q_to_json(&e.pole),
                "D": nf_to_json(e.pole.d()),
                "approx": e.pole.to_f64(),
                "order": e.order,
                "expected_order": e.expected_order,
                "real": e.real,
            })).collect::<Vec<_>>(),
            "unrecognized_degree": self.unrecognized_degree,
            "regular_at_infinity": self.regular_at_infinity,
            "zero_pole_order": self.zero_pole_order,
            "qinf_nonzero": self.qinf_nonzero,
            "passed": self.passed(),
        })
    }
}

/// Audit the poles of q against the quadratic points of the given cycles
/// (their members and T-images) and 0.
pub fn pole_audit(ctx: &Context, q: &RatFunc<NFElem>, k: u32, candidates: &[Cycle]) -> PoleAudit {
    let (_, t, _) = generators(ctx);
    let zero = NFElem::zero(ctx);
    let mut forms: Vec<Bqf> = Vec::new();
    for c in candidates {
        for f in &c.forms {
            forms.push(f.clone());
            forms.push(f.act(&t));
        }
    }

    let mut rest = q.den().clone();
    let (zero_order, r) = root_multiplicity(&rest, &zero);
    rest = r;

    let mut poles = Vec::new();
    let mut seen: Vec<Poly<NFElem>> = Vec::new();
    for f in &forms {
        let quad = Poly::new(f.dehomogenized().to_vec(), &zero).monic();
        if seen.contains(&quad) {
            continue;
        }
        seen.push(quad.clone());
        let mut m = 0;
        loop {
            let (qq, r) = rest.divrem(&quad).expect("nonzero quadratic");
            if !r.is_zero() {
                break;
            }
            rest = qq;
            m += 1;
        }
        if m == 0 {
            continue;
        }
        let real = f.disc().sign() == Ordering::Greater;
        let alpha = f.alpha().expect("candidate forms have A ≠ 0");
        for pole in [alpha.clone(), alpha.conj()] {
            poles.push(PoleEntry {
                pole,
                order: m,
                expected_order: k as usize,
                real,
            });
        }
    }
    poles.sort_by(|a, b| a.pole.cmp_real(&b.pole));

    let regular_at_infinity = q.value_at_infinity().is_some();
    let qinf_nonzero = q.value_at_infinity().is_some_and(|v| !v.is_zero());
    PoleAudit {
        poles,
        unrecognized_degree: rest.degree().unwrap_or(0),
        regular_at_infinity,
        zero_pole_order: zero_order,
        qinf_nonzero,
        k,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub k: u32,
    pub residual1: RatFunc<NFElem>,
    pub residual2: RatFunc<NFElem>,
    pub pole_audit: PoleAudit,
}

impl VerifyReport {
    pub fn relation1_zero(&self) -> bool {
        self.residual1.is_zero()
    }

    pub fn relation2_zero(&self) -> bool {
        self.residual2.is_zero()
    }

    pub fn is_rpf(&self) -> bool {
        self.relation1_zero() && self.relation2_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "relation1_zero": self.relation1_zero(),
            "relation2_zero": self.relation2_zero(),
            "residual1": ratfunc_to_json(&self.residual1),
            "residual2": ratfunc_to_json(&self.residual2),
            "pole_audit": self.pole_audit.to_json(),
        })
    }
}

fn numeric_slash_at(
    q: &NumericRatFunc,
    m: &Mat2,
    k: u32,
    z: &ComplexInterval,
    bits: u32,
) -> Result<ComplexInterval> {
    let enc = |x: &NFElem| ComplexInterval::real(x.enclose(bits));
    let cz_d = &(&enc(&m.c) * z) + &enc(&m.d);
    let inv = cz_d.recip().ok_or(Error::PoleProximity)?;
    let mz = (&(&(&enc(&m.a) * z) + &enc(&m.b)) * &inv).round_out(bits);
    Ok((&q.eval(&mz)? * &inv.powi(2 * k, bits)).round_out(bits))
}

/// Upper bounds on |q + q|T| and |Σ q|U^i| over `points`, by direct
/// substitution into q rather than through the symbolic slash.
pub fn numeric_residuals(
    ctx: &Context,
    q: &RatFunc<NFElem>,
    k: u32,
    points: &[ComplexInterval],
    bits: u32,
) -> Result<(BigRational, BigRational)> {
    let f = NumericRatFunc::new(q, bits);
    let (_, t, _) = generators(ctx);
    let powers: Vec<Mat2> = (0..ctx.p()).map(|i| u_power(ctx, i as i64)).collect::<Result<_>>()?;
    let mut worst = (BigRational::zero(), BigRational::zero());
    for z in points {
        let fz = f.eval(z)?;
        let r1 = &fz + &numeric_slash_at(&f, &t, k, z, bits)?;
        let mut r2 = ComplexInterval::zero();
        for m in &powers {
            r2 = &r2 + &numeric_slash_at(&f, m, k, z, bits)?;
        }
        worst.0 = worst.0.max(r1.mag_bound());
        worst.1 = worst.1.max(r2.mag_bound());
    }
    Ok(worst)
}

/// Decide both defining relations exactly and audit the poles.
pub fn verify(ctx: &Context, q: &RatFunc<NFElem>, k: u32, candidates: &[Cycle]) -> Result<VerifyReport> {
    let (residual1, residual2) = rayon::join(|| relation_t(ctx, q, k), || relation_u(ctx, q, k));
    Ok(VerifyReport {
        k,
        residual1,
        residual2,
        pole_audit: pole_audit(ctx, q, k, candidates),
    })
}
