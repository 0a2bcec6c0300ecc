//! Polynomials and rational functions in z over Q(λ_p) or Q(λ_p)(√D), the
//! weight-2k slash operator, Laurent principal parts and q_{k,α}.
//!
//! JSON layout of a rational function:
//!
//! ```text
//! {"field": {"p": 3, "D": null | elem}, "num": [c0, c1, ...], "den": [...]}
//! ```
//!
//! Coefficients are ascending in z. Over the base field each coefficient is
//! an element array; over an extension it is `{"u": elem, "v": elem}`.

mod func;
mod numeric;
mod poly;
mod principal;

pub use func::RatFunc;
pub use numeric::{complex_point, eval_numeric, eval_poly_numeric, NumericRatFunc};
pub use poly::Poly;
pub use principal::{
    form_inverse_power, form_power_function, principal_part, q_k_alpha, root_multiplicity,
    PrincipalPart,
};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::numberfield::serial::{nf_from_json, nf_to_json, q_from_json, q_to_json};
use crate::numberfield::{Context, NFElem, QElem};

/// Coefficient types with a JSON and LaTeX encoding.
pub trait Coeff: Field {
    fn coeff_json(&self) -> Value;
    fn field_json(&self) -> Value;
    fn latex(&self) -> String;
}

impl Coeff for NFElem {
    fn coeff_json(&self) -> Value {
        nf_to_json(self)
    }
    fn field_json(&self) -> Value {
        json!({"p": self.ctx().p(), "D": Value::Null})
    }
    fn latex(&self) -> String {
        nf_latex(self)
    }
}

impl Coeff for QElem {
    fn coeff_json(&self) -> Value {
        q_to_json(self)
    }
    fn field_json(&self) -> Value {
        json!({"p": self.ctx().p(), "D": nf_to_json(self.d())})
    }
    fn latex(&self) -> String {
        let sqrt = format!("\\sqrt{{{}}}", nf_latex(self.d()));
        match (self.u().is_zero(), self.v().is_zero()) {
            (_, true) => nf_latex(self.u()),
            (true, false) => format!("\\left({}\\right){sqrt}", nf_latex(self.v())),
            (false, false) => format!(
                "{} + \\left({}\\right){sqrt}",
                nf_latex(self.u()),
                nf_latex(self.v())
            ),
        }
    }
}

pub fn ratfunc_to_json<F: Coeff>(f: &RatFunc<F>) -> Value {
    json!({
        "field": f.proto().field_json(),
        "num": f.num().coeffs().iter().map(Coeff::coeff_json).collect::<Vec<_>>(),
        "den": f.den().coeffs().iter().map(Coeff::coeff_json).collect::<Vec<_>>(),
    })
}

/// A parsed rational function over either coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyRatFunc {
    Base(RatFunc<NFElem>),
    Ext(RatFunc<QElem>),
}

impl AnyRatFunc {
    pub fn to_json(&self) -> Value {
        match self {
            AnyRatFunc::Base(f) => ratfunc_to_json(f),
            AnyRatFunc::Ext(f) => ratfunc_to_json(f),
        }
    }
}

fn coeff_list(v: &Value, key: &str) -> Result<Vec<Value>> {
    match v.get(key) {
        Some(Value::Array(a)) => Ok(a.clone()),
        _ => Err(Error::Parse(format!("rational function is missing \"{key}\""))),
    }
}

/// Parse the JSON layout above; `ctx` must match `field.p`.
pub fn ratfunc_from_json(ctx: &Context, v: &Value) -> Result<AnyRatFunc> {
    let field = v
        .get("field")
        .ok_or_else(|| Error::Parse("rational function is missing \"field\"".into()))?;
    let p = field.get("p").and_then(Value::as_u64);
    if p != Some(ctx.p() as u64) {
        return Err(Error::Parse(format!(
            "field.p is {:?} but the context has p = {}",
            field.get("p"),
            ctx.p()
        )));
    }
    let num = coeff_list(v, "num")?;
    let den = coeff_list(v, "den")?;
    match field.get("D") {
        None | Some(Value::Null) => {
            let zero = NFElem::zero(ctx);
            let conv = |xs: &[Value]| -> Result<Poly<NFElem>> {
                let c = xs.iter().map(|x| nf_from_json(ctx, x)).collect::<Result<Vec<_>>>()?;
                Ok(Poly::new(c, &zero))
            };
            Ok(AnyRatFunc::Base(RatFunc::new(conv(&num)?, conv(&den)?)?))
        }
        Some(dv) => {
            let d = nf_from_json(ctx, dv)?;
            let zero = QElem::new(NFElem::zero(ctx), NFElem::zero(ctx), d.clone())?;
            let conv = |xs: &[Value]| -> Result<Poly<QElem>> {
                let c = xs.iter().map(|x| q_from_json(ctx, &d, x)).collect::<Result<Vec<_>>>()?;
                Ok(Poly::new(c, &zero))
            };
            Ok(AnyRatFunc::Ext(RatFunc::new(conv(&num)?, conv(&den)?)?))
        }
    }
}

fn rational_latex(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// LaTeX for an element of Q(λ_p), highest power of λ first.
pub fn nf_latex(x: &NFElem) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in x.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mag = c.abs();
        if i == 0 || !mag.is_one() {
            out.push_str(&rational_latex(&mag));
        }
        match i {
            0 => {}
            1 => out.push_str("\\lambda"),
            _ => out.push_str(&format!("\\lambda^{{{i}}}")),
        }
    }
    out
}

fn needs_parens(s: &str) -> bool {
    s.trim_start_matches('-').contains([' ', '+'])
}

pub fn poly_latex<F: Coeff>(p: &Poly<F>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mut s = c.latex();
        let neg = !needs_parens(&s) && s.starts_with('-');
        if neg {
            s.remove(0);
        }
        if !out.is_empty() {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let unit = s == "1" && i > 0;
        if !unit {
            if needs_parens(&s) && i > 0 {
                out.push_str(&format!("\\left({s}\\right)"));
            } else {
                out.push_str(&s);
                if i > 0 && s.ends_with(|c: char| c.is_ascii_alphabetic()) {
                    out.push(' ');
                }
            }
        }
        match i {
            0 => {}
            1 => out.push('z'),
            _ => out.push_str(&format!("z^{{{i}}}")),
        }
    }
    out
}

pub fn ratfunc_latex<F: Coeff>(f: &RatFunc<F>) -> String {
    if f.den().is_constant() {
        poly_latex(f.num())
    } else {
        format!("\\frac{{{}}}{{{}}}", poly_latex(f.num()), poly_latex(f.den()))
    }
}
