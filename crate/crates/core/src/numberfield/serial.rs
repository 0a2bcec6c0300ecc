//! Text and JSON encodings of field elements.
//!
//! An [`NFElem`] serializes as a JSON array of `"num/den"` strings in lowest
//! terms, little-endian in powers of λ_p, one entry per basis element. A
//! [`QElem`] serializes as `{"u": ..., "v": ...}`; its D is carried by the
//! enclosing object.
//!
//! The compact command-line syntax is
//!
//! ```text
//! elem := rat (':' rat)*        coefficients of 1, λ, λ², ... in order
//! rat  := ['-'] digits ['/' digits]
//! form := elem ',' elem ',' elem
//! ```
//!
//! so `1,-1,-1` is the form [1, −1, −1] and `0:1` is λ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Context, NFElem, QElem};
use crate::error::{Error, Result};

pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer '{t}'")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn nf_to_strings(x: &NFElem) -> Vec<String> {
    x.coeffs().iter().map(rational_to_string).collect()
}

pub fn nf_from_strings(ctx: &Context, items: &[String]) -> Result<NFElem> {
    if items.len() > ctx.degree() {
        return Err(Error::Parse(format!(
            "element has {} coefficients but Q(λ_{}) has degree {}",
            items.len(),
            ctx.p(),
            ctx.degree()
        )));
    }
    let coeffs = items
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(NFElem::from_coeffs(ctx, coeffs))
}

pub fn nf_to_json(x: &NFElem) -> serde_json::Value {
    serde_json::Value::from(nf_to_strings(x))
}

pub fn nf_from_json(ctx: &Context, v: &serde_json::Value) -> Result<NFElem> {
    let items: Vec<String> = match v {
        serde_json::Value::Array(a) => a
            .iter()
            .map(|x| match x {
                serde_json::Value::String(s) => Ok(s.clone()),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::Parse(format!("bad coefficient {x}"))),
            })
            .collect::<Result<_>>()?,
        serde_json::Value::String(s) => vec![s.clone()],
        serde_json::Value::Number(n) => vec![n.to_string()],
        _ => return Err(Error::Parse(format!("bad field element {v}"))),
    };
    nf_from_strings(ctx, &items)
}

/// Parse the compact `rat(:rat)*` syntax.
pub fn parse_elem(ctx: &Context, s: &str) -> Result<NFElem> {
    let items: Vec<String> = s.split(':').map(|t| t.to_string()).collect();
    nf_from_strings(ctx, &items)
}

/// Parse `elem,elem,elem`.
pub fn parse_triple(ctx: &Context, s: &str) -> Result<[NFElem; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "expected three comma-separated coefficients, got '{s}'"
        )));
    }
    Ok([
        parse_elem(ctx, parts[0])?,
        parse_elem(ctx, parts[1])?,
        parse_elem(ctx, parts[2])?,
    ])
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct QElemJson {
    pub u: serde_json::Value,
    pub v: serde_json::Value,
}

pub fn q_to_json(x: &QElem) -> serde_json::Value {
    serde_json::json!({ "u": nf_to_json(x.u()), "v": nf_to_json(x.v()) })
}

pub fn q_from_json(ctx: &Context, d: &NFElem, v: &serde_json::Value) -> Result<QElem> {
    let j: QElemJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    QElem::new(nf_from_json(ctx, &j.u)?, nf_from_json(ctx, &j.v)?, d.clone())
}
