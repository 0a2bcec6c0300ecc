//! RPF specification files.
//!
//! ```json
//! {
//!   "p": 3, "k": 1, "mode": "symmetric",
//!   "classes": [{"seed": "1,-1,-1", "coeff": ["1/1"]}],
//!   "c0": ["0/1"], "a0": ["0/1"], "b1": ["0/1"], "cn": []
//! }
//! ```
//!
//! `seed` is either the compact `elem,elem,elem` string or a form object
//! `{"A","B","C"}`. In symmetric mode `coeff` is d_ℓ in Q(λ_p); in general
//! mode it is C_ℓ, either a base element or `{"u","v"}` over the seed's
//! discriminant. Missing scalars default to 0.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::build::{build_general, build_symmetric};
use crate::dynamics::{cycle_from, Cycle};
use crate::error::{Error, Result};
use crate::heckealg::Bqf;
use crate::numberfield::serial::{nf_from_json, nf_to_json, parse_triple, q_from_json, q_to_json};
use crate::numberfield::{make_context, Context, NFElem, QElem};
use crate::ratfunc::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symmetric,
    General,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    seed: Value,
    coeff: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    p: i64,
    k: u32,
    mode: Mode,
    #[serde(default)]
    classes: Vec<RawClass>,
    #[serde(default)]
    c0: Option<Value>,
    #[serde(default)]
    a0: Option<Value>,
    #[serde(default)]
    b1: Option<Value>,
    #[serde(default)]
    cn: Option<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClassCoeff {
    Base(NFElem),
    Ext(QElem),
}

#[derive(Clone, Debug)]
pub struct ClassSpec {
    pub cycle: Cycle,
    pub coeff: ClassCoeff,
}

#[derive(Clone, Debug)]
pub struct RpfSpec {
    pub ctx: Context,
    pub k: u32,
    pub mode: Mode,
    pub classes: Vec<ClassSpec>,
    pub c0: NFElem,
    pub a0: NFElem,
    pub b1: NFElem,
    pub cn: Vec<NFElem>,
}

fn parse_seed(ctx: &Context, v: &Value) -> Result<Bqf> {
    match v {
        Value::String(s) => {
            let [a, b, c] = parse_triple(ctx, s)?;
            Bqf::new(a, b, c)
        }
        Value::Object(_) => Bqf::from_json(ctx, v),
        _ => Err(Error::Parse(format!("bad seed form {v}"))),
    }
}

fn opt_elem(ctx: &Context, v: &Option<Value>) -> Result<NFElem> {
    match v {
        None | Some(Value::Null) => Ok(NFElem::zero(ctx)),
        Some(x) => nf_from_json(ctx, x),
    }
}

impl RpfSpec {
    pub fn from_json(v: &Value) -> Result<RpfSpec> {
        let raw: RawSpec = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let ctx = make_context(raw.p)?;
        if raw.k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        let mut classes = Vec::with_capacity(raw.classes.len());
        for c in &raw.classes {
            let seed = parse_seed(&ctx, &c.seed)?;
            let cycle = cycle_from(&ctx, &seed)?;
            let coeff = match (raw.mode, &c.coeff) {
                (Mode::General, Value::Object(_)) => ClassCoeff::Ext(q_from_json(&ctx, seed.disc(), &c.coeff)?),
                (_, x) => ClassCoeff::Base(nf_from_json(&ctx, x)?),
            };
            classes.push(ClassSpec { cycle, coeff });
        }
        let cn = raw
            .cn
            .unwrap_or_default()
            .iter()
            .map(|x| nf_from_json(&ctx, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(RpfSpec {
            k: raw.k,
            mode: raw.mode,
            classes,
            c0: opt_elem(&ctx, &raw.c0)?,
            a0: opt_elem(&ctx, &raw.a0)?,
            b1: opt_elem(&ctx, &raw.b1)?,
            cn,
            ctx,
        })
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .classes
            .iter()
            .map(|c| {
                let coeff = match &c.coeff {
                    ClassCoeff::Base(x) => nf_to_json(x),
                    ClassCoeff::Ext(x) => q_to_json(x),
                };
                serde_json::json!({"seed": c.cycle.forms[0].to_json(), "coeff": coeff})
            })
            .collect();
        serde_json::json!({
            "p": self.ctx.p(),
            "k": self.k,
            "mode": self.mode,
            "classes": classes,
            "c0": nf_to_json(&self.c0),
            "a0": nf_to_json(&self.a0),
            "b1": nf_to_json(&self.b1),
            "cn": self.cn.iter().map(nf_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn cycles(&self) -> Vec<Cycle> {
        self.classes.iter().map(|c| c.cycle.clone()).collect()
    }

    /// Build the function; the second value carries non-fatal warnings.
    pub fn build(&self) -> Result<(RatFunc<NFElem>, Vec<String>)> {
        let mut warnings = Vec::new();
        let q = match self.mode {
            Mode::Symmetric => {
                if self.cn.iter().any(|c| !c.is_zero()) {
                    warnings.push("nonzero c_n ignored in symmetric mode".to_string());
                }
                let classes = self
                    .classes
                    .iter()
                    .map(|c| match &c.coeff {
                        ClassCoeff::Base(d) => Ok((c.cycle.clone(), d.clone())),
                        ClassCoeff::Ext(_) => Err(Error::InvalidArgument(
                            "symmetric mode takes base-field coefficients".into(),
                        )),
                    })
                    .collect::<Result<Vec<_>>>()?;
                build_symmetric(&self.ctx, self.k, &classes, &self.c0, &self.a0, &self.b1)?
            }
            Mode::General => {
                let classes: Vec<(Cycle, QElem)> = self
                    .classes
                    .iter()
                    .map(|c| {
                        let q = match &c.coeff {
                            ClassCoeff::Base(x) => QElem::from_base(x.clone(), c.cycle.disc()),
                            ClassCoeff::Ext(x) => x.clone(),
                        };
                        (c.cycle.clone(), q)
                    })
                    .collect();
                build_general(&self.ctx, self.k, &classes, &self.c0, &self.a0, &self.b1, &self.cn)?
            }
        };
        Ok((q, warnings))
    }
}
