use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use hecke_rpf::dynamics::{cycle_from, enumerate_classes, Cycle};
use hecke_rpf::ratfunc::{ratfunc_from_json, AnyRatFunc, RatFunc};
use hecke_rpf::rpf::RpfSpec;
use hecke_rpf::{make_context, Bqf, Context, NFElem};
use serde_json::Value;

use crate::CheckArgs;

pub fn read_json(path: &Path) -> Result<Value, String> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?
    };
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_spec(path: &Path) -> Result<RpfSpec, String> {
    RpfSpec::from_json(&read_json(path)?).map_err(|e| e.to_string())
}

/// A function to check, with the cycles its poles are audited against.
pub struct Resolved {
    pub ctx: Context,
    pub k: u32,
    pub q: RatFunc<NFElem>,
    pub candidates: Vec<Cycle>,
}

fn agree<T: PartialEq + std::fmt::Display>(name: &str, flag: Option<T>, found: T) -> Result<T, String> {
    match flag {
        Some(f) if f != found => Err(format!("--{name} {f} disagrees with the input ({name} = {found})")),
        _ => Ok(found),
    }
}

fn candidates_from_json(ctx: &Context, v: &Value) -> Result<Vec<Cycle>, String> {
    let Some(items) = v.as_array() else {
        return Err("\"candidates\" must be an array of forms".into());
    };
    items
        .iter()
        .map(|f| {
            let q = Bqf::from_json(ctx, f).map_err(|e| e.to_string())?;
            cycle_from(ctx, &q).map_err(|e| format!("candidate {q}: {e}"))
        })
        .collect()
}

pub fn resolve(args: &CheckArgs) -> Result<Resolved, String> {
    let (ctx, k, q, mut candidates) = if let Some(path) = &args.spec {
        let spec = load_spec(path)?;
        agree("p", args.p, spec.ctx.p() as i64)?;
        let k = agree("k", args.k, spec.k)?;
        let (q, warnings) = spec.build().map_err(|e| e.to_string())?;
        for w in warnings {
            eprintln!("warning: {w}");
        }
        (spec.ctx.clone(), k, q, spec.cycles())
    } else {
        let path = args.function.as_ref().expect("clap enforces one source");
        let v = read_json(path)?;
        let (inner, k_in_file) = match v.get("function") {
            Some(f) => (f.clone(), v.get("k").and_then(Value::as_u64).map(|k| k as u32)),
            None => (v.clone(), None),
        };
        let p = inner
            .get("field")
            .and_then(|f| f.get("p"))
            .and_then(Value::as_i64)
            .ok_or("function is missing field.p")?;
        let p = agree("p", args.p, p)?;
        let ctx = make_context(p).map_err(|e| e.to_string())?;
        let k = match (args.k, k_in_file) {
            (Some(a), Some(b)) => agree("k", Some(a), b)?,
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return Err("--k is required for a bare function".into()),
        };
        let q = match ratfunc_from_json(&ctx, &inner).map_err(|e| e.to_string())? {
            AnyRatFunc::Base(q) => q,
            AnyRatFunc::Ext(q) => q
                .descend()
                .ok_or("function has coefficients outside Q(λ_p); √D does not cancel")?,
        };
        let candidates = match v.get("candidates") {
            Some(c) if v.get("function").is_some() => candidates_from_json(&ctx, c)?,
            _ => Vec::new(),
        };
        (ctx, k, q, candidates)
    };
    if let Some(len) = args.word_len {
        candidates.extend(enumerate_classes(&ctx, len).map_err(|e| e.to_string())?);
    }
    let unique: BTreeMap<String, Cycle> = candidates.into_iter().map(|c| (c.class_tag.clone(), c)).collect();
    Ok(Resolved {
        ctx,
        k,
        q,
        candidates: unique.into_values().collect(),
    })
}
