use std::path::Path;

use hecke_rpf::dynamics::{cycle_from, enumerate_classes, is_symmetric_cycle, Cycle};
use hecke_rpf::heckealg::{generators as gens, mat_to_json, u_power, Mat2};
use hecke_rpf::numberfield::serial::{parse_triple, q_to_json};
use hecke_rpf::ratfunc::{complex_point, nf_latex, ratfunc_latex, ratfunc_to_json, Coeff, RatFunc};
use hecke_rpf::rpf::{numeric_residuals, pole_audit, verify as verify_exact, Mode};
use hecke_rpf::{make_context, Bqf, Context, NFElem};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::{load_spec, resolve};
use crate::{CheckArgs, Outcome, Output};

type CmdResult = Result<Outcome, String>;

const NUMERIC_SEED: u64 = 0x5eed;

fn ctx_for(p: i64) -> Result<Context, String> {
    make_context(p).map_err(|e| e.to_string())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn int_json(n: &BigRational) -> Value {
    match n.to_i64() {
        Some(i) if n.is_integer() => json!(i),
        _ => json!(n.to_string()),
    }
}

/// `c_n x^n + … + c_0` with the variable spelled `var`.
fn poly_text(coeffs_desc: &[i64], var: &str, latex: bool) -> String {
    let deg = coeffs_desc.len() - 1;
    let mut out = String::new();
    for (i, &c) in coeffs_desc.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let e = deg - i;
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        if c.abs() != 1 || e == 0 {
            out.push_str(&c.abs().to_string());
        }
        match (e, latex) {
            (0, _) => {}
            (1, _) => out.push_str(var),
            (_, true) => out.push_str(&format!("{var}^{{{e}}}")),
            (_, false) => out.push_str(&format!("{var}^{e}")),
        }
    }
    out
}

pub fn minpoly(p: i64, fmt: Output) -> CmdResult {
    let ctx = ctx_for(p)?;
    let desc: Vec<BigRational> = ctx
        .minpoly_descending()
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    let small: Option<Vec<i64>> = desc.iter().map(|c| c.to_i64()).collect();
    let render = |latex: bool, var: &str| match &small {
        Some(c) => poly_text(c, var, latex),
        None => format!("{:?}", desc.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    };
    Ok(Outcome::Ok(match fmt {
        Output::Json => json!({
            "p": ctx.p(),
            "minpoly": desc.iter().map(int_json).collect::<Vec<_>>(),
        })
        .to_string(),
        Output::Text => render(false, "λ"),
        Output::Latex => render(true, "\\lambda"),
    }))
}

fn mat_latex(m: &Mat2) -> String {
    format!(
        "\\begin{{pmatrix}} {} & {} \\\\ {} & {} \\end{{pmatrix}}",
        nf_latex(&m.a),
        nf_latex(&m.b),
        nf_latex(&m.c),
        nf_latex(&m.d)
    )
}

pub fn generators(p: i64, fmt: Output) -> CmdResult {
    let ctx = ctx_for(p)?;
    let (s, t, u) = gens(&ctx);
    let powers: Vec<Mat2> = (0..=ctx.p() as i64)
        .map(|n| u_power(&ctx, n))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let t2 = t.mul(&t);
    let up = &powers[ctx.p() as usize];
    Ok(Outcome::Ok(match fmt {
        Output::Json => pretty(&json!({
            "p": ctx.p(),
            "lambda": NFElem::lambda(&ctx).to_f64(),
            "S": mat_to_json(&s),
            "T": mat_to_json(&t),
            "U": mat_to_json(&u),
            "u_powers": powers.iter().map(mat_to_json).collect::<Vec<_>>(),
            "T_squared_is_minus_identity": t2.neg().is_identity(),
            "U_to_p_is_minus_identity": up.neg().is_identity(),
        })),
        Output::Text => {
            let mut lines = vec![format!("S = {s}"), format!("T = {t}"), format!("U = {u}")];
            for (n, m) in powers.iter().enumerate() {
                lines.push(format!("U^{n} = {m}"));
            }
            lines.join("\n")
        }
        Output::Latex => {
            let mut lines = vec![
                format!("S = {}", mat_latex(&s)),
                format!("T = {}", mat_latex(&t)),
                format!("U = {}", mat_latex(&u)),
            ];
            for (n, m) in powers.iter().enumerate() {
                lines.push(format!("U^{{{n}}} = {}", mat_latex(m)));
            }
            lines.join("\n")
        }
    }))
}

fn form_latex(q: &Bqf) -> String {
    format!("[{}, {}, {}]", nf_latex(q.a()), nf_latex(q.b()), nf_latex(q.c()))
}

fn cycle_text(c: &Cycle, symmetric: bool) -> String {
    let mut lines = vec![format!(
        "class {} length {} D = {} symmetric {}",
        c.class_tag,
        c.len(),
        c.disc(),
        symmetric
    )];
    for (q, n) in c.forms.iter().zip(&c.exponents) {
        lines.push(format!("  {q}  n = {n}  alpha ≈ {}", q.alpha().map(|a| a.to_f64()).unwrap_or(f64::NAN)));
    }
    lines.join("\n")
}

pub fn cycle(p: i64, form: &str, fmt: Output) -> CmdResult {
    let ctx = ctx_for(p)?;
    let [a, b, c] = parse_triple(&ctx, form).map_err(|e| e.to_string())?;
    let q = Bqf::new(a, b, c).map_err(|e| e.to_string())?;
    let cyc = cycle_from(&ctx, &q).map_err(|e| e.to_string())?;
    let sym = is_symmetric_cycle(&ctx, &cyc).map_err(|e| e.to_string())?;
    Ok(Outcome::Ok(match fmt {
        Output::Json => {
            let mut v = cyc.to_json(Some(sym));
            v["p"] = json!(ctx.p());
            v["length"] = json!(cyc.len());
            v["pole_exponents"] = json!(cyc.pole_exponents(ctx.p()));
            v["alphas"] = Value::Array(cyc.alphas().iter().map(q_to_json).collect());
            pretty(&v)
        }
        Output::Text => cycle_text(&cyc, sym),
        Output::Latex => cyc
            .forms
            .iter()
            .map(|f| {
                let alpha = f.alpha().map(|a| a.latex()).unwrap_or_default();
                format!("{} & \\alpha = {alpha} \\\\", form_latex(f))
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }))
}

pub fn classes(p: i64, word_len: usize, fmt: Output) -> CmdResult {
    let ctx = ctx_for(p)?;
    let cycles = enumerate_classes(&ctx, word_len).map_err(|e| e.to_string())?;
    let flags: Vec<bool> = cycles
        .par_iter()
        .map(|c| is_symmetric_cycle(&ctx, c))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    Ok(Outcome::Ok(match fmt {
        Output::Json => pretty(&json!({
            "p": ctx.p(),
            "word_len": word_len,
            "count": cycles.len(),
            "classes": cycles.iter().zip(&flags).map(|(c, &s)| c.to_json(Some(s))).collect::<Vec<_>>(),
        })),
        Output::Text => cycles
            .iter()
            .zip(&flags)
            .map(|(c, &s)| cycle_text(c, s))
            .collect::<Vec<_>>()
            .join("\n"),
        Output::Latex => cycles
            .iter()
            .map(|c| format!("{} & {} \\\\", form_latex(&c.forms[0]), c.len()))
            .collect::<Vec<_>>()
            .join("\n"),
    }))
}

pub fn build(spec: &Path, fmt: Output) -> CmdResult {
    let spec = load_spec(spec)?;
    let (q, warnings) = spec.build().map_err(|e| e.to_string())?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    Ok(Outcome::Ok(match fmt {
        Output::Json => pretty(&json!({
            "p": spec.ctx.p(),
            "k": spec.k,
            "mode": match spec.mode { Mode::Symmetric => "symmetric", Mode::General => "general" },
            "function": ratfunc_to_json(&q),
            "candidates": spec.classes.iter().map(|c| c.cycle.forms[0].to_json()).collect::<Vec<_>>(),
            "latex": ratfunc_latex(&q),
            "warnings": warnings,
        })),
        Output::Text => format!("q(z) = {q}"),
        Output::Latex => ratfunc_latex(&q),
    }))
}

fn float_bound(x: &BigRational) -> Value {
    match x.to_f64() {
        Some(f) if f > 0.0 || x.is_zero() => json!(f),
        _ => json!(format!("< 2^-{}", x.denom().bits().saturating_sub(x.numer().abs().bits()))),
    }
}

fn numeric_check(ctx: &Context, q: &RatFunc<NFElem>, k: u32, n: usize, bits: u32) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(NUMERIC_SEED);
    let mut worst = (BigRational::zero(), BigRational::zero());
    let mut skipped = 0usize;
    for _ in 0..n {
        let re = BigRational::new(rng.random_range(-4000i64..=4000).into(), 1000.into());
        let im = BigRational::new(rng.random_range(100i64..=4000).into(), 1000.into());
        match numeric_residuals(ctx, q, k, &[complex_point(&re, &im)], bits) {
            Ok((r1, r2)) => {
                worst.0 = worst.0.clone().max(r1);
                worst.1 = worst.1.clone().max(r2);
            }
            Err(_) => skipped += 1,
        }
    }
    json!({
        "points": n,
        "skipped": skipped,
        "bits": bits,
        "seed": NUMERIC_SEED,
        "max_residual1": float_bound(&worst.0),
        "max_residual2": float_bound(&worst.1),
    })
}

pub fn verify(args: &CheckArgs, fmt: Output, bits: u32) -> CmdResult {
    let r = resolve(args)?;
    let report = verify_exact(&r.ctx, &r.q, r.k, &r.candidates).map_err(|e| e.to_string())?;
    let numeric = args.numeric_check.map(|n| numeric_check(&r.ctx, &r.q, r.k, n, bits));
    let out = match fmt {
        Output::Json => {
            let mut v = json!({
                "p": r.ctx.p(),
                "k": r.k,
                "is_rpf": report.is_rpf(),
                "report": report.to_json(),
            });
            if let Some(nc) = &numeric {
                v["numeric_check"] = nc.clone();
            }
            pretty(&v)
        }
        Output::Text => {
            let mut lines = vec![
                format!("p = {}, k = {}", r.ctx.p(), r.k),
                format!("q + q|T = 0: {}", report.relation1_zero()),
                format!("sum of q|U^i = 0: {}", report.relation2_zero()),
                format!("pole audit passed: {}", report.pole_audit.passed()),
                format!("rational period function: {}", report.is_rpf()),
            ];
            if let Some(nc) = &numeric {
                lines.push(format!("numeric check: {nc}"));
            }
            lines.join("\n")
        }
        Output::Latex => format!(
            "q + q|_{{{w}}}T = {}\n\\sum_{{i=0}}^{{{pm1}}} q|_{{{w}}}U^i = {}",
            ratfunc_latex(&report.residual1),
            ratfunc_latex(&report.residual2),
            w = 2 * r.k,
            pm1 = r.ctx.p() - 1,
        ),
    };
    Ok(if report.is_rpf() { Outcome::Ok(out) } else { Outcome::Failed(out) })
}

pub fn audit(args: &CheckArgs, fmt: Output) -> CmdResult {
    let r = resolve(args)?;
    let a = pole_audit(&r.ctx, &r.q, r.k, &r.candidates);
    let out = match fmt {
        Output::Json => pretty(&json!({
            "p": r.ctx.p(),
            "k": r.k,
            "passed": a.passed(),
            "audit": a.to_json(),
        })),
        Output::Text | Output::Latex => {
            let mut lines: Vec<String> = a
                .poles
                .iter()
                .map(|e| {
                    let pole = match fmt {
                        Output::Latex => e.pole.latex(),
                        _ => format!("{}", e.pole.to_f64()),
                    };
                    format!("pole {pole}: order {} expected {}", e.order, e.expected_order)
                })
                .collect();
            lines.push(format!("pole at 0 of order {}", a.zero_pole_order));
            lines.push(format!("unrecognized denominator degree {}", a.unrecognized_degree));
            lines.push(format!("passed: {}", a.passed()));
            lines.join("\n")
        }
    };
    Ok(if a.passed() { Outcome::Ok(out) } else { Outcome::Failed(out) })
}
