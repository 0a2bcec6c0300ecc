#![allow(dead_code)]

use hecke_rpf::heckealg::{form_from_matrix, generators, u_power, Branch, TraceClass};
use hecke_rpf::{make_context, Bqf, Context, Mat2, NFElem};
use proptest::prelude::*;

pub fn ctx_strategy() -> impl Strategy<Value = Context> {
    (3i64..=8).prop_map(|p| make_context(p).unwrap())
}

pub fn elem(ctx: &Context, coeffs: &[i64]) -> NFElem {
    NFElem::from_int_coeffs(ctx, &coeffs[..coeffs.len().min(ctx.degree())])
}

pub fn small_coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 3)
}

/// Product of generator letters from {S, s, T, U, u}.
pub fn word_matrix(ctx: &Context, letters: &[u8]) -> Mat2 {
    let (s, t, u) = generators(ctx);
    let mut m = Mat2::identity(ctx);
    for &l in letters {
        let g = match l % 5 {
            0 => s.clone(),
            1 => s.inverse(),
            2 => t.clone(),
            3 => u.clone(),
            _ => u.inverse(),
        };
        m = m.mul(&g);
    }
    m
}

/// U^{j_r}T ⋯ U^{j_1}T with 1 ≤ j ≤ p − 1.
pub fn hyperbolic_word(ctx: &Context, exps: &[u32]) -> Mat2 {
    let (_, t, _) = generators(ctx);
    let p = ctx.p();
    let mut m = Mat2::identity(ctx);
    for &j in exps {
        let j = 1 + j % (p - 1);
        m = u_power(ctx, j as i64).unwrap().mul(&t).mul(&m);
    }
    m
}

/// A simple form from a word, when the word gives one.
pub fn simple_form_from(ctx: &Context, exps: &[u32]) -> Option<Bqf> {
    let m = hyperbolic_word(ctx, exps);
    if m.classify() != TraceClass::Hyperbolic || m.c.is_zero() {
        return None;
    }
    form_from_matrix(&m, Branch::Plus).ok().filter(Bqf::is_simple)
}
