mod common;

use common::{ctx_strategy, elem, simple_form_from, word_matrix};
use hecke_rpf::field::Field;
use hecke_rpf::heckealg::Branch;
use hecke_rpf::numberfield::interval::{ComplexInterval, RatInterval};
use hecke_rpf::ratfunc::{
    eval_numeric, form_power_function, principal_part, q_k_alpha, ratfunc_from_json, ratfunc_to_json,
    root_multiplicity, AnyRatFunc, Poly, RatFunc,
};
use hecke_rpf::{Context, NFElem};
use num_rational::BigRational;
use proptest::prelude::*;

fn poly(ctx: &Context, c: &[Vec<i64>]) -> Poly<NFElem> {
    Poly::new(c.iter().map(|x| elem(ctx, x)).collect(), &NFElem::zero(ctx))
}

fn coeff_lists(max_len: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 1..=max_len)
}

fn ratfunc(ctx: &Context, n: &[Vec<i64>], d: &[Vec<i64>]) -> Option<RatFunc<NFElem>> {
    RatFunc::new(poly(ctx, n), poly(ctx, d)).ok()
}

fn overlaps(a: &RatInterval, b: &RatInterval) -> bool {
    a.lo() <= b.hi() && b.lo() <= a.hi()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn normalization_is_idempotent(ctx in ctx_strategy(), n in coeff_lists(4), d in coeff_lists(4)) {
        let Some(f) = ratfunc(&ctx, &n, &d) else { return Ok(()) };
        let again = RatFunc::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert!(f.den().lead().unwrap().is_one());
        prop_assert!(f.num().gcd(f.den()).is_constant());
    }

    #[test]
    fn field_operations(ctx in ctx_strategy(), n in coeff_lists(3), d in coeff_lists(3), m in coeff_lists(3), e in coeff_lists(3)) {
        let (Some(f), Some(g)) = (ratfunc(&ctx, &n, &d), ratfunc(&ctx, &m, &e)) else { return Ok(()) };
        prop_assert_eq!(f.add(&g).sub(&g), f.clone());
        if !g.is_zero() {
            prop_assert_eq!(f.mul(&g).div(&g).unwrap(), f.clone());
        }
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }

    #[test]
    fn slash_is_a_linear_right_action(
        ctx in ctx_strategy(),
        n in coeff_lists(3), d in coeff_lists(3), m in coeff_lists(3),
        w1 in prop::collection::vec(0u8..5, 0..4),
        w2 in prop::collection::vec(0u8..5, 0..4),
        k in 1u32..=3,
    ) {
        let (Some(f), Some(g)) = (ratfunc(&ctx, &n, &d), ratfunc(&ctx, &m, &d)) else { return Ok(()) };
        let a = word_matrix(&ctx, &w1);
        let b = word_matrix(&ctx, &w2);
        prop_assert_eq!(f.slash(&a, k).slash(&b, k), f.slash(&a.mul(&b), k));
        prop_assert_eq!(f.add(&g).slash(&a, k), f.slash(&a, k).add(&g.slash(&a, k)));
        prop_assert_eq!(f.slash(&a, k).slash(&a.inverse(), k), f.clone());
    }

    #[test]
    fn slash_agrees_with_numeric_substitution(
        ctx in ctx_strategy(),
        n in coeff_lists(3), d in coeff_lists(3),
        w in prop::collection::vec(0u8..5, 1..4),
        k in 1u32..=2,
        re in -40i64..40, im in 1i64..40,
    ) {
        let Some(f) = ratfunc(&ctx, &n, &d) else { return Ok(()) };
        let m = word_matrix(&ctx, &w);
        let bits = 128;
        let z = ComplexInterval::new(
            RatInterval::point(BigRational::new(re.into(), 7.into())),
            RatInterval::point(BigRational::new(im.into(), 5.into())),
        );
        let Ok(lhs) = eval_numeric(&f.slash(&m, k), &z, bits) else { return Ok(()) };
        // (cz + d)^{-2k} f((az + b)/(cz + d)) evaluated from scratch
        let enc = |x: &NFElem| ComplexInterval::real(x.enclose(bits + 16));
        let cz_d = &(&enc(&m.c) * &z) + &enc(&m.d);
        let az_b = &(&enc(&m.a) * &z) + &enc(&m.b);
        let Some(inv) = cz_d.recip() else { return Ok(()) };
        let mz = &az_b * &inv;
        let Ok(fmz) = eval_numeric(&f, &mz, bits) else { return Ok(()) };
        let rhs = &fmz * &inv.powi(2 * k, bits + 16);
        prop_assert!(overlaps(&lhs.re, &rhs.re) && overlaps(&lhs.im, &rhs.im));
    }

    #[test]
    fn principal_part_removes_the_pole(
        ctx in ctx_strategy(),
        exps in prop::collection::vec(0u32..8, 1..4),
        n in coeff_lists(3),
        k in 1u32..=3,
    ) {
        let Some(q) = simple_form_from(&ctx, &exps) else { return Ok(()) };
        let d = q.disc();
        let extra = RatFunc::new(poly(&ctx, &n), Poly::new(q.dehomogenized().to_vec(), &NFElem::zero(&ctx)).pow(k))
            .unwrap()
            .lift_to(d);
        let alpha = q.alpha().unwrap();
        let pp = principal_part(&extra, &alpha);
        let rest = extra.sub(&pp.to_ratfunc());
        prop_assert_eq!(root_multiplicity(rest.den(), &alpha).0, 0);
        if !pp.is_empty() {
            prop_assert!(!pp.coeffs[0].is_zero());
        }
    }

    #[test]
    fn explicit_part_matches_literal_function(ctx in ctx_strategy(), exps in prop::collection::vec(0u32..8, 1..4), k in 1u32..=4) {
        let Some(q) = simple_form_from(&ctx, &exps) else { return Ok(()) };
        let f = form_power_function(&q, k);
        let direct = principal_part(&f, &q.alpha().unwrap());
        let explicit = q_k_alpha(&q, k, Branch::Plus).unwrap();
        prop_assert_eq!(&direct, &explicit);
        prop_assert!(explicit.coeffs[0].is_one());
        prop_assert_eq!(explicit.order(), k as usize);
    }

    #[test]
    fn odd_k_pair_collapses(ctx in ctx_strategy(), exps in prop::collection::vec(0u32..8, 1..4), k in 0u32..3) {
        let k = 2 * k + 1;
        let Some(q) = simple_form_from(&ctx, &exps) else { return Ok(()) };
        let plus = q_k_alpha(&q, k, Branch::Plus).unwrap().to_ratfunc();
        let minus = q_k_alpha(&q, k, Branch::Minus).unwrap().to_ratfunc();
        prop_assert_eq!(plus.sub(&minus), form_power_function(&q, k));
    }

    #[test]
    fn json_roundtrip(ctx in ctx_strategy(), n in coeff_lists(4), d in coeff_lists(4)) {
        let Some(f) = ratfunc(&ctx, &n, &d) else { return Ok(()) };
        let back = ratfunc_from_json(&ctx, &ratfunc_to_json(&f)).unwrap();
        prop_assert_eq!(back, AnyRatFunc::Base(f));
    }
}
