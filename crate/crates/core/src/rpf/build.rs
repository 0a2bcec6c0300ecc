use crate::dynamics::{is_symmetric_cycle, Cycle};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::heckealg::{generators, Branch};
use crate::numberfield::{Context, NFElem, QElem};
use crate::ratfunc::{form_inverse_power, q_k_alpha, Poly, RatFunc};

/// q_{k,0} = a0(1 − z^{−2k}), plus b1/z when 2k = 2.
pub fn q_k_0(ctx: &Context, k: u32, a0: &NFElem, b1: &NFElem) -> Result<RatFunc<NFElem>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if k != 1 && !b1.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "b1 only enters at weight 2 but k = {k} and b1 = {b1}"
        )));
    }
    let zero = NFElem::zero(ctx);
    let n = 2 * k as usize;
    let mut num = vec![zero.clone(); n + 1];
    num[0] = -a0;
    num[n] = a0.clone();
    if k == 1 {
        num[1] = b1.clone();
    }
    RatFunc::new(Poly::new(num, &zero), Poly::monomial(NFElem::one(ctx), n))
}

/// Σ_ℓ d_ℓ Σ_{Q∈Z_{A_ℓ}} Q(z,1)^{−k} + c0·q_{k,0}, for odd k and symmetric classes.
pub fn build_symmetric(
    ctx: &Context,
    k: u32,
    classes: &[(Cycle, NFElem)],
    c0: &NFElem,
    a0: &NFElem,
    b1: &NFElem,
) -> Result<RatFunc<NFElem>> {
    if k.is_multiple_of(2) {
        return Err(Error::EvenWeight(k));
    }
    let mut acc = RatFunc::zero(&NFElem::zero(ctx));
    for (cycle, d) in classes {
        if !is_symmetric_cycle(ctx, cycle)? {
            return Err(Error::AsymmetricClass(cycle.class_tag.clone()));
        }
        if d.is_zero() {
            continue;
        }
        let mut class_sum = RatFunc::zero(&NFElem::zero(ctx));
        for q in &cycle.forms {
            class_sum = class_sum.add(&form_inverse_power(q, k));
        }
        acc = acc.add(&class_sum.scale(d));
    }
    if !c0.is_zero() {
        acc = acc.add(&q_k_0(ctx, k, a0, b1)?.scale(c0));
    }
    Ok(acc)
}

/// C·(Σ_{α∈Z_A} q_{k,α} − Σ_{β∈T·Z_A} q_{k,β}) over Q(λ_p)(√D).
///
/// The negative poles β = Tα are the roots of Q∘T, so q_{k,β} is taken from
/// that form.
pub fn assemble_class(ctx: &Context, k: u32, cycle: &Cycle, coeff: &QElem) -> Result<RatFunc<QElem>> {
    if coeff.d() != cycle.disc() {
        return Err(Error::DiscriminantMismatch);
    }
    let (_, t, _) = generators(ctx);
    let mut acc = RatFunc::zero(&coeff.zero_like());
    for q in &cycle.forms {
        let pos = q_k_alpha(q, k, Branch::Plus)?.to_ratfunc();
        let neg = q_k_alpha(&q.act(&t), k, Branch::Plus)?.to_ratfunc();
        acc = acc.add(&pos).sub(&neg);
    }
    Ok(acc.scale(coeff))
}

/// Σ_ℓ C_ℓ(...) + c0·q_{k,0} + Σ_n c_n z^{−n}, descended to Q(λ_p).
///
/// Each class term must descend on its own; a surviving √D part is reported
/// as a malformed combination.
#[allow(clippy::too_many_arguments)]
pub fn build_general(
    ctx: &Context,
    k: u32,
    classes: &[(Cycle, QElem)],
    c0: &NFElem,
    a0: &NFElem,
    b1: &NFElem,
    cn: &[NFElem],
) -> Result<RatFunc<NFElem>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if cn.len() > 2 * k as usize - 1 {
        return Err(Error::InvalidArgument(format!(
            "at most {} coefficients c_n are allowed, got {}",
            2 * k - 1,
            cn.len()
        )));
    }
    let mut acc = RatFunc::zero(&NFElem::zero(ctx));
    for (cycle, c) in classes {
        if c.is_zero() {
            continue;
        }
        let term = assemble_class(ctx, k, cycle, c)?;
        let base = term
            .descend()
            .ok_or_else(|| Error::MalformedCombination(cycle.class_tag.clone()))?;
        acc = acc.add(&base);
    }
    if !c0.is_zero() {
        acc = acc.add(&q_k_0(ctx, k, a0, b1)?.scale(c0));
    }
    for (i, c) in cn.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&RatFunc::monomial(c.clone(), -(i as i64 + 1)));
        }
    }
    Ok(acc)
}

/// C_ℓ = d_ℓ / D^{k/2}, the general-mode coefficient matching a symmetric d_ℓ.
pub fn general_coeff_from_symmetric(d: &NFElem, disc: &NFElem, k: u32) -> Result<QElem> {
    let root = QElem::sqrt_d(disc).pow(k);
    QElem::from_base(d.clone(), disc).checked_div(&root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::cycle_from;
    use crate::heckealg::Bqf;
    use crate::numberfield::make_context;
    use crate::ratfunc::Poly;

    fn golden(ctx: &Context) -> Cycle {
        cycle_from(ctx, &Bqf::from_ints(ctx, 1, -1, -1)).unwrap()
    }

    #[test]
    fn zero_pole_family() {
        let ctx = make_context(3).unwrap();
        let one = NFElem::one(&ctx);
        let zero = NFElem::zero(&ctx);
        let f = q_k_0(&ctx, 2, &one, &zero).unwrap();
        let expect_num = Poly::new(
            [-1, 0, 0, 0, 1].iter().map(|&c| NFElem::from_int(&ctx, c)).collect(),
            &zero,
        );
        assert_eq!(f.num(), &expect_num);
        assert_eq!(f.den(), &Poly::monomial(one.clone(), 4));
        assert_eq!(q_k_0(&ctx, 1, &zero, &one).unwrap(), RatFunc::monomial(one.clone(), -1));
        assert!(q_k_0(&ctx, 3, &zero, &zero).unwrap().is_zero());
        assert!(q_k_0(&ctx, 2, &zero, &one).is_err());
    }

    #[test]
    fn symmetric_golden_example() {
        let ctx = make_context(3).unwrap();
        let one = NFElem::one(&ctx);
        let zero = NFElem::zero(&ctx);
        let f = build_symmetric(&ctx, 1, &[(golden(&ctx), one.clone())], &zero, &zero, &zero).unwrap();
        let a = form_inverse_power(&Bqf::from_ints(&ctx, 1, -1, -1), 1);
        let b = form_inverse_power(&Bqf::from_ints(&ctx, 1, 1, -1), 1);
        assert_eq!(f, a.add(&b));
        assert_eq!(
            build_symmetric(&ctx, 2, &[(golden(&ctx), one.clone())], &zero, &zero, &zero),
            Err(Error::EvenWeight(2))
        );
        // d = 0 everywhere, c0 = 1 gives q_{k,0}
        let g = build_symmetric(&ctx, 3, &[(golden(&ctx), zero.clone())], &one, &one, &zero).unwrap();
        assert_eq!(g, q_k_0(&ctx, 3, &one, &zero).unwrap());
    }

    #[test]
    fn general_matches_symmetric() {
        let ctx = make_context(3).unwrap();
        let zero = NFElem::zero(&ctx);
        let cyc = golden(&ctx);
        for k in [1, 3] {
            let d = NFElem::from_int(&ctx, 2);
            let sym = build_symmetric(&ctx, k, &[(cyc.clone(), d.clone())], &zero, &zero, &zero).unwrap();
            let c = general_coeff_from_symmetric(&d, cyc.disc(), k).unwrap();
            let gen = build_general(&ctx, k, &[(cyc.clone(), c)], &zero, &zero, &zero, &[]).unwrap();
            assert_eq!(gen, sym);
            // C = 1 stays in the extension as √5·D^{(k−1)/2} times the d = 1 sum
            let one_q = QElem::from_base(NFElem::one(&ctx), cyc.disc());
            let ext = assemble_class(&ctx, k, &cyc, &one_q).unwrap();
            let unit = build_symmetric(&ctx, k, &[(cyc.clone(), NFElem::one(&ctx))], &zero, &zero, &zero)
                .unwrap()
                .lift_to(cyc.disc())
                .scale(&QElem::sqrt_d(cyc.disc()).pow(k));
            assert_eq!(ext, unit);
            assert!(matches!(
                build_general(&ctx, k, &[(cyc.clone(), one_q)], &zero, &zero, &zero, &[]),
                Err(Error::MalformedCombination(_))
            ));
        }
    }

    #[test]
    fn general_all_zero() {
        let ctx = make_context(4).unwrap();
        let zero = NFElem::zero(&ctx);
        let f = build_general(&ctx, 2, &[], &zero, &zero, &zero, &[zero.clone(), zero.clone()]).unwrap();
        assert!(f.is_zero());
        assert!(build_general(&ctx, 1, &[], &zero, &zero, &zero, &[zero.clone(), zero.clone()]).is_err());
    }
}
