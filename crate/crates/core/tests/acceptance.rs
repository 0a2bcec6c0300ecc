//! Acceptance gate. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use hecke_rpf::dynamics::{cycle_from, enumerate_classes, is_symmetric_cycle, neg_poles_identity, Cycle};
use hecke_rpf::heckealg::{generators, u_power, Mat2};
use hecke_rpf::numberfield::interval::{ComplexInterval, RatInterval};
use hecke_rpf::ratfunc::{NumericRatFunc, Poly, RatFunc};
use hecke_rpf::rpf::{build_symmetric, q_k_0, verify, VerifyReport};
use hecke_rpf::{make_context, Bqf, Context, NFElem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow2(bits: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << bits as usize)
}

fn ten_to_minus(e: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(e))
}

// ---------------------------------------------------------------- oracles

// Fixed point with FRAC fractional bits; each operation truncates, so a
// series of a few hundred steps is good to about 2^-(FRAC - 10).
const FRAC: usize = 300;

fn fixed_one() -> BigInt {
    BigInt::one() << FRAC
}

/// arctan(1/n) by its alternating series.
fn arctan_inv(n: i64) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = fixed_one() / &n;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &n2;
        k += 1;
    }
    sum
}

/// π from Machin's formula, in fixed point.
fn machin_pi() -> BigInt {
    arctan_inv(5) * 16 - arctan_inv(239) * 4
}

/// 2cos(x) for fixed-point |x| < 2, by Taylor series.
fn two_cos(x: &BigInt) -> BigInt {
    let x2 = (x * x) >> FRAC;
    let mut term = fixed_one();
    let mut sum = BigInt::zero();
    let mut k = 0i64;
    while !term.is_zero() {
        sum += &term;
        k += 1;
        term = -((&term * &x2) >> FRAC) / BigInt::from((2 * k - 1) * (2 * k));
    }
    sum * 2
}

fn fixed_to_rational(x: &BigInt) -> BigRational {
    BigRational::new(x.clone(), fixed_one())
}

fn eval_int_poly(coeffs_ascending: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs_ascending.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn totient_naive(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Rational roots of an integer polynomial by the rational root test.
fn rational_roots(coeffs_ascending: &[BigInt]) -> Vec<BigRational> {
    let lead = coeffs_ascending.last().unwrap().clone();
    let constant = coeffs_ascending[0].clone();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while d <= n {
            if (&n % &d).is_zero() {
                out.push(d.clone());
            }
            d += 1;
        }
        out
    };
    let mut roots = Vec::new();
    if constant.is_zero() {
        roots.push(BigRational::zero());
    }
    for p in divisors(&constant) {
        for q in divisors(&lead) {
            for s in [1, -1] {
                let r = BigRational::new(&p * s, q.clone());
                if eval_int_poly(coeffs_ascending, &r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

/// Numeric enclosure of (cz + d)^{−2k} q(Mz), independent of the symbolic slash.
fn numeric_slash(q: &NumericRatFunc, m: &Mat2, k: u32, z: &ComplexInterval, bits: u32) -> Option<ComplexInterval> {
    let enc = |x: &NFElem| ComplexInterval::real(x.enclose(bits + 32));
    let cz_d = &(&enc(&m.c) * z) + &enc(&m.d);
    let az_b = &(&enc(&m.a) * z) + &enc(&m.b);
    let inv = cz_d.recip()?;
    let mz = (&az_b * &inv).round_out(bits + 32);
    let v = q.eval(&mz).ok()?;
    Some(&v * &inv.powi(2 * k, bits + 32))
}

fn random_upper_half_plane(rng: &mut ChaCha20Rng) -> ComplexInterval {
    let re = ratio(rng.random_range(-4000..4000), 997);
    let im = ratio(rng.random_range(50..4000), 991);
    ComplexInterval::new(RatInterval::point(re), RatInterval::point(im))
}

/// Both relations evaluated numerically at `points`; returns the largest
/// magnitude bound, or `None` if a point came too close to a pole.
fn numeric_residuals(ctx: &Context, q: &RatFunc<NFElem>, k: u32, points: &[ComplexInterval], bits: u32) -> Option<BigRational> {
    let (_, t, u) = generators(ctx);
    let q = &NumericRatFunc::new(q, bits + 32);
    let mut worst = BigRational::zero();
    for z in points {
        let q_z = q.eval(z).ok()?;
        let r1 = &q_z + &numeric_slash(q, &t, k, z, bits)?;
        let mut r2 = q_z.clone();
        let mut m = Mat2::identity(ctx);
        for _ in 1..ctx.p() {
            m = m.mul(&u);
            r2 = &r2 + &numeric_slash(q, &m, k, z, bits)?;
        }
        worst = worst.max(r1.mag_bound()).max(r2.mag_bound());
    }
    Some(worst)
}

// ---------------------------------------------------------------- criteria

fn ac1() -> Outcome {
    let start = Instant::now();
    let mut words = 0usize;
    for p in 3..=12 {
        let ctx = make_context(p).unwrap();
        let (s, t, u) = generators(&ctx);
        let t2 = t.mul(&t);
        if !t2.is_projective_identity() {
            return fail(format!("T² ≠ ±I at p={p}"));
        }
        // U^p by repeated multiplication, not the closed form
        let mut up = Mat2::identity(&ctx);
        for _ in 0..p {
            up = up.mul(&u);
        }
        if !up.is_projective_identity() {
            return fail(format!("U^p ≠ ±I at p={p}"));
        }
        // every word of length ≤ 8 has its matrix in this set
        let gens = [s.clone(), s.inverse(), t.clone(), u.clone(), u.inverse()];
        let key = |m: &Mat2| (m.a.clone(), m.b.clone(), m.c.clone(), m.d.clone());
        // hashing only reads the coefficients; the context's enclosure cache is not part of the key
        #[allow(clippy::mutable_key_type)]
        let mut seen = HashSet::new();
        let mut level = vec![Mat2::identity(&ctx)];
        seen.insert(key(&level[0]));
        for _ in 0..8 {
            let mut next = Vec::new();
            for m in &level {
                for g in &gens {
                    let x = m.mul(g);
                    if seen.insert(key(&x)) {
                        next.push(x);
                    }
                }
            }
            level = next;
        }
        for (a, b, c, d) in &seen {
            if !(&(a * d) - &(b * c)).is_one() {
                return fail(format!("det ≠ 1 at p={p}"));
            }
        }
        words += seen.len();
    }
    let el = start.elapsed();
    if el > Duration::from_secs(5) {
        return fail(format!("took {el:.2?} (limit 5s)"));
    }
    pass(format!("p=3..12, {words} distinct word matrices, {el:.2?}"))
}

fn ac2() -> Outcome {
    let start = Instant::now();
    for p in 3..=12u32 {
        let ctx = make_context(p as i64).unwrap();
        let (_, t, u) = generators(&ctx);
        let mut un = Mat2::identity(&ctx);
        for n in 1..p {
            un = un.mul(&u);
            if un != u_power(&ctx, n as i64).unwrap() {
                return fail(format!("closed form of U^{n} differs at p={p}"));
            }
            let m = un.mul(&t);
            let entries = [&m.a, &m.b, &m.c, &m.d];
            let signs: Vec<_> = entries.iter().map(|e| e.sign()).collect();
            use std::cmp::Ordering::*;
            // up to the overall sign ±I
            let flip = signs.contains(&Less);
            let ok = signs.iter().all(|s| if flip { *s != Greater } else { *s != Less });
            if !ok {
                return fail(format!("U^{n}T has mixed signs at p={p}"));
            }
            let zeros: Vec<bool> = signs.iter().map(|s| *s == Equal).collect();
            let expect = [false, n == p - 1, n == 1, false];
            if zeros != expect {
                return fail(format!("zero pattern of U^{n}T at p={p}: {zeros:?}"));
            }
        }
    }
    let el = start.elapsed();
    if el > Duration::from_secs(1) {
        return fail(format!("took {el:.2?} (limit 1s)"));
    }
    pass(format!("p=3..12, n=1..p-1, {el:.2?}"))
}

fn ac3() -> Outcome {
    let bits = 200;
    let tol = ten_to_minus(40);
    let pi = machin_pi();
    for p in 3..=20u32 {
        let ctx = make_context(p as i64).unwrap();
        let want = totient_naive(2 * p as u64) / 2;
        if ctx.degree() as u64 != want {
            return fail(format!("degree {} ≠ φ(2p)/2 = {want} at p={p}", ctx.degree()));
        }
        let lam = fixed_to_rational(&two_cos(&(&pi / BigInt::from(p))));
        let at_oracle = eval_int_poly(ctx.minpoly(), &lam);
        if at_oracle.abs() >= tol {
            return fail(format!("|m_p(oracle λ)| ≥ 1e-40 at p={p}"));
        }
        // the oracle itself is only good to about 2^-290
        let slack = pow2(280).recip();
        let enc = ctx.embedding(bits);
        if !(enc.lo() - &slack <= lam && lam <= enc.hi() + &slack) {
            return fail(format!("embedding enclosure misses oracle λ at p={p}"));
        }
        if ctx.minpoly_on_embedding(bits).mag() >= tol {
            return fail(format!("|m_p| on the 200-bit enclosure ≥ 1e-40 at p={p}"));
        }
    }
    let expect: [(i64, &[i64]); 4] = [(3, &[-1, 1]), (4, &[-2, 0, 1]), (5, &[-1, -1, 1]), (7, &[1, -2, -1, 1])];
    for (p, coeffs) in expect {
        let ctx = make_context(p).unwrap();
        let want: Vec<BigInt> = coeffs.iter().map(|&c| c.into()).collect();
        if ctx.minpoly() != want.as_slice() {
            return fail(format!("minimal polynomial at p={p} is {:?}", ctx.minpoly()));
        }
    }
    // degree ≤ 3 with no rational root means irreducible over Q
    for p in [4, 7] {
        let ctx = make_context(p).unwrap();
        if !rational_roots(ctx.minpoly()).is_empty() {
            return fail(format!("m_{p} has a rational root"));
        }
    }
    pass("p=3..20 degrees and |m_p(λ)| < 1e-40; p=3,4,5,7 explicit")
}

fn ac4() -> Outcome {
    let start = Instant::now();
    let ctx = make_context(3).unwrap();
    let seed = Bqf::from_ints(&ctx, 1, -1, -1);
    // brute force: apply every branch TU^n and keep the simple image
    let (_, t, _) = generators(&ctx);
    let mut orbit = vec![seed.clone()];
    let mut cur = seed.clone();
    for _ in 0..10 {
        let mut next = None;
        for n in 1..3 {
            let v = t.mul(&u_power(&ctx, n).unwrap());
            let img = cur.act(&v.inverse());
            if img.is_simple() {
                next = Some(img);
            }
        }
        cur = next.unwrap();
        if cur == seed {
            break;
        }
        orbit.push(cur.clone());
    }
    let cyc = cycle_from(&ctx, &seed).unwrap();
    let want = [Bqf::from_ints(&ctx, 1, -1, -1), Bqf::from_ints(&ctx, 1, 1, -1)];
    if cyc.len() != 2 || !want.iter().all(|f| cyc.contains(f)) || orbit != cyc.forms {
        return fail(format!("cycle {:?}", cyc.forms));
    }
    for (i, f) in cyc.forms.iter().enumerate() {
        let n = cyc.exponents[i];
        let v = t.mul(&u_power(&ctx, n as i64).unwrap());
        if f.act(&v.inverse()) != cyc.forms[(i + 1) % 2] {
            return fail("exponent sequence does not advance the cycle");
        }
    }
    if !is_symmetric_cycle(&ctx, &cyc).unwrap() {
        return fail("golden class not flagged symmetric");
    }
    let el = start.elapsed();
    if el > Duration::from_secs(1) {
        return fail(format!("took {el:.2?}"));
    }
    pass(format!("{{[1,-1,-1],[1,1,-1]}}, exponents {:?}, symmetric, {el:.2?}", cyc.exponents))
}

struct Verified {
    label: String,
    ctx: Context,
    q: RatFunc<NFElem>,
    k: u32,
    report: VerifyReport,
}

fn ac5(store: &mut Vec<Verified>) -> Outcome {
    let mut lines = Vec::new();
    for p in [3i64, 4, 5] {
        let ctx = make_context(p).unwrap();
        let classes = enumerate_classes(&ctx, 3).unwrap();
        let symmetric: Vec<Cycle> = classes
            .into_iter()
            .filter(|c| is_symmetric_cycle(&ctx, c).unwrap())
            .take(3)
            .collect();
        if symmetric.is_empty() {
            return fail(format!("no symmetric class enumerated at p={p}"));
        }
        let zero = NFElem::zero(&ctx);
        for k in [1u32, 3] {
            for cyc in &symmetric {
                let start = Instant::now();
                let q = build_symmetric(&ctx, k, &[(cyc.clone(), NFElem::one(&ctx))], &zero, &zero, &zero).unwrap();
                let report = verify(&ctx, &q, k, std::slice::from_ref(cyc)).unwrap();
                let el = start.elapsed();
                if !report.is_rpf() {
                    return fail(format!("p={p} k={k} class {} has nonzero residuals", cyc.class_tag));
                }
                if el > Duration::from_secs(30) {
                    return fail(format!("p={p} k={k} took {el:.2?}"));
                }
                store.push(Verified {
                    label: format!("sym p={p} k={k} {}", cyc.class_tag),
                    ctx: ctx.clone(),
                    q,
                    k,
                    report,
                });
            }
            lines.push(format!("p={p} k={k}: {}", symmetric.len()));
        }
    }
    pass(format!("classes verified [{}]", lines.join(", ")))
}

fn ac6(store: &mut Vec<Verified>) -> Outcome {
    for p in [3i64, 4, 5] {
        let ctx = make_context(p).unwrap();
        for k in 1..=3u32 {
            let mut params = vec![(NFElem::one(&ctx), NFElem::zero(&ctx))];
            if k == 1 {
                params.push((NFElem::zero(&ctx), NFElem::one(&ctx)));
                params.push((NFElem::from_int(&ctx, 2), NFElem::lambda(&ctx)));
            }
            for (a0, b1) in params {
                let q = q_k_0(&ctx, k, &a0, &b1).unwrap();
                let report = verify(&ctx, &q, k, &[]).unwrap();
                if !report.is_rpf() {
                    return fail(format!("q_{{{k},0}} a0={a0} b1={b1} fails at p={p}"));
                }
                store.push(Verified {
                    label: format!("zero p={p} k={k} a0={a0} b1={b1}"),
                    ctx: ctx.clone(),
                    q,
                    k,
                    report,
                });
            }
        }
    }
    pass("p=3,4,5 × k=1,2,3, including 1/z at weight 2")
}

fn ac7(store: &[Verified]) -> Outcome {
    for v in store {
        let a = &v.report.pole_audit;
        if !a.passed() {
            return fail(format!("{}: {:?}", v.label, a));
        }
        if a.zero_pole_order > 2 * v.k as usize {
            return fail(format!("{}: zero pole order {}", v.label, a.zero_pole_order));
        }
    }
    pass(format!("{} audits: real poles of order k, regular at ∞, zero-pole rule", store.len()))
}

fn ac8() -> Outcome {
    let mut total = 0;
    for p in [3i64, 4, 5] {
        let ctx = make_context(p).unwrap();
        let classes = enumerate_classes(&ctx, 6).unwrap();
        let bad = classes
            .par_iter()
            .find_any(|c| !neg_poles_identity(&ctx, &c.forms[0]).unwrap());
        if let Some(c) = bad {
            return fail(format!("T·Z_A ≠ Z'_(-A) for {} at p={p}", c.class_tag));
        }
        total += classes.len();
    }
    pass(format!("{total} classes at word length ≤ 6"))
}

fn ac9(store: &[Verified]) -> Outcome {
    let bits = 200;
    let tol = ten_to_minus(40);
    let results: Vec<Option<BigRational>> = store
        .par_iter()
        .enumerate()
        .map(|(i, v)| {
            let mut rng = ChaCha20Rng::seed_from_u64(0x5eed_2026 + i as u64);
            let points: Vec<_> = (0..20).map(|_| random_upper_half_plane(&mut rng)).collect();
            numeric_residuals(&v.ctx, &v.q, v.k, &points, bits)
        })
        .collect();
    for (v, r) in store.iter().zip(&results) {
        match r {
            Some(w) if *w < tol => {}
            Some(_) => return fail(format!("{}: residual above 1e-40", v.label)),
            None => return fail(format!("{}: sample point near a pole", v.label)),
        }
    }
    pass(format!("{} RPFs × 20 points below 1e-40 at 200 bits", store.len()))
}

fn ac10() -> Outcome {
    let ctx = make_context(3).unwrap();
    let inv_z = RatFunc::monomial(NFElem::one(&ctx), -1);
    let r = verify(&ctx, &inv_z, 2, &[]).unwrap();
    if r.is_rpf() || r.residual1.is_zero() {
        return fail("1/z accepted at k = 2");
    }
    let mut rng = ChaCha20Rng::seed_from_u64(10);
    let mut rejected = 0;
    for p in [3i64, 4, 5] {
        let ctx = make_context(p).unwrap();
        let zero = NFElem::zero(&ctx);
        let mut coeffs = |n: usize| -> Poly<NFElem> {
            let v = (0..n).map(|_| NFElem::from_int(&ctx, rng.random_range(-9..=9))).collect();
            Poly::new(v, &zero)
        };
        let num = coeffs(3);
        let mut den = coeffs(3);
        den = den.add(&Poly::monomial(NFElem::one(&ctx), 3));
        let q = RatFunc::new(num, den).unwrap();
        if q.is_zero() {
            continue;
        }
        let r = verify(&ctx, &q, 1, &[]).unwrap();
        if r.is_rpf() {
            return fail(format!("random function accepted at p={p}: {q}"));
        }
        // the numeric oracle must agree that something is nonzero
        let points: Vec<_> = (0..5).map(|_| random_upper_half_plane(&mut rng)).collect();
        if let Some(w) = numeric_residuals(&ctx, &q, 1, &points, 128) {
            if w < ten_to_minus(10) {
                return fail(format!("numeric residual vanishes for rejected function at p={p}"));
            }
        }
        rejected += 1;
    }
    pass(format!("1/z at k=2 rejected; {rejected} random functions rejected"))
}

fn main() {
    let mut verified = Vec::new();
    let mut failed = 0;
    let mut report = |name: &str, title: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {name} {title}: {} ({:.2?})", out.detail, start.elapsed());
        if !out.ok {
            failed += 1;
        }
    };
    report("AC1", "group relations", &mut ac1);
    report("AC2", "positive entries of U^nT", &mut ac2);
    report("AC3", "minimal polynomials", &mut ac3);
    report("AC4", "golden-ratio cycle", &mut ac4);
    report("AC5", "symmetric RPFs verify", &mut || ac5(&mut verified));
    report("AC6", "zero-pole family", &mut || ac6(&mut verified));
    report("AC7", "pole audits", &mut || ac7(&verified));
    report("AC8", "negative-pole identity", &mut ac8);
    report("AC9", "numeric consistency", &mut || ac9(&verified));
    report("AC10", "negative controls", &mut ac10);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
