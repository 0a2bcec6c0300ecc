//! The map Φ_p on positive hyperbolic numbers, its lift to simple forms, and
//! the cycles Z_A it produces.
//!
//! Cycles are stored in Φ_p order: `forms[i + 1] = Φ_p(forms[i])` with
//! `exponents[i]` the branch n used at that step (Φ_p(x) = TU^n x). Walking
//! the cycle backwards gives the pole recursion α_{ν+1} = U^j T α_ν with
//! j = p − n; [`Cycle::pole_order`] and [`Cycle::pole_exponents`] return
//! that ordering.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::heckealg::{form_from_matrix, generators, u_power, Branch, Bqf, Mat2, TraceClass};
use crate::numberfield::serial::nf_to_json;
use crate::numberfield::{Context, NFElem, QElem};

/// Default iteration cap for [`cycle_from`].
pub const DEFAULT_ITERATION_CAP: usize = 1_000_000;

/// T·U^n for 1 ≤ n ≤ p − 1.
pub fn branch_matrix(ctx: &Context, n: u32) -> Mat2 {
    let (_, t, _) = generators(ctx);
    t.mul(&u_power(ctx, n as i64).expect("n <= p"))
}

/// Φ_p(x): the unique n in 1..p−1 with TU^n x > 0, and that image.
pub fn phi(ctx: &Context, x: &QElem) -> Result<(u32, QElem)> {
    if x.sign() != Ordering::Greater {
        return Err(Error::BranchSelection(0));
    }
    let mut hits = Vec::new();
    for n in 1..ctx.p() {
        let m = branch_matrix(ctx, n);
        match m.act(x) {
            Some(y) if y.sign() == Ordering::Greater => hits.push((n, y)),
            Some(_) => {}
            // TU^n x = ∞ puts x in Q(λ_p)
            None => return Err(Error::SquareDiscriminant),
        }
    }
    if hits.len() != 1 {
        return Err(Error::BranchSelection(hits.len()));
    }
    Ok(hits.pop().unwrap())
}

/// Φ_p lifted to forms: Q̂ = Q∘(TU^n)^{-1}, whose root is Φ_p(α_Q).
pub fn phi_on_form(ctx: &Context, q: &Bqf) -> Result<(u32, Bqf)> {
    if !q.is_simple() {
        return Err(Error::NotSimple);
    }
    let (n, _) = phi(ctx, &q.alpha()?)?;
    let v = branch_matrix(ctx, n).inverse();
    Ok((n, q.act(&v)))
}

/// A cycle Z_A of simple forms under Φ_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub forms: Vec<Bqf>,
    pub exponents: Vec<u32>,
    pub class_tag: String,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn disc(&self) -> &NFElem {
        self.forms[0].disc()
    }

    pub fn contains(&self, q: &Bqf) -> bool {
        self.forms.iter().any(|f| f == q)
    }

    /// The roots α of the cycle's forms, in cycle order.
    pub fn alphas(&self) -> Vec<QElem> {
        self.forms
            .iter()
            .map(|f| f.alpha().expect("simple forms have A > 0"))
            .collect()
    }

    /// Roots in backward order: forms[0], forms[r−1], ..., forms[1].
    pub fn pole_order(&self) -> Vec<QElem> {
        let a = self.alphas();
        let r = a.len();
        (0..r).map(|i| a[(r - i) % r].clone()).collect()
    }

    /// Exponents j_ν with α_{ν+1} = U^{j_ν} T α_ν for the roots of
    /// [`Cycle::pole_order`].
    pub fn pole_exponents(&self, p: u32) -> Vec<u32> {
        self.exponents.iter().rev().map(|n| p - n).collect()
    }

    /// The hyperbolic matrix U^{j_r}T ⋯ U^{j_1}T fixing the first root.
    pub fn fixing_matrix(&self, ctx: &Context) -> Mat2 {
        let mut m = Mat2::identity(ctx);
        // Φ-step i maps forms[i] to forms[i+1] by TU^{n_i}; the product of
        // all steps returns to forms[0]
        for &n in &self.exponents {
            m = branch_matrix(ctx, n).mul(&m);
        }
        m
    }

    pub fn to_json(&self, symmetric: Option<bool>) -> serde_json::Value {
        let mut v = json!({
            "class_tag": self.class_tag,
            "discriminant": nf_to_json(self.disc()),
            "forms": self.forms.iter().map(Bqf::to_json).collect::<Vec<_>>(),
            "exponents": self.exponents,
        });
        if let Some(s) = symmetric {
            v["symmetric"] = json!(s);
        }
        v
    }
}

/// Iterate Φ_p on forms until `q` recurs.
pub fn cycle_from(ctx: &Context, q: &Bqf) -> Result<Cycle> {
    cycle_from_with_cap(ctx, q, DEFAULT_ITERATION_CAP)
}

pub fn cycle_from_with_cap(ctx: &Context, q: &Bqf, cap: usize) -> Result<Cycle> {
    if !q.is_simple() {
        return Err(Error::NotSimple);
    }
    let mut forms = vec![q.clone()];
    let mut exponents = Vec::new();
    let mut cur = q.clone();
    loop {
        if exponents.len() >= cap {
            return Err(Error::IterationCap(cap));
        }
        let (n, next) = phi_on_form(ctx, &cur)?;
        exponents.push(n);
        if &next == q {
            break;
        }
        forms.push(next.clone());
        cur = next;
    }
    let class_tag = forms.iter().map(Bqf::key).min().unwrap();
    Ok(Cycle {
        forms,
        exponents,
        class_tag,
    })
}

/// Simple representative of the class −A: (−Q)∘T = [−C, B, −A].
pub fn negated_class_representative(ctx: &Context, q: &Bqf) -> Bqf {
    let (_, t, _) = generators(ctx);
    q.neg().act(&t)
}

/// Both the positive poles Z_A and the negative poles T·Z_A.
pub fn irreducible_pole_set(ctx: &Context, q: &Bqf) -> Result<(Vec<QElem>, Vec<QElem>)> {
    let cycle = cycle_from(ctx, q)?;
    let (_, t, _) = generators(ctx);
    let positives = cycle.alphas();
    let negatives = positives
        .iter()
        .map(|a| t.act(a).expect("α ≠ 0"))
        .collect::<Vec<_>>();
    debug_assert!(negatives.iter().all(|x| x.sign() == Ordering::Less));
    Ok((positives, negatives))
}

fn same_set(a: &[QElem], b: &[QElem]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x)) && b.iter().all(|x| a.contains(x))
}

/// Check T·Z_A = Z'_{−A} for the class of `q`.
pub fn neg_poles_identity(ctx: &Context, q: &Bqf) -> Result<bool> {
    let (_, negatives) = irreducible_pole_set(ctx, q)?;
    let neg_cycle = cycle_from(ctx, &negated_class_representative(ctx, q))?;
    let conjugates: Vec<QElem> = neg_cycle.alphas().iter().map(QElem::conj).collect();
    Ok(same_set(&negatives, &conjugates))
}

/// Whether −A = A for the class A of the simple form `q`.
///
/// Decided twice: by comparing the class tags of the cycles of A and −A, and
/// through the negative-pole identity as T·Z_A = Z'_A. A disagreement is an
/// internal inconsistency and is reported as an error.
pub fn is_symmetric_class(ctx: &Context, q: &Bqf) -> Result<bool> {
    let cycle = cycle_from(ctx, q)?;
    is_symmetric_cycle(ctx, &cycle)
}

pub fn is_symmetric_cycle(ctx: &Context, cycle: &Cycle) -> Result<bool> {
    let neg = cycle_from(ctx, &negated_class_representative(ctx, &cycle.forms[0]))?;
    let by_tag = neg.class_tag == cycle.class_tag;

    let (_, t, _) = generators(ctx);
    let alphas = cycle.alphas();
    let t_images: Vec<QElem> = alphas.iter().map(|a| t.act(a).expect("α ≠ 0")).collect();
    let conjugates: Vec<QElem> = alphas.iter().map(QElem::conj).collect();
    let by_poles = same_set(&t_images, &conjugates);

    if by_tag != by_poles {
        return Err(Error::InvalidArgument(format!(
            "symmetry routes disagree for class {}",
            cycle.class_tag
        )));
    }
    Ok(by_tag)
}

/// Enumerate cycles reachable from words U^{j_r}T ⋯ U^{j_1}T with r ≤ `word_len`.
///
/// Hyperbolic products with a simple + branch form seed [`cycle_from`]; the
/// result is deduplicated by class tag and sorted by it.
pub fn enumerate_classes(ctx: &Context, word_len: usize) -> Result<Vec<Cycle>> {
    if word_len == 0 {
        return Err(Error::InvalidArgument("word_len must be at least 1".into()));
    }
    let p = ctx.p();
    let steps: Vec<Mat2> = (1..p)
        .map(|j| {
            let (_, t, _) = generators(ctx);
            u_power(ctx, j as i64).unwrap().mul(&t)
        })
        .collect();

    // breadth-first over word length; each level multiplies on the left
    let mut seeds: Vec<Bqf> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut level: Vec<Mat2> = vec![Mat2::identity(ctx)];
    for _ in 0..word_len {
        let next: Vec<Mat2> = level
            .par_iter()
            .flat_map_iter(|m| steps.iter().map(move |s| s.mul(m)))
            .collect();
        let forms: Vec<Option<Bqf>> = next
            .par_iter()
            .map(|m| {
                if m.classify() != TraceClass::Hyperbolic || m.c.is_zero() {
                    return None;
                }
                form_from_matrix(m, Branch::Plus).ok().filter(Bqf::is_simple)
            })
            .collect();
        for f in forms.into_iter().flatten() {
            if seen.insert(f.key()) {
                seeds.push(f);
            }
        }
        level = next;
    }

    // Many seeds share a cycle; walk them in order and skip covered forms.
    let mut cycles: BTreeMap<String, Cycle> = BTreeMap::new();
    let mut covered: HashSet<String> = HashSet::new();
    for chunk in seeds.chunks(64) {
        let pending: Vec<&Bqf> = chunk.iter().filter(|f| !covered.contains(&f.key())).collect();
        let found: Vec<Cycle> = pending
            .par_iter()
            .map(|f| cycle_from(ctx, f))
            .collect::<Result<Vec<_>>>()?;
        for c in found {
            for f in &c.forms {
                covered.insert(f.key());
            }
            cycles.entry(c.class_tag.clone()).or_insert(c);
        }
    }
    Ok(cycles.into_values().collect())
}
