use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::numberfield::{Context, NFElem, QElem};

/// Letters of a generator word. Inverse letters print in lower case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    S,
    SInv,
    T,
    U,
    UInv,
}

impl Gen {
    pub fn inverse(self) -> Gen {
        match self {
            Gen::S => Gen::SInv,
            Gen::SInv => Gen::S,
            // T⁻¹ = −T, equal projectively
            Gen::T => Gen::T,
            Gen::U => Gen::UInv,
            Gen::UInv => Gen::U,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Gen::S => 'S',
            Gen::SInv => 's',
            Gen::T => 'T',
            Gen::U => 'U',
            Gen::UInv => 'u',
        }
    }

    pub fn from_letter(c: char) -> Option<Gen> {
        Some(match c {
            'S' => Gen::S,
            's' => Gen::SInv,
            'T' => Gen::T,
            'U' => Gen::U,
            'u' => Gen::UInv,
            _ => return None,
        })
    }

    pub fn matrix(self, ctx: &Context) -> Mat2 {
        let base = match self {
            Gen::S => {
                let l = NFElem::lambda(ctx);
                Mat2::raw(NFElem::one(ctx), l, NFElem::zero(ctx), NFElem::one(ctx))
            }
            Gen::SInv => {
                let l = -NFElem::lambda(ctx);
                Mat2::raw(NFElem::one(ctx), l, NFElem::zero(ctx), NFElem::one(ctx))
            }
            Gen::T => Mat2::raw(
                NFElem::zero(ctx),
                NFElem::from_int(ctx, -1),
                NFElem::one(ctx),
                NFElem::zero(ctx),
            ),
            Gen::U => Mat2::raw(
                NFElem::lambda(ctx),
                NFElem::from_int(ctx, -1),
                NFElem::one(ctx),
                NFElem::zero(ctx),
            ),
            Gen::UInv => Mat2::raw(
                NFElem::zero(ctx),
                NFElem::one(ctx),
                NFElem::from_int(ctx, -1),
                NFElem::lambda(ctx),
            ),
        };
        base.with_word(Word(vec![self]))
    }
}

/// A product of generators, read left to right as matrix multiplication.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn parse(s: &str) -> Result<Word> {
        s.chars()
            .map(|c| Gen::from_letter(c).ok_or_else(|| Error::Parse(format!("bad generator '{c}'"))))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Multiply the word out. The identity for the empty word.
    pub fn evaluate(&self, ctx: &Context) -> Mat2 {
        let mut m = Mat2::identity(ctx);
        for g in &self.0 {
            m = m.mul(&g.matrix(ctx));
        }
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.letter())?;
        }
        Ok(())
    }
}

/// Point of the extended real line for Möbius actions.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<F> {
    Finite(F),
    Infinity,
}

impl<F> Point<F> {
    pub fn finite(&self) -> Option<&F> {
        match self {
            Point::Finite(x) => Some(x),
            Point::Infinity => None,
        }
    }
}

/// Matrix trace class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceClass {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

/// A determinant-one 2×2 matrix over Q(λ_p), optionally remembering the
/// generator word it came from.
///
/// Equality compares entries only; words are provenance.
#[derive(Clone)]
pub struct Mat2 {
    pub a: NFElem,
    pub b: NFElem,
    pub c: NFElem,
    pub d: NFElem,
    word: Option<Word>,
}

impl Mat2 {
    fn raw(a: NFElem, b: NFElem, c: NFElem, d: NFElem) -> Mat2 {
        Mat2 {
            a,
            b,
            c,
            d,
            word: None,
        }
    }

    pub fn new(a: NFElem, b: NFElem, c: NFElem, d: NFElem) -> Result<Mat2> {
        let m = Mat2::raw(a, b, c, d);
        if !m.det().is_one() {
            return Err(Error::InvalidArgument(format!(
                "determinant {} is not 1",
                m.det()
            )));
        }
        Ok(m)
    }

    pub fn from_ints(ctx: &Context, a: i64, b: i64, c: i64, d: i64) -> Result<Mat2> {
        Mat2::new(
            NFElem::from_int(ctx, a),
            NFElem::from_int(ctx, b),
            NFElem::from_int(ctx, c),
            NFElem::from_int(ctx, d),
        )
    }

    pub fn identity(ctx: &Context) -> Mat2 {
        Mat2::raw(
            NFElem::one(ctx),
            NFElem::zero(ctx),
            NFElem::zero(ctx),
            NFElem::one(ctx),
        )
        .with_word(Word::default())
    }

    pub fn with_word(mut self, w: Word) -> Mat2 {
        self.word = Some(w);
        self
    }

    pub fn without_word(mut self) -> Mat2 {
        self.word = None;
        self
    }

    pub fn word(&self) -> Option<&Word> {
        self.word.as_ref()
    }

    pub fn ctx(&self) -> &Context {
        self.a.ctx()
    }

    pub fn det(&self) -> NFElem {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> NFElem {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let word = match (&self.word, &o.word) {
            (Some(x), Some(y)) => Some(x.concat(y)),
            _ => None,
        };
        Mat2 {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
            word,
        }
    }

    pub fn inverse(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
            word: self.word.as_ref().map(Word::inverse),
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
            word: self.word.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Mat2 {
        let mut acc = Mat2::identity(self.ctx());
        if self.word.is_none() {
            acc.word = None;
        }
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    /// Equal up to the sign ±I.
    pub fn eq_projective(&self, o: &Mat2) -> bool {
        self == o || *self == o.neg()
    }

    pub fn is_projective_identity(&self) -> bool {
        self.eq_projective(&Mat2::identity(self.ctx()))
    }

    /// Trace class from the sign of (a+d)² − 4.
    pub fn classify(&self) -> TraceClass {
        let t = self.trace();
        let disc = &(&t * &t) - &NFElem::from_int(self.ctx(), 4);
        match disc.sign() {
            Ordering::Greater => TraceClass::Hyperbolic,
            Ordering::Equal => TraceClass::Parabolic,
            Ordering::Less => TraceClass::Elliptic,
        }
    }

    /// The two fixed points ((a−d) ± √((a+d)² − 4)) / (2c), + branch first.
    pub fn fixed_points(&self) -> Result<(QElem, QElem)> {
        if self.classify() != TraceClass::Hyperbolic {
            return Err(Error::NotHyperbolic("fixed_points"));
        }
        if self.c.is_zero() {
            return Err(Error::FixedPointAtInfinity);
        }
        let t = self.trace();
        let disc = &(&t * &t) - &NFElem::from_int(self.ctx(), 4);
        let two_c = &self.c * &NFElem::from_int(self.ctx(), 2);
        let inv = two_c.inv()?;
        let u = &(&self.a - &self.d) * &inv;
        let alpha = QElem::new(u.clone(), inv.clone(), disc.clone())?;
        let alpha_p = QElem::new(u, -inv, disc)?;
        Ok((alpha, alpha_p))
    }

    /// Möbius action z ↦ (az + b)/(cz + d) on any coefficient field.
    /// `proto` is any value of the target field (used to embed M(∞)).
    pub fn act_point<F: Field>(&self, z: &Point<F>, proto: &F) -> Point<F> {
        match z {
            Point::Infinity => match self.image_of_infinity() {
                Point::Infinity => Point::Infinity,
                Point::Finite(x) => Point::Finite(proto.lift(&x)),
            },
            Point::Finite(x) => {
                let num = x.lift(&self.a).mul(x).add(&x.lift(&self.b));
                let den = x.lift(&self.c).mul(x).add(&x.lift(&self.d));
                // a value-zero denominator can have a nonzero representation when
                // D is a square, so division is the final word
                match num.div(&den) {
                    Ok(y) if !den.is_zero() => Point::Finite(y),
                    _ => Point::Infinity,
                }
            }
        }
    }

    /// Möbius action on a finite point, `None` if it lands at infinity.
    pub fn act<F: Field>(&self, x: &F) -> Option<F> {
        match self.act_point(&Point::Finite(x.clone()), x) {
            Point::Finite(y) => Some(y),
            Point::Infinity => None,
        }
    }

    /// M(∞) = a/c in the base field.
    pub fn image_of_infinity(&self) -> Point<NFElem> {
        if self.c.is_zero() {
            Point::Infinity
        } else {
            Point::Finite(&self.a / &self.c)
        }
    }
}

impl PartialEq for Mat2 {
    fn eq(&self, o: &Mat2) -> bool {
        self.a == o.a && self.b == o.b && self.c == o.c && self.d == o.d
    }
}

impl Eq for Mat2 {}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)?;
        if let Some(w) = &self.word {
            write!(f, " <{w}>")?;
        }
        Ok(())
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// S = [[1, λ], [0, 1]], T = [[0, −1], [1, 0]] and U = ST.
pub fn generators(ctx: &Context) -> (Mat2, Mat2, Mat2) {
    let s = Gen::S.matrix(ctx);
    let t = Gen::T.matrix(ctx);
    let u = Gen::U.matrix(ctx);
    (s, t, u)
}

/// The sequence a_{-1} = 0, a_0 = 1, a_n = λ a_{n-1} − a_{n-2}, returned as
/// `seq[n + 1] = a_n` for n = −1..=max.
pub fn a_sequence(ctx: &Context, max: u32) -> Vec<NFElem> {
    let lam = NFElem::lambda(ctx);
    let mut seq = vec![NFElem::zero(ctx), NFElem::one(ctx)];
    for i in 2..=(max as usize + 1) {
        let next = &(&lam * &seq[i - 1]) - &seq[i - 2];
        seq.push(next);
    }
    seq
}

/// U^n for 0 ≤ n ≤ p in the closed form [[a_n, −a_{n−1}], [a_{n−1}, −a_{n−2}]].
pub fn u_power(ctx: &Context, n: i64) -> Result<Mat2> {
    let p = ctx.p() as i64;
    if !(0..=p).contains(&n) {
        return Err(Error::OutOfRange { index: n, max: p });
    }
    let word = Word(vec![Gen::U; n as usize]);
    if n == 0 {
        return Ok(Mat2::identity(ctx));
    }
    let seq = a_sequence(ctx, n as u32);
    let a = |k: i64| seq[(k + 1) as usize].clone();
    let m = Mat2::raw(a(n), -a(n - 1), a(n - 1), -a(n - 2));
    Ok(m.with_word(word))
}
