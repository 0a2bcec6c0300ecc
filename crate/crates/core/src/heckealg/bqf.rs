use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use super::mat2::{Mat2, TraceClass};
use crate::error::{Error, Result};
use crate::numberfield::serial::nf_to_strings;
use crate::numberfield::{NFElem, QElem};

/// Which root of a hyperbolic matrix or form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Binary quadratic form Ax² + Bxy + Cy² over Q(λ_p) with cached
/// discriminant D = B² − 4AC.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bqf {
    a: NFElem,
    b: NFElem,
    c: NFElem,
    disc: NFElem,
}

impl Bqf {
    pub fn new(a: NFElem, b: NFElem, c: NFElem) -> Result<Bqf> {
        a.checked_add(&b)?;
        a.checked_add(&c)?;
        let disc = &(&b * &b) - &(&(&a * &c) * &NFElem::from_int(a.ctx(), 4));
        Ok(Bqf { a, b, c, disc })
    }

    pub fn from_ints(ctx: &crate::numberfield::Context, a: i64, b: i64, c: i64) -> Bqf {
        Bqf::new(
            NFElem::from_int(ctx, a),
            NFElem::from_int(ctx, b),
            NFElem::from_int(ctx, c),
        )
        .expect("same context")
    }

    pub fn a(&self) -> &NFElem {
        &self.a
    }

    pub fn b(&self) -> &NFElem {
        &self.b
    }

    pub fn c(&self) -> &NFElem {
        &self.c
    }

    pub fn disc(&self) -> &NFElem {
        &self.disc
    }

    pub fn ctx(&self) -> &crate::numberfield::Context {
        self.a.ctx()
    }

    /// D > 0 under the real embedding.
    pub fn is_indefinite(&self) -> bool {
        self.disc.sign() == Ordering::Greater
    }

    pub fn neg(&self) -> Bqf {
        Bqf {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            disc: self.disc.clone(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Bqf {
        Bqf::new(self.a.scale(r), self.b.scale(r), self.c.scale(r)).unwrap()
    }

    /// (Q∘M)(x, y) = Q(ax + by, cx + dy).
    pub fn act(&self, m: &Mat2) -> Bqf {
        let (a, b, c, d) = (&m.a, &m.b, &m.c, &m.d);
        let two = NFElem::from_int(self.ctx(), 2);
        let na = &(&(&self.a * &(a * a)) + &(&self.b * &(a * c))) + &(&self.c * &(c * c));
        let nb = &(&(&(&two * &self.a) * &(a * b)) + &(&self.b * &(&(a * d) + &(b * c))))
            + &(&(&two * &self.c) * &(c * d));
        let nc = &(&(&self.a * &(b * b)) + &(&self.b * &(b * d))) + &(&self.c * &(d * d));
        let out = Bqf::new(na, nb, nc).unwrap();
        debug_assert_eq!(out.disc, self.disc);
        out
    }

    /// α_Q = (−B + √D)/(2A).
    pub fn alpha(&self) -> Result<QElem> {
        if self.a.is_zero() {
            return Err(Error::RootAtInfinity);
        }
        let inv = (&self.a * &NFElem::from_int(self.ctx(), 2)).inv()?;
        QElem::new(-(&self.b * &inv), inv, self.disc.clone())
    }

    /// Root on the requested branch; `Minus` gives the Hecke conjugate.
    pub fn root(&self, branch: Branch) -> Result<QElem> {
        let a = self.alpha()?;
        Ok(match branch {
            Branch::Plus => a,
            Branch::Minus => a.conj(),
        })
    }

    /// A > 0 > C.
    pub fn is_simple(&self) -> bool {
        self.a.sign() == Ordering::Greater && self.c.sign() == Ordering::Less
    }

    /// Q(z, 1) = Az² + Bz + C as ascending coefficients.
    pub fn dehomogenized(&self) -> [NFElem; 3] {
        [self.c.clone(), self.b.clone(), self.a.clone()]
    }

    /// Deterministic string key: JSON of the three coefficient vectors.
    pub fn key(&self) -> String {
        serde_json::to_string(&[
            nf_to_strings(&self.a),
            nf_to_strings(&self.b),
            nf_to_strings(&self.c),
        ])
        .unwrap()
    }

    pub fn to_json(&self) -> serde_json::Value {
        use crate::numberfield::serial::nf_to_json;
        serde_json::json!({
            "A": nf_to_json(&self.a),
            "B": nf_to_json(&self.b),
            "C": nf_to_json(&self.c),
            "D": nf_to_json(&self.disc),
        })
    }

    pub fn from_json(ctx: &crate::numberfield::Context, v: &serde_json::Value) -> Result<Bqf> {
        use crate::numberfield::serial::nf_from_json;
        let get = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::Parse(format!("form is missing \"{k}\"")))
                .and_then(|x| nf_from_json(ctx, x))
        };
        let q = Bqf::new(get("A")?, get("B")?, get("C")?)?;
        if let Some(d) = v.get("D") {
            if nf_from_json(ctx, d)? != q.disc {
                return Err(Error::Parse("stored D does not equal B² − 4AC".into()));
            }
        }
        Ok(q)
    }
}

impl fmt::Debug for Bqf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

impl fmt::Display for Bqf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// ±(1/g)[c, d − a, −b] for a hyperbolic matrix, + for the + branch.
///
/// g is the rational content of the entries when p = 3 and 1 otherwise.
pub fn form_from_matrix(m: &Mat2, branch: Branch) -> Result<Bqf> {
    if m.classify() != TraceClass::Hyperbolic {
        return Err(Error::NotHyperbolic("form_from_matrix"));
    }
    let a = m.c.clone();
    let b = &m.d - &m.a;
    let c = -&m.b;
    let g = if m.ctx().p() == 3 {
        NFElem::rational_content(&[&a, &b, &c])
    } else {
        BigRational::from_integer(1.into())
    };
    let mut scale = num_traits::Inv::inv(g);
    if branch == Branch::Minus {
        scale = -scale;
    }
    Ok(Bqf::new(a, b, c)?.scale(&scale))
}

/// Hecke conjugate: the root of −Q_α, i.e. the √D part negated.
pub fn hecke_conjugate(alpha: &QElem) -> QElem {
    alpha.conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heckealg::mat2::generators;
    use crate::numberfield::make_context;

    #[test]
    fn act_by_t_and_s() {
        let ctx = make_context(3).unwrap();
        let (s, t, _) = generators(&ctx);
        let q = Bqf::from_ints(&ctx, 1, 0, -1);
        assert_eq!(q.act(&t), Bqf::from_ints(&ctx, -1, 0, 1));
        assert_eq!(q.act(&Mat2::identity(&ctx)), q);
        let q = Bqf::from_ints(&ctx, 1, -1, -1);
        // S sends (x, y) to (x + y, y)
        let qs = q.act(&s);
        assert_eq!(qs, Bqf::from_ints(&ctx, 1, 1, -1));
        assert_eq!(qs.disc(), &NFElem::from_int(&ctx, 5));
    }

    #[test]
    fn forms_from_golden_matrix() {
        let ctx = make_context(3).unwrap();
        let m = Mat2::from_ints(&ctx, 2, 1, 1, 1).unwrap();
        assert_eq!(form_from_matrix(&m, Branch::Plus).unwrap(), Bqf::from_ints(&ctx, 1, -1, -1));
        assert_eq!(form_from_matrix(&m, Branch::Minus).unwrap(), Bqf::from_ints(&ctx, -1, 1, 1));
        let m2 = m.mul(&m);
        assert_eq!(m2, Mat2::from_ints(&ctx, 5, 3, 3, 2).unwrap());
        let q = form_from_matrix(&m2, Branch::Plus).unwrap();
        assert_eq!(q, Bqf::from_ints(&ctx, 1, -1, -1));
        let (fp, _) = m2.fixed_points().unwrap();
        assert!(q.alpha().unwrap().value_eq(&fp));
    }

    #[test]
    fn form_from_nonhyperbolic_rejected() {
        let ctx = make_context(3).unwrap();
        let (s, _, _) = generators(&ctx);
        assert!(form_from_matrix(&s, Branch::Plus).is_err());
    }

    #[test]
    fn alpha_and_conjugate() {
        let ctx = make_context(3).unwrap();
        let q = Bqf::from_ints(&ctx, 1, -1, -1);
        let a = q.alpha().unwrap();
        assert!((a.to_f64() - 1.618033988749895).abs() < 1e-12);
        let ap = hecke_conjugate(&a);
        assert!((ap.to_f64() + 0.618033988749895).abs() < 1e-12);
        assert_eq!(q.neg().alpha().unwrap(), ap);
        assert_eq!(Bqf::from_ints(&ctx, 0, 1, 1).alpha().unwrap_err(), Error::RootAtInfinity);
    }

    #[test]
    fn simplicity() {
        let ctx = make_context(3).unwrap();
        assert!(Bqf::from_ints(&ctx, 1, -1, -1).is_simple());
        assert!(!Bqf::from_ints(&ctx, -1, 1, 1).is_simple());
        assert!(!Bqf::from_ints(&ctx, 1, -3, 1).is_simple());
    }

    #[test]
    fn json_roundtrip() {
        let ctx = make_context(5).unwrap();
        let q = Bqf::new(
            NFElem::lambda(&ctx),
            NFElem::from_int(&ctx, -1),
            NFElem::from_int_coeffs(&ctx, &[-2, 1]),
        )
        .unwrap();
        let j = q.to_json();
        assert_eq!(Bqf::from_json(&ctx, &j).unwrap(), q);
        let mut bad = j.clone();
        bad["D"] = serde_json::json!(["1/1", "0/1"]);
        assert!(Bqf::from_json(&ctx, &bad).is_err());
    }
}
