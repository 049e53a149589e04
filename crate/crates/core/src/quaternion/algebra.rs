use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{AlgebraError, Result};
use crate::field::{Element, FieldTower};
use crate::forms::{QuadForm, Verdict};
use crate::text::{eval_in_field, Expr, Parser};

/// The quaternion algebra `(a, b)_F`: basis `1, i, j, k = ij` with
/// `i² = a`, `j² = b`, `ij = −ji`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    field: FieldTower,
    a: Element,
    b: Element,
}

/// `x₀ + x₁i + x₂j + x₃k`, coordinates in the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quat {
    coords: [Element; 4],
}

impl Quat {
    pub fn coords(&self) -> &[Element; 4] {
        &self.coords
    }

    pub fn coord(&self, idx: usize) -> &Element {
        &self.coords[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Element::is_zero)
    }

    /// True when the `i`, `j`, `k` coordinates vanish.
    pub fn is_scalar(&self) -> bool {
        self.coords[1..].iter().all(Element::is_zero)
    }

    /// True when the scalar coordinate vanishes.
    pub fn is_pure(&self) -> bool {
        self.coords[0].is_zero()
    }
}

/// Norm form `⟨1, −a, −b, ab⟩` and the division verdict derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionCheck {
    pub norm_form: QuadForm,
    pub verdict: Verdict,
    /// `Some(true)` iff the norm form is anisotropic; `None` when undecided.
    pub is_division: Option<bool>,
}

impl QuaternionAlgebra {
    pub fn new(field: FieldTower, a: Element, b: Element) -> Result<QuaternionAlgebra> {
        field.check_member(&a)?;
        field.check_member(&b)?;
        if a.is_zero() || b.is_zero() {
            return Err(AlgebraError::ZeroScalar);
        }
        Ok(QuaternionAlgebra { field, a, b })
    }

    /// Parses `a` and `b` as element expressions over `field`.
    pub fn from_strs(field: FieldTower, a: &str, b: &str) -> Result<QuaternionAlgebra> {
        let a = field.parse(a)?;
        let b = field.parse(b)?;
        QuaternionAlgebra::new(field, a, b)
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn a(&self) -> &Element {
        &self.a
    }

    pub fn b(&self) -> &Element {
        &self.b
    }

    pub fn quat(&self, x0: Element, x1: Element, x2: Element, x3: Element) -> Result<Quat> {
        for x in [&x0, &x1, &x2, &x3] {
            self.field.check_member(x)?;
        }
        Ok(Quat {
            coords: [x0, x1, x2, x3],
        })
    }

    pub fn contains(&self, x: &Quat) -> bool {
        x.coords.iter().all(|c| self.field.contains(c))
    }

    pub(crate) fn check_member(&self, x: &Quat) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn scalar(&self, c: Element) -> Quat {
        let z = self.field.zero();
        Quat {
            coords: [c, z.clone(), z.clone(), z],
        }
    }

    fn basis(&self, idx: usize) -> Quat {
        let mut coords = [
            self.field.zero(),
            self.field.zero(),
            self.field.zero(),
            self.field.zero(),
        ];
        coords[idx] = self.field.one();
        Quat { coords }
    }

    pub fn zero(&self) -> Quat {
        self.scalar(self.field.zero())
    }

    pub fn one(&self) -> Quat {
        self.basis(0)
    }

    pub fn i(&self) -> Quat {
        self.basis(1)
    }

    pub fn j(&self) -> Quat {
        self.basis(2)
    }

    pub fn k(&self) -> Quat {
        self.basis(3)
    }

    pub fn add(&self, x: &Quat, y: &Quat) -> Quat {
        Quat {
            coords: std::array::from_fn(|n| x.coords[n].add(&y.coords[n])),
        }
    }

    pub fn sub(&self, x: &Quat, y: &Quat) -> Quat {
        Quat {
            coords: std::array::from_fn(|n| x.coords[n].sub(&y.coords[n])),
        }
    }

    pub fn neg(&self, x: &Quat) -> Quat {
        Quat {
            coords: std::array::from_fn(|n| x.coords[n].neg()),
        }
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, c: &Element, x: &Quat) -> Quat {
        Quat {
            coords: std::array::from_fn(|n| self.field.mul(c, &x.coords[n])),
        }
    }

    pub fn mul(&self, x: &Quat, y: &Quat) -> Quat {
        let f = &self.field;
        let (a, b) = (&self.a, &self.b);
        let ab = f.mul(a, b);
        let [x0, x1, x2, x3] = &x.coords;
        let [y0, y1, y2, y3] = &y.coords;
        let m = |p: &Element, q: &Element| f.mul(p, q);
        // ik = aj, ki = −aj, jk = −bi, kj = bi, k² = −ab
        let c0 = m(x0, y0)
            .add(&m(a, &m(x1, y1)))
            .add(&m(b, &m(x2, y2)))
            .sub(&m(&ab, &m(x3, y3)));
        let c1 = m(x0, y1)
            .add(&m(x1, y0))
            .sub(&m(b, &m(x2, y3)))
            .add(&m(b, &m(x3, y2)));
        let c2 = m(x0, y2)
            .add(&m(x2, y0))
            .add(&m(a, &m(x1, y3)))
            .sub(&m(a, &m(x3, y1)));
        let c3 = m(x0, y3)
            .add(&m(x3, y0))
            .add(&m(x1, y2))
            .sub(&m(x2, y1));
        Quat {
            coords: [c0, c1, c2, c3],
        }
    }

    /// Canonical involution: negates the `i`, `j`, `k` coordinates.
    pub fn gamma(&self, x: &Quat) -> Quat {
        let [x0, x1, x2, x3] = &x.coords;
        Quat {
            coords: [x0.clone(), x1.neg(), x2.neg(), x3.neg()],
        }
    }

    /// `Nrd(x) = x₀² − a·x₁² − b·x₂² + ab·x₃²`.
    pub fn nrd(&self, x: &Quat) -> Element {
        let f = &self.field;
        let [x0, x1, x2, x3] = &x.coords;
        let ab = f.mul(&self.a, &self.b);
        f.square(x0)
            .sub(&f.mul(&self.a, &f.square(x1)))
            .sub(&f.mul(&self.b, &f.square(x2)))
            .add(&f.mul(&ab, &f.square(x3)))
    }

    /// `x⁻¹ = γ(x) / Nrd(x)`.
    pub fn inv(&self, x: &Quat) -> Result<Quat> {
        let n = self.nrd(x);
        if n.is_zero() {
            return Err(AlgebraError::NonInvertible);
        }
        let n_inv = self.field.inv(&n)?;
        Ok(self.scale(&n_inv, &self.gamma(x)))
    }

    pub fn div(&self, x: &Quat, y: &Quat) -> Result<Quat> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &Quat, exponent: i64) -> Result<Quat> {
        let base = if exponent < 0 { self.inv(x)? } else { x.clone() };
        let mut acc = self.one();
        for _ in 0..exponent.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// `⟨1, −a, −b, ab⟩`; the algebra is division iff this form is anisotropic.
    pub fn norm_form(&self) -> QuadForm {
        let f = &self.field;
        QuadForm::new(
            f.clone(),
            vec![f.one(), self.a.neg(), self.b.neg(), f.mul(&self.a, &self.b)],
        )
        .expect("a and b are nonzero")
    }

    pub fn division_check(&self) -> DivisionCheck {
        let norm_form = self.norm_form();
        let verdict = norm_form.isotropy_verdict();
        let is_division = match &verdict {
            Verdict::Anisotropic(_) => Some(true),
            Verdict::Isotropic(_) => Some(false),
            _ => None,
        };
        DivisionCheck {
            norm_form,
            verdict,
            is_division,
        }
    }

    pub fn format(&self, x: &Quat) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (n, unit) in ["", "i", "j", "k"].iter().enumerate() {
            let c = &x.coords[n];
            if c.is_zero() {
                continue;
            }
            let text = self.field.format(c);
            let term = if unit.is_empty() {
                text
            } else if text == "1" {
                unit.to_string()
            } else if text == "-1" {
                format!("-{unit}")
            } else if text.contains([' ', '+']) || text[1..].contains('-') {
                format!("({text})*{unit}")
            } else {
                format!("{text}*{unit}")
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }

    /// Parses a quaternion expression over `i`, `j`, `k`, `t` and field
    /// literals, e.g. `t^-1*k` or `1 + j`.
    pub fn parse(&self, src: &str) -> Result<Quat> {
        let mut p = Parser::new(src)?;
        let e = p.expr()?;
        p.finish()?;
        self.eval(&e)
    }

    pub(crate) fn eval(&self, expr: &Expr) -> Result<Quat> {
        Ok(match expr {
            Expr::Int(n) => self.scalar(self.field.from_rational(&BigRational::from_integer(n.clone()))),
            Expr::Ident { name, pos } => match name.as_str() {
                "i" => self.i(),
                "j" => self.j(),
                "k" => self.k(),
                _ => self.scalar(eval_in_field(expr, &self.field).map_err(|_| {
                    AlgebraError::Parse {
                        pos: *pos,
                        msg: format!("`{name}` is not an element of the algebra"),
                    }
                })?),
            },
            Expr::Neg(e) => self.neg(&self.eval(e)?),
            Expr::Add(x, y) => self.add(&self.eval(x)?, &self.eval(y)?),
            Expr::Sub(x, y) => self.sub(&self.eval(x)?, &self.eval(y)?),
            Expr::Mul(x, y) => self.mul(&self.eval(x)?, &self.eval(y)?),
            Expr::Div(x, y) => self.div(&self.eval(x)?, &self.eval(y)?)?,
            Expr::Pow(x, n) => self.pow(&self.eval(x)?, *n)?,
            Expr::Sqrt(..) => self.scalar(eval_in_field(expr, &self.field)?),
        })
    }

    pub(crate) fn from_parser(p: &mut Parser) -> Result<QuaternionAlgebra> {
        p.expect_keyword("quat")?;
        p.expect_sym('(')?;
        let field = p.tower()?;
        p.expect_sym(';')?;
        let a = eval_in_field(&p.expr()?, &field)?;
        p.expect_sym(',')?;
        let b = eval_in_field(&p.expr()?, &field)?;
        p.expect_sym(')')?;
        QuaternionAlgebra::new(field, a, b)
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quat({}; {}, {})",
            self.field,
            self.field.format(&self.a),
            self.field.format(&self.b)
        )
    }
}

impl FromStr for QuaternionAlgebra {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<QuaternionAlgebra> {
        let mut p = Parser::new(s)?;
        let a = QuaternionAlgebra::from_parser(&mut p)?;
        p.finish()?;
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tt() -> QuaternionAlgebra {
        "quat(laurent(Q); t, t)".parse().unwrap()
    }

    #[test]
    fn defining_relations() {
        for text in ["quat(Q; -1, -1)", "quat(laurent(Q); 2, t)", "quat(laurent(Q); t, t)"] {
            let q: QuaternionAlgebra = text.parse().unwrap();
            let (i, j, k) = (q.i(), q.j(), q.k());
            assert_eq!(q.mul(&i, &j), k);
            assert_eq!(q.mul(&j, &i), q.neg(&k));
            assert_eq!(q.mul(&i, &i), q.scalar(q.a().clone()));
            assert_eq!(q.mul(&j, &j), q.scalar(q.b().clone()));
            let ab = q.field().mul(q.a(), q.b());
            assert_eq!(q.mul(&k, &k), q.scalar(ab.neg()));
        }
    }

    #[test]
    fn arithmetic_examples() {
        let q = tt();
        assert_eq!(q.mul(&q.k(), &q.k()), q.parse("-t^2").unwrap());
        let x = q.parse("1 + j").unwrap();
        assert_eq!(q.mul(&x, &x), q.parse("1 + t + 2*j").unwrap());
        assert_eq!(q.gamma(&q.parse("1 + i").unwrap()), q.parse("1 - i").unwrap());
        let two: QuaternionAlgebra = "quat(laurent(Q); 2, t)".parse().unwrap();
        assert_eq!(two.gamma(&two.k()), two.neg(&two.k()));
        assert_eq!(q.mul(&q.gamma(&x), &x), q.parse("1 - t").unwrap());
    }

    #[test]
    fn reduced_norm_examples() {
        let q = tt();
        assert_eq!(q.nrd(&q.parse("2*j").unwrap()), q.field().parse("-4*t").unwrap());
        assert_eq!(q.nrd(&q.one()), q.field().one());
        let two: QuaternionAlgebra = "quat(laurent(Q); 2, t)".parse().unwrap();
        assert_eq!(two.nrd(&two.i()), two.field().from_int(-2));
    }

    #[test]
    fn inverse_and_errors() {
        let q = tt();
        let x = q.parse("t^-1*k").unwrap();
        assert_eq!(q.mul(&x, &q.inv(&x).unwrap()), q.one());
        let split: QuaternionAlgebra = "quat(Q; 1, 1)".parse().unwrap();
        let zero_divisor = split.parse("1 + i").unwrap();
        assert_eq!(split.inv(&zero_divisor), Err(AlgebraError::NonInvertible));
        // Nrd(1 + j) = 1 − t is not a monomial
        assert!(q.inv(&q.parse("1 + j").unwrap()).is_err());
    }

    #[test]
    fn division_examples() {
        let q: QuaternionAlgebra = "quat(laurent(Q); 2, t)".parse().unwrap();
        assert_eq!(q.division_check().is_division, Some(true));
        let h: QuaternionAlgebra = "quat(Q; -1, -1)".parse().unwrap();
        assert_eq!(h.division_check().is_division, Some(true));
        let split: QuaternionAlgebra = "quat(Q; 1, 5)".parse().unwrap();
        assert_eq!(split.division_check().is_division, Some(false));
    }

    #[test]
    fn text_forms() {
        let q: QuaternionAlgebra = "quat(laurent(Q); 2, t)".parse().unwrap();
        assert_eq!(q.to_string(), "quat(laurent(Q); 2, t)");
        for text in ["j", "t*i", "-t*j", "1 + t - 2*k", "(1 - t)*i + j"] {
            let x = q.parse(text).unwrap();
            assert_eq!(q.parse(&q.format(&x)).unwrap(), x, "{text}");
        }
        assert_eq!(q.format(&q.parse("t*i*j").unwrap()), "t*k");
        assert!(q.parse("m").is_err());
        assert!("quat(Q; 0, 1)".parse::<QuaternionAlgebra>().is_err());
    }
}
