use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::merge_term;
use super::{Element, Ordering, Sign};
use crate::error::{AlgebraError, Result};

/// The shape of a tower node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TowerKind {
    Rationals,
    /// `base(√radicand)`. The flag records whether the radicand is totally
    /// positive in the base, i.e. whether the step stays inside the
    /// Pythagorean closure.
    QuadExt {
        base: FieldTower,
        radicand: Element,
        pythagorean_step: bool,
    },
    /// A Euclidean field containing `base` and inducing `ordering` on it.
    /// Elements are carried by the base; only square classes change.
    EuclideanHull { base: FieldTower, ordering: Ordering },
    /// `base((t))`, with elements restricted to finite Laurent polynomials.
    Laurent { base: FieldTower },
}

/// An exact formally real field built from ℚ.
///
/// Towers are immutable and cheap to clone. Laurent nodes are always
/// outermost: adjoining `√c` to `F((t))` for a constant `c` produces
/// `F(√c)((t))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldTower(Arc<TowerKind>);

impl FieldTower {
    pub fn rationals() -> FieldTower {
        FieldTower(Arc::new(TowerKind::Rationals))
    }

    pub fn kind(&self) -> &TowerKind {
        &self.0
    }

    pub fn base(&self) -> Option<&FieldTower> {
        match self.kind() {
            TowerKind::Rationals => None,
            TowerKind::QuadExt { base, .. }
            | TowerKind::EuclideanHull { base, .. }
            | TowerKind::Laurent { base } => Some(base),
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self.kind(), TowerKind::Laurent { .. })
    }

    pub fn is_euclidean_hull(&self) -> bool {
        matches!(self.kind(), TowerKind::EuclideanHull { .. })
    }

    /// True for ℚ and iterated real quadratic extensions of ℚ.
    pub fn is_number_field(&self) -> bool {
        match self.kind() {
            TowerKind::Rationals => true,
            TowerKind::QuadExt { base, .. } => base.is_number_field(),
            _ => false,
        }
    }

    /// The field a Laurent node is built over (its residue field).
    pub fn residue_field(&self) -> Result<&FieldTower> {
        match self.kind() {
            TowerKind::Laurent { base } => Ok(base),
            _ => Err(AlgebraError::NotLaurentField),
        }
    }

    /// Adjoins `√radicand`.
    ///
    /// The radicand must be nonzero, a non-square, and positive at some
    /// ordering. Over a Laurent field it must be a constant.
    pub fn quad_ext(&self, radicand: Element) -> Result<FieldTower> {
        self.check_member(&radicand)?;
        if radicand.is_zero() {
            return Err(AlgebraError::InvalidTower("radicand must be nonzero".into()));
        }
        if let TowerKind::Laurent { base } = self.kind() {
            let Element::Laurent(terms) = &radicand else {
                unreachable!("member of Laurent field");
            };
            return match terms.iter().next() {
                Some((0, c)) if terms.len() == 1 => base.quad_ext(c.clone())?.laurent(),
                _ => Err(AlgebraError::InvalidTower(format!(
                    "radicand {} is not a constant; only residue-field radicands can be adjoined below t",
                    self.format(&radicand)
                ))),
            };
        }
        if self.is_square(&radicand)? {
            return Err(AlgebraError::InvalidTower(format!(
                "radicand {} is already a square",
                self.format(&radicand)
            )));
        }
        let orderings = self.orderings();
        let positive = orderings
            .iter()
            .filter(|p| self.sign_unchecked(&radicand, p.steps()) == Sign::Pos)
            .count();
        if positive == 0 {
            return Err(AlgebraError::InvalidTower(format!(
                "radicand {} is negative at every ordering; the extension is not formally real",
                self.format(&radicand)
            )));
        }
        Ok(FieldTower(Arc::new(TowerKind::QuadExt {
            base: self.clone(),
            radicand,
            pythagorean_step: positive == orderings.len(),
        })))
    }

    /// The Euclidean hull of `self` at `ordering`; models a real closure.
    pub fn euclidean_hull(&self, ordering: Ordering) -> Result<FieldTower> {
        match self.kind() {
            TowerKind::Laurent { .. } => {
                return Err(AlgebraError::InvalidTower(
                    "a Euclidean hull must sit below the Laurent node".into(),
                ))
            }
            TowerKind::EuclideanHull { .. } => {
                return Err(AlgebraError::InvalidTower(
                    "Euclidean hulls cannot be nested".into(),
                ))
            }
            _ => {}
        }
        self.validate_ordering(&ordering)?;
        Ok(FieldTower(Arc::new(TowerKind::EuclideanHull {
            base: self.clone(),
            ordering,
        })))
    }

    /// The Laurent field `self((t))`.
    pub fn laurent(&self) -> Result<FieldTower> {
        if self.is_laurent() {
            return Err(AlgebraError::InvalidTower(
                "only one Laurent variable is supported".into(),
            ));
        }
        Ok(FieldTower(Arc::new(TowerKind::Laurent { base: self.clone() })))
    }

    pub fn zero(&self) -> Element {
        match self.kind() {
            TowerKind::Rationals => Element::Rational(BigRational::zero()),
            TowerKind::QuadExt { base, .. } => {
                Element::Quad(Box::new(base.zero()), Box::new(base.zero()))
            }
            TowerKind::EuclideanHull { base, .. } => base.zero(),
            TowerKind::Laurent { .. } => Element::Laurent(BTreeMap::new()),
        }
    }

    pub fn one(&self) -> Element {
        self.from_rational(&BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Element {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: &BigRational) -> Element {
        match self.kind() {
            TowerKind::Rationals => Element::Rational(q.clone()),
            TowerKind::QuadExt { base, .. } => {
                Element::Quad(Box::new(base.from_rational(q)), Box::new(base.zero()))
            }
            TowerKind::EuclideanHull { base, .. } => base.from_rational(q),
            TowerKind::Laurent { base } => self.constant(base.from_rational(q)),
        }
    }

    /// Embeds an element of the immediate base.
    pub fn from_base(&self, x: Element) -> Result<Element> {
        match self.kind() {
            TowerKind::Rationals => Err(AlgebraError::NotAnExtension("ℚ has no base".into())),
            TowerKind::QuadExt { base, .. } => {
                base.check_member(&x)?;
                Ok(Element::Quad(Box::new(x), Box::new(base.zero())))
            }
            TowerKind::EuclideanHull { base, .. } => {
                base.check_member(&x)?;
                Ok(x)
            }
            TowerKind::Laurent { base } => {
                base.check_member(&x)?;
                Ok(self.constant(x))
            }
        }
    }

    fn constant(&self, c: Element) -> Element {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Element::Laurent(terms)
    }

    /// `c·tᵉ` in a Laurent field, with `c` from the residue field.
    pub fn monomial(&self, c: Element, exponent: i64) -> Result<Element> {
        let base = self.residue_field()?;
        base.check_member(&c)?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Ok(Element::Laurent(terms))
    }

    /// The Laurent variable `t`.
    pub fn t(&self) -> Result<Element> {
        let base = self.residue_field()?;
        self.monomial(base.one(), 1)
    }

    /// The adjoined square root `√d` of a quadratic extension.
    pub fn generator(&self) -> Result<Element> {
        match self.kind() {
            TowerKind::QuadExt { base, .. } => {
                Ok(Element::Quad(Box::new(base.zero()), Box::new(base.one())))
            }
            _ => Err(AlgebraError::InvalidTower(
                "only quadratic extensions have a generator".into(),
            )),
        }
    }

    /// True iff `x` has the shape of an element of this field.
    pub fn contains(&self, x: &Element) -> bool {
        match (self.kind(), x) {
            (TowerKind::Rationals, Element::Rational(_)) => true,
            (TowerKind::QuadExt { base, .. }, Element::Quad(a, b)) => {
                base.contains(a) && base.contains(b)
            }
            (TowerKind::EuclideanHull { base, .. }, _) => base.contains(x),
            (TowerKind::Laurent { base }, Element::Laurent(terms)) => terms
                .values()
                .all(|c| !c.is_zero() && base.contains(c)),
            _ => false,
        }
    }

    pub(crate) fn check_member(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        x.add(y)
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        x.sub(y)
    }

    pub fn neg(&self, x: &Element) -> Element {
        x.neg()
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        match (self.kind(), x, y) {
            (TowerKind::Rationals, Element::Rational(a), Element::Rational(b)) => {
                Element::Rational(a * b)
            }
            (TowerKind::QuadExt { base, radicand, .. }, Element::Quad(a, b), Element::Quad(c, e)) => {
                let re = base
                    .mul(a, c)
                    .add(&base.mul(radicand, &base.mul(b, e)));
                let im = base.mul(a, e).add(&base.mul(b, c));
                Element::Quad(Box::new(re), Box::new(im))
            }
            (TowerKind::EuclideanHull { base, .. }, _, _) => base.mul(x, y),
            (TowerKind::Laurent { base }, Element::Laurent(p), Element::Laurent(q)) => {
                let mut out = BTreeMap::new();
                for (e1, c1) in p {
                    for (e2, c2) in q {
                        merge_term(&mut out, e1 + e2, &base.mul(c1, c2));
                    }
                }
                Element::Laurent(out)
            }
            _ => panic!("element shapes do not match field {}", self),
        }
    }

    /// Multiplicative inverse; Laurent elements must be monomials.
    pub fn inv(&self, x: &Element) -> Result<Element> {
        if x.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match (self.kind(), x) {
            (TowerKind::Rationals, Element::Rational(q)) => Ok(Element::Rational(q.recip())),
            (TowerKind::QuadExt { base, radicand, .. }, Element::Quad(a, b)) => {
                // (a + b√d)⁻¹ = (a − b√d) / (a² − d·b²)
                let norm = base
                    .mul(a, a)
                    .sub(&base.mul(radicand, &base.mul(b, b)));
                let norm_inv = base.inv(&norm)?;
                Ok(Element::Quad(
                    Box::new(base.mul(a, &norm_inv)),
                    Box::new(base.mul(&b.neg(), &norm_inv)),
                ))
            }
            (TowerKind::EuclideanHull { base, .. }, _) => base.inv(x),
            (TowerKind::Laurent { base }, Element::Laurent(terms)) => {
                if terms.len() != 1 {
                    return Err(AlgebraError::NonInvertibleLaurentElement(self.format(x)));
                }
                let (e, c) = terms.iter().next().expect("one term");
                self.monomial(base.inv(c)?, -e)
            }
            _ => Err(AlgebraError::FieldMismatch),
        }
    }

    pub fn div(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &Element, exponent: i64) -> Result<Element> {
        let mut acc = self.one();
        let mut base = if exponent < 0 { self.inv(x)? } else { x.clone() };
        let mut n = exponent.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn square(&self, x: &Element) -> Element {
        self.mul(x, x)
    }

    /// Maps `x ∈ src` into `self` along the structural inclusion
    /// `src ⊆ self` (quadratic steps, hulls and a shared Laurent node).
    pub fn embed(&self, src: &FieldTower, x: &Element) -> Result<Element> {
        src.check_member(x)?;
        self.embed_unchecked(src, x)
    }

    fn embed_unchecked(&self, src: &FieldTower, x: &Element) -> Result<Element> {
        if self == src {
            return Ok(x.clone());
        }
        let not_sub = || {
            AlgebraError::NotAnExtension(format!("{} is not a subfield of {}", src, self))
        };
        match self.kind() {
            TowerKind::Rationals => Err(not_sub()),
            TowerKind::QuadExt { base, .. } => Ok(Element::Quad(
                Box::new(base.embed_unchecked(src, x)?),
                Box::new(base.zero()),
            )),
            TowerKind::EuclideanHull { base, .. } => base.embed_unchecked(src, x),
            TowerKind::Laurent { base } => match (src.kind(), x) {
                (TowerKind::Laurent { base: src_base }, Element::Laurent(terms)) => {
                    let mut out = BTreeMap::new();
                    for (e, c) in terms {
                        out.insert(*e, base.embed_unchecked(src_base, c)?);
                    }
                    Ok(Element::Laurent(out))
                }
                _ => Ok(self.constant(base.embed_unchecked(src, x)?)),
            },
        }
    }

    /// True iff `sub` is obtained from `base` by quadratic steps whose
    /// radicands are all totally positive, i.e. `sub ⊆ base_py`.
    pub fn in_pythagorean_closure(sub: &FieldTower, base: &FieldTower) -> Result<bool> {
        if sub == base {
            return Ok(true);
        }
        match (sub.kind(), base.kind()) {
            (TowerKind::Laurent { base: s }, TowerKind::Laurent { base: b }) => {
                FieldTower::in_pythagorean_closure(s, b)
            }
            (
                TowerKind::QuadExt {
                    base: inner,
                    pythagorean_step,
                    ..
                },
                _,
            ) => Ok(FieldTower::in_pythagorean_closure(inner, base)? && *pythagorean_step),
            _ => Err(AlgebraError::NotAnExtension(format!(
                "{} is not reached from {} by quadratic steps",
                sub, base
            ))),
        }
    }

    /// `[self : base]` for a tower reached from `base` by quadratic steps.
    pub fn degree_over(&self, base: &FieldTower) -> Result<u64> {
        if self == base {
            return Ok(1);
        }
        match (self.kind(), base.kind()) {
            (TowerKind::Laurent { base: s }, TowerKind::Laurent { base: b }) => s.degree_over(b),
            (TowerKind::QuadExt { base: inner, .. }, _) => Ok(2 * inner.degree_over(base)?),
            _ => Err(AlgebraError::NotAnExtension(format!(
                "{} is not reached from {} by quadratic steps",
                self, base
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldTower {
        FieldTower::rationals()
    }

    #[test]
    fn laurent_product_identity() {
        let f = q().laurent().unwrap();
        let x = f.parse("1 + t").unwrap();
        let y = f.parse("1 - t").unwrap();
        assert_eq!(f.mul(&x, &y), f.parse("1 - t^2").unwrap());
    }

    #[test]
    fn square_of_one_plus_sqrt2() {
        let k = q().quad_ext(Element::int(2)).unwrap();
        let x = k.parse("1 + sqrt(2)").unwrap();
        // (a + b√2)² = a² + 2b² + 2ab√2 with a = b = 1
        let expected = Element::Quad(Box::new(Element::int(3)), Box::new(Element::int(2)));
        assert_eq!(k.square(&x), expected);
    }

    #[test]
    fn monomial_inverse() {
        let f = q().laurent().unwrap();
        let t = f.t().unwrap();
        let t_inv = f.pow(&t, -1).unwrap();
        assert_eq!(f.mul(&t_inv, &t), f.one());
        let m = f.parse("-4*t").unwrap();
        assert_eq!(f.inv(&m).unwrap(), f.parse("-1/4*t^-1").unwrap());
    }

    #[test]
    fn inversion_errors() {
        let f = q().laurent().unwrap();
        assert_eq!(f.inv(&f.zero()), Err(AlgebraError::DivisionByZero));
        let x = f.parse("1 + t").unwrap();
        assert!(matches!(
            f.inv(&x),
            Err(AlgebraError::NonInvertibleLaurentElement(_))
        ));
    }

    #[test]
    fn quadratic_inverse_round_trips() {
        let k = q().quad_ext(Element::int(3)).unwrap();
        let x = k.parse("2 - 5/3*sqrt(3)").unwrap();
        assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.one());
    }

    #[test]
    fn radicand_invariants() {
        assert!(q().quad_ext(Element::int(4)).is_err());
        assert!(q().quad_ext(Element::int(-2)).is_err());
        assert!(q().quad_ext(Element::int(0)).is_err());
        let k = q().quad_ext(Element::int(2)).unwrap();
        match k.kind() {
            TowerKind::QuadExt { pythagorean_step, .. } => assert!(*pythagorean_step),
            _ => panic!(),
        }
        let kk = k.quad_ext(k.generator().unwrap()).unwrap();
        match kk.kind() {
            TowerKind::QuadExt { pythagorean_step, .. } => assert!(!*pythagorean_step),
            _ => panic!(),
        }
    }

    #[test]
    fn laurent_moves_outermost() {
        let f = q().laurent().unwrap();
        let two = f.from_int(2);
        let l = f.quad_ext(two).unwrap();
        let expected = q().quad_ext(Element::int(2)).unwrap().laurent().unwrap();
        assert_eq!(l, expected);
        assert!(f.quad_ext(f.t().unwrap()).is_err());
    }

    #[test]
    fn hull_constraints() {
        let p = q().orderings()[0].clone();
        let hull = q().euclidean_hull(p.clone()).unwrap();
        let hp = hull.orderings()[0].clone();
        assert!(hull.euclidean_hull(hp).is_err());
        assert!(q().laurent().unwrap().euclidean_hull(p).is_err());
        // every positive element is already a square in the hull
        assert!(hull.quad_ext(Element::int(2)).is_err());
    }

    #[test]
    fn pythagorean_closure_membership() {
        let qq = q();
        let k = qq.quad_ext(Element::int(2)).unwrap();
        assert!(FieldTower::in_pythagorean_closure(&k, &qq).unwrap());
        let kk = k.quad_ext(k.generator().unwrap()).unwrap();
        assert!(!FieldTower::in_pythagorean_closure(&kk, &qq).unwrap());
        assert!(FieldTower::in_pythagorean_closure(&qq, &qq).unwrap());
        assert!(FieldTower::in_pythagorean_closure(&qq, &k).is_err());
        let lk = k.laurent().unwrap();
        let lq = qq.laurent().unwrap();
        assert!(FieldTower::in_pythagorean_closure(&lk, &lq).unwrap());
        assert_eq!(kk.degree_over(&qq).unwrap(), 4);
    }

    #[test]
    fn embedding_into_hull_laurent() {
        let qq = q();
        let k = qq.quad_ext(Element::int(2)).unwrap();
        let hull = k.euclidean_hull(k.orderings()[0].clone()).unwrap();
        let src = qq.laurent().unwrap();
        let dst = hull.laurent().unwrap();
        let x = src.parse("1 - 3*t").unwrap();
        let y = dst.embed(&src, &x).unwrap();
        assert_eq!(dst.format(&y), "1 - 3*t");
        assert!(src.embed(&dst, &y).is_err());
    }
}
