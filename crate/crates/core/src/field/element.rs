use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// An exact element of a tower field.
///
/// The variant mirrors the tower node the element lives in: rationals at the
/// bottom, `a + b·√d` pairs for quadratic extensions, and finite Laurent
/// polynomials `Σ cₑ tᵉ` for Laurent nodes. Euclidean hulls share the carrier
/// of their base. All constructors keep the representation canonical, so
/// structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Rational(BigRational),
    Quad(Box<Element>, Box<Element>),
    Laurent(BTreeMap<i64, Element>),
}

impl Element {
    pub fn int(n: i64) -> Element {
        Element::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Element {
        Element::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Element::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Rational(q) => q.is_zero(),
            Element::Quad(a, b) => a.is_zero() && b.is_zero(),
            Element::Laurent(terms) => terms.is_empty(),
        }
    }

    /// Zero of the same shape as `self`.
    pub(crate) fn zero_like(&self) -> Element {
        match self {
            Element::Rational(_) => Element::Rational(BigRational::zero()),
            Element::Quad(a, _) => {
                let z = a.zero_like();
                Element::Quad(Box::new(z.clone()), Box::new(z))
            }
            Element::Laurent(_) => Element::Laurent(BTreeMap::new()),
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Rational(x), Element::Rational(y)) => Element::Rational(x + y),
            (Element::Quad(a, b), Element::Quad(c, d)) => {
                Element::Quad(Box::new(a.add(c)), Box::new(b.add(d)))
            }
            (Element::Laurent(x), Element::Laurent(y)) => {
                let mut out = x.clone();
                for (e, c) in y {
                    merge_term(&mut out, *e, c);
                }
                Element::Laurent(out)
            }
            _ => panic!("element shapes differ: operands belong to different fields"),
        }
    }

    pub fn neg(&self) -> Element {
        match self {
            Element::Rational(x) => Element::Rational(-x),
            Element::Quad(a, b) => Element::Quad(Box::new(a.neg()), Box::new(b.neg())),
            Element::Laurent(terms) => {
                Element::Laurent(terms.iter().map(|(e, c)| (*e, c.neg())).collect())
            }
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    /// Multiplication by a rational scalar; needs no field context.
    pub fn scale(&self, q: &BigRational) -> Element {
        if q.is_zero() {
            return self.zero_like();
        }
        match self {
            Element::Rational(x) => Element::Rational(x * q),
            Element::Quad(a, b) => Element::Quad(Box::new(a.scale(q)), Box::new(b.scale(q))),
            Element::Laurent(terms) => {
                Element::Laurent(terms.iter().map(|(e, c)| (*e, c.scale(q))).collect())
            }
        }
    }

    /// Lowest exponent and its coefficient of a nonzero Laurent element.
    pub(crate) fn leading_term(&self) -> Option<(i64, &Element)> {
        match self {
            Element::Laurent(terms) => terms.iter().next().map(|(e, c)| (*e, c)),
            _ => None,
        }
    }
}

/// Adds `c·tᵉ` into a Laurent coefficient map, dropping cancelled terms.
pub(crate) fn merge_term(terms: &mut BTreeMap<i64, Element>, e: i64, c: &Element) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&e) {
        Some(existing) => {
            let sum = existing.add(c);
            if sum.is_zero() {
                terms.remove(&e);
            } else {
                *existing = sum;
            }
        }
        None => {
            terms.insert(e, c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let x = Element::ratio(6, -4);
        assert_eq!(x, Element::ratio(-3, 2));
        let q = x.as_rational().unwrap();
        assert!(q.denom() > &BigInt::zero());
    }

    #[test]
    fn laurent_addition_drops_cancelled_terms() {
        let mut a = BTreeMap::new();
        a.insert(1, Element::int(2));
        a.insert(0, Element::int(1));
        let mut b = BTreeMap::new();
        b.insert(1, Element::int(-2));
        let sum = Element::Laurent(a).add(&Element::Laurent(b));
        let mut expected = BTreeMap::new();
        expected.insert(0, Element::int(1));
        assert_eq!(sum, Element::Laurent(expected));
        let zero = sum.sub(&sum);
        assert!(zero.is_zero());
        assert_eq!(zero, Element::Laurent(BTreeMap::new()));
    }
}
