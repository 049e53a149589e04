use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Element, FieldTower, TowerKind};

/// A monomial `coefficient · factor₁ · factor₂ · …` in the expanded
/// textual form of an element.
type Term = (BigRational, Vec<String>);

impl FieldTower {
    /// Renders `x` in the shared textual format; the result parses back to
    /// `x` with [`FieldTower::parse`].
    pub fn format(&self, x: &Element) -> String {
        join_terms(&self.terms(x))
    }

    fn terms(&self, x: &Element) -> Vec<Term> {
        match (self.kind(), x) {
            (TowerKind::Rationals, Element::Rational(q)) => {
                if q.is_zero() {
                    vec![]
                } else {
                    vec![(q.clone(), vec![])]
                }
            }
            (TowerKind::QuadExt { base, radicand, .. }, Element::Quad(a, b)) => {
                let root = format!("sqrt({})", base.format(radicand));
                let mut out = base.terms(a);
                for (c, mut factors) in base.terms(b) {
                    factors.push(root.clone());
                    out.push((c, factors));
                }
                out
            }
            (TowerKind::EuclideanHull { base, .. }, _) => base.terms(x),
            (TowerKind::Laurent { base }, Element::Laurent(map)) => {
                let mut out = Vec::new();
                for (e, c) in map {
                    let power = match e {
                        0 => None,
                        1 => Some("t".to_string()),
                        e => Some(format!("t^{e}")),
                    };
                    for (q, mut factors) in base.terms(c) {
                        factors.extend(power.clone());
                        out.push((q, factors));
                    }
                }
                out
            }
            _ => vec![(BigRational::one(), vec!["<invalid>".to_string()])],
        }
    }
}

fn join_terms(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, factors)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = c.abs();
        if factors.is_empty() {
            out.push_str(&magnitude.to_string());
        } else {
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TowerKind::Rationals => write!(f, "Q"),
            TowerKind::QuadExt { base, radicand, .. } => {
                write!(f, "quadext({}, {})", base, base.format(radicand))
            }
            TowerKind::EuclideanHull { base, ordering } => {
                let signs = ordering.sqrt_signs();
                if signs.is_empty() {
                    write!(f, "euclid({})", base)
                } else {
                    write!(f, "euclid({}, {})", base, signs)
                }
            }
            TowerKind::Laurent { base } => write!(f, "laurent({})", base),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_text() {
        let k = FieldTower::rationals().quad_ext(Element::int(2)).unwrap();
        let f = k.laurent().unwrap();
        for text in ["1 + t*sqrt(2)", "-4*t", "1/2 - 3/2*sqrt(2)*t^-1", "0", "-t^2"] {
            let x = f.parse(text).unwrap();
            let shown = f.format(&x);
            assert_eq!(f.parse(&shown).unwrap(), x, "{text} -> {shown}");
        }
        assert_eq!(f.format(&f.parse("t*sqrt(2) + 1").unwrap()), "1 + sqrt(2)*t");
    }

    #[test]
    fn tower_text() {
        let q = FieldTower::rationals();
        let k = q.quad_ext(Element::int(2)).unwrap();
        assert_eq!(k.laurent().unwrap().to_string(), "laurent(quadext(Q, 2))");
        let hull = k.euclidean_hull(k.orderings()[1].clone()).unwrap();
        assert_eq!(hull.to_string(), "euclid(quadext(Q, 2), -)");
        let plain = q.euclidean_hull(q.orderings()[0].clone()).unwrap();
        assert_eq!(plain.laurent().unwrap().to_string(), "laurent(euclid(Q))");
    }
}
