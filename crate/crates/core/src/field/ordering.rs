use std::fmt;

use num_traits::Signed;

use super::{Element, FieldTower, TowerKind};
use crate::error::{AlgebraError, Result};

/// A strict sign, `+1` or `−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn pow(self, exponent: i64) -> Sign {
        if exponent.rem_euclid(2) == 0 {
            Sign::Pos
        } else {
            self
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i64())
    }
}

/// One entry of an ordering path; there is exactly one per tower node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderingStep {
    /// The unique ordering of ℚ.
    Root,
    /// Sign assigned to the adjoined square root.
    Sqrt(Sign),
    /// Euclidean hull node; the steps below it are the designated ordering.
    Hull,
    /// Sign of the infinitesimal `t`.
    T(Sign),
}

/// A field ordering encoded as the path of sign choices through the tower,
/// listed from ℚ upwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ordering {
    steps: Vec<OrderingStep>,
}

impl Ordering {
    pub(crate) fn from_steps(steps: Vec<OrderingStep>) -> Ordering {
        Ordering { steps }
    }

    pub fn steps(&self) -> &[OrderingStep] {
        &self.steps
    }

    /// Sign of `t`, when the top node is a Laurent node.
    pub fn t_sign(&self) -> Option<Sign> {
        match self.steps.last() {
            Some(OrderingStep::T(s)) => Some(*s),
            _ => None,
        }
    }

    /// The restriction to the base of the top node.
    pub fn restrict(&self) -> Option<Ordering> {
        if self.steps.len() <= 1 {
            return None;
        }
        Some(Ordering {
            steps: self.steps[..self.steps.len() - 1].to_vec(),
        })
    }

    fn extend(&self, step: OrderingStep) -> Ordering {
        let mut steps = self.steps.clone();
        steps.push(step);
        Ordering { steps }
    }

    /// Signs of the square-root steps; the designated ordering of a hull is
    /// written this way in the textual format.
    pub(crate) fn sqrt_signs(&self) -> String {
        self.steps
            .iter()
            .filter_map(|s| match s {
                OrderingStep::Sqrt(sign) => Some(sign.symbol()),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .steps
            .iter()
            .filter_map(|s| match s {
                OrderingStep::Root | OrderingStep::Hull => None,
                OrderingStep::Sqrt(sign) => Some(format!("sqrt{}", sign.symbol())),
                OrderingStep::T(Sign::Pos) => Some("t>0".to_string()),
                OrderingStep::T(Sign::Neg) => Some("t<0".to_string()),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "(unique)")
        } else {
            write!(f, "({})", parts.join(", "))
        }
    }
}

impl FieldTower {
    /// All orderings of the field, in a fixed order: base orderings first,
    /// then `+` before `−` for each new choice.
    pub fn orderings(&self) -> Vec<Ordering> {
        match self.kind() {
            TowerKind::Rationals => vec![Ordering::from_steps(vec![OrderingStep::Root])],
            TowerKind::QuadExt { base, radicand, .. } => {
                let mut out = Vec::new();
                for p in base.orderings() {
                    if base.sign_unchecked(radicand, &p.steps) == Sign::Pos {
                        out.push(p.extend(OrderingStep::Sqrt(Sign::Pos)));
                        out.push(p.extend(OrderingStep::Sqrt(Sign::Neg)));
                    }
                }
                out
            }
            TowerKind::EuclideanHull { ordering, .. } => vec![ordering.extend(OrderingStep::Hull)],
            TowerKind::Laurent { base } => {
                let mut out = Vec::new();
                for p in base.orderings() {
                    out.push(p.extend(OrderingStep::T(Sign::Pos)));
                    out.push(p.extend(OrderingStep::T(Sign::Neg)));
                }
                out
            }
        }
    }

    /// Checks that `p` is an admissible ordering of this field.
    pub fn validate_ordering(&self, p: &Ordering) -> Result<()> {
        if self.steps_valid(&p.steps) {
            Ok(())
        } else {
            Err(AlgebraError::OrderingFieldMismatch)
        }
    }

    fn steps_valid(&self, steps: &[OrderingStep]) -> bool {
        let Some((last, below)) = steps.split_last() else {
            return false;
        };
        match (self.kind(), last) {
            (TowerKind::Rationals, OrderingStep::Root) => below.is_empty(),
            (TowerKind::QuadExt { base, radicand, .. }, OrderingStep::Sqrt(_)) => {
                base.steps_valid(below) && base.sign_unchecked(radicand, below) == Sign::Pos
            }
            (TowerKind::EuclideanHull { ordering, .. }, OrderingStep::Hull) => {
                ordering.steps == below
            }
            (TowerKind::Laurent { base }, OrderingStep::T(_)) => base.steps_valid(below),
            _ => false,
        }
    }

    /// Sign of a nonzero element at an ordering.
    pub fn sign_at(&self, x: &Element, p: &Ordering) -> Result<Sign> {
        self.check_member(x)?;
        if x.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        self.validate_ordering(p)?;
        Ok(self.sign_unchecked(x, &p.steps))
    }

    /// True iff `x` is positive at every ordering of the field.
    pub fn is_totally_positive(&self, x: &Element) -> Result<bool> {
        self.check_member(x)?;
        if x.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        Ok(self
            .orderings()
            .iter()
            .all(|p| self.sign_unchecked(x, &p.steps) == Sign::Pos))
    }

    /// Sign of a nonzero element along a path known to be valid for `self`.
    pub(crate) fn sign_unchecked(&self, x: &Element, steps: &[OrderingStep]) -> Sign {
        let below = &steps[..steps.len() - 1];
        match (self.kind(), x) {
            (TowerKind::Rationals, Element::Rational(q)) => {
                if q.is_positive() {
                    Sign::Pos
                } else {
                    Sign::Neg
                }
            }
            (TowerKind::QuadExt { base, radicand, .. }, Element::Quad(a, b)) => {
                let root_sign = match steps.last() {
                    Some(OrderingStep::Sqrt(s)) => *s,
                    _ => unreachable!("ordering path does not match tower"),
                };
                let sa = (!a.is_zero()).then(|| base.sign_unchecked(a, below));
                let sb = (!b.is_zero()).then(|| base.sign_unchecked(b, below).times(root_sign));
                match (sa, sb) {
                    (Some(s), None) | (None, Some(s)) => s,
                    (Some(s), Some(t)) if s == t => s,
                    (Some(s), Some(t)) => {
                        // a and b√d have opposite signs: the larger magnitude wins,
                        // decided by the sign of a² − d·b² in the base.
                        let a2 = base.mul(a, a);
                        let db2 = base.mul(radicand, &base.mul(b, b));
                        if base.sign_unchecked(&a2.sub(&db2), below) == Sign::Pos {
                            s
                        } else {
                            t
                        }
                    }
                    (None, None) => unreachable!("sign of zero requested"),
                }
            }
            (TowerKind::EuclideanHull { base, .. }, _) => base.sign_unchecked(x, below),
            (TowerKind::Laurent { base }, Element::Laurent(_)) => {
                let t_sign = match steps.last() {
                    Some(OrderingStep::T(s)) => *s,
                    _ => unreachable!("ordering path does not match tower"),
                };
                let (v, c) = x.leading_term().expect("nonzero Laurent element");
                base.sign_unchecked(c, below).times(t_sign.pow(v))
            }
            _ => unreachable!("element does not match tower"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_sqrt2() -> FieldTower {
        FieldTower::rationals().quad_ext(Element::int(2)).unwrap()
    }

    #[test]
    fn ordering_counts_follow_product_formula() {
        let q = FieldTower::rationals();
        assert_eq!(q.orderings().len(), 1);
        assert_eq!(q_sqrt2().laurent().unwrap().orderings().len(), 4);
        let hull = q.euclidean_hull(q.orderings()[0].clone()).unwrap();
        assert_eq!(hull.laurent().unwrap().orderings().len(), 2);
    }

    #[test]
    fn documented_order_for_sqrt2_laurent() {
        let f = q_sqrt2().laurent().unwrap();
        let seen: Vec<(Sign, Sign)> = f
            .orderings()
            .iter()
            .map(|p| {
                let root = match p.steps()[1] {
                    OrderingStep::Sqrt(s) => s,
                    _ => panic!(),
                };
                (root, p.t_sign().unwrap())
            })
            .collect();
        use Sign::*;
        assert_eq!(seen, vec![(Pos, Pos), (Pos, Neg), (Neg, Pos), (Neg, Neg)]);
    }

    #[test]
    fn sign_examples() {
        let f = FieldTower::rationals().laurent().unwrap();
        let t = f.t().unwrap();
        let ords = f.orderings();
        assert_eq!(f.sign_at(&t, &ords[0]).unwrap(), Sign::Pos);
        let m4t = f.mul(&f.from_int(-4), &t);
        assert_eq!(f.sign_at(&m4t, &ords[1]).unwrap(), Sign::Pos);
        assert_eq!(f.sign_at(&m4t, &ords[0]).unwrap(), Sign::Neg);

        let k = q_sqrt2();
        let r = k.generator().unwrap();
        let kords = k.orderings();
        assert_eq!(k.sign_at(&r, &kords[0]).unwrap(), Sign::Pos);
        assert_eq!(k.sign_at(&r, &kords[1]).unwrap(), Sign::Neg);
    }

    #[test]
    fn quadratic_sign_compares_magnitudes() {
        let k = q_sqrt2();
        let ords = k.orderings();
        // 3 - 2√2 ≈ 0.17 > 0, 1 - √2 < 0 at √2 ↦ +
        let x = k.parse("3 - 2*sqrt(2)").unwrap();
        let y = k.parse("1 - sqrt(2)").unwrap();
        assert_eq!(k.sign_at(&x, &ords[0]).unwrap(), Sign::Pos);
        assert_eq!(k.sign_at(&y, &ords[0]).unwrap(), Sign::Neg);
        assert_eq!(k.sign_at(&y, &ords[1]).unwrap(), Sign::Pos);
    }

    #[test]
    fn sign_errors() {
        let f = FieldTower::rationals();
        let p = f.orderings()[0].clone();
        assert_eq!(f.sign_at(&f.zero(), &p), Err(AlgebraError::ZeroElement));
        let g = q_sqrt2();
        assert_eq!(
            f.sign_at(&f.one(), &g.orderings()[0]),
            Err(AlgebraError::OrderingFieldMismatch)
        );
    }

    #[test]
    fn total_positivity() {
        let q = FieldTower::rationals();
        assert!(q.is_totally_positive(&q.from_int(2)).unwrap());
        let k = q_sqrt2();
        assert!(!k.is_totally_positive(&k.generator().unwrap()).unwrap());
        let l = q.laurent().unwrap();
        assert!(l.is_totally_positive(&l.parse("1 + t").unwrap()).unwrap());
        assert!(!l.is_totally_positive(&l.parse("t").unwrap()).unwrap());
    }
}
