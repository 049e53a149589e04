use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;

use super::{Element, FieldTower, Sign, TowerKind};
use crate::error::{AlgebraError, Result};

/// Outcome of a square test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareTest {
    NotSquare,
    /// `root` is present whenever a square root is representable exactly
    /// (always over number fields; for hulls and Laurent fields only when
    /// the root lies in the carrier).
    Square { root: Option<Element> },
}

impl SquareTest {
    pub fn is_square(&self) -> bool {
        matches!(self, SquareTest::Square { .. })
    }
}

/// A square-class representative of a field with finitely many classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClassRep {
    pub representative: Element,
    pub field: FieldTower,
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

impl FieldTower {
    /// Decides whether a nonzero `x` is a square, returning a root when one
    /// is representable.
    pub fn square_test(&self, x: &Element) -> Result<SquareTest> {
        self.check_member(x)?;
        if x.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        self.square_test_unchecked(x)
    }

    pub fn is_square(&self, x: &Element) -> Result<bool> {
        Ok(self.square_test(x)?.is_square())
    }

    /// An explicit square root of `x`, if `x` is a square and a root is
    /// representable.
    pub fn square_root(&self, x: &Element) -> Result<Option<Element>> {
        Ok(match self.square_test(x)? {
            SquareTest::Square { root } => root,
            SquareTest::NotSquare => None,
        })
    }

    fn square_test_unchecked(&self, x: &Element) -> Result<SquareTest> {
        match (self.kind(), x) {
            (TowerKind::Rationals, Element::Rational(q)) => Ok(match rational_sqrt(q) {
                Some(r) => SquareTest::Square {
                    root: Some(Element::Rational(r)),
                },
                None => SquareTest::NotSquare,
            }),
            (TowerKind::QuadExt { base, radicand, .. }, Element::Quad(p, q)) => {
                self.quad_square_test(base, radicand, p, q)
            }
            (TowerKind::EuclideanHull { base, ordering }, _) => {
                if base.sign_unchecked(x, ordering.steps()) == Sign::Neg {
                    return Ok(SquareTest::NotSquare);
                }
                let root = match base.square_test_unchecked(x)? {
                    SquareTest::Square { root } => root,
                    SquareTest::NotSquare => None,
                };
                Ok(SquareTest::Square { root })
            }
            (TowerKind::Laurent { base }, Element::Laurent(terms)) => {
                let (v, c) = terms.iter().next().map(|(e, c)| (*e, c)).expect("nonzero");
                if v.rem_euclid(2) != 0 {
                    return Ok(SquareTest::NotSquare);
                }
                let r0 = match base.square_test_unchecked(c)? {
                    SquareTest::NotSquare => return Ok(SquareTest::NotSquare),
                    SquareTest::Square { root } => root,
                };
                let root = match r0 {
                    Some(r0) => self.laurent_sqrt(base, terms, v, r0)?,
                    None => None,
                };
                Ok(SquareTest::Square { root })
            }
            _ => Err(AlgebraError::FieldMismatch),
        }
    }

    /// `p + q√d` is a square iff `a² + d·b² = p`, `2ab = q` is solvable in
    /// the base. For `q ≠ 0` this means `a²` is a root of
    /// `A² − p·A + d·q²/4`, found with the quadratic formula.
    fn quad_square_test(
        &self,
        base: &FieldTower,
        d: &Element,
        p: &Element,
        q: &Element,
    ) -> Result<SquareTest> {
        let lift = |a: Element, b: Element| Element::Quad(Box::new(a), Box::new(b));
        if q.is_zero() {
            if let SquareTest::Square { root } = base.square_test_unchecked(p)? {
                return Ok(SquareTest::Square {
                    root: root.map(|r| lift(r, base.zero())),
                });
            }
            // p = d·b²
            let ratio = base.div(p, d)?;
            if let SquareTest::Square { root } = base.square_test_unchecked(&ratio)? {
                return Ok(SquareTest::Square {
                    root: root.map(|b| lift(base.zero(), b)),
                });
            }
            return Ok(SquareTest::NotSquare);
        }
        let disc = base.mul(p, p).sub(&base.mul(d, &base.mul(q, q)));
        if disc.is_zero() {
            return self.quad_root_candidates(base, q, &[base.div(p, &base.from_int(2))?]);
        }
        let s = match base.square_test_unchecked(&disc)? {
            SquareTest::NotSquare => return Ok(SquareTest::NotSquare),
            SquareTest::Square { root: Some(s) } => s,
            SquareTest::Square { root: None } => {
                return Err(AlgebraError::UndecidableRepresentation(format!(
                    "no explicit root of the resolvent discriminant {}",
                    base.format(&disc)
                )))
            }
        };
        let half = BigRational::new(1.into(), 2.into());
        let candidates = [p.add(&s).scale(&half), p.sub(&s).scale(&half)];
        self.quad_root_candidates(base, q, &candidates)
    }

    fn quad_root_candidates(
        &self,
        base: &FieldTower,
        q: &Element,
        candidates: &[Element],
    ) -> Result<SquareTest> {
        for big_a in candidates {
            if big_a.is_zero() {
                continue;
            }
            match base.square_test_unchecked(big_a)? {
                SquareTest::Square { root: Some(a) } => {
                    let two_a = base.mul(&base.from_int(2), &a);
                    let b = base.div(q, &two_a)?;
                    return Ok(SquareTest::Square {
                        root: Some(Element::Quad(Box::new(a), Box::new(b))),
                    });
                }
                SquareTest::Square { root: None } => {
                    return Err(AlgebraError::UndecidableRepresentation(format!(
                        "no explicit root of {}",
                        base.format(big_a)
                    )))
                }
                SquareTest::NotSquare => {}
            }
        }
        Ok(SquareTest::NotSquare)
    }

    /// Square root of a Laurent polynomial `t^v·u` with `v` even, computed as
    /// a truncated power series and accepted only if it squares back exactly.
    fn laurent_sqrt(
        &self,
        base: &FieldTower,
        terms: &BTreeMap<i64, Element>,
        v: i64,
        r0: Element,
    ) -> Result<Option<Element>> {
        let top = *terms.keys().next_back().expect("nonzero");
        let span = top - v;
        if span % 2 != 0 {
            return Ok(None);
        }
        let len = (span / 2) as usize;
        let unit = |n: usize| {
            terms
                .get(&(v + n as i64))
                .cloned()
                .unwrap_or_else(|| base.zero())
        };
        let two_r0_inv = base.inv(&base.mul(&base.from_int(2), &r0))?;
        let mut r = vec![r0];
        for n in 1..=len {
            let mut acc = unit(n);
            for k in 1..n {
                acc = acc.sub(&base.mul(&r[k], &r[n - k]));
            }
            r.push(base.mul(&acc, &two_r0_inv));
        }
        let mut root = BTreeMap::new();
        for (n, c) in r.into_iter().enumerate() {
            if !c.is_zero() {
                root.insert(v / 2 + n as i64, c);
            }
        }
        let root = Element::Laurent(root);
        let x = Element::Laurent(terms.clone());
        Ok((self.square(&root) == x).then_some(root))
    }

    /// Representatives of `F*/F*²` when the group is finite in this tower
    /// grammar; `None` when it is infinite.
    pub fn square_class_reps(&self) -> Option<Vec<SquareClassRep>> {
        let reps = match self.kind() {
            TowerKind::EuclideanHull { .. } => vec![self.one(), self.from_int(-1)],
            TowerKind::Laurent { base } if base.is_euclidean_hull() => {
                let t = self.t().ok()?;
                vec![self.one(), self.from_int(-1), t.clone(), t.neg()]
            }
            _ => return None,
        };
        Some(
            reps.into_iter()
                .map(|representative| SquareClassRep {
                    representative,
                    field: self.clone(),
                })
                .collect(),
        )
    }

    /// Index of the representative sharing the square class of `x`.
    pub fn square_class_of(&self, x: &Element, reps: &[SquareClassRep]) -> Result<Option<usize>> {
        for (i, rep) in reps.iter().enumerate() {
            let ratio = self.div(x, &rep.representative)?;
            if self.is_square(&ratio)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Writes `x = tᵛ·u` with `u` a unit and returns `v` with the residue of `u`.
    pub fn valuation_residue(&self, x: &Element) -> Result<(i64, Element)> {
        self.residue_field()?;
        self.check_member(x)?;
        match x.leading_term() {
            Some((v, c)) => Ok((v, c.clone())),
            None => Err(AlgebraError::ZeroElement),
        }
    }
}
