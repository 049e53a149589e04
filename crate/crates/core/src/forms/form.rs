use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, Result};
use crate::field::{Element, FieldTower, Ordering, Sign};
use crate::text::{eval_in_field, Parser};

/// A nondegenerate diagonal quadratic form `⟨a₁, …, aₙ⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    field: FieldTower,
    entries: Vec<Element>,
}

/// Result of trying to order a form's entries so that signs are
/// non-increasing at every ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagonalization {
    Reordered(QuadForm),
    NotByPermutation,
}

impl QuadForm {
    pub fn new(field: FieldTower, entries: Vec<Element>) -> Result<QuadForm> {
        for e in &entries {
            if !field.contains(e) {
                return Err(AlgebraError::FieldMismatch);
            }
            if e.is_zero() {
                return Err(AlgebraError::InvalidForm(
                    "diagonal entries must be nonzero".into(),
                ));
            }
        }
        Ok(QuadForm { field, entries })
    }

    pub fn empty(field: FieldTower) -> QuadForm {
        QuadForm {
            field,
            entries: Vec::new(),
        }
    }

    /// A form with integer entries.
    pub fn from_ints(field: FieldTower, entries: &[i64]) -> Result<QuadForm> {
        let entries = entries.iter().map(|&n| field.from_int(n)).collect();
        QuadForm::new(field, entries)
    }

    /// Parses entries as element expressions over `field`.
    pub fn from_strs(field: FieldTower, entries: &[&str]) -> Result<QuadForm> {
        let entries = entries
            .iter()
            .map(|s| field.parse(s))
            .collect::<Result<Vec<_>>>()?;
        QuadForm::new(field, entries)
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `q ⊥ q′`.
    pub fn orthogonal_sum(&self, other: &QuadForm) -> Result<QuadForm> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(QuadForm {
            field: self.field.clone(),
            entries,
        })
    }

    /// `⟨c⟩q`.
    pub fn scaled(&self, c: &Element) -> Result<QuadForm> {
        if !self.field.contains(c) {
            return Err(AlgebraError::FieldMismatch);
        }
        if c.is_zero() {
            return Err(AlgebraError::ZeroScalar);
        }
        Ok(QuadForm {
            field: self.field.clone(),
            entries: self.entries.iter().map(|a| self.field.mul(c, a)).collect(),
        })
    }

    /// `n × q`, the orthogonal sum of `n` copies.
    pub fn multiple(&self, n: usize) -> QuadForm {
        QuadForm {
            field: self.field.clone(),
            entries: (0..n).flat_map(|_| self.entries.iter().cloned()).collect(),
        }
    }

    /// `Σ aᵢ vᵢ²`.
    pub fn evaluate(&self, v: &[Element]) -> Result<Element> {
        if v.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        let mut acc = self.field.zero();
        for (a, x) in self.entries.iter().zip(v) {
            self.field.check_member(x)?;
            acc = acc.add(&self.field.mul(a, &self.field.square(x)));
        }
        Ok(acc)
    }

    /// Re-reads the entries in a field containing this one.
    pub fn base_change(&self, target: &FieldTower) -> Result<QuadForm> {
        let entries = self
            .entries
            .iter()
            .map(|a| target.embed(&self.field, a))
            .collect::<Result<Vec<_>>>()?;
        QuadForm::new(target.clone(), entries)
    }

    fn signs_at(&self, p: &Ordering) -> Vec<Sign> {
        self.entries
            .iter()
            .map(|a| self.field.sign_unchecked(a, p.steps()))
            .collect()
    }

    pub fn signature_at(&self, p: &Ordering) -> Result<i64> {
        self.field.validate_ordering(p)?;
        Ok(self.signs_at(p).iter().map(|s| s.as_i64()).sum())
    }

    /// Signatures at every ordering, in `orderings()` order.
    pub fn signatures(&self) -> Vec<i64> {
        self.field
            .orderings()
            .iter()
            .map(|p| self.signs_at(p).iter().map(|s| s.as_i64()).sum())
            .collect()
    }

    /// The first ordering at which all entries share a sign.
    pub fn definite_at(&self) -> Option<Ordering> {
        let dim = self.dim() as i64;
        self.field
            .orderings()
            .into_iter()
            .find(|p| self.signs_at(p).iter().map(|s| s.as_i64()).sum::<i64>().abs() == dim)
    }

    /// Indefinite at every ordering; never true in dimension ≤ 1.
    pub fn is_totally_indefinite(&self) -> bool {
        self.dim() >= 2 && self.definite_at().is_none()
    }

    /// Orders the entries so that at every ordering positive entries come
    /// first, if a permutation achieves this.
    pub fn effective_diagonalize(&self) -> Diagonalization {
        let orderings = self.field.orderings();
        let vectors: Vec<Vec<bool>> = self
            .entries
            .iter()
            .map(|a| {
                orderings
                    .iter()
                    .map(|p| self.field.sign_unchecked(a, p.steps()) == Sign::Pos)
                    .collect()
            })
            .collect();
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(vectors[i].iter().filter(|&&b| b).count()));
        let chain = order.windows(2).all(|w| {
            vectors[w[0]]
                .iter()
                .zip(&vectors[w[1]])
                .all(|(hi, lo)| hi >= lo)
        });
        if !chain {
            return Diagonalization::NotByPermutation;
        }
        Diagonalization::Reordered(QuadForm {
            field: self.field.clone(),
            entries: order.iter().map(|&i| self.entries[i].clone()).collect(),
        })
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.entries.iter().map(|a| self.field.format(a)).collect();
        write!(f, "form({}; {})", self.field, entries.join(", "))
    }
}

impl FromStr for QuadForm {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<QuadForm> {
        let mut p = Parser::new(s)?;
        p.expect_keyword("form")?;
        p.expect_sym('(')?;
        let field = p.tower()?;
        p.expect_sym(';')?;
        let exprs = p.expr_list()?;
        p.expect_sym(')')?;
        p.finish()?;
        let entries = exprs
            .iter()
            .map(|e| eval_in_field(e, &field))
            .collect::<Result<Vec<_>>>()?;
        QuadForm::new(field, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transfer_field() -> FieldTower {
        "laurent(quadext(Q, 2))".parse().unwrap()
    }

    fn real_laurent() -> FieldTower {
        "laurent(euclid(Q))".parse().unwrap()
    }

    #[test]
    fn signature_examples() {
        let q = FieldTower::rationals();
        let f = QuadForm::from_ints(q.clone(), &[1, 1]).unwrap();
        assert_eq!(f.signature_at(&q.orderings()[0]).unwrap(), 2);

        let l: FieldTower = "laurent(Q)".parse().unwrap();
        let g = QuadForm::from_strs(l.clone(), &["1", "-t"]).unwrap();
        assert_eq!(g.signature_at(&l.orderings()[0]).unwrap(), 0);

        let h = QuadForm::from_strs(transfer_field(), &["1", "-t", "sqrt(2)", "t*sqrt(2)"]).unwrap();
        assert_eq!(h.signatures(), vec![2, 2, -2, 2]);
    }

    #[test]
    fn signature_rejects_foreign_ordering() {
        let f = QuadForm::from_ints(FieldTower::rationals(), &[1]).unwrap();
        let p = transfer_field().orderings()[0].clone();
        assert_eq!(f.signature_at(&p), Err(AlgebraError::OrderingFieldMismatch));
    }

    #[test]
    fn total_indefiniteness() {
        let h = QuadForm::from_strs(transfer_field(), &["1", "-t", "sqrt(2)", "t*sqrt(2)"]).unwrap();
        assert!(h.is_totally_indefinite());
        let q = FieldTower::rationals();
        assert!(!QuadForm::from_ints(q.clone(), &[1, 1]).unwrap().is_totally_indefinite());
        assert!(QuadForm::from_ints(q.clone(), &[1, -7]).unwrap().is_totally_indefinite());
        assert!(!QuadForm::from_ints(q.clone(), &[-3]).unwrap().is_totally_indefinite());
        assert!(!QuadForm::empty(q).is_totally_indefinite());
    }

    #[test]
    fn form_operations() {
        let l: FieldTower = "laurent(Q)".parse().unwrap();
        let a = QuadForm::from_strs(l.clone(), &["1"]).unwrap();
        let b = QuadForm::from_strs(l.clone(), &["-t"]).unwrap();
        assert_eq!(a.orthogonal_sum(&b).unwrap().to_string(), "form(laurent(Q); 1, -t)");
        let hyp = QuadForm::from_ints(l.clone(), &[1, -1]).unwrap();
        let scaled = hyp.scaled(&l.t().unwrap()).unwrap();
        assert_eq!(scaled.to_string(), "form(laurent(Q); t, -t)");
        assert_eq!(hyp.scaled(&l.zero()), Err(AlgebraError::ZeroScalar));
        let q = FieldTower::rationals();
        let m = QuadForm::from_ints(q.clone(), &[1, -7]).unwrap().multiple(2);
        assert_eq!(m, QuadForm::from_ints(q.clone(), &[1, -7, 1, -7]).unwrap());
        let other = QuadForm::from_ints(q, &[1]).unwrap();
        assert_eq!(a.orthogonal_sum(&other), Err(AlgebraError::FieldMismatch));
    }

    #[test]
    fn rejects_degenerate_entries() {
        let q = FieldTower::rationals();
        assert!(matches!(
            QuadForm::from_ints(q, &[1, 0]),
            Err(AlgebraError::InvalidForm(_))
        ));
    }

    #[test]
    fn effective_diagonalization_examples() {
        let q = FieldTower::rationals();
        let f = QuadForm::from_ints(q.clone(), &[-1, 1]).unwrap();
        assert_eq!(
            f.effective_diagonalize(),
            Diagonalization::Reordered(QuadForm::from_ints(q, &[1, -1]).unwrap())
        );
        let r = real_laurent();
        let g = QuadForm::from_strs(r.clone(), &["t", "1"]).unwrap();
        assert_eq!(
            g.effective_diagonalize(),
            Diagonalization::Reordered(QuadForm::from_strs(r.clone(), &["1", "t"]).unwrap())
        );
        let h = QuadForm::from_strs(r, &["t", "-t"]).unwrap();
        assert_eq!(h.effective_diagonalize(), Diagonalization::NotByPermutation);
    }

    #[test]
    fn text_round_trip() {
        let text = "form(laurent(quadext(Q, 2)); 1, -t, sqrt(2), sqrt(2)*t)";
        let f: QuadForm = text.parse().unwrap();
        assert_eq!(f.to_string(), text);
        assert!("form(Q; 1, 0)".parse::<QuadForm>().is_err());
        assert!("form(Q, 1)".parse::<QuadForm>().is_err());
    }
}
