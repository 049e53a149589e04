use super::verdict::{
    AnisotropyCertificate, FieldClass, IsotropyCertificate, ResiduePart,
    StrongAnisotropyCertificate, UnknownReason, Verdict, WeakIsotropyCertificate,
};
use super::QuadForm;
use crate::error::Result;
use crate::field::{Element, Sign, SquareTest, TowerKind};

/// `q ≃ q₁ ⊥ ⟨t⟩q₂` over a Laurent field, with unit residue forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpringerDecomposition {
    /// Residues of the even-valuation entries.
    pub first: QuadForm,
    /// Residues of the odd-valuation entries.
    pub second: QuadForm,
    /// Positions in the original form of the entries of `first`.
    pub first_indices: Vec<usize>,
    /// Positions in the original form of the entries of `second`.
    pub second_indices: Vec<usize>,
}

impl QuadForm {
    pub fn springer_decompose(&self) -> Result<SpringerDecomposition> {
        let residue_field = self.field().residue_field()?.clone();
        let mut first = Vec::new();
        let mut second = Vec::new();
        let mut first_indices = Vec::new();
        let mut second_indices = Vec::new();
        for (i, a) in self.entries().iter().enumerate() {
            let (v, residue) = self.field().valuation_residue(a)?;
            if v.rem_euclid(2) == 0 {
                first.push(residue);
                first_indices.push(i);
            } else {
                second.push(residue);
                second_indices.push(i);
            }
        }
        Ok(SpringerDecomposition {
            first: QuadForm::new(residue_field.clone(), first)?,
            second: QuadForm::new(residue_field, second)?,
            first_indices,
            second_indices,
        })
    }

    /// Decides isotropy where an implemented rule applies, in this order:
    /// small dimension, hyperbolic pair, definiteness, Euclidean hull,
    /// binary determinant, Springer recursion. Anything else is `Unknown`.
    pub fn isotropy_verdict(&self) -> Verdict {
        match self.isotropy_inner() {
            Ok(v) => v,
            Err(e) => Verdict::Unknown(UnknownReason::NoDecisiveRule {
                field: format!("{} ({e})", self.field()),
                dim: self.dim(),
            }),
        }
    }

    fn isotropy_inner(&self) -> Result<Verdict> {
        let field = self.field();
        let n = self.dim();
        if n <= 1 {
            return Ok(Verdict::Anisotropic(AnisotropyCertificate::SmallDimension(n)));
        }
        let a = self.entries();
        for i in 0..n {
            for j in i + 1..n {
                // aᵢ·aⱼ² + aⱼ·s² = 0 when s² = −aᵢ·aⱼ
                let target = field.mul(&a[i], &a[j]).neg();
                match field.square_test(&target)? {
                    SquareTest::NotSquare => {}
                    SquareTest::Square { root: Some(s) } => {
                        let mut w = vec![field.zero(); n];
                        w[i] = a[j].clone();
                        w[j] = s;
                        return Ok(Verdict::Isotropic(IsotropyCertificate::Witness(w)));
                    }
                    SquareTest::Square { root: None } => {
                        return Ok(Verdict::Isotropic(IsotropyCertificate::HyperbolicPair {
                            i,
                            j,
                        }))
                    }
                }
            }
        }
        if let Some(p) = self.definite_at() {
            return Ok(Verdict::Anisotropic(AnisotropyCertificate::DefiniteAt(p)));
        }
        if let TowerKind::EuclideanHull { .. } = field.kind() {
            let p = field.orderings().remove(0);
            let signs: Vec<Sign> = a.iter().map(|x| field.sign_unchecked(x, p.steps())).collect();
            let positive = signs.iter().position(|s| *s == Sign::Pos).expect("indefinite");
            let negative = signs.iter().position(|s| *s == Sign::Neg).expect("indefinite");
            return Ok(Verdict::Isotropic(IsotropyCertificate::IndefiniteOverHull {
                positive,
                negative,
            }));
        }
        if n == 2 {
            let neg_det = field.mul(&a[0], &a[1]).neg();
            return Ok(Verdict::Anisotropic(AnisotropyCertificate::BinaryDeterminant {
                neg_det,
            }));
        }
        if field.is_laurent() {
            let split = self.springer_decompose()?;
            let even = split.first.isotropy_verdict();
            let odd = split.second.isotropy_verdict();
            if even.is_isotropic() {
                return Ok(self.lift_residue_witness(&split, ResiduePart::Even, even));
            }
            if odd.is_isotropic() {
                return Ok(self.lift_residue_witness(&split, ResiduePart::Odd, odd));
            }
            if even.is_anisotropic() && odd.is_anisotropic() {
                return Ok(Verdict::Anisotropic(AnisotropyCertificate::Residues {
                    even: Box::new(even),
                    odd: Box::new(odd),
                }));
            }
            let undecided = if even.is_unknown() { even } else { odd };
            return Ok(Verdict::Unknown(UnknownReason::ResidueUndecided(Box::new(
                undecided,
            ))));
        }
        Ok(Verdict::Unknown(UnknownReason::NoDecisiveRule {
            field: field.to_string(),
            dim: n,
        }))
    }

    /// A residue witness `w` lifts to `xᵢ = wᵢ·t^(−⌊vᵢ/2⌋)` when every entry of
    /// that residue part is a monomial `cᵢ·t^vᵢ`; otherwise the certificate
    /// stays structural.
    fn lift_residue_witness(
        &self,
        split: &SpringerDecomposition,
        part: ResiduePart,
        inner: Verdict,
    ) -> Verdict {
        let field = self.field();
        let indices = match part {
            ResiduePart::Even => &split.first_indices,
            ResiduePart::Odd => &split.second_indices,
        };
        let monomial = |x: &Element| matches!(x, Element::Laurent(m) if m.len() == 1);
        if let Some(w) = inner.witness() {
            if indices.iter().all(|&i| monomial(&self.entries()[i])) {
                let mut lifted = vec![field.zero(); self.dim()];
                for (k, &i) in indices.iter().enumerate() {
                    let (v, _) = field
                        .valuation_residue(&self.entries()[i])
                        .expect("nonzero entry");
                    lifted[i] = field
                        .monomial(w[k].clone(), -v.div_euclid(2))
                        .expect("residue element");
                }
                return Verdict::Isotropic(IsotropyCertificate::Witness(lifted));
            }
        }
        Verdict::Isotropic(IsotropyCertificate::Residue {
            part,
            inner: Box::new(inner),
        })
    }

    /// Decides whether some multiple `n × q` is isotropic.
    ///
    /// Over number fields and Euclidean hulls this holds exactly when `q` is
    /// totally indefinite; over a Laurent field it holds when one of the
    /// Springer residue forms is weakly isotropic.
    pub fn weak_isotropy_verdict(&self) -> Verdict {
        let field = self.field();
        if field.is_laurent() {
            let split = match self.springer_decompose() {
                Ok(s) => s,
                Err(e) => {
                    return Verdict::Unknown(UnknownReason::NoDecisiveRule {
                        field: format!("{field} ({e})"),
                        dim: self.dim(),
                    })
                }
            };
            let even = split.first.weak_isotropy_verdict();
            if even.is_weakly_isotropic() {
                return Verdict::WeaklyIsotropic(WeakIsotropyCertificate::Residue {
                    part: ResiduePart::Even,
                    inner: Box::new(even),
                });
            }
            let odd = split.second.weak_isotropy_verdict();
            if odd.is_weakly_isotropic() {
                return Verdict::WeaklyIsotropic(WeakIsotropyCertificate::Residue {
                    part: ResiduePart::Odd,
                    inner: Box::new(odd),
                });
            }
            return Verdict::StronglyAnisotropic(StrongAnisotropyCertificate::Residues {
                even: Box::new(even),
                odd: Box::new(odd),
            });
        }
        let class = if field.is_euclidean_hull() {
            FieldClass::EuclideanHull
        } else {
            FieldClass::NumberField
        };
        // forms of dimension ≤ 1 are definite everywhere
        match self.definite_at() {
            Some(p) => Verdict::StronglyAnisotropic(StrongAnisotropyCertificate::DefiniteAt(p)),
            None => Verdict::WeaklyIsotropic(WeakIsotropyCertificate::TotallyIndefinite(class)),
        }
    }
}

/// Checks that an isotropy witness is a nonzero vector on which `q` vanishes.
pub fn verify_witness(q: &QuadForm, witness: &[Element]) -> Result<bool> {
    if witness.iter().all(Element::is_zero) {
        return Ok(false);
    }
    Ok(q.evaluate(witness)?.is_zero())
}

/// Verdict re-check: witnesses must evaluate to zero; other isotropic
/// certificates are accepted as structural.
pub fn verify_isotropic(q: &QuadForm, verdict: &Verdict) -> Result<bool> {
    match verdict.witness() {
        Some(w) => verify_witness(q, w),
        None => Ok(verdict.is_isotropic()),
    }
}
