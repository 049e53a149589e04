use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, Result};
use crate::field::{Element, FieldTower, Sign, SquareTest};
use crate::forms::{
    QuadForm, StrongAnisotropyCertificate, UnknownReason, Verdict, WeakIsotropyCertificate,
};
use crate::text::Parser;

use super::algebra::{Quat, QuaternionAlgebra};
use super::involution::InvolutionSpec;

/// A diagonal skew-hermitian form `⟨d₁, …, dₙ⟩` over `(A, γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewHermitianForm {
    algebra: QuaternionAlgebra,
    entries: Vec<Quat>,
}

impl SkewHermitianForm {
    /// Entries must be pure (`γ(d) = −d`) and invertible.
    pub fn new(algebra: QuaternionAlgebra, entries: Vec<Quat>) -> Result<SkewHermitianForm> {
        for d in &entries {
            algebra.check_member(d)?;
            if !d.is_pure() {
                return Err(AlgebraError::InvalidForm(format!(
                    "{} is not skew under γ",
                    algebra.format(d)
                )));
            }
            if algebra.nrd(d).is_zero() {
                return Err(AlgebraError::InvalidForm(format!(
                    "{} is not invertible",
                    algebra.format(d)
                )));
            }
        }
        Ok(SkewHermitianForm { algebra, entries })
    }

    pub fn from_strs(algebra: QuaternionAlgebra, entries: &[&str]) -> Result<SkewHermitianForm> {
        let entries = entries
            .iter()
            .map(|s| algebra.parse(s))
            .collect::<Result<Vec<_>>>()?;
        SkewHermitianForm::new(algebra, entries)
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn entries(&self) -> &[Quat] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `h(x, y) = Σ γ(xᵢ)·dᵢ·yᵢ`.
    pub fn gram(&self, x: &[Quat], y: &[Quat]) -> Result<Quat> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.dim(),
                    got: v.len(),
                });
            }
        }
        let a = &self.algebra;
        let mut acc = a.zero();
        for ((d, xi), yi) in self.entries.iter().zip(x).zip(y) {
            a.check_member(xi)?;
            a.check_member(yi)?;
            acc = a.add(&acc, &a.mul(&a.mul(&a.gamma(xi), d), yi));
        }
        Ok(acc)
    }
}

impl fmt::Display for SkewHermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.entries.iter().map(|d| self.algebra.format(d)).collect();
        write!(f, "sherm({}; {})", self.algebra, entries.join(", "))
    }
}

impl FromStr for SkewHermitianForm {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<SkewHermitianForm> {
        let mut p = Parser::new(s)?;
        p.expect_keyword("sherm")?;
        p.expect_sym('(')?;
        let algebra = QuaternionAlgebra::from_parser(&mut p)?;
        p.expect_sym(';')?;
        let exprs = p.expr_list()?;
        p.expect_sym(')')?;
        p.finish()?;
        let entries = exprs
            .iter()
            .map(|e| algebra.eval(e))
            .collect::<Result<Vec<_>>>()?;
        SkewHermitianForm::new(algebra, entries)
    }
}

/// The `π₂`-transfer of a skew-hermitian form to `L = F(√a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferResult {
    /// `F(√a)`, canonicalized; `F` itself when `a` already has a root in `F`.
    pub field: FieldTower,
    /// `2n × 2n` Gram matrix on the bases `{1, j}` of each entry.
    pub gram: Vec<Vec<Element>>,
    /// The diagonal of `gram`, when `gram` is diagonal.
    pub diagonal_form: Option<QuadForm>,
}

impl TransferResult {
    /// The 2×2 block belonging to entry `n`.
    pub fn block(&self, n: usize) -> [[Element; 2]; 2] {
        let g = &self.gram;
        let r = 2 * n;
        [
            [g[r][r].clone(), g[r][r + 1].clone()],
            [g[r + 1][r].clone(), g[r + 1][r + 1].clone()],
        ]
    }
}

/// Transfers `h` along `π₂ : α + βj ↦ β`, reading `i` as `√a` in `L`.
pub fn pi2_transfer(h: &SkewHermitianForm) -> Result<TransferResult> {
    let alg = h.algebra();
    let f = alg.field();
    let a = alg.a();
    let (field, root) = match f.square_test(a)? {
        SquareTest::Square { root: Some(r) } => (f.clone(), r),
        SquareTest::Square { root: None } => {
            return Err(AlgebraError::NotSplitByL(format!(
                "{} is a square in {f} but its root is not representable",
                f.format(a)
            )))
        }
        SquareTest::NotSquare => {
            if f.orderings()
                .iter()
                .all(|p| f.sign_unchecked(a, p.steps()) == Sign::Neg)
            {
                return Err(AlgebraError::NonRealSplittingField(format!(
                    "{} is negative at every ordering of {f}",
                    f.format(a)
                )));
            }
            let l = f.quad_ext(a.clone())?;
            let r = l
                .square_root(&l.embed(f, a)?)?
                .expect("√a is the generator of L");
            (l, r)
        }
    };
    let beta = |q: &Quat| -> Result<Element> {
        let x2 = field.embed(f, q.coord(2))?;
        let x3 = field.embed(f, q.coord(3))?;
        Ok(x2.add(&field.mul(&x3, &root)))
    };
    let n = h.dim();
    let mut gram = vec![vec![field.zero(); 2 * n]; 2 * n];
    let basis = [alg.one(), alg.j()];
    for (m, d) in h.entries().iter().enumerate() {
        for (r, e) in basis.iter().enumerate() {
            for (c, g) in basis.iter().enumerate() {
                let value = alg.mul(&alg.mul(&alg.gamma(e), d), g);
                gram[2 * m + r][2 * m + c] = beta(&value)?;
            }
        }
    }
    let diagonal = (0..2 * n).all(|r| (0..2 * n).all(|c| r == c || gram[r][c].is_zero()));
    let diagonal_form = if diagonal {
        QuadForm::new(field.clone(), (0..2 * n).map(|r| gram[r][r].clone()).collect()).ok()
    } else {
        None
    };
    Ok(TransferResult {
        field,
        gram,
        diagonal_form,
    })
}

/// An involution whose total indefiniteness can be assessed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionModel {
    /// The adjoint involution of a quadratic form on a split matrix algebra.
    AdjointQuadratic(QuadForm),
    /// The adjoint involution of a skew-hermitian form over `(A, γ)`.
    AdjointSkewHermitian(SkewHermitianForm),
    /// An involution on the quaternion algebra itself.
    Quaternion {
        algebra: QuaternionAlgebra,
        sigma: InvolutionSpec,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indefiniteness {
    /// `signatures` are absolute signatures at each ordering of `field`.
    Decided {
        totally_indefinite: bool,
        field: FieldTower,
        signatures: Vec<i64>,
    },
    Unknown(UnknownReason),
}

impl Indefiniteness {
    pub fn is_totally_indefinite(&self) -> Option<bool> {
        match self {
            Indefiniteness::Decided {
                totally_indefinite, ..
            } => Some(*totally_indefinite),
            Indefiniteness::Unknown(_) => None,
        }
    }
}

fn form_indefiniteness(q: &QuadForm) -> Indefiniteness {
    Indefiniteness::Decided {
        totally_indefinite: q.is_totally_indefinite(),
        field: q.field().clone(),
        signatures: q.signatures().into_iter().map(i64::abs).collect(),
    }
}

/// Total indefiniteness of an involution, read off an associated quadratic
/// form. For an orthogonal involution on a quaternion algebra that is
/// division at `P` the signature at `P` is 0; no other case is defined.
pub fn involution_totally_indefinite(model: &InvolutionModel) -> Result<Indefiniteness> {
    match model {
        InvolutionModel::AdjointQuadratic(q) => Ok(form_indefiniteness(q)),
        InvolutionModel::AdjointSkewHermitian(h) => Ok(match pi2_transfer(h)?.diagonal_form {
            Some(q) => form_indefiniteness(&q),
            None => Indefiniteness::Unknown(UnknownReason::NonDiagonalTransfer),
        }),
        InvolutionModel::Quaternion { algebra, sigma } => {
            algebra.validate_involution(sigma)?;
            let f = algebra.field();
            if *sigma == InvolutionSpec::Canonical {
                return Ok(Indefiniteness::Unknown(UnknownReason::NoDecisiveRule {
                    field: f.to_string(),
                    dim: 4,
                }));
            }
            let orderings = f.orderings();
            for p in &orderings {
                let negative =
                    |x: &Element| f.sign_unchecked(x, p.steps()) == Sign::Neg;
                if !(negative(algebra.a()) && negative(algebra.b())) {
                    return Ok(Indefiniteness::Unknown(UnknownReason::SignatureUndefined {
                        ordering: p.to_string(),
                    }));
                }
            }
            Ok(Indefiniteness::Decided {
                totally_indefinite: true,
                field: f.clone(),
                signatures: vec![0; orderings.len()],
            })
        }
    }
}

/// Weak isotropy of the adjoint involution of `h`, decided over
/// `L = F(√a)` and brought back to `F`.
///
/// `a` must be totally positive, hence a sum of squares, so weak isotropy
/// over `L` descends to `F`; strong anisotropy restricts trivially.
pub fn involution_weak_isotropy_via_descent(h: &SkewHermitianForm) -> Result<Verdict> {
    let alg = h.algebra();
    let f = alg.field();
    if !f.is_totally_positive(alg.a())? {
        return Err(AlgebraError::PreconditionFailed(format!(
            "{} is not totally positive in {f}; descent does not apply",
            f.format(alg.a())
        )));
    }
    let transfer = pi2_transfer(h)?;
    let Some(form) = transfer.diagonal_form else {
        return Ok(Verdict::Unknown(UnknownReason::NonDiagonalTransfer));
    };
    let over_l = form.weak_isotropy_verdict();
    let radicand = f.format(alg.a());
    Ok(match over_l {
        Verdict::WeaklyIsotropic(_) => Verdict::WeaklyIsotropic(WeakIsotropyCertificate::Descent {
            radicand,
            over_extension: Box::new(over_l),
        }),
        Verdict::StronglyAnisotropic(_) => {
            Verdict::StronglyAnisotropic(StrongAnisotropyCertificate::Descent {
                radicand,
                over_extension: Box::new(over_l),
            })
        }
        other => other,
    })
}
