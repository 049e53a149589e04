use serde::{Deserialize, Serialize};

use crate::field::{Element, FieldTower, Ordering};

/// Which Springer residue form a residue certificate refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResiduePart {
    /// Entries of even valuation (`q₁`).
    Even,
    /// Entries of odd valuation (`q₂`).
    Odd,
}

/// The class of field a total-indefiniteness rule was applied over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldClass {
    /// ℚ or an iterated real quadratic extension; the rule is Hasse–Minkowski.
    NumberField,
    /// A Euclidean hull, where indefinite forms are isotropic.
    EuclideanHull,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyCertificate {
    /// A vector `v ≠ 0` with `Σ aᵢvᵢ² = 0`.
    Witness(Vec<Element>),
    /// `−aᵢ·aⱼ` is a square but its root is not representable exactly.
    HyperbolicPair { i: usize, j: usize },
    /// Over a Euclidean hull, an entry of each sign.
    IndefiniteOverHull { positive: usize, negative: usize },
    /// A Springer residue form is isotropic.
    Residue {
        part: ResiduePart,
        inner: Box<Verdict>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnisotropyCertificate {
    /// Forms of dimension at most one are anisotropic.
    SmallDimension(usize),
    /// All entries share one sign at this ordering.
    DefiniteAt(Ordering),
    /// A binary form whose `−det` is not a square.
    BinaryDeterminant { neg_det: Element },
    /// Both Springer residue forms are anisotropic.
    Residues {
        even: Box<Verdict>,
        odd: Box<Verdict>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakIsotropyCertificate {
    TotallyIndefinite(FieldClass),
    Residue {
        part: ResiduePart,
        inner: Box<Verdict>,
    },
    /// Obtained over a splitting field `F(√d)`; `d` is a sum of squares, so
    /// weak isotropy descends from the extension.
    Descent {
        radicand: String,
        over_extension: Box<Verdict>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongAnisotropyCertificate {
    /// The form is definite at this ordering, so every multiple is too.
    DefiniteAt(Ordering),
    Residues {
        even: Box<Verdict>,
        odd: Box<Verdict>,
    },
    /// Strongly anisotropic over `F(√d)`, hence over `F`; `d` is a sum of
    /// squares, so the two verdicts agree in both directions.
    Descent {
        radicand: String,
        over_extension: Box<Verdict>,
    },
}

/// Machine-readable reason attached to an `Unknown` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnknownReason {
    /// No implemented rule decides isotropy of this form over this field.
    NoDecisiveRule { field: String, dim: usize },
    /// A residue form could not be decided.
    ResidueUndecided(Box<Verdict>),
    /// The transfer Gram matrix is not diagonal.
    NonDiagonalTransfer,
    /// No involution signature is defined at this ordering.
    SignatureUndefined { ordering: String },
}

impl UnknownReason {
    pub fn code(&self) -> &'static str {
        match self {
            UnknownReason::NoDecisiveRule { .. } => "no-decisive-rule",
            UnknownReason::ResidueUndecided(_) => "residue-undecided",
            UnknownReason::NonDiagonalTransfer => "non-diagonal-transfer",
            UnknownReason::SignatureUndefined { .. } => "signature-undefined",
        }
    }
}

/// A certified, three-valued answer about (weak) isotropy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isotropic(IsotropyCertificate),
    Anisotropic(AnisotropyCertificate),
    WeaklyIsotropic(WeakIsotropyCertificate),
    StronglyAnisotropic(StrongAnisotropyCertificate),
    Unknown(UnknownReason),
}

/// Structured form of a verdict for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub verdict: String,
    pub certificate_kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<String>>,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Isotropic(_) => "isotropic",
            Verdict::Anisotropic(_) => "anisotropic",
            Verdict::WeaklyIsotropic(_) => "weakly-isotropic",
            Verdict::StronglyAnisotropic(_) => "strongly-anisotropic",
            Verdict::Unknown(_) => "unknown",
        }
    }

    pub fn certificate_kind(&self) -> &'static str {
        match self {
            Verdict::Isotropic(c) => match c {
                IsotropyCertificate::Witness(_) => "witness",
                IsotropyCertificate::HyperbolicPair { .. } => "hyperbolic-pair",
                IsotropyCertificate::IndefiniteOverHull { .. } => "indefinite-over-hull",
                IsotropyCertificate::Residue { .. } => "residue",
            },
            Verdict::Anisotropic(c) => match c {
                AnisotropyCertificate::SmallDimension(_) => "small-dimension",
                AnisotropyCertificate::DefiniteAt(_) => "definiteness-ordering",
                AnisotropyCertificate::BinaryDeterminant { .. } => "binary-determinant",
                AnisotropyCertificate::Residues { .. } => "residue-recursion",
            },
            Verdict::WeaklyIsotropic(c) => match c {
                WeakIsotropyCertificate::TotallyIndefinite(FieldClass::NumberField) => {
                    "total-indefiniteness+number-field"
                }
                WeakIsotropyCertificate::TotallyIndefinite(FieldClass::EuclideanHull) => {
                    "total-indefiniteness+euclidean-hull"
                }
                WeakIsotropyCertificate::Residue { .. } => "residue",
                WeakIsotropyCertificate::Descent { .. } => "descent-lemma",
            },
            Verdict::StronglyAnisotropic(c) => match c {
                StrongAnisotropyCertificate::DefiniteAt(_) => "definiteness-ordering",
                StrongAnisotropyCertificate::Residues { .. } => "residue-recursion",
                StrongAnisotropyCertificate::Descent { .. } => "descent-lemma",
            },
            Verdict::Unknown(r) => r.code(),
        }
    }

    pub fn is_isotropic(&self) -> bool {
        matches!(self, Verdict::Isotropic(_))
    }

    pub fn is_anisotropic(&self) -> bool {
        matches!(self, Verdict::Anisotropic(_))
    }

    pub fn is_weakly_isotropic(&self) -> bool {
        matches!(self, Verdict::WeaklyIsotropic(_))
    }

    pub fn is_strongly_anisotropic(&self) -> bool {
        matches!(self, Verdict::StronglyAnisotropic(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    /// The explicit witness vector, when the certificate carries one.
    pub fn witness(&self) -> Option<&[Element]> {
        match self {
            Verdict::Isotropic(IsotropyCertificate::Witness(w)) => Some(w),
            _ => None,
        }
    }

    /// Report record; witness coordinates are rendered over `field`.
    pub fn record(&self, field: &FieldTower) -> VerdictRecord {
        VerdictRecord {
            verdict: self.name().to_string(),
            certificate_kind: self.certificate_kind().to_string(),
            witness: self
                .witness()
                .map(|w| w.iter().map(|x| field.format(x)).collect()),
        }
    }
}
