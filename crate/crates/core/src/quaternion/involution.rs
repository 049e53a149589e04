use crate::error::{AlgebraError, Result};
use crate::field::{Element, Ordering, Sign, SquareTest};
use crate::text::Parser;

use super::algebra::{Quat, QuaternionAlgebra};

/// An involution of the first kind on a quaternion algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionSpec {
    /// The canonical (symplectic) involution `γ`.
    Canonical,
    /// `Int(u)∘γ : x ↦ u·γ(x)·u⁻¹`, orthogonal for pure invertible `u`.
    IntUGamma(Quat),
}

impl QuaternionAlgebra {
    /// Checks that `u` is pure and invertible, so `Int(u)∘γ` is orthogonal.
    pub fn validate_involution(&self, sigma: &InvolutionSpec) -> Result<()> {
        if let InvolutionSpec::IntUGamma(u) = sigma {
            self.check_member(u)?;
            if self.nrd(u).is_zero() {
                return Err(AlgebraError::NonInvertibleU);
            }
            if !u.is_pure() {
                return Err(AlgebraError::PreconditionFailed(format!(
                    "Int(u)∘γ needs a pure u; got {}",
                    self.format(u)
                )));
            }
        }
        Ok(())
    }

    pub fn apply_involution(&self, sigma: &InvolutionSpec, x: &Quat) -> Result<Quat> {
        self.check_member(x)?;
        match sigma {
            InvolutionSpec::Canonical => Ok(self.gamma(x)),
            InvolutionSpec::IntUGamma(u) => {
                self.validate_involution(sigma)?;
                let u_inv = self.inv(u).map_err(|e| match e {
                    AlgebraError::NonInvertible => AlgebraError::NonInvertibleU,
                    other => other,
                })?;
                Ok(self.mul(&self.mul(u, &self.gamma(x)), &u_inv))
            }
        }
    }

    /// `Σ σ(xᵢ)·xᵢ`.
    pub fn sigma_sum(&self, sigma: &InvolutionSpec, xs: &[Quat]) -> Result<Quat> {
        let mut acc = self.zero();
        for x in xs {
            acc = self.add(&acc, &self.mul(&self.apply_involution(sigma, x)?, x));
        }
        Ok(acc)
    }

    /// `Σ xᵢ·σ(xᵢ)`, the sum of hermitian squares.
    pub fn hermitian_sum(&self, sigma: &InvolutionSpec, xs: &[Quat]) -> Result<Quat> {
        let mut acc = self.zero();
        for x in xs {
            acc = self.add(&acc, &self.mul(x, &self.apply_involution(sigma, x)?));
        }
        Ok(acc)
    }

    /// Dimension of `{x : σ(x) = x}`, by elimination on the coordinate matrix
    /// of `σ − id`. It is 3 for orthogonal and 1 for symplectic involutions.
    pub fn symmetric_dimension(&self, sigma: &InvolutionSpec) -> Result<usize> {
        let f = self.field();
        let basis = [self.one(), self.i(), self.j(), self.k()];
        // rows[r][c]: coordinate r of (σ − id)(e_c)
        let mut rows: Vec<Vec<Element>> = vec![Vec::with_capacity(4); 4];
        for e in &basis {
            let image = self.sub(&self.apply_involution(sigma, e)?, e);
            for (r, row) in rows.iter_mut().enumerate() {
                row.push(image.coord(r).clone());
            }
        }
        let mut rank = 0;
        for col in 0..4 {
            let mut pivot = None;
            let mut saw_nonzero = false;
            for r in rank..4 {
                if rows[r][col].is_zero() {
                    continue;
                }
                saw_nonzero = true;
                if let Ok(inv) = f.inv(&rows[r][col]) {
                    pivot = Some((r, inv));
                    break;
                }
            }
            let Some((r, inv)) = pivot else {
                if saw_nonzero {
                    return Err(AlgebraError::UndecidableRepresentation(
                        "no invertible pivot for the symmetric-space elimination".into(),
                    ));
                }
                continue;
            };
            rows.swap(rank, r);
            let pivot_row: Vec<Element> = rows[rank].iter().map(|x| f.mul(x, &inv)).collect();
            for (rr, row) in rows.iter_mut().enumerate() {
                if rr == rank || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (c, x) in row.iter_mut().enumerate() {
                    *x = x.sub(&f.mul(&factor, &pivot_row[c]));
                }
            }
            rows[rank] = pivot_row;
            rank += 1;
        }
        Ok(4 - rank)
    }

    /// An ordering at which both slots are negative, i.e. at which the
    /// algebra stays division over the real closure.
    pub fn division_ordering(&self) -> Option<Ordering> {
        let f = self.field();
        f.orderings().into_iter().find(|p| {
            f.sign_unchecked(self.a(), p.steps()) == Sign::Neg
                && f.sign_unchecked(self.b(), p.steps()) == Sign::Neg
        })
    }

    /// Parses `gamma` or `int_gamma(u)`.
    pub fn parse_involution(&self, src: &str) -> Result<InvolutionSpec> {
        let mut p = Parser::new(src)?;
        let name = p.expect_ident()?;
        let sigma = match name.as_str() {
            "gamma" => InvolutionSpec::Canonical,
            "int_gamma" => {
                p.expect_sym('(')?;
                let u = self.eval(&p.expr()?)?;
                p.expect_sym(')')?;
                InvolutionSpec::IntUGamma(u)
            }
            other => {
                return Err(AlgebraError::Parse {
                    pos: 0,
                    msg: format!("unknown involution `{other}`"),
                })
            }
        };
        p.finish()?;
        self.validate_involution(&sigma)?;
        Ok(sigma)
    }

    pub fn format_involution(&self, sigma: &InvolutionSpec) -> String {
        match sigma {
            InvolutionSpec::Canonical => "gamma".to_string(),
            InvolutionSpec::IntUGamma(u) => format!("int_gamma({})", self.format(u)),
        }
    }
}

/// Bounds for [`weak_isotropy_witness_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest number of terms in a candidate sum.
    pub max_terms: usize,
    /// Scalars each candidate term is multiplied by. Signs are redundant:
    /// `σ(−x)(−x) = σ(x)x`.
    pub coefficients: Vec<Element>,
    /// Also use pairwise products and sums of generators as terms.
    pub combine: bool,
}

impl SearchBounds {
    /// Products and sums of generators, scaled by `1, t, t⁻¹` over a
    /// Laurent field and by `1` otherwise.
    pub fn standard(algebra: &QuaternionAlgebra, max_terms: usize) -> SearchBounds {
        let f = algebra.field();
        let mut coefficients = vec![f.one()];
        if let Ok(t) = f.t() {
            coefficients.push(t.clone());
            coefficients.push(f.inv(&t).expect("t is a unit"));
        }
        SearchBounds {
            max_terms,
            coefficients,
            combine: true,
        }
    }

    /// Only the generators themselves, unscaled.
    pub fn exact_terms(algebra: &QuaternionAlgebra, max_terms: usize) -> SearchBounds {
        SearchBounds {
            max_terms,
            coefficients: vec![algebra.field().one()],
            combine: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    /// Nonzero `x₁, …, xₙ` with `Σ σ(xᵢ)xᵢ = 0`, re-verified exactly.
    Found(Vec<Quat>),
    /// Nothing within the bounds; this proves nothing.
    NotFound { candidates: usize },
}

/// Bounded, deterministic search for a weak-isotropy witness of `σ`.
///
/// Candidate terms are the generators (and, if enabled, their pairwise
/// products and sums) times each coefficient; sums of up to `max_terms`
/// terms, repetition allowed, are tried in order of size.
pub fn weak_isotropy_witness_search(
    algebra: &QuaternionAlgebra,
    sigma: &InvolutionSpec,
    generators: &[Quat],
    bounds: &SearchBounds,
) -> Result<WitnessSearch> {
    algebra.validate_involution(sigma)?;
    let mut base: Vec<Quat> = generators.to_vec();
    if bounds.combine {
        for (n, g) in generators.iter().enumerate() {
            for h in &generators[n..] {
                base.push(algebra.mul(g, h));
                if g != h {
                    base.push(algebra.mul(h, g));
                    base.push(algebra.add(g, h));
                    base.push(algebra.sub(g, h));
                }
            }
        }
    }
    // one term per distinct value of σ(x)x
    let mut terms: Vec<(Quat, Quat)> = Vec::new();
    for g in &base {
        for c in &bounds.coefficients {
            let x = algebra.scale(c, g);
            if x.is_zero() {
                continue;
            }
            let v = algebra.mul(&algebra.apply_involution(sigma, &x)?, &x);
            if !terms.iter().any(|(_, w)| *w == v) {
                terms.push((x, v));
            }
        }
    }
    for size in 1..=bounds.max_terms {
        let mut chosen = Vec::with_capacity(size);
        if let Some(found) = search_sums(algebra, &terms, size, 0, algebra.zero(), &mut chosen) {
            let xs: Vec<Quat> = found.iter().map(|&n| terms[n].0.clone()).collect();
            debug_assert!(algebra.sigma_sum(sigma, &xs).map(|s| s.is_zero()).unwrap_or(false));
            return Ok(WitnessSearch::Found(xs));
        }
    }
    Ok(WitnessSearch::NotFound {
        candidates: terms.len(),
    })
}

fn search_sums(
    algebra: &QuaternionAlgebra,
    terms: &[(Quat, Quat)],
    remaining: usize,
    start: usize,
    acc: Quat,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if remaining == 0 {
        return acc.is_zero().then(|| chosen.clone());
    }
    for n in start..terms.len() {
        chosen.push(n);
        let next = algebra.add(&acc, &terms[n].1);
        if let Some(found) = search_sums(algebra, terms, remaining - 1, n, next, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// True when every `xᵢ` is nonzero and `Σ σ(xᵢ)xᵢ = 0`.
pub fn verify_weak_witness(
    algebra: &QuaternionAlgebra,
    sigma: &InvolutionSpec,
    xs: &[Quat],
) -> Result<bool> {
    if xs.is_empty() || xs.iter().any(Quat::is_zero) {
        return Ok(false);
    }
    Ok(algebra.sigma_sum(sigma, xs)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionReason {
    /// `Nrd(s)` is negative here, so it cannot be a square.
    NegativeAt(Ordering),
    /// `Nrd(s)` is positive everywhere but still not a square.
    NormNotSquare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareCheck {
    /// `s = x·σ(x)` for this `x`.
    IsSquare(Quat),
    /// `s = xσ(x)` forces `Nrd(s) = Nrd(x)²`, which fails.
    Obstructed { nrd: Element, reason: ObstructionReason },
    /// The norm condition holds but the bounded search found no `x`.
    Unknown,
}

/// Decides whether `s` is a hermitian square `xσ(x)` as far as the norm
/// condition and a small search allow.
pub fn hermitian_square_obstruction(
    algebra: &QuaternionAlgebra,
    sigma: &InvolutionSpec,
    s: &Quat,
) -> Result<SquareCheck> {
    algebra.validate_involution(sigma)?;
    algebra.check_member(s)?;
    let f = algebra.field();
    let nrd = algebra.nrd(s);
    if !nrd.is_zero() {
        if let Some(p) = f
            .orderings()
            .into_iter()
            .find(|p| f.sign_unchecked(&nrd, p.steps()) == Sign::Neg)
        {
            return Ok(SquareCheck::Obstructed {
                nrd,
                reason: ObstructionReason::NegativeAt(p),
            });
        }
        if f.square_test(&nrd)? == SquareTest::NotSquare {
            return Ok(SquareCheck::Obstructed {
                nrd,
                reason: ObstructionReason::NormNotSquare,
            });
        }
    }
    let mut scales = vec![f.one()];
    if let Ok(t) = f.t() {
        scales.push(t.clone());
        scales.push(f.inv(&t).expect("t is a unit"));
    }
    let digits = [f.zero(), f.one(), f.from_int(-1)];
    for c in &scales {
        for n in 0..81usize {
            let pick = |d: usize| digits[(n / 3usize.pow(d as u32)) % 3].clone();
            let x = algebra.scale(c, &algebra.quat(pick(0), pick(1), pick(2), pick(3))?);
            if x.is_zero() {
                continue;
            }
            if algebra.mul(&x, &algebra.apply_involution(sigma, &x)?) == *s {
                return Ok(SquareCheck::IsSquare(x));
            }
        }
    }
    Ok(SquareCheck::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(text: &str) -> QuaternionAlgebra {
        text.parse().unwrap()
    }

    fn int_i(a: &QuaternionAlgebra) -> InvolutionSpec {
        InvolutionSpec::IntUGamma(a.i())
    }

    #[test]
    fn int_i_gamma_on_t_t() {
        let q = alg("quat(laurent(Q); t, t)");
        let s = int_i(&q);
        assert_eq!(q.apply_involution(&s, &q.j()).unwrap(), q.j());
        assert_eq!(q.apply_involution(&s, &q.i()).unwrap(), q.neg(&q.i()));
        assert_eq!(q.apply_involution(&s, &q.k()).unwrap(), q.k());
        let h = alg("quat(Q; -1, -1)");
        assert_eq!(h.apply_involution(&int_i(&h), &h.k()).unwrap(), h.k());
    }

    #[test]
    fn involution_validation() {
        let h = alg("quat(Q; -1, -1)");
        assert!(matches!(
            h.validate_involution(&InvolutionSpec::IntUGamma(h.parse("1 + i").unwrap())),
            Err(AlgebraError::PreconditionFailed(_))
        ));
        let split = alg("quat(Q; 1, 1)");
        assert_eq!(
            split.validate_involution(&InvolutionSpec::IntUGamma(split.parse("i + k").unwrap())),
            Err(AlgebraError::NonInvertibleU)
        );
        assert_eq!(h.parse_involution("int_gamma(i)").unwrap(), int_i(&h));
        assert_eq!(h.parse_involution("gamma").unwrap(), InvolutionSpec::Canonical);
        assert!(h.parse_involution("int_gamma(0)").is_err());
        assert_eq!(h.format_involution(&int_i(&h)), "int_gamma(i)");
    }

    #[test]
    fn symmetric_dimensions() {
        let q = alg("quat(laurent(Q); t, t)");
        assert_eq!(q.symmetric_dimension(&int_i(&q)).unwrap(), 3);
        assert_eq!(q.symmetric_dimension(&InvolutionSpec::Canonical).unwrap(), 1);
        let h = alg("quat(Q; -1, -1)");
        let u = InvolutionSpec::IntUGamma(h.parse("i + 2*j - k").unwrap());
        assert_eq!(h.symmetric_dimension(&u).unwrap(), 3);
    }

    #[test]
    fn hamilton_witness() {
        let h = alg("quat(Q; -1, -1)");
        let gens = [h.one(), h.i(), h.j(), h.k()];
        let bounds = SearchBounds::standard(&h, 2);
        let found = weak_isotropy_witness_search(&h, &int_i(&h), &gens, &bounds).unwrap();
        assert_eq!(found, WitnessSearch::Found(vec![h.one(), h.j()]));
        let none =
            weak_isotropy_witness_search(&h, &InvolutionSpec::Canonical, &gens, &bounds).unwrap();
        assert!(matches!(none, WitnessSearch::NotFound { .. }));
    }

    #[test]
    fn exact_terms_give_two_j() {
        let q = alg("quat(laurent(Q); t, t)");
        let s = int_i(&q);
        let gens = [q.i(), q.parse("1 + j").unwrap(), q.parse("t^-1*k").unwrap()];
        assert_eq!(q.hermitian_sum(&s, &gens).unwrap(), q.parse("2*j").unwrap());
        let search =
            weak_isotropy_witness_search(&q, &s, &gens, &SearchBounds::exact_terms(&q, 3)).unwrap();
        assert_eq!(search, WitnessSearch::NotFound { candidates: 3 });
    }

    #[test]
    fn t_t_is_weakly_isotropic_under_int_i() {
        let q = alg("quat(laurent(Q); t, t)");
        let s = int_i(&q);
        let gens = [q.one(), q.i(), q.j(), q.k()];
        match weak_isotropy_witness_search(&q, &s, &gens, &SearchBounds::standard(&q, 2)).unwrap() {
            WitnessSearch::Found(xs) => assert!(verify_weak_witness(&q, &s, &xs).unwrap()),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn hermitian_square_examples() {
        let q = alg("quat(laurent(Q); t, t)");
        let s = int_i(&q);
        match hermitian_square_obstruction(&q, &s, &q.parse("2*j").unwrap()).unwrap() {
            SquareCheck::Obstructed {
                nrd,
                reason: ObstructionReason::NegativeAt(p),
            } => {
                assert_eq!(nrd, q.field().parse("-4*t").unwrap());
                assert_eq!(p.t_sign(), Some(Sign::Pos));
            }
            other => panic!("{other:?}"),
        }
        let x = q.parse("1 + j").unwrap();
        let square = q.mul(&x, &q.apply_involution(&s, &x).unwrap());
        assert_eq!(
            hermitian_square_obstruction(&q, &s, &square).unwrap(),
            SquareCheck::IsSquare(x)
        );
        assert_eq!(
            hermitian_square_obstruction(&q, &s, &q.one()).unwrap(),
            SquareCheck::IsSquare(q.one())
        );
    }
}
