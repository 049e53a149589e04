use rand::Rng;

use super::corpus::{self, Stream};
use super::{decisive, Checks, Halt, Provenance, RunOptions, Step};
use crate::field::FieldTower;
use crate::forms::{ed_check_field, verify_isotropic, EdCheck};
use crate::quaternion::{
    hermitian_square_obstruction, involution_totally_indefinite,
    involution_weak_isotropy_via_descent, pi2_transfer, pind_quaternion,
    double_centralizer_dims, weak_isotropy_witness_search, Indefiniteness, InvolutionModel,
    InvolutionSpec, ObstructionReason, QuaternionAlgebra, SearchBounds, SkewHermitianForm,
    SquareCheck, TransferResult, WitnessSearch,
};

use Provenance::{Derived, Paper, Trivial};

fn tower(text: &str) -> Result<FieldTower, Halt> {
    Ok(text.parse()?)
}

fn algebra(text: &str) -> Result<QuaternionAlgebra, Halt> {
    Ok(text.parse()?)
}

fn sherm(text: &str) -> Result<SkewHermitianForm, Halt> {
    Ok(text.parse()?)
}

pub(crate) fn ed_laurent_real(_: &RunOptions, c: &mut Checks) -> Step {
    let field = tower("laurent(euclid(Q))")?;
    let report = match ed_check_field(&field) {
        EdCheck::Verified(r) | EdCheck::NotVerified(r) => r,
        EdCheck::Unsupported => {
            c.text("square classes are finite", Trivial, "true", "false");
            return Ok(());
        }
    };
    for pair in &report.pairs {
        if pair.verdict.verdict == "unknown" {
            return Err(Halt::Unknown(pair.form.clone()));
        }
        c.text(
            format!("a = {}, b = {}: {}", pair.a, pair.b, pair.form),
            Derived,
            "isotropic",
            &pair.verdict.verdict,
        );
    }
    Ok(())
}

pub(crate) fn tp_laurent(o: &RunOptions, c: &mut Checks) -> Step {
    let real = tower("laurent(euclid(Q))")?;
    let forms = corpus::laurent_corpus(o.seed, o.corpus_size);
    let (mut forward, mut backward, mut bad_witness, mut isotropic) = (0, 0, 0, 0);
    for q in &forms {
        let over_real = q.base_change(&real)?;
        let iso = over_real.isotropy_verdict();
        let weak = q.weak_isotropy_verdict();
        decisive(&iso, &over_real.to_string())?;
        decisive(&weak, &q.to_string())?;
        if iso.is_isotropic() {
            isotropic += 1;
            if !verify_isotropic(&over_real, &iso)? {
                bad_witness += 1;
            }
        }
        if iso.is_isotropic() && !weak.is_weakly_isotropic() {
            forward += 1;
        }
        if weak.is_weakly_isotropic() && !iso.is_isotropic() {
            backward += 1;
        }
    }
    c.text("corpus size", Trivial, &o.corpus_size.to_string(), forms.len());
    c.text(
        format!("isotropic over R((t)) => weakly isotropic over Q((t)) ({isotropic} isotropic)"),
        Derived,
        "0 violations",
        format!("{forward} violations"),
    );
    c.text(
        "weakly isotropic over Q((t)) => isotropic over R((t))",
        Derived,
        "0 violations",
        format!("{backward} violations"),
    );
    c.text(
        "isotropy witnesses re-verify to zero",
        Derived,
        "0 failures",
        format!("{bad_witness} failures"),
    );
    Ok(())
}

fn block_text(tr: &TransferResult, n: usize) -> String {
    let b = tr.block(n);
    let f = |r: usize, s: usize| tr.field.format(&b[r][s]);
    format!("[[{}, {}], [{}, {}]]", f(0, 0), f(0, 1), f(1, 0), f(1, 1))
}

fn check_block(c: &mut Checks, label: &str, tr: &TransferResult, n: usize, expected: [&str; 4]) {
    let b = tr.block(n);
    let actual = [&b[0][0], &b[0][1], &b[1][0], &b[1][1]];
    let pass = expected
        .iter()
        .zip(actual)
        .all(|(e, a)| tr.field.parse(e).is_ok_and(|e| e == *a));
    let expected = format!(
        "[[{}, {}], [{}, {}]]",
        expected[0], expected[1], expected[2], expected[3]
    );
    c.record(label, Paper, expected, block_text(tr, n), pass);
}

fn signature_text(values: &[i64]) -> String {
    let parts: Vec<String> = values.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn counterexample_involution(_: &RunOptions, c: &mut Checks) -> Step {
    let q = algebra("quat(laurent(Q); 2, t)")?;
    let division = q.division_check();
    decisive(&division.verdict, "norm form of (2, t)")?;
    c.text(
        "(2, t) over Q((t)) is a division algebra",
        Derived,
        "true",
        division.is_division == Some(true),
    );

    let h1 = SkewHermitianForm::from_strs(q.clone(), &["j"])?;
    let h2 = SkewHermitianForm::from_strs(q.clone(), &["k"])?;
    let grams = [
        ("h1(1, 1)", &h1, "1", "1", "j"),
        ("h1(1, j)", &h1, "1", "j", "t"),
        ("h1(j, j)", &h1, "j", "j", "-t*j"),
        ("h2(1, 1)", &h2, "1", "1", "i*j"),
        ("h2(1, j)", &h2, "1", "j", "t*i"),
        ("h2(j, j)", &h2, "j", "j", "t*i*j"),
    ];
    for (label, h, x, y, expected) in grams {
        let value = h.gram(&[q.parse(x)?], &[q.parse(y)?])?;
        c.quat(label, Paper, &q, expected, &value);
    }

    let t1 = pi2_transfer(&h1)?;
    check_block(c, "pi2 block of <j>", &t1, 0, ["1", "0", "0", "-t"]);
    let t2 = pi2_transfer(&h2)?;
    check_block(c, "pi2 block of <k> (i read as sqrt(2))", &t2, 0, ["sqrt(2)", "0", "0", "t*sqrt(2)"]);

    let h = sherm("sherm(quat(laurent(Q); 2, t); j, k)")?;
    let tr = pi2_transfer(&h)?;
    c.text("L = Q((t))(sqrt 2), canonicalized", Derived, "laurent(quadext(Q, 2))", &tr.field);
    c.form(
        "transfer = <1, -t, sqrt2, t*sqrt2>",
        Paper,
        "form(laurent(quadext(Q, 2)); 1, -t, sqrt(2), t*sqrt(2))",
        tr.diagonal_form.as_ref(),
    );
    let Some(form) = tr.diagonal_form.clone() else {
        return Ok(());
    };
    let orderings: Vec<String> = form.field().orderings().iter().map(|p| p.to_string()).collect();
    c.text(
        "ordering order of L",
        Trivial,
        "(sqrt+, t>0), (sqrt+, t<0), (sqrt-, t>0), (sqrt-, t<0)",
        orderings.join(", "),
    );
    c.text(
        "signatures of the transfer form",
        Derived,
        "(2, 2, -2, 2)",
        signature_text(&form.signatures()),
    );
    let indef = involution_totally_indefinite(&InvolutionModel::AdjointSkewHermitian(h.clone()))?;
    let indef_text = match indef.is_totally_indefinite() {
        Some(b) => b.to_string(),
        None => return Err(Halt::Unknown("total indefiniteness of adj(h)".into())),
    };
    c.text("adjoint involution of h totally indefinite", Paper, "true", indef_text);

    let over_l = form.weak_isotropy_verdict();
    decisive(&over_l, "transfer form over L")?;
    c.text("transfer form over L", Derived, "strongly-anisotropic", over_l.name());

    let descended = involution_weak_isotropy_via_descent(&h)?;
    decisive(&descended, "adjoint involution over Q((t))")?;
    c.text(
        "sigma over Q((t)): certified via descent lemma (d = 2 is a sum of squares, trusted external lemma)",
        Derived,
        "strongly-anisotropic by descent-lemma",
        format!("{} by {}", descended.name(), descended.certificate_kind()),
    );

    let real = tower("laurent(euclid(quadext(Q, 2)))")?;
    let over_real = form.base_change(&real)?;
    let iso = over_real.isotropy_verdict();
    decisive(&iso, "transfer form over R((t))")?;
    c.text(
        "transfer form over R((t))",
        Derived,
        "isotropic",
        match (iso.is_isotropic(), verify_isotropic(&over_real, &iso)?) {
            (true, false) => "isotropic, witness fails",
            _ => iso.name(),
        },
    );
    let h_real = sherm("sherm(quat(laurent(euclid(quadext(Q, 2))); 2, t); j, k)")?;
    let lifted = involution_weak_isotropy_via_descent(&h_real)?;
    decisive(&lifted, "adjoint involution over R((t))")?;
    c.text("sigma over R((t))", Paper, "weakly-isotropic", lifted.name());
    Ok(())
}

pub(crate) fn hamilton_weak_isotropy(_: &RunOptions, c: &mut Checks) -> Step {
    let h = algebra("quat(Q; -1, -1)")?;
    let sigma = InvolutionSpec::IntUGamma(h.i());
    let division = h.division_check();
    decisive(&division.verdict, "norm form of (-1, -1)")?;
    c.text("(-1, -1) over Q is a division algebra", Paper, "true", division.is_division == Some(true));
    c.text("symmetric elements of Int(i)∘γ (orthogonal)", Derived, "3", h.symmetric_dimension(&sigma)?);

    let gens = [h.one(), h.i(), h.j(), h.k()];
    let single = weak_isotropy_witness_search(&h, &sigma, &gens, &SearchBounds::standard(&h, 1))?;
    c.text(
        "sigma anisotropic: no x != 0 with sigma(x)x = 0 among candidates",
        Derived,
        "not found",
        match single {
            WitnessSearch::Found(_) => "found",
            WitnessSearch::NotFound { .. } => "not found",
        },
    );

    let over_real = algebra("quat(euclid(Q); -1, -1)")?;
    let indef = involution_totally_indefinite(&InvolutionModel::Quaternion {
        algebra: over_real.clone(),
        sigma: InvolutionSpec::IntUGamma(over_real.i()),
    })?;
    let Indefiniteness::Decided {
        totally_indefinite,
        signatures,
        ..
    } = indef
    else {
        return Err(Halt::Unknown("signature of (H, Int(i)∘γ)".into()));
    };
    c.text("sgn(sigma) over R", Paper, "(0)", signature_text(&signatures));
    c.text("(H, sigma) totally indefinite", Paper, "true", totally_indefinite);

    let found = weak_isotropy_witness_search(&h, &sigma, &gens, &SearchBounds::standard(&h, 2))?;
    match found {
        WitnessSearch::Found(xs) => {
            let parts: Vec<String> = xs.iter().map(|x| h.format(x)).collect();
            c.text("weak isotropy witness", Derived, "(1, j)", format!("({})", parts.join(", ")));
            c.quat("sigma(x1)x1 + sigma(x2)x2", Derived, &h, "0", &h.sigma_sum(&sigma, &xs)?);
        }
        WitnessSearch::NotFound { .. } => c.text("weak isotropy witness", Derived, "(1, j)", "not found"),
    }

    let canonical = weak_isotropy_witness_search(
        &h,
        &InvolutionSpec::Canonical,
        &gens,
        &SearchBounds::standard(&h, 3),
    )?;
    c.text(
        "gamma: sums of Nrd are positive, no witness",
        Derived,
        "not found",
        match canonical {
            WitnessSearch::Found(_) => "found",
            WitnessSearch::NotFound { .. } => "not found",
        },
    );
    Ok(())
}

pub(crate) fn hermitian_square_failure(_: &RunOptions, c: &mut Checks) -> Step {
    // F = R, formally real and Pythagorean
    let q = algebra("quat(laurent(euclid(Q)); t, t)")?;
    let f = q.field().clone();
    let sigma = InvolutionSpec::IntUGamma(q.i());
    let division = q.division_check();
    decisive(&division.verdict, "norm form of (t, t)")?;
    c.text("(t, t) is a division algebra", Paper, "true", division.is_division == Some(true));

    for (x, expected) in [("i", "-i"), ("j", "j"), ("k", "k")] {
        let image = q.apply_involution(&sigma, &q.parse(x)?)?;
        c.quat(format!("sigma({x})"), Paper, &q, expected, &image);
    }
    c.quat("k^2", Paper, &q, "-t^2", &q.mul(&q.k(), &q.k()));

    let terms = [q.i(), q.parse("1 + j")?, q.parse("t^-1*k")?];
    let sum = q.hermitian_sum(&sigma, &terms)?;
    c.quat("sum = 2j", Paper, &q, "2*j", &sum);
    c.element("Nrd(2j)", Paper, &f, "-4*t", &q.nrd(&sum));

    let verdict = hermitian_square_obstruction(&q, &sigma, &sum)?;
    let actual = match &verdict {
        SquareCheck::Obstructed {
            reason: ObstructionReason::NegativeAt(p),
            ..
        } => format!("obstructed at {p}"),
        SquareCheck::Obstructed { .. } => "obstructed (norm not a square)".to_string(),
        SquareCheck::IsSquare(x) => format!("square of {}", q.format(x)),
        SquareCheck::Unknown => "unknown".to_string(),
    };
    c.text("2j is not a hermitian square", Derived, "obstructed at (t>0)", actual);

    let exact = weak_isotropy_witness_search(&q, &sigma, &terms, &SearchBounds::exact_terms(&q, 3))?;
    c.text(
        "no weak isotropy relation among these exact terms",
        Derived,
        "not found",
        match exact {
            WitnessSearch::Found(_) => "found",
            WitnessSearch::NotFound { .. } => "not found",
        },
    );

    let x = q.parse("1 + j")?;
    let square = q.mul(&x, &q.apply_involution(&sigma, &x)?);
    let found = match hermitian_square_obstruction(&q, &sigma, &square)? {
        SquareCheck::IsSquare(w) => q.format(&w),
        other => format!("{other:?}"),
    };
    c.text("(1+j)sigma(1+j) is a hermitian square", Trivial, "1 + j", found);
    Ok(())
}

pub(crate) fn quadratic_descent_forms(o: &RunOptions, c: &mut Checks) -> Step {
    let base = FieldTower::rationals();
    let ext = tower("quadext(Q, 2)")?;
    c.text("2 is a sum of squares in Q", Derived, "true", base.is_totally_positive(&base.from_int(2))?);
    let forms = corpus::rational_corpus(o.seed, o.corpus_size);
    let (mut down, mut up, mut weak) = (0, 0, 0);
    for q in &forms {
        let above = q.base_change(&ext)?;
        let va = above.weak_isotropy_verdict();
        let vb = q.weak_isotropy_verdict();
        decisive(&va, &above.to_string())?;
        decisive(&vb, &q.to_string())?;
        if va.is_weakly_isotropic() {
            weak += 1;
            if !vb.is_weakly_isotropic() {
                down += 1;
            }
        } else if vb.is_weakly_isotropic() {
            up += 1;
        }
    }
    c.text("corpus size", Trivial, &o.corpus_size.to_string(), forms.len());
    c.text(
        format!("weakly isotropic over Q(sqrt2) => weakly isotropic over Q ({weak} weakly isotropic)"),
        Derived,
        "0 violations",
        format!("{down} violations"),
    );
    c.text(
        "weakly isotropic over Q => weakly isotropic over Q(sqrt2)",
        Derived,
        "0 violations",
        format!("{up} violations"),
    );
    Ok(())
}

pub(crate) fn becher_arithmetic(_: &RunOptions, c: &mut Checks) -> Step {
    let q = FieldTower::rationals();
    let radicands = [2, 3, 5, 7];
    for n in 2..=6u32 {
        let dims = double_centralizer_dims(1 << (2 * n), 1 << (n - 2))?;
        c.text(format!("n = {n}: [C_D(L) : L]"), Paper, "16", dims.over_k);
        c.text(
            format!("n = {n}: [C_D(L) : F]"),
            Derived,
            &(1u64 << (n + 2)).to_string(),
            dims.over_f,
        );
        let mut l = q.clone();
        for &r in &radicands[..(n - 2) as usize] {
            l = l.quad_ext(l.from_int(r))?;
        }
        c.text(
            format!("n = {n}: [L : F] for L = {l}"),
            Derived,
            &(1u64 << (n - 2)).to_string(),
            l.degree_over(&q)?,
        );
        c.text(
            format!("n = {n}: L inside F_py, so pind(D) = pind(C_D(L))"),
            Derived,
            "true",
            FieldTower::in_pythagorean_closure(&l, &q)?,
        );
    }
    Ok(())
}

/// `pind` of `(c₁tᵉ¹, c₂tᵉ²)` over `ℚ((t))` straight from the two orderings.
fn pind_oracle(a: (i64, i64), b: (i64, i64)) -> u32 {
    let sign = |(c, e): (i64, i64), t: i64| c.signum() * if e % 2 == 0 { 1 } else { t };
    if [1, -1].iter().any(|&t| sign(a, t) < 0 && sign(b, t) < 0) {
        2
    } else {
        1
    }
}

pub(crate) fn marshall_quaternions(o: &RunOptions, c: &mut Checks) -> Step {
    c.text("pind((-1, -1) over Q)", Derived, "2", pind_quaternion(&algebra("quat(Q; -1, -1)")?));
    c.text("pind((2, t) over Q((t)))", Derived, "1", pind_quaternion(&algebra("quat(laurent(Q); 2, t)")?));

    let mut rng = corpus::rng(o.seed, Stream::QuaternionSlots);
    let f = tower("laurent(quadext(Q, 2))")?;
    let residue = f.residue_field()?.clone();
    let mut split = 0;
    let mut positive = 0;
    let samples = 20;
    for _ in 0..samples {
        let mut s = residue.zero();
        while s.is_zero() {
            for _ in 0..3 {
                let x = residue.parse(&format!(
                    "{} + {}*sqrt(2)",
                    rng.random_range(-3..=3),
                    rng.random_range(-3..=3)
                ))?;
                s = s.add(&residue.square(&x));
            }
        }
        let s = f.from_base(s)?;
        let t = corpus::random_monomial(&mut rng, &f);
        if f.is_totally_positive(&s)? {
            positive += 1;
        }
        if pind_quaternion(&QuaternionAlgebra::new(f.clone(), s, t)?) == 1 {
            split += 1;
        }
    }
    c.text("sampled s are sums of squares", Derived, &format!("{samples}/{samples}"), format!("{positive}/{samples}"));
    c.text(
        "pind((s, t)) = 1 for s a sum of squares",
        Paper,
        &format!("{samples}/{samples}"),
        format!("{split}/{samples}"),
    );

    let l = tower("laurent(Q)")?;
    let slot = |rng: &mut rand_chacha::ChaCha8Rng| -> (i64, i64) {
        let c = rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
        (c, rng.random_range(-2..=2))
    };
    let (mut mismatch, mut asymmetric, mut unstable, mut twos) = (0, 0, 0, 0);
    let table = 40;
    for _ in 0..table {
        let (a, b, u) = (slot(&mut rng), slot(&mut rng), slot(&mut rng));
        let elem = |(c, e): (i64, i64)| l.monomial(l.residue_field().unwrap().from_int(c), e);
        let (ea, eb, eu) = (elem(a)?, elem(b)?, elem(u)?);
        let p = pind_quaternion(&QuaternionAlgebra::new(l.clone(), ea.clone(), eb.clone())?);
        if p == 2 {
            twos += 1;
        }
        if p != pind_oracle(a, b) {
            mismatch += 1;
        }
        if p != pind_quaternion(&QuaternionAlgebra::new(l.clone(), eb.clone(), ea.clone())?) {
            asymmetric += 1;
        }
        let scaled = l.mul(&ea, &l.square(&eu));
        if p != pind_quaternion(&QuaternionAlgebra::new(l.clone(), scaled, eb)?) {
            unstable += 1;
        }
    }
    c.text(
        format!("pind table over Q((t)) agrees with the sign oracle ({twos}/{table} of index 2)"),
        Derived,
        "0 mismatches",
        format!("{mismatch} mismatches"),
    );
    c.text("pind symmetric in a, b", Derived, "0 mismatches", format!("{asymmetric} mismatches"));
    c.text("pind invariant under a -> a*u^2", Derived, "0 mismatches", format!("{unstable} mismatches"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn every_scenario_passes_by_default() {
        let report = run_all(&RunOptions::default());
        for s in &report.scenarios {
            let failing: Vec<_> = s.failing_checks().collect();
            assert_eq!(s.status, Status::Pass, "{}: {:?} {:?}", s.name, failing, s.error);
        }
    }

    #[test]
    fn ed_scenario_has_sixteen_checks() {
        let r = run_scenario("ed-laurent-real", &RunOptions::default()).unwrap();
        assert_eq!(r.scenarios[0].checks.len(), 16);
    }
}
