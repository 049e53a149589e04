mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use realforms::quaternion::{
    pi2_transfer, pind_quaternion, verify_weak_witness, weak_isotropy_witness_search,
    SearchBounds, WitnessSearch,
};
use realforms::{InvolutionSpec, QuadForm, QuaternionAlgebra, SkewHermitianForm};

const ALGEBRAS: [&str; 5] = [
    "quat(Q; -1, -1)",
    "quat(Q; 2, -5/3)",
    "quat(quadext(Q, 2); 3, -sqrt(2))",
    "quat(laurent(Q); 2, t)",
    "quat(laurent(Q); t, t)",
];

fn algebra(n: usize) -> QuaternionAlgebra {
    ALGEBRAS[n % ALGEBRAS.len()].parse().unwrap()
}

/// A random pure quaternion with a monomial reduced norm, so it is invertible
/// even over a Laurent field.
fn pure_unit(rng: &mut impl Rng, a: &QuaternionAlgebra) -> Option<realforms::Quat> {
    let f = a.field();
    let z = f.zero();
    let c = monomial(rng, f);
    let u = match rng.random_range(0..3) {
        0 => a.quat(z.clone(), c, z.clone(), z),
        1 => a.quat(z.clone(), z.clone(), c, z),
        _ => a.quat(z.clone(), z.clone(), z, c),
    }
    .unwrap();
    (!a.nrd(&u).is_zero()).then_some(u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quaternion_relations(seed in any::<u64>(), which in 0usize..5) {
        let a = algebra(which);
        let mut rng = rng(seed);
        let f = a.field();
        prop_assert_eq!(a.mul(&a.k(), &a.k()), a.scalar(f.mul(a.a(), a.b()).neg()));
        let (x, y, z) = (quat(&mut rng, &a), quat(&mut rng, &a), quat(&mut rng, &a));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(&a.gamma(&x), &x), a.scalar(a.nrd(&x)));
        prop_assert_eq!(a.gamma(&a.gamma(&x)), x.clone());
        prop_assert_eq!(a.nrd(&a.mul(&x, &y)), f.mul(&a.nrd(&x), &a.nrd(&y)));
    }

    #[test]
    fn involution_axioms(seed in any::<u64>(), which in 0usize..5) {
        let a = algebra(which);
        let mut rng = rng(seed);
        let sigmas = [Some(InvolutionSpec::Canonical), pure_unit(&mut rng, &a).map(InvolutionSpec::IntUGamma)];
        for sigma in sigmas.into_iter().flatten() {
            let s = |q: &realforms::Quat| a.apply_involution(&sigma, q).unwrap();
            let (x, y) = (quat(&mut rng, &a), quat(&mut rng, &a));
            let c = a.scalar(element(&mut rng, a.field()));
            prop_assert_eq!(s(&a.add(&x, &y)), a.add(&s(&x), &s(&y)));
            prop_assert_eq!(s(&a.mul(&x, &y)), a.mul(&s(&y), &s(&x)));
            prop_assert_eq!(s(&s(&x)), x.clone());
            prop_assert_eq!(s(&c), c.clone());
            let expected = if sigma == InvolutionSpec::Canonical { 1 } else { 3 };
            prop_assert_eq!(a.symmetric_dimension(&sigma).unwrap(), expected);
        }
    }

    #[test]
    fn transfer_signatures_ignore_square_rescaling(seed in any::<u64>()) {
        let a: QuaternionAlgebra = "quat(laurent(Q); 2, t)".parse().unwrap();
        let f = a.field().clone();
        let mut rng = rng(seed);
        let n = rng.random_range(1..=3);
        let z = f.zero();
        let entries: Vec<_> = (0..n)
            .map(|_| {
                let x2 = monomial(&mut rng, &f);
                let x3 = if rng.random_bool(0.5) { f.zero() } else { monomial(&mut rng, &f) };
                a.quat(z.clone(), z.clone(), x2, x3).unwrap()
            })
            .filter(|d| !a.nrd(d).is_zero())
            .collect();
        prop_assume!(!entries.is_empty());
        let h = SkewHermitianForm::new(a.clone(), entries.clone()).unwrap();
        let scaled: Vec<_> = entries
            .iter()
            .map(|d| {
                let c = monomial(&mut rng, &f);
                a.scale(&f.square(&c), d)
            })
            .collect();
        let h2 = SkewHermitianForm::new(a.clone(), scaled).unwrap();
        let q1 = pi2_transfer(&h).unwrap().diagonal_form.unwrap();
        let q2 = pi2_transfer(&h2).unwrap().diagonal_form.unwrap();
        prop_assert_eq!(q1.dim(), 2 * entries.len());
        prop_assert_eq!(q1.signatures(), q2.signatures());
    }

    #[test]
    fn pind_invariances(seed in any::<u64>(), field in 0usize..FIELDS.len()) {
        let f = tower(FIELDS[field]);
        let mut rng = rng(seed);
        let (x, y, u) = (monomial(&mut rng, &f), monomial(&mut rng, &f), monomial(&mut rng, &f));
        let p = pind_quaternion(&QuaternionAlgebra::new(f.clone(), x.clone(), y.clone()).unwrap());
        let swapped = QuaternionAlgebra::new(f.clone(), y.clone(), x.clone()).unwrap();
        prop_assert_eq!(p, pind_quaternion(&swapped));
        let scaled = QuaternionAlgebra::new(f.clone(), f.mul(&x, &f.square(&u)), y.clone()).unwrap();
        prop_assert_eq!(p, pind_quaternion(&scaled));
        if f.is_totally_positive(&x).unwrap() || f.is_totally_positive(&y).unwrap() {
            prop_assert_eq!(p, 1);
        }
    }

    #[test]
    fn search_witnesses_are_sound(seed in any::<u64>(), which in 0usize..5) {
        let a = algebra(which);
        let mut rng = rng(seed);
        let Some(u) = pure_unit(&mut rng, &a) else { return Ok(()) };
        let sigma = InvolutionSpec::IntUGamma(u);
        let gens: Vec<_> = (0..3).map(|_| quat(&mut rng, &a)).collect();
        let bounds = SearchBounds::exact_terms(&a, 2);
        if let WitnessSearch::Found(xs) = weak_isotropy_witness_search(&a, &sigma, &gens, &bounds).unwrap() {
            prop_assert!(verify_weak_witness(&a, &sigma, &xs).unwrap());
        }
    }

    #[test]
    fn text_round_trips(seed in any::<u64>(), field in 0usize..FIELDS.len(), which in 0usize..5) {
        let f = tower(FIELDS[field]);
        prop_assert_eq!(tower(&f.to_string()), f.clone());
        let mut rng = rng(seed);
        let x = element(&mut rng, &f);
        prop_assert_eq!(f.parse(&f.format(&x)).unwrap(), x);
        let q = monomial_form(&mut rng, &f);
        prop_assert_eq!(q.to_string().parse::<QuadForm>().unwrap(), q);
        let a = algebra(which);
        let y = quat(&mut rng, &a);
        prop_assert_eq!(a.parse(&a.format(&y)).unwrap(), y);
        prop_assert_eq!(a.to_string().parse::<QuaternionAlgebra>().unwrap(), a);
    }
}
