#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realforms::{Element, FieldTower, QuadForm, Quat, QuaternionAlgebra};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tower(text: &str) -> FieldTower {
    text.parse().unwrap()
}

pub fn small_int(rng: &mut impl Rng) -> i64 {
    rng.random_range(-4..=4)
}

pub fn nonzero_int(rng: &mut impl Rng) -> i64 {
    let c = rng.random_range(1..=9);
    if rng.random_bool(0.5) {
        -c
    } else {
        c
    }
}

/// A random element with small integer coefficients, possibly zero.
pub fn element(rng: &mut impl Rng, field: &FieldTower) -> Element {
    use realforms::field::TowerKind;
    match field.kind() {
        TowerKind::Rationals => Element::ratio(small_int(rng), rng.random_range(1..=3)),
        TowerKind::QuadExt { base, .. } => {
            let a = element(rng, base);
            let b = element(rng, base);
            let root = field.generator().unwrap();
            field
                .from_base(a)
                .unwrap()
                .add(&field.mul(&field.from_base(b).unwrap(), &root))
        }
        TowerKind::EuclideanHull { base, .. } => element(rng, base),
        TowerKind::Laurent { base } => {
            let mut acc = field.zero();
            for _ in 0..rng.random_range(1..=3) {
                let c = element(rng, base);
                let e = rng.random_range(-2..=2);
                acc = acc.add(&field.monomial(c, e).unwrap());
            }
            acc
        }
    }
}

pub fn nonzero_element(rng: &mut impl Rng, field: &FieldTower) -> Element {
    loop {
        let x = element(rng, field);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A nonzero element that is a unit monomial `c·tᵉ` over a Laurent field.
pub fn monomial(rng: &mut impl Rng, field: &FieldTower) -> Element {
    if !field.is_laurent() {
        return nonzero_element(rng, field);
    }
    let c = nonzero_element(rng, field.residue_field().unwrap());
    field.monomial(c, rng.random_range(-2..=2)).unwrap()
}

pub fn monomial_form(rng: &mut impl Rng, field: &FieldTower) -> QuadForm {
    let dim = rng.random_range(1..=6);
    let entries = (0..dim).map(|_| monomial(rng, field)).collect();
    QuadForm::new(field.clone(), entries).unwrap()
}

pub fn quat(rng: &mut impl Rng, a: &QuaternionAlgebra) -> Quat {
    let f = a.field();
    a.quat(element(rng, f), element(rng, f), element(rng, f), element(rng, f))
        .unwrap()
}

pub const FIELDS: [&str; 6] = [
    "Q",
    "quadext(Q, 2)",
    "euclid(quadext(Q, 2))",
    "laurent(Q)",
    "laurent(quadext(Q, 2))",
    "laurent(euclid(Q))",
];
