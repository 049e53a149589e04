use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Element, FieldTower};
use crate::forms::QuadForm;

/// Independent random streams derived from one seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    LaurentForms = 1,
    RationalForms = 2,
    QuaternionSlots = 3,
}

pub fn rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

fn coefficient(rng: &mut impl Rng) -> i64 {
    let c = rng.random_range(1..=9);
    if rng.random_bool(0.5) {
        -c
    } else {
        c
    }
}

/// `c·tᵉ` with `c ∈ {±1, …, ±9}` and `e ∈ {−2, …, 2}`.
pub fn random_monomial(rng: &mut impl Rng, field: &FieldTower) -> Element {
    let c = field.residue_field().expect("Laurent field").from_int(coefficient(rng));
    field
        .monomial(c, rng.random_range(-2..=2))
        .expect("Laurent field")
}

/// Forms over `ℚ((t))` of dimension 2–6 with monomial entries.
pub fn laurent_corpus(seed: u64, size: usize) -> Vec<QuadForm> {
    let field: FieldTower = "laurent(Q)".parse().expect("valid tower");
    let mut rng = rng(seed, Stream::LaurentForms);
    (0..size)
        .map(|_| {
            let dim = rng.random_range(2..=6);
            let entries = (0..dim).map(|_| random_monomial(&mut rng, &field)).collect();
            QuadForm::new(field.clone(), entries).expect("monomials are nonzero")
        })
        .collect()
}

/// Forms over `ℚ` of dimension 2–6 with entries in `{±1, …, ±9}`.
pub fn rational_corpus(seed: u64, size: usize) -> Vec<QuadForm> {
    let field = FieldTower::rationals();
    let mut rng = rng(seed, Stream::RationalForms);
    (0..size)
        .map(|_| {
            let dim = rng.random_range(2..=6);
            let entries: Vec<i64> = (0..dim).map(|_| coefficient(&mut rng)).collect();
            QuadForm::from_ints(field.clone(), &entries).expect("entries are nonzero")
        })
        .collect()
}
