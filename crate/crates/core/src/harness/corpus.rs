//! Seeded random instances shared by the claim suites and tests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::domain::Domain;
use crate::exactnum::{FieldElement, Poly};
use crate::lattice::FractionalIdeal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a + b·fω` with coefficients in `-r..=r`.
pub fn random_integral_elem(d: &Domain, rng: &mut impl Rng, r: i64) -> FieldElement {
    let a = rng.gen_range(-r..=r);
    let mut x = d.int(a);
    if d.degree() == 2 {
        let b = rng.gen_range(-r..=r);
        x = &x + &(&d.basis()[1] * &d.int(b));
    }
    x
}

/// Nonzero integral ideal with 1–3 small generators.
pub fn random_integral_ideal(d: &Domain, rng: &mut impl Rng) -> FractionalIdeal {
    loop {
        let n = rng.gen_range(1..=3);
        let gens: Vec<FieldElement> = (0..n).map(|_| random_integral_elem(d, rng, 6)).collect();
        let e = d.ideal(&gens);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Nonzero fractional ideal: an integral one divided by a small integer.
pub fn random_ideal(d: &Domain, rng: &mut impl Rng) -> FractionalIdeal {
    let e = random_integral_ideal(d, rng);
    let c = rng.gen_range(1..=3);
    e.div_elem(&d.int(c)).expect("nonzero")
}

/// Nonzero element of K with small numerator and denominator.
pub fn random_scalar(d: &Domain, rng: &mut impl Rng) -> FieldElement {
    loop {
        let x = random_integral_elem(d, rng, 4);
        if !x.is_zero() {
            let c = rng.gen_range(1..=3);
            return x.checked_div(&d.int(c)).expect("nonzero");
        }
    }
}

/// Polynomial of degree ≤ `deg` with integral coefficients, nonzero.
pub fn random_integral_poly(d: &Domain, rng: &mut impl Rng, deg: usize, r: i64) -> Poly {
    loop {
        let cs: Vec<FieldElement> = (0..=deg).map(|_| random_integral_elem(d, rng, r)).collect();
        let p = Poly::new(d.field(), cs);
        if !p.is_zero() {
            return p;
        }
    }
}
