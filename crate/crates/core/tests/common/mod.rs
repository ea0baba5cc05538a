//! Fixtures and generators shared by the integration tests.
#![allow(dead_code)]

use lctkit::parse::parse;
use lctkit::poly::{rat, Rational, SparsePoly, SubstitutionStep};
use rand::Rng;

pub fn p(s: &str) -> SparsePoly {
    parse(s).unwrap()
}

/// `(x^a1 y^a2)(x^b1 + y^b2)`.
pub fn family(a: [u64; 2], b: [u64; 2]) -> SparsePoly {
    p(&format!("x^{}*y^{}*(x^{} + y^{})", a[0], a[1], b[0], b[1]))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(num, rng.gen_range(1..=3))
}

pub fn random_scaling<R: Rng>(rng: &mut R, f: &SparsePoly) -> SparsePoly {
    let s = [nonzero_rational(rng), nonzero_rational(rng)];
    f.scale_vars(&s).unwrap()
}

/// `x_t ↦ x_t + c·x_s^k` with `k ≤ max_k`.
pub fn random_shear<R: Rng>(rng: &mut R, max_k: u32) -> SubstitutionStep {
    let target = rng.gen_range(0..2);
    SubstitutionStep::new(
        target,
        1 - target,
        rng.gen_range(1..=max_k),
        nonzero_rational(rng),
    )
    .unwrap()
}

/// A random coordinate change fixing the origin: a scaling then one or two
/// shears.
pub fn random_right_equivalence<R: Rng>(rng: &mut R, f: &SparsePoly) -> SparsePoly {
    let mut g = random_scaling(rng, f);
    for _ in 0..rng.gen_range(1..=2) {
        g = g.substitute(&random_shear(rng, 2)).unwrap();
    }
    g
}

/// An invertible linear change: a scaling and one or two elementary shears.
pub fn random_linear_change<R: Rng>(rng: &mut R, f: &SparsePoly) -> SparsePoly {
    let mut g = random_scaling(rng, f);
    for _ in 0..rng.gen_range(1..=2) {
        g = g.substitute(&random_shear(rng, 1)).unwrap();
    }
    g
}

pub fn random_family_member<R: Rng>(rng: &mut R) -> ([u64; 2], [u64; 2]) {
    (
        [rng.gen_range(0..=2), rng.gen_range(0..=2)],
        [rng.gen_range(1..=5), rng.gen_range(1..=5)],
    )
}
pub mod props;
