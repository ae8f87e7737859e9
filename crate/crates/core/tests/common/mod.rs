#![allow(dead_code)]

use exppairs::geometry::generation;
use exppairs::lp::check_all;
use exppairs::pairs::{catalog_labels, lookup};
use exppairs::rational::{q, Rational};
use exppairs::{FracLinear, LinearConstraint, MaxObjective};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut StdRng, lo: i64, hi: i64) -> Rational {
    let d = rng.gen_range(1..=4);
    q(rng.gen_range(lo * d..=hi * d), d)
}

/// A random objective with denominators positive on the triangle.
pub fn random_objective(rng: &mut StdRng) -> MaxObjective {
    let parts = (0..rng.gen_range(1..=2))
        .map(|_| {
            let num = [small_rational(rng, -2, 2), small_rational(rng, -2, 2), small_rational(rng, -1, 1)];
            let den = if rng.gen_bool(0.5) {
                [q(0, 1), q(0, 1), q(1, 1)]
            } else {
                [small_rational(rng, 0, 2), small_rational(rng, 0, 2), small_rational(rng, 1, 3)]
            };
            FracLinear::new(num, den).expect("denominator positive on T")
        })
        .collect();
    MaxObjective::new(parts).unwrap()
}

pub fn random_constraints(rng: &mut StdRng) -> Vec<LinearConstraint> {
    (0..rng.gen_range(0..=2))
        .map(|_| {
            LinearConstraint::new(
                small_rational(rng, -2, 2),
                small_rational(rng, -2, 2),
                small_rational(rng, -1, 1),
                rng.gen_bool(0.3),
            )
        })
        .collect()
}

/// Minimum over every word of length at most `depth` applied to every
/// catalog pair.
pub fn brute_force(obj: &MaxObjective, lc: &[LinearConstraint], depth: usize) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    for label in catalog_labels() {
        let p = lookup(label).unwrap();
        for d in 0..=depth {
            for (_, e) in generation(&p, d).unwrap().entries {
                if !check_all(lc, &e.k, &e.l) {
                    continue;
                }
                let Ok(v) = obj.eval(&e) else { continue };
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
    }
    best
}
