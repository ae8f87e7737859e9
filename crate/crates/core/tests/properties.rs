mod common;

use common::*;
use exppairs::geometry::{triangle_t, ConvexPolygon, Pt, Region};
use exppairs::lp::{check_all, clip_all, feasible, theta_bounds};
use exppairs::pairs::{apply_operator, Letter, Word};
use exppairs::projective::{mu, mu_inv, ProjMatrix};
use exppairs::rational::{q, Rational};
use exppairs::ExponentPair;
use proptest::prelude::*;
use rand::Rng;

fn pair_in_t() -> impl Strategy<Value = (Rational, Rational)> {
    (1i64..1000, 0i64..=1000, 0i64..=1000).prop_filter_map("outside T", |(d, a, b)| {
        let k = q(a.min(d), 2 * d);
        let l = q(1, 2) + q(b.min(d), 2 * d);
        (&k + &l <= q(1, 1)).then_some((k, l))
    })
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::A), Just(Letter::BA)]
}

proptest! {
    #[test]
    fn mu_round_trip((k, l) in pair_in_t()) {
        let (k2, l2) = mu_inv(&mu(&k, &l)).unwrap();
        prop_assert_eq!((k2, l2), (k, l));
    }

    #[test]
    fn word_matrix_is_homomorphism(w in proptest::collection::vec(letter(), 0..12), (k, l) in pair_in_t()) {
        let word = Word::new(w.clone(), "I");
        let via_matrix = word.matrix().apply_affine(&k, &l).unwrap();
        let mut p = ExponentPair::new(k, l);
        for letter in w.iter().rev() {
            p = apply_operator(*letter, &p);
        }
        prop_assert_eq!(via_matrix, (p.k, p.l));
        prop_assert!(word.matrix().is_reduced());
    }

    #[test]
    fn product_of_letters_composes(a in proptest::collection::vec(letter(), 0..8), b in proptest::collection::vec(letter(), 0..8)) {
        let mut ab = a.clone();
        ab.extend(b.iter().copied());
        let lhs = Word::new(ab, "I").matrix();
        let rhs = Word::new(a, "I").matrix().mul(&Word::new(b, "I").matrix());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operators_keep_triangle(op in letter(), (k, l) in pair_in_t()) {
        prop_assert!(apply_operator(op, &ExponentPair::new(k, l)).in_triangle());
    }

    #[test]
    fn strictify_matches_objective(
        num in proptest::array::uniform3(-8i64..8), den in (0i64..4, 0i64..4, 1i64..4),
        r in (-8i64..8, 1i64..8), (k, l) in pair_in_t()
    ) {
        let f = exppairs::FracLinear::new(
            num.map(|n| q(n, 3)),
            [q(den.0, 1), q(den.1, 1), q(den.2, 1)],
        ).unwrap();
        let r = q(r.0, r.1);
        let c = f.strictify(&r);
        prop_assert_eq!(f.eval_at(&k, &l).unwrap() < r, c.holds_at(&k, &l));
    }
}

#[test]
fn contraction_on_random_pairs() {
    let mut rng = rng(42);
    let mut sample = || loop {
        let k = q(rng.gen_range(0..=500), 1000);
        let l = q(rng.gen_range(500..=1000), 1000);
        if &k + &l <= q(1, 1) {
            return ExponentPair::new(k, l);
        }
    };
    let dist2 = |a: &ExponentPair, b: &ExponentPair| {
        let dk = &a.k - &b.k;
        let dl = &a.l - &b.l;
        &dk * &dk + &dl * &dl
    };
    for _ in 0..10_000 {
        let (p1, p2) = (sample(), sample());
        for op in [Letter::A, Letter::BA] {
            let lhs = dist2(&apply_operator(op, &p1), &apply_operator(op, &p2));
            assert!(lhs * q(4, 1) <= dist2(&p1, &p2) * q(3, 1), "{op} {p1} {p2}");
        }
    }
}

fn random_polygon(rng: &mut rand::rngs::StdRng) -> ConvexPolygon {
    let pts = (0..rng.gen_range(1..6))
        .map(|_| Pt::new(small_rational(rng, 0, 1), small_rational(rng, 0, 1)))
        .collect();
    ConvexPolygon::from_points(pts)
}

#[test]
fn theta_bounds_sandwich_values() {
    let mut rng = rng(9);
    for _ in 0..200 {
        let obj = random_objective(&mut rng);
        let region = triangle_t();
        let b = theta_bounds(&obj, &region).unwrap().unwrap();
        for _ in 0..20 {
            let k = q(rng.gen_range(0..=50), 100);
            let l = q(rng.gen_range(50..=100), 100);
            if &k + &l > q(1, 1) {
                continue;
            }
            let Ok(v) = obj.eval_at(&k, &l) else { continue };
            assert!(b.lower <= v && v <= b.upper, "{v} not in [{}, {}]", b.lower, b.upper);
        }
    }
}

#[test]
fn clipping_stays_inside_and_keeps_feasible_points() {
    let mut rng = rng(10);
    for _ in 0..300 {
        let poly = random_polygon(&mut rng);
        let lc = random_constraints(&mut rng);
        let closed: Vec<_> = lc.iter().map(|c| exppairs::LinearConstraint { strict: false, ..c.clone() }).collect();
        let clipped = clip_all(&poly, &closed);
        for v in clipped.vertices() {
            assert!(poly.contains(v));
            assert!(check_all(&closed, &v.k, &v.l));
        }
        for v in poly.vertices() {
            if check_all(&closed, &v.k, &v.l) {
                assert!(clipped.contains(v));
            }
        }
    }
}

#[test]
fn feasibility_is_monotone() {
    let mut rng = rng(11);
    for _ in 0..300 {
        let region = Region::new(vec![random_polygon(&mut rng), random_polygon(&mut rng)]);
        let lc = random_constraints(&mut rng);
        let mut more = lc.clone();
        more.extend(random_constraints(&mut rng));
        if feasible(&region, &more) {
            assert!(feasible(&region, &lc));
        }
        // a feasible vertex witnesses feasibility
        for v in region.vertices() {
            if check_all(&lc, &v.k, &v.l) {
                assert!(feasible(&region, &lc));
            }
        }
    }
}

#[test]
fn power_matches_repeated_product() {
    let a = ProjMatrix::a();
    let mut m = ProjMatrix::identity();
    for n in 0..40u32 {
        assert_eq!(a.pow(n), m);
        m = m.mul(&a);
    }
}
