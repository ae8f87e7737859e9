mod common;

use common::*;
use exppairs::optimizer::{optimize, SearchConfig};
use exppairs::rational::Rational;
use num_traits::Zero;

fn exact_config(depth: usize) -> SearchConfig {
    SearchConfig { tolerance: Rational::zero(), ..SearchConfig::default() }.with_depth(depth)
}

#[test]
fn matches_enumeration_on_random_instances() {
    let mut rng = rng(0x5eed);
    let cfg = exact_config(10);
    let mut feasible = 0;
    for i in 0..20 {
        let obj = random_objective(&mut rng);
        let lc = random_constraints(&mut rng);
        let res = optimize(&obj, &lc, &cfg).unwrap();
        let expect = brute_force(&obj, &lc, 10);
        assert_eq!(res.value(), expect.as_ref(), "instance {i}: {obj:?} {lc:?}");
        feasible += usize::from(expect.is_some());
    }
    assert!(feasible >= 10, "too few feasible instances ({feasible})");
}

#[test]
fn cuts_do_not_change_values() {
    let mut rng = rng(77);
    for _ in 0..10 {
        let obj = random_objective(&mut rng);
        let lc = random_constraints(&mut rng);
        let with = optimize(&obj, &lc, &exact_config(8)).unwrap();
        let mut cfg = exact_config(8);
        cfg.objective_cuts = false;
        let without = optimize(&obj, &lc, &cfg).unwrap();
        assert_eq!(with.value(), without.value());
        assert!(with.stats.total() <= without.stats.total());
    }
}

#[test]
fn witness_is_sound() {
    let mut rng = rng(1234);
    let cfg = exact_config(8);
    for _ in 0..15 {
        let obj = random_objective(&mut rng);
        let lc = random_constraints(&mut rng);
        let res = optimize(&obj, &lc, &cfg).unwrap();
        if let Some(best) = &res.best {
            let word = best.word.as_ref().unwrap();
            let p = word.eval().unwrap();
            assert!(p.same_point(&best.pair));
            assert!(exppairs::lp::check_all(&lc, &p.k, &p.l));
            assert_eq!(obj.eval(&p).unwrap(), best.value);
            assert!(res.lower_bound.as_ref().unwrap() <= &best.value);
        }
    }
}
