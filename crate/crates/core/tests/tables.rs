use exppairs::applications::*;
use exppairs::optimizer::SearchConfig;
use exppairs::rational::{q, to_f64};

#[test]
fn xi_table_matches_reference() {
    let cfg = SearchConfig::default();
    for row in xi_reference() {
        let r = xi(row.a, row.b, &cfg).unwrap();
        match &row.expected {
            Expected::Exact(v) => {
                assert_eq!(&r.value, v, "Xi({},{})", row.a, row.b);
                assert!(r.attained);
            }
            Expected::Surd(x, form) => {
                assert!((to_f64(&r.value) - x).abs() < 1e-9, "Xi({},{}) = {} vs {form}", row.a, row.b, r.value);
                assert!(!r.attained);
            }
        }
    }
}

#[test]
fn reference_words_reach_reference_values() {
    let tol = q(1, 1_000_000_000_000);
    for row in xi_reference() {
        let obj = xi_objective(row.a, row.b).unwrap();
        let (v, _) = word_value(&obj, &row.parsed_word().unwrap(), &tol).unwrap();
        match &row.expected {
            Expected::Exact(e) => assert_eq!(&v, e, "{}", row.word),
            Expected::Surd(x, _) => assert!((to_f64(&v) - x).abs() < 1e-9, "{}: {}", row.word, to_f64(&v)),
        }
    }
}

#[test]
fn found_words_evaluate_to_reported_values() {
    let cfg = SearchConfig::default();
    for (a, b) in [(1, 3), (1, 6), (3, 5)] {
        let r = xi(a, b, &cfg).unwrap();
        let w = r.word.as_ref().unwrap();
        let obj = xi_objective(a, b).unwrap();
        assert_eq!(obj.eval(&w.eval().unwrap()).unwrap(), r.value);
        // the printed word parses back
        let again: exppairs::Word = w.to_string().parse().unwrap();
        assert_eq!(&again, w);
    }
}

#[test]
fn mu_table_matches_reference() {
    let cfg = SearchConfig::default();
    for row in mu_reference() {
        let r = mu_sigma(&row.sigma, &cfg).unwrap();
        match &row.expected {
            Expected::Exact(v) => assert_eq!(&r.value, v),
            Expected::Surd(x, _) => assert!((to_f64(&r.value) - x).abs() < 1e-7, "{}", to_f64(&r.value)),
        }
    }
}

#[test]
fn delta_first_example() {
    let cfg = SearchConfig::default();
    let d = delta_two(1, 32, &cfg).unwrap();
    // the search beats the r = 5 closed-form witness
    assert!(d.row.value <= q(11, 410));
    assert!(d.row.value < q(1, 37));
    let d = delta_two(1, 2, &cfg).unwrap();
    assert_eq!(d.cases.len(), 2);
    assert!(d.cases.iter().all(|(_, r)| r.is_some()));
}

#[test]
fn delta_cases_agree_with_formulas() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    let (a, b) = (3u32, 16u32);
    let [(_, o1, c1), (_, o2, c2)] = delta_problems(a, b).unwrap();
    let (af, bf) = (q(a as i64, 1), q(b as i64, 1));
    let (mut n1, mut n2) = (0, 0);
    while n1 < 100 || n2 < 100 {
        let k = q(rng.gen_range(1..1000), 6000);
        let l = q(2, 3) + q(rng.gen_range(1..1000), 3000);
        let p = exppairs::ExponentPair::new(k.clone(), l.clone());
        if exppairs::lp::check_all(&c1, &k, &l) && n1 < 100 {
            let f = q(2, 1) * (&k + &l - q(1, 2)) / (&af + &bf);
            assert_eq!(o1.eval(&p).unwrap(), f);
            n1 += 1;
        }
        if exppairs::lp::check_all(&c2, &k, &l) && n2 < 100 {
            let f = &k / ((q(1, 1) - &l) * &af + &k * &bf);
            assert_eq!(o2.eval(&p).unwrap(), f);
            n2 += 1;
        }
    }
    // boundary of the strict A-image constraints is rejected
    assert!(!exppairs::lp::check_all(&c1, &q(1, 6), &q(5, 6)));
    assert!(!exppairs::lp::check_all(&c2, &q(1, 12), &q(2, 3)));
}

#[test]
fn theorem_front_ends() {
    for r in 5..=16 {
        let t = thm4_alpha(r).unwrap();
        assert!(t.closed_form_matches && t.second_case && t.below_bound, "r = {r}");
    }
    for r in 4..=12 {
        let t = thm5_alpha(r).unwrap();
        assert_eq!(t.witness_alpha, t.alpha, "r = {r}");
        assert!(t.second_case);
    }
    for r in 10..=14 {
        let t = thm6_theta(r).unwrap();
        assert!(t.below_bound);
        assert!(t.parses_agree());
    }
}
