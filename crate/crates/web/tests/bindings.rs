use exppairs_web::{evaluate, plot, solve};

#[test]
fn plot_counts_points() {
    let svg = plot("1/6,2/3", 6).unwrap();
    assert_eq!(svg.matches("<circle").count(), 126);
    assert!(plot("A BA I", 3).is_ok());
    assert!(plot("2,2", 3).is_err());
    assert!(plot("I", 13).is_err());
}

#[test]
fn evaluate_words() {
    let out = evaluate("BA H05").unwrap();
    assert!(out.contains(r#""k":"269/948""#), "{out}");
    let out = evaluate("A (BA)^4 (A^2 BA A)^inf I").unwrap();
    assert!(out.contains(r#""exact":false"#));
    assert!(evaluate("A ( BA").is_err());
}

#[test]
fn solve_problems() {
    let out = solve("xi", "1,2", 1000).unwrap();
    assert!(out.contains(r#""value":"269/1217""#), "{out}");
    let out = solve("mu", "4/5", 1000).unwrap();
    assert!(out.contains(r#""value":"3/71""#), "{out}");
    assert!(solve("zeta", "1", 10).is_err());
    assert!(solve("xi", "2", 10).is_err());
}
