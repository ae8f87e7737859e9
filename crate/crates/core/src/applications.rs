//! Divisor-problem and zeta-exponent front ends, and the two reference tables.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{FracLinear, LinearConstraint, MaxObjective};
use crate::optimizer::{optimize, CallStats, SearchConfig, SearchResult};
use crate::pairs::{ExponentPair, Letter, Word};
use crate::rational::{fmt_decimal, fmt_rational, int, q, to_f64, Rational};

fn z() -> Rational {
    Rational::zero()
}

fn pow2(r: u32) -> Rational {
    Rational::from_integer(BigInt::one() << r)
}

/// One result line: the value, its witness, and how it was obtained.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub label: String,
    pub value: Rational,
    pub lower_bound: Option<Rational>,
    pub pair: ExponentPair,
    pub word: Option<Word>,
    pub attained: bool,
    pub stats: CallStats,
    pub tolerance: Rational,
    pub note: Option<String>,
}

impl ReportRow {
    fn from_search(label: impl Into<String>, res: SearchResult, tolerance: &Rational) -> Result<Self> {
        let attained = res.attained();
        let best = res.best.ok_or(Error::Infeasible)?;
        Ok(ReportRow {
            label: label.into(),
            value: best.value,
            lower_bound: res.lower_bound,
            pair: best.pair,
            word: best.word,
            attained,
            stats: res.stats,
            tolerance: tolerance.clone(),
            note: None,
        })
    }

    /// Exact `p/q` when attained, a decimal otherwise.
    pub fn value_text(&self) -> String {
        if self.attained {
            fmt_rational(&self.value)
        } else {
            fmt_decimal(&self.value, 12)
        }
    }

    /// `value=… word=… attained=… calls=…`
    pub fn machine_line(&self) -> String {
        let word = self.word.as_ref().map_or_else(|| "-".to_string(), |w| w.to_string());
        format!(
            "value={} word={} attained={} calls={}",
            self.value_text(),
            word.replace(' ', "·"),
            self.attained,
            self.stats
        )
    }
}

impl fmt::Display for ReportRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.word.as_ref().map_or_else(|| "-".to_string(), |w| w.to_string());
        write!(
            f,
            "{:<12} {:>24}  {}  at {}  (calls {})",
            self.label,
            self.value_text(),
            word,
            self.pair,
            self.stats.total()
        )?;
        if !self.attained {
            write!(f, "  ±{}", fmt_decimal(&self.tolerance, 12))?;
        }
        if let Some(n) = &self.note {
            write!(f, "  [{n}]")?;
        }
        Ok(())
    }
}

/// `max{ (k+l)/((k+1)(a+b)), k/(k·b + a(1+k−l)) }`
pub fn xi_objective(a: u32, b: u32) -> Result<MaxObjective> {
    if a == 0 || a >= b {
        return Err(Error::OutOfRange(format!("need 0 < a < b, got a={a}, b={b}")));
    }
    let (a, b) = (int(a as i64), int(b as i64));
    let s = &a + &b;
    let first = FracLinear::new([int(1), int(1), z()], [s.clone(), z(), s])?;
    let second = FracLinear::new([int(1), z(), z()], [&b + &a, -&a, a])?;
    MaxObjective::new(vec![first, second])
}

pub fn xi(a: u32, b: u32, config: &SearchConfig) -> Result<ReportRow> {
    let obj = xi_objective(a, b)?;
    let res = optimize(&obj, &[], config)?;
    ReportRow::from_search(format!("Xi({a},{b})"), res, &config.tolerance)
}

/// Objective `(k+l−σ)/2` under `l − k ≥ σ`.
pub fn mu_problem(sigma: &Rational) -> Result<(MaxObjective, Vec<LinearConstraint>)> {
    if *sigma < q(1, 2) || *sigma > int(1) {
        return Err(Error::OutOfRange(format!("sigma = {} outside [1/2, 1]", fmt_rational(sigma))));
    }
    let obj = MaxObjective::single(FracLinear::linear(q(1, 2), q(1, 2), -sigma / int(2)));
    let lc = vec![LinearConstraint::new(int(-1), int(1), -sigma.clone(), false)];
    Ok((obj, lc))
}

pub fn mu_sigma(sigma: &Rational, config: &SearchConfig) -> Result<ReportRow> {
    let (obj, lc) = mu_problem(sigma)?;
    let res = optimize(&obj, &lc, config)?;
    ReportRow::from_search(format!("mu({})", fmt_rational(sigma)), res, &config.tolerance)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaCase {
    /// `(2l−1)a ≥ 2kb`, exponent `2(k+l−1/2)/(a+b)`.
    First,
    /// `(2l−1)a < 2kb`, exponent `k/((1−l)a + kb)`.
    Second,
}

/// The two objective/constraint sets for `Δ(a,b;x)`. Both include the
/// strict `k < 1/6`, `l > 2/3` (the pair must be an A-image).
pub fn delta_problems(a: u32, b: u32) -> Result<[(DeltaCase, MaxObjective, Vec<LinearConstraint>); 2]> {
    if a == 0 || a >= b {
        return Err(Error::OutOfRange(format!("need 0 < a < b, got a={a}, b={b}")));
    }
    let (a, b) = (int(a as i64), int(b as i64));
    let s = &a + &b;
    let theta1 = FracLinear::linear(int(2) / &s, int(2) / &s, -int(1) / &s);
    let theta2 = FracLinear::new([int(1), z(), z()], [b.clone(), -a.clone(), a.clone()])?;
    let a_image = [
        LinearConstraint::new(int(-1), z(), q(1, 6), true),
        LinearConstraint::new(z(), int(1), q(-2, 3), true),
    ];
    // (2l−1)a − 2kb
    let split = LinearConstraint::new(-int(2) * &b, int(2) * &a, -a.clone(), false);
    let mut lc1 = vec![split.clone()];
    lc1.extend(a_image.iter().cloned());
    let mut lc2 = vec![LinearConstraint {
        alpha: -split.alpha,
        beta: -split.beta,
        gamma: -split.gamma,
        strict: true,
    }];
    lc2.extend(a_image.iter().cloned());
    Ok([
        (DeltaCase::First, MaxObjective::single(theta1), lc1),
        (DeltaCase::Second, MaxObjective::single(theta2), lc2),
    ])
}

#[derive(Clone, Debug)]
pub struct DeltaReport {
    pub row: ReportRow,
    pub case: DeltaCase,
    /// Per-case results; `None` where the case was infeasible.
    pub cases: Vec<(DeltaCase, Option<ReportRow>)>,
}

pub fn delta_two(a: u32, b: u32, config: &SearchConfig) -> Result<DeltaReport> {
    let mut cases = Vec::new();
    let mut best: Option<(DeltaCase, ReportRow)> = None;
    for (case, obj, lc) in delta_problems(a, b)? {
        let res = optimize(&obj, &lc, config)?;
        if !res.is_feasible() {
            cases.push((case, None));
            continue;
        }
        let row = ReportRow::from_search(format!("Delta({a},{b}) {case:?}"), res, &config.tolerance)?;
        if best.as_ref().is_none_or(|(_, b)| row.value < b.value) {
            best = Some((case, row.clone()));
        }
        cases.push((case, Some(row)));
    }
    let (case, mut row) = best.ok_or(Error::Infeasible)?;
    row.label = format!("Delta({a},{b})");
    row.note = Some(format!("case {}", if case == DeltaCase::First { 1 } else { 2 }));
    Ok(DeltaReport { row, case, cases })
}

#[derive(Clone, Debug)]
pub struct Thm4 {
    pub r: u32,
    pub alpha: Rational,
    pub pair: ExponentPair,
    pub word: Word,
    /// Closed-form pair equals the matrix evaluation of the word.
    pub closed_form_matches: bool,
    /// `2l − 2·2ʳ·k − 1 < 0`
    pub second_case: bool,
    /// `α < 1/(2ʳ + r)`
    pub below_bound: bool,
}

/// `A^{r−1} BA A^{r−4} (1/6,2/3)` with `(1/6,2/3) = A BA (0,1)`.
pub fn thm4_word(r: u32) -> Word {
    let mut letters = vec![Letter::A; (r - 1) as usize];
    letters.push(Letter::BA);
    letters.extend(std::iter::repeat_n(Letter::A, (r - 4) as usize));
    letters.extend([Letter::A, Letter::BA]);
    Word::new(letters, "I")
}

pub fn thm4_alpha(r: u32) -> Result<Thm4> {
    if r < 5 {
        return Err(Error::OutOfRange(format!("r = {r}, need r ≥ 5")));
    }
    let p = pow2(r);
    let rr = int(r as i64);
    let den = int(2) * &p * &p - (int(2) * &rr + int(4)) * &p + int(4) * &rr;
    let k = (&p - int(2) * &rr) / &den;
    let l = int(1) - (&rr * &p - int(2) * &rr * &rr + int(2) * &rr - int(4)) / &den;
    let alpha = (&p - int(2) * &rr) / (&p * &p - &rr * &p - int(2) * &rr * &rr + int(2) * &rr - int(4));

    let word = thm4_word(r);
    let evaluated = word.eval()?;
    let closed_form_matches = evaluated.k == k && evaluated.l == l;
    let via_pair = &k / (&p * &k - &l + int(1));
    let second_case = (int(2) * &l - int(2) * &p * &k - int(1)).is_negative();
    let below_bound = alpha < int(1) / (&p + &rr);
    Ok(Thm4 {
        r,
        alpha: alpha.clone(),
        pair: evaluated,
        word,
        closed_form_matches: closed_form_matches && via_pair == alpha,
        second_case,
        below_bound,
    })
}

#[derive(Clone, Debug)]
pub struct Thm5 {
    pub r: u32,
    pub alpha: Rational,
    pub word: Word,
    pub pair: ExponentPair,
    /// `k/((1−l)·3 + k·2ʳ)` at the witness.
    pub witness_alpha: Rational,
    pub second_case: bool,
}

/// Smallest `r` the witness check is run for; the closed form is claimed for
/// every `r ≥ 1`, but the witness `A^{r−3} BA A HW` needs `r ≥ 3`.
pub const THM5_MIN_R: u32 = 4;

pub fn thm5_word(r: u32) -> Word {
    let mut letters = vec![Letter::A; (r - 3) as usize];
    letters.extend([Letter::BA, Letter::A]);
    Word::new(letters, "HW")
}

pub fn thm5_alpha(r: u32) -> Result<Thm5> {
    if r < THM5_MIN_R {
        return Err(Error::OutOfRange(format!(
            "r = {r}: the witness A^(r-3) BA A HW is only checked for r ≥ {THM5_MIN_R}"
        )));
    }
    let p = pow2(r);
    let alpha = int(1) / (&p + int(3 * r as i64) - q(88, 17));
    let word = thm5_word(r);
    let pair = word.eval()?;
    let witness_alpha = &pair.k / ((int(1) - &pair.l) * int(3) + &pair.k * &p);
    let second_case = ((int(2) * &pair.l - int(1)) * int(3)) < int(2) * &pair.k * &p;
    Ok(Thm5 { r, alpha, word, pair, witness_alpha, second_case })
}

#[derive(Clone, Debug)]
pub struct Thm6 {
    pub r: u32,
    pub theta: Rational,
    pub below_bound: bool,
    /// `B·A²` grouping of the witness.
    pub word_b_a2: Word,
    /// `(BA)²` grouping of the witness.
    pub word_ba2: Word,
    pub pair_b_a2: ExponentPair,
    pub pair_ba2: ExponentPair,
}

impl Thm6 {
    pub fn parses_agree(&self) -> bool {
        self.pair_b_a2.same_point(&self.pair_ba2)
    }
}

pub fn thm6_formula(r: u32) -> Rational {
    let p = pow2(r);
    let rr = int(r as i64);
    let num = int(26) * &p * &p - (int(29) * &rr + int(41)) * &p + int(16) * &rr * &rr + int(12) * &rr + int(32);
    let den = int(26) * &p * &p * &p - (int(16) * &rr + int(41)) * &p * &p
        + (int(24) * &rr - int(3)) * &p
        + int(16) * &rr
        + int(12);
    num / den
}

pub fn thm6_theta(r: u32) -> Result<Thm6> {
    if r < 10 {
        return Err(Error::OutOfRange(format!("r = {r}, need r ≥ 10")));
    }
    let theta = thm6_formula(r);
    let below_bound = theta < int(1) / (pow2(r) + int(1));
    let prefix = || {
        let mut v = vec![Letter::A; (r - 1) as usize];
        v.push(Letter::B);
        v.extend(std::iter::repeat_n(Letter::A, (r - 2) as usize));
        v.push(Letter::BA);
        v
    };
    let mut w1 = prefix();
    w1.extend([Letter::B, Letter::A, Letter::A, Letter::B]);
    let mut w2 = prefix();
    w2.extend([Letter::BA, Letter::BA, Letter::B]);
    let word_b_a2 = Word::new(w1, "I");
    let word_ba2 = Word::new(w2, "I");
    Ok(Thm6 {
        r,
        theta,
        below_bound,
        pair_b_a2: word_b_a2.eval()?,
        pair_ba2: word_ba2.eval()?,
        word_b_a2,
        word_ba2,
    })
}

/// Reference value for a table row.
#[derive(Clone, Debug)]
pub enum Expected {
    Exact(Rational),
    /// Closed form involving a square root; compared numerically.
    Surd(f64, &'static str),
}

impl Expected {
    pub fn as_f64(&self) -> f64 {
        match self {
            Expected::Exact(r) => to_f64(r),
            Expected::Surd(x, _) => *x,
        }
    }
}

#[derive(Clone, Debug)]
pub struct XiRow {
    pub a: u32,
    pub b: u32,
    pub word: &'static str,
    pub expected: Expected,
}

const M_CYCLE: &str = "((BA)^6 (A BA)^2 BA A^2)^inf";

/// Reference estimates of Ξ(a,b) for 1 ≤ a < b ≤ 5 and a few b ≤ 10, with
/// their witness words. `M` abbreviates `(BA)^6 (A BA)^2 BA A^2` and
/// `c = √37368753`.
pub fn xi_reference() -> Vec<XiRow> {
    let c = 37368753f64.sqrt();
    let ex = |n, d| Expected::Exact(q(n, d));
    vec![
        XiRow { a: 1, b: 2, word: "BA H05", expected: ex(269, 1217) },
        XiRow { a: 1, b: 3, word: "(BA)^2 A BA H05", expected: ex(1486, 8647) },
        XiRow { a: 1, b: 4, word: "H05", expected: ex(111, 790) },
        XiRow { a: 1, b: 5, word: "A BA A^2 BA A (BA)^2 A^2 M I", expected: Expected::Surd((15921.0 - 2.0 * c) / 30437.0, "(15921-2c)/30437") },
        XiRow { a: 1, b: 6, word: "(A BA)^3 (BA)^3 A^3 BA I", expected: ex(669, 6305) },
        XiRow { a: 1, b: 7, word: "A (BA)^2 BA A (BA)^2 A^2 M I", expected: Expected::Surd((9370.0 - c) / 34469.0, "(9370-c)/34469") },
        XiRow { a: 1, b: 8, word: "A (BA)^4 (A^2 BA A)^inf I", expected: Expected::Surd((5.0 + 809f64.sqrt()) / 392.0, "(5+sqrt(809))/392") },
        XiRow { a: 1, b: 9, word: "A (BA)^2 A M I", expected: Expected::Surd((10551.0 - c) / 56976.0, "(10551-c)/56976") },
        XiRow { a: 1, b: 10, word: "A (BA)^2 (A^2 (BA)^2)^2 A BA H05", expected: ex(150509, 2096993) },
        XiRow { a: 2, b: 3, word: "BA A (BA)^2 A^2 M I", expected: Expected::Surd((c - 4047.0) / 15688.0, "(c-4047)/15688") },
        XiRow { a: 2, b: 4, word: "BA H05", expected: ex(269, 2434) },
        XiRow { a: 2, b: 5, word: "M I", expected: Expected::Surd((c - 4311.0) / 18672.0, "(c-4311)/18672") },
        XiRow { a: 3, b: 4, word: "BA A H05", expected: ex(1819, 19369) },
        XiRow { a: 3, b: 5, word: "BA A (BA)^3 A^2 (BA)^3 A (BA)^5 A^2 BA I", expected: ex(63916, 774807) },
        XiRow { a: 4, b: 5, word: "BA A H05", expected: ex(1819, 24903) },
    ]
}

impl XiRow {
    pub fn parsed_word(&self) -> Result<Word> {
        self.word.replace("M I", &format!("{M_CYCLE} I")).parse()
    }
}

#[derive(Clone, Debug)]
pub struct MuRow {
    pub sigma: Rational,
    pub expected: Expected,
}

pub fn mu_reference() -> Vec<MuRow> {
    vec![
        MuRow { sigma: q(3, 5), expected: Expected::Exact(q(1409, 12170)) },
        MuRow { sigma: q(2, 3), expected: Expected::Surd(0.0879154, "0.0879154") },
        MuRow { sigma: q(3, 4), expected: Expected::Surd(0.0581840, "0.0581840") },
        MuRow { sigma: q(4, 5), expected: Expected::Exact(q(3, 71)) },
    ]
}

/// Value of a reference word under an objective; infinite words are
/// evaluated through their fixed point to within `tol` in the pair.
pub fn word_value(obj: &MaxObjective, word: &Word, tol: &Rational) -> Result<(Rational, Rational)> {
    let approx = word.eval_approx(tol)?;
    Ok((obj.eval(&approx.pair)?, approx.error_bound))
}

/// Runs `f` over `items` on up to `jobs` threads, keeping input order.
pub fn run_parallel<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        return items.iter().map(&f).collect();
    }
    let mut out: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|s| {
        for (slots, inputs) in out.chunks_mut(chunk).zip(items.chunks(chunk)) {
            let f = &f;
            s.spawn(move || {
                for (slot, item) in slots.iter_mut().zip(inputs) {
                    *slot = Some(f(item));
                }
            });
        }
    });
    out.into_iter().map(|r| r.expect("every slot filled")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_parts_balance_at_ba_h05() {
        let obj = xi_objective(1, 2).unwrap();
        let p: Word = "BA H05".parse().unwrap();
        let p = p.eval().unwrap();
        for part in obj.parts() {
            assert_eq!(part.eval(&p).unwrap(), q(269, 1217));
        }
    }

    #[test]
    fn thm4_r5() {
        let t = thm4_alpha(5).unwrap();
        assert_eq!(t.pair.k, q(11, 810));
        assert_eq!(t.alpha, q(11, 410));
        assert!(t.closed_form_matches && t.second_case && t.below_bound);
        assert!(thm4_alpha(4).is_err());
    }

    #[test]
    fn thm5_small_r() {
        let t = thm5_alpha(4).unwrap();
        assert_eq!(t.alpha, q(17, 388));
        assert_eq!(t.witness_alpha, t.alpha);
        let t = thm5_alpha(5).unwrap();
        assert_eq!(t.alpha, q(17, 711));
        assert_eq!(t.word.to_string(), "A^2 BA A HW");
        assert!(thm5_alpha(3).is_err());
    }

    #[test]
    fn thm6_r10() {
        let t = thm6_theta(10).unwrap();
        assert!(t.below_bound);
        assert!(t.parses_agree());
        assert!(thm6_theta(9).is_err());
    }

    #[test]
    fn thm6_decreasing() {
        for r in 10..16 {
            assert!(thm6_formula(r + 1) < thm6_formula(r));
        }
    }

    #[test]
    fn reference_words_parse() {
        for row in xi_reference() {
            let w = row.parsed_word().unwrap();
            assert_eq!(w.is_finite(), matches!(row.expected, Expected::Exact(_)), "{}", row.word);
        }
    }

    #[test]
    fn mu_range_checked() {
        assert!(mu_problem(&q(1, 3)).is_err());
        assert!(mu_problem(&q(3, 2)).is_err());
    }

    #[test]
    fn parallel_keeps_order() {
        let xs: Vec<u32> = (0..10).collect();
        assert_eq!(run_parallel(&xs, 3, |x| x * 2), (0..10).map(|x| x * 2).collect::<Vec<_>>());
    }
}
