//! Initial exponent pairs, the A / B / BA processes, and words over them.
//!
//! Words are written the conventional way: the leftmost letter is applied
//! last, so `A BA H05` means `A(BA(H05))`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::projective::{mu, mu_inv, ProjMatrix};
use crate::rational::{fmt_rational, q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    BA,
}

impl Letter {
    pub fn matrix(self) -> ProjMatrix {
        match self {
            Letter::A => ProjMatrix::a(),
            Letter::B => ProjMatrix::b(),
            Letter::BA => ProjMatrix::ba(),
        }
    }

    /// Whether the letter shrinks distances on the triangle (B is an isometry).
    pub fn contracts(self) -> bool {
        !matches!(self, Letter::B)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "A",
            Letter::B => "B",
            Letter::BA => "BA",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentPair {
    pub k: Rational,
    pub l: Rational,
    /// Set when the pair is really `(k+ε, l+ε)` for arbitrarily small ε.
    pub eps: bool,
    pub provenance: Option<Word>,
}

impl ExponentPair {
    pub fn new(k: Rational, l: Rational) -> Self {
        ExponentPair { k, l, eps: false, provenance: None }
    }

    pub fn with_eps(mut self, eps: bool) -> Self {
        self.eps = eps;
        self
    }

    /// `0 ≤ k ≤ 1/2 ≤ l ≤ 1` and `k + l ≤ 1`.
    pub fn in_triangle(&self) -> bool {
        let half = q(1, 2);
        !self.k.is_negative()
            && self.k <= half
            && self.l >= half
            && self.l <= Rational::one()
            && &self.k + &self.l <= Rational::one()
    }

    pub fn same_point(&self, other: &ExponentPair) -> bool {
        self.k == other.k && self.l == other.l
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (crate::rational::to_f64(&self.k), crate::rational::to_f64(&self.l))
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps = if self.eps { "+ε" } else { "" };
        write!(f, "({}{eps}, {}{eps})", fmt_rational(&self.k), fmt_rational(&self.l))
    }
}

pub struct CatalogEntry {
    pub label: &'static str,
    pub pair: ExponentPair,
}

/// The known initial pairs: (0,1), three Huxley pairs, Huxley–Watt, Watt,
/// and Huxley's 2005 pair. All but (0,1) carry an ε.
pub fn catalog() -> Vec<CatalogEntry> {
    let half = q(1, 2);
    let shifted = |n: i64, d: i64| (q(n, d), &half + q(n, d));
    let mk = |label, (k, l): (Rational, Rational), eps| CatalogEntry {
        label,
        pair: ExponentPair::new(k, l).with_eps(eps),
    };
    vec![
        mk("I", (q(0, 1), q(1, 1)), false),
        mk("Hux13", (q(2, 13), q(35, 52)), true),
        mk("Hux80", shifted(13, 80), true),
        mk("Hux68", shifted(11, 68), true),
        mk("HW", shifted(9, 56), true),
        mk("W", shifted(89, 560), true),
        mk("H05", shifted(32, 205), true),
    ]
}

pub fn catalog_labels() -> Vec<&'static str> {
    catalog().into_iter().map(|e| e.label).collect()
}

pub fn lookup(label: &str) -> Result<ExponentPair> {
    catalog()
        .into_iter()
        .find(|e| e.label == label)
        .map(|e| e.pair)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// Applies one process directly on rationals.
pub fn apply_operator(op: Letter, p: &ExponentPair) -> ExponentPair {
    let half = q(1, 2);
    let (k, l) = match op {
        Letter::A => {
            let den = (&p.k + Rational::one()) * Rational::from_integer(2.into());
            (&p.k / &den, (&p.k + &p.l + Rational::one()) / den)
        }
        Letter::B => (&p.l - &half, &p.k + &half),
        Letter::BA => return apply_operator(Letter::B, &apply_operator(Letter::A, p)),
    };
    ExponentPair { k, l, eps: p.eps, provenance: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    /// Finite prefix, leftmost letter applied last.
    pub letters: Vec<Letter>,
    /// Cyclic part written `(…)^inf`; applied infinitely often before the prefix.
    pub tail: Option<Vec<Letter>>,
    pub initial: String,
}

impl Word {
    pub fn new(letters: Vec<Letter>, initial: impl Into<String>) -> Self {
        Word { letters, tail: None, initial: initial.into() }
    }

    pub fn infinite(letters: Vec<Letter>, tail: Vec<Letter>, initial: impl Into<String>) -> Self {
        Word { letters, tail: Some(tail), initial: initial.into() }
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    /// Matrix of the finite prefix.
    pub fn matrix(&self) -> ProjMatrix {
        word_to_matrix(&self.letters)
    }

    /// Exact value of a finite word.
    pub fn eval(&self) -> Result<ExponentPair> {
        if !self.is_finite() {
            return Err(Error::InfiniteWord);
        }
        let init = lookup(&self.initial)?;
        let (k, l) = self.matrix().apply_affine(&init.k, &init.l)?;
        Ok(ExponentPair { k, l, eps: init.eps, provenance: Some(self.clone()) })
    }

    /// Value of any word; infinite words come back with a certified error bound.
    pub fn eval_approx(&self, tol: &Rational) -> Result<Approx> {
        let Some(tail) = &self.tail else {
            return Ok(Approx { pair: self.eval()?, error_bound: Rational::zero() });
        };
        // The initial label only matters for validation.
        let init = lookup(&self.initial)?;
        let fp = fixed_point(tail, tol)?;
        let (k, l) = self.matrix().apply_affine(&fp.pair.k, &fp.pair.l)?;
        Ok(Approx {
            pair: ExponentPair { k, l, eps: init.eps, provenance: Some(self.clone()) },
            error_bound: fp.error_bound,
        })
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    let mut i = 0;
    let mut first = true;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        let run = j - i;
        match (letters[i], run) {
            (l, 1) => write!(f, "{l}")?,
            (Letter::BA, n) => write!(f, "(BA)^{n}")?,
            (l, n) => write!(f, "{l}^{n}")?,
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)?;
        if !self.letters.is_empty() {
            f.write_str(" ")?;
        }
        if let Some(tail) = &self.tail {
            f.write_str("(")?;
            write_letters(f, tail)?;
            f.write_str(")^inf ")?;
        }
        f.write_str(&self.initial)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Open,
    Close,
    Pow(Option<u32>),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::WordParse { pos, msg: msg.to_string() };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '·' || c == '*' {
            i += 1;
        } else if c == '(' {
            out.push(Tok::Open);
            i += 1;
        } else if c == ')' {
            out.push(Tok::Close);
            i += 1;
        } else if c == '^' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let exp: String = chars[start..i].iter().collect();
            if exp == "inf" {
                out.push(Tok::Pow(None));
            } else {
                let n = exp.parse::<u32>().map_err(|_| err(out.len(), "bad exponent"))?;
                out.push(Tok::Pow(Some(n)));
            }
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            return Err(err(out.len(), &format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

enum Item {
    Finite(Vec<Letter>),
    Cycle(Vec<Letter>),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::WordParse { pos: self.pos, msg: msg.into() }
    }

    fn letter(name: &str) -> Option<Letter> {
        match name {
            "A" => Some(Letter::A),
            "B" => Some(Letter::B),
            "BA" => Some(Letter::BA),
            _ => None,
        }
    }

    fn pow(&mut self, base: Vec<Letter>) -> Item {
        match self.toks.get(self.pos) {
            Some(Tok::Pow(Some(n))) => {
                self.pos += 1;
                Item::Finite(base.repeat(*n as usize))
            }
            Some(Tok::Pow(None)) => {
                self.pos += 1;
                Item::Cycle(base)
            }
            _ => Item::Finite(base),
        }
    }

    /// Parses items until `)` or a non-letter identifier.
    fn seq(&mut self, nested: bool) -> Result<Vec<Item>> {
        let mut items = Vec::new();
        loop {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Ident(name)) => match Self::letter(&name) {
                    Some(l) => {
                        self.pos += 1;
                        items.push(self.pow(vec![l]));
                    }
                    None => return Ok(items),
                },
                Some(Tok::Open) => {
                    self.pos += 1;
                    let inner = self.seq(true)?;
                    if self.toks.get(self.pos) != Some(&Tok::Close) {
                        return Err(self.err("expected `)`"));
                    }
                    self.pos += 1;
                    let mut letters = Vec::new();
                    for it in inner {
                        match it {
                            Item::Finite(ls) => letters.extend(ls),
                            Item::Cycle(_) => return Err(self.err("`^inf` inside a group")),
                        }
                    }
                    if letters.is_empty() {
                        return Err(self.err("empty group"));
                    }
                    items.push(self.pow(letters));
                }
                Some(Tok::Close) if nested => return Ok(items),
                Some(Tok::Close) => return Err(self.err("unbalanced `)`")),
                Some(Tok::Pow(_)) => return Err(self.err("exponent without a base")),
                None => return Ok(items),
            }
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Grammar: letters `A`, `B`, `BA` with optional `^n`; groups `( … )^n`
    /// or `( … )^inf`; a terminal initial-pair label.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { toks: tokenize(s)?, pos: 0 };
        let items = p.seq(false)?;
        let label = match p.toks.get(p.pos) {
            Some(Tok::Ident(name)) => name.clone(),
            _ => return Err(p.err("missing initial-pair label")),
        };
        p.pos += 1;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing tokens after label"));
        }
        lookup(&label)?;
        let mut letters = Vec::new();
        let mut tail = None;
        for it in items {
            if tail.is_some() {
                return Err(p.err("letters after a `^inf` group"));
            }
            match it {
                Item::Finite(ls) => letters.extend(ls),
                Item::Cycle(ls) => tail = Some(ls),
            }
        }
        Ok(Word { letters, tail, initial: label })
    }
}

/// Product of letter matrices in written order, reduced after every step.
pub fn word_to_matrix(letters: &[Letter]) -> ProjMatrix {
    letters
        .iter()
        .fold(ProjMatrix::identity(), |m, l| m.mul(&l.matrix()))
}

#[derive(Clone, Debug)]
pub struct Approx {
    pub pair: ExponentPair,
    /// Euclidean distance to the true point is at most this.
    pub error_bound: Rational,
}

/// Attracting fixed point of the cyclic word, found by iterating the exact
/// map from `(1/6, 2/3)`.
///
/// Each A or BA letter contracts squared distances on the triangle by 3/4,
/// so one pass of the cycle contracts by `c ≤ (7/8)^n` where `n` counts those
/// letters. With `d` the L1 step between consecutive iterates the remaining
/// error is at most `c·d/(1−c)`; iteration stops once that drops below `tol`.
pub fn fixed_point(cycle: &[Letter], tol: &Rational) -> Result<Approx> {
    if cycle.is_empty() {
        return Err(Error::Divergence("empty cycle".into()));
    }
    let contracting = cycle.iter().filter(|l| l.contracts()).count();
    if contracting == 0 {
        return Err(Error::Divergence("cycle contains no contracting letter".into()));
    }
    let c = num_traits::pow(q(7, 8), contracting);
    let factor = &c / (Rational::one() - &c);
    let m = word_to_matrix(cycle);
    let mut point = mu(&q(1, 6), &q(2, 3));
    let mut prev = mu_inv(&point)?;
    for _ in 0..100_000 {
        point = m.apply(&point)?;
        let cur = mu_inv(&point)?;
        let pair = ExponentPair::new(cur.0.clone(), cur.1.clone());
        if !pair.in_triangle() {
            return Err(Error::Divergence("iterate left the triangle".into()));
        }
        let step = (&cur.0 - &prev.0).abs() + (&cur.1 - &prev.1).abs();
        let bound = &step * &factor;
        if bound < *tol {
            return Ok(Approx { pair, error_bound: bound });
        }
        prev = cur;
    }
    Err(Error::Divergence("no convergence within iteration limit".into()))
}
