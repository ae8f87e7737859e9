//! Fractional-linear objectives, linear constraints, halfplane clipping and
//! the bound/feasibility predicates the search prunes with.
//!
//! Everything is exact. A fractional-linear function with positive
//! denominator is monotone along any segment, so extrema over a convex
//! polygon sit at its vertices; this replaces a simplex solve.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{triangle_vertices, ConvexPolygon, Pt, Region};
use crate::pairs::ExponentPair;
use crate::rational::{fmt_rational, Rational};

/// `(a·k + b·l + c) / (d·k + e·l + f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracLinear {
    pub num: [Rational; 3],
    pub den: [Rational; 3],
}

fn affine(c: &[Rational; 3], k: &Rational, l: &Rational) -> Rational {
    &c[0] * k + &c[1] * l + &c[2]
}

/// Value at one point; `Ok(None)` for the removable `0/0` corner.
enum PointValue {
    Value(Rational),
    Indeterminate,
}

impl FracLinear {
    /// Checks the denominator on the triangle's vertices. It must be
    /// nonnegative there; it may vanish at one vertex only, and only where the
    /// numerator vanishes too (the Ξ and Δ second-case objectives are `0/0`
    /// at `(0,1)` and bounded nearby).
    pub fn new(num: [Rational; 3], den: [Rational; 3]) -> Result<Self> {
        let fl = FracLinear { num, den };
        let mut zero_count = 0;
        for v in triangle_vertices() {
            let d = affine(&fl.den, &v.k, &v.l);
            if d.is_negative() {
                return Err(Error::InvalidObjective(format!(
                    "denominator {} is negative at ({}, {})",
                    fl,
                    fmt_rational(&v.k),
                    fmt_rational(&v.l)
                )));
            }
            if d.is_zero() {
                zero_count += 1;
                if !affine(&fl.num, &v.k, &v.l).is_zero() {
                    return Err(Error::InvalidObjective(format!(
                        "{} is unbounded near ({}, {})",
                        fl,
                        fmt_rational(&v.k),
                        fmt_rational(&v.l)
                    )));
                }
            }
        }
        if zero_count > 1 {
            return Err(Error::InvalidObjective(format!(
                "denominator of {fl} vanishes on an edge of the triangle"
            )));
        }
        Ok(fl)
    }

    /// Polynomial `a·k + b·l + c` (denominator 1).
    pub fn linear(a: Rational, b: Rational, c: Rational) -> Self {
        FracLinear { num: [a, b, c], den: [Rational::zero(), Rational::zero(), Rational::one()] }
    }

    fn at(&self, k: &Rational, l: &Rational) -> Result<PointValue> {
        let d = affine(&self.den, k, l);
        let n = affine(&self.num, k, l);
        if d.is_zero() {
            if n.is_zero() {
                return Ok(PointValue::Indeterminate);
            }
            return Err(Error::SingularEvaluation(fmt_rational(k), fmt_rational(l)));
        }
        if d.is_negative() {
            return Err(Error::InvalidObjective(format!("denominator of {self} is negative")));
        }
        Ok(PointValue::Value(n / d))
    }

    pub fn eval_at(&self, k: &Rational, l: &Rational) -> Result<Rational> {
        match self.at(k, l)? {
            PointValue::Value(v) => Ok(v),
            PointValue::Indeterminate => {
                Err(Error::SingularEvaluation(fmt_rational(k), fmt_rational(l)))
            }
        }
    }

    pub fn eval(&self, p: &ExponentPair) -> Result<Rational> {
        self.eval_at(&p.k, &p.l)
    }

    /// `θ < r` rewritten as the strict linear constraint
    /// `(r·d−a)k + (r·e−b)l + (r·f−c) > 0`, valid where the denominator is positive.
    pub fn strictify(&self, r: &Rational) -> LinearConstraint {
        let c: [Rational; 3] = std::array::from_fn(|i| r * &self.den[i] - &self.num[i]);
        let [alpha, beta, gamma] = c;
        LinearConstraint { alpha, beta, gamma, strict: true }
    }
}

fn fmt_affine(c: &[Rational; 3]) -> String {
    format!("{}·k + {}·l + {}", fmt_rational(&c[0]), fmt_rational(&c[1]), fmt_rational(&c[2]))
}

impl fmt::Display for FracLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", fmt_affine(&self.num), fmt_affine(&self.den))
    }
}

/// `θ = max(θ₁, …, θₘ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxObjective {
    parts: Vec<FracLinear>,
}

impl MaxObjective {
    pub fn new(parts: Vec<FracLinear>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidObjective("objective has no parts".into()));
        }
        Ok(MaxObjective { parts })
    }

    pub fn single(part: FracLinear) -> Self {
        MaxObjective { parts: vec![part] }
    }

    pub fn parts(&self) -> &[FracLinear] {
        &self.parts
    }

    pub fn eval_at(&self, k: &Rational, l: &Rational) -> Result<Rational> {
        let mut best: Option<Rational> = None;
        for part in &self.parts {
            let v = part.eval_at(k, l)?;
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
        Ok(best.expect("objective has at least one part"))
    }

    pub fn eval(&self, p: &ExponentPair) -> Result<Rational> {
        self.eval_at(&p.k, &p.l)
    }

    pub fn cuts(&self, r: &Rational) -> Vec<LinearConstraint> {
        self.parts.iter().map(|p| p.strictify(r)).collect()
    }
}

/// `α·k + β·l + γ > 0` (strict) or `≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub strict: bool,
}

impl LinearConstraint {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, strict: bool) -> Self {
        LinearConstraint { alpha, beta, gamma, strict }
    }

    pub fn value(&self, k: &Rational, l: &Rational) -> Rational {
        &self.alpha * k + &self.beta * l + &self.gamma
    }

    pub fn holds_at(&self, k: &Rational, l: &Rational) -> bool {
        let v = self.value(k, l);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }

    pub fn check(&self, p: &ExponentPair) -> bool {
        self.holds_at(&p.k, &p.l)
    }

    /// The same line with the opposite closed side.
    pub fn flipped_closed(&self) -> Self {
        LinearConstraint {
            alpha: -&self.alpha,
            beta: -&self.beta,
            gamma: -&self.gamma,
            strict: false,
        }
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.strict { ">" } else { ">=" };
        write!(
            f,
            "{}·k + {}·l + {} {rel} 0",
            fmt_rational(&self.alpha),
            fmt_rational(&self.beta),
            fmt_rational(&self.gamma)
        )
    }
}

pub fn check_all(constraints: &[LinearConstraint], k: &Rational, l: &Rational) -> bool {
    constraints.iter().all(|c| c.holds_at(k, l))
}

/// Intersection with the closed halfplane `α·k + β·l + γ ≥ 0`.
pub fn clip_halfplane(poly: &ConvexPolygon, c: &LinearConstraint) -> ConvexPolygon {
    let vs = poly.vertices();
    if vs.is_empty() {
        return ConvexPolygon::empty();
    }
    let vals: Vec<Rational> = vs.iter().map(|v| c.value(&v.k, &v.l)).collect();
    if vals.iter().all(|v| !v.is_negative()) {
        return poly.clone();
    }
    if vals.iter().all(|v| v.is_negative()) {
        return ConvexPolygon::empty();
    }
    let n = vs.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + 1) % n;
        let (s, e) = (&vs[i], &vs[j]);
        let (fs, fe) = (&vals[i], &vals[j]);
        let s_in = !fs.is_negative();
        let e_in = !fe.is_negative();
        if s_in {
            out.push(s.clone());
        }
        if s_in != e_in && !(fs.is_zero() || fe.is_zero()) {
            // f(s + t(e−s)) = 0  ⇒  t = fs / (fs − fe)
            let t = fs / (fs - fe);
            out.push(Pt {
                k: &s.k + &t * (&e.k - &s.k),
                l: &s.l + &t * (&e.l - &s.l),
            });
        }
    }
    ConvexPolygon::from_points(out)
}

pub fn clip_all(poly: &ConvexPolygon, constraints: &[LinearConstraint]) -> ConvexPolygon {
    let mut cur = poly.clone();
    for c in constraints {
        if cur.is_empty() {
            break;
        }
        cur = clip_halfplane(&cur, c);
    }
    cur
}

/// Whether a clipped (closed) polygon also meets every strict constraint.
///
/// Each strict form is `≥ 0` on the polygon; if each one is positive at
/// some vertex, the average of those vertices makes all of them positive.
fn strict_ok(clipped: &ConvexPolygon, constraints: &[LinearConstraint]) -> bool {
    constraints.iter().filter(|c| c.strict).all(|c| {
        clipped
            .vertices()
            .iter()
            .any(|v| c.value(&v.k, &v.l).is_positive())
    })
}

/// The part of a polygon satisfying all constraints, closed up; `None` when
/// no point satisfies them.
pub fn feasible_part(poly: &ConvexPolygon, constraints: &[LinearConstraint]) -> Option<ConvexPolygon> {
    let clipped = clip_all(poly, constraints);
    if clipped.is_empty() || !strict_ok(&clipped, constraints) {
        None
    } else {
        Some(clipped)
    }
}

/// True iff some point of the region satisfies every constraint.
pub fn feasible(region: &Region, constraints: &[LinearConstraint]) -> bool {
    region.parts().iter().any(|p| feasible_part(p, constraints).is_some())
}

/// Feasible parts of a region, each closed.
pub fn feasible_region(region: &Region, constraints: &[LinearConstraint]) -> Region {
    Region::new(
        region
            .parts()
            .iter()
            .filter_map(|p| feasible_part(p, constraints))
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaBounds {
    /// `max_i inf θ_i`
    pub lower: Rational,
    /// `max_i sup θ_i`
    pub upper: Rational,
}

/// Vertex bounds of the objective over the region. `Ok(None)` when the
/// region holds no point where the objective is defined.
pub fn theta_bounds(obj: &MaxObjective, region: &Region) -> Result<Option<ThetaBounds>> {
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for part in obj.parts() {
        let mut inf: Option<Rational> = None;
        let mut sup: Option<Rational> = None;
        for poly in region.parts() {
            for v in poly.vertices() {
                if let PointValue::Value(x) = part.at(&v.k, &v.l)? {
                    if inf.as_ref().is_none_or(|i| x < *i) {
                        inf = Some(x.clone());
                    }
                    if sup.as_ref().is_none_or(|s| x > *s) {
                        sup = Some(x);
                    }
                }
            }
        }
        let (Some(inf), Some(sup)) = (inf, sup) else {
            return Ok(None);
        };
        if lower.as_ref().is_none_or(|lo| inf > *lo) {
            lower = Some(inf);
        }
        if upper.as_ref().is_none_or(|up| sup > *up) {
            upper = Some(sup);
        }
    }
    Ok(Some(ThetaBounds { lower: lower.unwrap(), upper: upper.unwrap() }))
}
