//! Outer polygonal approximations of the convex hull of the pair set and
//! minimisation over them.

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::geometry::{generation, triangle_t, ConvexPolygon, Pt};
use crate::lp::{clip_all, feasible_part, FracLinear, LinearConstraint, MaxObjective};
use crate::optimizer::{optimize, Best, SearchConfig, SearchResult};
use crate::pairs::{lookup, ExponentPair};
use crate::rational::{q, Rational};

/// Triangle cut by the support halfplanes `α·k + β·l ≥ θ`, where `θ` is the
/// certified lower bound of `inf (α·k + β·l)` over the pairs generated from
/// `initial`. With no directions this is the triangle itself.
pub fn hull_polygon(
    directions: &[(Rational, Rational)],
    initial: &[String],
    config: &SearchConfig,
) -> Result<ConvexPolygon> {
    let mut poly = triangle_t().parts()[0].clone();
    let mut cfg = config.clone();
    cfg.initial_pairs = initial.to_vec();
    cfg.mode = crate::optimizer::Mode::Rigorous;
    for (alpha, beta) in directions {
        if alpha.is_zero() && beta.is_zero() {
            continue;
        }
        let obj = MaxObjective::single(FracLinear::linear(alpha.clone(), beta.clone(), Rational::zero()));
        let res = optimize(&obj, &[], &cfg)?;
        let Some(theta) = res.lower_bound else { continue };
        let cut = LinearConstraint::new(alpha.clone(), beta.clone(), -theta, false);
        poly = clip_all(&poly, &[cut]);
    }
    Ok(poly)
}

/// Inward normals of the convex hull of all pairs reachable in at most
/// `depth` steps from the given initial pairs.
pub fn sample_directions(initial: &[String], depth: usize) -> Result<Vec<(Rational, Rational)>> {
    let mut pts = vec![Pt::new(q(1, 2), q(1, 2)), Pt::new(q(0, 1), q(1, 1))];
    for label in initial {
        let p = lookup(label)?;
        for d in 0..=depth {
            pts.extend(generation(&p, d)?.entries.iter().map(|(_, e)| Pt::of(e)));
        }
    }
    let hull = ConvexPolygon::from_points(pts);
    let vs = hull.vertices();
    let n = vs.len();
    if n < 3 {
        return Ok(Vec::new());
    }
    Ok((0..n)
        .map(|i| {
            let (u, v) = (&vs[i], &vs[(i + 1) % n]);
            (-(&v.l - &u.l), &v.k - &u.k)
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct HullResult {
    pub result: SearchResult,
    pub polygon: ConvexPolygon,
    pub support_lines: usize,
}

/// `θ(s) = (n₀ + n₁ s)/(d₀ + d₁ s)` along a segment `u + s(v−u)`.
struct OnSegment {
    n0: Rational,
    n1: Rational,
    d0: Rational,
    d1: Rational,
}

fn restrict(f: &FracLinear, u: &Pt, v: &Pt) -> OnSegment {
    let at = |c: &[Rational; 3], p: &Pt| &c[0] * &p.k + &c[1] * &p.l + &c[2];
    let (nu, nv) = (at(&f.num, u), at(&f.num, v));
    let (du, dv) = (at(&f.den, u), at(&f.den, v));
    OnSegment { n1: &nv - &nu, n0: nu, d1: &dv - &du, d0: du }
}

/// Points of the open segment where `θᵢ = θⱼ`, exact when the crossing is
/// rational and otherwise bracketed to within 2⁻⁶⁰ of the segment length.
fn balance_points(fi: &FracLinear, fj: &FracLinear, u: &Pt, v: &Pt) -> Vec<Pt> {
    let a = restrict(fi, u, v);
    let b = restrict(fj, u, v);
    // g(s) = Nᵢ·Dⱼ − Nⱼ·Dᵢ = c2 s² + c1 s + c0
    let c2 = &a.n1 * &b.d1 - &b.n1 * &a.d1;
    let c1 = &a.n0 * &b.d1 + &a.n1 * &b.d0 - &b.n0 * &a.d1 - &b.n1 * &a.d0;
    let c0 = &a.n0 * &b.d0 - &b.n0 * &a.d0;
    let g = |s: &Rational| &c2 * s * s + &c1 * s + &c0;
    let point = |s: &Rational| Pt::new(&u.k + s * (&v.k - &u.k), &u.l + s * (&v.l - &u.l));
    let zero = Rational::zero();
    let one = Rational::from_integer(1.into());

    let mut roots = Vec::new();
    if c2.is_zero() {
        if !c1.is_zero() {
            roots.push(-&c0 / &c1);
        }
    } else {
        let disc = &c1 * &c1 - Rational::from_integer(4.into()) * &c2 * &c0;
        if disc.is_negative() {
            return Vec::new();
        }
        if let Some(sq) = exact_sqrt(&disc) {
            let two_a = Rational::from_integer(2.into()) * &c2;
            roots.push((-&c1 + &sq) / &two_a);
            roots.push((-&c1 - &sq) / &two_a);
        } else {
            // Split [0,1] at the vertex of the parabola and bisect each monotone piece.
            let vertex = -&c1 / (Rational::from_integer(2.into()) * &c2);
            let mut cuts = vec![zero.clone()];
            if vertex > zero && vertex < one {
                cuts.push(vertex);
            }
            cuts.push(one.clone());
            for w in cuts.windows(2) {
                let (mut lo, mut hi) = (w[0].clone(), w[1].clone());
                let (glo, ghi) = (g(&lo), g(&hi));
                if glo.is_zero() || ghi.is_zero() || glo.is_positive() == ghi.is_positive() {
                    continue;
                }
                let lo_pos = glo.is_positive();
                for _ in 0..60 {
                    let mid = (&lo + &hi) / Rational::from_integer(2.into());
                    if g(&mid).is_positive() == lo_pos {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                roots.push(lo);
                roots.push(hi);
            }
        }
    }
    roots
        .into_iter()
        .filter(|s| *s >= zero && *s <= one)
        .map(|s| point(&s))
        .collect()
}

fn exact_sqrt(r: &Rational) -> Option<Rational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Approximate infimum over the convex hull of the pair set.
///
/// Single-part objectives: the infimum over the pairs, compared with the
/// constraint lines cut by the hull polygon. Multi-part objectives: vertices
/// of the constrained hull polygon and the balance points of every pair of
/// parts along its edges. Quality is bounded by the hull approximation.
pub fn optimize_hull(
    obj: &MaxObjective,
    constraints: &[LinearConstraint],
    config: &SearchConfig,
) -> Result<HullResult> {
    let on_pairs = optimize(obj, constraints, config)?;
    let directions = match &config.hull_directions {
        Some(d) => d.clone(),
        None => sample_directions(&config.initial_pairs, 8)?,
    };
    if obj.parts().len() == 1 && constraints.is_empty() {
        return Ok(HullResult {
            result: on_pairs,
            polygon: triangle_t().parts()[0].clone(),
            support_lines: 0,
        });
    }
    let polygon = hull_polygon(&directions, &config.initial_pairs, config)?;
    let support_lines = directions.len();

    let mut candidates: Vec<(Pt, bool)> = Vec::new();
    if obj.parts().len() == 1 {
        for (i, c) in constraints.iter().enumerate() {
            let mut on_line: Vec<LinearConstraint> = vec![
                LinearConstraint { strict: false, ..c.clone() },
                c.flipped_closed(),
            ];
            on_line.extend(constraints.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| c.clone()));
            if let Some(seg) = feasible_part(&polygon, &on_line) {
                // A strict line is only approached, never reached.
                candidates.extend(seg.vertices().iter().map(|v| (v.clone(), !c.strict)));
            }
        }
    } else if let Some(region) = feasible_part(&polygon, constraints) {
        let vs = region.vertices();
        candidates.extend(vs.iter().map(|v| (v.clone(), true)));
        let n = vs.len();
        let parts = obj.parts();
        for e in 0..n {
            let (u, v) = (&vs[e], &vs[(e + 1) % n]);
            if n == 1 {
                break;
            }
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    candidates.extend(balance_points(&parts[i], &parts[j], u, v).into_iter().map(|p| (p, true)));
                }
            }
        }
    }

    let mut best = on_pairs.best.clone();
    let mut attained = on_pairs.attained();
    for (p, reachable) in candidates {
        let Ok(val) = obj.eval_at(&p.k, &p.l) else { continue };
        if best.as_ref().is_none_or(|b| val < b.value) {
            best = Some(Best {
                value: val,
                pair: ExponentPair::new(p.k, p.l),
                word: None,
            });
            attained = reachable;
        }
    }
    let from_hull = best.as_ref().is_some_and(|b| b.word.is_none());
    let result = SearchResult {
        best,
        lower_bound: if from_hull { None } else { on_pairs.lower_bound.clone() },
        stats: on_pairs.stats.clone(),
        mode: on_pairs.mode,
        depth_limited: on_pairs.depth_limited || (from_hull && !attained),
    };
    Ok(HullResult { result, polygon, support_lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn z() -> Rational {
        Rational::zero()
    }

    #[test]
    fn hull_support_on_l() {
        let cfg = SearchConfig::default();
        let poly = hull_polygon(&[(z(), int(1))], &["I".to_string()], &cfg).unwrap();
        // l ≥ 1/2 already holds on the triangle.
        assert_eq!(poly, triangle_t().parts()[0]);
        let poly = hull_polygon(&[], &["I".to_string()], &cfg).unwrap();
        assert_eq!(poly, triangle_t().parts()[0]);
    }

    #[test]
    fn hull_support_on_k_plus_l() {
        let cfg = SearchConfig::default();
        let obj = MaxObjective::single(FracLinear::linear(int(1), int(1), z()));
        let mut c = cfg.clone();
        c.initial_pairs = vec!["I".into()];
        let res = optimize(&obj, &[], &c).unwrap();
        assert!(res.value().unwrap() <= &q(5, 6));
        let poly = hull_polygon(&[(int(1), int(1))], &["I".to_string()], &cfg).unwrap();
        assert!(poly.contains(&Pt::new(q(1, 6), q(2, 3))));
    }

    #[test]
    fn linear_k_over_hull() {
        let obj = MaxObjective::single(FracLinear::linear(int(1), z(), z()));
        let res = optimize_hull(&obj, &[], &SearchConfig::default()).unwrap();
        assert_eq!(res.result.value().unwrap(), &z());
    }

    #[test]
    fn balance_point_rational() {
        let f1 = FracLinear::linear(int(1), z(), z());
        let f2 = FracLinear::linear(z(), int(1), q(-1, 2));
        let pts = balance_points(&f1, &f2, &Pt::new(z(), int(1)), &Pt::new(q(1, 2), q(1, 2)));
        // k = 1 − k − 1/2 ⇒ k = 1/4
        assert_eq!(pts, vec![Pt::new(q(1, 4), q(3, 4))]);
    }
}
