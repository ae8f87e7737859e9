//! Generations of pairs, the order ≺ and its Gray-code structure, and
//! polygonal covers of the pair set.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::pairs::{apply_operator, ExponentPair, Letter};
use crate::projective::ProjMatrix;
use crate::rational::{q, to_f64, Rational};

/// Default cap on generation depth (2²⁰ pairs).
pub const GENERATION_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pt {
    pub k: Rational,
    pub l: Rational,
}

impl Pt {
    pub fn new(k: Rational, l: Rational) -> Self {
        Pt { k, l }
    }

    pub fn of(p: &ExponentPair) -> Self {
        Pt { k: p.k.clone(), l: p.l.clone() }
    }

    pub fn map(&self, m: &ProjMatrix) -> Result<Pt> {
        let (k, l) = m.apply_affine(&self.k, &self.l)?;
        Ok(Pt { k, l })
    }
}

fn cross(o: &Pt, a: &Pt, b: &Pt) -> Rational {
    (&a.k - &o.k) * (&b.l - &o.l) - (&a.l - &o.l) * (&b.k - &o.k)
}

fn lex(a: &Pt, b: &Pt) -> Ordering {
    a.k.cmp(&b.k).then_with(|| a.l.cmp(&b.l))
}

/// Convex polygon with CCW vertices; may degenerate to a segment, a point,
/// or nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<Pt>,
}

impl ConvexPolygon {
    pub fn empty() -> Self {
        ConvexPolygon { vertices: Vec::new() }
    }

    /// Convex hull of the points (monotone chain, collinear points dropped).
    pub fn from_points(mut pts: Vec<Pt>) -> Self {
        pts.sort_by(lex);
        pts.dedup();
        if pts.len() <= 2 {
            return ConvexPolygon { vertices: pts };
        }
        let mut lower: Vec<Pt> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Pt> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexPolygon { vertices: lower }
    }

    /// Closed axis-aligned rectangle `[k0,k1]×[l0,l1]`.
    pub fn rect(k0: Rational, k1: Rational, l0: Rational, l1: Rational) -> Self {
        Self::from_points(vec![
            Pt::new(k0.clone(), l0.clone()),
            Pt::new(k1.clone(), l0),
            Pt::new(k1, l1.clone()),
            Pt::new(k0, l1),
        ])
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Nonzero area.
    pub fn is_solid(&self) -> bool {
        self.vertices.len() >= 3
    }

    pub fn contains(&self, p: &Pt) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0] == *p,
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                cross(a, b, p).is_zero()
                    && lex(a, p) != Ordering::Greater
                    && lex(p, b) != Ordering::Greater
            }
            n => (0..n).all(|i| !cross(&self.vertices[i], &self.vertices[(i + 1) % n], p).is_negative()),
        }
    }

    /// Projective image, re-hulled. Valid for the A/BA/B maps on subsets of
    /// the triangle, where the denominator stays positive.
    pub fn map(&self, m: &ProjMatrix) -> Result<Self> {
        let pts = self.vertices.iter().map(|v| v.map(m)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_points(pts))
    }

    pub fn bounding_box(&self) -> Self {
        if self.vertices.is_empty() {
            return Self::empty();
        }
        let kmin = self.vertices.iter().map(|v| &v.k).min().unwrap().clone();
        let kmax = self.vertices.iter().map(|v| &v.k).max().unwrap().clone();
        let lmin = self.vertices.iter().map(|v| &v.l).min().unwrap().clone();
        let lmax = self.vertices.iter().map(|v| &v.l).max().unwrap().clone();
        Self::rect(kmin, kmax, lmin, lmax)
    }

    /// Whether every vertex of `other` lies inside `self`.
    pub fn contains_polygon(&self, other: &ConvexPolygon) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }
}

/// Union of convex parts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Region {
    parts: Vec<ConvexPolygon>,
}

impl Region {
    pub fn new(parts: Vec<ConvexPolygon>) -> Self {
        Region { parts: parts.into_iter().filter(|p| !p.is_empty()).collect() }
    }

    pub fn parts(&self) -> &[ConvexPolygon] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, p: &Pt) -> bool {
        self.parts.iter().any(|part| part.contains(p))
    }

    pub fn map(&self, m: &ProjMatrix) -> Result<Self> {
        Ok(Region { parts: self.parts.iter().map(|p| p.map(m)).collect::<Result<_>>()? })
    }

    /// Number of parts with positive area.
    pub fn rectangles(&self) -> usize {
        self.parts.iter().filter(|p| p.is_solid()).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Pt> {
        self.parts.iter().flat_map(|p| p.vertices().iter())
    }
}

pub fn triangle_vertices() -> [Pt; 3] {
    [
        Pt::new(q(1, 2), q(1, 2)),
        Pt::new(q(0, 1), q(1, 1)),
        Pt::new(q(0, 1), q(1, 2)),
    ]
}

/// The closed triangle with vertices (1/2,1/2), (0,1), (0,1/2).
pub fn triangle_t() -> Region {
    Region::new(vec![ConvexPolygon::from_points(triangle_vertices().to_vec())])
}

/// Closures of `(0,1/6)×(2/3,1)` and `(1/6,1/2)×(1/2,2/3)` plus the corner
/// `(1/6,2/3)`; covers every pair generated from `(1/6,2/3)`.
pub fn lemma1_cover() -> Region {
    Region::new(vec![
        ConvexPolygon::rect(q(0, 1), q(1, 6), q(2, 3), q(1, 1)),
        ConvexPolygon::rect(q(1, 6), q(1, 2), q(1, 2), q(2, 3)),
        ConvexPolygon::from_points(vec![Pt::new(q(1, 6), q(2, 3))]),
    ])
}

/// Replaces every solid part by the bounding boxes of its A- and BA-images.
/// Point parts are the generators and are kept as they are; their images
/// are added only when no box already holds them.
///
/// The rule (bounding boxes of images) is one concrete way to obtain the
/// 4, 8, 16, … rectangle refinements; images of a cover of `Pp` under A and
/// BA together with `p` again cover `Pp`.
pub fn refine_cover(region: &Region, rounds: usize) -> Region {
    let mut cur = region.clone();
    let maps = [ProjMatrix::a(), ProjMatrix::ba()];
    for _ in 0..rounds {
        let mut solid = Vec::new();
        let mut points = Vec::new();
        let mut generators = Vec::new();
        for part in cur.parts() {
            if part.is_point() {
                generators.push(part.clone());
            }
            for m in &maps {
                let img = part.map(m).expect("A and BA keep the triangle finite");
                if img.is_solid() {
                    solid.push(img.bounding_box());
                } else {
                    points.push(img);
                }
            }
        }
        let mut parts = solid;
        for p in points {
            let inside = parts.iter().any(|s| s.is_solid() && s.contains_polygon(&p));
            if !inside {
                parts.push(p);
            }
        }
        parts.extend(generators);
        cur = Region::new(parts);
    }
    cur
}

/// All `2ⁿ` pairs `w(p)` for words `w` of length `n` over {A, BA}, in
/// lexicographic word order (A before BA, leftmost letter first).
#[derive(Clone, Debug)]
pub struct Generation {
    pub depth: usize,
    pub entries: Vec<(Vec<Letter>, ExponentPair)>,
}

pub fn generation(initial: &ExponentPair, n: usize) -> Result<Generation> {
    generation_capped(initial, n, GENERATION_CAP)
}

pub fn generation_capped(initial: &ExponentPair, n: usize, cap: usize) -> Result<Generation> {
    if n > cap {
        return Err(Error::DepthCap { depth: n, cap });
    }
    let mut entries = vec![(Vec::new(), ExponentPair { provenance: None, ..initial.clone() })];
    for _ in 0..n {
        let mut next = Vec::with_capacity(entries.len() * 2);
        for op in [Letter::A, Letter::BA] {
            for (w, p) in &entries {
                let mut word = Vec::with_capacity(w.len() + 1);
                word.push(op);
                word.extend_from_slice(w);
                next.push((word, apply_operator(op, p)));
            }
        }
        entries = next;
    }
    Ok(Generation { depth: n, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precedence {
    /// `p ≺ q`: `p.k < q.k` and `p.l > q.l`.
    Before,
    After,
    Neither,
}

pub fn precedes(p: &ExponentPair, q: &ExponentPair) -> Precedence {
    if p.k < q.k && p.l > q.l {
        Precedence::Before
    } else if p.k > q.k && p.l < q.l {
        Precedence::After
    } else {
        Precedence::Neither
    }
}

/// Binary-reflected Gray code over {A, BA}, leftmost letter most significant.
pub fn gray_order_words(n: usize) -> Vec<Vec<Letter>> {
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(words.len() * 2);
        for w in &words {
            let mut x = vec![Letter::A];
            x.extend_from_slice(w);
            next.push(x);
        }
        for w in words.iter().rev() {
            let mut x = vec![Letter::BA];
            x.extend_from_slice(w);
            next.push(x);
        }
        words = next;
    }
    words
}

/// Normalised `A·BA·Aⁿ(1/6,2/3) − (1/6,2/3)`.
pub fn tangent_direction(n: usize) -> (f64, f64) {
    let base = Pt::new(q(1, 6), q(2, 3));
    let mut letters = vec![Letter::A, Letter::BA];
    letters.extend(std::iter::repeat_n(Letter::A, n));
    tangent_of(&letters, &base)
}

/// Normalised `BA·BA·Aⁿ(1/6,2/3) − (1/6,2/3)`.
pub fn right_tangent_direction(n: usize) -> (f64, f64) {
    let base = Pt::new(q(1, 6), q(2, 3));
    let mut letters = vec![Letter::BA, Letter::BA];
    letters.extend(std::iter::repeat_n(Letter::A, n));
    tangent_of(&letters, &base)
}

fn tangent_of(letters: &[Letter], base: &Pt) -> (f64, f64) {
    let p = base.map(&crate::pairs::word_to_matrix(letters)).expect("word keeps the triangle");
    let dk = &p.k - &base.k;
    let dl = &p.l - &base.l;
    // Normalise through the exact ratio so tiny differences keep full precision.
    if dk.is_zero() {
        return (0.0, if dl.is_positive() { 1.0 } else { -1.0 });
    }
    let ratio = to_f64(&(&dl / &dk));
    let sign = if dk.is_positive() { 1.0 } else { -1.0 };
    let norm = (1.0 + ratio * ratio).sqrt();
    (sign / norm, sign * ratio / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::lookup;

    fn pair(k: Rational, l: Rational) -> ExponentPair {
        ExponentPair::new(k, l)
    }

    fn sixth() -> ExponentPair {
        pair(q(1, 6), q(2, 3))
    }

    #[test]
    fn generation_examples() {
        let g = generation(&pair(q(0, 1), q(1, 1)), 1).unwrap();
        assert!(g.entries[0].1.same_point(&pair(q(0, 1), q(1, 1))));
        assert!(g.entries[1].1.same_point(&pair(q(1, 2), q(1, 2))));
        let g = generation(&sixth(), 1).unwrap();
        assert!(g.entries[0].1.same_point(&pair(q(1, 14), q(11, 14))));
        assert!(g.entries[1].1.same_point(&pair(q(2, 7), q(4, 7))));
        let g = generation(&sixth(), 0).unwrap();
        assert_eq!(g.entries.len(), 1);
        assert!(g.entries[0].1.same_point(&sixth()));
        assert!(matches!(generation_capped(&sixth(), 5, 4), Err(Error::DepthCap { .. })));
    }

    #[test]
    fn precedes_examples() {
        assert_eq!(precedes(&pair(q(1, 14), q(11, 14)), &sixth()), Precedence::Before);
        assert_eq!(precedes(&sixth(), &pair(q(1, 14), q(11, 14))), Precedence::After);
        let p: crate::pairs::Word = "A BA A^4 H05".parse().unwrap();
        assert_eq!(precedes(&p.eval().unwrap(), &lookup("H05").unwrap()), Precedence::Neither);
        assert_eq!(precedes(&sixth(), &sixth()), Precedence::Neither);
    }

    #[test]
    fn gray_examples() {
        use Letter::{A, BA};
        assert_eq!(gray_order_words(1), vec![vec![A], vec![BA]]);
        assert_eq!(
            gray_order_words(2),
            vec![vec![A, A], vec![A, BA], vec![BA, BA], vec![BA, A]]
        );
        assert_eq!(
            gray_order_words(3),
            vec![
                vec![A, A, A],
                vec![A, A, BA],
                vec![A, BA, BA],
                vec![A, BA, A],
                vec![BA, BA, A],
                vec![BA, BA, BA],
                vec![BA, A, BA],
                vec![BA, A, A],
            ]
        );
    }

    #[test]
    fn triangle_contains_catalog_and_generations() {
        let t = triangle_t();
        let vs = t.parts()[0].vertices();
        assert_eq!(vs.len(), 3);
        for v in triangle_vertices() {
            assert!(vs.contains(&v));
        }
        for e in crate::pairs::catalog() {
            assert!(t.contains(&Pt::of(&e.pair)), "{}", e.label);
        }
        for (_, p) in generation(&sixth(), 6).unwrap().entries {
            assert!(t.contains(&Pt::of(&p)));
        }
    }

    #[test]
    fn lemma1_membership() {
        let cover = lemma1_cover();
        let p_prime = &cover.parts()[0];
        let p_second = &cover.parts()[1];
        for n in 1..=6 {
            for (w, p) in generation(&sixth(), n).unwrap().entries {
                let target = if w[0] == Letter::A { p_prime } else { p_second };
                assert!(target.contains(&Pt::of(&p)), "{w:?}");
            }
        }
        assert!(p_prime.contains(&Pt::of(&sixth())) && p_second.contains(&Pt::of(&sixth())));
    }

    #[test]
    fn refine_cover_counts_and_covers() {
        let base = lemma1_cover();
        assert_eq!(refine_cover(&base, 0), base);
        assert_eq!(refine_cover(&base, 1).rectangles(), 4);
        assert_eq!(refine_cover(&base, 2).rectangles(), 8);
        let r3 = refine_cover(&base, 3);
        assert_eq!(r3.rectangles(), 16);
        for n in 0..=8 {
            for (_, p) in generation(&sixth(), n).unwrap().entries {
                assert!(r3.contains(&Pt::of(&p)), "depth {n}");
            }
        }
    }

    #[test]
    fn hull_and_contains() {
        let poly = ConvexPolygon::from_points(vec![
            Pt::new(q(0, 1), q(0, 1)),
            Pt::new(q(1, 1), q(0, 1)),
            Pt::new(q(1, 2), q(0, 1)),
            Pt::new(q(0, 1), q(1, 1)),
            Pt::new(q(1, 4), q(1, 4)),
        ]);
        assert_eq!(poly.vertices().len(), 3);
        assert!(poly.contains(&Pt::new(q(1, 4), q(1, 4))));
        assert!(!poly.contains(&Pt::new(q(1, 1), q(1, 1))));
    }

    #[test]
    fn tangent_examples() {
        let s5 = 5f64.sqrt();
        let err = |n| {
            let (x, y) = tangent_direction(n);
            ((x + 2.0 / s5).powi(2) + (y - 1.0 / s5).powi(2)).sqrt()
        };
        // Aⁿ approaches (0,1) along a parabolic fixed point, so the error decays like 1/n.
        assert!(err(50) < 0.03);
        assert!(err(400) < err(50) / 4.0);
        let (x, y) = tangent_direction(1);
        assert!(x < 0.0 && y > 0.0);
        let (x, y) = right_tangent_direction(400);
        assert!(x > 0.0 && (y / x + 2.0).abs() < 0.05, "{x} {y}");
    }

}
