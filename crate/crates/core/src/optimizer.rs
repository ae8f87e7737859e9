//! Depth-first branch and bound over words in {A, BA}.
//!
//! A node carries the accumulated matrix `M` of its word. The pairs below the
//! node are `M(P)`, which lie inside `M(V)` for the root cover `V ⊇ P`. At each
//! node the catalog images `M(p₀)` are tried as candidates, the node is closed
//! when its region cannot beat the incumbent by more than the tolerance, and
//! each child is entered only when its region still meets the constraints
//! together with the cuts `θᵢ < r`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{triangle_t, ConvexPolygon, Pt, Region};
use crate::lp::{
    check_all, feasible, feasible_region, theta_bounds, LinearConstraint, MaxObjective,
};
use crate::pairs::{catalog, catalog_labels, lookup, ExponentPair, Letter, Word};
use crate::projective::{mu, ProjMatrix};
use crate::rational::{q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchOrder {
    AFirst,
    BaFirst,
}

impl BranchOrder {
    fn letters(self) -> [Letter; 2] {
        match self {
            BranchOrder::AFirst => [Letter::A, Letter::BA],
            BranchOrder::BaFirst => [Letter::BA, Letter::A],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Rigorous,
    Greedy,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Rigorous => "rigorous",
            Mode::Greedy => "greedy",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub tolerance: Rational,
    pub max_depth: usize,
    /// Must contain every pair; the triangle by default.
    pub root_region: Region,
    pub branch_order: BranchOrder,
    pub mode: Mode,
    pub initial_pairs: Vec<String>,
    /// Add `θᵢ < r` to the constraints before testing a child.
    pub objective_cuts: bool,
    /// Directions for the outer hull polygon; `None` derives them from a sample.
    pub hull_directions: Option<Vec<(Rational, Rational)>>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            tolerance: q(1, 1_000_000_000),
            max_depth: 1000,
            root_region: triangle_t(),
            branch_order: BranchOrder::AFirst,
            mode: Mode::Rigorous,
            initial_pairs: catalog_labels().into_iter().map(String::from).collect(),
            objective_cuts: true,
            hull_directions: None,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tolerance < Rational::zero() {
            return Err(Error::Config { field: "tolerance".into(), msg: "must be nonnegative".into() });
        }
        if self.max_depth == 0 {
            return Err(Error::Config { field: "max_depth".into(), msg: "must be at least 1".into() });
        }
        if self.initial_pairs.is_empty() {
            return Err(Error::Config { field: "initial_pairs".into(), msg: "empty".into() });
        }
        for label in &self.initial_pairs {
            lookup(label)?;
        }
        Ok(())
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.max_depth = depth;
        self
    }

    pub fn with_tolerance(mut self, tol: Rational) -> Self {
        self.tolerance = tol;
        self
    }

    /// The two cover rectangles plus every catalog point and `(1/2,1/2)`, refined
    /// `rounds` times. Covers the whole pair set since it is closed under
    /// `R ↦ A(R) ∪ BA(R) ∪ P₀` up to containment.
    pub fn lemma1_root(rounds: usize) -> Region {
        let mut parts = crate::geometry::lemma1_cover().parts().to_vec();
        let mut extra: Vec<Pt> = catalog().iter().map(|e| Pt::of(&e.pair)).collect();
        extra.push(Pt::new(q(1, 2), q(1, 2)));
        for p in extra {
            parts.push(ConvexPolygon::from_points(vec![p]));
        }
        crate::geometry::refine_cover(&Region::new(parts), rounds)
    }
}

/// Number of calls of the search routine per recursion depth.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CallStats {
    pub per_depth: Vec<u64>,
}

impl CallStats {
    fn record(&mut self, depth: usize) {
        if self.per_depth.len() <= depth {
            self.per_depth.resize(depth + 1, 0);
        }
        self.per_depth[depth] += 1;
    }

    pub fn total(&self) -> u64 {
        self.per_depth.iter().sum()
    }

    pub fn deepest(&self) -> usize {
        self.per_depth.len().saturating_sub(1)
    }
}

impl fmt::Display for CallStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .per_depth
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(d, n)| format!("{d}:{n}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct Best {
    pub value: Rational,
    pub pair: ExponentPair,
    /// `None` for points of the hull approximation that are not words.
    pub word: Option<Word>,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// `None` when nothing satisfies the constraints.
    pub best: Option<Best>,
    /// Certified lower bound on the infimum, unless the depth cap was hit
    /// (see `depth_limited`).
    pub lower_bound: Option<Rational>,
    pub stats: CallStats,
    pub mode: Mode,
    /// Some branch was cut by `max_depth` rather than closed by the bounds.
    pub depth_limited: bool,
}

impl SearchResult {
    pub fn is_feasible(&self) -> bool {
        self.best.is_some()
    }

    pub fn value(&self) -> Option<&Rational> {
        self.best.as_ref().map(|b| &b.value)
    }

    /// The value is the exact infimum and is attained at the witness.
    pub fn attained(&self) -> bool {
        match (&self.best, &self.lower_bound) {
            (Some(b), Some(lo)) => *lo >= b.value && !self.depth_limited,
            _ => false,
        }
    }
}

struct Problem<'a> {
    obj: &'a MaxObjective,
    constraints: &'a [LinearConstraint],
    config: &'a SearchConfig,
    initials: Vec<(String, ExponentPair)>,
}

struct State {
    best: Option<Best>,
    frontier_lower: Option<Rational>,
    stats: CallStats,
    depth_limited: bool,
}

impl State {
    fn r(&self) -> Option<&Rational> {
        self.best.as_ref().map(|b| &b.value)
    }

    fn note_frontier(&mut self, lo: Rational) {
        if self.frontier_lower.as_ref().is_none_or(|f| lo < *f) {
            self.frontier_lower = Some(lo);
        }
    }
}

enum NodeOutcome {
    /// Node closed by bounds, infeasibility, tolerance or depth.
    Closed,
    /// Children may still hold improvements.
    Open,
}

impl<'a> Problem<'a> {
    fn new(obj: &'a MaxObjective, constraints: &'a [LinearConstraint], config: &'a SearchConfig) -> Result<Self> {
        config.validate()?;
        let initials = config
            .initial_pairs
            .iter()
            .map(|l| Ok((l.clone(), lookup(l)?)))
            .collect::<Result<Vec<_>>>()?;
        // Objective must be defined on the root region.
        theta_bounds(obj, &config.root_region)?;
        Ok(Problem { obj, constraints, config, initials })
    }

    /// Steps 1–2: candidates, then the closing tests.
    fn visit(&self, st: &mut State, matrix: &ProjMatrix, path: &[Letter]) -> Result<NodeOutcome> {
        let depth = path.len();
        st.stats.record(depth);

        // The triangle corner (1/2,1/2) = BA·(0,1) is a pair too; trying it here
        // catches witnesses sitting exactly at a corner of the node region.
        let corner = (depth < self.config.max_depth)
            .then(|| self.initials.iter().find(|(label, _)| label == "I"))
            .flatten()
            .map(|(label, p0)| (label, p0, matrix.mul(&Letter::BA.matrix()), true));
        let candidates = self
            .initials
            .iter()
            .map(|(label, p0)| (label, p0, matrix.clone(), false))
            .chain(corner);
        for (label, p0, matrix, via_corner) in candidates {
            let img = matrix.apply(&mu(&p0.k, &p0.l))?;
            let (k, l) = crate::projective::mu_inv(&img)?;
            if !check_all(self.constraints, &k, &l) {
                continue;
            }
            let t = match self.obj.eval_at(&k, &l) {
                Ok(t) => t,
                Err(Error::SingularEvaluation(..)) => continue,
                Err(e) => return Err(e),
            };
            if st.r().is_none_or(|r| t < *r) {
                let mut letters = path.to_vec();
                if via_corner {
                    letters.push(Letter::BA);
                }
                let word = Word::new(letters, label.clone());
                st.best = Some(Best {
                    value: t,
                    pair: ExponentPair { k, l, eps: p0.eps, provenance: Some(word.clone()) },
                    word: Some(word),
                });
            }
        }

        let region = self.config.root_region.map(matrix)?;
        let live = feasible_region(&region, self.constraints);
        let Some(bounds) = theta_bounds(self.obj, &live)? else {
            return Ok(NodeOutcome::Closed);
        };
        let lo = bounds.lower;
        if let Some(r) = st.r() {
            if lo >= *r {
                return Ok(NodeOutcome::Closed);
            }
            if r - &lo < self.config.tolerance {
                st.note_frontier(lo);
                return Ok(NodeOutcome::Closed);
            }
        }
        if depth >= self.config.max_depth {
            st.note_frontier(lo);
            st.depth_limited = true;
            return Ok(NodeOutcome::Closed);
        }
        Ok(NodeOutcome::Open)
    }

    /// Constraints a child region must meet (Step 3).
    fn child_constraints(&self, st: &State) -> Vec<LinearConstraint> {
        let mut lc = self.constraints.to_vec();
        if self.config.objective_cuts {
            if let Some(r) = st.r() {
                lc.extend(self.obj.cuts(r));
            }
        }
        lc
    }

    fn child_region(&self, matrix: &ProjMatrix) -> Result<Region> {
        self.config.root_region.map(matrix)
    }

    fn finish(self, st: State) -> SearchResult {
        let lower_bound = match (&st.best, st.frontier_lower) {
            (Some(b), Some(f)) => Some(if f < b.value { f } else { b.value.clone() }),
            (Some(b), None) => Some(b.value.clone()),
            (None, f) => f,
        };
        SearchResult {
            best: st.best,
            lower_bound,
            stats: st.stats,
            mode: self.config.mode,
            depth_limited: st.depth_limited,
        }
    }
}

fn fresh_state() -> State {
    State { best: None, frontier_lower: None, stats: CallStats::default(), depth_limited: false }
}

/// Rigorous search: the returned value is within `tolerance` of the infimum
/// over the pair set (unless `depth_limited`).
pub fn optimize(obj: &MaxObjective, constraints: &[LinearConstraint], config: &SearchConfig) -> Result<SearchResult> {
    if config.mode == Mode::Greedy {
        return greedy_optimize(obj, constraints, config);
    }
    let problem = Problem::new(obj, constraints, config)?;
    let mut st = fresh_state();

    // Explicit stack; a child's feasibility is tested when it is popped, i.e.
    // after its elder sibling's subtree has tightened r.
    enum Task {
        Visit(ProjMatrix, Vec<Letter>),
        Child(ProjMatrix, Vec<Letter>),
    }
    let mut stack = vec![Task::Visit(ProjMatrix::identity(), Vec::new())];
    while let Some(task) = stack.pop() {
        let (matrix, path) = match task {
            Task::Visit(m, p) => (m, p),
            Task::Child(m, p) => {
                let lc = problem.child_constraints(&st);
                if !feasible(&problem.child_region(&m)?, &lc) {
                    continue;
                }
                (m, p)
            }
        };
        if let NodeOutcome::Open = problem.visit(&mut st, &matrix, &path)? {
            for letter in config.branch_order.letters().into_iter().rev() {
                let mut child_path = path.clone();
                child_path.push(letter);
                stack.push(Task::Child(matrix.mul(&letter.matrix()), child_path));
            }
        }
    }
    Ok(problem.finish(st))
}

/// Single path down the tree. Children that miss the constraints (with the
/// objective cuts) are dropped; of the rest the one with the smaller region
/// lower bound is taken, ties going by branch order. The value is an upper
/// bound on the rigorous one.
pub fn greedy_optimize(obj: &MaxObjective, constraints: &[LinearConstraint], config: &SearchConfig) -> Result<SearchResult> {
    let problem = Problem::new(obj, constraints, config)?;
    let mut st = fresh_state();
    let mut matrix = ProjMatrix::identity();
    let mut path = Vec::new();
    loop {
        if let NodeOutcome::Closed = problem.visit(&mut st, &matrix, &path)? {
            break;
        }
        let lc = problem.child_constraints(&st);
        let mut choice: Option<(Rational, ProjMatrix, Letter)> = None;
        for letter in config.branch_order.letters() {
            let m = matrix.mul(&letter.matrix());
            let region = problem.child_region(&m)?;
            if !feasible(&region, &lc) {
                continue;
            }
            let live = feasible_region(&region, constraints);
            let Some(b) = theta_bounds(obj, &live)? else { continue };
            if choice.as_ref().is_none_or(|(lo, _, _)| b.lower < *lo) {
                choice = Some((b.lower, m, letter));
            }
        }
        let Some((_, m, letter)) = choice else { break };
        matrix = m;
        path.push(letter);
    }
    let mut res = problem.finish(st);
    res.mode = Mode::Greedy;
    // A single path certifies nothing about the other branches.
    res.lower_bound = None;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::FracLinear;
    use crate::rational::int;

    fn z() -> Rational {
        Rational::zero()
    }

    fn sec5() -> MaxObjective {
        MaxObjective::new(vec![
            FracLinear::linear(q(11, 10), z(), z()),
            FracLinear::linear(z(), int(1), q(-1, 2)),
        ])
        .unwrap()
    }

    fn mu_problem(sigma: Rational) -> (MaxObjective, Vec<LinearConstraint>) {
        let obj = MaxObjective::single(FracLinear::linear(q(1, 2), q(1, 2), -&sigma / int(2)));
        let lc = vec![LinearConstraint::new(int(-1), int(1), -sigma, false)];
        (obj, lc)
    }

    #[test]
    fn section5_example() {
        let res = optimize(&sec5(), &[], &SearchConfig::default()).unwrap();
        let best = res.best.as_ref().unwrap();
        assert_eq!(best.value, q(176, 1025));
        assert_eq!(best.word.as_ref().unwrap().to_string(), "H05");
        assert!(res.attained());
    }

    #[test]
    fn mu_three_fifths() {
        let (obj, lc) = mu_problem(q(3, 5));
        let res = optimize(&obj, &lc, &SearchConfig::default()).unwrap();
        assert_eq!(res.value().unwrap(), &q(1409, 12170));
    }

    #[test]
    fn mu_four_fifths() {
        let (obj, lc) = mu_problem(q(4, 5));
        let res = optimize(&obj, &lc, &SearchConfig::default()).unwrap();
        assert_eq!(res.value().unwrap(), &q(3, 71));
    }

    #[test]
    fn infeasible_reports_none() {
        let obj = MaxObjective::single(FracLinear::linear(int(1), z(), z()));
        let lc = vec![LinearConstraint::new(int(1), z(), int(-1), false)];
        let res = optimize(&obj, &lc, &SearchConfig::default()).unwrap();
        assert!(!res.is_feasible());
        let res = greedy_optimize(&obj, &lc, &SearchConfig::default()).unwrap();
        assert!(!res.is_feasible());
    }

    #[test]
    fn greedy_linear_k() {
        let obj = MaxObjective::single(FracLinear::linear(int(1), z(), z()));
        let res = greedy_optimize(&obj, &[], &SearchConfig::default()).unwrap();
        assert_eq!(res.value().unwrap(), &z());
        assert_eq!(res.mode, Mode::Greedy);
    }

    #[test]
    fn greedy_not_better_than_rigorous() {
        let (obj, lc) = mu_problem(q(3, 5));
        let cfg = SearchConfig::default();
        let g = greedy_optimize(&obj, &lc, &cfg).unwrap();
        assert!(g.value().unwrap() >= &q(1409, 12170));
    }

    #[test]
    fn node_matrices_are_reduced() {
        let mut m = ProjMatrix::identity();
        for i in 0..200 {
            let l = if i % 3 == 0 { Letter::BA } else { Letter::A };
            m = m.mul(&l.matrix());
            assert!(m.is_reduced());
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = SearchConfig::default();
        cfg.max_depth = 0;
        assert!(optimize(&sec5(), &[], &cfg).is_err());
        let mut cfg = SearchConfig::default();
        cfg.initial_pairs = vec!["X".into()];
        assert!(matches!(optimize(&sec5(), &[], &cfg), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn stats_format() {
        let s = CallStats { per_depth: vec![1, 2, 0, 4] };
        assert_eq!(s.to_string(), "0:1,1:2,3:4");
        assert_eq!(s.total(), 7);
    }

    #[test]
    fn lemma1_root_gives_same_value() {
        let (obj, lc) = mu_problem(q(3, 5));
        let mut cfg = SearchConfig::default();
        cfg.root_region = SearchConfig::lemma1_root(1);
        let res = optimize(&obj, &lc, &cfg).unwrap();
        assert_eq!(res.value().unwrap(), &q(1409, 12170));
    }
}
