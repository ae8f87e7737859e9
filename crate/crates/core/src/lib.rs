//! Exact minimisation of max-of-fractional-linear objectives over exponent
//! pairs generated from a catalog of initial pairs by the van der Corput
//! A and BA processes, under linear constraints.

pub mod applications;
pub mod config;
pub mod error;
pub mod geometry;
pub mod hull;
pub mod lp;
pub mod optimizer;
pub mod pairs;
pub mod plot;
pub mod projective;
pub mod rational;

pub use error::{Error, Result};
pub use geometry::{ConvexPolygon, Pt, Region};
pub use lp::{FracLinear, LinearConstraint, MaxObjective};
pub use optimizer::{greedy_optimize, optimize, SearchConfig, SearchResult};
pub use pairs::{ExponentPair, Letter, Word};
pub use rational::Rational;
