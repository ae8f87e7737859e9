//! JSON run configuration.
//!
//! ```json
//! {
//!   "objective": [{"num": ["1", "1", "0"], "den": ["3", "0", "3"]}],
//!   "constraints": [{"coeffs": ["-1", "1", "-3/5"], "rel": ">="}],
//!   "search": {"tolerance": "1/1000000000", "max_depth": 1000, "mode": "rigorous",
//!              "branch_order": "A", "initial_pairs": ["I", "H05"],
//!              "root_region": "lemma1:2", "objective_cuts": true,
//!              "hull_directions": [["0", "1"]]}
//! }
//! ```
//!
//! Coefficient triples are `[c_k, c_l, c_1]`. Numbers are strings holding
//! exact rationals (`"3/5"`, `"-2"`, `"0.125"`).

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geometry::triangle_t;
use crate::lp::{FracLinear, LinearConstraint, MaxObjective};
use crate::optimizer::{BranchOrder, Mode, SearchConfig};
use crate::pairs::lookup;
use crate::rational::{parse_rational, Rational};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    objective: Vec<RawPart>,
    #[serde(default)]
    constraints: Vec<RawConstraint>,
    #[serde(default)]
    search: RawSearch,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPart {
    num: Vec<String>,
    den: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstraint {
    coeffs: Vec<String>,
    rel: String,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSearch {
    tolerance: Option<String>,
    max_depth: Option<usize>,
    mode: Option<String>,
    branch_order: Option<String>,
    initial_pairs: Option<Vec<String>>,
    root_region: Option<String>,
    objective_cuts: Option<bool>,
    hull_directions: Option<Vec<Vec<String>>>,
}

fn cfg_err(field: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Config { field: field.into(), msg: msg.into() }
}

fn rational(field: &str, s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| cfg_err(field, format!("not a rational: `{s}`")))
}

fn triple(field: &str, v: &[String]) -> Result<[Rational; 3]> {
    if v.len() != 3 {
        return Err(cfg_err(field, format!("expected 3 coefficients, got {}", v.len())));
    }
    Ok([
        rational(&format!("{field}[0]"), &v[0])?,
        rational(&format!("{field}[1]"), &v[1])?,
        rational(&format!("{field}[2]"), &v[2])?,
    ])
}

/// Parses a root region name: `triangle`, `lemma1` or `lemma1:N`.
pub fn parse_root_region(s: &str) -> Result<crate::geometry::Region> {
    match s.split_once(':') {
        None if s == "triangle" => Ok(triangle_t()),
        None if s == "lemma1" => Ok(SearchConfig::lemma1_root(0)),
        Some(("lemma1", n)) => {
            let n: usize = n.parse().map_err(|_| cfg_err("search.root_region", format!("bad round count `{n}`")))?;
            Ok(SearchConfig::lemma1_root(n))
        }
        _ => Err(cfg_err("search.root_region", format!("unknown region `{s}`"))),
    }
}

pub fn parse_config(text: &str) -> Result<(MaxObjective, Vec<LinearConstraint>, SearchConfig)> {
    let raw: RawConfig = serde_json::from_str(text)
        .map_err(|e| cfg_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;

    let mut parts = Vec::with_capacity(raw.objective.len());
    for (i, p) in raw.objective.iter().enumerate() {
        let num = triple(&format!("objective[{i}].num"), &p.num)?;
        let den = triple(&format!("objective[{i}].den"), &p.den)?;
        parts.push(FracLinear::new(num, den).map_err(|e| cfg_err(format!("objective[{i}]"), e.to_string()))?);
    }
    let obj = MaxObjective::new(parts).map_err(|e| cfg_err("objective", e.to_string()))?;

    let mut constraints = Vec::with_capacity(raw.constraints.len());
    for (i, c) in raw.constraints.iter().enumerate() {
        let [a, b, g] = triple(&format!("constraints[{i}].coeffs"), &c.coeffs)?;
        let lc = match c.rel.as_str() {
            ">=" => LinearConstraint::new(a, b, g, false),
            ">" => LinearConstraint::new(a, b, g, true),
            "<=" => LinearConstraint::new(-a, -b, -g, false),
            "<" => LinearConstraint::new(-a, -b, -g, true),
            other => return Err(cfg_err(format!("constraints[{i}].rel"), format!("unknown relation `{other}`"))),
        };
        constraints.push(lc);
    }

    let s = raw.search;
    let mut config = SearchConfig::default();
    if let Some(t) = s.tolerance {
        config.tolerance = rational("search.tolerance", &t)?;
    }
    if let Some(d) = s.max_depth {
        config.max_depth = d;
    }
    if let Some(m) = s.mode {
        config.mode = match m.as_str() {
            "rigorous" => Mode::Rigorous,
            "greedy" => Mode::Greedy,
            other => return Err(cfg_err("search.mode", format!("unknown mode `{other}`"))),
        };
    }
    if let Some(b) = s.branch_order {
        config.branch_order = match b.as_str() {
            "A" | "a_first" => BranchOrder::AFirst,
            "BA" | "ba_first" => BranchOrder::BaFirst,
            other => return Err(cfg_err("search.branch_order", format!("unknown order `{other}`"))),
        };
    }
    if let Some(labels) = s.initial_pairs {
        for (i, l) in labels.iter().enumerate() {
            lookup(l).map_err(|e| cfg_err(format!("search.initial_pairs[{i}]"), e.to_string()))?;
        }
        config.initial_pairs = labels;
    }
    if let Some(r) = s.root_region {
        config.root_region = parse_root_region(&r)?;
    }
    if let Some(c) = s.objective_cuts {
        config.objective_cuts = c;
    }
    if let Some(dirs) = s.hull_directions {
        let mut out = Vec::with_capacity(dirs.len());
        for (i, d) in dirs.iter().enumerate() {
            let f = format!("search.hull_directions[{i}]");
            if d.len() != 2 {
                return Err(cfg_err(f, "expected [alpha, beta]"));
            }
            out.push((rational(&f, &d[0])?, rational(&f, &d[1])?));
        }
        config.hull_directions = Some(out);
    }
    if config.tolerance <= Rational::from_integer(0.into()) {
        return Err(cfg_err("search.tolerance", "must be positive"));
    }
    config.validate()?;
    Ok((obj, constraints, config))
}
