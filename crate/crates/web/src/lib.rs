//! wasm-bindgen bindings for the static page in `www/`.

use exppairs::applications::{mu_sigma, xi, ReportRow};
use exppairs::optimizer::SearchConfig;
use exppairs::pairs::{lookup, Word};
use exppairs::plot::generations_svg;
use exppairs::rational::{fmt_decimal, fmt_rational, parse_rational, to_f64, Rational};
use exppairs::ExponentPair;
use serde_json::json;
use wasm_bindgen::prelude::*;

fn rational(s: &str, what: &str) -> Result<Rational, String> {
    parse_rational(s.trim()).ok_or_else(|| format!("{what}: not a rational: `{s}`"))
}

fn initial_pair(s: &str) -> Result<ExponentPair, String> {
    let s = s.trim();
    if let Some((k, l)) = s.split_once(',') {
        let p = ExponentPair::new(rational(k, "k")?, rational(l, "l")?);
        return if p.in_triangle() { Ok(p) } else { Err(format!("{p} is outside the triangle")) };
    }
    if let Ok(p) = lookup(s) {
        return Ok(p);
    }
    let w: Word = s.parse().map_err(|e: exppairs::Error| e.to_string())?;
    w.eval().map_err(|e| e.to_string())
}

/// SVG scatter of generations `1..=depth` of the pair given as a catalog
/// label, a finite word or `k,l`.
pub fn plot(initial: &str, depth: u32) -> Result<String, String> {
    if depth > 12 {
        return Err("depth above 12 is too heavy for the page".into());
    }
    let p = initial_pair(initial)?;
    generations_svg(&p, depth as usize).map_err(|e| e.to_string())
}

/// Exact value of a finite word, or the approximate fixed point of an
/// infinite one.
pub fn evaluate(word: &str) -> Result<String, String> {
    let w: Word = word.parse().map_err(|e: exppairs::Error| e.to_string())?;
    let out = if w.is_finite() {
        let p = w.eval().map_err(|e| e.to_string())?;
        let (kf, lf) = p.to_f64();
        json!({
            "word": w.to_string(), "exact": true,
            "k": fmt_rational(&p.k), "l": fmt_rational(&p.l), "eps": p.eps,
            "k_decimal": kf, "l_decimal": lf,
        })
    } else {
        let a = w.eval_approx(&SearchConfig::default().tolerance).map_err(|e| e.to_string())?;
        let (kf, lf) = a.pair.to_f64();
        json!({
            "word": w.to_string(), "exact": false,
            "k": fmt_decimal(&a.pair.k, 12), "l": fmt_decimal(&a.pair.l, 12), "eps": a.pair.eps,
            "k_decimal": kf, "l_decimal": lf, "error_bound": fmt_decimal(&a.error_bound, 15),
        })
    };
    Ok(out.to_string())
}

fn row_json(row: &ReportRow) -> String {
    json!({
        "label": row.label,
        "value": row.value_text(),
        "value_decimal": to_f64(&row.value),
        "attained": row.attained,
        "word": row.word.as_ref().map(|w| w.to_string()),
        "pair": row.pair.to_string(),
        "calls": row.stats.total(),
        "machine": row.machine_line(),
    })
    .to_string()
}

/// Runs the optimizer on `xi` (params `a,b`) or `mu` (param `sigma`).
pub fn solve(problem: &str, params: &str, depth: u32) -> Result<String, String> {
    let cfg = SearchConfig::default().with_depth(depth.clamp(1, 1000) as usize);
    let row = match problem {
        "xi" => {
            let (a, b) = params.split_once(',').ok_or("expected a,b")?;
            let a: u32 = a.trim().parse().map_err(|_| "a must be a positive integer")?;
            let b: u32 = b.trim().parse().map_err(|_| "b must be a positive integer")?;
            xi(a, b, &cfg)
        }
        "mu" => mu_sigma(&rational(params, "sigma")?, &cfg),
        other => return Err(format!("unknown problem `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    Ok(row_json(&row))
}

#[wasm_bindgen(js_name = plotGenerations)]
pub fn plot_generations(initial: &str, depth: u32) -> Result<String, JsValue> {
    plot(initial, depth).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = evaluateWord)]
pub fn evaluate_word(word: &str) -> Result<String, JsValue> {
    evaluate(word).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = optimize)]
pub fn optimize(problem: &str, params: &str, depth: u32) -> Result<String, JsValue> {
    solve(problem, params, depth).map_err(|e| JsValue::from_str(&e))
}
