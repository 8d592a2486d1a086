//! WebAssembly bindings for the clockblock browser demo.
//!
//! Three operations are exposed to the page: a space-time diagram for
//! one-dimensional rules, the full obstruction analysis as JSON, and the
//! clock reduction check as JSON. The plain Rust functions below do the
//! work; the `#[wasm_bindgen]` wrappers only convert errors.

use clockblock::ca::{Symbol, TorusConfig};
use clockblock::clock::{mod_reduction, verify_equivariance, EquivarianceReport};
use clockblock::cli::{analyze, parse_shapes};
use clockblock::rules::{build, parse_rule_spec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest torus budget the page may request.
pub const MAX_WEB_CAP: u64 = 1 << 20;

const MAX_CELLS: usize = 1 << 20;

/// How the first row of a space-time diagram is filled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitialRow {
    /// One cell set to 1 in the middle, the rest 0.
    Single,
    /// Uniform random symbols from a seed.
    Random(u64),
    /// Explicit cells; the width is their count.
    Cells(Vec<Symbol>),
}

impl InitialRow {
    pub fn parse(text: &str) -> Result<Self, String> {
        let text = text.trim();
        if text == "single" {
            return Ok(InitialRow::Single);
        }
        if let Some(seed) = text.strip_prefix("random:") {
            return seed
                .trim()
                .parse()
                .map(InitialRow::Random)
                .map_err(|_| format!("bad seed `{seed}`"));
        }
        text.split(',')
            .map(|t| t.trim().parse::<Symbol>().map_err(|_| format!("bad cell `{t}`")))
            .collect::<Result<Vec<_>, _>>()
            .map(InitialRow::Cells)
    }
}

/// Rows of the orbit of a one-dimensional rule, flattened row by row:
/// `steps + 1` rows of `width` cells.
pub fn spacetime_rows(spec: &str, width: usize, steps: usize, init: &str) -> Result<Vec<Symbol>, String> {
    let ca = build(&parse_rule_spec(spec).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if ca.dimension() != 1 {
        return Err(format!("space-time diagrams need a 1-d rule, {spec} has dimension {}", ca.dimension()));
    }
    let cells = match InitialRow::parse(init)? {
        InitialRow::Single => {
            let mut c = vec![0; width.max(1)];
            c[width / 2] = 1.min(ca.alphabet_size() as Symbol - 1);
            c
        }
        InitialRow::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..width.max(1))
                .map(|_| rng.gen_range(0..ca.alphabet_size()) as Symbol)
                .collect()
        }
        InitialRow::Cells(c) => c,
    };
    let width = cells.len();
    if width.saturating_mul(steps + 1) > MAX_CELLS {
        return Err(format!("diagram of {width}x{} cells is too large", steps + 1));
    }
    let x = TorusConfig::new(vec![width], cells).map_err(|e| e.to_string())?;
    ca.validate(&x).map_err(|e| e.to_string())?;
    let stepper = ca.stepper(&[width]).map_err(|e| e.to_string())?;
    let mut rows = Vec::with_capacity(width * (steps + 1));
    rows.extend_from_slice(x.cells());
    let mut next = vec![0; width];
    for t in 0..steps {
        let (done, _) = rows.split_at(width * (t + 1));
        stepper.step_into(&done[width * t..], &mut next);
        rows.extend_from_slice(&next);
    }
    Ok(rows)
}

fn parse_q(text: &str) -> Result<Vec<u64>, String> {
    if text.trim().is_empty() {
        return Ok(clockblock::cli::DEFAULT_Q.to_vec());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .ok()
                .filter(|&q| q >= 2)
                .ok_or_else(|| format!("bad modulus `{t}`"))
        })
        .collect()
}

/// Obstruction analysis as pretty JSON. Empty `q_list` or `shapes` fall
/// back to the CLI defaults.
pub fn analysis_json(spec: &str, q_list: &str, shapes: &str, cap: u64) -> Result<String, String> {
    let q = parse_q(q_list)?;
    let shapes = if shapes.trim().is_empty() {
        None
    } else {
        Some(parse_shapes(shapes).map_err(|e| e.to_string())?)
    };
    let report = analyze(spec, &q, shapes, cap.min(MAX_WEB_CAP)).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct FactorResult {
    m: u32,
    q: u32,
    refused: bool,
    reason: Option<String>,
    witness: Option<Vec<Symbol>>,
    verification: Option<EquivarianceReport>,
}

/// Builds `C_m -> C_q` and verifies it on configurations of length `width`.
/// A refusal (`q ∤ m`) is a normal result, not an error.
pub fn factor_json(m: u32, q: u32, width: usize) -> Result<String, String> {
    let result = match mod_reduction(m, q) {
        Ok(w) => {
            let report = verify_equivariance(&w, &[width.max(1)], MAX_WEB_CAP).map_err(|e| e.to_string())?;
            FactorResult {
                m,
                q,
                refused: false,
                reason: None,
                witness: Some(w.table().to_vec()),
                verification: Some(report),
            }
        }
        Err(e @ clockblock::Error::NotDivisible { .. }) => FactorResult {
            m,
            q,
            refused: true,
            reason: Some(e.to_string()),
            witness: None,
            verification: None,
        },
        Err(e) => return Err(e.to_string()),
    };
    serde_json::to_string_pretty(&result).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn spacetime(spec: &str, width: usize, steps: usize, init: &str) -> Result<Vec<u16>, JsValue> {
    spacetime_rows(spec, width, steps, init).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn alphabet_size(spec: &str) -> Result<u32, JsValue> {
    parse_rule_spec(spec)
        .and_then(|s| build(&s))
        .map(|ca| ca.alphabet_size())
        .map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(spec: &str, q_list: &str, shapes: &str, cap: f64) -> Result<String, JsValue> {
    analysis_json(spec, q_list, shapes, cap as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = factor)]
pub fn factor_js(m: u32, q: u32, width: usize) -> Result<String, JsValue> {
    factor_json(m, q, width).map_err(|e| JsValue::from_str(&e))
}
