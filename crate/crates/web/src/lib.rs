//! WebAssembly bindings for the browser demo. Every export takes and returns
//! plain strings (DIMACS text in, JSON out); the `*_json` functions hold the
//! logic so they can be tested natively.

use domred_core::domset::{self, Domination};
use domred_core::reduction::{self, ReductionOutput, Role};
use domred_core::verify;
use domred_core::{CnfInstance, Graph, Parameter};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const GADGET_SPACING: f64 = 150.0;
const GADGET_RADIUS: f64 = 42.0;
const MARGIN: f64 = 70.0;
const GADGET_Y: f64 = 80.0;
const CLAUSE_Y: f64 = 260.0;
const ANCHOR_Y: f64 = 380.0;

#[derive(Serialize, Debug)]
pub struct Vertex {
    pub label: String,
    pub role: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Serialize, Debug)]
pub struct Layout {
    pub kind: Parameter,
    pub n: usize,
    pub m: usize,
    pub width: f64,
    pub height: f64,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(String, String)>,
}

#[derive(Serialize, Debug)]
pub struct MinimumSet {
    pub measure: &'static str,
    pub value: usize,
    pub set: Vec<String>,
    /// Variables set true by reading u_i ∈ D.
    pub decoded_true: Vec<u32>,
    pub decoded_satisfies: bool,
    pub satisfiable: bool,
}

fn parse_kind(kind: &str) -> Result<Parameter, String> {
    verify::parse_kind(kind).ok_or_else(|| format!("unknown kind '{kind}'"))
}

fn parse_cnf(dimacs: &str) -> Result<CnfInstance, String> {
    CnfInstance::parse_dimacs(dimacs).map_err(|e| e.to_string())
}

/// Offsets of the gadget vertices around the gadget centre, in the order of
/// `ReductionOutput::gadget`. Literals sit on the side facing the clauses.
fn gadget_offsets(kind: Parameter) -> Vec<(f64, f64)> {
    match kind {
        Parameter::Bondage | Parameter::Reinforcement => {
            [150.0f64, 90.0, 30.0, -30.0, -90.0, -150.0]
                .iter()
                .map(|deg| {
                    let a = deg.to_radians();
                    (a.cos(), a.sin())
                })
                .collect()
        }
        Parameter::TotalBondage | Parameter::TotalReinforcement => {
            vec![
                (-1.0, 1.0),
                (1.0, 1.0),
                (-0.6, 0.0),
                (0.6, 0.0),
                (0.0, -1.0),
            ]
        }
    }
}

fn spread(count: usize, width: f64) -> impl Iterator<Item = f64> {
    let step = width / (count as f64 + 1.0);
    (1..=count).map(move |i| step * i as f64)
}

pub fn layout_of(out: &ReductionOutput) -> Layout {
    let (n, m) = (out.n(), out.m());
    let width = (n.max(1) as f64 - 1.0) * GADGET_SPACING + 2.0 * MARGIN;
    let width = width.max(m as f64 * 50.0 + 2.0 * MARGIN);
    let left = (width - (n as f64 - 1.0) * GADGET_SPACING) / 2.0;
    let mut pos = std::collections::HashMap::new();
    for i in 1..=n {
        let cx = left + (i - 1) as f64 * GADGET_SPACING;
        for (label, (dx, dy)) in out.gadget(i).into_iter().zip(gadget_offsets(out.kind)) {
            pos.insert(
                label,
                (cx + dx * GADGET_RADIUS, GADGET_Y + dy * GADGET_RADIUS),
            );
        }
    }
    for (label, x) in out.clause_labels().iter().zip(spread(m, width)) {
        pos.insert(label.to_string(), (x, CLAUSE_Y));
    }
    let anchors = out.anchor_labels();
    for (label, x) in anchors.iter().zip(spread(anchors.len(), width)) {
        pos.insert(label.to_string(), (x, ANCHOR_Y));
    }
    let vertices = out
        .graph
        .labels()
        .iter()
        .map(|l| {
            let (x, y) = pos[l.as_str()];
            let role = out.role(l.as_str()).unwrap_or(Role::Anchor);
            Vertex {
                label: l.to_string(),
                role: role.to_string(),
                x,
                y,
            }
        })
        .collect();
    let edges = out
        .graph
        .edges()
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    Layout {
        kind: out.kind,
        n,
        m,
        width,
        height: ANCHOR_Y + MARGIN,
        vertices,
        edges,
    }
}

pub fn layout_json(kind: &str, dimacs: &str) -> Result<String, String> {
    let out = reduction::build(parse_kind(kind)?, &parse_cnf(dimacs)?);
    Ok(serde_json::to_string(&layout_of(&out)).expect("layout serializes"))
}

/// Applies each toggle: an existing edge is removed, a missing one added.
fn apply_toggles(g: &Graph, toggles: &[(String, String)]) -> Result<Graph, String> {
    let mut h = g.clone();
    for (a, b) in toggles {
        h = if h.has_edge(a, b) {
            h.remove_edges([(a, b)])
        } else {
            h.add_edges([(a, b)])
        }
        .map_err(|e| e.to_string())?;
    }
    Ok(h)
}

/// A minimum (total) dominating set of the gadget graph after toggling
/// `toggles_json`, a JSON array of label pairs.
pub fn minimum_set_json(kind: &str, dimacs: &str, toggles_json: &str) -> Result<String, String> {
    let kind = parse_kind(kind)?;
    let inst = parse_cnf(dimacs)?;
    let toggles: Vec<(String, String)> = if toggles_json.trim().is_empty() {
        Vec::new()
    } else {
        serde_json::from_str(toggles_json).map_err(|e| format!("bad edge list: {e}"))?
    };
    let out = reduction::build(kind, &inst);
    let g = apply_toggles(&out.graph, &toggles)?;
    let mode = kind.domination();
    let best = domset::minimum(&g, mode).map_err(|e| e.to_string())?;
    let decoded = reduction::witness_to_assignment(&out, &best.witness);
    let result = MinimumSet {
        measure: match mode {
            Domination::Plain => "gamma",
            Domination::Total => "gamma_t",
        },
        value: best.value,
        set: best.witness.iter().map(|l| l.to_string()).collect(),
        decoded_true: decoded.true_vars(),
        decoded_satisfies: inst.evaluate(&decoded).unwrap_or(false),
        satisfiable: inst.is_satisfiable(),
    };
    Ok(serde_json::to_string(&result).expect("result serializes"))
}

pub fn verify_json(kind: &str, dimacs: &str, deep: bool) -> Result<String, String> {
    let report = verify::verify(parse_kind(kind)?, &parse_cnf(dimacs)?, deep);
    Ok(report.to_json())
}

pub fn random_dimacs(n: usize, m: usize, seed: u64) -> Result<String, String> {
    CnfInstance::random(n, m, seed)
        .map(|inst| inst.to_dimacs())
        .map_err(|e| e.to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Gadget graph with drawing coordinates, as JSON.
#[wasm_bindgen]
pub fn layout(kind: &str, dimacs: &str) -> Result<String, JsError> {
    js(layout_json(kind, dimacs))
}

#[wasm_bindgen(js_name = minimumSet)]
pub fn minimum_set(kind: &str, dimacs: &str, toggles_json: &str) -> Result<String, JsError> {
    js(minimum_set_json(kind, dimacs, toggles_json))
}

#[wasm_bindgen(js_name = verifyReport)]
pub fn verify_report(kind: &str, dimacs: &str, deep: bool) -> Result<String, JsError> {
    js(verify_json(kind, dimacs, deep))
}

#[wasm_bindgen(js_name = randomInstance)]
pub fn random_instance(n: usize, m: usize, seed: u32) -> Result<String, JsError> {
    js(random_dimacs(n, m, seed as u64))
}
