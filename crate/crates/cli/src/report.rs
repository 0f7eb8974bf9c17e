//! Report assembly and canonical emission. JSON output uses sorted keys and
//! integer-only numbers, so byte-identical reruns are the contract; the text
//! format renders one table per step from the same data.

use serde_json::{json, Map, Value as Json};
use sha2::{Digest, Sha256};
use workbench_core::complex::Complex;
use workbench_core::module::{Length, ModuleMorphism, PresentedModule};
use workbench_core::seq::{MlVerdict, WindowVerdict};
use workbench_core::{Matrix, Result as CoreResult};

pub const REPORT_VERSION: u64 = 1;

pub struct StepRecord {
    pub label: String,
    pub op: String,
    pub result: Json,
    pub certificates: Json,
    pub micros: u128,
}

pub struct Report {
    pub scenario_hash: String,
    pub steps: Vec<StepRecord>,
}

impl Report {
    pub fn new(source_text: &str, steps: Vec<StepRecord>) -> Report {
        let mut hasher = Sha256::new();
        hasher.update(source_text.as_bytes());
        Report {
            scenario_hash: format!("{:x}", hasher.finalize()),
            steps,
        }
    }

    /// Canonical JSON: keys sorted, stable number formats; timing fields are
    /// omitted when `timings` is false.
    pub fn to_json(&self, timings: bool) -> Json {
        let steps: Vec<Json> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "label": s.label,
                    "op": s.op,
                    "result": s.result,
                    "certificates": s.certificates,
                })
            })
            .collect();
        let mut top = Map::new();
        top.insert("version".into(), json!(REPORT_VERSION));
        top.insert("scenario_hash".into(), json!(self.scenario_hash));
        top.insert("steps".into(), Json::Array(steps));
        if timings {
            let t: Map<String, Json> = self
                .steps
                .iter()
                .map(|s| (s.label.clone(), json!(s.micros as u64)))
                .collect();
            top.insert("timings".into(), Json::Object(t));
        }
        Json::Object(top)
    }

    pub fn emit_json(&self, timings: bool) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_json(timings)).expect("serializable");
        out.push('\n');
        out
    }

    pub fn emit_text(&self, timings: bool) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario {}\n", self.scenario_hash));
        for s in &self.steps {
            out.push_str(&format!("\n== {} ({})\n", s.label, s.op));
            render_value(&mut out, &s.result, 2);
            if !s.certificates.is_null() {
                out.push_str("  certificates:\n");
                render_value(&mut out, &s.certificates, 4);
            }
            if timings {
                out.push_str(&format!("  time: {}us\n", s.micros));
            }
        }
        out
    }
}

fn render_value(out: &mut String, v: &Json, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Json::Object(map) => {
            for (k, val) in map {
                match val {
                    Json::Object(_) | Json::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(out, val, indent + 2);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", json_string(val))),
                }
            }
        }
        Json::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                match val {
                    Json::Object(_) | Json::Array(_) => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render_value(out, val, indent + 2);
                    }
                    _ => out.push_str(&format!("{pad}[{i}] {}\n", json_string(val))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", json_string(other))),
    }
}

pub fn json_string(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Parses a report back; structural inverse of [`Report::emit_json`].
pub fn parse_report(text: &str) -> Result<Json, String> {
    let v: Json = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let version = v.get("version").and_then(Json::as_u64);
    if version != Some(REPORT_VERSION) {
        return Err(format!("unsupported report version {version:?}"));
    }
    if !v.get("steps").is_some_and(Json::is_array) {
        return Err("report has no steps array".into());
    }
    Ok(v)
}

// --- JSON descriptions of core values, canonical and re-parseable ---

pub fn describe_matrix(m: &Matrix) -> Json {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.ring().fmt_elem(m.at(i, j)))
                .collect()
        })
        .collect();
    json!(rows)
}

pub fn shape_json(m: &PresentedModule) -> CoreResult<Json> {
    let shape = m.canonical_shape()?;
    Ok(json!({
        "cover": shape.cover.to_string(),
        "divisors": shape
            .divisors
            .iter()
            .map(|d| shape.cover.fmt_elem(d))
            .collect::<Vec<_>>(),
        "free_rank": shape.free_rank,
        "description": shape.describe(m.ring()),
    }))
}

pub fn describe_module(m: &PresentedModule) -> CoreResult<Json> {
    Ok(json!({
        "ring": m.ring().to_string(),
        "generators": m.generators(),
        "relations": describe_matrix(m.relations()),
        "canonical": shape_json(m)?,
        "length": length_json(m.length()?),
    }))
}

pub fn describe_morphism(f: &ModuleMorphism) -> CoreResult<Json> {
    Ok(json!({
        "matrix": describe_matrix(f.matrix()),
        "source": shape_json(f.source())?,
        "target": shape_json(f.target())?,
    }))
}

pub fn describe_complex(c: &Complex) -> Json {
    let diffs: Vec<Json> = (c.lo()..c.hi())
        .map(|n| describe_matrix(&c.diff(n)))
        .collect();
    json!({
        "ring": c.ring().to_string(),
        "lo": c.lo(),
        "hi": c.hi(),
        "ranks": (c.lo()..=c.hi()).map(|n| c.rank(n)).collect::<Vec<_>>(),
        "differentials": diffs,
    })
}

/// Homology in canonical form for every degree in the window.
pub fn homology_table(c: &Complex) -> CoreResult<Json> {
    let mut rows = Vec::new();
    for n in c.lo()..=c.hi() {
        let h = c.homology(n)?;
        if h.module.is_zero_module()? {
            continue;
        }
        rows.push(json!({
            "degree": n,
            "module": shape_json(&h.module)?,
        }));
    }
    Ok(json!(rows))
}

pub fn length_json(l: Length) -> Json {
    match l {
        Length::Finite(n) => json!(n),
        Length::Infinite => json!("infinite"),
    }
}

pub fn verdict_json(v: WindowVerdict) -> Json {
    match v {
        WindowVerdict::StabilizedAt(n) => json!({ "stabilized_at": n }),
        WindowVerdict::NotByHorizon => json!("not_stabilized_by_horizon"),
    }
}

pub fn ml_json(v: MlVerdict) -> Json {
    match v {
        MlVerdict::MittagLeffler => json!("mittag_leffler"),
        MlVerdict::Undetermined => json!("undetermined"),
    }
}
