//! JSON certificates. Every ball-local verdict carries the radius it was
//! checked at.

use num_traits::ToPrimitive;
use semicover_core::cover::{DescentState, Reduction, TorsionReport};
use semicover_core::covering::CoveringNumberResult;
use semicover_core::order::WitnessReport;
use semicover_core::{BitSet, ConeSet, CoverPair, DescentOutcome, Element, GroupModel, Status, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::formats::{format_element, ConeSpec};

pub fn status_name(s: Status) -> &'static str {
    match s {
        Status::Verified => "verified",
        Status::Counterexample => "counterexample",
        Status::Inconclusive => "inconclusive",
    }
}

/// One named verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub status: &'static str,
    pub radius: u32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
}

impl Check {
    pub fn new(model: &GroupModel, name: &str, v: &Verdict) -> Self {
        Check {
            check: name.into(),
            status: status_name(v.status),
            radius: v.radius_checked,
            witness: elements(model, &v.witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "verified"
    }
}

pub fn elements(model: &GroupModel, xs: &[Element]) -> Vec<String> {
    xs.iter().map(|x| format_element(model, x)).collect()
}

pub fn cone(model: &GroupModel, c: &ConeSet) -> Value {
    serde_json::to_value(ConeSpec::from_cone(model, c)).expect("cone specs serialize")
}

pub fn checks<'a>(model: &GroupModel, vs: impl IntoIterator<Item = (&'a str, &'a Verdict)>) -> Vec<Check> {
    vs.into_iter().map(|(n, v)| Check::new(model, n, v)).collect()
}

pub fn all_pass(cs: &[Check]) -> bool {
    cs.iter().all(Check::passed)
}

pub fn cover(c: &CoverPair) -> Value {
    json!({
        "model": c.model.name(),
        "radius": c.radius,
        "A": cone(&c.model, &c.a),
        "B": cone(&c.model, &c.b),
        "checks": checks(&c.model, c.flags.verdicts()),
    })
}

pub fn reduction(model: &GroupModel, r: &Reduction) -> Value {
    json!({
        "intersection": elements(model, &r.class.intersection),
        "intersection_side": match r.class.side {
            semicover_core::cover::Side::A => "A",
            semicover_core::cover::Side::B => "B",
        },
        "oriented_swap": r.oriented_swap,
        "duality_swap": r.duality_swap,
        "cover": cover(&r.cover),
        "lemma_checks": checks(model, [
            ("coset_saturation", &r.coset_saturation),
            ("inverse_duality", &r.cover.flags.inverse_duality),
            ("difference_closure", &r.difference_closure),
        ]),
    })
}

pub fn descent(model: &GroupModel, d: &DescentState) -> Value {
    let history: Vec<Value> = d
        .history
        .iter()
        .map(|s| json!({"g": format_element(model, &s.g), "h": format_element(model, &s.h)}))
        .collect();
    let (outcome, kernel) = match &d.outcome {
        DescentOutcome::NormalFound(n) => ("normal_found", cone(model, n)),
        DescentOutcome::DepthExceeded => ("depth_exceeded", Value::Null),
    };
    json!({
        "steps": d.step,
        "already_normal": d.already_normal(),
        "outcome": outcome,
        "history": history,
        "kernel": kernel,
        "cover": cover(&d.current),
    })
}

pub fn witness_report(model: &GroupModel, r: &WitnessReport) -> Vec<Check> {
    checks(model, r.verdicts())
}

pub fn bits(b: &BitSet) -> Vec<usize> {
    b.to_vec()
}

pub fn big(x: &num_bigint::BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub fn covering_number(r: &CoveringNumberResult) -> Value {
    json!({
        "group_id": r.group_id,
        "sigma_g": r.sigma_g,
        "sigma_s": r.sigma_s,
        "method": r.method.name(),
        "witness_cover": r.witness_cover.iter().map(bits).collect::<Vec<_>>(),
        "cross_check": r.cross_check.as_ref().map(|c| json!({
            "method": c.method.name(),
            "sigma_s": c.sigma,
            "witness_cover": c.witness_cover.iter().map(bits).collect::<Vec<_>>(),
            "agrees": Some(c.sigma) == Some(r.sigma_s),
        })),
    })
}

pub fn torsion(model: &GroupModel, t: &TorsionReport) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "generator": format_element(model, &s.generator),
                "order": s.order,
                "inverse_witness": s.inverse_witness.as_ref().map(|w| format_element(model, w)),
            })
        })
        .collect();
    json!({
        "steps": steps,
        "obstructed": t.obstructed,
        "conclusion": if t.obstructed { "no two-subsemigroup cover exists" } else { "generators of infinite order; no obstruction" },
        "exhaustive_covers_found": t.exhaustive_covers,
    })
}

/// Renders a JSON report as indented text. Objects shaped like a [`Check`]
/// print as `name: at radius r status`.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, None, &mut out);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn render_check(o: &serde_json::Map<String, Value>) -> Option<String> {
    let name = o.get("check")?.as_str()?;
    let status = o.get("status")?.as_str()?;
    let radius = o.get("radius")?;
    let mut s = format!("{name}: at radius {radius} {status}");
    if let Some(Value::Array(w)) = o.get("witness") {
        let w: Vec<String> = w.iter().map(scalar).collect();
        s.push_str(&format!(" witness [{}]", w.join(", ")));
    }
    Some(s)
}

fn render(v: &Value, depth: usize, key: Option<&str>, out: &mut String) {
    let pad = "  ".repeat(depth);
    let label = match key {
        Some("-") => "-".to_string(),
        Some(k) => format!("{k}:"),
        None => String::new(),
    };
    match v {
        Value::Object(o) => {
            if let Some(line) = render_check(o) {
                out.push_str(&format!("{pad}{line}\n"));
                return;
            }
            if key.is_some() {
                out.push_str(&format!("{pad}{label}\n"));
            }
            let d = if key.is_some() { depth + 1 } else { depth };
            for (k, child) in o {
                render(child, d, Some(k), out);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let items: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{pad}{label} [{}]\n", items.join(", ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{label}\n"));
            for item in items {
                render(item, depth + 1, Some("-"), out);
            }
        }
        other => out.push_str(&format!("{pad}{label} {}\n", scalar(other))),
    }
}
