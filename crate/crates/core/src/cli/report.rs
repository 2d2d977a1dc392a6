//! JSON encodings of engine results. Rationals are written as `"p/q"` strings
//! and object keys come out sorted, so equal results give equal bytes.

use serde_json::{json, Map, Value};

use crate::engine::{Disc, Multitype, OracleResult, QTypes, Score, TypeKind, TypeValue};
use crate::exact::scalar::*;
use crate::exact::ExactScalar;
use crate::geometry::{AxisVerdict, ConvexityVerdict};

pub fn scalar(q: &ExactScalar) -> Value {
    Value::String(fmt_scalar(q))
}

pub fn point(p: &[crate::exact::ExactComplex]) -> Value {
    Value::Array(p.iter().map(|z| Value::String(fmt_complex(z))).collect())
}

/// Coefficient lists `[c_0, c_1, …]` for each component.
pub fn disc(d: &Disc) -> Value {
    Value::Array(d.coefficient_lists().iter().map(|c| point(c)).collect())
}

fn opt_disc(d: Option<&Disc>) -> Value {
    d.map(disc).unwrap_or(Value::Null)
}

/// Inserts `value` or `bounds` for a type.
pub fn kind_into(kind: &TypeKind, obj: &mut Map<String, Value>) {
    match kind {
        TypeKind::Exact(v) => {
            obj.insert("value".into(), scalar(v));
        }
        TypeKind::Infinite => {
            obj.insert("value".into(), json!("inf"));
        }
        TypeKind::Bounds { lo, hi } => {
            let hi = hi.as_ref().map(scalar).unwrap_or_else(|| json!("inf"));
            obj.insert("bounds".into(), json!([scalar(lo), hi]));
        }
    }
}

/// Short text for comparing against expected values: `6`, `inf`, `[2, inf)`.
pub fn kind_text(kind: &TypeKind) -> String {
    kind.to_string()
}

pub fn type_value(t: &TypeValue, seed: u64) -> Value {
    let mut obj = Map::new();
    kind_into(&t.kind, &mut obj);
    obj.insert("witness".into(), opt_disc(t.witness.as_ref()));
    obj.insert("method".into(), json!(t.method.tag()));
    obj.insert("seed".into(), json!(seed));
    Value::Object(obj)
}

pub fn score(s: &Score) -> Value {
    match s {
        Score::Ratio(r) => scalar(r),
        Score::Unbounded { cap } => json!({ "unbounded_through": cap }),
    }
}

pub fn oracle(o: &OracleResult) -> Value {
    json!({
        "best": o.best.as_ref().map(score).unwrap_or(Value::Null),
        "witness": opt_disc(o.witness.as_ref()),
        "evaluated": o.evaluated,
        "exhausted": o.exhausted,
        "method": "jet_oracle",
    })
}

pub fn q_types(q: &QTypes) -> Value {
    let entries: Vec<Value> = q
        .values
        .iter()
        .map(|t| {
            let mut obj = Map::new();
            kind_into(&t.kind, &mut obj);
            obj.insert("witness".into(), opt_disc(t.witness.as_ref()));
            obj.insert("method".into(), json!(t.method.tag()));
            Value::Object(obj)
        })
        .collect();
    json!({
        "value": q.values.iter().map(|t| kind_text(&t.kind)).collect::<Vec<_>>(),
        "entries": entries,
        "seed": q.seed,
        "oracle": oracle(&q.oracle),
    })
}

pub fn multitype(m: &Multitype) -> Value {
    let v: Vec<Value> = m.entries.iter().map(|e| e.as_ref().map(scalar).unwrap_or_else(|| json!("inf"))).collect();
    json!({ "value": v, "method": "newton_fast_path" })
}

pub fn convexity(c: &ConvexityVerdict) -> Value {
    match c {
        ConvexityVerdict::Certified => json!({ "log_convex": "certified" }),
        ConvexityVerdict::Sampled { samples } => json!({ "log_convex": "sampled", "samples": samples }),
        ConvexityVerdict::NotConvex { point, minor, value } => json!({
            "log_convex": "violated",
            "at": point.iter().map(scalar).collect::<Vec<_>>(),
            "minor": minor.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "minor_value": scalar(value),
        }),
    }
}

pub fn axis(a: &AxisVerdict) -> Value {
    match a {
        AxisVerdict::Monotone { samples } => json!({ "monotone": true, "samples": samples }),
        AxisVerdict::Violated { point, derivative } => json!({
            "monotone": false,
            "at": point.iter().map(scalar).collect::<Vec<_>>(),
            "derivative": scalar(derivative),
        }),
    }
}
