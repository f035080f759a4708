//! JSON forms of auxiliary graphs, inequalities, points and reports.
//! Vertex ids are 1-indexed throughout, matching the DIMACS files.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::formulation::{Family, LinearInequality, PointVector, Sense, Var};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::rep::RepGraph;

fn json_err(message: impl Into<String>) -> Error {
    Error::Json(message.into())
}

/// `"u,v"` with 1-indexed ids.
pub fn var_key(v: &Var) -> String {
    format!("{},{}", v.tail + 1, v.head + 1)
}

pub fn parse_var_key(key: &str) -> Result<Var> {
    let bad = || json_err(format!("invalid variable key `{key}`"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let parse = |s: &str| -> Result<usize> {
        match s.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(bad()),
        }
    };
    Ok(Var::new(parse(a)?, parse(b)?))
}

fn rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| json_err(e.to_string())),
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| json_err(e.to_string())),
        other => Err(json_err(format!("expected a rational, found {other}"))),
    }
}

pub fn rep_graph_to_json(rep: &RepGraph) -> Value {
    let arcs: Vec<Value> = rep
        .arcs()
        .iter()
        .map(|a| json!([a.tail + 1, a.head + 1]))
        .collect();
    let edges: Vec<Value> = rep.edges().into_iter().map(|(i, j)| json!([i, j])).collect();
    json!({ "arcs": arcs, "edges": edges })
}

pub fn coeffs_to_json<'a>(coeffs: impl IntoIterator<Item = (&'a Var, &'a Rational)>) -> Value {
    let map: Map<String, Value> = coeffs
        .into_iter()
        .map(|(v, c)| (var_key(v), Value::String(format_rational(c))))
        .collect();
    Value::Object(map)
}

pub fn point_to_json(p: &PointVector) -> Value {
    coeffs_to_json(p)
}

pub fn point_from_json(text: &str) -> Result<PointVector> {
    let value: Value = serde_json::from_str(text).map_err(|e| json_err(e.to_string()))?;
    point_from_value(&value)
}

pub fn point_from_value(value: &Value) -> Result<PointVector> {
    let obj = value
        .as_object()
        .ok_or_else(|| json_err("point must be a JSON object"))?;
    let mut out = PointVector::new();
    for (k, v) in obj {
        if out.insert(parse_var_key(k)?, rational_value(v)?).is_some() {
            return Err(json_err(format!("coordinate `{k}` given twice")));
        }
    }
    Ok(out)
}

pub fn inequality_to_json(ineq: &LinearInequality) -> Value {
    json!({
        "family": ineq.family.tag(),
        "coeffs": coeffs_to_json(&ineq.coeffs),
        "sense": ineq.sense.symbol(),
        "rhs": format_rational(&ineq.rhs),
    })
}

pub fn inequality_from_json(text: &str) -> Result<LinearInequality> {
    let value: Value = serde_json::from_str(text).map_err(|e| json_err(e.to_string()))?;
    inequality_from_value(&value)
}

pub fn inequality_from_value(value: &Value) -> Result<LinearInequality> {
    let obj = value
        .as_object()
        .ok_or_else(|| json_err("inequality must be a JSON object"))?;
    for key in obj.keys() {
        if !["family", "coeffs", "sense", "rhs"].contains(&key.as_str()) {
            return Err(json_err(format!("unknown field `{key}`")));
        }
    }
    let family = match obj.get("family") {
        None => Family::Custom,
        Some(Value::String(tag)) => {
            Family::from_tag(tag).ok_or_else(|| json_err(format!("unknown family `{tag}`")))?
        }
        Some(other) => return Err(json_err(format!("family must be a string, found {other}"))),
    };
    let coeffs = point_from_value(obj.get("coeffs").ok_or_else(|| json_err("missing `coeffs`"))?)?;
    let sense = match obj.get("sense") {
        Some(Value::String(s)) => {
            Sense::parse(s).ok_or_else(|| json_err(format!("unknown sense `{s}`")))?
        }
        _ => return Err(json_err("missing or non-string `sense`")),
    };
    let rhs = rational_value(obj.get("rhs").ok_or_else(|| json_err("missing `rhs`"))?)?;
    Ok(LinearInequality::new(coeffs, sense, rhs, family))
}

/// Verification report.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub check: String,
    /// Graph description, typically the input path or a digest.
    pub graph: Value,
    /// 1-indexed ordering, leftmost smallest.
    pub ordering: Option<Vec<usize>>,
    pub result: bool,
    pub witnesses: Vec<Value>,
    pub seed: Option<u64>,
    /// False when a search was truncated by a cap.
    pub exhausted: bool,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "graph": self.graph,
            "ordering": self.ordering.as_ref().map(|o| o.iter().map(|v| v + 1).collect::<Vec<_>>()),
            "result": self.result,
            "witnesses": self.witnesses,
            "seed": self.seed,
            "exhausted": self.exhausted,
        })
    }
}
