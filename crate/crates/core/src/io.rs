//! Text formats: DIMACS `.col` graphs, ordering, precoloring and weight
//! files. All vertex ids in files are 1-indexed.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::{Precoloring, VertexOrdering, WeightFunction};
use crate::rational::{format_decimal, format_rational, parse_rational};

/// Largest vertex count accepted by the parsers.
pub const MAX_VERTICES: usize = 1 << 20;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

/// 1-indexed vertex id in `1..=n`, returned 0-indexed.
fn parse_vertex(tok: &str, n: usize, line: usize) -> Result<usize> {
    let v = parse_index(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

/// Parses DIMACS `.col` text: `c` comment lines, one `p edge n m` header
/// and `e u v` edge lines. Duplicate edges collapse; the edge count in the
/// header is not enforced.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if n.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                let fmt = toks.next().ok_or_else(|| parse_err(line, "missing format"))?;
                if fmt != "edge" && fmt != "col" {
                    return Err(parse_err(line, format!("unsupported format `{fmt}`")));
                }
                let nv = parse_index(
                    toks.next().ok_or_else(|| parse_err(line, "missing vertex count"))?,
                    line,
                    "vertex count",
                )?;
                parse_index(
                    toks.next().ok_or_else(|| parse_err(line, "missing edge count"))?,
                    line,
                    "edge count",
                )?;
                if toks.next().is_some() {
                    return Err(parse_err(line, "trailing tokens"));
                }
                if nv > MAX_VERTICES {
                    return Err(parse_err(line, format!("too many vertices ({nv})")));
                }
                n = Some(nv);
            }
            "e" => {
                let nv = n.ok_or_else(|| parse_err(line, "edge before problem line"))?;
                let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
                    return Err(parse_err(line, "expected `e u v`"));
                };
                let u = parse_vertex(a, nv, line)?;
                let v = parse_vertex(b, nv, line)?;
                if u == v {
                    return Err(parse_err(line, format!("self-loop on vertex {}", u + 1)));
                }
                edges.push((u, v));
            }
            other => return Err(parse_err(line, format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing problem line"))?;
    Graph::from_edges(n, edges)
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.num_edges());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

/// Ordering file: a whitespace-separated permutation of `1..=n`, leftmost
/// smallest. Line breaks are allowed.
pub fn parse_ordering(text: &str, n: usize) -> Result<VertexOrdering> {
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for (line, toks) in content_lines(text) {
        for tok in toks {
            let v = parse_vertex(tok, n, line)?;
            if seen[v] {
                return Err(parse_err(line, format!("vertex {} listed twice", v + 1)));
            }
            seen[v] = true;
            order.push(v);
        }
    }
    if order.len() != n {
        return Err(Error::InvalidOrdering(format!(
            "ordering lists {} vertices, graph has {n}",
            order.len()
        )));
    }
    VertexOrdering::from_order(order)
}

pub fn write_ordering(ord: &VertexOrdering) -> String {
    let ids: Vec<String> = ord.order().iter().map(|v| (v + 1).to_string()).collect();
    ids.join(" ") + "\n"
}

/// Precoloring file: lines `v c` with a 1-indexed vertex and a positive
/// color. Properness is checked against the graph by the caller.
pub fn parse_precoloring(text: &str, n: usize) -> Result<Precoloring> {
    let mut assignment = BTreeMap::new();
    for (line, toks) in content_lines(text) {
        let [v, c] = toks[..] else {
            return Err(parse_err(line, "expected `v c`"));
        };
        let v = parse_vertex(v, n, line)?;
        let c: u64 = c
            .parse()
            .map_err(|_| parse_err(line, format!("invalid color `{c}`")))?;
        if c == 0 {
            return Err(parse_err(line, "colors must be positive"));
        }
        if assignment.insert(v, c).is_some() {
            return Err(parse_err(line, format!("vertex {} precolored twice", v + 1)));
        }
    }
    Precoloring::new(assignment)
}

pub fn write_precoloring(rho: &Precoloring) -> String {
    let mut out = String::new();
    for (v, c) in rho.assignment() {
        writeln!(out, "{} {c}", v + 1).unwrap();
    }
    out
}

/// Weights file: lines `v w` with `w` a decimal or `p/q`; every vertex must
/// be listed exactly once.
pub fn parse_weights(text: &str, n: usize) -> Result<WeightFunction> {
    let mut weights = vec![None; n];
    for (line, toks) in content_lines(text) {
        let [v, w] = toks[..] else {
            return Err(parse_err(line, "expected `v w`"));
        };
        let v = parse_vertex(v, n, line)?;
        let w = parse_rational(w).map_err(|e| parse_err(line, e.to_string()))?;
        if weights[v].replace(w).is_some() {
            return Err(parse_err(line, format!("vertex {} weighted twice", v + 1)));
        }
    }
    let weights = weights
        .into_iter()
        .enumerate()
        .map(|(v, w)| w.ok_or_else(|| Error::InvalidWeights(format!("no weight for vertex {}", v + 1))))
        .collect::<Result<Vec<_>>>()?;
    WeightFunction::new(weights)
}

pub fn write_weights(w: &WeightFunction) -> String {
    let mut out = String::new();
    for v in 0..w.len() {
        let value = w.get(v);
        let text = format_decimal(value).unwrap_or_else(|| format_rational(value));
        writeln!(out, "{} {text}", v + 1).unwrap();
    }
    out
}

/// Vertex set file or argument: 1-indexed ids separated by whitespace or
/// commas, returned sorted and 0-indexed.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (line, toks) in content_lines(&text.replace(',', " ")) {
        for tok in toks {
            out.push(parse_vertex(tok, n, line)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
