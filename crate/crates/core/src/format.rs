//! Text formats for instances, LP solutions and clusterings.
//!
//! Edge list:
//!
//! ```text
//! # comments start with '#'
//! cc complete 3
//! 0 1 +
//! 0 2 +
//! 1 2 -
//! ```
//!
//! The header is `cc complete <n>`, `cc kpartite <n> <p0,p1,...>` (part of
//! each vertex, comma or space separated) or `cc weighted <n> [ti]`. Labeled
//! lines are `u v <+|-|0>`; weighted lines are `u v <lambda+> [lambda-]`,
//! with `lambda-` defaulting to `1 - lambda+`. Every pair must appear once,
//! except that pairs inside a k-partite part may be omitted.
//!
//! JSON: `{"class", "n", "parts"?, "edges": [{"u", "v", "label" | "lplus" [, "lminus"]}], "flags": {"ti"}}`,
//! with `"lp"` accepted for `"lplus"`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::instance::{check_weights, EdgeData, GraphClass, Instance, Label};
use crate::lp::LpSolution;
use crate::pairs;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Reads either format, choosing JSON when the text starts with `{`.
pub fn parse_instance(text: &str) -> Result<Instance> {
    if text.trim_start().starts_with('{') {
        parse_instance_json(text)
    } else {
        parse_edge_list(text)
    }
}

struct Header {
    class: GraphClass,
    n: usize,
    parts: Option<Vec<usize>>,
    ti: bool,
}

fn parse_header(line: usize, tokens: &[&str]) -> Result<Header> {
    if tokens.first() != Some(&"cc") || tokens.len() < 3 {
        return Err(parse_err(line, "expected header `cc <class> <n> ...`"));
    }
    let class = GraphClass::from_name(tokens[1])
        .ok_or_else(|| parse_err(line, format!("unknown class `{}`", tokens[1])))?;
    let n: usize = tokens[2].parse().map_err(|_| parse_err(line, format!("bad vertex count `{}`", tokens[2])))?;
    let rest = &tokens[3..];
    let mut header = Header { class, n, parts: None, ti: false };
    match class {
        GraphClass::Complete => {
            if !rest.is_empty() {
                return Err(parse_err(line, "unexpected fields after complete header"));
            }
        }
        GraphClass::KPartite => {
            let parts = rest
                .iter()
                .flat_map(|t| t.split(','))
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("bad part id `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            if parts.len() != n {
                return Err(parse_err(line, format!("part assignment has {} entries, expected {n}", parts.len())));
            }
            header.parts = Some(parts);
        }
        GraphClass::WeightedComplete => match rest {
            [] => {}
            ["ti"] => header.ti = true,
            _ => return Err(parse_err(line, "weighted header takes only the optional flag `ti`")),
        },
    }
    Ok(header)
}

/// Collects pair data, rejecting duplicates and filling omitted intra-part
/// pairs of k-partite instances with neutral labels.
struct Builder {
    header: Header,
    edges: Vec<Option<EdgeData>>,
}

impl Builder {
    fn new(header: Header) -> Builder {
        let m = pairs::num_pairs(header.n);
        Builder { header, edges: vec![None; m] }
    }

    fn add(&mut self, u: usize, v: usize, e: EdgeData) -> std::result::Result<(), String> {
        let n = self.header.n;
        if u >= n || v >= n {
            return Err(format!("vertex out of range in pair ({u}, {v}) for n = {n}"));
        }
        if u == v {
            return Err(format!("self-loop ({u}, {u}) is not allowed"));
        }
        match (self.header.class, e) {
            (GraphClass::Complete, EdgeData::Label(Label::Plus | Label::Minus)) => {}
            (GraphClass::Complete, _) => return Err("complete instances take only + or - labels".into()),
            (GraphClass::KPartite, EdgeData::Label(l)) => {
                let parts = self.header.parts.as_ref().expect("k-partite header has parts");
                let same = parts[u] == parts[v];
                if same != (l == Label::Neutral) {
                    return Err(format!(
                        "pair ({u}, {v}) {} parts but is labeled {l}",
                        if same { "lies inside one of the" } else { "crosses" }
                    ));
                }
            }
            (GraphClass::KPartite, _) => return Err("k-partite instances take only labels".into()),
            (GraphClass::WeightedComplete, EdgeData::Weight { plus, minus }) => check_weights(plus, minus)?,
            (GraphClass::WeightedComplete, _) => return Err("weighted instances take numeric weights".into()),
        }
        let slot = &mut self.edges[pairs::index(n, u, v)];
        if slot.is_some() {
            return Err(format!("duplicate pair ({}, {})", u.min(v), u.max(v)));
        }
        *slot = Some(e);
        Ok(())
    }

    fn finish(self) -> Result<Instance> {
        let Header { class, n, parts, ti } = self.header;
        let mut edges = Vec::with_capacity(self.edges.len());
        for ((u, v), e) in pairs::iter(n).zip(self.edges) {
            let e = match (e, &parts) {
                (Some(e), _) => e,
                (None, Some(p)) if p[u] == p[v] => EdgeData::Label(Label::Neutral),
                (None, _) => return Err(Error::InvalidInstance(format!("pair ({u}, {v}) is missing"))),
            };
            edges.push(e);
        }
        match class {
            GraphClass::Complete => Instance::complete(n, edges.iter().map(|e| e.label().expect("checked")).collect()),
            GraphClass::KPartite => Instance::kpartite(
                parts.expect("k-partite header has parts"),
                edges.iter().map(|e| e.label().expect("checked")).collect(),
            ),
            GraphClass::WeightedComplete => Instance::weighted(n, edges.iter().map(|e| e.weights()).collect(), ti),
        }
    }
}

pub fn parse_edge_list(text: &str) -> Result<Instance> {
    let mut builder: Option<Builder> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(b) = builder.as_mut() else {
            builder = Some(Builder::new(parse_header(line, &tokens)?));
            continue;
        };
        if tokens.len() < 3 {
            return Err(parse_err(line, "expected `u v <label or weight>`"));
        }
        let vertex = |t: &str| t.parse::<usize>().map_err(|_| parse_err(line, format!("bad vertex `{t}`")));
        let (u, v) = (vertex(tokens[0])?, vertex(tokens[1])?);
        let e = if b.header.class == GraphClass::WeightedComplete {
            let num = |t: &str| {
                t.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| parse_err(line, format!("bad weight `{t}`")))
            };
            let plus = num(tokens[2])?;
            let minus = match tokens.get(3) {
                Some(t) => num(t)?,
                None => 1.0 - plus,
            };
            if tokens.len() > 4 {
                return Err(parse_err(line, "too many fields"));
            }
            EdgeData::Weight { plus, minus }
        } else {
            if tokens.len() > 3 {
                return Err(parse_err(line, "too many fields"));
            }
            let label = Label::from_symbol(tokens[2])
                .ok_or_else(|| parse_err(line, format!("bad label `{}`", tokens[2])))?;
            EdgeData::Label(label)
        };
        b.add(u, v, e).map_err(|msg| parse_err(line, msg))?;
    }
    builder.ok_or_else(|| parse_err(0, "missing header"))?.finish()
}

/// Writes the edge-list format. Weights use the shortest decimal form that
/// reads back to the same value.
pub fn serialize_instance(inst: &Instance) -> String {
    let n = inst.n();
    let mut out = format!("cc {} {n}", inst.class().name());
    if let Some(parts) = inst.parts() {
        let p: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
        out.push(' ');
        out.push_str(&p.join(","));
    }
    if inst.triangle_inequality() {
        out.push_str(" ti");
    }
    out.push('\n');
    for ((u, v), e) in pairs::iter(n).zip(inst.edges()) {
        match e {
            EdgeData::Label(l) => out.push_str(&format!("{u} {v} {l}\n")),
            EdgeData::Weight { plus, minus } => out.push_str(&format!("{u} {v} {plus:?} {minus:?}\n")),
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonInstance {
    class: String,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parts: Option<Vec<usize>>,
    edges: Vec<JsonEdge>,
    #[serde(default)]
    flags: Flags,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonEdge {
    u: usize,
    v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<Label>,
    #[serde(default, alias = "lp", skip_serializing_if = "Option::is_none")]
    lplus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lminus: Option<f64>,
}

#[derive(Default, Serialize, Deserialize)]
struct Flags {
    #[serde(default)]
    ti: bool,
}

pub fn parse_instance_json(text: &str) -> Result<Instance> {
    let j: JsonInstance = serde_json::from_str(text)?;
    let class = GraphClass::from_name(&j.class)
        .ok_or_else(|| Error::InvalidInstance(format!("unknown class `{}`", j.class)))?;
    if class == GraphClass::KPartite {
        match &j.parts {
            Some(p) if p.len() == j.n => {}
            _ => return Err(Error::InvalidInstance(format!("k-partite instance needs {} part ids", j.n))),
        }
    }
    let header = Header {
        class,
        n: j.n,
        parts: if class == GraphClass::KPartite { j.parts } else { None },
        ti: j.flags.ti,
    };
    let mut b = Builder::new(header);
    for (i, e) in j.edges.into_iter().enumerate() {
        let data = match (e.label, e.lplus, e.lminus) {
            (Some(l), None, None) => EdgeData::Label(l),
            (None, Some(plus), minus) => EdgeData::Weight { plus, minus: minus.unwrap_or(1.0 - plus) },
            _ => return Err(Error::InvalidInstance(format!("edge {i}: give either `label` or `lplus`"))),
        };
        b.add(e.u, e.v, data).map_err(|msg| Error::InvalidInstance(format!("edge {i}: {msg}")))?;
    }
    b.finish()
}

pub fn serialize_instance_json(inst: &Instance) -> String {
    let edges = pairs::iter(inst.n())
        .zip(inst.edges())
        .map(|((u, v), e)| match *e {
            EdgeData::Label(l) => JsonEdge { u, v, label: Some(l), lplus: None, lminus: None },
            EdgeData::Weight { plus, minus } => JsonEdge { u, v, label: None, lplus: Some(plus), lminus: Some(minus) },
        })
        .collect();
    let j = JsonInstance {
        class: inst.class().name().to_string(),
        n: inst.n(),
        parts: inst.parts().map(<[usize]>::to_vec),
        edges,
        flags: Flags { ti: inst.triangle_inequality() },
    };
    serde_json::to_string_pretty(&j).expect("instances serialize")
}

#[derive(Serialize)]
struct JsonSolution {
    n: usize,
    x: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    objective: Option<f64>,
}

/// `{n, x, objective}` with `x` as the full symmetric matrix.
pub fn serialize_lp_solution(x: &LpSolution, objective: Option<f64>) -> String {
    serde_json::to_string_pretty(&JsonSolution { n: x.n(), x: x.matrix(), objective }).expect("solutions serialize")
}

/// Reads `{n, x, objective?}` where `x` is the full matrix, the upper
/// triangle row by row (row `u` holding `x[u][u+1..]`), or a flat list in
/// pair order.
pub fn parse_lp_solution(text: &str) -> Result<(LpSolution, Option<f64>)> {
    let v: Value = serde_json::from_str(text)?;
    let bad = |msg: &str| Error::InvalidInstance(format!("LP solution: {msg}"));
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing `n`"))? as usize;
    let objective = v.get("objective").and_then(Value::as_f64);
    let x = v.get("x").and_then(Value::as_array).ok_or_else(|| bad("missing `x`"))?;
    let num = |e: &Value| e.as_f64().ok_or_else(|| bad("non-numeric entry"));
    let m = pairs::num_pairs(n);

    let values: Vec<f64> = if x.iter().all(Value::is_number) {
        x.iter().map(num).collect::<Result<_>>()?
    } else {
        let rows: Vec<Vec<f64>> = x
            .iter()
            .map(|r| r.as_array().ok_or_else(|| bad("mixed rows and numbers"))?.iter().map(num).collect())
            .collect::<Result<_>>()?;
        if rows.len() == n && rows.iter().all(|r| r.len() == n) {
            for u in 0..n {
                if rows[u][u].abs() > 1e-9 {
                    return Err(bad("nonzero diagonal"));
                }
                for w in u + 1..n {
                    if (rows[u][w] - rows[w][u]).abs() > 1e-9 {
                        return Err(bad("matrix is not symmetric"));
                    }
                }
            }
            pairs::iter(n).map(|(u, w)| rows[u][w]).collect()
        } else {
            let jagged = (0..n).all(|u| rows.get(u).map_or(u + 1 == n, |r| r.len() == n - 1 - u));
            if !jagged || rows.len() > n {
                return Err(bad("rows are neither an n x n matrix nor an upper triangle"));
            }
            rows.into_iter().flatten().collect()
        }
    };
    if values.len() != m {
        return Err(bad(&format!("expected {m} pair values, got {}", values.len())));
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(bad("non-finite value"));
    }
    Ok((LpSolution::from_pairs(n, values)?, objective))
}
