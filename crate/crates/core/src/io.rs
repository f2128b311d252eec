//! Plain-text instances and JSON reports.
//!
//! The instance format is line based:
//!
//! ```text
//! c optional comment
//! p bond <n> <m>
//! v <id> <weight>
//! e <u> <v> <multiplicity>
//! ```
//!
//! Vertex identifiers run from 1 to n. Weights are non-negative integers,
//! decimals such as `0.25`, or fractions `p/q`; a vertex without a `v` line
//! weighs 1. `m` counts the `e` lines, and repeated lines for the same pair
//! add up their multiplicities.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::driver::{LayerKind, PeelEvent, Solution};
use crate::error::{Error, Result};
use crate::multigraph::{VertexId, WeightedMultigraph};
use crate::Weight;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Parses `12`, `0.75` or `3/4` exactly.
pub fn parse_weight(s: &str) -> Result<Weight> {
    let bad = || Error::InvalidParams(format!("malformed weight {s:?}"));
    let w = if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Weight::new(p, q)
    } else if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = int.abs() * &scale + frac;
        Weight::new(if negative { -magnitude } else { magnitude }, scale)
    } else {
        Weight::from_integer(s.parse().map_err(|_| bad())?)
    };
    if w.is_negative() {
        return Err(Error::InvalidParams(format!("negative weight {s:?}")));
    }
    Ok(w)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_weight(w: &Weight) -> String {
    if w.is_integer() {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

/// Decimal rendering truncated towards zero after `digits` places.
pub fn format_decimal(w: &Weight, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (w.numer() * &scale) / w.denom();
    let negative = scaled.is_negative();
    let scaled = scaled.abs();
    let int = &scaled / &scale;
    let frac = &scaled % &scale;
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0>width$}", width = digits as usize)
    }
}

/// Splits a line into tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_instance(text: &str) -> Result<WeightedMultigraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut weights: BTreeMap<u32, (Weight, usize)> = BTreeMap::new();
    let mut edges: Vec<(u32, u32, u32)> = Vec::new();
    let mut last_line = 0;

    for (idx, line) in text.lines().enumerate() {
        let ln = idx + 1;
        last_line = ln;
        let toks = tokens(line);
        let Some(&(col, tag)) = toks.first() else { continue };
        if tag == "c" {
            continue;
        }
        let arity = |n: usize| -> Result<()> {
            if toks.len() != n + 1 {
                let column = toks.get(n + 1).map_or(line.len() + 1, |t| t.0);
                return Err(parse_error(ln, column, format!("`{tag}` lines take {n} fields")));
            }
            Ok(())
        };
        let number = |k: usize| -> Result<u64> {
            let (c, s) = toks[k];
            s.parse::<u64>()
                .map_err(|_| parse_error(ln, c, format!("expected a non-negative integer, found {s:?}")))
        };
        match tag {
            "p" => {
                arity(3)?;
                if header.is_some() {
                    return Err(parse_error(ln, col, "duplicate problem line"));
                }
                if toks[1].1 != "bond" {
                    return Err(parse_error(ln, toks[1].0, "problem tag must be `bond`"));
                }
                let n = number(2)? as usize;
                if n > u32::MAX as usize - 1 {
                    return Err(parse_error(ln, toks[2].0, "too many vertices"));
                }
                header = Some((n, number(3)? as usize));
            }
            "v" | "e" => {
                let Some((n, _)) = header else {
                    return Err(parse_error(ln, col, "problem line must come first"));
                };
                let id = |k: usize| -> Result<u32> {
                    let x = number(k)?;
                    if x == 0 || x > n as u64 {
                        return Err(parse_error(ln, toks[k].0, format!("vertex {x} is outside 1..={n}")));
                    }
                    Ok(x as u32)
                };
                if tag == "v" {
                    arity(2)?;
                    let v = id(1)?;
                    let w = parse_weight(toks[2].1)
                        .map_err(|e| parse_error(ln, toks[2].0, e.to_string()))?;
                    if weights.insert(v, (w, ln)).is_some() {
                        return Err(parse_error(ln, toks[1].0, format!("vertex {v} has two weights")));
                    }
                } else {
                    arity(3)?;
                    let (a, b) = (id(1)?, id(2)?);
                    if a == b {
                        return Err(parse_error(ln, toks[2].0, format!("self-loop at vertex {a}")));
                    }
                    let m = number(3)?;
                    if m == 0 || m > u64::from(u32::MAX) {
                        return Err(parse_error(ln, toks[3].0, "multiplicity must be a positive 32-bit integer"));
                    }
                    edges.push((a, b, m as u32));
                }
            }
            other => return Err(parse_error(ln, col, format!("unknown line type {other:?}"))),
        }
    }

    let Some((n, m)) = header else {
        return Err(parse_error(last_line.max(1), 1, "missing problem line"));
    };
    if edges.len() != m {
        return Err(parse_error(
            last_line.max(1),
            1,
            format!("header announces {m} edge lines, found {}", edges.len()),
        ));
    }
    let mut g = WeightedMultigraph::new();
    for i in 1..=n as u32 {
        let w = weights.remove(&i).map_or_else(|| Weight::from_integer(1.into()), |(w, _)| w);
        g.add_vertex(VertexId(i), w)?;
    }
    for (a, b, m) in edges {
        let total = g.multiplicity(VertexId(a), VertexId(b)).checked_add(m);
        if total.is_none() {
            return Err(Error::InvalidParams(format!("multiplicity overflow between {a} and {b}")));
        }
        g.add_edge(VertexId(a), VertexId(b), m)?;
    }
    Ok(g)
}

/// Relabels vertices to 1..=n in identifier order. Returns the new graph and
/// the map from new to old identifiers.
pub fn canonicalize(g: &WeightedMultigraph) -> (WeightedMultigraph, BTreeMap<VertexId, VertexId>) {
    let old: Vec<VertexId> = g.vertices().collect();
    let new_of: BTreeMap<VertexId, VertexId> = old
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, VertexId(i as u32 + 1)))
        .collect();
    let mut out = WeightedMultigraph::new();
    for &v in &old {
        out.add_vertex(new_of[&v], g.weight(v).clone()).expect("fresh identifiers");
    }
    for (a, b, m) in g.edges() {
        out.add_edge(new_of[&a], new_of[&b], m).expect("endpoints exist");
    }
    (out, new_of.into_iter().map(|(o, n)| (n, o)).collect())
}

/// Writes `g`, whose identifiers must be exactly 1..=n.
pub fn serialize_instance(g: &WeightedMultigraph) -> Result<String> {
    let n = g.vertex_count();
    if g.vertices().enumerate().any(|(i, v)| v.0 as usize != i + 1) {
        return Err(Error::Precondition(
            "identifiers must be 1..=n; canonicalize the graph first".into(),
        ));
    }
    let mut out = String::new();
    writeln!(out, "p bond {n} {}", g.pair_count()).unwrap();
    for v in g.vertices() {
        writeln!(out, "v {v} {}", format_weight(g.weight(v))).unwrap();
    }
    for (a, b, m) in g.edges() {
        writeln!(out, "e {a} {b} {m}").unwrap();
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactNumber {
    pub fraction: String,
    pub decimal: String,
}

impl From<&Weight> for ExactNumber {
    fn from(w: &Weight) -> Self {
        ExactNumber { fraction: format_weight(w), decimal: format_decimal(w, 6) }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EventSummary {
    pub replacements: usize,
    pub model_layers: usize,
    pub cluster_layers: usize,
    pub zero_layers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub solution: Vec<u32>,
    pub weight: ExactNumber,
    pub realized_alpha: ExactNumber,
    pub iterations: usize,
    pub events: EventSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt: Option<ExactNumber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<ExactNumber>,
}

impl SolveReport {
    pub fn new(solution: &Solution, opt: Option<&Weight>) -> Self {
        let mut events = EventSummary::default();
        for e in &solution.trace.events {
            match e {
                PeelEvent::Replacement(_) => events.replacements += 1,
                PeelEvent::Layer { kind: LayerKind::Model, .. } => events.model_layers += 1,
                PeelEvent::Layer { kind: LayerKind::Clusters, .. } => events.cluster_layers += 1,
                PeelEvent::Layer { kind: LayerKind::Zero, .. } => events.zero_layers += 1,
            }
        }
        let ratio = opt.map(|o| ratio(&solution.weight, o));
        SolveReport {
            solution: solution.cover.iter().map(|v| v.0).collect(),
            weight: (&solution.weight).into(),
            realized_alpha: solution.realized_alpha().into(),
            iterations: solution.trace.events.len(),
            events,
            opt: opt.map(Into::into),
            ratio: ratio.as_ref().map(Into::into),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// alg / opt, taken as 1 when both are zero. A zero optimum with a positive
/// algorithm weight has no finite ratio; the algorithm weight is returned.
pub fn ratio(alg: &Weight, opt: &Weight) -> Weight {
    match (alg.is_zero(), opt.is_zero()) {
        (true, true) => Weight::from_integer(1.into()),
        (false, true) => alg.clone(),
        _ => alg / opt,
    }
}
