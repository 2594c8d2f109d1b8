//! Line-oriented graph files.
//!
//! ```text
//! # comment
//! graph <n> <d1> <d2>
//! edge <u> <v> <w>
//! ```
//!
//! Weights are decimals or fractions `p/q` in `(0, 1]`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed line: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("missing `graph <n> <d1> <d2>` header")]
    MissingHeader,
    #[error("line {line}: {n} vertices cannot be split as {d1}x{d2}")]
    DimensionMismatch { line: usize, n: usize, d1: usize, d2: usize },
    #[error("line {line}: vertex {vertex} out of range [0, {n})")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: weight {weight} outside (0, 1]")]
    WeightOutOfRange { line: usize, weight: f64 },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::MissingHeader => None,
            ParseError::Malformed { line, .. }
            | ParseError::DimensionMismatch { line, .. }
            | ParseError::VertexOutOfRange { line, .. }
            | ParseError::SelfLoop { line, .. }
            | ParseError::WeightOutOfRange { line, .. }
            | ParseError::DuplicateEdge { line, .. } => Some(*line),
        }
    }
}

fn malformed(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        reason: reason.into(),
    }
}

fn parse_index(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| malformed(line, format!("{what} `{tok}` is not a non-negative integer")))
}

fn parse_weight(tok: &str, line: usize) -> Result<f64, ParseError> {
    let bad = || malformed(line, format!("weight `{tok}` is not a number"));
    let w = match tok.split_once('/') {
        Some((p, q)) => {
            let p: u64 = p.parse().map_err(|_| bad())?;
            let q: u64 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(malformed(line, "zero denominator"));
            }
            p as f64 / q as f64
        }
        None => {
            // reject inf/nan spellings that f64::from_str accepts
            if !tok.bytes().all(|b| b.is_ascii_digit() || b".+-eE".contains(&b)) {
                return Err(bad());
            }
            tok.parse::<f64>().map_err(|_| bad())?
        }
    };
    if !(w > 0.0 && w <= 1.0) {
        return Err(ParseError::WeightOutOfRange { line, weight: w });
    }
    Ok(w)
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match (toks[0], graph.as_mut()) {
            ("graph", None) => {
                if toks.len() != 4 {
                    return Err(malformed(line, "expected `graph <n> <d1> <d2>`"));
                }
                let n = parse_index(toks[1], line, "vertex count")?;
                let d1 = parse_index(toks[2], line, "d1")?;
                let d2 = parse_index(toks[3], line, "d2")?;
                if n == 0 || d1 * d2 != n {
                    return Err(ParseError::DimensionMismatch { line, n, d1, d2 });
                }
                graph = Some(Graph::new(d1, d2).expect("n > 0"));
            }
            ("graph", Some(_)) => return Err(malformed(line, "second `graph` header")),
            ("edge", None) => return Err(ParseError::MissingHeader),
            ("edge", Some(g)) => {
                if toks.len() != 4 {
                    return Err(malformed(line, "expected `edge <u> <v> <w>`"));
                }
                let u = parse_index(toks[1], line, "vertex")?;
                let v = parse_index(toks[2], line, "vertex")?;
                let w = parse_weight(toks[3], line)?;
                g.add_edge(u, v, w).map_err(|e| match e {
                    GraphError::VertexOutOfRange { vertex, n } => {
                        ParseError::VertexOutOfRange { line, vertex, n }
                    }
                    GraphError::SelfLoop(vertex) => ParseError::SelfLoop { line, vertex },
                    GraphError::DuplicateEdge(u, v) => ParseError::DuplicateEdge { line, u, v },
                    GraphError::WeightOutOfRange(weight) => {
                        ParseError::WeightOutOfRange { line, weight }
                    }
                    other => malformed(line, other.to_string()),
                })?;
            }
            (kw, _) => return Err(malformed(line, format!("unknown keyword `{kw}`"))),
        }
    }
    graph.ok_or(ParseError::MissingHeader)
}

/// Text form of a graph that [`parse_graph`] reads back to an equal value.
pub fn to_text(g: &Graph) -> String {
    let mut out = format!("graph {} {} {}\n", g.n(), g.d1(), g.d2());
    for e in g.edges() {
        writeln!(out, "edge {} {} {}", e.u, e.v, format_weight(e.w)).unwrap();
    }
    out
}

const MAX_DENOMINATOR: u64 = 1_000_000;

/// `p/q` when some fraction with `q <= 10^6` parses to exactly `w`, otherwise
/// 12 significant digits, falling back to the shortest exact decimal when 12
/// digits would not read back to the same value.
pub fn format_weight(w: f64) -> String {
    if w == 1.0 {
        return "1".to_owned();
    }
    if let Some((p, q)) = exact_fraction(w) {
        return format!("{p}/{q}");
    }
    let short = format!("{:.11e}", w);
    match short.parse::<f64>() {
        Ok(x) if x == w => trim_sci(&short),
        _ => format!("{w}"),
    }
}

fn trim_sci(s: &str) -> String {
    // 1.23000000000e-1 -> plain decimal via f64 Display of the rounded value
    let x: f64 = s.parse().expect("formatted float");
    format!("{x}")
}

/// Walks the continued-fraction convergents of `w` looking for one that
/// reproduces `w` bit for bit.
fn exact_fraction(w: f64) -> Option<(u64, u64)> {
    if !(w > 0.0 && w < 1.0) {
        return None;
    }
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut x = w;
    for _ in 0..64 {
        let a = x.floor();
        if a > MAX_DENOMINATOR as f64 {
            break;
        }
        let a = a as u64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_DENOMINATOR {
            break;
        }
        if k2 > 0 && h2 as f64 / k2 as f64 == w {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a as f64;
        if frac == 0.0 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}
