//! Plain-text instance and solution formats, plus DOT export.
//!
//! Instance files:
//! ```text
//! # comment
//! scss <n> <m> <k1> <k2>
//! s <id>
//! t <id>
//! e <tail> <head> <weight>     (m lines)
//! ```
//! Vertex-weighted files swap the header tag for `vwscss`, list `v <id> <w>`
//! once per vertex, and drop the weight column from `e` lines. Solution files
//! carry a `cost` line and one `forward[i]`/`backward[j]` vertex sequence per
//! demanded walk. All diagnostics name the offending (1-based) line.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    Digraph, EdgeId, Instance, InstanceError, Solution, VertexId, VertexWeightedInstance, Walk, Weight,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected header `{expected} <n> <m> <k1> <k2>`")]
    BadHeader { expected: &'static str },
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("malformed integer `{0}`")]
    BadInt(String),
    #[error("negative weight `{0}` (weights are non-negative)")]
    NegativeWeight(String),
    #[error("vertex id {id} out of range (n = {n})")]
    DanglingVertex { id: u64, n: u32 },
    #[error("duplicate `{0}` line")]
    DuplicateTerminal(&'static str),
    #[error("missing `{0}` line")]
    MissingTerminal(&'static str),
    #[error("expected {expected} `{what}` lines, found {got}")]
    CountMismatch {
        what: &'static str,
        expected: u32,
        got: usize,
    },
    #[error("duplicate weight for vertex {0}")]
    DuplicateVertexWeight(VertexId),
    #[error("wrong number of fields for `{0}` line")]
    FieldCount(&'static str),
    #[error("{0}")]
    Invalid(InstanceError),
    #[error("terminal {0} must carry weight zero")]
    WeightedTerminal(VertexId),
    #[error("malformed solution line `{0}`")]
    BadSolutionLine(String),
    #[error("duplicate `{side}[{index}]` line")]
    DuplicateWalk { side: &'static str, index: usize },
    #[error("missing `{side}[{index}]` line")]
    MissingWalk { side: &'static str, index: usize },
    #[error("walk index {index} out of range for `{side}` (demand {demand})")]
    WalkIndex {
        side: &'static str,
        index: usize,
        demand: u32,
    },
    #[error("no edge from {from} to {to}")]
    NoSuchEdge { from: VertexId, to: VertexId },
    #[error("a walk needs at least two vertices")]
    ShortWalk,
    #[error("missing `cost` line")]
    MissingCost,
    #[error("solution JSON: {0}")]
    BadJson(String),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Content lines (1-based number, text) with blanks and `#` comments dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_int(line: usize, tok: &str) -> Result<u64, ParseError> {
    tok.parse::<u64>()
        .map_err(|_| err(line, ParseErrorKind::BadInt(tok.to_string())))
}

fn parse_weight(line: usize, tok: &str) -> Result<Weight, ParseError> {
    if tok.starts_with('-') {
        return Err(err(line, ParseErrorKind::NegativeWeight(tok.to_string())));
    }
    parse_int(line, tok)
}

fn parse_vertex(line: usize, tok: &str, n: u32) -> Result<VertexId, ParseError> {
    let id = parse_int(line, tok)?;
    if id >= n as u64 {
        return Err(err(line, ParseErrorKind::DanglingVertex { id, n }));
    }
    Ok(id as VertexId)
}

struct Header {
    line: usize,
    n: u32,
    m: u32,
    k1: u32,
    k2: u32,
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    tag: &'static str,
) -> Result<Header, ParseError> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| err(1, ParseErrorKind::BadHeader { expected: tag }))?;
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != tag {
        return Err(err(line, ParseErrorKind::BadHeader { expected: tag }));
    }
    let grab = |i: usize| -> Result<u32, ParseError> {
        let v = parse_int(line, toks[i])?;
        u32::try_from(v).map_err(|_| err(line, ParseErrorKind::BadInt(toks[i].to_string())))
    };
    Ok(Header {
        line,
        n: grab(1)?,
        m: grab(2)?,
        k1: grab(3)?,
        k2: grab(4)?,
    })
}

struct Terminals {
    s: VertexId,
    t: VertexId,
    t_line: usize,
}

fn parse_terminals<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    n: u32,
    eof_line: usize,
) -> Result<Terminals, ParseError> {
    let mut s: Option<VertexId> = None;
    let mut t: Option<VertexId> = None;
    let mut t_line = 0;
    for _ in 0..2 {
        let (line, text) = match lines.next() {
            Some(x) => x,
            None => break,
        };
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(err(line, ParseErrorKind::FieldCount("terminal")));
        }
        let id = parse_vertex(line, toks[1], n)?;
        match toks[0] {
            "s" => {
                if s.replace(id).is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateTerminal("s")));
                }
            }
            "t" => {
                if t.replace(id).is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateTerminal("t")));
                }
                t_line = line;
            }
            other => return Err(err(line, ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }
    let s = s.ok_or_else(|| err(eof_line, ParseErrorKind::MissingTerminal("s")))?;
    let t = t.ok_or_else(|| err(eof_line, ParseErrorKind::MissingTerminal("t")))?;
    Ok(Terminals { s, t, t_line })
}

/// Parses the edge-weighted instance format.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let eof_line = text.lines().count() + 1;
    let mut lines = content_lines(text);
    let header = parse_header(&mut lines, "scss")?;
    let terminals = parse_terminals(&mut lines, header.n, eof_line)?;

    let mut graph = Digraph::new(header.n);
    let mut got = 0usize;
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks[0] != "e" {
            return Err(err(line, ParseErrorKind::UnknownDirective(toks[0].to_string())));
        }
        if toks.len() != 4 {
            return Err(err(line, ParseErrorKind::FieldCount("e")));
        }
        let tail = parse_vertex(line, toks[1], header.n)?;
        let head = parse_vertex(line, toks[2], header.n)?;
        let weight = parse_weight(line, toks[3])?;
        graph.add_edge(tail, head, weight);
        got += 1;
        if got > header.m as usize {
            return Err(err(
                line,
                ParseErrorKind::CountMismatch {
                    what: "e",
                    expected: header.m,
                    got,
                },
            ));
        }
    }
    if got != header.m as usize {
        return Err(err(
            eof_line,
            ParseErrorKind::CountMismatch {
                what: "e",
                expected: header.m,
                got,
            },
        ));
    }
    Instance::new(graph, terminals.s, terminals.t, header.k1, header.k2).map_err(|e| {
        let line = match e {
            InstanceError::EqualTerminals => terminals.t_line,
            _ => header.line,
        };
        err(line, ParseErrorKind::Invalid(e))
    })
}

/// Canonical text for an instance: header, terminals, then edges in id order.
/// `parse_instance` of the result reproduces the instance exactly.
pub fn serialize_instance(instance: &Instance) -> String {
    let g = &instance.graph;
    let mut out = String::new();
    out.push_str(&format!("scss {} {} {} {}\n", g.n(), g.m(), instance.k1, instance.k2));
    out.push_str(&format!("s {}\n", instance.s));
    out.push_str(&format!("t {}\n", instance.t));
    for e in g.edges() {
        out.push_str(&format!("e {} {} {}\n", e.tail, e.head, e.weight));
    }
    out
}

/// Parses the vertex-weighted instance format.
pub fn parse_vertex_weighted(text: &str) -> Result<VertexWeightedInstance, ParseError> {
    let eof_line = text.lines().count() + 1;
    let mut lines = content_lines(text);
    let header = parse_header(&mut lines, "vwscss")?;
    let terminals = parse_terminals(&mut lines, header.n, eof_line)?;

    let mut graph = Digraph::new(header.n);
    let mut weights: Vec<Option<Weight>> = vec![None; header.n as usize];
    let mut edges = 0usize;
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        match toks[0] {
            "v" => {
                if toks.len() != 3 {
                    return Err(err(line, ParseErrorKind::FieldCount("v")));
                }
                let v = parse_vertex(line, toks[1], header.n)?;
                let w = parse_weight(line, toks[2])?;
                if weights[v as usize].replace(w).is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateVertexWeight(v)));
                }
            }
            "e" => {
                if toks.len() != 3 {
                    return Err(err(line, ParseErrorKind::FieldCount("e")));
                }
                let tail = parse_vertex(line, toks[1], header.n)?;
                let head = parse_vertex(line, toks[2], header.n)?;
                graph.add_edge(tail, head, 0);
                edges += 1;
            }
            other => return Err(err(line, ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }
    if edges != header.m as usize {
        return Err(err(
            eof_line,
            ParseErrorKind::CountMismatch {
                what: "e",
                expected: header.m,
                got: edges,
            },
        ));
    }
    let missing = weights.iter().filter(|w| w.is_none()).count();
    if missing > 0 {
        return Err(err(
            eof_line,
            ParseErrorKind::CountMismatch {
                what: "v",
                expected: header.n,
                got: header.n as usize - missing,
            },
        ));
    }
    let weights: Vec<Weight> = weights.into_iter().map(Option::unwrap).collect();
    VertexWeightedInstance::new(graph, weights, terminals.s, terminals.t, header.k1, header.k2).map_err(|e| {
        use crate::graph::VertexWeightedError as V;
        match e {
            V::Instance(InstanceError::EqualTerminals) => {
                err(terminals.t_line, ParseErrorKind::Invalid(InstanceError::EqualTerminals))
            }
            V::Instance(ie) => err(header.line, ParseErrorKind::Invalid(ie)),
            V::WeightedTerminal(v) => err(header.line, ParseErrorKind::WeightedTerminal(v)),
            // unreachable by construction: we built the graph with 0-weight
            // edges and one weight per vertex
            other => err(header.line, ParseErrorKind::BadSolutionLine(other.to_string())),
        }
    })
}

pub fn serialize_vertex_weighted(vw: &VertexWeightedInstance) -> String {
    let g = &vw.graph;
    let mut out = String::new();
    out.push_str(&format!("vwscss {} {} {} {}\n", g.n(), g.m(), vw.k1, vw.k2));
    out.push_str(&format!("s {}\n", vw.s));
    out.push_str(&format!("t {}\n", vw.t));
    for (v, w) in vw.vertex_weights.iter().enumerate() {
        out.push_str(&format!("v {} {}\n", v, w));
    }
    for e in g.edges() {
        out.push_str(&format!("e {} {}\n", e.tail, e.head));
    }
    out
}

/// Resolves a vertex sequence to a walk, picking the cheapest (then lowest-id)
/// edge between each consecutive pair.
pub fn walk_from_vertices(graph: &Digraph, vertices: &[VertexId]) -> Result<Walk, (VertexId, VertexId)> {
    let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
    for pair in vertices.windows(2) {
        let (from, to) = (pair[0], pair[1]);
        let best: Option<EdgeId> = graph
            .out_edges(from)
            .iter()
            .copied()
            .filter(|&e| graph.edge(e).head == to)
            .min_by_key(|&e| (graph.edge(e).weight, e));
        edges.push(best.ok_or((from, to))?);
    }
    Ok(Walk::new(edges))
}

/// Solution text: a `cost` line, then one vertex sequence per walk.
pub fn serialize_solution(solution: &Solution, graph: &Digraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("cost {}\n", solution.cost));
    for (i, w) in solution.forward.iter().enumerate() {
        let seq: Vec<String> = w.vertices(graph).iter().map(u32::to_string).collect();
        out.push_str(&format!("forward[{}] {}\n", i, seq.join(" ")));
    }
    for (j, w) in solution.backward.iter().enumerate() {
        let seq: Vec<String> = w.vertices(graph).iter().map(u32::to_string).collect();
        out.push_str(&format!("backward[{}] {}\n", j, seq.join(" ")));
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionJson {
    pub cost: Weight,
    pub forward: Vec<Vec<VertexId>>,
    pub backward: Vec<Vec<VertexId>>,
}

pub fn solution_to_json(solution: &Solution, graph: &Digraph) -> SolutionJson {
    SolutionJson {
        cost: solution.cost,
        forward: solution.forward.iter().map(|w| w.vertices(graph)).collect(),
        backward: solution.backward.iter().map(|w| w.vertices(graph)).collect(),
    }
}

fn walks_from_sequences(
    instance: &Instance,
    side: &'static str,
    demand: u32,
    seqs: &[(usize, Vec<VertexId>)],
) -> Result<Vec<Walk>, ParseError> {
    let mut walks: Vec<Option<Walk>> = vec![None; demand as usize];
    for (line, seq) in seqs {
        if seq.len() < 2 {
            return Err(err(*line, ParseErrorKind::ShortWalk));
        }
        let walk = walk_from_vertices(&instance.graph, &seq[1..])
            .map_err(|(from, to)| err(*line, ParseErrorKind::NoSuchEdge { from, to }))?;
        let index = seq[0] as usize;
        if index >= demand as usize {
            return Err(err(*line, ParseErrorKind::WalkIndex { side, index, demand }));
        }
        if walks[index].replace(walk).is_some() {
            return Err(err(*line, ParseErrorKind::DuplicateWalk { side, index }));
        }
    }
    walks
        .into_iter()
        .enumerate()
        .map(|(index, w)| w.ok_or_else(|| err(0, ParseErrorKind::MissingWalk { side, index })))
        .collect()
}

/// Parses solution text (or, if the first byte is `{`, solution JSON) against
/// an instance. The instance is needed to size the walk lists and to resolve
/// vertex pairs to edges.
pub fn parse_solution(text: &str, instance: &Instance) -> Result<Solution, ParseError> {
    if text.trim_start().starts_with('{') {
        return parse_solution_json(text, instance);
    }
    let mut cost: Option<(usize, Weight)> = None;
    let mut fwd: Vec<(usize, Vec<VertexId>)> = Vec::new();
    let mut bwd: Vec<(usize, Vec<VertexId>)> = Vec::new();
    for (line, raw) in content_lines(text) {
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let head = toks[0];
        if head == "cost" {
            if toks.len() != 2 {
                return Err(err(line, ParseErrorKind::FieldCount("cost")));
            }
            cost = Some((line, parse_weight(line, toks[1])?));
            continue;
        }
        let (side, rest) = if let Some(r) = head.strip_prefix("forward[") {
            ("forward", r)
        } else if let Some(r) = head.strip_prefix("backward[") {
            ("backward", r)
        } else {
            return Err(err(line, ParseErrorKind::BadSolutionLine(raw.to_string())));
        };
        let index: usize = rest
            .strip_suffix(']')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| err(line, ParseErrorKind::BadSolutionLine(raw.to_string())))?;
        let mut seq = vec![index as VertexId];
        for tok in &toks[1..] {
            seq.push(parse_vertex(line, tok, instance.graph.n())?);
        }
        if side == "forward" {
            fwd.push((line, seq));
        } else {
            bwd.push((line, seq));
        }
    }
    let (_, cost) = cost.ok_or_else(|| err(text.lines().count() + 1, ParseErrorKind::MissingCost))?;
    let forward = walks_from_sequences(instance, "forward", instance.k1, &fwd)?;
    let backward = walks_from_sequences(instance, "backward", instance.k2, &bwd)?;
    Ok(Solution { forward, backward, cost })
}

fn parse_solution_json(text: &str, instance: &Instance) -> Result<Solution, ParseError> {
    let json: SolutionJson =
        serde_json::from_str(text).map_err(|e| err(1, ParseErrorKind::BadJson(e.to_string())))?;
    let resolve = |side: &'static str, demand: u32, seqs: &[Vec<VertexId>]| -> Result<Vec<Walk>, ParseError> {
        if seqs.len() != demand as usize {
            return Err(err(
                1,
                ParseErrorKind::CountMismatch {
                    what: side,
                    expected: demand,
                    got: seqs.len(),
                },
            ));
        }
        seqs.iter()
            .map(|seq| {
                if seq.len() < 2 {
                    return Err(err(1, ParseErrorKind::ShortWalk));
                }
                if let Some(&bad) = seq.iter().find(|&&v| v >= instance.graph.n()) {
                    return Err(err(
                        1,
                        ParseErrorKind::DanglingVertex {
                            id: bad as u64,
                            n: instance.graph.n(),
                        },
                    ));
                }
                walk_from_vertices(&instance.graph, seq)
                    .map_err(|(from, to)| err(1, ParseErrorKind::NoSuchEdge { from, to }))
            })
            .collect()
    };
    Ok(Solution {
        forward: resolve("forward", instance.k1, &json.forward)?,
        backward: resolve("backward", instance.k2, &json.backward)?,
        cost: json.cost,
    })
}

/// GraphViz view of an instance; with a solution, forward walks are drawn
/// blue, backward walks red, and edges used by both purple.
pub fn export_dot(instance: &Instance, solution: Option<&Solution>) -> String {
    let g = &instance.graph;
    let mut fwd = vec![false; g.m() as usize];
    let mut bwd = vec![false; g.m() as usize];
    if let Some(sol) = solution {
        for w in &sol.forward {
            for &e in &w.edges {
                fwd[e as usize] = true;
            }
        }
        for w in &sol.backward {
            for &e in &w.edges {
                bwd[e as usize] = true;
            }
        }
    }
    let mut out = String::from("digraph scss {\n");
    for v in 0..g.n() {
        let label = if v == instance.s {
            format!("s={}", v)
        } else if v == instance.t {
            format!("t={}", v)
        } else {
            v.to_string()
        };
        out.push_str(&format!("  {} [label=\"{}\"];\n", v, label));
    }
    for (i, e) in g.edges().iter().enumerate() {
        let color = match (fwd[i], bwd[i]) {
            (true, true) => " color=purple penwidth=2",
            (true, false) => " color=blue penwidth=2",
            (false, true) => " color=red penwidth=2",
            (false, false) => "",
        };
        out.push_str(&format!(
            "  {} -> {} [label=\"{}\"{}];\n",
            e.tail, e.head, e.weight, color
        ));
    }
    out.push_str("}\n");
    out
}
