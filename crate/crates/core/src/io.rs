//! Line-oriented text formats (1-based, `c` comments, one `p` header),
//! versioned JSON documents and DOT output.
//!
//! ```text
//! p bgraph <nA> <nB> <edges>     e <a> <b>     m <a> <b>
//! p digraph <n> <arcs>           a <u> <v>
//! p matching <k>                 m <a> <b>
//! p decomposition <nodes> <edges>  t <u> <v>  l <node> a<i>|b<j>  m <a> <b>
//! p ordering a|b <len>           o <i> <i> ...
//! p dtd <nodes>                  n <t> <parent or 0>  b <t> <v> ...  g <t> <v> ...
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::graph::{BipartiteGraph, Matching, Side, Vertex};
use crate::mwidth::DirectedTreeDecomposition;
use crate::tight::{BraceIso, NodeKind, TightCutTree, VertexOrigin};
use crate::tree::{DecompositionTree, NodeId};
use crate::width2::EliminationOrdering;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid document: {0}")]
    Validation(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Validation(msg.into()))
}

/// One non-comment line split into tokens with their 1-based columns.
struct Line<'a> {
    no: usize,
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn err(&self, i: usize, message: impl Into<String>) -> ParseError {
        let column = self.tokens.get(i).map_or_else(|| self.tokens.last().map_or(1, |t| t.0 + t.1.len()), |t| t.0);
        ParseError { line: self.no, column, message: message.into() }
    }

    fn arity(&self, n: usize) -> Result<(), ParseError> {
        if self.tokens.len() < n {
            return Err(self.err(self.tokens.len(), format!("expected {} fields", n - 1)));
        }
        if self.tokens.len() > n {
            return Err(self.err(n, "unexpected trailing field"));
        }
        Ok(())
    }

    fn num(&self, i: usize) -> Result<usize, ParseError> {
        let tok = self.tokens.get(i).ok_or_else(|| self.err(i, "missing number"))?.1;
        tok.parse::<usize>().map_err(|_| self.err(i, format!("'{tok}' is not a nonnegative integer")))
    }

    /// 1-based index in `1..=bound`, returned 0-based.
    fn index(&self, i: usize, bound: usize) -> Result<usize, ParseError> {
        let x = self.num(i)?;
        if x == 0 || x > bound {
            return Err(self.err(i, format!("index {x} out of range 1..={bound}")));
        }
        Ok(x - 1)
    }

    fn word(&self, i: usize) -> &'a str {
        self.tokens.get(i).map_or("", |t| t.1)
    }
}

struct Scanned<'a> {
    comments: Vec<String>,
    header: Line<'a>,
    body: Vec<Line<'a>>,
}

fn scan(text: &str) -> Result<Scanned<'_>, ParseError> {
    let mut comments = Vec::new();
    let mut header = None;
    let mut body = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in raw.char_indices().chain(std::iter::once((raw.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push((s + 1, &raw[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        let line = Line { no, tokens };
        match line.word(0) {
            "" => {}
            "c" => comments.push(raw.trim_start()[1..].trim().to_string()),
            "p" => {
                if header.is_some() {
                    return Err(line.err(0, "second header line"));
                }
                header = Some(line);
            }
            _ if header.is_none() => return Err(line.err(0, "record before the 'p' header")),
            _ => body.push(line),
        }
    }
    let header = header.ok_or(ParseError { line: 1, column: 1, message: "missing 'p' header".into() })?;
    Ok(Scanned { comments, header, body })
}

fn parse_pairs(line: &Line, a: usize, b: usize) -> Result<(usize, usize), ParseError> {
    line.arity(3)?;
    Ok((line.index(1, a)?, line.index(2, b)?))
}

/// A parsed graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphDocument {
    Bipartite { graph: BipartiteGraph, matching: Option<Matching>, comments: Vec<String> },
    Digraph { digraph: Digraph, comments: Vec<String> },
}

pub fn parse_graph_document(text: &str) -> Result<GraphDocument, IoError> {
    let s = scan(text)?;
    let h = &s.header;
    match h.word(1) {
        "bgraph" => {
            h.arity(5)?;
            let (na, nb, m) = (h.num(2)?, h.num(3)?, h.num(4)?);
            let mut edges = Vec::new();
            let mut matching = Vec::new();
            for line in &s.body {
                match line.word(0) {
                    "e" => edges.push(parse_pairs(line, na, nb)?),
                    "m" => matching.push(parse_pairs(line, na, nb)?),
                    w => return Err(line.err(0, format!("unknown record '{w}' in a bgraph document")).into()),
                }
            }
            if edges.len() != m {
                return invalid(format!("header announces {m} edges, found {}", edges.len()));
            }
            let graph = BipartiteGraph::new(na, nb, &edges).map_err(|e| IoError::Validation(e.to_string()))?;
            let matching = if matching.is_empty() {
                None
            } else {
                let mm = Matching::new(matching);
                mm.validate(&graph).map_err(|e| IoError::Validation(e.to_string()))?;
                Some(mm)
            };
            Ok(GraphDocument::Bipartite { graph, matching, comments: s.comments })
        }
        "digraph" => {
            h.arity(4)?;
            let (n, m) = (h.num(2)?, h.num(3)?);
            let mut arcs = Vec::new();
            for line in &s.body {
                match line.word(0) {
                    "a" => arcs.push(parse_pairs(line, n, n)?),
                    w => return Err(line.err(0, format!("unknown record '{w}' in a digraph document")).into()),
                }
            }
            if arcs.len() != m {
                return invalid(format!("header announces {m} arcs, found {}", arcs.len()));
            }
            let digraph = Digraph::new(n, &arcs).map_err(|e| IoError::Validation(e.to_string()))?;
            Ok(GraphDocument::Digraph { digraph, comments: s.comments })
        }
        other => Err(h.err(1, format!("unknown document kind '{other}'")).into()),
    }
}

pub fn parse_bipartite(text: &str) -> Result<(BipartiteGraph, Option<Matching>), IoError> {
    match parse_graph_document(text)? {
        GraphDocument::Bipartite { graph, matching, .. } => Ok((graph, matching)),
        GraphDocument::Digraph { .. } => invalid("expected a bgraph document"),
    }
}

pub fn parse_digraph(text: &str) -> Result<Digraph, IoError> {
    match parse_graph_document(text)? {
        GraphDocument::Digraph { digraph, .. } => Ok(digraph),
        GraphDocument::Bipartite { .. } => invalid("expected a digraph document"),
    }
}

fn comment_block(comments: &[String]) -> String {
    comments.iter().map(|c| if c.is_empty() { "c\n".to_string() } else { format!("c {c}\n") }).collect()
}

pub fn emit_graph_document(doc: &GraphDocument) -> String {
    match doc {
        GraphDocument::Bipartite { graph, matching, comments } => {
            comment_block(comments) + &emit_bipartite(graph, matching.as_ref())
        }
        GraphDocument::Digraph { digraph, comments } => comment_block(comments) + &emit_digraph(digraph),
    }
}

pub fn emit_bipartite(g: &BipartiteGraph, m: Option<&Matching>) -> String {
    let mut s = format!("p bgraph {} {} {}\n", g.a_count(), g.b_count(), g.edge_count());
    for &(a, b) in g.edges() {
        let _ = writeln!(s, "e {} {}", a + 1, b + 1);
    }
    if let Some(m) = m {
        for &(a, b) in m.pairs() {
            let _ = writeln!(s, "m {} {}", a + 1, b + 1);
        }
    }
    s
}

pub fn emit_digraph(d: &Digraph) -> String {
    let mut s = format!("p digraph {} {}\n", d.vertex_count(), d.arc_count());
    for &(u, v) in d.arcs() {
        let _ = writeln!(s, "a {} {}", u + 1, v + 1);
    }
    s
}

/// Reads `m` records, either from a `p matching` document or from a bgraph
/// document carrying a matching; indices are checked against `g`.
pub fn parse_matching(text: &str, g: &BipartiteGraph) -> Result<Matching, IoError> {
    let s = scan(text)?;
    match s.header.word(1) {
        "bgraph" => match parse_graph_document(text)? {
            GraphDocument::Bipartite { matching: Some(m), .. } => {
                m.validate(g).map_err(|e| IoError::Validation(e.to_string()))?;
                Ok(m)
            }
            _ => invalid("document carries no matching"),
        },
        "matching" => {
            s.header.arity(3)?;
            let k = s.header.num(2)?;
            let mut pairs = Vec::new();
            for line in &s.body {
                match line.word(0) {
                    "m" => pairs.push(parse_pairs(line, g.a_count(), g.b_count())?),
                    w => return Err(line.err(0, format!("unknown record '{w}' in a matching document")).into()),
                }
            }
            if pairs.len() != k {
                return invalid(format!("header announces {k} edges, found {}", pairs.len()));
            }
            let m = Matching::new(pairs);
            m.validate(g).map_err(|e| IoError::Validation(e.to_string()))?;
            Ok(m)
        }
        other => Err(s.header.err(1, format!("unknown document kind '{other}'")).into()),
    }
}

pub fn emit_matching(m: &Matching) -> String {
    let mut s = format!("p matching {}\n", m.len());
    for &(a, b) in m.pairs() {
        let _ = writeln!(s, "m {} {}", a + 1, b + 1);
    }
    s
}

fn parse_label(line: &Line, i: usize, g: &BipartiteGraph) -> Result<Vertex, ParseError> {
    let tok = line.word(i);
    let (side, rest) = match tok.split_at_checked(1) {
        Some(("a", r)) => (Side::A, r),
        Some(("b", r)) => (Side::B, r),
        _ => return Err(line.err(i, format!("'{tok}' is not a vertex label like a3 or b1"))),
    };
    let bound = if side == Side::A { g.a_count() } else { g.b_count() };
    match rest.parse::<usize>() {
        Ok(x) if x >= 1 && x <= bound => Ok(g.vertex(side, x - 1)),
        Ok(x) => Err(line.err(i, format!("index {x} out of range 1..={bound}"))),
        Err(_) => Err(line.err(i, format!("'{tok}' is not a vertex label like a3 or b1"))),
    }
}

pub fn emit_decomposition(g: &BipartiteGraph, d: &DecompositionTree) -> String {
    let edges = d.tree().edges();
    let mut s = format!("p decomposition {} {}\n", d.tree().node_count(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(s, "t {} {}", u + 1, v + 1);
    }
    for (t, v) in d.leaf_map().iter().enumerate() {
        if let Some(v) = v {
            let _ = writeln!(s, "l {} {}", t + 1, g.label(*v));
        }
    }
    if let Some(m) = d.anchor() {
        for &(a, b) in m.pairs() {
            let _ = writeln!(s, "m {} {}", a + 1, b + 1);
        }
    }
    s
}

/// Parses and validates a decomposition of `g`.
pub fn parse_decomposition(text: &str, g: &BipartiteGraph) -> Result<DecompositionTree, IoError> {
    let s = scan(text)?;
    let h = &s.header;
    if h.word(1) != "decomposition" {
        return Err(h.err(1, "expected a decomposition document").into());
    }
    h.arity(4)?;
    let (nodes, ne) = (h.num(2)?, h.num(3)?);
    let mut edges = Vec::new();
    let mut leaves: Vec<(NodeId, Vertex)> = Vec::new();
    let mut anchor = Vec::new();
    for line in &s.body {
        match line.word(0) {
            "t" => edges.push(parse_pairs(line, nodes, nodes)?),
            "l" => {
                line.arity(3)?;
                leaves.push((line.index(1, nodes)?, parse_label(line, 2, g)?));
            }
            "m" => anchor.push(parse_pairs(line, g.a_count(), g.b_count())?),
            w => return Err(line.err(0, format!("unknown record '{w}' in a decomposition document")).into()),
        }
    }
    if edges.len() != ne {
        return invalid(format!("header announces {ne} tree edges, found {}", edges.len()));
    }
    let anchor = if anchor.is_empty() { None } else { Some(Matching::new(anchor)) };
    let d = DecompositionTree::from_parts(nodes, &edges, &leaves, anchor).map_err(|e| IoError::Validation(e.to_string()))?;
    d.validate(g).map_err(|e| IoError::Validation(e.to_string()))?;
    Ok(d)
}

pub fn emit_ordering(l: &EliminationOrdering) -> String {
    let side = if l.side == Side::A { "a" } else { "b" };
    let list: Vec<String> = l.order.iter().map(|i| (i + 1).to_string()).collect();
    format!("p ordering {side} {}\no {}\n", l.order.len(), list.join(" "))
}

pub fn parse_ordering(text: &str) -> Result<EliminationOrdering, IoError> {
    let s = scan(text)?;
    let h = &s.header;
    if h.word(1) != "ordering" {
        return Err(h.err(1, "expected an ordering document").into());
    }
    h.arity(4)?;
    let side = match h.word(2) {
        "a" => Side::A,
        "b" => Side::B,
        w => return Err(h.err(2, format!("side must be a or b, not '{w}'")).into()),
    };
    let len = h.num(3)?;
    let mut order = Vec::new();
    for line in &s.body {
        if line.word(0) != "o" {
            return Err(line.err(0, format!("unknown record '{}' in an ordering document", line.word(0))).into());
        }
        for i in 1..line.tokens.len() {
            order.push(line.index(i, len)?);
        }
    }
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (0..len).collect::<Vec<_>>() {
        return invalid("ordering must list every index exactly once");
    }
    Ok(EliminationOrdering::new(side, order))
}

pub fn emit_dtd(t: &DirectedTreeDecomposition) -> String {
    let mut s = format!("p dtd {}\n", t.node_count());
    let list = |xs: &[usize]| xs.iter().map(|v| format!(" {}", v + 1)).collect::<String>();
    for i in 0..t.node_count() {
        let _ = writeln!(s, "n {} {}", i + 1, t.parent[i].map_or(0, |p| p + 1));
        let _ = writeln!(s, "b {}{}", i + 1, list(&t.bags[i]));
        if !t.guards[i].is_empty() {
            let _ = writeln!(s, "g {}{}", i + 1, list(&t.guards[i]));
        }
    }
    s
}

/// Parses a directed tree decomposition; vertex indices are checked
/// against a digraph on `n` vertices.
pub fn parse_dtd(text: &str, n: usize) -> Result<DirectedTreeDecomposition, IoError> {
    let s = scan(text)?;
    let h = &s.header;
    if h.word(1) != "dtd" {
        return Err(h.err(1, "expected a dtd document").into());
    }
    h.arity(3)?;
    let k = h.num(2)?;
    let mut t = DirectedTreeDecomposition { parent: vec![None; k], bags: vec![Vec::new(); k], guards: vec![Vec::new(); k] };
    let mut declared = vec![false; k];
    for line in &s.body {
        let node = line.index(1, k)?;
        match line.word(0) {
            "n" => {
                line.arity(3)?;
                let p = line.num(2)?;
                if p > k {
                    return Err(line.err(2, format!("index {p} out of range 0..={k}")).into());
                }
                t.parent[node] = p.checked_sub(1);
                declared[node] = true;
            }
            "b" | "g" => {
                let mut xs = Vec::new();
                for i in 2..line.tokens.len() {
                    xs.push(line.index(i, n)?);
                }
                if line.word(0) == "b" {
                    t.bags[node] = xs;
                } else {
                    t.guards[node] = xs;
                }
            }
            w => return Err(line.err(0, format!("unknown record '{w}' in a dtd document")).into()),
        }
    }
    if let Some(i) = declared.iter().position(|d| !d) {
        return invalid(format!("node {} has no 'n' record", i + 1));
    }
    Ok(t)
}

/// Versioned JSON wrapper shared by all structured outputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub kind: String,
    pub data: T,
}

pub fn envelope<T: Serialize>(kind: &str, data: T) -> serde_json::Value {
    serde_json::to_value(Envelope { schema_version: SCHEMA_VERSION, kind: kind.to_string(), data })
        .expect("serialisable")
}

/// Plain data form of a bipartite graph (0-based edges).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub a: usize,
    pub b: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphRecord {
    pub fn of(g: &BipartiteGraph) -> Self {
        GraphRecord { a: g.a_count(), b: g.b_count(), edges: g.edges().to_vec() }
    }

    pub fn graph(&self) -> Result<BipartiteGraph, IoError> {
        BipartiteGraph::new(self.a, self.b, &self.edges).map_err(|e| IoError::Validation(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightCutNodeRecord {
    /// Host vertex labels represented by each vertex of the node graph.
    pub vertices: Vec<Vec<String>>,
    /// Host shore of the cut found here, for inner nodes.
    pub shore: Option<Vec<String>>,
    pub children: Option<[usize; 2]>,
    /// Node graph and its classification, for braces.
    pub graph: Option<GraphRecord>,
    pub iso: Option<BraceIso>,
}

/// Document form of a tight cut decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightCutTreeRecord {
    pub host: GraphRecord,
    pub nodes: Vec<TightCutNodeRecord>,
    /// Brace adjacency `(node, node, cut)`.
    pub brace_tree: Vec<(usize, usize, usize)>,
}

impl TightCutTreeRecord {
    pub fn of(t: &TightCutTree) -> Self {
        let host = &t.nodes[0].graph;
        let labels = |set: &crate::vset::VertexSet| set.iter().map(|v| host.label(Vertex(v))).collect::<Vec<_>>();
        let nodes = t
            .nodes
            .iter()
            .map(|n| {
                let vertices = n.host_sets.iter().map(labels).collect();
                match &n.kind {
                    NodeKind::Split { cut, children } => TightCutNodeRecord {
                        vertices,
                        shore: Some(labels(&t.cuts[*cut].host_shore)),
                        children: Some(*children),
                        graph: None,
                        iso: None,
                    },
                    NodeKind::Brace { iso } => TightCutNodeRecord {
                        vertices,
                        shore: None,
                        children: None,
                        graph: Some(GraphRecord::of(&n.graph)),
                        iso: Some(*iso),
                    },
                }
            })
            .collect();
        TightCutTreeRecord { host: GraphRecord::of(host), nodes, brace_tree: t.brace_tree() }
    }

    /// Brace graphs in node order.
    pub fn braces(&self) -> Result<Vec<BipartiteGraph>, IoError> {
        self.nodes.iter().filter_map(|n| n.graph.as_ref()).map(GraphRecord::graph).collect()
    }
}

/// Host origin labels of a tight cut node, for text output.
pub fn origin_labels(t: &TightCutTree, node: usize) -> Vec<String> {
    let host = &t.nodes[0].graph;
    t.nodes[node]
        .origin
        .iter()
        .map(|o| match o {
            VertexOrigin::Host(v) => host.label(*v),
            VertexOrigin::Contracted { cut, inner } => format!("v{}{}", cut + 1, if *inner { "" } else { "'" }),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
    pub leaves: Vec<(usize, String)>,
    pub anchor: Option<Vec<(usize, usize)>>,
}

impl DecompositionRecord {
    pub fn of(g: &BipartiteGraph, d: &DecompositionTree) -> Self {
        DecompositionRecord {
            nodes: d.tree().node_count(),
            edges: d.tree().edges(),
            leaves: d.leaf_map().iter().enumerate().filter_map(|(t, v)| v.map(|v| (t, g.label(v)))).collect(),
            anchor: d.anchor().map(|m| m.pairs().to_vec()),
        }
    }
}

fn dot_style(side: Side) -> &'static str {
    match side {
        Side::A => "style=filled, fillcolor=black, fontcolor=white",
        Side::B => "style=solid",
    }
}

/// Graph in DOT; class A is drawn filled, class B hollow.
pub fn dot_bipartite(g: &BipartiteGraph, m: Option<&Matching>) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let _ = writeln!(s, "  {} [{}];", g.label(v), dot_style(g.side(v)));
    }
    for &(a, b) in g.edges() {
        let bold = m.is_some_and(|m| m.contains((a, b)));
        let _ = writeln!(s, "  a{} -- b{}{};", a + 1, b + 1, if bold { " [penwidth=3]" } else { "" });
    }
    s.push_str("}\n");
    s
}

/// Decomposition tree in DOT; leaves carry their vertex and its class style.
pub fn dot_decomposition(g: &BipartiteGraph, d: &DecompositionTree) -> String {
    let mut s = String::from("graph T {\n  node [shape=point];\n");
    for (t, v) in d.leaf_map().iter().enumerate() {
        if let Some(v) = v {
            let _ = writeln!(s, "  t{t} [shape=circle, label=\"{}\", {}];", g.label(*v), dot_style(g.side(*v)));
        }
    }
    for (u, v) in d.tree().edges() {
        let _ = writeln!(s, "  t{u} -- t{v};");
    }
    s.push_str("}\n");
    s
}

pub fn dot_digraph(d: &Digraph) -> String {
    let mut s = String::from("digraph D {\n  node [shape=circle];\n");
    for v in 0..d.vertex_count() {
        let _ = writeln!(s, "  v{};", v + 1);
    }
    for &(u, v) in d.arcs() {
        let _ = writeln!(s, "  v{} -> v{};", u + 1, v + 1);
    }
    s.push_str("}\n");
    s
}

pub fn dot_dtd(t: &DirectedTreeDecomposition) -> String {
    let mut s = String::from("digraph T {\n  node [shape=box];\n");
    let list = |xs: &[usize]| xs.iter().map(|v| format!("v{}", v + 1)).collect::<Vec<_>>().join(" ");
    for i in 0..t.node_count() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", list(&t.bags[i]));
        if let Some(p) = t.parent[i] {
            let _ = writeln!(s, "  n{p} -> n{i} [label=\"{}\"];", list(&t.guards[i]));
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_from_text() {
        let text = "c four cycle\np bgraph 2 2 4\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n";
        let (g, m) = parse_bipartite(text).unwrap();
        assert_eq!(g, BipartiteGraph::complete(2, 2));
        assert!(m.is_none());
    }

    #[test]
    fn out_of_range_index_is_located() {
        let err = parse_bipartite("p bgraph 2 2 4\ne 3 1\ne 1 1\ne 2 1\ne 2 2\n").unwrap_err();
        match err {
            IoError::Parse(p) => {
                assert_eq!((p.line, p.column), (2, 3));
                assert!(p.message.contains("out of range"));
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn malformed_documents() {
        let parse = |s: &str| parse_graph_document(s).unwrap_err();
        assert!(matches!(parse("e 1 1\n"), IoError::Parse(ParseError { line: 1, .. })));
        assert!(matches!(parse("p bgraph 1 1 2\ne 1 1\n"), IoError::Validation(_)));
        assert!(matches!(parse("p bgraph 1 1 1\ne 1 x\n"), IoError::Parse(ParseError { column: 5, .. })));
        assert!(matches!(parse("p digraph 2 1\na 1 1\n"), IoError::Validation(_)));
        assert!(matches!(parse("p bgraph 1 1 1\ne 1 1 1\n"), IoError::Parse(_)));
        assert!(matches!(parse("p tree 1\n"), IoError::Parse(ParseError { column: 3, .. })));
    }

    #[test]
    fn round_trips() {
        let text = "c x\np bgraph 2 2 3\ne 2 2\ne 1 1\ne 1 2\nm 1 1\nm 2 2\n";
        let doc = parse_graph_document(text).unwrap();
        let out = emit_graph_document(&doc);
        assert_eq!(out, "c x\np bgraph 2 2 3\ne 1 1\ne 1 2\ne 2 2\nm 1 1\nm 2 2\n");
        assert_eq!(parse_graph_document(&out).unwrap(), doc);

        let d = Digraph::new(3, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(parse_digraph(&emit_digraph(&d)).unwrap(), d);

        let l = EliminationOrdering::new(Side::B, vec![2, 0, 1]);
        assert_eq!(parse_ordering(&emit_ordering(&l)).unwrap(), l);

        let t = DirectedTreeDecomposition {
            parent: vec![None, Some(0)],
            bags: vec![vec![0, 1], vec![2]],
            guards: vec![vec![], vec![1]],
        };
        assert_eq!(parse_dtd(&emit_dtd(&t), 3).unwrap(), t);
    }

    #[test]
    fn matching_documents() {
        let g = BipartiteGraph::complete(2, 2);
        let m = Matching::new(vec![(0, 1), (1, 0)]);
        assert_eq!(parse_matching(&emit_matching(&m), &g).unwrap(), m);
        assert!(parse_matching("p matching 1\nm 1 3\n", &g).is_err());
    }
}
