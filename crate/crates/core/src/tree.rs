//! Perfect matching decompositions: cubic trees whose leaves are the
//! vertices of a host graph, their width, spine analysis and the tree
//! surgeries used to move decompositions between graphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, Matching, Vertex};
use crate::limits::CapExceeded;
use crate::matching::is_matching_covered;
use crate::porosity::{is_conformal, porosity_with, PorosityEngine, PorosityError};
use crate::tight::{contract_unchecked, is_nontrivial, is_tight_cut, ContractionRecord, TightCutError};
use crate::vset::VertexSet;

pub type NodeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("anchor matching crosses inner edges {0:?}")]
    MConformalityViolated(Vec<(NodeId, NodeId)>),
    #[error("tree has an odd number of leaves ({0})")]
    OddLeafCount(usize),
    #[error("vertex set is not conformal")]
    NotConformal,
    #[error("subgraph is not matching covered")]
    NotMatchingCovered,
    #[error("cut is not tight")]
    NotTight,
    #[error("cut is trivial")]
    TrivialCut,
    #[error("decomposition is not anchored at a perfect matching")]
    NotMAnchored,
    #[error("incompatible gluing: {0}")]
    IncompatibleGluing(String),
    #[error(transparent)]
    Porosity(#[from] PorosityError),
    #[error(transparent)]
    Tight(#[from] TightCutError),
}

impl TreeError {
    /// The size cap behind this error, if any.
    pub fn cap_exceeded(&self) -> Option<&CapExceeded> {
        match self {
            TreeError::Porosity(p) => p.cap_exceeded(),
            TreeError::Tight(t) => t.cap_exceeded(),
            _ => None,
        }
    }
}

/// A tree of maximum degree three given by sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubicTree {
    adj: Vec<Vec<NodeId>>,
}

impl CubicTree {
    /// Checks that the edges form a tree with at least two leaves and no
    /// node of degree above three. Degree-two nodes are allowed here; see
    /// [`CubicTree::is_cubic`].
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, TreeError> {
        if node_count < 2 {
            return Err(TreeError::InvalidTree("fewer than two nodes".into()));
        }
        if edges.len() + 1 != node_count {
            return Err(TreeError::InvalidTree(format!("{} nodes but {} edges", node_count, edges.len())));
        }
        let mut adj = vec![Vec::new(); node_count];
        for &(u, v) in edges {
            if u >= node_count || v >= node_count || u == v {
                return Err(TreeError::InvalidTree(format!("bad edge ({u}, {v})")));
            }
            if adj[u].contains(&v) {
                return Err(TreeError::InvalidTree(format!("duplicate edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (t, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.len() > 3 {
                return Err(TreeError::InvalidTree(format!("node {t} has degree {}", list.len())));
            }
        }
        let tree = CubicTree { adj };
        let (_, order) = tree.rooted();
        if order.len() != node_count {
            return Err(TreeError::InvalidTree("not connected".into()));
        }
        Ok(tree)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbours(&self, t: NodeId) -> &[NodeId] {
        &self.adj[t]
    }

    pub fn degree(&self, t: NodeId) -> usize {
        self.adj[t].len()
    }

    pub fn is_leaf(&self, t: NodeId) -> bool {
        self.adj[t].len() == 1
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        (0..self.adj.len()).filter(|&t| self.is_leaf(t)).collect()
    }

    /// Every node has degree one or three.
    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|l| l.len() == 1 || l.len() == 3)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_inner_edge(&self, (u, v): (NodeId, NodeId)) -> bool {
        !self.is_leaf(u) && !self.is_leaf(v)
    }

    /// Parent array and a preorder from node 0.
    fn rooted(&self) -> (Vec<usize>, Vec<NodeId>) {
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            order.push(t);
            for &s in &self.adj[t] {
                if !seen[s] {
                    seen[s] = true;
                    parent[s] = t;
                    stack.push(s);
                }
            }
        }
        (parent, order)
    }

    /// Nodes on the `v` side of the edge `uv`.
    pub fn side(&self, u: NodeId, v: NodeId) -> Vec<NodeId> {
        let mut out = vec![v];
        let mut stack = vec![(v, u)];
        while let Some((t, from)) = stack.pop() {
            for &s in &self.adj[t] {
                if s != from {
                    out.push(s);
                    stack.push((s, t));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Path of nodes from `s` to `t`.
    pub fn path(&self, s: NodeId, t: NodeId) -> Vec<NodeId> {
        let mut parent = vec![usize::MAX; self.adj.len()];
        parent[s] = s;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut out = vec![t];
        let mut x = t;
        while x != s {
            x = parent[x];
            out.push(x);
        }
        out.reverse();
        out
    }
}

/// A cubic tree with a bijection from its leaves to the vertices of a host
/// graph and, optionally, the perfect matching it is anchored at. The host
/// itself is passed separately to every operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTree {
    tree: CubicTree,
    leaf_vertex: Vec<Option<Vertex>>,
    anchor: Option<Matching>,
}

impl DecompositionTree {
    /// No checks beyond sizes; call [`DecompositionTree::validate`].
    pub fn new(tree: CubicTree, leaf_vertex: Vec<Option<Vertex>>, anchor: Option<Matching>) -> Self {
        assert_eq!(tree.node_count(), leaf_vertex.len());
        DecompositionTree { tree, leaf_vertex, anchor }
    }

    /// Convenience constructor from an edge list and `(leaf, vertex)` pairs.
    pub fn from_parts(
        node_count: usize,
        edges: &[(NodeId, NodeId)],
        leaves: &[(NodeId, Vertex)],
        anchor: Option<Matching>,
    ) -> Result<Self, TreeError> {
        let tree = CubicTree::from_edges(node_count, edges)?;
        let mut leaf_vertex = vec![None; node_count];
        for &(t, v) in leaves {
            if t >= node_count {
                return Err(TreeError::InvalidDecomposition(format!("leaf {t} out of range")));
            }
            leaf_vertex[t] = Some(v);
        }
        Ok(DecompositionTree { tree, leaf_vertex, anchor })
    }

    pub fn tree(&self) -> &CubicTree {
        &self.tree
    }

    pub fn leaf_vertex(&self, t: NodeId) -> Option<Vertex> {
        self.leaf_vertex[t]
    }

    pub fn leaf_map(&self) -> &[Option<Vertex>] {
        &self.leaf_vertex
    }

    pub fn anchor(&self) -> Option<&Matching> {
        self.anchor.as_ref()
    }

    pub fn with_anchor(mut self, anchor: Option<Matching>) -> Self {
        self.anchor = anchor;
        self
    }

    /// Leaf node of host vertex `v`.
    pub fn node_of(&self, v: Vertex) -> Option<NodeId> {
        self.leaf_vertex.iter().position(|&x| x == Some(v))
    }

    /// Cubicity, leaf bijection onto the host and, if present, that the
    /// anchor is a perfect matching of the host.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<(), TreeError> {
        let bad = |s: String| Err(TreeError::InvalidDecomposition(s));
        if !self.tree.is_cubic() {
            return bad("tree is not cubic".into());
        }
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        for t in 0..self.tree.node_count() {
            match (self.tree.is_leaf(t), self.leaf_vertex[t]) {
                (true, Some(v)) => {
                    if v.0 >= n {
                        return bad(format!("leaf {t} maps to unknown vertex {}", v.0));
                    }
                    if seen[v.0] {
                        return bad(format!("vertex {} appears twice", g.label(v)));
                    }
                    seen[v.0] = true;
                }
                (true, None) => return bad(format!("leaf {t} is unmapped")),
                (false, Some(_)) => return bad(format!("inner node {t} is mapped")),
                (false, None) => {}
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return bad(format!("vertex {} has no leaf", g.label(Vertex(v))));
        }
        if let Some(m) = &self.anchor {
            if !m.is_perfect(g) {
                return bad("anchor is not a perfect matching".into());
            }
        }
        Ok(())
    }

    /// Host vertices at the leaves on the `v` side of every edge `(u, v)`
    /// from [`CubicTree::edges`].
    pub fn shores(&self, g: &BipartiteGraph) -> Vec<((NodeId, NodeId), VertexSet)> {
        let n = g.vertex_count();
        let (parent, order) = self.tree.rooted();
        let mut sub = vec![VertexSet::empty(n); self.tree.node_count()];
        for &t in order.iter().rev() {
            if let Some(v) = self.leaf_vertex[t] {
                sub[t].insert(v.0);
            }
            if parent[t] != usize::MAX {
                let p = parent[t];
                let merged = sub[p].union(&sub[t]);
                sub[p] = merged;
            }
        }
        self.tree
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let shore = if parent[v] == u { sub[v].clone() } else { sub[u].complement() };
                ((u, v), shore)
            })
            .collect()
    }

    /// Shore on the `v` side of the tree edge `uv`.
    pub fn shore(&self, g: &BipartiteGraph, u: NodeId, v: NodeId) -> VertexSet {
        let nodes = self.tree.side(u, v);
        VertexSet::from_iter(g.vertex_count(), nodes.into_iter().filter_map(|t| self.leaf_vertex[t]).map(|v| v.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeReport {
    pub edge: (NodeId, NodeId),
    /// Host vertices on the `edge.1` side.
    pub shore: VertexSet,
    pub porosity: usize,
    pub inner: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthReport {
    pub width: usize,
    pub edges: Vec<EdgeReport>,
    /// First edge attaining the width.
    pub argmax: (NodeId, NodeId),
    /// A perfect matching crossing the argmax cut `width` times.
    pub certificate: Matching,
    /// Inner edges whose cut contains an edge of the anchor matching.
    pub violations: Vec<(NodeId, NodeId)>,
}

/// Width with a per-edge report. Anchor violations are listed, not raised.
pub fn width_report(g: &BipartiteGraph, d: &DecompositionTree) -> Result<WidthReport, TreeError> {
    d.validate(g)?;
    let mut edges = Vec::new();
    let mut best: Option<(usize, (NodeId, NodeId), Matching)> = None;
    let mut violations = Vec::new();
    for (edge, shore) in d.shores(g) {
        let p = porosity_with(g, &shore, PorosityEngine::Assignment)?;
        let inner = d.tree.is_inner_edge(edge);
        if inner {
            if let Some(m) = &d.anchor {
                if m.crossing(g, &shore) != 0 {
                    violations.push(edge);
                }
            }
        }
        if best.as_ref().is_none_or(|(w, _, _)| p.value > *w) {
            best = Some((p.value, edge, p.matching));
        }
        edges.push(EdgeReport { edge, shore, porosity: p.value, inner });
    }
    let (width, argmax, certificate) = best.expect("a tree has an edge");
    Ok(WidthReport { width, edges, argmax, certificate, violations })
}

/// Width of a decomposition; anchored decompositions must be M-conformal.
pub fn width(g: &BipartiteGraph, d: &DecompositionTree) -> Result<WidthReport, TreeError> {
    let r = width_report(g, d)?;
    if !r.violations.is_empty() {
        return Err(TreeError::MConformalityViolated(r.violations));
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Trivial,
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClassification {
    pub kinds: BTreeMap<(NodeId, NodeId), EdgeKind>,
    /// Inner nodes.
    pub spine: Vec<NodeId>,
    /// Number of inner neighbours of each spine node.
    pub spine_degree: BTreeMap<NodeId, usize>,
    /// Spine nodes that are not leaves of the spine.
    pub spine_of_spine: Vec<NodeId>,
}

impl EdgeClassification {
    pub fn odd_edges(&self) -> Vec<(NodeId, NodeId)> {
        self.kinds.iter().filter(|(_, &k)| k == EdgeKind::Odd).map(|(&e, _)| e).collect()
    }

    /// Counts of spine nodes with spine degree 0, 1, 2 and 3.
    pub fn degree_profile(&self) -> [usize; 4] {
        let mut out = [0; 4];
        for &d in self.spine_degree.values() {
            out[d] += 1;
        }
        out
    }
}

pub fn classify_edges(t: &CubicTree) -> Result<EdgeClassification, TreeError> {
    let leaves = t.leaves().len();
    if leaves % 2 == 1 {
        return Err(TreeError::OddLeafCount(leaves));
    }
    let (parent, order) = t.rooted();
    let mut sub = vec![0usize; t.node_count()];
    for &x in order.iter().rev() {
        if t.is_leaf(x) {
            sub[x] += 1;
        }
        if parent[x] != usize::MAX {
            sub[parent[x]] += sub[x];
        }
    }
    let mut kinds = BTreeMap::new();
    for (u, v) in t.edges() {
        let kind = if t.is_leaf(u) || t.is_leaf(v) {
            EdgeKind::Trivial
        } else {
            let child = if parent[v] == u { v } else { u };
            if sub[child] % 2 == 1 {
                EdgeKind::Odd
            } else {
                EdgeKind::Even
            }
        };
        kinds.insert((u, v), kind);
    }
    let spine: Vec<NodeId> = (0..t.node_count()).filter(|&x| !t.is_leaf(x)).collect();
    let spine_degree: BTreeMap<NodeId, usize> =
        spine.iter().map(|&x| (x, t.neighbours(x).iter().filter(|&&y| !t.is_leaf(y)).count())).collect();
    let spine_of_spine = spine.iter().copied().filter(|x| spine_degree[x] >= 2).collect();
    Ok(EdgeClassification { kinds, spine, spine_degree, spine_of_spine })
}

/// Mutable adjacency used by the surgeries; node ids are kept stable until
/// [`Builder::finish`] compacts them in increasing order.
#[derive(Clone, Debug)]
struct Builder {
    adj: BTreeMap<NodeId, BTreeSet<NodeId>>,
    leaf: BTreeMap<NodeId, Vertex>,
    next: NodeId,
}

impl Builder {
    fn from(d: &DecompositionTree) -> Self {
        let mut adj = BTreeMap::new();
        for t in 0..d.tree.node_count() {
            adj.insert(t, d.tree.neighbours(t).iter().copied().collect());
        }
        let leaf = d.leaf_vertex.iter().enumerate().filter_map(|(t, v)| v.map(|v| (t, v))).collect();
        Builder { adj, leaf, next: d.tree.node_count() }
    }

    fn add_node(&mut self) -> NodeId {
        let t = self.next;
        self.next += 1;
        self.adj.insert(t, BTreeSet::new());
        t
    }

    fn link(&mut self, u: NodeId, v: NodeId) {
        self.adj.get_mut(&u).expect("node").insert(v);
        self.adj.get_mut(&v).expect("node").insert(u);
    }

    fn unlink(&mut self, u: NodeId, v: NodeId) {
        self.adj.get_mut(&u).expect("node").remove(&v);
        self.adj.get_mut(&v).expect("node").remove(&u);
    }

    fn remove_node(&mut self, t: NodeId) {
        let nbrs = self.adj.remove(&t).expect("node");
        for s in nbrs {
            self.adj.get_mut(&s).expect("node").remove(&t);
        }
        self.leaf.remove(&t);
    }

    fn neighbours(&self, t: NodeId) -> Vec<NodeId> {
        self.adj[&t].iter().copied().collect()
    }

    /// Removes unmapped nodes of degree at most one until none is left.
    fn prune(&mut self) {
        loop {
            let dead: Vec<NodeId> =
                self.adj.iter().filter(|(t, s)| s.len() <= 1 && !self.leaf.contains_key(t)).map(|(&t, _)| t).collect();
            if dead.is_empty() {
                return;
            }
            for t in dead {
                if self.adj.contains_key(&t) {
                    self.remove_node(t);
                }
            }
        }
    }

    /// Contracts every degree-two node into its lower-id neighbour.
    fn trim(&mut self) {
        while let Some(t) = self.adj.iter().find(|(_, s)| s.len() == 2).map(|(&t, _)| t) {
            let nbrs = self.neighbours(t);
            let (low, high) = (nbrs[0], nbrs[1]);
            self.remove_node(t);
            self.link(low, high);
        }
    }

    fn finish(&self) -> (CubicTree, Vec<Option<Vertex>>) {
        let ids: BTreeMap<NodeId, NodeId> = self.adj.keys().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut edges = Vec::new();
        for (&u, s) in &self.adj {
            for &v in s {
                if u < v {
                    edges.push((ids[&u], ids[&v]));
                }
            }
        }
        let tree = CubicTree::from_edges(ids.len(), &edges).expect("surgery keeps a tree");
        let mut leaf_vertex = vec![None; ids.len()];
        for (&t, &v) in &self.leaf {
            leaf_vertex[ids[&t]] = Some(v);
        }
        (tree, leaf_vertex)
    }
}

/// Contracts degree-two nodes (each into its lower-id neighbour) until the
/// tree is cubic. Node ids are compacted keeping their relative order.
pub fn trim(t: &CubicTree) -> CubicTree {
    let d = DecompositionTree::new(t.clone(), vec![None; t.node_count()], None);
    let mut b = Builder::from(&d);
    b.trim();
    b.finish().0
}

/// Removes every odd edge by the path surgery: for an odd path with ends
/// `x1 < x2` and their leaves `l1`, `l2`, drop `x1 l1` and `x2 l2`, contract
/// the remaining non-path edge at `x2` and hang `l1`, `l2` from a new node
/// attached to `x1`.
pub fn eliminate_odd_edges(g: &BipartiteGraph, d: &DecompositionTree) -> Result<DecompositionTree, TreeError> {
    d.validate(g)?;
    let mut current = d.clone();
    loop {
        let class = classify_edges(&current.tree)?;
        let odd = class.odd_edges();
        if odd.is_empty() {
            return Ok(current);
        }
        let mut odd_adj: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for &(u, v) in &odd {
            odd_adj.entry(u).or_default().push(v);
            odd_adj.entry(v).or_default().push(u);
        }
        let x1 = *odd_adj.iter().find(|(_, s)| s.len() == 1).expect("odd edges form paths").0;
        let mut prev = x1;
        let mut x2 = odd_adj[&x1][0];
        while odd_adj[&x2].len() == 2 {
            let next = if odd_adj[&x2][0] == prev { odd_adj[&x2][1] } else { odd_adj[&x2][0] };
            prev = x2;
            x2 = next;
        }
        let on_path_at_x2 = prev;
        let t = &current.tree;
        let leaf_of = |x: NodeId| *t.neighbours(x).iter().find(|&&s| t.is_leaf(s)).expect("path end has a leaf");
        let (l1, l2) = (leaf_of(x1), leaf_of(x2));
        let w = *t
            .neighbours(x2)
            .iter()
            .find(|&&s| s != l2 && s != on_path_at_x2)
            .expect("path end has an even spine edge");
        let mut b = Builder::from(&current);
        b.unlink(x1, l1);
        b.unlink(x2, l2);
        b.remove_node(x2);
        b.link(on_path_at_x2, w);
        let y = b.add_node();
        b.link(x1, y);
        b.link(l1, y);
        b.link(l2, y);
        let (tree, leaf_vertex) = b.finish();
        current = DecompositionTree { tree, leaf_vertex, anchor: current.anchor.clone() };
    }
}

#[derive(Clone, Debug)]
pub struct Restriction {
    pub graph: BipartiteGraph,
    /// Vertex of `graph` -> host vertex.
    pub to_host: Vec<Vertex>,
    pub decomposition: DecompositionTree,
}

/// Decomposition of the subgraph induced by the conformal set `h`: leaves
/// outside `h` are deleted, dangling inner nodes pruned and the result
/// trimmed. An anchor survives when no anchor edge leaves `h`.
pub fn restrict_to_conformal(
    g: &BipartiteGraph,
    d: &DecompositionTree,
    h: &VertexSet,
) -> Result<Restriction, TreeError> {
    d.validate(g)?;
    let rest = h.complement();
    if h.len() < 2 || !is_conformal(g, h, None) || !is_conformal(g, &rest, None) {
        return Err(TreeError::NotConformal);
    }
    let (sub, to_host) = g.induced(h).map_err(|_| TreeError::NotConformal)?;
    if !is_matching_covered(&sub).covered {
        return Err(TreeError::NotMatchingCovered);
    }
    let mut from_host = vec![None; g.vertex_count()];
    for (i, v) in to_host.iter().enumerate() {
        from_host[v.0] = Some(Vertex(i));
    }
    let mut b = Builder::from(d);
    for (t, v) in b.leaf.clone() {
        if !h.contains(v.0) {
            b.remove_node(t);
        }
    }
    b.prune();
    b.trim();
    for v in b.leaf.values_mut() {
        *v = from_host[v.0].expect("kept vertex");
    }
    let (tree, leaf_vertex) = b.finish();
    let anchor = d.anchor.as_ref().filter(|m| m.crossing(g, h) == 0).map(|m| {
        Matching::new(
            m.pairs()
                .iter()
                .filter(|&&(a, _)| h.contains(g.a(a).0))
                .map(|&(a, bb)| (sub.local(from_host[g.a(a).0].unwrap()), sub.local(from_host[g.b(bb).0].unwrap())))
                .collect(),
        )
    });
    Ok(Restriction { graph: sub, to_host, decomposition: DecompositionTree { tree, leaf_vertex, anchor } })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZOrientation {
    /// One arc `(tail, head)` per tree edge.
    pub arcs: Vec<(NodeId, NodeId)>,
    /// Nodes with at least two outgoing arcs.
    pub inconsistencies: Vec<NodeId>,
    /// Inner nodes without outgoing arcs.
    pub sinks: Vec<NodeId>,
    /// The sink, if there is exactly one.
    pub sink: Option<NodeId>,
}

/// Leaf edges point away from their leaf; an inner edge points toward the
/// side holding an odd number of vertices of `z`. Needs `|z|` odd.
pub fn z_orientation(g: &BipartiteGraph, d: &DecompositionTree, z: &VertexSet) -> Result<ZOrientation, TreeError> {
    d.validate(g)?;
    if z.len() % 2 == 0 {
        return Err(TreeError::NotTight);
    }
    let t = &d.tree;
    let mut out_deg = vec![0usize; t.node_count()];
    let mut arcs = Vec::new();
    for ((u, v), shore) in d.shores(g) {
        let arc = if t.is_leaf(u) {
            (u, v)
        } else if t.is_leaf(v) {
            (v, u)
        } else if shore.intersection(z).len() % 2 == 1 {
            (u, v)
        } else {
            (v, u)
        };
        out_deg[arc.0] += 1;
        arcs.push(arc);
    }
    let inconsistencies = (0..t.node_count()).filter(|&x| out_deg[x] >= 2).collect();
    let sinks: Vec<NodeId> = (0..t.node_count()).filter(|&x| out_deg[x] == 0).collect();
    let sink = if sinks.len() == 1 { Some(sinks[0]) } else { None };
    Ok(ZOrientation { arcs, inconsistencies, sinks, sink })
}

#[derive(Clone, Debug)]
pub struct ContractedDecomposition {
    pub graph: BipartiteGraph,
    pub record: ContractionRecord,
    pub decomposition: DecompositionTree,
}

/// Moves an anchored decomposition to the contraction of the tight shore
/// `z`: the leaves of `z` other than the end `x` of the one anchor edge
/// leaving `z` are deleted, the tree is pruned and trimmed, and `x`'s leaf
/// becomes the contraction vertex.
pub fn contract_decomposition(
    g: &BipartiteGraph,
    d: &DecompositionTree,
    z: &VertexSet,
) -> Result<ContractedDecomposition, TreeError> {
    d.validate(g)?;
    let m = d.anchor.as_ref().ok_or(TreeError::NotMAnchored)?;
    if !width_report(g, d)?.violations.is_empty() {
        return Err(TreeError::NotMAnchored);
    }
    if !is_nontrivial(g, z) {
        return Err(TreeError::TrivialCut);
    }
    if !is_tight_cut(g, z)? {
        return Err(TreeError::NotTight);
    }
    let crossing: Vec<(usize, usize)> =
        m.pairs().iter().copied().filter(|&(a, b)| z.contains(g.a(a).0) != z.contains(g.b(b).0)).collect();
    let (ea, eb) = crossing[0];
    let (x, y) = if z.contains(g.a(ea).0) { (g.a(ea), g.b(eb)) } else { (g.b(eb), g.a(ea)) };
    let (h, record) = contract_unchecked(g, z);
    let mut b = Builder::from(d);
    for (t, v) in b.leaf.clone() {
        if z.contains(v.0) && v != x {
            b.remove_node(t);
        }
    }
    b.prune();
    b.trim();
    for v in b.leaf.values_mut() {
        *v = record.vertex_map[v.0];
    }
    let (tree, leaf_vertex) = b.finish();
    let mut pairs: Vec<(usize, usize)> = m
        .pairs()
        .iter()
        .filter(|&&(a, bb)| !z.contains(g.a(a).0) && !z.contains(g.b(bb).0))
        .map(|&(a, bb)| (h.local(record.vertex_map[g.a(a).0]), h.local(record.vertex_map[g.b(bb).0])))
        .collect();
    let (vz, yy) = (record.contraction_vertex, record.vertex_map[y.0]);
    pairs.push(if g.side(x) == crate::graph::Side::A { (h.local(vz), h.local(yy)) } else { (h.local(yy), h.local(vz)) });
    let decomposition = DecompositionTree { tree, leaf_vertex, anchor: Some(Matching::new(pairs)) };
    Ok(ContractedDecomposition { graph: h, record, decomposition })
}

/// How two contractions of one host fit together. Each map sends a vertex
/// of the part to its host vertex, with `None` exactly at the part's
/// contraction vertex.
#[derive(Clone, Copy, Debug)]
pub struct Gluing<'a> {
    pub host: &'a BipartiteGraph,
    pub h_graph: &'a BipartiteGraph,
    pub h_to_host: &'a [Option<Vertex>],
    pub j_graph: &'a BipartiteGraph,
    pub j_to_host: &'a [Option<Vertex>],
}

/// Glues decompositions of the two contractions of a tight cut: both
/// contraction-vertex leaves are deleted and their former neighbours joined.
pub fn merge_decompositions(
    d_h: &DecompositionTree,
    d_j: &DecompositionTree,
    glue: &Gluing,
) -> Result<DecompositionTree, TreeError> {
    let bad = |s: &str| TreeError::IncompatibleGluing(s.into());
    d_h.validate(glue.h_graph)?;
    d_j.validate(glue.j_graph)?;
    if glue.h_to_host.len() != glue.h_graph.vertex_count() || glue.j_to_host.len() != glue.j_graph.vertex_count() {
        return Err(bad("vertex map has the wrong length"));
    }
    let contraction = |map: &[Option<Vertex>]| -> Result<Vertex, TreeError> {
        let c: Vec<usize> = (0..map.len()).filter(|&i| map[i].is_none()).collect();
        if c.len() != 1 {
            return Err(bad("expected exactly one contraction vertex per part"));
        }
        Ok(Vertex(c[0]))
    };
    let vh = contraction(glue.h_to_host)?;
    let vj = contraction(glue.j_to_host)?;
    let n = glue.host.vertex_count();
    let mut seen = vec![false; n];
    for v in glue.h_to_host.iter().chain(glue.j_to_host).flatten() {
        if v.0 >= n || seen[v.0] {
            return Err(bad("vertex maps do not partition the host"));
        }
        seen[v.0] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(bad("vertex maps do not cover the host"));
    }
    let shore = VertexSet::from_iter(n, glue.h_to_host.iter().flatten().map(|v| v.0));
    if shore.len() == n || !is_tight_cut(glue.host, &shore)? {
        return Err(bad("cut is not tight in the host"));
    }
    let lh = d_h.node_of(vh).ok_or_else(|| bad("contraction vertex missing"))?;
    let lj = d_j.node_of(vj).ok_or_else(|| bad("contraction vertex missing"))?;
    let off = d_h.tree.node_count();
    let mut edges = Vec::new();
    let mut leaf_vertex = Vec::new();
    for (d, map, o) in [(d_h, glue.h_to_host, 0), (d_j, glue.j_to_host, off)] {
        for (u, v) in d.tree.edges() {
            edges.push((u + o, v + o));
        }
        for t in 0..d.tree.node_count() {
            leaf_vertex.push(d.leaf_vertex[t].and_then(|v| map[v.0]));
        }
    }
    let ph = d_h.tree.neighbours(lh)[0];
    let pj = d_j.tree.neighbours(lj)[0] + off;
    edges.retain(|&(u, v)| u != lh && v != lh && u != lj + off && v != lj + off);
    edges.push((ph.min(pj), ph.max(pj)));
    let mut b = Builder { adj: BTreeMap::new(), leaf: BTreeMap::new(), next: leaf_vertex.len() };
    for t in 0..leaf_vertex.len() {
        if t != lh && t != lj + off {
            b.adj.insert(t, BTreeSet::new());
            if let Some(v) = leaf_vertex[t] {
                b.leaf.insert(t, v);
            }
        }
    }
    for (u, v) in edges {
        b.link(u, v);
    }
    // A part with two vertices leaves a degree-two node behind.
    b.trim();
    let (tree, leaf_vertex) = b.finish();
    Ok(DecompositionTree { tree, leaf_vertex, anchor: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tight::contract;

    /// C4 with M = {a1b1, a2b2}: two cherries joined by one inner edge.
    pub(crate) fn c4_decomposition(g: &BipartiteGraph) -> DecompositionTree {
        DecompositionTree::from_parts(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)],
            &[(2, g.a(0)), (3, g.b(0)), (4, g.a(1)), (5, g.b(1))],
            Some(Matching::new(vec![(0, 0), (1, 1)])),
        )
        .unwrap()
    }

    /// K33 star: centre 0, three cherries on the edges a_i b_i.
    fn k33_decomposition(g: &BipartiteGraph) -> DecompositionTree {
        let mut edges = vec![];
        let mut leaves = vec![];
        for i in 0..3 {
            let c = 1 + 3 * i;
            edges.extend([(0, c), (c, c + 1), (c, c + 2)]);
            leaves.extend([(c + 1, g.a(i)), (c + 2, g.b(i))]);
        }
        DecompositionTree::from_parts(10, &edges, &leaves, Some(Matching::new(vec![(0, 0), (1, 1), (2, 2)]))).unwrap()
    }

    /// A caterpillar on 2n - 2 nodes with the given leaf order.
    fn caterpillar(g: &BipartiteGraph, order: &[Vertex]) -> DecompositionTree {
        let l = order.len();
        let spine = l - 2;
        let mut edges = vec![];
        for i in 0..spine - 1 {
            edges.push((i, i + 1));
        }
        let mut leaves = vec![];
        let mut next = spine;
        for (k, &v) in order.iter().enumerate() {
            let s = if k == 0 { 0 } else if k == l - 1 { spine - 1 } else { k - 1 };
            edges.push((s, next));
            leaves.push((next, v));
            next += 1;
        }
        let _ = g;
        DecompositionTree::from_parts(2 * l - 2, &edges, &leaves, None).unwrap()
    }

    #[test]
    fn small_widths() {
        let c4 = BipartiteGraph::cycle(2);
        assert_eq!(width(&c4, &c4_decomposition(&c4)).unwrap().width, 2);
        let k33 = BipartiteGraph::complete(3, 3);
        let r = width(&k33, &k33_decomposition(&k33)).unwrap();
        assert_eq!(r.width, 2);
        assert_eq!(r.certificate.crossing(&k33, &r.edges.iter().find(|e| e.edge == r.argmax).unwrap().shore), 2);
        let k2 = BipartiteGraph::complete(1, 1);
        let d = DecompositionTree::from_parts(2, &[(0, 1)], &[(0, k2.a(0)), (1, k2.b(0))], None).unwrap();
        assert_eq!(width(&k2, &d).unwrap().width, 1);
    }

    #[test]
    fn anchor_violation_is_reported() {
        let c4 = BipartiteGraph::cycle(2);
        let d = c4_decomposition(&c4).with_anchor(Some(Matching::new(vec![(0, 1), (1, 0)])));
        let c4e = c4.edges().to_vec();
        assert!(c4e.contains(&(0, 1)) && c4e.contains(&(1, 0)));
        assert_eq!(width(&c4, &d).unwrap_err(), TreeError::MConformalityViolated(vec![(0, 1)]));
    }

    #[test]
    fn validation_rejects_broken_maps() {
        let c4 = BipartiteGraph::cycle(2);
        let d = DecompositionTree::from_parts(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)],
            &[(2, c4.a(0)), (3, c4.a(0)), (4, c4.a(1)), (5, c4.b(1))],
            None,
        )
        .unwrap();
        assert!(matches!(d.validate(&c4), Err(TreeError::InvalidDecomposition(_))));
        assert!(CubicTree::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
    }

    #[test]
    fn classification_examples() {
        let c4 = BipartiteGraph::cycle(2);
        let c = classify_edges(c4_decomposition(&c4).tree()).unwrap();
        assert_eq!(c.kinds.values().filter(|&&k| k == EdgeKind::Trivial).count(), 4);
        assert_eq!(c.kinds[&(0, 1)], EdgeKind::Even);
        let c6 = BipartiteGraph::cycle(3);
        let cat = caterpillar(&c6, &c6.vertices().collect::<Vec<_>>());
        let c = classify_edges(cat.tree()).unwrap();
        // spine 0-1-2-3; splits 2|4, 3|3, 2|4.
        assert_eq!(c.kinds[&(0, 1)], EdgeKind::Even);
        assert_eq!(c.kinds[&(1, 2)], EdgeKind::Odd);
        assert_eq!(c.kinds[&(2, 3)], EdgeKind::Even);
        let k33 = BipartiteGraph::complete(3, 3);
        assert!(classify_edges(k33_decomposition(&k33).tree()).unwrap().odd_edges().is_empty());
        let odd = CubicTree::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(classify_edges(&odd).unwrap_err(), TreeError::OddLeafCount(3));
    }

    #[test]
    fn trimming_examples() {
        let cubic = CubicTree::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(trim(&cubic), cubic);
        let path = CubicTree::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(trim(&path), CubicTree::from_edges(2, &[(0, 1)]).unwrap());
        let five = CubicTree::from_edges(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let t = trim(&five);
        assert_eq!(t.node_count(), 4);
        assert!(t.is_cubic());
    }

    #[test]
    fn odd_edge_elimination_on_c6_caterpillar() {
        let c6 = BipartiteGraph::cycle(3);
        let cat = caterpillar(&c6, &c6.vertices().collect::<Vec<_>>());
        let before = width(&c6, &cat).unwrap().width;
        let out = eliminate_odd_edges(&c6, &cat).unwrap();
        out.validate(&c6).unwrap();
        assert!(classify_edges(out.tree()).unwrap().odd_edges().is_empty());
        assert!(width(&c6, &out).unwrap().width <= before + before % 2);
        let k33 = BipartiteGraph::complete(3, 3);
        let d = k33_decomposition(&k33);
        assert_eq!(eliminate_odd_edges(&k33, &d).unwrap(), d);
    }

    #[test]
    fn restriction_of_c6_to_c4() {
        let c6 = BipartiteGraph::cycle(3);
        let cat = caterpillar(&c6, &c6.vertices().collect::<Vec<_>>());
        let full = restrict_to_conformal(&c6, &cat, &VertexSet::full(6)).unwrap();
        assert_eq!(full.decomposition, cat);
        // Drop the matching edge a3 b3; the rest is a path, not matching covered.
        let h = VertexSet::from_iter(6, [c6.a(0).0, c6.a(1).0, c6.b(0).0, c6.b(1).0]);
        assert_eq!(restrict_to_conformal(&c6, &cat, &h).unwrap_err(), TreeError::NotMatchingCovered);
        let c8 = BipartiteGraph::cycle(4);
        let mut chord = c8.edges().to_vec();
        chord.push((0, 2));
        let g = BipartiteGraph::new(4, 4, &chord).unwrap();
        assert!(is_matching_covered(&g).covered);
        let cat = caterpillar(&g, &g.vertices().collect::<Vec<_>>());
        let h = VertexSet::from_iter(8, [g.a(0).0, g.b(2).0, g.a(3).0, g.b(3).0]);
        let r = restrict_to_conformal(&g, &cat, &h).unwrap();
        r.decomposition.validate(&r.graph).unwrap();
        assert!(width(&r.graph, &r.decomposition).unwrap().width <= width(&g, &cat).unwrap().width);
        let bad = VertexSet::from_iter(8, [g.a(0).0, g.b(1).0]);
        assert_eq!(restrict_to_conformal(&g, &cat, &bad).unwrap_err(), TreeError::NotConformal);
    }

    fn c6_anchored() -> (BipartiteGraph, DecompositionTree) {
        let c6 = BipartiteGraph::cycle(3);
        // Cherries on a_i b_i around a centre.
        let mut edges = vec![];
        let mut leaves = vec![];
        for i in 0..3 {
            let c = 1 + 3 * i;
            edges.extend([(0, c), (c, c + 1), (c, c + 2)]);
            leaves.extend([(c + 1, c6.a(i)), (c + 2, c6.b(i))]);
        }
        let d = DecompositionTree::from_parts(10, &edges, &leaves, Some(Matching::new(vec![(0, 0), (1, 1), (2, 2)])))
            .unwrap();
        (c6, d)
    }

    #[test]
    fn z_orientation_of_anchored_c6() {
        let (c6, d) = c6_anchored();
        let z = VertexSet::from_iter(6, [0, 1, 3]);
        let o = z_orientation(&c6, &d, &z).unwrap();
        assert!(o.inconsistencies.is_empty());
        let s = o.sink.unwrap();
        assert!(d.tree().neighbours(s).iter().any(|&l| d.leaf_vertex(l).is_some_and(|v| z.contains(v.0))));
    }

    #[test]
    fn contraction_and_merge_on_c6() {
        let (c6, d) = c6_anchored();
        let z = VertexSet::from_iter(6, [0, 1, 3]);
        let w = width(&c6, &d).unwrap().width;
        let cz = contract_decomposition(&c6, &d, &z).unwrap();
        cz.decomposition.validate(&cz.graph).unwrap();
        assert!(width(&cz.graph, &cz.decomposition).unwrap().width <= w);
        let cc = contract_decomposition(&c6, &d, &z.complement()).unwrap();
        assert!(width(&cc.graph, &cc.decomposition).unwrap().width <= w);

        let big = VertexSet::from_iter(6, [0, 1, 2, 3, 4]);
        assert_eq!(contract_decomposition(&c6, &d, &big).unwrap_err(), TreeError::TrivialCut);
        assert_eq!(
            contract_decomposition(&c6, &d.clone().with_anchor(None), &z).unwrap_err(),
            TreeError::NotMAnchored
        );

        // Two C4 decompositions glued back along the cut.
        let (h, rh) = contract(&c6, &z.complement()).unwrap();
        let (j, rj) = contract(&c6, &z).unwrap();
        let dh = c4_decomposition(&h).with_anchor(None);
        let dj = c4_decomposition(&j).with_anchor(None);
        let mh = rh.child_to_parent(h.vertex_count());
        let mj = rj.child_to_parent(j.vertex_count());
        let glue = Gluing { host: &c6, h_graph: &h, h_to_host: &mh, j_graph: &j, j_to_host: &mj };
        let merged = merge_decompositions(&dh, &dj, &glue).unwrap();
        merged.validate(&c6).unwrap();
        let r = width(&c6, &merged).unwrap();
        assert_eq!(r.width, 2);
        assert!(r.edges.iter().any(|e| e.shore == z || e.shore == z.complement()));
        let glued = r.edges.iter().find(|e| e.shore == z || e.shore == z.complement()).unwrap();
        assert_eq!(glued.porosity, 1);
    }
}
