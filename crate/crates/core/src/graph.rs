//! Bipartite graphs, vertices and matchings.
//!
//! Vertices carry a global index: the `a_count` vertices of class A come
//! first, followed by the `b_count` vertices of class B. Edge lists use
//! class-local 0-based indices `(a, b)`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Global vertex index of a bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex(pub usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("colour class {0:?} is empty")]
    EmptyClass(Side),
    #[error("edge ({a}, {b}) is out of range")]
    IndexOutOfRange { a: usize, b: usize },
    #[error("duplicate edge ({a}, {b})")]
    DuplicateEdge { a: usize, b: usize },
    #[error("pair ({a}, {b}) is not an edge of the graph")]
    NotAnEdge { a: usize, b: usize },
    #[error("matching edges share a vertex")]
    NotDisjoint,
    #[error("matching is not perfect")]
    NotPerfect,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    a_count: usize,
    b_count: usize,
    edges: Vec<(usize, usize)>,
    adj_a: Vec<Vec<usize>>,
    adj_b: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(a_count: usize, b_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if a_count == 0 {
            return Err(GraphError::EmptyClass(Side::A));
        }
        if b_count == 0 {
            return Err(GraphError::EmptyClass(Side::B));
        }
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge { a: w[0].0, b: w[0].1 });
            }
        }
        let mut adj_a = vec![Vec::new(); a_count];
        let mut adj_b = vec![Vec::new(); b_count];
        for &(a, b) in &sorted {
            if a >= a_count || b >= b_count {
                return Err(GraphError::IndexOutOfRange { a, b });
            }
            adj_a[a].push(b);
            adj_b[b].push(a);
        }
        for l in adj_b.iter_mut() {
            l.sort_unstable();
        }
        Ok(BipartiteGraph { a_count, b_count, edges: sorted, adj_a, adj_b })
    }

    /// Like [`BipartiteGraph::new`] but drops repeated edges instead of failing.
    pub fn new_dedup(a_count: usize, b_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut e = edges.to_vec();
        e.sort_unstable();
        e.dedup();
        Self::new(a_count, b_count, &e)
    }

    pub fn complete(a_count: usize, b_count: usize) -> Self {
        let edges: Vec<_> = (0..a_count).flat_map(|a| (0..b_count).map(move |b| (a, b))).collect();
        Self::new(a_count, b_count, &edges).expect("complete bipartite graph")
    }

    /// The even cycle on `2n` vertices `a1 b1 a2 b2 ... an bn a1`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 2);
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push((i, i));
            edges.push(((i + 1) % n, i));
        }
        Self::new(n, n, &edges).expect("even cycle")
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    pub fn vertex_count(&self) -> usize {
        self.a_count + self.b_count
    }

    pub fn is_balanced(&self) -> bool {
        self.a_count == self.b_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn a(&self, i: usize) -> Vertex {
        debug_assert!(i < self.a_count);
        Vertex(i)
    }

    pub fn b(&self, j: usize) -> Vertex {
        debug_assert!(j < self.b_count);
        Vertex(self.a_count + j)
    }

    pub fn side(&self, v: Vertex) -> Side {
        if v.0 < self.a_count {
            Side::A
        } else {
            Side::B
        }
    }

    /// Class-local index of a vertex.
    pub fn local(&self, v: Vertex) -> usize {
        if v.0 < self.a_count {
            v.0
        } else {
            v.0 - self.a_count
        }
    }

    pub fn vertex(&self, side: Side, local: usize) -> Vertex {
        match side {
            Side::A => self.a(local),
            Side::B => self.b(local),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.vertex_count()).map(Vertex)
    }

    pub fn class(&self, side: Side) -> VertexSet {
        let n = self.vertex_count();
        match side {
            Side::A => VertexSet::from_iter(n, 0..self.a_count),
            Side::B => VertexSet::from_iter(n, self.a_count..n),
        }
    }

    pub fn label(&self, v: Vertex) -> String {
        match self.side(v) {
            Side::A => format!("a{}", self.local(v) + 1),
            Side::B => format!("b{}", self.local(v) + 1),
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.a_count && self.adj_a[a].binary_search(&b).is_ok()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        match (self.side(u), self.side(v)) {
            (Side::A, Side::B) => self.has_edge(self.local(u), self.local(v)),
            (Side::B, Side::A) => self.has_edge(self.local(v), self.local(u)),
            _ => false,
        }
    }

    /// Class-local B-neighbours of A-vertex `a`.
    pub fn adj_a(&self, a: usize) -> &[usize] {
        &self.adj_a[a]
    }

    /// Class-local A-neighbours of B-vertex `b`.
    pub fn adj_b(&self, b: usize) -> &[usize] {
        &self.adj_b[b]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        match self.side(v) {
            Side::A => self.adj_a[self.local(v)].len(),
            Side::B => self.adj_b[self.local(v)].len(),
        }
    }

    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        match self.side(v) {
            Side::A => self.adj_a[self.local(v)].iter().map(|&b| self.b(b)).collect(),
            Side::B => self.adj_b[self.local(v)].iter().map(|&a| self.a(a)).collect(),
        }
    }

    pub fn neighbourhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.vertex_count());
        for v in s.iter() {
            for u in self.neighbours(Vertex(v)) {
                out.insert(u.0);
            }
        }
        out
    }

    /// Edge endpoints as global vertices.
    pub fn endpoints(&self, e: (usize, usize)) -> (Vertex, Vertex) {
        (self.a(e.0), self.b(e.1))
    }

    /// Edges with exactly one endpoint in `x`.
    pub fn cut(&self, x: &VertexSet) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .filter(|&(a, b)| x.contains(self.a(a).0) != x.contains(self.b(b).0))
            .collect()
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = VertexSet::empty(n);
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for u in self.neighbours(Vertex(v)) {
                    if !seen[u.0] {
                        seen[u.0] = true;
                        queue.push_back(u.0);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Subgraph induced by `keep`, with vertices renumbered in increasing
    /// order per class. Returns the new graph and, for each new vertex, the
    /// old vertex it came from. Fails if a class becomes empty.
    pub fn induced(&self, keep: &VertexSet) -> Result<(BipartiteGraph, Vec<Vertex>), GraphError> {
        let mut a_map = vec![usize::MAX; self.a_count];
        let mut b_map = vec![usize::MAX; self.b_count];
        let mut a_old = Vec::new();
        let mut b_old = Vec::new();
        for a in 0..self.a_count {
            if keep.contains(self.a(a).0) {
                a_map[a] = a_old.len();
                a_old.push(self.a(a));
            }
        }
        for b in 0..self.b_count {
            if keep.contains(self.b(b).0) {
                b_map[b] = b_old.len();
                b_old.push(self.b(b));
            }
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a_map[a] != usize::MAX && b_map[b] != usize::MAX)
            .map(|&(a, b)| (a_map[a], b_map[b]))
            .collect();
        let g = BipartiteGraph::new(a_old.len(), b_old.len(), &edges)?;
        a_old.extend(b_old);
        Ok((g, a_old))
    }

    /// Same graph with the two colour classes exchanged.
    pub fn swap_sides(&self) -> BipartiteGraph {
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (b, a)).collect();
        BipartiteGraph::new(self.b_count, self.a_count, &edges).expect("swapped graph")
    }

    /// Global vertex of `v` after [`BipartiteGraph::swap_sides`].
    pub fn swapped_vertex(&self, v: Vertex) -> Vertex {
        match self.side(v) {
            Side::A => Vertex(self.b_count + self.local(v)),
            Side::B => Vertex(self.local(v)),
        }
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartiteGraph({}x{}; ", self.a_count, self.b_count)?;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "a{}b{}", a + 1, b + 1)?;
        }
        write!(f, ")")
    }
}

/// A set of pairwise disjoint edges, stored as sorted class-local pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        Matching { pairs }
    }

    pub fn empty() -> Self {
        Matching { pairs: Vec::new() }
    }

    /// Builds the matching from a mate array of class A (`mate_a[a] = b`).
    pub fn from_mates(mate_a: &[Option<usize>]) -> Self {
        Matching::new(mate_a.iter().enumerate().filter_map(|(a, m)| m.map(|b| (a, b))).collect())
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, e: (usize, usize)) -> bool {
        self.pairs.binary_search(&e).is_ok()
    }

    pub fn mate_of_a(&self, a: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == a).map(|p| p.1)
    }

    pub fn mate_of_b(&self, b: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.1 == b).map(|p| p.0)
    }

    /// Partner of a global vertex, if covered.
    pub fn mate(&self, g: &BipartiteGraph, v: Vertex) -> Option<Vertex> {
        match g.side(v) {
            Side::A => self.mate_of_a(g.local(v)).map(|b| g.b(b)),
            Side::B => self.mate_of_b(g.local(v)).map(|a| g.a(a)),
        }
    }

    /// Checks that every pair is an edge of `g` and pairs are disjoint.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<(), GraphError> {
        let mut used_a = vec![false; g.a_count()];
        let mut used_b = vec![false; g.b_count()];
        for &(a, b) in &self.pairs {
            if !g.has_edge(a, b) {
                return Err(GraphError::NotAnEdge { a, b });
            }
            if used_a[a] || used_b[b] {
                return Err(GraphError::NotDisjoint);
            }
            used_a[a] = true;
            used_b[b] = true;
        }
        Ok(())
    }

    pub fn is_perfect(&self, g: &BipartiteGraph) -> bool {
        g.is_balanced() && self.pairs.len() == g.a_count() && self.validate(g).is_ok()
    }

    /// Fails unless this is a perfect matching of `g`.
    pub fn check_perfect(&self, g: &BipartiteGraph) -> Result<(), GraphError> {
        self.validate(g)?;
        if !g.is_balanced() || self.pairs.len() != g.a_count() {
            return Err(GraphError::NotPerfect);
        }
        Ok(())
    }

    /// Number of matching edges in the cut of `x`.
    pub fn crossing(&self, g: &BipartiteGraph, x: &VertexSet) -> usize {
        self.pairs
            .iter()
            .filter(|&&(a, b)| x.contains(g.a(a).0) != x.contains(g.b(b).0))
            .count()
    }
}
