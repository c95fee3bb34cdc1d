//! Tight cuts, tight cut contractions and the tight cut decomposition of
//! bipartite matching covered graphs into braces.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, GraphError, Side, Vertex};
use crate::limits::CapExceeded;
use crate::matching::{enumerate_perfect_matchings, is_k_extendable, is_matching_covered};
use crate::porosity::{matching_porosity, PorosityError};
use crate::vset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TightCutError {
    #[error("cut is not tight")]
    NotTight,
    #[error("shore and its complement must both be nonempty")]
    DegenerateShore,
    #[error("graph is not matching covered")]
    NotMatchingCovered,
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Porosity(#[from] PorosityError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl TightCutError {
    /// The size cap behind this error, if any.
    pub fn cap_exceeded(&self) -> Option<&CapExceeded> {
        match self {
            TightCutError::Cap(c) => Some(c),
            TightCutError::Porosity(p) => p.cap_exceeded(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightCut {
    pub shore: VertexSet,
}

/// Both shores have at least three vertices.
pub fn is_nontrivial(g: &BipartiteGraph, z: &VertexSet) -> bool {
    z.len() >= 3 && g.vertex_count() - z.len() >= 3
}

/// Every perfect matching crosses the cut of `z` exactly once. Decided as
/// `|z|` odd and porosity one.
pub fn is_tight_cut(g: &BipartiteGraph, z: &VertexSet) -> Result<bool, TightCutError> {
    if z.is_empty() || z.len() == g.vertex_count() {
        return Err(TightCutError::DegenerateShore);
    }
    if z.len() % 2 == 0 {
        return Ok(false);
    }
    Ok(matching_porosity(g, z)? == 1)
}

/// All nontrivial tight cut shores (both shores of every cut), sorted
/// lexicographically by vertex list.
///
/// In a bipartite matching covered graph a nontrivial shore is tight exactly
/// when it has the form `X ∪ N(X)` for a set `X` inside one colour class with
/// `|N(X)| = |X| + 1` and `1 <= |X| <= n - 2`.
pub fn nontrivial_tight_shores(g: &BipartiteGraph, cap: usize) -> Result<Vec<VertexSet>, TightCutError> {
    CapExceeded::check("tight cut search", cap, g.vertex_count())?;
    if !is_matching_covered(g).covered {
        return Err(TightCutError::NotMatchingCovered);
    }
    let n = g.a_count();
    let mut out = Vec::new();
    for side in [Side::A, Side::B] {
        let nbr: Vec<u64> = (0..n)
            .map(|i| {
                let list = match side {
                    Side::A => g.adj_a(i),
                    Side::B => g.adj_b(i),
                };
                list.iter().fold(0u64, |m, &j| m | 1 << j)
            })
            .collect();
        for mask in 1u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size + 2 > n {
                continue;
            }
            let mut reach = 0u64;
            let mut rest = mask;
            while rest != 0 {
                reach |= nbr[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            if reach.count_ones() as usize != size + 1 {
                continue;
            }
            let mut z = VertexSet::empty(g.vertex_count());
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    z.insert(g.vertex(side, i).0);
                }
                if reach >> i & 1 == 1 {
                    z.insert(g.vertex(side.other(), i).0);
                }
            }
            out.push(z);
        }
    }
    out.sort_by_key(|z| z.to_vec());
    Ok(out)
}

/// Exhaustive oracle: every odd shore with both sides of size at least three
/// whose cut is crossed exactly once by every perfect matching.
pub fn nontrivial_tight_shores_exhaustive(g: &BipartiteGraph, cap: usize) -> Result<Vec<VertexSet>, TightCutError> {
    CapExceeded::check("exhaustive tight cut search", cap, g.vertex_count())?;
    let n = g.vertex_count();
    assert!(n <= 30 && g.edge_count() <= 128);
    let matchings = enumerate_perfect_matchings(g, cap)?;
    let edge_index = |e: (usize, usize)| g.edges().binary_search(&e).expect("matching edge");
    let pm_bits: Vec<u128> = matchings
        .iter()
        .map(|m| m.pairs().iter().fold(0u128, |acc, &e| acc | 1 << edge_index(e)))
        .collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) - 1 {
        let size = mask.count_ones() as usize;
        if size % 2 == 0 || size < 3 || n - size < 3 {
            continue;
        }
        let mut cut = 0u128;
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            let ia = mask >> g.a(a).0 & 1;
            let ib = mask >> g.b(b).0 & 1;
            if ia != ib {
                cut |= 1 << i;
            }
        }
        if pm_bits.iter().all(|pm| (pm & cut).count_ones() == 1) {
            out.push(VertexSet::from_mask(n, mask));
        }
    }
    out.sort_by_key(|z| z.to_vec());
    Ok(out)
}

/// The nontrivial tight cut whose shore has the lexicographically smallest
/// vertex list, or `None` if there is none.
pub fn find_nontrivial_tight_cut(g: &BipartiteGraph, cap: usize) -> Result<Option<TightCut>, TightCutError> {
    Ok(nontrivial_tight_shores(g, cap)?.into_iter().next().map(|shore| TightCut { shore }))
}

/// Bookkeeping for one contraction: which parent vertices were merged into
/// the fresh contraction vertex and where every parent vertex went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionRecord {
    /// Index of the parent graph in a [`TightCutTree`], if any.
    pub parent: Option<usize>,
    pub shore: VertexSet,
    pub contraction_vertex: Vertex,
    /// Parent vertex -> vertex of the contracted graph.
    pub vertex_map: Vec<Vertex>,
}

/// Identifies `z` to one vertex and drops parallel edges. The new vertex
/// takes the colour of the `z`-ends of the cut edges and is placed last in
/// its class; the other vertices keep their relative order.
pub fn contract(g: &BipartiteGraph, z: &VertexSet) -> Result<(BipartiteGraph, ContractionRecord), TightCutError> {
    if !is_tight_cut(g, z)? {
        return Err(TightCutError::NotTight);
    }
    Ok(contract_unchecked(g, z))
}

pub(crate) fn contract_unchecked(g: &BipartiteGraph, z: &VertexSet) -> (BipartiteGraph, ContractionRecord) {
    let in_a = z.intersection(&g.class(Side::A)).len();
    let side = if in_a * 2 > z.len() { Side::A } else { Side::B };
    let mut a_map = vec![usize::MAX; g.a_count()];
    let mut b_map = vec![usize::MAX; g.b_count()];
    let mut na = 0;
    let mut nb = 0;
    for a in 0..g.a_count() {
        if !z.contains(g.a(a).0) {
            a_map[a] = na;
            na += 1;
        }
    }
    for b in 0..g.b_count() {
        if !z.contains(g.b(b).0) {
            b_map[b] = nb;
            nb += 1;
        }
    }
    let vz = match side {
        Side::A => {
            na += 1;
            na - 1
        }
        Side::B => {
            nb += 1;
            nb - 1
        }
    };
    for a in 0..g.a_count() {
        if z.contains(g.a(a).0) {
            a_map[a] = if side == Side::A { vz } else { usize::MAX };
        }
    }
    for b in 0..g.b_count() {
        if z.contains(g.b(b).0) {
            b_map[b] = if side == Side::B { vz } else { usize::MAX };
        }
    }
    let edges: Vec<_> = g
        .edges()
        .iter()
        .filter(|&&(a, b)| a_map[a] != usize::MAX && b_map[b] != usize::MAX)
        .map(|&(a, b)| (a_map[a], b_map[b]))
        .collect();
    let h = BipartiteGraph::new_dedup(na, nb, &edges).expect("contraction of a tight cut");
    let contraction_vertex = h.vertex(side, vz);
    let vertex_map = g
        .vertices()
        .map(|v| {
            if z.contains(v.0) {
                contraction_vertex
            } else {
                match g.side(v) {
                    Side::A => h.a(a_map[g.local(v)]),
                    Side::B => h.b(b_map[g.local(v)]),
                }
            }
        })
        .collect();
    (h, ContractionRecord { parent: None, shore: z.clone(), contraction_vertex, vertex_map })
}

impl ContractionRecord {
    /// For every vertex of the contracted graph, the parent vertex it came
    /// from; `None` for the contraction vertex.
    pub fn child_to_parent(&self, child_count: usize) -> Vec<Option<Vertex>> {
        let mut out = vec![None; child_count];
        for (p, &c) in self.vertex_map.iter().enumerate() {
            if c != self.contraction_vertex {
                out[c.0] = Some(Vertex(p));
            }
        }
        out
    }
}

/// Contracts the closed neighbourhood of a degree-two vertex.
pub fn bicontract(g: &BipartiteGraph, v: Vertex) -> Result<(BipartiteGraph, ContractionRecord), TightCutError> {
    if g.degree(v) != 2 {
        return Err(TightCutError::NotTight);
    }
    let mut z = VertexSet::from_iter(g.vertex_count(), [v.0]);
    for u in g.neighbours(v) {
        z.insert(u.0);
    }
    contract(g, &z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BraceIso {
    C4,
    K33,
    Other,
}

/// Exact recognition of the two smallest braces.
pub fn small_brace_iso(g: &BipartiteGraph) -> BraceIso {
    let regular = |d: usize| g.vertices().all(|v| g.degree(v) == d);
    if g.a_count() == 2 && g.b_count() == 2 && g.edge_count() == 4 && regular(2) {
        BraceIso::C4
    } else if g.a_count() == 3 && g.b_count() == 3 && g.edge_count() == 9 && regular(3) {
        BraceIso::K33
    } else {
        BraceIso::Other
    }
}

/// `C4` counts as a brace, `K2` and other graphs below six vertices do not;
/// from six vertices on a brace is a 2-extendable bipartite graph.
pub fn is_brace(g: &BipartiteGraph) -> bool {
    if g.vertex_count() < 6 {
        return small_brace_iso(g) == BraceIso::C4;
    }
    is_k_extendable(g, 2, usize::MAX).map(|r| r.extendable).unwrap_or(false)
}

/// What a vertex of an intermediate graph stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexOrigin {
    Host(Vertex),
    /// Contraction vertex of cut `cut`; `inner` is true when it replaces the
    /// recorded shore and false when it replaces the complement.
    Contracted { cut: usize, inner: bool },
}

#[derive(Clone, Debug)]
pub struct CutRecord {
    /// Node of the decomposition tree where the cut was found.
    pub node: usize,
    /// Shore in that node's graph.
    pub local_shore: VertexSet,
    /// Shore lifted to host vertices.
    pub host_shore: VertexSet,
}

#[derive(Clone, Debug)]
pub enum NodeKind {
    /// `children[0]` contracts the cut shore, `children[1]` its complement.
    Split { cut: usize, children: [usize; 2] },
    Brace { iso: BraceIso },
}

#[derive(Clone, Debug)]
pub struct TightCutNode {
    pub graph: BipartiteGraph,
    pub origin: Vec<VertexOrigin>,
    /// Host vertices represented by each vertex.
    pub host_sets: Vec<VertexSet>,
    pub kind: NodeKind,
}

/// History of a tight cut decomposition. Node 0 is the host.
#[derive(Clone, Debug)]
pub struct TightCutTree {
    pub nodes: Vec<TightCutNode>,
    pub cuts: Vec<CutRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutSelection {
    /// Always the lexicographically smallest shore.
    Lowest,
    /// A uniformly random nontrivial tight cut from a seeded generator.
    Seeded(u64),
}

pub fn tight_cut_decomposition(
    g: &BipartiteGraph,
    selection: CutSelection,
    cap: usize,
) -> Result<TightCutTree, TightCutError> {
    CapExceeded::check("tight cut decomposition", cap, g.vertex_count())?;
    if !is_matching_covered(g).covered {
        return Err(TightCutError::NotMatchingCovered);
    }
    let n = g.vertex_count();
    let mut rng = match selection {
        CutSelection::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        CutSelection::Lowest => None,
    };
    let mut tree = TightCutTree { nodes: Vec::new(), cuts: Vec::new() };
    tree.nodes.push(TightCutNode {
        graph: g.clone(),
        origin: g.vertices().map(VertexOrigin::Host).collect(),
        host_sets: g.vertices().map(|v| VertexSet::from_iter(n, [v.0])).collect(),
        kind: NodeKind::Brace { iso: BraceIso::Other },
    });
    let mut stack = vec![0usize];
    while let Some(idx) = stack.pop() {
        let graph = tree.nodes[idx].graph.clone();
        let mut shores = nontrivial_tight_shores(&graph, cap)?;
        if shores.is_empty() {
            tree.nodes[idx].kind = NodeKind::Brace { iso: small_brace_iso(&graph) };
            continue;
        }
        let shore = match rng.as_mut() {
            Some(r) => {
                shores.shuffle(r);
                shores.swap_remove(0)
            }
            None => shores.swap_remove(0),
        };
        let cut = tree.cuts.len();
        let host_shore = shore
            .iter()
            .fold(VertexSet::empty(n), |acc, v| acc.union(&tree.nodes[idx].host_sets[v]));
        tree.cuts.push(CutRecord { node: idx, local_shore: shore.clone(), host_shore });
        let mut children = [0usize; 2];
        for (k, (contracted, inner)) in [(shore.clone(), true), (shore.complement(), false)].into_iter().enumerate() {
            let (h, mut rec) = contract_unchecked(&graph, &contracted);
            rec.parent = Some(idx);
            let mut origin = vec![VertexOrigin::Contracted { cut, inner }; h.vertex_count()];
            let mut host_sets = vec![VertexSet::empty(n); h.vertex_count()];
            for v in graph.vertices() {
                let w = rec.vertex_map[v.0];
                host_sets[w.0] = host_sets[w.0].union(&tree.nodes[idx].host_sets[v.0]);
                if !contracted.contains(v.0) {
                    origin[w.0] = tree.nodes[idx].origin[v.0];
                }
            }
            children[k] = tree.nodes.len();
            tree.nodes.push(TightCutNode { graph: h, origin, host_sets, kind: NodeKind::Brace { iso: BraceIso::Other } });
            stack.push(children[k]);
        }
        tree.nodes[idx].kind = NodeKind::Split { cut, children };
    }
    Ok(tree)
}

impl TightCutTree {
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| matches!(self.nodes[i].kind, NodeKind::Brace { .. })).collect()
    }

    pub fn braces(&self) -> Vec<&BipartiteGraph> {
        self.leaves().into_iter().map(|i| &self.nodes[i].graph).collect()
    }

    pub fn brace_isos(&self) -> Vec<BraceIso> {
        self.leaves()
            .into_iter()
            .map(|i| match self.nodes[i].kind {
                NodeKind::Brace { iso } => iso,
                NodeKind::Split { .. } => unreachable!(),
            })
            .collect()
    }

    /// Leaf holding the contraction vertex of `cut` on the given side.
    pub fn leaf_with(&self, cut: usize, inner: bool) -> usize {
        let target = VertexOrigin::Contracted { cut, inner };
        self.leaves()
            .into_iter()
            .find(|&i| self.nodes[i].origin.contains(&target))
            .expect("every contraction vertex survives in exactly one brace")
    }

    /// Adjacency of the braces: one edge per cut, joining the two braces
    /// that hold its contraction vertices. Edges are `(leaf, leaf, cut)`.
    pub fn brace_tree(&self) -> Vec<(usize, usize, usize)> {
        (0..self.cuts.len()).map(|c| (self.leaf_with(c, true), self.leaf_with(c, false), c)).collect()
    }

    /// Host vertices that appear as themselves in the given leaf.
    pub fn own_host_vertices(&self, leaf: usize) -> VertexSet {
        let n = self.nodes[0].graph.vertex_count();
        VertexSet::from_iter(
            n,
            self.nodes[leaf].origin.iter().filter_map(|o| match o {
                VertexOrigin::Host(v) => Some(v.0),
                VertexOrigin::Contracted { .. } => None,
            }),
        )
    }
}
