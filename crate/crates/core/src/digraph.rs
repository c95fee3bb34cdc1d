//! Digraphs, M-directions and split graphs, butterfly contraction, cyclic
//! porosity and the butterfly minor search.


use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, GraphError, Matching};
use crate::limits::CapExceeded;
use crate::porosity::min_cost_assignment;
use crate::vset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("arc ({0}, {1}) is a loop")]
    SelfLoop(usize, usize),
    #[error("arc ({0}, {1}) appears twice")]
    DuplicateArc(usize, usize),
    #[error("arc ({0}, {1}) is out of range")]
    IndexOutOfRange(usize, usize),
    #[error("arc ({0}, {1}) is not butterfly contractible")]
    NotContractible(usize, usize),
    #[error("({0}, {1}) is not an arc")]
    NotAnArc(usize, usize),
    #[error("shore and its complement must both be nonempty")]
    DegenerateShore,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

impl DigraphError {
    /// The size cap behind this error, if any.
    pub fn cap_exceeded(&self) -> Option<&CapExceeded> {
        match self {
            DigraphError::Cap(c) => Some(c),
            _ => None,
        }
    }
}

/// A simple digraph on vertices `0..n`; antiparallel pairs are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    #[serde(skip)]
    out: Vec<Vec<usize>>,
    #[serde(skip)]
    inn: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph({}; {:?})", self.n, self.arcs)
    }
}

impl Digraph {
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DigraphError> {
        let mut sorted = arcs.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(DigraphError::DuplicateArc(w[0].0, w[0].1));
            }
        }
        for &(u, v) in &sorted {
            if u >= n || v >= n {
                return Err(DigraphError::IndexOutOfRange(u, v));
            }
            if u == v {
                return Err(DigraphError::SelfLoop(u, v));
            }
        }
        Ok(Self::build(n, sorted))
    }

    /// Drops loops and repeated arcs instead of rejecting them.
    pub fn new_simplified(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut sorted: Vec<_> = arcs.iter().copied().filter(|&(u, v)| u != v && u < n && v < n).collect();
        sorted.sort_unstable();
        sorted.dedup();
        Self::build(n, sorted)
    }

    fn build(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out[u].push(v);
            inn[v].push(u);
        }
        for l in &mut inn {
            l.sort_unstable();
        }
        Digraph { n, arcs, out, inn }
    }

    /// Every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Self {
        let arcs: Vec<_> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        Self::build(n, arcs)
    }

    pub fn digon() -> Self {
        Self::complete(2)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    pub fn out_neighbours(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn in_neighbours(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// Vertices reachable from `from` inside `allowed`.
    pub fn reach(&self, from: &VertexSet, allowed: &VertexSet, forward: bool) -> VertexSet {
        let mut seen = VertexSet::empty(self.n);
        let mut stack: Vec<usize> = from.iter().filter(|&v| allowed.contains(v)).collect();
        for &v in &stack {
            seen.insert(v);
        }
        while let Some(u) = stack.pop() {
            let next = if forward { &self.out[u] } else { &self.inn[u] };
            for &w in next {
                if allowed.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Strong components as sorted vertex lists, in a topological order of
    /// the condensation (sources first).
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        // Kosaraju: finishing order on D, then sweep the reverse graph.
        let n = self.n;
        let mut seen = vec![false; n];
        let mut finish = Vec::with_capacity(n);
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![(s, 0usize)];
            while let Some(&mut (u, ref mut i)) = stack.last_mut() {
                if *i < self.out[u].len() {
                    let w = self.out[u][*i];
                    *i += 1;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    finish.push(u);
                    stack.pop();
                }
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for &s in finish.iter().rev() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.inn[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n >= 1 && self.strong_components().len() == 1
    }

    /// At least `k + 1` vertices and strongly connected after deleting any
    /// fewer than `k` vertices.
    pub fn is_strongly_k_connected(&self, k: usize) -> bool {
        if self.n < k + 1 {
            return false;
        }
        let all = VertexSet::full(self.n);
        let mut stack = vec![(VertexSet::empty(self.n), 0usize)];
        while let Some((removed, next)) = stack.pop() {
            let keep = all.difference(&removed);
            let first = keep.first().expect("nonempty");
            let single = VertexSet::from_iter(self.n, [first]);
            if self.reach(&single, &keep, true) != keep || self.reach(&single, &keep, false) != keep {
                return false;
            }
            if removed.len() + 1 < k {
                for v in next..self.n {
                    let mut r = removed.clone();
                    r.insert(v);
                    stack.push((r, v + 1));
                }
            }
        }
        true
    }

    pub fn has_cycle(&self) -> bool {
        self.strong_components().iter().any(|c| c.len() > 1)
    }

    /// Subdigraph induced by `keep`, renumbered in increasing order, with
    /// the old index of every new vertex.
    pub fn induced(&self, keep: &[usize]) -> (Digraph, Vec<usize>) {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let arcs: Vec<_> = self
            .arcs
            .iter()
            .filter(|&&(u, v)| map[u] != usize::MAX && map[v] != usize::MAX)
            .map(|&(u, v)| (map[u], map[v]))
            .collect();
        (Digraph::new_simplified(keep.len(), &arcs), keep.to_vec())
    }

    pub fn without_arc(&self, u: usize, v: usize) -> Digraph {
        let arcs: Vec<_> = self.arcs.iter().copied().filter(|&a| a != (u, v)).collect();
        Self::build(self.n, arcs)
    }

    /// Arc `uv` is the only arc leaving `u` or the only arc entering `v`.
    pub fn is_butterfly_contractible(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && (self.out[u].len() == 1 || self.inn[v].len() == 1)
    }

    /// Merges the ends of a butterfly contractible arc. The merged vertex
    /// takes the smaller index; loops and repeated arcs are dropped.
    pub fn butterfly_contract(&self, u: usize, v: usize) -> Result<Digraph, DigraphError> {
        if !self.has_arc(u, v) {
            return Err(DigraphError::NotAnArc(u, v));
        }
        if !self.is_butterfly_contractible(u, v) {
            return Err(DigraphError::NotContractible(u, v));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let arcs: Vec<_> = self.arcs.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect();
        Ok(Digraph::new_simplified(self.n - 1, &arcs))
    }

    /// Same digraph with every arc reversed.
    pub fn reversed(&self) -> Digraph {
        let arcs: Vec<_> = self.arcs.iter().map(|&(u, v)| (v, u)).collect();
        Digraph::new_simplified(self.n, &arcs)
    }
}

/// `D(G, M)` together with the matching edge behind every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MDirection {
    pub digraph: Digraph,
    pub matching: Matching,
    /// Vertex `i` stands for the matching edge `edge_of_vertex[i]`
    /// (A index, B index); vertices follow the A index.
    pub edge_of_vertex: Vec<(usize, usize)>,
}

/// One vertex per matching edge `a_i b_i`, and an arc `v_i -> v_j` for every
/// other edge `a_i b_j`.
pub fn m_direction(g: &BipartiteGraph, m: &Matching) -> Result<MDirection, DigraphError> {
    m.check_perfect(g)?;
    let n = g.a_count();
    let edge_of_vertex: Vec<(usize, usize)> = (0..n).map(|a| (a, m.mate_of_a(a).expect("perfect"))).collect();
    let mut vertex_of_b = vec![0; n];
    for (i, &(_, b)) in edge_of_vertex.iter().enumerate() {
        vertex_of_b[b] = i;
    }
    let arcs: Vec<_> = g
        .edges()
        .iter()
        .filter(|&&(a, b)| vertex_of_b[b] != a)
        .map(|&(a, b)| (a, vertex_of_b[b]))
        .collect();
    Ok(MDirection { digraph: Digraph::new(n, &arcs)?, matching: m.clone(), edge_of_vertex })
}

/// Inverse of [`m_direction`]: `a_i b_i` for every vertex (these form the
/// returned matching) and `a_i b_j` for every arc `(i, j)`.
pub fn split_graph(d: &Digraph) -> (BipartiteGraph, Matching) {
    let n = d.vertex_count();
    let mut edges: Vec<_> = (0..n).map(|i| (i, i)).collect();
    edges.extend(d.arcs().iter().copied());
    let g = BipartiteGraph::new(n.max(1), n.max(1), &edges).expect("split graph");
    (g, Matching::new((0..n).map(|i| (i, i)).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CyclicEngine {
    /// Maximum weight cycle cover where every vertex may stay fixed.
    Assignment,
    /// Exhaustive search over families of disjoint cycles.
    Oracle { cap: usize },
}

/// Largest number of arcs of `∂(x)` on a family of pairwise disjoint
/// directed cycles.
pub fn cyclic_porosity(d: &Digraph, x: &VertexSet, engine: CyclicEngine) -> Result<usize, DigraphError> {
    if x.is_empty() || x.len() == d.vertex_count() {
        return Err(DigraphError::DegenerateShore);
    }
    match engine {
        CyclicEngine::Assignment => Ok(assignment_cyclic(d, x)),
        CyclicEngine::Oracle { cap } => {
            CapExceeded::check("cyclic porosity oracle", cap.min(16), d.vertex_count())?;
            Ok(oracle_cyclic(d, x))
        }
    }
}

fn assignment_cyclic(d: &Digraph, x: &VertexSet) -> usize {
    let n = d.vertex_count();
    let forbidden = n as i64 + 1;
    let mut cost = vec![vec![forbidden; n]; n];
    for (v, row) in cost.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in d.arcs() {
        cost[u][v] = if x.contains(u) != x.contains(v) { -1 } else { 0 };
    }
    let a = min_cost_assignment(&cost);
    a.iter().enumerate().filter(|&(u, &v)| u != v && x.contains(u) != x.contains(v)).count()
}

/// For every vertex set, the most cut arcs on one directed cycle through
/// exactly that set (or `None` if there is no such cycle).
fn cycle_weights(d: &Digraph, cut: impl Fn(usize, usize) -> bool) -> Vec<Option<u8>> {
    let n = d.vertex_count();
    let mut best: Vec<Option<u8>> = vec![None; 1 << n];
    for s in 0..n {
        // Paths from s through vertices above s.
        let mut stack = vec![(s, 1u32 << s, 0u8)];
        while let Some((u, mask, w)) = stack.pop() {
            for &v in d.out_neighbours(u) {
                if v == s {
                    let total = w + cut(u, v) as u8;
                    let slot = &mut best[mask as usize];
                    if slot.is_none_or(|b| total > b) {
                        *slot = Some(total);
                    }
                } else if v > s && mask >> v & 1 == 0 {
                    stack.push((v, mask | 1 << v, w + cut(u, v) as u8));
                }
            }
        }
    }
    best
}

fn oracle_cyclic(d: &Digraph, x: &VertexSet) -> usize {
    let n = d.vertex_count();
    let w = cycle_weights(d, |u, v| x.contains(u) != x.contains(v));
    let cycles: Vec<(u32, u8)> = (1..1u32 << n).filter_map(|m| w[m as usize].map(|c| (m, c))).collect();
    // f[mask]: best family inside mask.
    let mut f = vec![0u8; 1 << n];
    for mask in 1..1u32 << n {
        let low = mask.trailing_zeros();
        let mut best = f[(mask & (mask - 1)) as usize];
        for &(c, cw) in &cycles {
            if c.trailing_zeros() == low && c & !mask == 0 {
                best = best.max(cw + f[(mask & !c) as usize]);
            }
        }
        f[mask as usize] = best;
    }
    f[(1usize << n) - 1] as usize
}

/// A strongly 2-connected butterfly minor on at least four vertices, with
/// the vertices of `d` each of its vertices was merged from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub minor: Digraph,
    pub branch_sets: Vec<Vec<usize>>,
}

/// One branch set of a butterfly minor model: an in-arborescence into the
/// root over `inm` and an out-arborescence from the root over `outm`. Both
/// masks contain the root.
#[derive(Clone, Copy)]
struct Branch {
    root: Option<usize>,
    inm: u32,
    outm: u32,
}

struct ModelSearch {
    n: usize,
    out: Vec<u32>,
    inn: Vec<u32>,
    blocks: Vec<Branch>,
    deleted: u32,
}

impl ModelSearch {
    fn run(&mut self, v: usize) -> Option<(Digraph, Vec<u32>)> {
        let left = self.n - v;
        if self.blocks.len() + left < 4
            || self.blocks.iter().filter(|b| b.root.is_none()).count() > left
            || !self.consistent(v)
        {
            return None;
        }
        if v == self.n {
            return self.quotient();
        }
        let bit = 1u32 << v;
        let k = self.blocks.len();
        // Fresh singletons first: dense components then succeed at once.
        for b in (0..=k).rev() {
            if b == k {
                self.blocks.push(Branch { root: None, inm: 0, outm: 0 });
            }
            let saved = self.blocks[b];
            let mut roles = vec![(Some(v), bit, bit), (saved.root, bit, 0), (saved.root, 0, bit)];
            if saved.root.is_some() {
                roles.remove(0);
            }
            for (root, i, o) in roles {
                self.blocks[b] = Branch { root, inm: saved.inm | i, outm: saved.outm | o };
                if let Some(w) = self.run(v + 1) {
                    return Some(w);
                }
            }
            self.blocks[b] = saved;
            if b == k {
                self.blocks.pop();
            }
        }
        self.deleted |= bit;
        let w = self.run(v + 1);
        self.deleted &= !bit;
        w
    }

    fn union(adj: &[u32], mut m: u32) -> u32 {
        let mut o = 0;
        while m != 0 {
            o |= adj[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        o
    }

    /// Pruning with the first `v` vertices placed. A deleted vertex that
    /// could hang off some in-tree or out-tree is skipped, since the model
    /// with it attached has every arc this one has. A branch set whose
    /// neighbours are all placed cannot change any more, so its trees and
    /// its degrees in the quotient are final.
    fn consistent(&self, v: usize) -> bool {
        let placed = ((1u64 << v) - 1) as u32;
        let all_in = self.blocks.iter().fold(0, |m, b| m | b.inm);
        let all_out = self.blocks.iter().fold(0, |m, b| m | b.outm);
        let mut d = self.deleted;
        while d != 0 {
            let u = d.trailing_zeros() as usize;
            d &= d - 1;
            if self.out[u] & all_in != 0 || self.inn[u] & all_out != 0 {
                return false;
            }
        }
        for (i, b) in self.blocks.iter().enumerate() {
            let members = b.inm | b.outm;
            let ahead = Self::union(&self.out, b.outm);
            let behind = Self::union(&self.inn, b.inm);
            if (members | Self::union(&self.out, members) | Self::union(&self.inn, members)) & !placed != 0 {
                continue;
            }
            let Some(r) = b.root else { return false };
            if Self::closure(&self.inn, r, b.inm) != b.inm || Self::closure(&self.out, r, b.outm) != b.outm {
                return false;
            }
            let others = self.blocks.iter().enumerate().filter(|&(j, _)| j != i);
            if others.clone().filter(|(_, c)| ahead & c.inm != 0).count() < 2
                || others.filter(|(_, c)| behind & c.outm != 0).count() < 2
            {
                return false;
            }
        }
        true
    }

    /// Grows `from` inside `within` along the given adjacency.
    fn closure(adj: &[u32], from: usize, within: u32) -> u32 {
        let mut seen = 1u32 << from;
        let mut frontier = seen;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[u] & within & !seen;
            seen |= new;
            frontier |= new;
        }
        seen
    }

    /// The digraph the model contracts to, if the model is valid and the
    /// result is strongly 2-connected.
    fn quotient(&self) -> Option<(Digraph, Vec<u32>)> {
        let mut reach = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let r = b.root?;
            if Self::closure(&self.inn, r, b.inm) != b.inm || Self::closure(&self.out, r, b.outm) != b.outm {
                return None;
            }
            let mut o = 0;
            let mut m = b.outm;
            while m != 0 {
                o |= self.out[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            reach.push(o);
        }
        let k = self.blocks.len();
        let mut arcs = Vec::new();
        for (i, &o) in reach.iter().enumerate() {
            for (j, b) in self.blocks.iter().enumerate() {
                if i != j && o & b.inm != 0 {
                    arcs.push((i, j));
                }
            }
        }
        if arcs.len() < 2 * k {
            return None;
        }
        let q = Digraph::new(k, &arcs).expect("simple");
        q.is_strongly_k_connected(2).then(|| (q, self.blocks.iter().map(|b| b.inm | b.outm).collect()))
    }
}

/// `comp` in breadth first order over arcs of both directions, so that
/// branch sets of the minor search close early.
fn bfs_order(d: &Digraph, comp: &[usize]) -> Vec<usize> {
    let mut order = vec![comp[0]];
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in d.out_neighbours(u).iter().chain(d.in_neighbours(u)) {
            if comp.contains(&w) && !order.contains(&w) {
                order.push(w);
            }
        }
    }
    order
}

/// Searches for a strongly 2-connected butterfly minor with at least four
/// vertices. Such a minor lives inside one strong component. Each component
/// is searched by enumerating branch set models (an in-tree and an out-tree
/// glued at a root per branch set) and keeping every arc the model allows;
/// extra arcs never spoil strong 2-connectivity, so arc deletions need no
/// search of their own.
pub fn forbidden_butterfly_minor(d: &Digraph, cap: usize) -> Result<Option<MinorWitness>, DigraphError> {
    for comp in d.strong_components().into_iter().filter(|c| c.len() >= 4) {
        let (sub, back) = d.induced(&comp);
        let (sub, groups) = contract_forced(sub, back.into_iter().map(|v| vec![v]).collect());
        if sub.vertex_count() < 4 {
            continue;
        }
        CapExceeded::check("butterfly minor search", cap.min(16), sub.vertex_count())?;
        let all: Vec<usize> = (0..sub.vertex_count()).collect();
        let (sub, order) = sub.induced(&bfs_order(&sub, &all));
        let n = sub.vertex_count();
        let mut s = ModelSearch { n, out: vec![0; n], inn: vec![0; n], blocks: Vec::new(), deleted: 0 };
        for &(u, v) in sub.arcs() {
            s.out[u] |= 1 << v;
            s.inn[v] |= 1 << u;
        }
        if let Some((minor, sets)) = s.run(0) {
            let branch_sets = sets
                .iter()
                .map(|&m| {
                    let mut b: Vec<usize> =
                        (0..n).filter(|&i| m >> i & 1 == 1).flat_map(|i| groups[order[i]].iter().copied()).collect();
                    b.sort_unstable();
                    b
                })
                .collect();
            return Ok(Some(MinorWitness { minor, branch_sets }));
        }
    }
    Ok(None)
}

/// Contracts arcs leaving a vertex of out-degree one or entering a vertex
/// of in-degree one until none is left. Any model of a strongly 2-connected
/// minor on four or more vertices can be rerouted through such a contraction,
/// so the answer does not change. `groups` tracks the merged vertices.
fn contract_forced(mut d: Digraph, mut groups: Vec<Vec<usize>>) -> (Digraph, Vec<Vec<usize>>) {
    while d.vertex_count() >= 4 {
        let Some(&(u, v)) = d.arcs().iter().find(|&&(u, v)| d.out[u].len() == 1 || d.inn[v].len() == 1) else {
            break;
        };
        d = d.butterfly_contract(u, v).expect("contractible");
        let gone = groups.remove(u.max(v));
        groups[u.min(v)].extend(gone);
    }
    (d, groups)
}

/// Exact cyclewidth by trying every cubic tree over the vertices; cyclic
/// porosities come from the assignment engine. Returns 0 for fewer than two
/// vertices.
pub fn brute_force_cyclewidth(d: &Digraph, cap: usize) -> Result<usize, DigraphError> {
    let n = d.vertex_count();
    CapExceeded::check("exhaustive cyclewidth", cap.min(12), n)?;
    if n < 2 {
        return Ok(0);
    }
    let mut table = vec![0u8; 1 << n];
    for mask in 1..(1u64 << n) - 1 {
        table[mask as usize] = assignment_cyclic(d, &VertexSet::from_mask(n, mask)) as u8;
    }
    Ok(crate::width2::best_tree(n, table, None).0 as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi_k3() -> Digraph {
        Digraph::complete(3)
    }

    #[test]
    fn construction_checks() {
        assert_eq!(Digraph::new(2, &[(0, 0)]).unwrap_err(), DigraphError::SelfLoop(0, 0));
        assert_eq!(Digraph::new(2, &[(0, 1), (0, 1)]).unwrap_err(), DigraphError::DuplicateArc(0, 1));
        assert!(Digraph::digon().is_strongly_connected());
        assert!(!Digraph::new(2, &[(0, 1)]).unwrap().is_strongly_connected());
    }

    #[test]
    fn m_directions_of_small_braces() {
        let c4 = BipartiteGraph::cycle(2);
        for m in [Matching::new(vec![(0, 0), (1, 1)]), Matching::new(vec![(0, 1), (1, 0)])] {
            if m.is_perfect(&c4) {
                assert_eq!(m_direction(&c4, &m).unwrap().digraph, Digraph::digon());
            }
        }
        let k33 = BipartiteGraph::complete(3, 3);
        let m = Matching::new(vec![(0, 2), (1, 0), (2, 1)]);
        assert_eq!(m_direction(&k33, &m).unwrap().digraph, bi_k3());
        let k2 = BipartiteGraph::complete(1, 1);
        let d = m_direction(&k2, &Matching::new(vec![(0, 0)])).unwrap().digraph;
        assert_eq!((d.vertex_count(), d.arc_count()), (1, 0));
    }

    #[test]
    fn split_graphs() {
        let (g, m) = split_graph(&Digraph::digon());
        assert_eq!(g.edge_count(), 4);
        assert_eq!(m_direction(&g, &m).unwrap().digraph, Digraph::digon());
        let (g, _) = split_graph(&Digraph::complete(4));
        assert_eq!(g, BipartiteGraph::complete(4, 4));
    }

    #[test]
    fn butterfly_contractions() {
        let path = Digraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let c = path.butterfly_contract(0, 1).unwrap();
        assert_eq!(c.arcs(), &[(0, 1)]);
        let c = Digraph::digon().butterfly_contract(0, 1).unwrap();
        assert_eq!((c.vertex_count(), c.arc_count()), (1, 0));
        let d = Digraph::new(4, &[(0, 1), (0, 2), (3, 1)]).unwrap();
        assert_eq!(d.butterfly_contract(0, 1).unwrap_err(), DigraphError::NotContractible(0, 1));
    }

    #[test]
    fn cyclic_porosity_examples() {
        let one = |n: usize, v: usize| VertexSet::from_iter(n, [v]);
        let both = |d: &Digraph, x: &VertexSet| {
            (
                cyclic_porosity(d, x, CyclicEngine::Assignment).unwrap(),
                cyclic_porosity(d, x, CyclicEngine::Oracle { cap: 8 }).unwrap(),
            )
        };
        assert_eq!(both(&Digraph::digon(), &one(2, 0)), (2, 2));
        let dag = Digraph::new(4, &[(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        assert_eq!(both(&dag, &VertexSet::from_iter(4, [0, 2])), (0, 0));
        // A single vertex lies on at most one cycle of a disjoint family.
        assert_eq!(both(&bi_k3(), &one(3, 0)), (2, 2));
        let k4 = Digraph::complete(4);
        assert_eq!(both(&k4, &VertexSet::from_iter(4, [0, 1])), (4, 4));
    }

    #[test]
    fn minor_search_examples() {
        assert!(forbidden_butterfly_minor(&Digraph::digon(), 10).unwrap().is_none());
        assert!(forbidden_butterfly_minor(&bi_k3(), 10).unwrap().is_none());
        let w = forbidden_butterfly_minor(&Digraph::complete(4), 10).unwrap().unwrap();
        assert_eq!(w.minor, Digraph::complete(4));
        // Bidirected 4-cycle: removing any vertex leaves a bidirected path.
        let c4: Vec<_> = (0..4).flat_map(|i| [(i, (i + 1) % 4), ((i + 1) % 4, i)]).collect();
        let c4 = Digraph::new(4, &c4).unwrap();
        assert!(forbidden_butterfly_minor(&c4, 10).unwrap().is_some());
        assert_eq!(brute_force_cyclewidth(&c4, 8).unwrap(), 4);
        let c5: Vec<_> = (0..5).flat_map(|i| [(i, (i + 1) % 5), ((i + 1) % 5, i)]).collect();
        let w = forbidden_butterfly_minor(&Digraph::new(5, &c5).unwrap(), 10).unwrap().unwrap();
        assert!(w.minor.is_strongly_k_connected(2));
        // bi-K4 with arc 0->1 replaced by the path 0->4->1.
        let mut sub: Vec<_> = Digraph::complete(4).arcs().iter().copied().filter(|&a| a != (0, 1)).collect();
        sub.extend([(0, 4), (4, 1)]);
        let w = forbidden_butterfly_minor(&Digraph::new(5, &sub).unwrap(), 10).unwrap().unwrap();
        assert_eq!(w.minor.vertex_count(), 4);
        let p5: Vec<_> = (0..4).flat_map(|i| [(i, i + 1), (i + 1, i)]).collect();
        assert!(forbidden_butterfly_minor(&Digraph::new(5, &p5).unwrap(), 10).unwrap().is_none());
    }

    #[test]
    fn connectivity_levels() {
        assert!(Digraph::complete(4).is_strongly_k_connected(3));
        assert!(!Digraph::complete(3).is_strongly_k_connected(3));
        assert!(!Digraph::digon().is_strongly_k_connected(2));
    }

    #[test]
    fn exact_cyclewidths() {
        assert_eq!(brute_force_cyclewidth(&Digraph::digon(), 8).unwrap(), 2);
        assert_eq!(brute_force_cyclewidth(&bi_k3(), 8).unwrap(), 2);
        assert_eq!(brute_force_cyclewidth(&Digraph::new(3, &[(0, 1), (1, 2)]).unwrap(), 8).unwrap(), 0);
        assert!(brute_force_cyclewidth(&Digraph::complete(4), 8).unwrap() >= 4);
    }
}
