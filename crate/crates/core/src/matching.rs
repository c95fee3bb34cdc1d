//! Maximum matchings, perfect matching enumeration, matching coverage and
//! k-extendability.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{BipartiteGraph, Matching, Vertex};
use crate::limits::CapExceeded;
use crate::vset::VertexSet;

const FREE: usize = usize::MAX;

/// Hopcroft-Karp restricted to the vertices outside `blocked`.
/// Returns the mate of every A-vertex (class-local B index).
pub fn maximum_matching(g: &BipartiteGraph, blocked: &VertexSet) -> Vec<Option<usize>> {
    let na = g.a_count();
    let nb = g.b_count();
    let a_ok: Vec<bool> = (0..na).map(|a| !blocked.contains(g.a(a).0)).collect();
    let b_ok: Vec<bool> = (0..nb).map(|b| !blocked.contains(g.b(b).0)).collect();
    let mut mate_a = vec![FREE; na];
    let mut mate_b = vec![FREE; nb];
    let mut dist = vec![0usize; na];

    loop {
        // Layered BFS from free A-vertices.
        let mut queue = VecDeque::new();
        for a in 0..na {
            if a_ok[a] && mate_a[a] == FREE {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(a) = queue.pop_front() {
            for &b in g.adj_a(a) {
                if !b_ok[b] {
                    continue;
                }
                let m = mate_b[b];
                if m == FREE {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[a] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        let mut progressed = false;
        for a in 0..na {
            if a_ok[a] && mate_a[a] == FREE && augment(g, a, &b_ok, &mut mate_a, &mut mate_b, &mut dist) {
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    mate_a.into_iter().map(|m| if m == FREE { None } else { Some(m) }).collect()
}

fn augment(
    g: &BipartiteGraph,
    a: usize,
    b_ok: &[bool],
    mate_a: &mut [usize],
    mate_b: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &b in g.adj_a(a) {
        if !b_ok[b] {
            continue;
        }
        let m = mate_b[b];
        if m == FREE || (dist[m] == dist[a] + 1 && augment(g, m, b_ok, mate_a, mate_b, dist)) {
            mate_a[a] = b;
            mate_b[b] = a;
            return true;
        }
    }
    dist[a] = usize::MAX;
    false
}

/// Whether `g - removed` has a perfect matching.
pub fn has_perfect_matching_avoiding(g: &BipartiteGraph, removed: &VertexSet) -> bool {
    let left_a = (0..g.a_count()).filter(|&a| !removed.contains(g.a(a).0)).count();
    let left_b = (0..g.b_count()).filter(|&b| !removed.contains(g.b(b).0)).count();
    if left_a != left_b {
        return false;
    }
    maximum_matching(g, removed).iter().filter(|m| m.is_some()).count() == left_a
}

pub fn perfect_matching(g: &BipartiteGraph) -> Option<Matching> {
    if !g.is_balanced() {
        return None;
    }
    let mates = maximum_matching(g, &VertexSet::empty(g.vertex_count()));
    if mates.iter().all(|m| m.is_some()) {
        Some(Matching::from_mates(&mates))
    } else {
        None
    }
}

/// Every perfect matching of `g` exactly once, ordered lexicographically by
/// sorted edge list.
pub fn enumerate_perfect_matchings(g: &BipartiteGraph, cap: usize) -> Result<Vec<Matching>, CapExceeded> {
    let mut out = Vec::new();
    for_each_perfect_matching(g, cap, |m| out.push(Matching::from_mates(&m.iter().map(|&b| Some(b)).collect::<Vec<_>>())))?;
    Ok(out)
}

/// Calls `visit` with the B-mate of every A-vertex for each perfect matching,
/// in the same order as [`enumerate_perfect_matchings`].
pub fn for_each_perfect_matching(
    g: &BipartiteGraph,
    cap: usize,
    mut visit: impl FnMut(&[usize]),
) -> Result<(), CapExceeded> {
    CapExceeded::check("perfect matching enumeration", cap, g.vertex_count())?;
    if !g.is_balanced() {
        return Ok(());
    }
    let mut removed = VertexSet::empty(g.vertex_count());
    let mut mates = Vec::with_capacity(g.a_count());
    enumerate_rec(g, &mut removed, &mut mates, &mut visit);
    Ok(())
}

fn enumerate_rec(g: &BipartiteGraph, removed: &mut VertexSet, mates: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    let a = mates.len();
    if a == g.a_count() {
        visit(mates);
        return;
    }
    removed.insert(g.a(a).0);
    for &b in g.adj_a(a) {
        let bv = g.b(b).0;
        if removed.contains(bv) {
            continue;
        }
        removed.insert(bv);
        if has_perfect_matching_avoiding(g, removed) {
            mates.push(b);
            enumerate_rec(g, removed, mates, visit);
            mates.pop();
        }
        removed.remove(bv);
    }
    removed.remove(g.a(a).0);
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverageWitness {
    /// The graph has no perfect matching at all.
    NoPerfectMatching,
    /// A connected component that is not the whole graph.
    Disconnected(VertexSet),
    /// An edge contained in no perfect matching.
    UncoveredEdge((usize, usize)),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub covered: bool,
    pub witness: Option<CoverageWitness>,
}

/// Connected and every edge lies in some perfect matching.
pub fn is_matching_covered(g: &BipartiteGraph) -> Coverage {
    let comps = g.components();
    if comps.len() > 1 {
        return Coverage { covered: false, witness: Some(CoverageWitness::Disconnected(comps[0].clone())) };
    }
    if perfect_matching(g).is_none() {
        return Coverage { covered: false, witness: Some(CoverageWitness::NoPerfectMatching) };
    }
    for &(a, b) in g.edges() {
        let removed = VertexSet::from_iter(g.vertex_count(), [g.a(a).0, g.b(b).0]);
        if !has_perfect_matching_avoiding(g, &removed) {
            return Coverage { covered: false, witness: Some(CoverageWitness::UncoveredEdge((a, b))) };
        }
    }
    Coverage { covered: true, witness: None }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendWitness {
    NoPerfectMatching,
    Disconnected(VertexSet),
    /// A matching of size k that lies in no perfect matching.
    Unextendable(Vec<(usize, usize)>),
    /// A set inside one colour class whose neighbourhood has surplus below k.
    Deficient { set: VertexSet, neighbours: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extendability {
    pub extendable: bool,
    pub witness: Option<ExtendWitness>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error("graph on {vertices} vertices is too small for {k}-extendability (needs {needed})")]
    TooSmall { vertices: usize, k: usize, needed: usize },
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

impl ExtendError {
    /// The size cap behind this error, if any.
    pub fn cap_exceeded(&self) -> Option<&CapExceeded> {
        match self {
            ExtendError::Cap(c) => Some(c),
            _ => None,
        }
    }
}

/// Whether every matching of size `k` extends to a perfect matching (for a
/// connected graph with at least `2k + 2` vertices). Uses direct extension
/// testing for `k <= 2` and the neighbourhood surplus test otherwise.
pub fn is_k_extendable(g: &BipartiteGraph, k: usize, surplus_cap: usize) -> Result<Extendability, ExtendError> {
    if g.vertex_count() < 2 * k + 2 {
        return Err(ExtendError::TooSmall { vertices: g.vertex_count(), k, needed: 2 * k + 2 });
    }
    if let Some(w) = basic_failure(g) {
        return Ok(Extendability { extendable: false, witness: Some(w) });
    }
    if k > 2 {
        return surplus_extendable(g, k, surplus_cap);
    }
    let n = g.vertex_count();
    let edges = g.edges();
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(k);
    let found = first_unextendable(g, edges, 0, k, &mut chosen, &mut VertexSet::empty(n));
    Ok(match found {
        Some(f) => Extendability { extendable: false, witness: Some(ExtendWitness::Unextendable(f)) },
        None => Extendability { extendable: true, witness: None },
    })
}

fn basic_failure(g: &BipartiteGraph) -> Option<ExtendWitness> {
    let comps = g.components();
    if comps.len() > 1 {
        return Some(ExtendWitness::Disconnected(comps[0].clone()));
    }
    if perfect_matching(g).is_none() {
        return Some(ExtendWitness::NoPerfectMatching);
    }
    None
}

fn first_unextendable(
    g: &BipartiteGraph,
    edges: &[(usize, usize)],
    from: usize,
    k: usize,
    chosen: &mut Vec<(usize, usize)>,
    removed: &mut VertexSet,
) -> Option<Vec<(usize, usize)>> {
    if chosen.len() == k {
        return if has_perfect_matching_avoiding(g, removed) { None } else { Some(chosen.clone()) };
    }
    for i in from..edges.len() {
        let (a, b) = edges[i];
        let (av, bv) = (g.a(a).0, g.b(b).0);
        if removed.contains(av) || removed.contains(bv) {
            continue;
        }
        removed.insert(av);
        removed.insert(bv);
        chosen.push((a, b));
        let r = first_unextendable(g, edges, i + 1, k, chosen, removed);
        chosen.pop();
        removed.remove(av);
        removed.remove(bv);
        if r.is_some() {
            return r;
        }
    }
    None
}

/// Neighbourhood surplus test: connected, has a perfect matching, and
/// `|N(X)| >= |X| + k` for every nonempty `X` inside class A with
/// `|X| <= |A| - k`.
pub fn surplus_extendable(g: &BipartiteGraph, k: usize, cap: usize) -> Result<Extendability, ExtendError> {
    CapExceeded::check("surplus extendability", cap, g.a_count())?;
    if g.vertex_count() < 2 * k + 2 {
        return Err(ExtendError::TooSmall { vertices: g.vertex_count(), k, needed: 2 * k + 2 });
    }
    if let Some(w) = basic_failure(g) {
        return Ok(Extendability { extendable: false, witness: Some(w) });
    }
    let na = g.a_count();
    let nbr: Vec<u64> = (0..na).map(|a| g.adj_a(a).iter().fold(0u64, |m, &b| m | 1 << b)).collect();
    let n = g.vertex_count();
    for mask in 1u64..(1u64 << na) {
        let size = mask.count_ones() as usize;
        if size + k > na {
            continue;
        }
        let mut nb = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            nb |= nbr[a];
            rest &= rest - 1;
        }
        let reach = nb.count_ones() as usize;
        if reach < size + k {
            let set = VertexSet::from_iter(n, (0..na).filter(|a| mask >> a & 1 == 1));
            return Ok(Extendability {
                extendable: false,
                witness: Some(ExtendWitness::Deficient { set, neighbours: reach }),
            });
        }
    }
    Ok(Extendability { extendable: true, witness: None })
}

/// Whether `g` stays connected after deleting any fewer than `k` vertices
/// (and has more than `k` vertices). Exhaustive; intended for small graphs.
pub fn is_k_connected(g: &BipartiteGraph, k: usize) -> bool {
    let n = g.vertex_count();
    if n <= k {
        return false;
    }
    let mut removed = Vec::new();
    connected_after_all_removals(g, k.saturating_sub(1), 0, &mut removed)
}

fn connected_after_all_removals(g: &BipartiteGraph, budget: usize, from: usize, removed: &mut Vec<usize>) -> bool {
    if !connected_without(g, removed) {
        return false;
    }
    if removed.len() == budget {
        return true;
    }
    for v in from..g.vertex_count() {
        removed.push(v);
        let ok = connected_after_all_removals(g, budget, v + 1, removed);
        removed.pop();
        if !ok {
            return false;
        }
    }
    true
}

fn connected_without(g: &BipartiteGraph, removed: &[usize]) -> bool {
    let n = g.vertex_count();
    let gone = VertexSet::from_iter(n, removed.iter().copied());
    let Some(start) = (0..n).find(|&v| !gone.contains(v)) else {
        return true;
    };
    let mut seen = gone.clone();
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in g.neighbours(Vertex(v)) {
            if seen.insert(u.0) {
                stack.push(u.0);
            }
        }
    }
    seen.len() == n
}
