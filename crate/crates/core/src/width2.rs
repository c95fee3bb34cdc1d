//! Matching elimination orderings, recognition of braces of perfect
//! matching width two, bipartite ladders and an exhaustive width oracle for
//! tiny graphs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, Matching, Side, Vertex};
use crate::limits::CapExceeded;
use crate::porosity::{balance, matching_porosity, PorosityError};
use crate::tight::{is_brace, small_brace_iso, BraceIso};
use crate::tree::{classify_edges, width, DecompositionTree, NodeId, TreeError};
use crate::vset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Width2Error {
    #[error("graph is not a brace")]
    NotABrace,
    #[error("width is {0}, not 2")]
    WidthNotTwo(usize),
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Porosity(#[from] PorosityError),
}

impl Width2Error {
    /// The size cap behind this error, if any.
    pub fn cap_exceeded(&self) -> Option<&CapExceeded> {
        match self {
            Width2Error::Cap(c) => Some(c),
            Width2Error::Tree(t) => t.cap_exceeded(),
            Width2Error::Porosity(p) => p.cap_exceeded(),
            _ => None,
        }
    }
}

/// A linear ordering of one colour class, given by local vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrdering {
    pub side: Side,
    pub order: Vec<usize>,
}

impl EliminationOrdering {
    pub fn new(side: Side, order: Vec<usize>) -> Self {
        EliminationOrdering { side, order }
    }

    pub fn identity(side: Side, n: usize) -> Self {
        EliminationOrdering { side, order: (0..n).collect() }
    }

    pub fn vertices(&self, g: &BipartiteGraph) -> Vec<Vertex> {
        self.order.iter().map(|&i| g.vertex(self.side, i)).collect()
    }
}

fn class_size(g: &BipartiteGraph, side: Side) -> usize {
    match side {
        Side::A => g.a_count(),
        Side::B => g.b_count(),
    }
}

fn class_adj(g: &BipartiteGraph, side: Side, i: usize) -> &[usize] {
    match side {
        Side::A => g.adj_a(i),
        Side::B => g.adj_b(i),
    }
}

fn check_ordering(g: &BipartiteGraph, l: &EliminationOrdering) -> Result<(), Width2Error> {
    let n = class_size(g, l.side);
    let mut seen = vec![false; n];
    for &i in &l.order {
        if i >= n || seen[i] {
            return Err(Width2Error::InvalidOrdering(format!("index {i} is out of range or repeated")));
        }
        seen[i] = true;
    }
    if l.order.len() != n {
        return Err(Width2Error::InvalidOrdering(format!("{} of {} vertices ordered", l.order.len(), n)));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingWidth {
    pub width: usize,
    /// `|Reach(a)| - |Prec(a)|` for every position.
    pub profile: Vec<i64>,
}

/// Width of an ordering: the largest `|N(Prec(a))| - |Prec(a)|`.
pub fn ordering_width(g: &BipartiteGraph, l: &EliminationOrdering) -> Result<OrderingWidth, Width2Error> {
    check_ordering(g, l)?;
    let mut reach = vec![false; class_size(g, l.side.other())];
    let mut reached = 0i64;
    let mut profile = Vec::with_capacity(l.order.len());
    for (k, &a) in l.order.iter().enumerate() {
        for &b in class_adj(g, l.side, a) {
            if !reach[b] {
                reach[b] = true;
                reached += 1;
            }
        }
        profile.push(reached - (k as i64 + 1));
    }
    let width = profile.iter().copied().max().unwrap_or(0).max(0) as usize;
    Ok(OrderingWidth { width, profile })
}

/// Exact matching elimination width of the class `side`, with an optimal
/// ordering. Dynamic programming over the sets of already ordered vertices.
pub fn mew(g: &BipartiteGraph, side: Side, cap: usize) -> Result<(usize, EliminationOrdering), Width2Error> {
    let n = class_size(g, side);
    CapExceeded::check("matching elimination width", cap.min(24), n)?;
    let nbr: Vec<u64> = (0..n).map(|i| class_adj(g, side, i).iter().fold(0u64, |m, &b| m | 1 << b)).collect();
    let full = (1usize << n) - 1;
    // best[s]: smallest achievable maximum over the prefixes strictly after s.
    let mut best = vec![u8::MAX; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    best[full] = 0;
    let mut reach = vec![0u64; 1 << n];
    for s in 1..=full {
        let low = s.trailing_zeros() as usize;
        reach[s] = reach[s & (s - 1)] | nbr[low];
    }
    let cost = |s: usize| (reach[s].count_ones() as i64 - s.count_ones() as i64).max(0) as u8;
    for s in (0..full).rev() {
        for a in 0..n {
            if s >> a & 1 == 0 {
                let t = s | 1 << a;
                let v = cost(t).max(best[t]);
                if v < best[s] {
                    best[s] = v;
                    choice[s] = a as u8;
                }
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = 0usize;
    while s != full {
        let a = choice[s] as usize;
        order.push(a);
        s |= 1 << a;
    }
    Ok((best[0] as usize, EliminationOrdering { side, order }))
}

/// One start of the claw loop and how far it got.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderAttempt {
    pub start: usize,
    /// Vertices placed before the greedy step failed (or all of them).
    pub placed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderTrace {
    pub ordering: Option<EliminationOrdering>,
    pub attempts: Vec<OrderAttempt>,
}

/// The claw-start greedy: every degree-three vertex of `side` is tried as
/// the first vertex in ascending order; then the lowest vertex adding at
/// most one new neighbour is appended until the class is exhausted.
pub fn order_trace(g: &BipartiteGraph, side: Side) -> Result<OrderTrace, Width2Error> {
    if !is_brace(g) {
        return Err(Width2Error::NotABrace);
    }
    let n = class_size(g, side);
    let mut attempts = Vec::new();
    for a in 0..n {
        if class_adj(g, side, a).len() != 3 {
            continue;
        }
        let mut reach = vec![false; class_size(g, side.other())];
        for &b in class_adj(g, side, a) {
            reach[b] = true;
        }
        let mut placed = vec![a];
        let mut unused: BTreeSet<usize> = (0..n).filter(|&x| x != a).collect();
        while placed.len() < n {
            let next = unused.iter().copied().find(|&x| class_adj(g, side, x).iter().filter(|&&b| !reach[b]).count() <= 1);
            match next {
                Some(x) => {
                    unused.remove(&x);
                    for &b in class_adj(g, side, x) {
                        reach[b] = true;
                    }
                    placed.push(x);
                }
                None => break,
            }
        }
        let done = placed.len() == n;
        attempts.push(OrderAttempt { start: a, placed: placed.clone() });
        if done {
            return Ok(OrderTrace { ordering: Some(EliminationOrdering { side, order: placed }), attempts });
        }
    }
    Ok(OrderTrace { ordering: None, attempts })
}

pub fn order(g: &BipartiteGraph, side: Side) -> Result<Option<EliminationOrdering>, Width2Error> {
    Ok(order_trace(g, side)?.ordering)
}

fn oriented(g: &BipartiteGraph, side: Side) -> BipartiteGraph {
    match side {
        Side::A => g.clone(),
        Side::B => g.swap_sides(),
    }
}

/// Cherries for a sorted set of four vertices: the two lowest, the two highest.
fn pairs(mut vs: Vec<Vertex>) -> Vec<[Vertex; 2]> {
    vs.sort();
    vs.chunks(2).map(|c| [c[0], c[1]]).collect()
}

/// A path `t_1 .. t_{n-2}` with two cherries at each end for `X_1` and the
/// complement of `X_{n-3}` and one cherry per interior node for
/// `X_j \ X_{j-1}`, where `X_i` collects the first `i` ordered vertices and
/// their neighbours. For `n = 3` a single centre carries three cherries.
pub fn decomposition_from_ordering(g: &BipartiteGraph, l: &EliminationOrdering) -> Result<DecompositionTree, Width2Error> {
    let w = ordering_width(g, l)?.width;
    if w != 2 {
        return Err(Width2Error::WidthNotTwo(w));
    }
    if g.vertex_count() < 6 || !is_brace(g) {
        return Err(Width2Error::NotABrace);
    }
    let n = l.order.len();
    let nv = g.vertex_count();
    let mut x = Vec::with_capacity(n);
    let mut cur = VertexSet::empty(nv);
    for &a in &l.order {
        let v = g.vertex(l.side, a);
        cur.insert(v.0);
        for u in g.neighbours(v) {
            cur.insert(u.0);
        }
        x.push(cur.clone());
    }
    let as_vertices = |s: &VertexSet| s.iter().map(Vertex).collect::<Vec<_>>();
    if x[0].len() != 4 {
        return Err(Width2Error::StructureViolation("first vertex does not have degree 3".into()));
    }
    // groups[k]: cherries hanging from path node k.
    let mut groups: Vec<Vec<[Vertex; 2]>> = Vec::new();
    if n == 3 {
        let mut all = pairs(as_vertices(&x[0]));
        all.extend(pairs(as_vertices(&x[0].complement())));
        groups.push(all);
    } else {
        groups.push(pairs(as_vertices(&x[0])));
        for j in 1..n - 3 {
            let diff = as_vertices(&x[j].difference(&x[j - 1]));
            if diff.len() != 2 {
                return Err(Width2Error::StructureViolation(format!("step {} adds {} vertices", j + 1, diff.len())));
            }
            groups.push(pairs(diff));
        }
        let rest = as_vertices(&x[n - 4].complement());
        if rest.len() != 4 {
            return Err(Width2Error::StructureViolation("last shore does not have four vertices".into()));
        }
        groups.push(pairs(rest));
    }
    let mut edges = Vec::new();
    let mut leaves = Vec::new();
    let path = groups.len();
    for k in 1..path {
        edges.push((k - 1, k));
    }
    let mut next = path;
    for (k, group) in groups.iter().enumerate() {
        for pair in group {
            let c = next;
            edges.push((k, c));
            edges.push((c, c + 1));
            edges.push((c, c + 2));
            leaves.push((c + 1, pair[0]));
            leaves.push((c + 2, pair[1]));
            next += 3;
        }
    }
    let d = DecompositionTree::from_parts(next, &edges, &leaves, None)?;
    d.validate(g)?;
    Ok(d)
}

/// The path `spine(spine(T))` of a tree whose spine is cubic, in order, or
/// a description of why it is not a path.
pub fn spine_spine_path(d: &DecompositionTree) -> Result<Vec<NodeId>, String> {
    let c = classify_edges(d.tree()).map_err(|e| e.to_string())?;
    let t = d.tree();
    let ss: BTreeSet<NodeId> = c.spine_of_spine.iter().copied().collect();
    if ss.is_empty() {
        return Err("spine of the spine is empty".into());
    }
    let deg = |x: NodeId| t.neighbours(x).iter().filter(|y| ss.contains(y)).count();
    if ss.iter().any(|&x| deg(x) > 2) {
        return Err("spine of the spine has a branch node".into());
    }
    let start = *ss.iter().find(|&&x| deg(x) <= 1).ok_or("spine of the spine has no end")?;
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&nx) = t.neighbours(cur).iter().find(|&&y| y != prev && ss.contains(&y)) {
        path.push(nx);
        prev = cur;
        cur = nx;
    }
    if path.len() != ss.len() {
        return Err("spine of the spine is disconnected".into());
    }
    Ok(path)
}

/// Reads an ordering of `side` off a width-two decomposition of a brace:
/// walk `spine(spine(T))` from the end whose four-vertex shore has exactly
/// one vertex of `side`; the last three vertices go in ascending id.
pub fn ordering_from_decomposition(
    g: &BipartiteGraph,
    d: &DecompositionTree,
    side: Side,
) -> Result<EliminationOrdering, Width2Error> {
    let w = width(g, d)?.width;
    if w != 2 {
        return Err(Width2Error::WidthNotTwo(w));
    }
    if g.vertex_count() < 6 || !is_brace(g) {
        return Err(Width2Error::NotABrace);
    }
    let n = class_size(g, side);
    let class = g.class(side);
    let mut path = spine_spine_path(d).map_err(Width2Error::StructureViolation)?;
    if path.len() != n - 2 {
        return Err(Width2Error::StructureViolation(format!("spine of the spine has {} nodes", path.len())));
    }
    let mut order = Vec::with_capacity(n);
    let mut prefix = VertexSet::empty(g.vertex_count());
    if n > 3 {
        let end_shore = |p: &[NodeId]| d.shore(g, p[1], p[0]);
        if end_shore(&path).intersection(&class).len() != 1 {
            path.reverse();
            if end_shore(&path).intersection(&class).len() != 1 {
                return Err(Width2Error::StructureViolation(
                    "no end of the spine of the spine is a claw centred in this class".into(),
                ));
            }
        }
        for i in 0..n - 3 {
            let x = d.shore(g, path[i + 1], path[i]);
            let new: Vec<usize> = x.difference(&prefix).intersection(&class).iter().collect();
            if new.len() != 1 || !prefix.is_subset(&x) {
                return Err(Width2Error::StructureViolation(format!("shore {} does not grow by one", i + 1)));
            }
            order.push(g.local(Vertex(new[0])));
            prefix = x;
        }
    }
    let mut rest: Vec<usize> = class.difference(&prefix).iter().map(|v| g.local(Vertex(v))).collect();
    rest.sort_unstable();
    order.extend(rest);
    Ok(EliminationOrdering { side, order })
}

/// The bipartite ladder of order `n`: `a_i b_j` for `j <= i + 2` (1-based).
pub fn ladder(n: usize) -> BipartiteGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n.min(i + 3) {
            edges.push((i, j));
        }
    }
    BipartiteGraph::new(n, n, &edges).expect("ladder")
}

/// Positions of the vertices in a ladder: `a_pos[i]` and `b_pos[j]` are
/// 0-based ladder indices of the local vertices of the (possibly swapped)
/// classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderLabelling {
    /// True when class B of the graph plays the role of the ladder's A.
    pub swapped: bool,
    pub a_pos: Vec<usize>,
    pub b_pos: Vec<usize>,
}

impl LadderLabelling {
    /// Every edge maps to a ladder edge.
    pub fn is_embedding(&self, g: &BipartiteGraph) -> bool {
        let h = if self.swapped { g.swap_sides() } else { g.clone() };
        let n = h.a_count();
        let perm = |p: &[usize]| p.len() == n && p.iter().copied().collect::<BTreeSet<_>>().len() == n && p.iter().all(|&x| x < n);
        h.is_balanced()
            && perm(&self.a_pos)
            && perm(&self.b_pos)
            && h.edges().iter().all(|&(a, b)| self.b_pos[b] <= self.a_pos[a] + 2)
    }
}

/// Searches for a labelling placing `g` inside the ladder of its order,
/// trying both colour orientations. Exhaustive over orderings of one class
/// with feasibility pruning; B positions follow from deadlines.
pub fn ladder_embedding(g: &BipartiteGraph) -> Option<LadderLabelling> {
    if !g.is_balanced() || g.edge_count() > ladder(g.a_count()).edge_count() {
        return None;
    }
    for swapped in [false, true] {
        let h = if swapped { g.swap_sides() } else { g.clone() };
        let n = h.a_count();
        let mut a_pos = vec![usize::MAX; n];
        let mut deadline = vec![usize::MAX; n];
        if embed_rec(&h, 0, &mut a_pos, &mut deadline) {
            let mut bs: Vec<usize> = (0..n).collect();
            bs.sort_by_key(|&b| (deadline[b], b));
            let mut b_pos = vec![0; n];
            for (k, &b) in bs.iter().enumerate() {
                b_pos[b] = k;
            }
            let lab = LadderLabelling { swapped, a_pos, b_pos };
            debug_assert!(lab.is_embedding(g));
            return Some(lab);
        }
    }
    None
}

fn embed_rec(h: &BipartiteGraph, k: usize, a_pos: &mut [usize], deadline: &mut [usize]) -> bool {
    let n = a_pos.len();
    if k == n {
        return true;
    }
    for a in 0..n {
        if a_pos[a] != usize::MAX {
            continue;
        }
        a_pos[a] = k;
        let changed: Vec<usize> = h.adj_a(a).iter().copied().filter(|&b| deadline[b] == usize::MAX).collect();
        for &b in &changed {
            deadline[b] = k + 2;
        }
        // Every position t can host at most t + 1 vertices with deadline <= t.
        let mut count = vec![0usize; n + 3];
        for &d in deadline.iter() {
            if d != usize::MAX {
                count[d.min(n + 2)] += 1;
            }
        }
        let mut ok = true;
        let mut acc = 0;
        for (t, c) in count.iter().enumerate() {
            acc += c;
            if acc > t + 1 {
                ok = false;
                break;
            }
        }
        if ok && embed_rec(h, k + 1, a_pos, deadline) {
            return true;
        }
        for &b in &changed {
            deadline[b] = usize::MAX;
        }
        a_pos[a] = usize::MAX;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Refutation {
    /// No vertex of the class has exactly three neighbours.
    NoDegree3Start,
    /// Every claw start got stuck; one entry per start.
    Stuck { attempts: Vec<OrderAttempt> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Width2Certificate {
    Success {
        ordering: EliminationOrdering,
        ordering_width: usize,
        decomposition: DecompositionTree,
        ladder: LadderLabelling,
    },
    Refutation(Refutation),
}

impl Width2Certificate {
    pub fn is_success(&self) -> bool {
        matches!(self, Width2Certificate::Success { .. })
    }
}

/// Decides whether a brace has perfect matching width two. On success the
/// ordering, the decomposition built from it and the ladder labelling it
/// induces are all checked before returning.
pub fn pmw2_check(g: &BipartiteGraph, side: Side) -> Result<Width2Certificate, Width2Error> {
    if !is_brace(g) {
        return Err(Width2Error::NotABrace);
    }
    if small_brace_iso(g) == BraceIso::C4 {
        let ordering = EliminationOrdering::identity(side, 2);
        let ordering_width = ordering_width(g, &ordering)?.width;
        let vs: Vec<Vertex> = g.vertices().collect();
        let decomposition = DecompositionTree::from_parts(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)],
            &[(2, vs[0]), (3, vs[1]), (4, vs[2]), (5, vs[3])],
            None,
        )?;
        let ladder = LadderLabelling { swapped: side == Side::B, a_pos: vec![0, 1], b_pos: vec![0, 1] };
        return Ok(Width2Certificate::Success { ordering, ordering_width, decomposition, ladder });
    }
    let trace = order_trace(g, side)?;
    let Some(ordering) = trace.ordering else {
        return Ok(Width2Certificate::Refutation(if trace.attempts.is_empty() {
            Refutation::NoDegree3Start
        } else {
            Refutation::Stuck { attempts: trace.attempts }
        }));
    };
    let ow = ordering_width(g, &ordering)?.width;
    if ow != 2 {
        return Err(Width2Error::WidthNotTwo(ow));
    }
    let decomposition = decomposition_from_ordering(g, &ordering)?;
    let w = width(g, &decomposition)?.width;
    if w != 2 {
        return Err(Width2Error::WidthNotTwo(w));
    }
    let ladder = ladder_from_ordering(g, &ordering)?;
    Ok(Width2Certificate::Success { ordering, ordering_width: ow, decomposition, ladder })
}

/// Ladder labelling induced by a width-two ordering: the neighbours of the
/// first vertex come first in ascending id, then each later vertex's single
/// new neighbour.
pub fn ladder_from_ordering(g: &BipartiteGraph, l: &EliminationOrdering) -> Result<LadderLabelling, Width2Error> {
    check_ordering(g, l)?;
    let h = oriented(g, l.side);
    let n = h.a_count();
    let mut a_pos = vec![0; n];
    let mut b_pos = vec![usize::MAX; n];
    let mut next = 0;
    for (k, &a) in l.order.iter().enumerate() {
        a_pos[a] = k;
        for &b in h.adj_a(a) {
            if b_pos[b] == usize::MAX {
                b_pos[b] = next;
                next += 1;
            }
        }
    }
    let lab = LadderLabelling { swapped: l.side == Side::B, a_pos, b_pos };
    if !lab.is_embedding(g) {
        return Err(Width2Error::StructureViolation("ordering does not induce a ladder labelling".into()));
    }
    Ok(lab)
}

/// Result of the exhaustive oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteWidth {
    pub width: usize,
    pub decomposition: DecompositionTree,
    /// Number of labelled cubic trees examined.
    pub trees: usize,
}

/// Exact perfect matching width by trying every cubic tree whose leaves are
/// the vertices (built by inserting leaves one at a time into every edge).
pub fn brute_force_pmw(g: &BipartiteGraph, cap: usize) -> Result<BruteWidth, Width2Error> {
    brute_force(g, None, cap)
}

/// Same search restricted to trees whose inner shores are `m`-conformal.
pub fn brute_force_mpmw(g: &BipartiteGraph, m: &Matching, cap: usize) -> Result<BruteWidth, Width2Error> {
    if !m.is_perfect(g) {
        return Err(Width2Error::Tree(TreeError::NotMAnchored));
    }
    let mut r = brute_force(g, Some(m), cap)?;
    r.decomposition = r.decomposition.with_anchor(Some(m.clone()));
    Ok(r)
}

fn brute_force(g: &BipartiteGraph, m: Option<&Matching>, cap: usize) -> Result<BruteWidth, Width2Error> {
    let n = g.vertex_count();
    CapExceeded::check("exhaustive width oracle", cap.min(16), n)?;
    if n == 2 {
        let d = DecompositionTree::from_parts(2, &[(0, 1)], &[(0, Vertex(0)), (1, Vertex(1))], m.cloned())?;
        let w = width(g, &d)?.width;
        return Ok(BruteWidth { width: w, decomposition: d, trees: 1 });
    }
    let full = (1u64 << n) - 1;
    let mut table = vec![0u8; 1 << n];
    let mut conformal = vec![true; 1 << n];
    for mask in 1..full {
        let s = VertexSet::from_mask(n, mask);
        table[mask as usize] = matching_porosity(g, &s)? as u8;
        if let Some(m) = m {
            conformal[mask as usize] = m.crossing(g, &s) == 0;
        }
    }
    let (w, edges, trees) = best_tree(n, table, Some(conformal));
    let leaves: Vec<(NodeId, Vertex)> = (0..n).map(|i| (i, Vertex(i))).collect();
    let d = DecompositionTree::from_parts(2 * n - 2, &edges, &leaves, m.cloned())?;
    Ok(BruteWidth { width: w as usize, decomposition: d, trees })
}

/// Cheapest cubic tree with leaves `0..n` (`n >= 3`) when an edge costs
/// `table[mask of one shore]`; inner shores must be allowed by `conformal`.
/// Returns the width, the tree edges and how many trees were examined.
pub(crate) fn best_tree(n: usize, table: Vec<u8>, conformal: Option<Vec<bool>>) -> (u8, Vec<(usize, usize)>, usize) {
    if n == 2 {
        return (table[1], vec![(0, 1)], 1);
    }
    let conformal = conformal.unwrap_or_else(|| vec![true; 1 << n]);
    let mut state = Search { n, table, conformal, best: None, trees: 0 };
    let mut edges = vec![(0, n), (1, n), (2, n)];
    state.insert(3, &mut edges);
    let (w, edges) = state.best.expect("some tree qualifies");
    (w, edges, state.trees)
}

struct Search {
    n: usize,
    table: Vec<u8>,
    conformal: Vec<bool>,
    best: Option<(u8, Vec<(usize, usize)>)>,
    trees: usize,
}

impl Search {
    fn insert(&mut self, k: usize, edges: &mut Vec<(usize, usize)>) {
        if k == self.n {
            self.trees += 1;
            if let Some(w) = self.evaluate(edges) {
                if self.best.as_ref().is_none_or(|(b, _)| w < *b) {
                    self.best = Some((w, edges.clone()));
                }
            }
            return;
        }
        let w = self.n + k - 2;
        for i in 0..edges.len() {
            let (u, v) = edges[i];
            edges[i] = (u, w);
            edges.push((w, v));
            edges.push((k, w));
            self.insert(k + 1, edges);
            edges.pop();
            edges.pop();
            edges[i] = (u, v);
            if self.best.as_ref().is_some_and(|(b, _)| *b == 0) {
                return;
            }
        }
    }

    fn evaluate(&self, edges: &[(usize, usize)]) -> Option<u8> {
        let nodes = 2 * self.n - 2;
        let mut adj = vec![Vec::with_capacity(3); nodes];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let root = self.n;
        let mut parent = vec![usize::MAX; nodes];
        let mut order = Vec::with_capacity(nodes);
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut mask = vec![0u64; nodes];
        let mut worst = 0u8;
        for &x in order.iter().rev() {
            if x < self.n {
                mask[x] |= 1 << x;
            }
            if x != root {
                let p = parent[x];
                mask[p] |= mask[x];
                let s = mask[x] as usize;
                if x >= self.n && p >= self.n && !self.conformal[s] {
                    return None;
                }
                worst = worst.max(self.table[s]);
            }
        }
        Some(worst)
    }
}

/// Findings of the shore-law check on a width-two decomposition of a brace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShoreLawReport {
    pub spine_cubic: bool,
    pub spine_spine_path: bool,
    pub violations: Vec<String>,
}

impl ShoreLawReport {
    pub fn holds(&self) -> bool {
        self.spine_cubic && self.spine_spine_path && self.violations.is_empty()
    }
}

/// Checks on a width-two decomposition of a brace: the spine is cubic, its
/// spine is a path, every shore along that path has imbalance two with a
/// minority that has no neighbour outside, consecutive shores grow by one
/// vertex per class, and the two four-vertex end shores induce claws whose
/// centres have no neighbour outside.
pub fn check_shore_laws(g: &BipartiteGraph, d: &DecompositionTree) -> Result<ShoreLawReport, Width2Error> {
    let c = classify_edges(d.tree())?;
    let mut r = ShoreLawReport {
        spine_cubic: c.spine_degree.values().all(|&k| k == 1 || k == 3),
        ..Default::default()
    };
    let path = match spine_spine_path(d) {
        Ok(p) => {
            r.spine_spine_path = true;
            p
        }
        Err(e) => {
            r.violations.push(e);
            return Ok(r);
        }
    };
    let a = g.class(Side::A);
    let closed_minority = |x: &VertexSet| -> bool {
        let in_a = x.intersection(&a).len();
        let minority = if in_a * 2 < x.len() { x.intersection(&a) } else { x.difference(&a) };
        g.neighbourhood(&minority).is_subset(x)
    };
    let shores: Vec<VertexSet> = path.windows(2).map(|w| d.shore(g, w[1], w[0])).collect();
    for (i, x) in shores.iter().enumerate() {
        for s in [x.clone(), x.complement()] {
            if balance(g, &s) != 2 {
                r.violations.push(format!("shore {} has imbalance {}", i + 1, balance(g, &s)));
            } else if !closed_minority(&s) {
                r.violations.push(format!("shore {} has a minority vertex with an outside neighbour", i + 1));
            }
        }
    }
    for (i, w) in shores.windows(2).enumerate() {
        let (x, y) = (&w[0], &w[1]);
        let grow = |s: &VertexSet| s.intersection(&a).len();
        if !x.is_subset(y) || grow(y) != grow(x) + 1 || y.len() != x.len() + 2 {
            r.violations.push(format!("shores {} and {} do not grow by one vertex per class", i + 1, i + 2));
        }
    }
    if let (Some(first), Some(last)) = (shores.first(), shores.last()) {
        for x in [first.clone(), last.complement()] {
            if x.len() != 4 {
                r.violations.push(format!("end shore has {} vertices", x.len()));
                continue;
            }
            let in_a = x.intersection(&a);
            let centre = if in_a.len() == 1 { in_a } else { x.difference(&a) };
            let claw = centre.len() == 1 && {
                let cv = Vertex(centre.first().unwrap());
                let inner: Vec<_> = g.neighbours(cv).into_iter().filter(|v| x.contains(v.0)).collect();
                inner.len() == 3 && g.neighbours(cv).len() == 3
            };
            if !claw {
                r.violations.push("end shore is not a claw with a closed centre".into());
            }
        }
    }
    Ok(r)
}
