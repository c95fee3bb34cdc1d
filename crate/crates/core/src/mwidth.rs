//! M-perfect matching width two: recognition through braces, explicit
//! decompositions glued along tight cuts, directed tree decompositions of
//! the M-direction and the cyclewidth-two decision.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{forbidden_butterfly_minor, split_graph, Digraph, DigraphError, MinorWitness};
use crate::graph::{BipartiteGraph, GraphError, Matching, Vertex};
use crate::limits::{CapExceeded, Limits};
use crate::tight::{contract_unchecked, tight_cut_decomposition, BraceIso, CutSelection, NodeKind, TightCutError, TightCutTree};
use crate::tree::{width, DecompositionTree, NodeId, TreeError};
use crate::vset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MWidthError {
    #[error("M-perfect matching width is not two: {0}")]
    NotWidth2(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tight(#[from] TightCutError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

impl MWidthError {
    /// The size cap behind this error, if any.
    pub fn cap_exceeded(&self) -> Option<&CapExceeded> {
        match self {
            MWidthError::Cap(c) => Some(c),
            MWidthError::Tight(t) => t.cap_exceeded(),
            MWidthError::Tree(t) => t.cap_exceeded(),
            MWidthError::Digraph(d) => d.cap_exceeded(),
            _ => None,
        }
    }
}

/// Outcome of [`mpmw2_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mpmw2Verdict {
    pub holds: bool,
    pub braces: Vec<BraceIso>,
}

/// Width two for `m` holds exactly when every brace of a tight cut
/// decomposition is `C4` or `K33`.
pub fn mpmw2_check(g: &BipartiteGraph, m: &Matching, cap: usize) -> Result<Mpmw2Verdict, MWidthError> {
    m.check_perfect(g)?;
    let tree = tight_cut_decomposition(g, CutSelection::Lowest, cap)?;
    let braces = tree.brace_isos();
    let holds = braces.iter().all(|&b| b != BraceIso::Other);
    Ok(Mpmw2Verdict { holds, braces })
}

/// Loose tree used while gluing: edges plus the graph vertex at each leaf.
struct Partial {
    edges: Vec<(usize, usize)>,
    leaf: Vec<Option<Vertex>>,
}

impl Partial {
    fn add_node(&mut self, v: Option<Vertex>) -> usize {
        self.leaf.push(v);
        self.leaf.len() - 1
    }

    fn node_of(&self, v: Vertex) -> usize {
        self.leaf.iter().position(|&x| x == Some(v)).expect("vertex has a leaf")
    }

    fn neighbour(&self, t: usize) -> usize {
        self.edges
            .iter()
            .find_map(|&(u, w)| if u == t { Some(w) } else if w == t { Some(u) } else { None })
            .expect("leaf has a neighbour")
    }

    /// One cherry per matching edge; two cherries are joined directly,
    /// three meet at a centre.
    fn base(g: &BipartiteGraph, m: &Matching) -> Partial {
        let mut p = Partial { edges: Vec::new(), leaf: Vec::new() };
        let mut tops = Vec::new();
        for &(a, b) in m.pairs() {
            let t = p.add_node(None);
            let x = p.add_node(Some(g.a(a)));
            let y = p.add_node(Some(g.b(b)));
            p.edges.push((t, x));
            p.edges.push((t, y));
            tops.push(t);
        }
        match tops.len() {
            2 => p.edges.push((tops[0], tops[1])),
            3 => {
                let c = p.add_node(None);
                for t in tops {
                    p.edges.push((c, t));
                }
            }
            _ => unreachable!("base graphs are C4 and K33"),
        }
        p
    }
}

/// Perfect matching of the contracted graph induced by `m`.
fn contract_matching(g: &BipartiteGraph, m: &Matching, vertex_map: &[Vertex], h: &BipartiteGraph, vz: Vertex) -> Matching {
    let mut pairs = Vec::new();
    for &(a, b) in m.pairs() {
        let (x, y) = (vertex_map[g.a(a).0], vertex_map[g.b(b).0]);
        if x == vz && y == vz {
            continue;
        }
        pairs.push((h.local(x), h.local(y)));
    }
    Matching::new(pairs)
}

fn build(tree: &TightCutTree, node: usize, m: &Matching) -> Result<Partial, MWidthError> {
    let graph = &tree.nodes[node].graph;
    match &tree.nodes[node].kind {
        NodeKind::Brace { iso: BraceIso::Other } => Err(MWidthError::NotWidth2(format!(
            "brace on {} vertices is neither C4 nor K33",
            graph.vertex_count()
        ))),
        NodeKind::Brace { .. } => Ok(Partial::base(graph, m)),
        NodeKind::Split { cut, .. } => {
            let z = &tree.cuts[*cut].local_shore;
            let &(xa, xb) = m
                .pairs()
                .iter()
                .find(|&&(a, b)| z.contains(graph.a(a).0) != z.contains(graph.b(b).0))
                .expect("a tight cut is crossed by one matching edge");
            // x inside z, y outside.
            let (x, y) = if z.contains(graph.a(xa).0) { (graph.a(xa), graph.b(xb)) } else { (graph.b(xb), graph.a(xa)) };
            let mut out = Partial { edges: Vec::new(), leaf: Vec::new() };
            let mut centre = None;
            let NodeKind::Split { children, .. } = tree.nodes[node].kind else { unreachable!() };
            // children[0] contracts the shore, children[1] its complement.
            for (k, (contracted, partner)) in [(z.clone(), y), (z.complement(), x)].into_iter().enumerate() {
                let (h, rec) = contract_unchecked(graph, &contracted);
                let hm = contract_matching(graph, m, &rec.vertex_map, &h, rec.contraction_vertex);
                let part = build(tree, children[k], &hm)?;
                let back = rec.child_to_parent(h.vertex_count());
                let lv = part.node_of(rec.contraction_vertex);
                let lu = part.node_of(rec.vertex_map[partner.0]);
                let t = part.neighbour(lv);
                if part.neighbour(lu) != t {
                    return Err(MWidthError::NotWidth2("matching edge at a contraction vertex is not a cherry".into()));
                }
                // Copy everything but the two leaves; t becomes the shared centre.
                let mut idx = vec![usize::MAX; part.leaf.len()];
                for (i, &l) in part.leaf.iter().enumerate() {
                    if i == lv || i == lu {
                        continue;
                    }
                    if i == t {
                        idx[i] = *centre.get_or_insert_with(|| out.add_node(None));
                    } else {
                        idx[i] = out.add_node(l.map(|v| back[v.0].expect("not the contraction vertex")));
                    }
                }
                for &(u, w) in &part.edges {
                    if idx[u] != usize::MAX && idx[w] != usize::MAX {
                        out.edges.push((idx[u], idx[w]));
                    }
                }
            }
            let t = centre.expect("two sides");
            let t2 = out.add_node(None);
            let lx = out.add_node(Some(x));
            let ly = out.add_node(Some(y));
            out.edges.extend([(t, t2), (t2, lx), (t2, ly)]);
            Ok(out)
        }
    }
}

/// An `m`-anchored decomposition of width two, assembled from cherry trees
/// of the braces glued along a tight cut decomposition.
pub fn mpmw2_decompose(g: &BipartiteGraph, m: &Matching, cap: usize) -> Result<DecompositionTree, MWidthError> {
    m.check_perfect(g)?;
    let tree = tight_cut_decomposition(g, CutSelection::Lowest, cap)?;
    let p = build(&tree, 0, m)?;
    let leaves: Vec<(NodeId, Vertex)> = p.leaf.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v))).collect();
    let d = DecompositionTree::from_parts(p.leaf.len(), &p.edges, &leaves, Some(m.clone()))?;
    let w = width(g, &d)?.width;
    if w != 2 {
        return Err(MWidthError::NotWidth2(format!("assembled tree has width {w}")));
    }
    Ok(d)
}

/// A rooted tree decomposition of a digraph: bags of vertices at nodes and a
/// guard on the arc entering every non-root node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedTreeDecomposition {
    pub parent: Vec<Option<usize>>,
    pub bags: Vec<Vec<usize>>,
    /// Guard of the arc from `parent[t]` to `t`; empty at the root.
    pub guards: Vec<Vec<usize>>,
}

impl DirectedTreeDecomposition {
    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn children(&self, t: usize) -> Vec<usize> {
        (0..self.node_count()).filter(|&c| self.parent[c] == Some(t)).collect()
    }

    /// Bag together with the guards of all incident arcs.
    pub fn gamma(&self, t: usize) -> Vec<usize> {
        let mut g = self.bags[t].clone();
        g.extend(self.guards[t].iter().copied());
        for c in self.children(t) {
            g.extend(self.guards[c].iter().copied());
        }
        g.sort_unstable();
        g.dedup();
        g
    }

    /// `max |Γ(t)| - 1`, or 0 for an empty decomposition.
    pub fn width(&self) -> usize {
        (0..self.node_count()).map(|t| self.gamma(t).len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Nodes below `t`, `t` included.
    pub fn subtree(&self, t: usize) -> Vec<usize> {
        let mut out = vec![t];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.children(out[i]));
            i += 1;
        }
        out
    }
}

/// Findings of [`validate_dtd`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DtdReport {
    pub arborescence: bool,
    pub near_partition: bool,
    /// Non-root nodes whose subtree bags are not normal for their guard.
    pub normality_violations: Vec<usize>,
    pub guard_sizes: Vec<usize>,
    pub width: usize,
}

impl DtdReport {
    pub fn is_valid(&self) -> bool {
        self.arborescence && self.near_partition && self.normality_violations.is_empty()
    }
}

/// Checks a directed tree decomposition against the digraph directly: the
/// parent pointers form one arborescence, the bags partition the vertices
/// (empty bags allowed), and below every arc the bag union `S` avoids the
/// guard `Z` and no vertex outside `S` lies on a walk in `D - Z` between
/// two vertices of `S`.
pub fn validate_dtd(d: &Digraph, t: &DirectedTreeDecomposition) -> DtdReport {
    let k = t.node_count();
    let n = d.vertex_count();
    let roots = t.parent.iter().filter(|p| p.is_none()).count();
    let mut arborescence = roots == 1 && t.bags.len() == k && t.guards.len() == k;
    if arborescence {
        for s in 0..k {
            let (mut x, mut steps) = (s, 0);
            while let Some(p) = t.parent[x] {
                if p >= k || steps > k {
                    arborescence = false;
                    break;
                }
                x = p;
                steps += 1;
            }
        }
    }
    let mut count = vec![0usize; n];
    let mut in_range = true;
    for b in &t.bags {
        for &v in b {
            if v < n {
                count[v] += 1;
            } else {
                in_range = false;
            }
        }
    }
    let near_partition = in_range && count.iter().all(|&c| c == 1);
    let mut report = DtdReport {
        arborescence,
        near_partition,
        normality_violations: Vec::new(),
        guard_sizes: Vec::new(),
        width: 0,
    };
    if !arborescence || !near_partition {
        return report;
    }
    report.width = t.width();
    for c in 0..k {
        if t.parent[c].is_none() {
            continue;
        }
        report.guard_sizes.push(t.guards[c].len());
        let s = VertexSet::from_iter(n, t.subtree(c).into_iter().flat_map(|x| t.bags[x].iter().copied()));
        let z = VertexSet::from_iter(n, t.guards[c].iter().copied().filter(|&v| v < n));
        let allowed = z.complement();
        let normal = s.is_disjoint(&z) && {
            let between = d.reach(&s, &allowed, true).intersection(&d.reach(&s, &allowed, false));
            between.is_subset(&s)
        };
        if !normal {
            report.normality_violations.push(c);
        }
    }
    report
}

/// Directed tree decomposition of width at most two, read off a tight cut
/// decomposition of the split graph of every strong component. The tree of
/// braces is rooted at its lowest brace; the guard of an arc is the vertex
/// whose matching edge crosses the cut; a vertex whose two ends live in
/// different braces is placed at the topmost node of the arcs it guards.
/// Strong components are chained in topological order by unguarded arcs.
pub fn directed_tree_decomposition_w2(d: &Digraph, cap: usize) -> Result<DirectedTreeDecomposition, MWidthError> {
    CapExceeded::check("directed tree decomposition", cap, 2 * d.vertex_count())?;
    let mut out = DirectedTreeDecomposition { parent: Vec::new(), bags: Vec::new(), guards: Vec::new() };
    let mut prev_root: Option<usize> = None;
    for comp in d.strong_components() {
        let offset = out.node_count();
        let (sub, labels) = d.induced(&comp);
        let part = component_dtd(&sub, cap)?;
        for i in 0..part.node_count() {
            out.parent.push(match part.parent[i] {
                Some(p) => Some(p + offset),
                None => prev_root,
            });
            out.bags.push(part.bags[i].iter().map(|&v| labels[v]).collect());
            out.guards.push(part.guards[i].iter().map(|&v| labels[v]).collect());
        }
        prev_root = Some(offset);
    }
    for b in &mut out.bags {
        b.sort_unstable();
    }
    Ok(out)
}

fn component_dtd(d: &Digraph, cap: usize) -> Result<DirectedTreeDecomposition, MWidthError> {
    let n = d.vertex_count();
    if n == 1 {
        return Ok(DirectedTreeDecomposition { parent: vec![None], bags: vec![vec![0]], guards: vec![vec![]] });
    }
    let (g, _) = split_graph(d);
    let tree = tight_cut_decomposition(&g, CutSelection::Lowest, cap)?;
    if tree.brace_isos().contains(&BraceIso::Other) {
        return Err(MWidthError::NotWidth2("a brace of the split graph is neither C4 nor K33".into()));
    }
    let leaves = tree.leaves();
    let pos = |leaf: usize| leaves.iter().position(|&l| l == leaf).expect("leaf");
    let k = leaves.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for (p, q, c) in tree.brace_tree() {
        adj[pos(p)].push((pos(q), c));
        adj[pos(q)].push((pos(p), c));
    }
    let crossing = |c: usize| {
        let shore = &tree.cuts[c].host_shore;
        (0..n)
            .find(|&i| shore.contains(g.a(i).0) != shore.contains(g.b(i).0))
            .expect("a tight cut is crossed by one matching edge")
    };
    let mut parent = vec![None; k];
    let mut guards = vec![Vec::new(); k];
    let mut depth = vec![0usize; k];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &(w, c) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                depth[w] = depth[u] + 1;
                guards[w] = vec![crossing(c)];
                queue.push_back(w);
            }
        }
    }
    let mut bags = vec![Vec::new(); k];
    for v in 0..n {
        let home = leaves.iter().position(|&l| {
            let own = tree.own_host_vertices(l);
            own.contains(g.a(v).0) && own.contains(g.b(v).0)
        });
        let node = match home {
            Some(t) => t,
            None => (0..k)
                .filter(|&c| guards[c] == [v])
                .map(|c| parent[c].expect("guarded arcs have a tail"))
                .min_by_key(|&p| depth[p])
                .expect("a split matching edge guards some arc"),
        };
        bags[node].push(v);
    }
    Ok(DirectedTreeDecomposition { parent, bags, guards })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CyclewidthRoute {
    /// Braces of the split graph of each strong component.
    Bipartite,
    /// Search for a forbidden strongly 2-connected butterfly minor.
    Minors,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclewidthVerdict {
    pub acyclic: bool,
    pub bipartite: Option<bool>,
    pub minors: Option<bool>,
    pub witness: Option<MinorWitness>,
}

impl CyclewidthVerdict {
    /// The answer; with both routes this is the bipartite one.
    pub fn value(&self) -> bool {
        self.bipartite.or(self.minors).unwrap_or(false)
    }

    pub fn routes_agree(&self) -> bool {
        match (self.bipartite, self.minors) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

/// Decides whether the cyclewidth is exactly two. Cyclic porosities are
/// even, so an acyclic digraph has width 0 and every other digraph at
/// least 2.
/// The bipartite route is capped by `limits.tight_cut_vertices` on split
/// graphs, the minor route by `limits.minor_vertices`.
pub fn cyclewidth2(d: &Digraph, route: CyclewidthRoute, limits: &Limits) -> Result<CyclewidthVerdict, MWidthError> {
    let acyclic = !d.has_cycle();
    let mut v = CyclewidthVerdict { acyclic, bipartite: None, minors: None, witness: None };
    if matches!(route, CyclewidthRoute::Bipartite | CyclewidthRoute::Both) {
        let mut ok = !acyclic;
        for comp in d.strong_components().into_iter().filter(|c| c.len() > 1) {
            let (sub, _) = d.induced(&comp);
            let (g, m) = split_graph(&sub);
            if !mpmw2_check(&g, &m, limits.tight_cut_vertices)?.holds {
                ok = false;
                break;
            }
        }
        v.bipartite = Some(ok);
    }
    if matches!(route, CyclewidthRoute::Minors | CyclewidthRoute::Both) {
        v.witness = forbidden_butterfly_minor(d, limits.minor_vertices)?;
        v.minors = Some(!acyclic && v.witness.is_none());
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::m_direction;
    use crate::width2::brute_force_mpmw;

    fn c6() -> BipartiteGraph {
        BipartiteGraph::cycle(3)
    }

    fn identity(n: usize) -> Matching {
        Matching::new((0..n).map(|i| (i, i)).collect())
    }

    #[test]
    fn recognition() {
        let k33 = BipartiteGraph::complete(3, 3);
        assert!(mpmw2_check(&k33, &identity(3), 20).unwrap().holds);
        assert!(mpmw2_check(&c6(), &identity(3), 20).unwrap().holds);
        let k44 = BipartiteGraph::complete(4, 4);
        let v = mpmw2_check(&k44, &identity(4), 20).unwrap();
        assert!(!v.holds);
        assert_eq!(v.braces, vec![BraceIso::Other]);
        assert!(mpmw2_check(&k33, &Matching::new(vec![(0, 0)]), 20).is_err());
    }

    #[test]
    fn decompositions_of_small_graphs() {
        for (g, m) in [
            (BipartiteGraph::cycle(2), identity(2)),
            (BipartiteGraph::complete(3, 3), identity(3)),
            (c6(), identity(3)),
            (BipartiteGraph::cycle(5), identity(5)),
        ] {
            let d = mpmw2_decompose(&g, &m, 20).unwrap();
            assert_eq!(width(&g, &d).unwrap().width, 2);
            assert_eq!(brute_force_mpmw(&g, &m, 12).unwrap().width, 2);
        }
        let k44 = BipartiteGraph::complete(4, 4);
        assert!(matches!(mpmw2_decompose(&k44, &identity(4), 20), Err(MWidthError::NotWidth2(_))));
    }

    #[test]
    fn directed_decompositions() {
        let digon = Digraph::digon();
        let t = directed_tree_decomposition_w2(&digon, 20).unwrap();
        assert_eq!(t.bags, vec![vec![0, 1]]);
        assert_eq!(t.width(), 1);

        let bik3 = Digraph::complete(3);
        let t = directed_tree_decomposition_w2(&bik3, 20).unwrap();
        assert_eq!(t.bags, vec![vec![0, 1, 2]]);
        assert_eq!(t.width(), 2);

        let d = m_direction(&c6(), &identity(3)).unwrap().digraph;
        let t = directed_tree_decomposition_w2(&d, 20).unwrap();
        let r = validate_dtd(&d, &t);
        assert!(r.is_valid(), "{r:?}");
        assert_eq!(t.node_count(), 2);
        assert_eq!(r.guard_sizes, vec![1]);
        assert!(r.width <= 2);

        assert!(directed_tree_decomposition_w2(&Digraph::complete(4), 20).is_err());
    }

    #[test]
    fn validator_rejects_bad_guards() {
        let d = m_direction(&c6(), &identity(3)).unwrap().digraph;
        let mut t = directed_tree_decomposition_w2(&d, 20).unwrap();
        let c = (0..2).find(|&c| t.parent[c].is_some()).unwrap();
        t.guards[c].clear();
        assert!(!validate_dtd(&d, &t).normality_violations.is_empty());
    }

    #[test]
    fn chained_components() {
        // Two digons joined by one arc.
        let d = Digraph::new(4, &[(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]).unwrap();
        let t = directed_tree_decomposition_w2(&d, 20).unwrap();
        assert!(validate_dtd(&d, &t).is_valid());
        let v = cyclewidth2(&d, CyclewidthRoute::Both, &Limits::default()).unwrap();
        assert!(v.value() && v.routes_agree());
    }

    #[test]
    fn cyclewidth_decisions() {
        let both = |d: &Digraph| cyclewidth2(d, CyclewidthRoute::Both, &Limits::default()).unwrap();
        let v = both(&Digraph::complete(3));
        assert!(v.value() && v.routes_agree());
        let v = both(&Digraph::complete(4));
        assert!(!v.value() && v.routes_agree());
        let v = both(&Digraph::new(3, &[(0, 1), (1, 2)]).unwrap());
        assert!(v.acyclic && !v.value() && v.routes_agree());
    }
}
