//! Isomorphism tests backed by petgraph's VF2, and a canonical form for
//! small balanced bipartite graphs.

use petgraph::algo::{is_isomorphic, is_isomorphic_matching};
use petgraph::graph::{DiGraph, UnGraph};

use crate::digraph::Digraph;
use crate::graph::{BipartiteGraph, Side};

fn to_petgraph(g: &BipartiteGraph) -> UnGraph<Side, ()> {
    let mut p = UnGraph::with_capacity(g.vertex_count(), g.edge_count());
    let nodes: Vec<_> = g.vertices().map(|v| p.add_node(g.side(v))).collect();
    for &(a, b) in g.edges() {
        p.add_edge(nodes[g.a(a).0], nodes[g.b(b).0], ());
    }
    p
}

/// Plain graph isomorphism; the colour classes may be exchanged.
pub fn bipartite_isomorphic(g: &BipartiteGraph, h: &BipartiteGraph) -> bool {
    g.vertex_count() == h.vertex_count()
        && g.edge_count() == h.edge_count()
        && is_isomorphic(&to_petgraph(g), &to_petgraph(h))
}

/// Isomorphism mapping A onto A and B onto B.
pub fn bipartite_isomorphic_sides(g: &BipartiteGraph, h: &BipartiteGraph) -> bool {
    g.a_count() == h.a_count()
        && g.b_count() == h.b_count()
        && g.edge_count() == h.edge_count()
        && is_isomorphic_matching(&to_petgraph(g), &to_petgraph(h), |x, y| x == y, |_, _| true)
}

pub fn digraph_isomorphic(d: &Digraph, e: &Digraph) -> bool {
    let conv = |d: &Digraph| {
        let mut p = DiGraph::<(), ()>::with_capacity(d.vertex_count(), d.arc_count());
        let nodes: Vec<_> = (0..d.vertex_count()).map(|_| p.add_node(())).collect();
        for &(u, v) in d.arcs() {
            p.add_edge(nodes[u], nodes[v], ());
        }
        p
    };
    d.vertex_count() == e.vertex_count() && d.arc_count() == e.arc_count() && is_isomorphic(&conv(d), &conv(e))
}

/// Whether two lists hold the same graphs up to isomorphism, counting
/// multiplicity.
pub fn same_multiset(xs: &[BipartiteGraph], ys: &[BipartiteGraph]) -> bool {
    if xs.len() != ys.len() {
        return false;
    }
    let mut used = vec![false; ys.len()];
    xs.iter().all(|x| {
        match (0..ys.len()).find(|&j| !used[j] && bipartite_isomorphic(x, &ys[j])) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Smallest adjacency bitmask (bit `a * n + b`) over all relabellings of a
/// balanced graph with `n <= 5` vertices per class, sides swapped or not.
/// Two such graphs are isomorphic exactly when their codes agree.
pub fn canonical_code(g: &BipartiteGraph) -> u64 {
    let n = g.a_count();
    assert!(g.is_balanced() && n <= 5, "canonical_code expects a small balanced graph");
    let perms = permutations(n);
    let mut best = u64::MAX;
    for h in [g.clone(), g.swap_sides()] {
        for pa in &perms {
            for pb in &perms {
                let code = h.edges().iter().fold(0u64, |acc, &(a, b)| acc | 1 << (pa[a] * n + pb[b]));
                best = best.min(code);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::width2::ladder;

    #[test]
    fn small_isomorphisms() {
        assert!(bipartite_isomorphic(&ladder(3), &BipartiteGraph::complete(3, 3)));
        assert!(bipartite_isomorphic(&ladder(2), &BipartiteGraph::cycle(2)));
        assert!(!bipartite_isomorphic(&BipartiteGraph::cycle(4), &BipartiteGraph::complete(2, 2)));
        let lopsided = BipartiteGraph::new(1, 2, &[(0, 0), (0, 1)]).unwrap();
        assert!(bipartite_isomorphic(&lopsided, &lopsided.swap_sides()));
        assert!(!bipartite_isomorphic_sides(&lopsided, &lopsided.swap_sides()));
    }

    #[test]
    fn canonical_codes_agree_with_vf2() {
        let c8 = BipartiteGraph::cycle(4);
        let shuffled = BipartiteGraph::new(4, 4, &[(0, 2), (2, 2), (2, 1), (1, 1), (1, 3), (3, 3), (3, 0), (0, 0)]).unwrap();
        assert!(bipartite_isomorphic(&c8, &shuffled));
        assert_eq!(canonical_code(&c8), canonical_code(&shuffled));
        assert_ne!(canonical_code(&c8), canonical_code(&ladder(4)));
    }

    #[test]
    fn digraphs_and_multisets() {
        let a = Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = Digraph::new(3, &[(0, 2), (2, 1), (1, 0)]).unwrap();
        assert!(digraph_isomorphic(&a, &b));
        assert!(!digraph_isomorphic(&a, &Digraph::complete(3)));
        let c4 = BipartiteGraph::cycle(2);
        let k33 = BipartiteGraph::complete(3, 3);
        assert!(same_multiset(&[c4.clone(), k33.clone(), c4.clone()], &[k33.clone(), c4.clone(), c4.clone()]));
        assert!(!same_multiset(&[c4.clone(), k33.clone()], &[c4.clone(), c4]));
    }
}
