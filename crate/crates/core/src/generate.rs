//! Seeded random instances: braces, splices, matching covered graphs,
//! decompositions and digraphs. Also the exhaustive list of small braces.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::digraph::Digraph;
use crate::graph::{BipartiteGraph, Matching, Side, Vertex};
use crate::iso::canonical_code;
use crate::matching::{enumerate_perfect_matchings, is_matching_covered};
use crate::tight::is_brace;
use crate::tree::{DecompositionTree, NodeId};
use crate::vset::VertexSet;
use crate::width2::ladder;

pub fn random_bipartite<R: Rng>(rng: &mut R, a: usize, b: usize, p: f64) -> BipartiteGraph {
    let edges: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).filter(|_| rng.gen_bool(p)).collect();
    BipartiteGraph::new(a, b, &edges).expect("in range")
}

/// Relabels both classes by random permutations.
pub fn shuffle_labels<R: Rng>(rng: &mut R, g: &BipartiteGraph) -> BipartiteGraph {
    let mut pa: Vec<usize> = (0..g.a_count()).collect();
    let mut pb: Vec<usize> = (0..g.b_count()).collect();
    pa.shuffle(rng);
    pb.shuffle(rng);
    let edges: Vec<_> = g.edges().iter().map(|&(a, b)| (pa[a], pb[b])).collect();
    BipartiteGraph::new(g.a_count(), g.b_count(), &edges).expect("relabelling")
}

/// A matching covered graph with `n` vertices per class: a Hamiltonian
/// cycle plus random chords, resampled until matching covered.
pub fn random_matching_covered<R: Rng>(rng: &mut R, n: usize, p: f64) -> BipartiteGraph {
    if n == 1 {
        return BipartiteGraph::complete(1, 1);
    }
    loop {
        let base = shuffle_labels(rng, &BipartiteGraph::cycle(n));
        let mut edges = base.edges().to_vec();
        for a in 0..n {
            for b in 0..n {
                if rng.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        let g = BipartiteGraph::new_dedup(n, n, &edges).expect("in range");
        if is_matching_covered(&g).covered {
            return g;
        }
    }
}

/// A brace with `n >= 2` vertices per class. With `ladder_like` it is a
/// relabelled spanning brace of the ladder (so of width two); otherwise a
/// dense random graph that happens to be a brace.
pub fn random_brace<R: Rng>(rng: &mut R, n: usize, ladder_like: bool) -> BipartiteGraph {
    if n == 2 {
        return BipartiteGraph::cycle(2);
    }
    if ladder_like {
        let mut g = ladder(n);
        let mut order = g.edges().to_vec();
        order.shuffle(rng);
        for e in order {
            if rng.gen_bool(0.5) {
                let edges: Vec<_> = g.edges().iter().copied().filter(|&f| f != e).collect();
                let h = BipartiteGraph::new(n, n, &edges).expect("subgraph");
                if is_brace(&h) {
                    g = h;
                }
            }
        }
        return shuffle_labels(rng, &g);
    }
    loop {
        let p = rng.gen_range(0.45..0.9);
        let g = random_bipartite(rng, n, n, p);
        if is_brace(&g) {
            return g;
        }
    }
}

/// Every brace with at most `max_side` vertices per class, one per
/// isomorphism class, smallest first.
pub fn all_braces(max_side: usize) -> Vec<BipartiteGraph> {
    assert!(max_side <= 4, "exhaustive brace list is only built up to four vertices per class");
    let mut out = Vec::new();
    for n in 2..=max_side {
        let mut seen = BTreeSet::new();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        for mask in 0u64..1 << (n * n) {
            // Braces have minimum degree at least min(n, 3) > 1.
            if (mask.count_ones() as usize) < 2 * n {
                continue;
            }
            let edges: Vec<_> = (0..n * n).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let g = BipartiteGraph::new(n, n, &edges).expect("in range");
            if g.vertices().any(|v| g.degree(v) < 2) {
                continue;
            }
            let code = canonical_code(&g);
            if seen.contains(&code) {
                continue;
            }
            if is_brace(&g) {
                seen.insert(code);
                out.push(g);
            }
        }
    }
    out
}

/// Splices `g1` at B-vertex `v` with `g2` at A-vertex `w`: both vertices
/// are removed and a random relation covering `N(v)` and `N(w)` joins the
/// two neighbourhoods. A-vertices of `g1` come first in the result, then
/// those of `g2`; B-vertices of `g1` first as well. Returns the graph and
/// the shore made of the remaining vertices of `g1`, which is a tight cut.
pub fn splice<R: Rng>(rng: &mut R, g1: &BipartiteGraph, v: usize, g2: &BipartiteGraph, w: usize) -> (BipartiteGraph, VertexSet) {
    let (a1, b1) = (g1.a_count(), g1.b_count());
    let (a2, b2) = (g2.a_count(), g2.b_count());
    let amap2 = |a: usize| a1 + if a > w { a - 1 } else { a };
    let bmap1 = |b: usize| if b > v { b - 1 } else { b };
    let mut edges = Vec::new();
    for &(a, b) in g1.edges() {
        if b != v {
            edges.push((a, bmap1(b)));
        }
    }
    for &(a, b) in g2.edges() {
        if a != w {
            edges.push((amap2(a), b1 - 1 + b));
        }
    }
    let nv = g1.adj_b(v).to_vec();
    let nw = g2.adj_a(w).to_vec();
    for &x in &nv {
        edges.push((x, b1 - 1 + *nw.choose(rng).expect("w has neighbours")));
    }
    for &y in &nw {
        edges.push((*nv.choose(rng).expect("v has neighbours"), b1 - 1 + y));
    }
    for &x in &nv {
        for &y in &nw {
            if rng.gen_bool(0.3) {
                edges.push((x, b1 - 1 + y));
            }
        }
    }
    let g = BipartiteGraph::new_dedup(a1 + a2 - 1, b1 - 1 + b2, &edges).expect("splice");
    let shore = VertexSet::from_iter(
        g.vertex_count(),
        (0..a1).map(|a| g.a(a).0).chain((0..b1 - 1).map(|b| g.b(b).0)),
    );
    (g, shore)
}

/// Splices random braces drawn from `pool` until adding one more would
/// exceed `max_vertices`; also returns the braces used.
pub fn random_splice_chain<R: Rng>(
    rng: &mut R,
    pool: &[BipartiteGraph],
    max_vertices: usize,
) -> (BipartiteGraph, Vec<BipartiteGraph>) {
    let mut g = pool.choose(rng).expect("nonempty pool").clone();
    let mut used = vec![g.clone()];
    loop {
        let fits: Vec<&BipartiteGraph> =
            pool.iter().filter(|h| g.vertex_count() + h.vertex_count() - 2 <= max_vertices).collect();
        if fits.is_empty() || (used.len() > 1 && rng.gen_bool(0.25)) {
            return (g, used);
        }
        let h = (*fits.choose(rng).expect("nonempty")).clone();
        if rng.gen_bool(0.5) {
            g = g.swap_sides();
        }
        let v = rng.gen_range(0..g.b_count());
        let w = rng.gen_range(0..h.a_count());
        let (s, _) = splice(rng, &g, v, &h, w);
        if is_matching_covered(&s).covered {
            g = s;
            used.push(h);
        }
    }
}

/// A uniformly random perfect matching, or `None` if there is none.
pub fn random_perfect_matching<R: Rng>(rng: &mut R, g: &BipartiteGraph) -> Option<Matching> {
    let all = enumerate_perfect_matchings(g, usize::MAX).ok()?;
    all.choose(rng).cloned()
}

/// Random cubic tree with leaves `0..leaves` and inner nodes numbered after
/// them, grown by inserting each leaf into a random edge.
pub fn random_cubic_tree<R: Rng>(rng: &mut R, leaves: usize) -> (usize, Vec<(NodeId, NodeId)>) {
    match leaves {
        0 => (0, Vec::new()),
        1 => (1, Vec::new()),
        2 => (2, vec![(0, 1)]),
        _ => {
            let mut edges = vec![(0, leaves), (1, leaves), (2, leaves)];
            for k in 3..leaves {
                let w = leaves + k - 2;
                let i = rng.gen_range(0..edges.len());
                let (u, v) = edges[i];
                edges[i] = (u, w);
                edges.push((w, v));
                edges.push((k, w));
            }
            (2 * leaves - 2, edges)
        }
    }
}

/// Random decomposition: random cubic tree and random leaf bijection.
pub fn random_decomposition<R: Rng>(rng: &mut R, g: &BipartiteGraph) -> DecompositionTree {
    let n = g.vertex_count();
    let (nodes, edges) = random_cubic_tree(rng, n);
    let mut verts: Vec<Vertex> = g.vertices().collect();
    verts.shuffle(rng);
    let leaves: Vec<(NodeId, Vertex)> = verts.into_iter().enumerate().collect();
    DecompositionTree::from_parts(nodes, &edges, &leaves, None).expect("random tree")
}

/// Random `m`-anchored decomposition: a random cubic tree over the matching
/// edges with each of its leaves replaced by a cherry on that edge.
pub fn random_m_anchored<R: Rng>(rng: &mut R, g: &BipartiteGraph, m: &Matching) -> DecompositionTree {
    let k = m.len();
    let mut pairs = m.pairs().to_vec();
    pairs.shuffle(rng);
    if k == 1 {
        let leaves = [(0, g.a(pairs[0].0)), (1, g.b(pairs[0].1))];
        return DecompositionTree::from_parts(2, &[(0, 1)], &leaves, Some(m.clone())).expect("edge");
    }
    let (nodes, mut edges) = random_cubic_tree(rng, k);
    let mut leaves = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        let (x, y) = (nodes + 2 * i, nodes + 2 * i + 1);
        edges.push((i, x));
        edges.push((i, y));
        let (x, y) = if rng.gen_bool(0.5) { (x, y) } else { (y, x) };
        leaves.push((x, g.a(a)));
        leaves.push((y, g.b(b)));
    }
    DecompositionTree::from_parts(nodes + 2 * k, &edges, &leaves, Some(m.clone())).expect("anchored tree")
}

pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let arcs: Vec<_> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::new(n, &arcs).expect("simple")
}

/// Random graph with every brace `C4` or `K33`, so of M-perfect matching
/// width two for each of its perfect matchings.
pub fn random_mpmw2_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> BipartiteGraph {
    let pool = [BipartiteGraph::cycle(2), BipartiteGraph::complete(3, 3)];
    let (g, _) = random_splice_chain(rng, &pool, max_vertices);
    shuffle_labels(rng, &g)
}

/// Which colour class of `g` a vertex set mostly lies in.
pub fn majority_side(g: &BipartiteGraph, s: &VertexSet) -> Side {
    if s.intersection(&g.class(Side::A)).len() * 2 >= s.len() {
        Side::A
    } else {
        Side::B
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tight::{is_tight_cut, tight_cut_decomposition, CutSelection};
    use crate::tree::width;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_brace_census() {
        let braces = all_braces(3);
        assert_eq!(braces.len(), 2);
        assert_eq!(braces[0], BipartiteGraph::cycle(2));
        assert_eq!(braces[1], BipartiteGraph::complete(3, 3));
    }

    #[test]
    fn splices_have_the_planted_tight_cut() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let k33 = BipartiteGraph::complete(3, 3);
        let c4 = BipartiteGraph::cycle(2);
        for _ in 0..20 {
            let (g, shore) = splice(&mut rng, &k33, 1, &c4, 0);
            assert_eq!(g.vertex_count(), 8);
            assert!(is_matching_covered(&g).covered);
            assert!(is_tight_cut(&g, &shore).unwrap());
            let t = tight_cut_decomposition(&g, CutSelection::Lowest, 20).unwrap();
            assert_eq!(t.braces().len(), 2);
        }
    }

    #[test]
    fn random_structures_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..6 {
            let g = random_matching_covered(&mut rng, n, 0.3);
            let d = random_decomposition(&mut rng, &g);
            assert!(width(&g, &d).is_ok());
            let m = random_perfect_matching(&mut rng, &g).unwrap();
            let d = random_m_anchored(&mut rng, &g, &m);
            assert!(width(&g, &d).is_ok());
            assert!(is_brace(&random_brace(&mut rng, n, true)));
        }
    }
}
