use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmw_core::digraph::{
    brute_force_cyclewidth, cyclic_porosity, forbidden_butterfly_minor, m_direction, split_graph, CyclicEngine,
};
use pmw_core::generate::{random_decomposition, random_digraph, random_matching_covered, random_perfect_matching};
use pmw_core::io::{
    emit_bipartite, emit_decomposition, emit_digraph, parse_bipartite, parse_decomposition, parse_digraph,
};
use pmw_core::porosity::{balance, matching_porosity, porosity_with, PorosityEngine};
use pmw_core::tree::{classify_edges, eliminate_odd_edges, width};
use pmw_core::VertexSet;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn covered(seed: u64, max_side: usize) -> (ChaCha8Rng, pmw_core::BipartiteGraph) {
    let mut r = rng(seed);
    let n = r.gen_range(2..=max_side);
    let p = r.gen_range(0.1..0.6);
    let g = random_matching_covered(&mut r, n, p);
    (r, g)
}

fn random_shore(r: &mut ChaCha8Rng, universe: usize) -> VertexSet {
    VertexSet::from_mask(universe, r.gen_range(1..(1u64 << universe) - 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn porosity_parity_and_lower_bound(seed in any::<u64>()) {
        let (mut r, g) = covered(seed, 6);
        let x = random_shore(&mut r, g.vertex_count());
        let p = matching_porosity(&g, &x).unwrap();
        let b = balance(&g, &x);
        prop_assert!(p >= b);
        prop_assert_eq!(p % 2, b % 2);
    }

    #[test]
    fn porosity_engines_agree(seed in any::<u64>()) {
        let (mut r, g) = covered(seed, 5);
        let x = random_shore(&mut r, g.vertex_count());
        let a = porosity_with(&g, &x, PorosityEngine::Assignment).unwrap();
        let e = porosity_with(&g, &x, PorosityEngine::Enumeration { cap: 12 }).unwrap();
        prop_assert_eq!(a.value, e.value);
        prop_assert_eq!(a.matching.crossing(&g, &x), a.value);
    }

    #[test]
    fn cyclic_porosity_engines_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=7);
        let p = r.gen_range(0.1..0.6);
        let d = random_digraph(&mut r, n, p);
        let x = random_shore(&mut r, n);
        let a = cyclic_porosity(&d, &x, CyclicEngine::Assignment).unwrap();
        let o = cyclic_porosity(&d, &x, CyclicEngine::Oracle { cap: 8 }).unwrap();
        prop_assert_eq!(a, o);
        prop_assert_eq!(a % 2, 0);
    }

    #[test]
    fn split_inverts_m_direction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=9);
        let p = r.gen_range(0.0..0.6);
        let d = random_digraph(&mut r, n, p);
        let (g, m) = split_graph(&d);
        let back = m_direction(&g, &m).unwrap();
        prop_assert_eq!(back.digraph, d);

        let (_, g) = covered(seed, 6);
        let m = random_perfect_matching(&mut r, &g).unwrap();
        let md = m_direction(&g, &m).unwrap();
        let (h, _) = split_graph(&md.digraph);
        prop_assert_eq!(h.edge_count(), g.edge_count());
    }

    #[test]
    fn text_round_trips(seed in any::<u64>()) {
        let (mut r, g) = covered(seed, 7);
        let m = random_perfect_matching(&mut r, &g);
        let (g2, m2) = parse_bipartite(&emit_bipartite(&g, m.as_ref())).unwrap();
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(m2, m);

        let t = random_decomposition(&mut r, &g);
        let t2 = parse_decomposition(&emit_decomposition(&g, &t), &g).unwrap();
        prop_assert_eq!(width(&g, &t2).unwrap().width, width(&g, &t).unwrap().width);
        prop_assert_eq!(t2.tree().edges(), t.tree().edges());

        let n = r.gen_range(1..=9);
        let d = random_digraph(&mut r, n, 0.3);
        prop_assert_eq!(parse_digraph(&emit_digraph(&d)).unwrap(), d);
    }

    #[test]
    fn odd_edge_elimination_width_bound(seed in any::<u64>()) {
        let (mut r, g) = covered(seed, 6);
        let t = random_decomposition(&mut r, &g);
        let e = eliminate_odd_edges(&g, &t).unwrap();
        prop_assert!(e.tree().is_cubic());
        prop_assert!(classify_edges(e.tree()).unwrap().odd_edges().is_empty());
        let w = width(&g, &t).unwrap().width;
        prop_assert!(width(&g, &e).unwrap().width <= w + w % 2);
    }

    #[test]
    fn butterfly_contraction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=8);
        let d = random_digraph(&mut r, n, 0.35);
        for &(u, v) in d.arcs() {
            let ok = d.is_butterfly_contractible(u, v);
            prop_assert_eq!(ok, d.out_neighbours(u).len() == 1 || d.in_neighbours(v).len() == 1);
            match d.butterfly_contract(u, v) {
                Ok(c) => {
                    prop_assert!(ok);
                    prop_assert_eq!(c.vertex_count(), n - 1);
                    prop_assert_eq!(c.strong_components().len() <= d.strong_components().len(), true);
                }
                Err(_) => prop_assert!(!ok),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn minor_witness_matches_exhaustive_width(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=7);
        let p = r.gen_range(0.15..0.7);
        let d = random_digraph(&mut r, n, p);
        let w = forbidden_butterfly_minor(&d, 10).unwrap();
        if let Some(w) = &w {
            prop_assert!(w.minor.vertex_count() >= 4);
            prop_assert!(w.minor.is_strongly_k_connected(2));
            let mut seen = vec![false; n];
            for s in &w.branch_sets {
                prop_assert!(!s.is_empty());
                for &v in s {
                    prop_assert!(!seen[v]);
                    seen[v] = true;
                }
            }
        }
        let cw = brute_force_cyclewidth(&d, 8).unwrap();
        prop_assert_eq!(w.is_some(), cw > 2);
    }
}
