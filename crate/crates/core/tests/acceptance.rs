//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every random choice comes from fixed seeds.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmw_core::digraph::{brute_force_cyclewidth, m_direction, split_graph};
use pmw_core::generate::{
    all_braces, random_brace, random_decomposition, random_digraph, random_m_anchored, random_matching_covered,
    random_mpmw2_graph, random_perfect_matching, random_splice_chain,
};
use pmw_core::iso::{bipartite_isomorphic, digraph_isomorphic, same_multiset};
use pmw_core::matching::enumerate_perfect_matchings;
use pmw_core::mwidth::{cyclewidth2, directed_tree_decomposition_w2, mpmw2_check, validate_dtd, CyclewidthRoute};
use pmw_core::porosity::{matching_porosity, porosity_with, PorosityEngine};
use pmw_core::tight::{contract, nontrivial_tight_shores, tight_cut_decomposition, CutSelection};
use pmw_core::tree::{classify_edges, contract_decomposition, eliminate_odd_edges, width, z_orientation, DecompositionTree};
use pmw_core::width2::{
    brute_force_mpmw, brute_force_pmw, check_shore_laws, ladder, ladder_embedding, pmw2_check, Width2Certificate,
};
use pmw_core::{BipartiteGraph, Digraph, Limits, Matching, Side, VertexSet};

type Certificates = Vec<(BipartiteGraph, DecompositionTree)>;

struct Outcome {
    violations: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { violations: Vec::new(), summary: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(what());
        }
    }
}

fn random_shore<R: Rng>(rng: &mut R, n: usize) -> VertexSet {
    loop {
        let s = VertexSet::from_iter(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        if !s.is_empty() && s.len() < n {
            return s;
        }
    }
}

/// Certificate of a successful width-two run, checked by `width`.
fn certified(g: &BipartiteGraph, out: &mut Outcome, certs: &mut Certificates, tag: &str) -> bool {
    match pmw2_check(g, Side::A) {
        Ok(Width2Certificate::Success { decomposition, .. }) => {
            let w = width(g, &decomposition).map(|r| r.width);
            out.check(w == Ok(2), || format!("{tag}: certificate of {g:?} has width {w:?}"));
            certs.push((g.clone(), decomposition));
            true
        }
        Ok(Width2Certificate::Refutation(_)) => false,
        Err(e) => {
            out.check(false, || format!("{tag}: {g:?}: {e}"));
            false
        }
    }
}

fn criterion1(certs: &mut Certificates) -> Outcome {
    let mut out = Outcome::new();
    let small = all_braces(4);
    let mut yes = 0;
    for g in &small {
        let ok = certified(g, &mut out, certs, "exhaustive");
        let brute = brute_force_pmw(g, 8).map(|r| r.width);
        out.check(brute.as_ref().is_ok_and(|&w| (w == 2) == ok), || {
            format!("{g:?}: recogniser says {ok}, oracle width {brute:?}")
        });
        yes += ok as usize;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut ryes, mut rno) = (0, 0);
    for i in 0..100 {
        let n = rng.gen_range(5..=6);
        let g = random_brace(&mut rng, n, i % 2 == 0);
        if certified(&g, &mut out, certs, "random") {
            ryes += 1;
        } else {
            rno += 1;
            out.check(ladder_embedding(&g).is_none(), || format!("{g:?} refuted but fits in a ladder"));
        }
    }
    out.summary = format!(
        "{} braces on <= 8 vertices ({yes} of width 2) agree with the oracle; 100 random braces on 10-12 vertices ({ryes} certified, {rno} refuted without ladder embedding)",
        small.len()
    );
    out
}

fn criterion2(certs: &mut Certificates) -> Outcome {
    let mut out = Outcome::new();
    for n in 2..=10 {
        let g = ladder(n);
        let ok = certified(&g, &mut out, certs, "ladder");
        out.check(ok, || format!("ladder({n}) refuted"));
    }
    out.check(bipartite_isomorphic(&ladder(3), &BipartiteGraph::complete(3, 3)), || "ladder(3) is not K33".into());
    out.summary = "ladder(2..=10) certified at width 2; ladder(3) isomorphic to K33".into();
    out
}

fn criterion3() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let n = rng.gen_range(2..=7);
        let g = { let p = rng.gen_range(0.1..0.6); random_matching_covered(&mut rng, n, p) };
        let x = random_shore(&mut rng, 2 * n);
        let p = matching_porosity(&g, &x).expect("matching covered");
        out.check(p % 2 == x.len() % 2, || format!("{g:?} shore {x:?}: porosity {p} has the wrong parity"));
        let outside: Vec<usize> = x.complement().iter().collect();
        if outside.len() >= 2 {
            let mut y = x.clone();
            y.insert(*outside.choose(&mut rng).expect("nonempty"));
            let q = matching_porosity(&g, &y).expect("matching covered");
            out.check(p.abs_diff(q) <= 1, || format!("{g:?}: moving one vertex changed porosity {p} -> {q}"));
        }
    }
    out.summary = "500 random shores: parity and one-vertex moves".into();
    out
}

fn criterion4() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let n = rng.gen_range(2..=7);
        let g = { let p = rng.gen_range(0.1..0.7); random_matching_covered(&mut rng, n, p) };
        let x = random_shore(&mut rng, 2 * n);
        let a = porosity_with(&g, &x, PorosityEngine::Assignment).map(|p| p.value);
        let e = porosity_with(&g, &x, PorosityEngine::Enumeration { cap: 14 }).map(|p| p.value);
        out.check(a == e, || format!("{g:?} shore {x:?}: assignment {a:?}, enumeration {e:?}"));
    }
    out.summary = "500 random instances, assignment and enumeration engines agree".into();
    out
}

fn criterion5() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    let mut by_width = [0usize; 5];
    while done < 200 {
        let n = rng.gen_range(2..=6);
        let g = { let p = rng.gen_range(0.1..0.5); random_matching_covered(&mut rng, n, p) };
        let d = random_decomposition(&mut rng, &g);
        let w = width(&g, &d).expect("valid").width;
        if !(2..=4).contains(&w) {
            continue;
        }
        done += 1;
        by_width[w] += 1;
        match eliminate_odd_edges(&g, &d) {
            Ok(e) => {
                let odd = classify_edges(e.tree()).map(|c| c.odd_edges().len());
                out.check(odd == Ok(0), || format!("{g:?}: {odd:?} odd edges remain"));
                let we = width(&g, &e).map(|r| r.width);
                out.check(we.as_ref().is_ok_and(|&x| x <= w + w % 2), || format!("{g:?}: width {w} became {we:?}"));
            }
            Err(err) => out.check(false, || format!("{g:?}: {err}")),
        }
    }
    out.summary = format!("200 decompositions (widths 2/3/4: {}/{}/{})", by_width[2], by_width[3], by_width[4]);
    out
}

fn splice_pool() -> Vec<BipartiteGraph> {
    let mut pool = vec![BipartiteGraph::cycle(2), BipartiteGraph::complete(3, 3)];
    pool.extend(all_braces(4).into_iter().filter(|g| g.vertex_count() == 8));
    pool
}

fn criterion6() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pool = splice_pool();
    let mut parts = 0;
    for i in 0..50u64 {
        let (g, used) = random_splice_chain(&mut rng, &pool, 16);
        parts += used.len();
        let run = |seed| {
            tight_cut_decomposition(&g, CutSelection::Seeded(seed), 16)
                .map(|t| t.braces().into_iter().cloned().collect::<Vec<_>>())
        };
        match (run(2 * i), run(2 * i + 1)) {
            (Ok(x), Ok(y)) => {
                out.check(same_multiset(&x, &y), || format!("{g:?}: brace lists differ between seeds"));
                out.check(same_multiset(&x, &used), || format!("{g:?}: braces differ from the spliced parts"));
            }
            (x, y) => out.check(false, || format!("{g:?}: {x:?} / {y:?}")),
        }
    }
    out.summary = format!("50 spliced graphs ({parts} braces in total), seeds agree and match the parts");
    out
}

fn criterion7() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pool = splice_pool();
    let mut done = 0;
    while done < 100 {
        let (g, used) = random_splice_chain(&mut rng, &pool, 14);
        if used.len() < 2 {
            continue;
        }
        done += 1;
        let m = random_perfect_matching(&mut rng, &g).expect("matching covered");
        let d = random_m_anchored(&mut rng, &g, &m);
        let shores = nontrivial_tight_shores(&g, 16).expect("within cap");
        let z = shores.choose(&mut rng).expect("spliced graphs have a tight cut").clone();
        let w_in = width(&g, &d).expect("anchored").width;
        match contract_decomposition(&g, &d, &z) {
            Ok(c) => {
                let (h, _) = contract(&g, &z).expect("tight");
                out.check(h == c.graph, || "contracted graph mismatch".into());
                let w = width(&c.graph, &c.decomposition).map(|r| r.width);
                out.check(w.as_ref().is_ok_and(|&x| x <= w_in), || format!("{g:?}: width {w_in} became {w:?}"));
            }
            Err(e) => out.check(false, || format!("{g:?}: {e}")),
        }
        match z_orientation(&g, &d, &z) {
            Ok(o) => {
                out.check(o.inconsistencies.is_empty(), || format!("{g:?}: inconsistent nodes {:?}", o.inconsistencies));
                let near_z = o.sink.is_some_and(|s| {
                    d.tree().neighbours(s).iter().any(|&t| d.leaf_vertex(t).is_some_and(|v| z.contains(v.0)))
                });
                out.check(near_z, || format!("{g:?}: sinks {:?} not a single node next to a leaf of Z", o.sinks));
            }
            Err(e) => out.check(false, || format!("{g:?}: {e}")),
        }
    }
    out.summary = "100 anchored decompositions contracted along random tight cuts".into();
    out
}

fn criterion8(certs: &Certificates) -> Outcome {
    let mut out = Outcome::new();
    let mut checked = 0;
    for (g, d) in certs {
        if g.vertex_count() < 6 {
            continue;
        }
        checked += 1;
        match check_shore_laws(g, d) {
            Ok(r) => out.check(r.holds(), || format!("{g:?}: {r:?}")),
            Err(e) => out.check(false, || format!("{g:?}: {e}")),
        }
    }
    out.summary = format!("{checked} width-2 certificates from criteria 1-2 (C4 has no spine and is skipped)");
    out
}

fn criterion9() -> Outcome {
    let mut out = Outcome::new();
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    // (a) both routes, plus the exhaustive cyclewidth.
    let mut positive = 0;
    for i in 0..50 {
        let n = rng.gen_range(2..=8);
        let d = if i % 2 == 0 {
            { let p = rng.gen_range(0.1..0.5); random_digraph(&mut rng, n, p) }
        } else {
            let g = random_mpmw2_graph(&mut rng, 16);
            let m = random_perfect_matching(&mut rng, &g).expect("matching covered");
            m_direction(&g, &m).expect("perfect").digraph
        };
        match cyclewidth2(&d, CyclewidthRoute::Both, &limits) {
            Ok(v) => {
                out.check(v.routes_agree(), || format!("{d:?}: routes disagree {v:?}"));
                let cw = brute_force_cyclewidth(&d, 8).expect("small");
                out.check(v.value() == (cw == 2), || format!("{d:?}: decision {} but cyclewidth {cw}", v.value()));
                positive += v.value() as usize;
            }
            Err(e) => out.check(false, || format!("{d:?}: {e}")),
        }
    }

    // (b) invariance over every perfect matching.
    for i in 0..50 {
        let g = if i % 2 == 0 {
            random_mpmw2_graph(&mut rng, 14)
        } else {
            let n = rng.gen_range(2..=7);
            random_matching_covered(&mut rng, n, 0.15)
        };
        let all = enumerate_perfect_matchings(&g, 14).expect("small");
        let verdicts: Vec<bool> = all.iter().map(|m| mpmw2_check(&g, m, 16).expect("small").holds).collect();
        out.check(verdicts.iter().all(|&v| v == verdicts[0]), || format!("{g:?}: verdict depends on the matching"));
    }

    // (c) fixed points.
    let c4 = BipartiteGraph::cycle(2);
    let k33 = BipartiteGraph::complete(3, 3);
    let k44 = BipartiteGraph::complete(4, 4);
    let id = |n: usize| Matching::new((0..n).map(|i| (i, i)).collect());
    out.check(digraph_isomorphic(&m_direction(&c4, &id(2)).unwrap().digraph, &Digraph::digon()), || "C4 -/-> digon".into());
    out.check(digraph_isomorphic(&m_direction(&k33, &id(3)).unwrap().digraph, &Digraph::complete(3)), || "K33 -/-> bi-K3".into());
    out.check(mpmw2_check(&c4, &id(2), 16).unwrap().holds, || "C4 not mpmw2".into());
    out.check(mpmw2_check(&k33, &id(3), 16).unwrap().holds, || "K33 not mpmw2".into());
    out.check(!mpmw2_check(&k44, &id(4), 16).unwrap().holds, || "K44 mpmw2".into());
    let bik4 = cyclewidth2(&Digraph::complete(4), CyclewidthRoute::Both, &limits).unwrap();
    out.check(!bik4.value() && bik4.routes_agree(), || "bi-K4 has cyclewidth 2".into());
    let (sg, _) = split_graph(&Digraph::complete(4));
    out.check(bipartite_isomorphic(&sg, &k44), || "bi-K4 does not split to K44".into());

    // (d) sandwich on the oracle stratum, and recognition against the oracle.
    let mut pairs = 0;
    for i in 0..30 {
        let n = rng.gen_range(2..=4);
        let g = if i % 3 == 0 { random_mpmw2_graph(&mut rng, 8) } else { random_matching_covered(&mut rng, n, 0.4) };
        let pmw = brute_force_pmw(&g, 8).expect("small").width;
        let all = enumerate_perfect_matchings(&g, 8).expect("small");
        for m in all.iter().take(6) {
            pairs += 1;
            let mp = brute_force_mpmw(&g, m, 8).expect("small").width;
            out.check(pmw <= mp && mp <= 2 * pmw, || format!("{g:?}: pmw {pmw}, Mpmw {mp}"));
            let holds = mpmw2_check(&g, m, 16).expect("small").holds;
            out.check(holds == (mp == 2), || format!("{g:?} {m:?}: recognised {holds}, oracle Mpmw {mp}"));
        }
    }
    out.summary = format!(
        "50 digraphs ({positive} of cyclewidth 2) with routes and exhaustive width agreeing; 50 graphs invariant over all matchings; fixed points; {pairs} sandwich pairs"
    );
    out
}

fn criterion10() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut strong = 0;
    let mut other = 0;
    let mut tries = 0;
    while strong + other < 100 && tries < 2000 {
        tries += 1;
        let d = if tries % 2 == 0 {
            let g = random_mpmw2_graph(&mut rng, 24);
            let m = random_perfect_matching(&mut rng, &g).expect("matching covered");
            m_direction(&g, &m).expect("perfect").digraph
        } else {
            let n = rng.gen_range(2..=10);
            let d = { let p = rng.gen_range(0.1..0.3); random_digraph(&mut rng, n, p) };
            match cyclewidth2(&d, CyclewidthRoute::Bipartite, &Limits::default()) {
                Ok(v) if v.value() => d,
                _ => continue,
            }
        };
        if d.vertex_count() > 12 {
            continue;
        }
        let sc = d.is_strongly_connected();
        if sc {
            strong += 1;
        } else {
            other += 1;
        }
        match directed_tree_decomposition_w2(&d, 24) {
            Ok(t) => {
                let r = validate_dtd(&d, &t);
                out.check(r.is_valid(), || format!("{d:?}: {r:?}"));
                out.check(r.width <= 2, || format!("{d:?}: width {}", r.width));
                if sc {
                    out.check(r.guard_sizes.iter().all(|&s| s == 1), || format!("{d:?}: guard sizes {:?}", r.guard_sizes));
                }
            }
            Err(e) => out.check(false, || format!("{d:?}: {e}")),
        }
    }
    out.summary = format!(
        "{} cyclewidth-2 digraphs on <= 12 vertices ({strong} strongly connected with all guards of size 1, {other} chained from strong components)",
        strong + other
    );
    out
}

fn main() {
    let mut certs = Certificates::new();
    let mut failed = 0;
    let mut report = |k: usize, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let status = if o.violations.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {k:2} {status}: {name}: {} [{secs:.1}s]", o.summary);
        for v in o.violations.iter().take(5) {
            println!("    violation: {v}");
        }
        if !o.violations.is_empty() {
            println!("    {} violations in total", o.violations.len());
            failed += 1;
        }
    };
    report(1, "width-2 recognition", &mut || criterion1(&mut certs));
    report(2, "ladders", &mut || criterion2(&mut certs));
    report(3, "porosity parity", &mut criterion3);
    report(4, "porosity engines", &mut criterion4);
    report(5, "odd-edge elimination", &mut criterion5);
    report(6, "tight cut uniqueness", &mut criterion6);
    report(7, "contraction bound", &mut criterion7);
    report(8, "shore laws", &mut || criterion8(&certs));
    report(9, "digraph equivalences", &mut criterion9);
    report(10, "directed tree decompositions", &mut criterion10);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
