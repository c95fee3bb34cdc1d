//! `pmw`: command line front end for pmw-core.
//!
//! Exit codes: 0 success or true, 1 false or refuted, 2 input error,
//! 3 size cap exceeded.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pmw_core::digraph::{m_direction, split_graph};
use pmw_core::io::{
    dot_bipartite, dot_decomposition, dot_digraph, dot_dtd, emit_bipartite, emit_decomposition, emit_digraph,
    emit_dtd, emit_matching, emit_ordering, envelope, origin_labels, parse_bipartite, parse_digraph,
    parse_matching, DecompositionRecord, GraphRecord, TightCutTreeRecord,
};
use pmw_core::matching::{is_k_extendable, is_matching_covered, perfect_matching};
use pmw_core::mwidth::{cyclewidth2, directed_tree_decomposition_w2, mpmw2_check, mpmw2_decompose, validate_dtd, CyclewidthRoute};
use pmw_core::porosity::{porosity_with, PorosityEngine};
use pmw_core::tight::{is_brace, tight_cut_decomposition, CutSelection, NodeKind};
use pmw_core::width2::{brute_force_pmw, ladder, mew, pmw2_check, Refutation, Width2Certificate};
use pmw_core::{BipartiteGraph, CapExceeded, Digraph, Limits, Matching, Side, Vertex, VertexSet};

#[derive(Parser)]
#[command(name = "pmw", version, about = "Perfect matching width tools for bipartite graphs and digraphs")]
struct Cli {
    /// Size cap applied to every exponential routine (defaults vary per routine).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for randomised choices (tight cut selection).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    A,
    B,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::A => Side::A,
            SideArg::B => Side::B,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Bipartite,
    Minors,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Matching porosity of a cut, with a maximising perfect matching.
    Porosity {
        graph: PathBuf,
        /// Comma separated vertex labels, e.g. a1,b1,a2.
        #[arg(long)]
        shore: String,
    },
    /// Matching covered with no nontrivial tight cut.
    IsBrace { graph: PathBuf },
    /// Connected and every edge lies in a perfect matching.
    IsCovered { graph: PathBuf },
    /// Every matching of size k extends to a perfect matching.
    Extendable {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Tight cut decomposition and its braces.
    Tightcuts { graph: PathBuf },
    /// Width-two recognition for braces.
    Pmw2 {
        graph: PathBuf,
        /// Also write the decomposition as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "a")]
        side: SideArg,
    },
    /// Exact matching elimination width of one class.
    Mew {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "a")]
        side: SideArg,
    },
    /// Exact perfect matching width by exhaustive search.
    BrutePmw { graph: PathBuf },
    /// Bipartite ladder on 2n vertices.
    Ladder {
        #[arg(short)]
        n: usize,
    },
    /// M-perfect matching width two, with a decomposition when it holds.
    Mpmw2 {
        graph: PathBuf,
        #[arg(long)]
        matching: Option<PathBuf>,
    },
    /// Digraph of a graph with respect to a perfect matching.
    Mdirect {
        graph: PathBuf,
        #[arg(long)]
        matching: Option<PathBuf>,
    },
    /// Bipartite split graph of a digraph, with its matching.
    Split { digraph: PathBuf },
    /// Cyclewidth exactly two, through the split graph, the minor search or both.
    Cyclewidth2 {
        digraph: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        via: Via,
    },
    /// Directed tree decomposition of width at most two.
    Dtd2 { digraph: PathBuf },
}

enum Failure {
    Input(String),
    Cap(String),
}

impl Failure {
    fn from_cap(c: Option<&CapExceeded>, msg: String) -> Failure {
        match c {
            Some(c) => Failure::Cap(c.to_string()),
            None => Failure::Input(msg),
        }
    }
}

macro_rules! lib_err {
    ($e:expr) => {{
        let e = $e;
        Failure::from_cap(e.cap_exceeded(), e.to_string())
    }};
}

impl From<pmw_core::io::IoError> for Failure {
    fn from(e: pmw_core::io::IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<CapExceeded> for Failure {
    fn from(e: CapExceeded) -> Self {
        Failure::Cap(e.to_string())
    }
}

/// Text to print and whether the answer was positive.
struct Report {
    out: String,
    truth: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn graph(path: &Path) -> Result<(BipartiteGraph, Option<Matching>), Failure> {
    Ok(parse_bipartite(&read(path)?)?)
}

fn digraph(path: &Path) -> Result<Digraph, Failure> {
    Ok(parse_digraph(&read(path)?)?)
}

fn parse_shore(g: &BipartiteGraph, s: &str) -> Result<VertexSet, Failure> {
    let mut set = VertexSet::empty(g.vertex_count());
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v = g
            .vertices()
            .find(|&v| g.label(v) == tok)
            .ok_or_else(|| Failure::Input(format!("unknown vertex label '{tok}'")))?;
        set.insert(v.0);
    }
    Ok(set)
}

fn labels(g: &BipartiteGraph, s: &VertexSet) -> Vec<String> {
    s.iter().map(|v| g.label(Vertex(v))).collect()
}

fn structured(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn bool_report(format: Format, kind: &str, truth: bool, detail: Value) -> Report {
    let out = match format {
        Format::Structured => structured(envelope(kind, json!({ "value": truth, "detail": detail }))),
        _ if detail.is_null() => format!("{truth}\n"),
        _ => format!("{truth}\n{detail}\n"),
    };
    Report { out, truth }
}

fn matching_for(g: &BipartiteGraph, inline: Option<Matching>, file: Option<&Path>) -> Result<Matching, Failure> {
    let m = match (file, inline) {
        (Some(p), _) => parse_matching(&read(p)?, g)?,
        (None, Some(m)) => m,
        (None, None) => perfect_matching(g).ok_or_else(|| Failure::Input("graph has no perfect matching".into()))?,
    };
    if !m.is_perfect(g) {
        return Err(Failure::Input("matching is not perfect".into()));
    }
    Ok(m)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let limits = cli.cap.map_or_else(Limits::default, Limits::uniform);
    let f = cli.format;
    Ok(match &cli.command {
        Command::Porosity { graph: path, shore } => {
            let (g, _) = graph(path)?;
            let x = parse_shore(&g, shore)?;
            let p = porosity_with(&g, &x, PorosityEngine::Assignment).map_err(|e| lib_err!(e))?;
            let out = match f {
                Format::Structured => structured(envelope(
                    "porosity",
                    json!({ "shore": labels(&g, &x), "value": p.value, "matching": p.matching.pairs() }),
                )),
                Format::Dot => dot_bipartite(&g, Some(&p.matching)),
                Format::Text => format!("{}\n{}", p.value, emit_matching(&p.matching)),
            };
            Report { out, truth: true }
        }
        Command::IsBrace { graph: path } => {
            let (g, _) = graph(path)?;
            bool_report(f, "is_brace", is_brace(&g), Value::Null)
        }
        Command::IsCovered { graph: path } => {
            let (g, _) = graph(path)?;
            let c = is_matching_covered(&g);
            let detail = c.witness.as_ref().map_or(Value::Null, |w| json!(format!("{w:?}")));
            bool_report(f, "is_covered", c.covered, detail)
        }
        Command::Extendable { graph: path, k } => {
            let (g, _) = graph(path)?;
            let r = is_k_extendable(&g, *k, limits.surplus_class).map_err(|e| lib_err!(e))?;
            let detail = r.witness.as_ref().map_or(Value::Null, |w| json!(format!("{w:?}")));
            bool_report(f, "extendable", r.extendable, detail)
        }
        Command::Tightcuts { graph: path } => {
            let (g, _) = graph(path)?;
            let sel = cli.seed.map_or(CutSelection::Lowest, CutSelection::Seeded);
            let t = tight_cut_decomposition(&g, sel, limits.tight_cut_vertices).map_err(|e| lib_err!(e))?;
            let out = match f {
                Format::Structured => structured(envelope("tight_cut_tree", TightCutTreeRecord::of(&t))),
                Format::Dot => {
                    let mut s = String::from("digraph TC {\n  node [shape=box];\n");
                    for (i, n) in t.nodes.iter().enumerate() {
                        let label = match &n.kind {
                            NodeKind::Split { cut, .. } => format!("cut {}", cut + 1),
                            NodeKind::Brace { iso } => format!("{iso:?}: {}", origin_labels(&t, i).join(" ")),
                        };
                        s += &format!("  n{i} [label=\"{label}\"];\n");
                        if let NodeKind::Split { children, .. } = n.kind {
                            s += &format!("  n{i} -> n{};\n  n{i} -> n{};\n", children[0], children[1]);
                        }
                    }
                    s + "}\n"
                }
                Format::Text => {
                    let mut s = format!("cuts {}\n", t.cuts.len());
                    for (i, c) in t.cuts.iter().enumerate() {
                        s += &format!("cut {}: {}\n", i + 1, labels(&g, &c.host_shore).join(" "));
                    }
                    let leaves = t.leaves();
                    s += &format!("braces {}\n", leaves.len());
                    for (iso, leaf) in t.brace_isos().into_iter().zip(leaves) {
                        s += &format!("brace {iso:?}: {}\n", origin_labels(&t, leaf).join(" "));
                    }
                    s
                }
            };
            Report { out, truth: true }
        }
        Command::Pmw2 { graph: path, dot, side } => {
            let (g, _) = graph(path)?;
            let cert = pmw2_check(&g, (*side).into()).map_err(|e| lib_err!(e))?;
            match cert {
                Width2Certificate::Success { ordering, ordering_width, decomposition, .. } => {
                    if let Some(p) = dot {
                        fs::write(p, dot_decomposition(&g, &decomposition))
                            .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
                    }
                    let out = match f {
                        Format::Structured => structured(envelope(
                            "width2_certificate",
                            json!({
                                "success": true,
                                "ordering": ordering,
                                "ordering_width": ordering_width,
                                "decomposition": DecompositionRecord::of(&g, &decomposition),
                            }),
                        )),
                        Format::Dot => dot_decomposition(&g, &decomposition),
                        Format::Text => {
                            format!("width 2\n{}{}", emit_ordering(&ordering), emit_decomposition(&g, &decomposition))
                        }
                    };
                    Report { out, truth: true }
                }
                Width2Certificate::Refutation(r) => {
                    let reason = match &r {
                        Refutation::NoDegree3Start => "no vertex of the class has degree three".to_string(),
                        Refutation::Stuck { attempts } => format!("all {} claw starts got stuck", attempts.len()),
                    };
                    let out = match f {
                        Format::Structured => structured(envelope(
                            "width2_certificate",
                            json!({ "success": false, "refutation": format!("{r:?}") }),
                        )),
                        _ => format!("refuted: {reason}\n"),
                    };
                    Report { out, truth: false }
                }
            }
        }
        Command::Mew { graph: path, side } => {
            let (g, _) = graph(path)?;
            let (w, l) = mew(&g, (*side).into(), limits.mew_class).map_err(|e| lib_err!(e))?;
            let out = match f {
                Format::Structured => structured(envelope("mew", json!({ "value": w, "ordering": l }))),
                _ => format!("{w}\n{}", emit_ordering(&l)),
            };
            Report { out, truth: true }
        }
        Command::BrutePmw { graph: path } => {
            let (g, _) = graph(path)?;
            let r = brute_force_pmw(&g, limits.brute_pmw_vertices).map_err(|e| lib_err!(e))?;
            let out = match f {
                Format::Structured => structured(envelope(
                    "brute_pmw",
                    json!({ "value": r.width, "trees": r.trees, "decomposition": DecompositionRecord::of(&g, &r.decomposition) }),
                )),
                Format::Dot => dot_decomposition(&g, &r.decomposition),
                Format::Text => format!("{}\n{}", r.width, emit_decomposition(&g, &r.decomposition)),
            };
            Report { out, truth: true }
        }
        Command::Ladder { n } => {
            if *n < 2 {
                return Err(Failure::Input("ladders need n >= 2".into()));
            }
            let g = ladder(*n);
            let out = match f {
                Format::Structured => structured(envelope("bgraph", GraphRecord::of(&g))),
                Format::Dot => dot_bipartite(&g, None),
                Format::Text => emit_bipartite(&g, None),
            };
            Report { out, truth: true }
        }
        Command::Mpmw2 { graph: path, matching } => {
            let (g, inline) = graph(path)?;
            let m = matching_for(&g, inline, matching.as_deref())?;
            let v = mpmw2_check(&g, &m, limits.tight_cut_vertices).map_err(|e| lib_err!(e))?;
            let d = if v.holds {
                Some(mpmw2_decompose(&g, &m, limits.tight_cut_vertices).map_err(|e| lib_err!(e))?)
            } else {
                None
            };
            let out = match (f, &d) {
                (Format::Structured, _) => structured(envelope(
                    "mpmw2",
                    json!({
                        "value": v.holds,
                        "braces": v.braces,
                        "decomposition": d.as_ref().map(|d| DecompositionRecord::of(&g, d)),
                    }),
                )),
                (Format::Dot, Some(d)) => dot_decomposition(&g, d),
                (_, Some(d)) => format!("true\n{}", emit_decomposition(&g, d)),
                (_, None) => format!("false\nbraces {:?}\n", v.braces),
            };
            Report { out, truth: v.holds }
        }
        Command::Mdirect { graph: path, matching } => {
            let (g, inline) = graph(path)?;
            let m = matching_for(&g, inline, matching.as_deref())?;
            let d = m_direction(&g, &m).map_err(|e| lib_err!(e))?;
            let out = match f {
                Format::Structured => structured(envelope(
                    "digraph",
                    json!({ "n": d.digraph.vertex_count(), "arcs": d.digraph.arcs(), "edge_of_vertex": d.edge_of_vertex }),
                )),
                Format::Dot => dot_digraph(&d.digraph),
                Format::Text => emit_digraph(&d.digraph),
            };
            Report { out, truth: true }
        }
        Command::Split { digraph: path } => {
            let d = digraph(path)?;
            let (g, m) = split_graph(&d);
            let out = match f {
                Format::Structured => {
                    structured(envelope("bgraph", json!({ "graph": GraphRecord::of(&g), "matching": m.pairs() })))
                }
                Format::Dot => dot_bipartite(&g, Some(&m)),
                Format::Text => emit_bipartite(&g, Some(&m)),
            };
            Report { out, truth: true }
        }
        Command::Cyclewidth2 { digraph: path, via } => {
            let d = digraph(path)?;
            let route = match via {
                Via::Bipartite => CyclewidthRoute::Bipartite,
                Via::Minors => CyclewidthRoute::Minors,
                Via::Both => CyclewidthRoute::Both,
            };
            let v = cyclewidth2(&d, route, &limits).map_err(|e| lib_err!(e))?;
            if !v.routes_agree() {
                return Err(Failure::Input(format!(
                    "routes disagree: bipartite {:?}, minors {:?}",
                    v.bipartite, v.minors
                )));
            }
            let out = match f {
                Format::Structured => structured(envelope(
                    "cyclewidth2",
                    json!({
                        "value": v.value(),
                        "acyclic": v.acyclic,
                        "bipartite": v.bipartite,
                        "minors": v.minors,
                        "witness": v.witness.as_ref().map(|w| json!({
                            "n": w.minor.vertex_count(),
                            "arcs": w.minor.arcs(),
                            "branch_sets": w.branch_sets,
                        })),
                    }),
                )),
                Format::Dot => match &v.witness {
                    Some(w) => dot_digraph(&w.minor),
                    None => dot_digraph(&d),
                },
                Format::Text => {
                    let mut s = format!("{}\n", v.value());
                    if v.acyclic {
                        s += "acyclic\n";
                    }
                    if let Some(w) = &v.witness {
                        s += "c forbidden butterfly minor\n";
                        for (i, b) in w.branch_sets.iter().enumerate() {
                            let set: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
                            s += &format!("c vertex {} <- {}\n", i + 1, set.join(" "));
                        }
                        s += &emit_digraph(&w.minor);
                    }
                    s
                }
            };
            Report { out, truth: v.value() }
        }
        Command::Dtd2 { digraph: path } => {
            let d = digraph(path)?;
            match directed_tree_decomposition_w2(&d, limits.tight_cut_vertices) {
                Ok(t) => {
                    let r = validate_dtd(&d, &t);
                    let out = match f {
                        Format::Structured => structured(envelope("dtd", json!({ "decomposition": t, "report": r }))),
                        Format::Dot => dot_dtd(&t),
                        Format::Text => format!("c width {}\n{}", r.width, emit_dtd(&t)),
                    };
                    Report { out, truth: true }
                }
                Err(pmw_core::mwidth::MWidthError::NotWidth2(reason)) => {
                    Report { out: format!("false\n{reason}\n"), truth: false }
                }
                Err(e) => return Err(lib_err!(e)),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.out);
            ExitCode::from(if r.truth { 0 } else { 1 })
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("cap exceeded: {m}");
            ExitCode::from(3)
        }
    }
}
