//! Matching porosity of cuts, colour balance and conformality.

use thiserror::Error;

use crate::graph::{BipartiteGraph, Matching, Side};
use crate::limits::CapExceeded;
use crate::matching::{for_each_perfect_matching, has_perfect_matching_avoiding, perfect_matching};
use crate::vset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PorosityError {
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("shore and its complement must both be nonempty")]
    DegenerateShore,
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

impl PorosityError {
    /// The size cap behind this error, if any.
    pub fn cap_exceeded(&self) -> Option<&CapExceeded> {
        match self {
            PorosityError::Cap(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PorosityEngine {
    /// Maximum-weight perfect matching with weight one on cut edges.
    Assignment,
    /// Exhaustive search over all perfect matchings.
    Enumeration { cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Porosity {
    pub value: usize,
    /// A perfect matching attaining `value`.
    pub matching: Matching,
}

/// Maximum number of cut edges of `x` used by one perfect matching.
pub fn matching_porosity(g: &BipartiteGraph, x: &VertexSet) -> Result<usize, PorosityError> {
    porosity_with(g, x, PorosityEngine::Assignment).map(|p| p.value)
}

pub fn porosity_with(g: &BipartiteGraph, x: &VertexSet, engine: PorosityEngine) -> Result<Porosity, PorosityError> {
    if x.is_empty() || x.len() == g.vertex_count() {
        return Err(PorosityError::DegenerateShore);
    }
    match engine {
        PorosityEngine::Assignment => assignment_porosity(g, x),
        PorosityEngine::Enumeration { cap } => enumeration_porosity(g, x, cap),
    }
}

fn assignment_porosity(g: &BipartiteGraph, x: &VertexSet) -> Result<Porosity, PorosityError> {
    if perfect_matching(g).is_none() {
        return Err(PorosityError::NoPerfectMatching);
    }
    let n = g.a_count();
    let forbidden = 2 * n as i64 + 2;
    let mut cost = vec![vec![forbidden; n]; n];
    for &(a, b) in g.edges() {
        let crossing = x.contains(g.a(a).0) != x.contains(g.b(b).0);
        cost[a][b] = if crossing { -1 } else { 0 };
    }
    let assignment = min_cost_assignment(&cost);
    let matching = Matching::new(assignment.iter().enumerate().map(|(a, &b)| (a, b)).collect());
    debug_assert!(matching.is_perfect(g));
    Ok(Porosity { value: matching.crossing(g, x), matching })
}

fn enumeration_porosity(g: &BipartiteGraph, x: &VertexSet, cap: usize) -> Result<Porosity, PorosityError> {
    let mut best: Option<(usize, Vec<usize>)> = None;
    for_each_perfect_matching(g, cap, |mates| {
        let c = mates
            .iter()
            .enumerate()
            .filter(|&(a, &b)| x.contains(g.a(a).0) != x.contains(g.b(b).0))
            .count();
        if best.as_ref().is_none_or(|(v, _)| c > *v) {
            best = Some((c, mates.to_vec()));
        }
    })?;
    let (value, mates) = best.ok_or(PorosityError::NoPerfectMatching)?;
    let matching = Matching::new(mates.into_iter().enumerate().collect());
    Ok(Porosity { value, matching })
}

/// Minimum-cost perfect assignment of rows to columns of a square matrix
/// (Hungarian method with potentials). Returns the column of every row.
pub fn min_cost_assignment(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    const INF: i64 = i64::MAX / 4;
    // 1-based arrays; column 0 is the virtual start.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            row_to_col[p[j] - 1] = j - 1;
        }
    }
    row_to_col
}

/// `||X ∩ A| - |X ∩ B||`.
pub fn balance(g: &BipartiteGraph, x: &VertexSet) -> usize {
    let in_a = x.intersection(&g.class(Side::A)).len();
    let in_b = x.len() - in_a;
    in_a.abs_diff(in_b)
}

/// Without a matching: `g - s` has a perfect matching. With a perfect
/// matching `m`: no edge of `m` crosses the cut of `s`.
pub fn is_conformal(g: &BipartiteGraph, s: &VertexSet, m: Option<&Matching>) -> bool {
    match m {
        None => has_perfect_matching_avoiding(g, s),
        Some(m) => m.crossing(g, s) == 0,
    }
}

/// The edges of `m` with both endpoints in `s`.
pub fn restrict_matching(g: &BipartiteGraph, m: &Matching, s: &VertexSet) -> Matching {
    Matching::new(
        m.pairs()
            .iter()
            .copied()
            .filter(|&(a, b)| s.contains(g.a(a).0) && s.contains(g.b(b).0))
            .collect(),
    )
}
