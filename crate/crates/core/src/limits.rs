//! Size caps for the exponential routines.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what}: size {actual} exceeds cap {limit}")]
pub struct CapExceeded {
    pub what: &'static str,
    pub limit: usize,
    pub actual: usize,
}

impl CapExceeded {
    pub fn check(what: &'static str, limit: usize, actual: usize) -> Result<(), CapExceeded> {
        if actual > limit {
            Err(CapExceeded { what, limit, actual })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Vertices of a graph whose perfect matchings may be enumerated.
    pub enumeration_vertices: usize,
    /// Vertices of a graph searched for nontrivial tight cuts.
    pub tight_cut_vertices: usize,
    /// Colour class size for the surplus extendability check.
    pub surplus_class: usize,
    /// Colour class size for exact matching elimination width.
    pub mew_class: usize,
    /// Vertices for the exhaustive perfect matching width oracle.
    pub brute_pmw_vertices: usize,
    /// Vertices for the butterfly minor search.
    pub minor_vertices: usize,
    /// Vertices for the cycle-family porosity oracle.
    pub cyclic_porosity_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_vertices: 28,
            tight_cut_vertices: 24,
            surplus_class: 20,
            mew_class: 10,
            brute_pmw_vertices: 8,
            minor_vertices: 10,
            cyclic_porosity_vertices: 8,
        }
    }
}

impl Limits {
    /// Every cap set to `n`.
    pub fn uniform(n: usize) -> Self {
        Limits {
            enumeration_vertices: n,
            tight_cut_vertices: n,
            surplus_class: n,
            mew_class: n,
            brute_pmw_vertices: n,
            minor_vertices: n,
            cyclic_porosity_vertices: n,
        }
    }
}
