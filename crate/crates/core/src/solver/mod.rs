//! Exact decision procedures for clique-width (`cwd`) and linear
//! clique-width (`lcwd`).
//!
//! Every "yes" carries a certificate accepted by
//! [`check_certificate`](crate::cwexpr::check_certificate). A "no" is an
//! exhaustive refutation; running out of budget gives [`Decision::Unknown`].
//! The `naive` procedures search the unrestricted state space and serve as
//! oracles on tiny graphs.

mod cwd;
mod lcwd;
pub mod naive;

use std::time::Instant;

use thiserror::Error;

use crate::budget::Budget;
use crate::cwexpr::CwExpr;
use crate::graph::{Graph, GraphError};
use crate::synth::eager_expression;

pub use cwd::{cwd_decide, CWD_LIMIT};
pub use lcwd::lcwd_decide;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {n} vertices, this procedure handles at most {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("width must be at least 1")]
    ZeroWidth,
    #[error("the empty graph has no expression")]
    EmptyGraph,
    #[error("internal error: produced certificate was rejected: {0}")]
    BadCertificate(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(CwExpr),
    No,
    Unknown,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    /// `Some(true)` for yes, `Some(false)` for no.
    pub fn answer(&self) -> Option<bool> {
        match self {
            Decision::Yes(_) => Some(true),
            Decision::No => Some(false),
            Decision::Unknown => None,
        }
    }

    pub fn certificate(&self) -> Option<&CwExpr> {
        match self {
            Decision::Yes(e) => Some(e),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SearchStats {
    pub nodes: u64,
    pub states: u64,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct Decided {
    pub decision: Decision,
    pub stats: SearchStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidthKind {
    Exact,
    /// Only a bracket `lower..=upper` was established.
    Bounds,
}

/// The tightest verified bracket on a width parameter.
#[derive(Clone, Debug)]
pub struct WidthResult {
    pub kind: WidthKind,
    pub lower: usize,
    pub upper: usize,
    /// Certificate of width `upper`.
    pub certificate: Option<CwExpr>,
    pub stats: SearchStats,
}

impl WidthResult {
    pub fn exact(&self) -> Option<usize> {
        (self.kind == WidthKind::Exact).then_some(self.upper)
    }
}

/// Width lower bound that needs no search: 0 for the empty graph, 1 without
/// edges, 2 otherwise.
pub fn trivial_lower_bound(g: &Graph) -> usize {
    match (g.n(), g.edge_count()) {
        (0, _) => 0,
        (_, 0) => 1,
        _ => 2,
    }
}

fn scan(
    g: &Graph,
    budget: Budget,
    decide: impl Fn(&Graph, usize, Budget) -> Result<Decided, SolverError>,
) -> Result<WidthResult, SolverError> {
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let mut lower = trivial_lower_bound(g);
    if g.n() == 0 {
        return Ok(WidthResult {
            kind: WidthKind::Exact,
            lower: 0,
            upper: 0,
            certificate: None,
            stats,
        });
    }
    let natural: Vec<usize> = g.ids().collect();
    let fallback = eager_expression(g, &natural).expect("identity ordering");
    let mut upper = fallback.width();
    let mut certificate = Some(fallback);
    while lower < upper {
        let d = decide(g, lower, budget)?;
        stats.nodes += d.stats.nodes;
        stats.states = stats.states.max(d.stats.states);
        match d.decision {
            Decision::Yes(e) => {
                upper = lower;
                certificate = Some(e);
            }
            Decision::No => lower += 1,
            Decision::Unknown => break,
        }
    }
    stats.seconds = start.elapsed().as_secs_f64();
    Ok(WidthResult {
        kind: if lower == upper { WidthKind::Exact } else { WidthKind::Bounds },
        lower,
        upper,
        certificate,
        stats,
    })
}

/// Linear clique-width by scanning widths upward from the trivial bound.
pub fn lcwd_exact(g: &Graph, budget: Budget) -> Result<WidthResult, SolverError> {
    scan(g, budget, lcwd_decide)
}

/// Clique-width by scanning widths upward from the trivial bound.
pub fn cwd_exact(g: &Graph, budget: Budget) -> Result<WidthResult, SolverError> {
    scan(g, budget, cwd_decide)
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_widths_of_small_graphs() {
        let p4 = Graph::path(4);
        assert_eq!(lcwd_exact(&p4, Budget::unlimited()).unwrap().exact(), Some(3));
        assert_eq!(cwd_exact(&p4, Budget::unlimited()).unwrap().exact(), Some(3));
        let k5 = Graph::complete(5);
        assert_eq!(cwd_exact(&k5, Budget::unlimited()).unwrap().exact(), Some(2));
        assert_eq!(lcwd_exact(&Graph::empty(3), Budget::unlimited()).unwrap().exact(), Some(1));
        assert_eq!(lcwd_exact(&Graph::empty(0), Budget::unlimited()).unwrap().exact(), Some(0));
    }

    #[test]
    fn bits_iterates_set_positions() {
        assert_eq!(bits(0b1011).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(full_mask(3), 7);
        assert_eq!(full_mask(64), u64::MAX);
    }
}
