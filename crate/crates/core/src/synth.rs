//! Linear expressions from vertex orderings.
//!
//! The eager construction keeps placed vertices grouped by their future
//! neighbourhood (neighbours not yet placed). Each new vertex joins an
//! existing group's label when that is possible without creating a wrong
//! edge, otherwise it takes the smallest free label; its edges are added
//! at once, and groups whose future neighbourhoods coincide are merged.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::budget::Budget;
use crate::cwexpr::{check_certificate, CwExpr, LinearBuilder};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error("ordering is not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("width must be at least 1")]
    ZeroWidth,
}

fn check_permutation(g: &Graph, order: &[usize]) -> Result<(), SynthError> {
    let mut seen = vec![false; g.n()];
    if order.len() != g.n() {
        return Err(SynthError::NotAPermutation(g.n()));
    }
    for &v in order {
        if v == 0 || v > g.n() || std::mem::replace(&mut seen[v - 1], true) {
            return Err(SynthError::NotAPermutation(g.n()));
        }
    }
    Ok(())
}

struct Group {
    label: u32,
    members: Vec<usize>,
    future: BTreeSet<usize>,
}

/// Eager linear expression for `g` along `order` (1-based ids). The result
/// always evaluates to exactly `g`, with vertex names taken from `g`.
pub fn eager_expression(g: &Graph, order: &[usize]) -> Result<CwExpr, SynthError> {
    check_permutation(g, order)?;
    let mut builder = LinearBuilder::new();
    let mut placed = vec![false; g.n() + 1];
    let mut groups: Vec<Group> = Vec::new();
    for &x in order {
        placed[x] = true;
        let future_x: BTreeSet<usize> = g.neighbors(x).filter(|&u| !placed[u]).collect();
        let adjacent: Vec<usize> = (0..groups.len())
            .filter(|&i| g.has_edge(x, groups[i].members[0]))
            .collect();
        let host = (0..groups.len())
            .filter(|&i| !adjacent.contains(&i) && groups[i].future.iter().all(|&u| u != x))
            .filter(|&i| groups[i].future == future_x)
            .filter(|&i| {
                adjacent.iter().all(|&d| {
                    groups[i]
                        .members
                        .iter()
                        .all(|&a| groups[d].members.iter().all(|&b| g.has_edge(a, b)))
                })
            })
            .min_by_key(|&i| groups[i].label);
        let label = match host {
            Some(i) => groups[i].label,
            None => (1..).find(|l| groups.iter().all(|gr| gr.label != *l)).expect("unbounded"),
        };
        builder.add_vertex(label, g.display_name(x));
        let mut targets: Vec<u32> = adjacent.iter().map(|&d| groups[d].label).collect();
        targets.sort_unstable();
        for t in targets {
            builder.add_edges(label, t);
        }
        match host {
            Some(i) => groups[i].members.push(x),
            None => groups.push(Group {
                label,
                members: vec![x],
                future: future_x,
            }),
        }
        for gr in &mut groups {
            gr.future.remove(&x);
        }
        groups.sort_by_key(|gr| gr.label);
        let mut merged: Vec<Group> = Vec::with_capacity(groups.len());
        for gr in groups.drain(..) {
            match merged.iter_mut().find(|m| m.future == gr.future) {
                Some(m) => {
                    builder.relabel(gr.label, m.label);
                    m.members.extend(gr.members);
                }
                None => merged.push(gr),
            }
        }
        groups = merged;
    }
    Ok(builder.finish().unwrap_or_else(|| CwExpr::make(1, "empty")))
}

/// Result of an ordering search.
#[derive(Clone, Debug)]
pub enum SynthOutcome {
    /// A checked certificate and the ordering it came from.
    Found { expr: CwExpr, order: Vec<usize> },
    /// Nothing found. `exhausted` means every ordering was covered under the
    /// eager construction; it is not a lower bound on linear clique-width.
    NotFound { exhausted: bool },
}

impl SynthOutcome {
    pub fn expr(&self) -> Option<&CwExpr> {
        match self {
            SynthOutcome::Found { expr, .. } => Some(expr),
            SynthOutcome::NotFound { .. } => None,
        }
    }
}

/// Tunables for [`search_certificate`].
#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Widest beam tried before the exhaustive search. Beams start at 256
    /// and grow eightfold up to this width; 0 skips them.
    pub beam_width: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { beam_width: 16384 }
    }
}

/// Mask-level view of the eager construction for graphs with at most 64 vertices.
struct Prefixes {
    adj: Vec<u64>,
    full: u64,
}

impl Prefixes {
    fn new(g: &Graph) -> Result<Self, SynthError> {
        let adj = g.masks()?;
        let n = adj.len();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Prefixes { adj, full })
    }

    /// Placed vertices grouped by future neighbourhood: `(future, members)`.
    fn groups(&self, placed: u64) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        let mut rest = placed;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let fut = self.adj[v] & !placed & self.full;
            match out.iter_mut().find(|(f, _)| *f == fut) {
                Some((_, m)) => *m |= 1 << v,
                None => out.push((fut, 1 << v)),
            }
        }
        out
    }

    /// Labels in use while `x` is added after `placed`.
    fn step_width(&self, placed: u64, x: usize) -> usize {
        let groups = self.groups(placed);
        let nx = self.adj[x];
        let future_x = nx & !placed & !(1u64 << x) & self.full;
        let back = nx & placed;
        let can_share = groups.iter().any(|&(fut, members)| {
            fut == future_x && {
                let mut common = self.full;
                let mut m = members;
                while m != 0 {
                    let a = m.trailing_zeros() as usize;
                    m &= m - 1;
                    common &= self.adj[a];
                }
                back & !common == 0
            }
        });
        groups.len() + usize::from(!can_share)
    }
}

/// Search vertex orderings for an eager expression of width at most `w`.
///
/// Beams over prefixes are tried first; they are cheap and usually succeed
/// on path powers. Then depth-first over placed sets, remembering placed sets
/// that lead nowhere (the label grouping is a function of the placed set).
/// Only the depth-first pass can report exhaustion.
pub fn search_certificate(g: &Graph, w: usize, budget: Budget) -> Result<SynthOutcome, SynthError> {
    search_certificate_with(g, w, budget, SearchConfig::default())
}

pub fn search_certificate_with(
    g: &Graph,
    w: usize,
    budget: Budget,
    config: SearchConfig,
) -> Result<SynthOutcome, SynthError> {
    if w == 0 {
        return Err(SynthError::ZeroWidth);
    }
    let pre = Prefixes::new(g)?;
    let mut bw = 256.min(config.beam_width);
    while bw > 0 && !budget.expired() {
        if let Some(order) = beam(&pre, w, bw) {
            return finish(g, w, order);
        }
        if bw >= config.beam_width {
            break;
        }
        bw = (bw * 8).min(config.beam_width);
    }
    let mut dfs = Dfs {
        pre: &pre,
        w,
        dead: HashSet::new(),
        nodes: 0,
        budget,
        out_of_budget: false,
        path: Vec::new(),
    };
    if dfs.run(0) {
        finish(g, w, dfs.path.iter().map(|&v| v + 1).collect())
    } else {
        Ok(SynthOutcome::NotFound {
            exhausted: !dfs.out_of_budget,
        })
    }
}

fn finish(g: &Graph, w: usize, order: Vec<usize>) -> Result<SynthOutcome, SynthError> {
    let expr = eager_expression(g, &order)?;
    let check = check_certificate(&expr, g, w, true);
    assert!(
        check.accepted,
        "eager construction disagrees with its own step widths: {:?}",
        check.reason
    );
    Ok(SynthOutcome::Found { expr, order })
}

struct Dfs<'a> {
    pre: &'a Prefixes,
    w: usize,
    dead: HashSet<u64>,
    nodes: u64,
    budget: Budget,
    out_of_budget: bool,
    path: Vec<usize>,
}

impl Dfs<'_> {
    fn run(&mut self, placed: u64) -> bool {
        if placed == self.pre.full {
            return true;
        }
        if self.dead.contains(&placed) {
            return false;
        }
        self.nodes += 1;
        if self.budget.exceeded(self.nodes) {
            self.out_of_budget = true;
            return false;
        }
        let mut moves: Vec<(usize, usize, usize)> = Vec::new();
        let mut rest = self.pre.full & !placed;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.pre.step_width(placed, x) <= self.w {
                let after = self.pre.groups(placed | 1 << x).len();
                moves.push((after, x, x));
            }
        }
        moves.sort_unstable();
        for (_, _, x) in moves {
            self.path.push(x);
            if self.run(placed | 1 << x) {
                return true;
            }
            self.path.pop();
            if self.out_of_budget {
                return false;
            }
        }
        self.dead.insert(placed);
        false
    }
}

/// Beam over prefixes; priority is fewest live groups, ties broken by the
/// placed set itself.
fn beam(pre: &Prefixes, w: usize, width: usize) -> Option<Vec<usize>> {
    let mut layer: Vec<(u64, Vec<usize>)> = vec![(0, Vec::new())];
    let n = pre.adj.len();
    for _ in 0..n {
        let mut next: Vec<(usize, u64, Vec<usize>)> = Vec::new();
        let mut seen = HashSet::new();
        for (placed, path) in &layer {
            let mut rest = pre.full & !placed;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let to = placed | 1 << x;
                if seen.contains(&to) || pre.step_width(*placed, x) > w {
                    continue;
                }
                seen.insert(to);
                let mut p = path.clone();
                p.push(x);
                next.push((pre.groups(to).len(), to, p));
            }
        }
        if next.is_empty() {
            return None;
        }
        next.sort_by_key(|a| (a.0, a.1));
        next.truncate(width);
        layer = next.into_iter().map(|(_, s, p)| (s, p)).collect();
    }
    layer
        .into_iter()
        .find(|(s, _)| *s == pre.full)
        .map(|(_, p)| p.into_iter().map(|v| v + 1).collect())
}
