//! Linear clique-width decision.
//!
//! A prefix of a linear expression is summarised by the set `P` of placed
//! vertices. All edges among placed vertices are assumed to be present, and
//! placed vertices sharing a future neighbourhood (neighbours outside `P`)
//! are assumed to share a label: merging such groups never costs a label and
//! never blocks a later step. The label partition is therefore a function
//! of `P`, and the search runs over subsets with a memo of dead ones.
//!
//! Adding `x` to `P` with `c` groups is possible when either
//! * `c + 1 <= w` (fresh label), or
//! * `c <= w` and some group `A` can absorb `x`: `x` has no neighbour in
//!   `A`, `A`'s future neighbourhood equals that of `x`, and every group `D`
//!   of neighbours of `x` is completely joined to `A`.

use std::collections::HashSet;
use std::time::Instant;

use super::{bits, full_mask, Decided, Decision, SearchStats, SolverError};
use crate::budget::Budget;
use crate::cwexpr::{check_certificate, CwExpr, LinearBuilder};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Placement {
    Fresh,
    /// Index into the group list.
    Join(usize),
}

struct Frontier<'a> {
    adj: &'a [u64],
    full: u64,
    w: usize,
}

impl Frontier<'_> {
    fn future(&self, v: usize, placed: u64) -> u64 {
        self.adj[v] & !placed & self.full
    }

    /// Groups of `placed` by future neighbourhood, ordered by lowest member.
    fn groups(&self, placed: u64) -> Vec<u64> {
        let mut futures: Vec<u64> = Vec::new();
        let mut groups: Vec<u64> = Vec::new();
        for v in bits(placed) {
            let f = self.future(v, placed);
            match futures.iter().position(|&g| g == f) {
                Some(i) => groups[i] |= 1 << v,
                None => {
                    futures.push(f);
                    groups.push(1 << v);
                }
            }
        }
        groups
    }

    fn common_neighbours(&self, group: u64) -> u64 {
        bits(group).fold(self.full, |acc, a| acc & self.adj[a])
    }

    fn placement(&self, placed: u64, groups: &[u64], x: usize) -> Option<Placement> {
        let c = groups.len();
        if c > self.w {
            return None;
        }
        let nx = self.adj[x];
        let future_x = nx & !placed & !(1u64 << x) & self.full;
        let back = nx & placed;
        let lowest = |g: u64| g.trailing_zeros() as usize;
        let join = groups.iter().position(|&a| {
            a & nx == 0 && self.future(lowest(a), placed) == future_x && {
                let common = self.common_neighbours(a);
                back & !common == 0
            }
        });
        match join {
            Some(i) => Some(Placement::Join(i)),
            None if c < self.w => Some(Placement::Fresh),
            None => None,
        }
    }
}

struct Search<'a> {
    frontier: Frontier<'a>,
    dead: HashSet<u64>,
    nodes: u64,
    budget: Budget,
    stopped: bool,
    path: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, placed: u64) -> bool {
        if placed == self.frontier.full {
            return true;
        }
        if self.dead.contains(&placed) {
            return false;
        }
        self.nodes += 1;
        if self.budget.exceeded(self.nodes) {
            self.stopped = true;
            return false;
        }
        let groups = self.frontier.groups(placed);
        let mut moves: Vec<(usize, usize)> = bits(self.frontier.full & !placed)
            .filter(|&x| self.frontier.placement(placed, &groups, x).is_some())
            .map(|x| (self.frontier.groups(placed | 1 << x).len(), x))
            .collect();
        moves.sort_unstable();
        for (_, x) in moves {
            self.path.push(x);
            if self.run(placed | 1 << x) {
                return true;
            }
            self.path.pop();
            if self.stopped {
                return false;
            }
        }
        self.dead.insert(placed);
        false
    }
}

/// Replays an admissible ordering with explicit labels.
fn certificate(g: &Graph, frontier: &Frontier, order: &[usize]) -> CwExpr {
    let mut builder = LinearBuilder::new();
    // (label, members), kept equal to the future-neighbourhood grouping.
    let mut labelled: Vec<(u32, u64)> = Vec::new();
    let mut placed = 0u64;
    for &x in order {
        labelled.sort_by_key(|&(_, m)| m.trailing_zeros());
        let groups: Vec<u64> = labelled.iter().map(|&(_, m)| m).collect();
        debug_assert_eq!(groups, frontier.groups(placed));
        let step = frontier
            .placement(placed, &groups, x)
            .expect("ordering came from the search");
        let label = match step {
            Placement::Join(i) => labelled[i].0,
            Placement::Fresh => (1..)
                .find(|l| labelled.iter().all(|&(used, _)| used != *l))
                .expect("unbounded"),
        };
        builder.add_vertex(label, g.display_name(x + 1));
        let mut targets: Vec<u32> = labelled
            .iter()
            .filter(|&&(_, m)| m & frontier.adj[x] != 0)
            .map(|&(l, _)| l)
            .collect();
        targets.sort_unstable();
        for t in targets {
            builder.add_edges(label, t);
        }
        match step {
            Placement::Join(i) => labelled[i].1 |= 1 << x,
            Placement::Fresh => labelled.push((label, 1 << x)),
        }
        placed |= 1 << x;
        labelled.sort_by_key(|&(l, _)| l);
        let mut merged: Vec<(u32, u64)> = Vec::new();
        for (l, m) in labelled.drain(..) {
            let f = frontier.future(m.trailing_zeros() as usize, placed);
            match merged
                .iter_mut()
                .find(|(_, k)| frontier.future(k.trailing_zeros() as usize, placed) == f)
            {
                Some(target) => {
                    builder.relabel(l, target.0);
                    target.1 |= m;
                }
                None => merged.push((l, m)),
            }
        }
        labelled = merged;
    }
    builder.finish().expect("at least one vertex")
}

/// Decide `lcwd(g) <= w`. Handles graphs with at most 64 vertices.
pub fn lcwd_decide(g: &Graph, w: usize, budget: Budget) -> Result<Decided, SolverError> {
    if w == 0 {
        return Err(SolverError::ZeroWidth);
    }
    let start = Instant::now();
    let adj = g.masks()?;
    let frontier = Frontier {
        adj: &adj,
        full: full_mask(g.n()),
        w,
    };
    if g.n() == 0 {
        return Err(SolverError::EmptyGraph);
    }
    let mut search = Search {
        frontier,
        dead: HashSet::new(),
        nodes: 0,
        budget,
        stopped: false,
        path: Vec::new(),
    };
    let found = search.run(0);
    let decision = if found {
        let e = certificate(g, &search.frontier, &search.path);
        let check = check_certificate(&e, g, w, true);
        if !check.accepted {
            return Err(SolverError::BadCertificate(check.reason.unwrap_or_default()));
        }
        Decision::Yes(e)
    } else if search.stopped {
        Decision::Unknown
    } else {
        Decision::No
    };
    Ok(Decided {
        decision,
        stats: SearchStats {
            nodes: search.nodes,
            states: search.dead.len() as u64,
            seconds: start.elapsed().as_secs_f64(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_and_cycles() {
        let p4 = Graph::path(4);
        assert_eq!(lcwd_decide(&p4, 2, Budget::unlimited()).unwrap().decision, Decision::No);
        assert!(lcwd_decide(&p4, 3, Budget::unlimited()).unwrap().decision.is_yes());
        let mut c5 = Graph::path(5);
        c5.add_edge(1, 5).unwrap();
        // Every three-vertex prefix of C5 leaves a fourth vertex with nowhere to go.
        assert_eq!(lcwd_decide(&c5, 3, Budget::unlimited()).unwrap().decision, Decision::No);
        assert!(lcwd_decide(&c5, 4, Budget::unlimited()).unwrap().decision.is_yes());
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let g = crate::families::make_z(2).unwrap();
        let d = lcwd_decide(&g, 3, Budget::nodes(1)).unwrap();
        assert_eq!(d.decision, Decision::Unknown);
    }

    #[test]
    fn zero_width_rejected() {
        assert_eq!(
            lcwd_decide(&Graph::path(2), 0, Budget::unlimited()).unwrap_err(),
            SolverError::ZeroWidth
        );
    }
}
