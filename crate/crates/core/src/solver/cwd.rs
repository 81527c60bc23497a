//! Clique-width decision by dynamic programming over vertex subsets.
//!
//! For a subset `S` the table keeps every label partition of `S` that some
//! expression for `G[S]` can end with, under two harmless restrictions:
//! every edge of `G[S]` has already been created, and every label class is
//! uniform towards `V - S` (otherwise the graph cannot be finished).
//!
//! A union of `(S1, p1)` and `(S2, p2)` may identify classes pairwise when
//! they agree towards `V - S` and have no edges between them. The edges
//! between `S1` and `S2` must then be created by joins of whole combined
//! classes, so each combined pair carrying such an edge has to be complete.
//! After the union, classes with the same neighbourhood outside `S` may be
//! merged in any way.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{bits, full_mask, Decided, Decision, SearchStats, SolverError};
use crate::budget::Budget;
use crate::cwexpr::{check_certificate, CwExpr};
use crate::graph::Graph;

/// Largest graph accepted by [`cwd_decide`].
pub const CWD_LIMIT: usize = 24;

type Part = Vec<u64>;

#[derive(Clone, Debug)]
enum Origin {
    Vertex,
    Union {
        left: u64,
        left_index: usize,
        right: u64,
        right_index: usize,
        /// Identified classes: `(class of left, class of right)`.
        pairs: Vec<(usize, usize)>,
    },
}

#[derive(Default)]
struct SetStates {
    parts: Vec<Part>,
    origins: Vec<Origin>,
}

struct Dp<'a> {
    adj: &'a [u64],
    full: u64,
    w: usize,
    table: HashMap<u64, SetStates>,
    nodes: AtomicU64,
    stopped: AtomicBool,
    budget: Budget,
}

fn lowest(m: u64) -> usize {
    m.trailing_zeros() as usize
}

/// A class after a union, tracking where its members came from.
#[derive(Clone, Copy)]
struct Combined {
    mask: u64,
    left: u64,
    right: u64,
    common: u64,
    outside: u64,
}

impl Dp<'_> {
    fn outside(&self, block: u64, s: u64) -> u64 {
        self.adj[lowest(block)] & !s & self.full
    }

    fn common(&self, block: u64) -> u64 {
        bits(block).fold(self.full, |acc, v| acc & self.adj[v])
    }

    fn admissible_set(&self, s: u64) -> bool {
        let mut seen: Vec<u64> = Vec::new();
        for v in bits(s) {
            let f = self.adj[v] & !s & self.full;
            if !seen.contains(&f) {
                seen.push(f);
                if seen.len() > self.w {
                    return false;
                }
            }
        }
        true
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n.is_multiple_of(256) && self.budget.exceeded(n) {
            self.stopped.store(true, Ordering::Relaxed);
        }
        self.stopped.load(Ordering::Relaxed)
    }

    fn compute(&self, s: u64) -> Option<SetStates> {
        if s.count_ones() == 1 {
            return Some(SetStates {
                parts: vec![vec![s]],
                origins: vec![Origin::Vertex],
            });
        }
        let mut index: HashMap<Part, usize> = HashMap::new();
        let mut out = SetStates::default();
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut sub = rest;
        loop {
            let left = low | sub;
            let right = s ^ left;
            if right != 0 {
                if let (Some(l), Some(r)) = (self.table.get(&left), self.table.get(&right)) {
                    for (li, p1) in l.parts.iter().enumerate() {
                        for (ri, p2) in r.parts.iter().enumerate() {
                            if self.tick() {
                                return None;
                            }
                            self.unions(s, (left, li, p1), (right, ri, p2), &mut |part, pairs| {
                                if !index.contains_key(&part) {
                                    index.insert(part.clone(), out.parts.len());
                                    out.parts.push(part);
                                    out.origins.push(Origin::Union {
                                        left,
                                        left_index: li,
                                        right,
                                        right_index: ri,
                                        pairs: pairs.to_vec(),
                                    });
                                }
                            });
                        }
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        (!out.parts.is_empty()).then_some(out)
    }

    fn combine(&self, s: u64, p1: &[u64], p2: &[u64], pairs: &[(usize, usize)]) -> Vec<Combined> {
        let mut used = vec![false; p2.len()];
        let mut out = Vec::with_capacity(p1.len() + p2.len());
        for (i, &a) in p1.iter().enumerate() {
            let right = pairs
                .iter()
                .find(|&&(x, _)| x == i)
                .map_or(0, |&(_, j)| {
                    used[j] = true;
                    p2[j]
                });
            out.push(Combined {
                mask: a | right,
                left: a,
                right,
                common: self.common(a) & if right == 0 { self.full } else { self.common(right) },
                outside: self.outside(a, s),
            });
        }
        for (j, &b) in p2.iter().enumerate() {
            if !used[j] {
                out.push(Combined {
                    mask: b,
                    left: 0,
                    right: b,
                    common: self.common(b),
                    outside: self.outside(b, s),
                });
            }
        }
        out
    }

    /// Do combined classes `x` and `y` need a join for edges across the union?
    fn crossing(&self, x: &Combined, y: &Combined) -> bool {
        let hits = |a: u64, b: u64| a != 0 && b != 0 && self.adj[lowest(a)] & b != 0;
        hits(x.left, y.right) || hits(x.right, y.left)
    }

    fn joins_valid(&self, combined: &[Combined]) -> bool {
        for (i, x) in combined.iter().enumerate() {
            for y in &combined[i + 1..] {
                if self.crossing(x, y) && x.common & y.mask != y.mask {
                    return false;
                }
            }
        }
        true
    }

    fn unions(
        &self,
        s: u64,
        (_, _, p1): (u64, usize, &Part),
        (_, _, p2): (u64, usize, &Part),
        emit: &mut impl FnMut(Part, &[(usize, usize)]),
    ) {
        let compatible: Vec<Vec<bool>> = p1
            .iter()
            .map(|&a| {
                p2.iter()
                    .map(|&b| self.outside(a, s) == self.outside(b, s) && self.adj[lowest(a)] & b == 0)
                    .collect()
            })
            .collect();
        let need = (p1.len() + p2.len()).saturating_sub(self.w);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        self.matchings(0, 0, need, p1, p2, &compatible, &mut pairs, &mut |pairs| {
            let combined = self.combine(s, p1, p2, pairs);
            if self.joins_valid(&combined) {
                coarsenings(&combined, &mut |part| emit(part, pairs));
            }
        });
    }

    #[allow(clippy::too_many_arguments)]
    fn matchings(
        &self,
        i: usize,
        used: u64,
        need: usize,
        p1: &Part,
        p2: &Part,
        compatible: &[Vec<bool>],
        pairs: &mut Vec<(usize, usize)>,
        visit: &mut impl FnMut(&[(usize, usize)]),
    ) {
        if pairs.len() + (p1.len() - i) < need {
            return;
        }
        if i == p1.len() {
            visit(pairs);
            return;
        }
        self.matchings(i + 1, used, need, p1, p2, compatible, pairs, visit);
        for j in 0..p2.len() {
            if used & 1 << j == 0 && compatible[i][j] {
                pairs.push((i, j));
                self.matchings(i + 1, used | 1 << j, need, p1, p2, compatible, pairs, visit);
                pairs.pop();
            }
        }
    }

    fn build(&self, g: &Graph, s: u64, idx: usize, target: &[u32]) -> CwExpr {
        let states = &self.table[&s];
        match &states.origins[idx] {
            Origin::Vertex => CwExpr::make(target[0], g.display_name(lowest(s) + 1)),
            Origin::Union {
                left,
                left_index,
                right,
                right_index,
                pairs,
            } => {
                let finals = &states.parts[idx];
                let p1 = &self.table[left].parts[*left_index];
                let p2 = &self.table[right].parts[*right_index];
                let combined = self.combine(s, p1, p2, pairs);
                let mut spare = (1..=self.w as u32).filter(|l| !target.contains(l));
                let mut first_taken = vec![false; finals.len()];
                // (label, final class) per combined class
                let labels: Vec<(u32, usize)> = combined
                    .iter()
                    .map(|c| {
                        let f = finals
                            .iter()
                            .position(|&m| m & c.mask != 0)
                            .expect("combined class lies in a final class");
                        if std::mem::replace(&mut first_taken[f], true) {
                            (spare.next().expect("enough spare labels"), f)
                        } else {
                            (target[f], f)
                        }
                    })
                    .collect();
                let label_of = |block: u64| {
                    let k = combined
                        .iter()
                        .position(|c| c.mask & block != 0)
                        .expect("block is covered");
                    labels[k].0
                };
                let l1: Vec<u32> = p1.iter().map(|&b| label_of(b)).collect();
                let l2: Vec<u32> = p2.iter().map(|&b| label_of(b)).collect();
                let mut e = CwExpr::union(
                    self.build(g, *left, *left_index, &l1),
                    self.build(g, *right, *right_index, &l2),
                );
                for (i, x) in combined.iter().enumerate() {
                    for (j, y) in combined.iter().enumerate().skip(i + 1) {
                        if self.crossing(x, y) {
                            e = CwExpr::eta(labels[i].0, labels[j].0, e);
                        }
                    }
                }
                for &(label, f) in &labels {
                    if label != target[f] {
                        e = CwExpr::rho(label, target[f], e);
                    }
                }
                e
            }
        }
    }
}

/// Every partition obtained by merging combined classes that agree outside
/// the current set. Classes inside a part come out sorted.
fn coarsenings(combined: &[Combined], emit: &mut impl FnMut(Part)) {
    fn rec(combined: &[Combined], i: usize, acc: &mut Vec<(u64, u64)>, emit: &mut impl FnMut(Part)) {
        if i == combined.len() {
            let mut part: Part = acc.iter().map(|&(m, _)| m).collect();
            part.sort_unstable();
            emit(part);
            return;
        }
        let c = combined[i];
        acc.push((c.mask, c.outside));
        rec(combined, i + 1, acc, emit);
        acc.pop();
        for k in 0..acc.len() {
            if acc[k].1 == c.outside {
                acc[k].0 |= c.mask;
                rec(combined, i + 1, acc, emit);
                acc[k].0 &= !c.mask;
            }
        }
    }
    rec(combined, 0, &mut Vec::new(), emit);
}

/// Subsets of `full` with exactly `k` elements.
fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    if k == 0 || k > n {
        return Vec::new();
    }
    let full = full_mask(n);
    let mut out = Vec::new();
    let mut s: u64 = full_mask(k);
    loop {
        out.push(s);
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r == 0 || r > full {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
        if s > full {
            break;
        }
    }
    out
}

/// Decide `cwd(g) <= w`. Handles graphs with at most [`CWD_LIMIT`] vertices.
pub fn cwd_decide(g: &Graph, w: usize, budget: Budget) -> Result<Decided, SolverError> {
    if w == 0 {
        return Err(SolverError::ZeroWidth);
    }
    let n = g.n();
    if n == 0 {
        return Err(SolverError::EmptyGraph);
    }
    if n > CWD_LIMIT {
        return Err(SolverError::TooLarge { n, limit: CWD_LIMIT });
    }
    let start = Instant::now();
    let adj = g.masks()?;
    let mut dp = Dp {
        adj: &adj,
        full: full_mask(n),
        w,
        table: HashMap::new(),
        nodes: AtomicU64::new(0),
        stopped: AtomicBool::new(false),
        budget,
    };
    let mut states = 0u64;
    for k in 1..=n {
        let layer: Vec<u64> = subsets_of_size(n, k)
            .into_iter()
            .filter(|&s| dp.admissible_set(s))
            .collect();
        let done: Vec<(u64, SetStates)> = layer
            .par_iter()
            .filter_map(|&s| dp.compute(s).map(|st| (s, st)))
            .collect();
        if dp.stopped.load(Ordering::Relaxed) {
            break;
        }
        for (s, st) in done {
            states += st.parts.len() as u64;
            dp.table.insert(s, st);
        }
    }
    let stats = |dp: &Dp| SearchStats {
        nodes: dp.nodes.load(Ordering::Relaxed),
        states,
        seconds: start.elapsed().as_secs_f64(),
    };
    let decision = if dp.stopped.load(Ordering::Relaxed) {
        Decision::Unknown
    } else if let Some(top) = dp.table.get(&dp.full) {
        let target: Vec<u32> = (1..=top.parts[0].len() as u32).collect();
        let e = dp.build(g, dp.full, 0, &target);
        let check = check_certificate(&e, g, w, false);
        if !check.accepted {
            return Err(SolverError::BadCertificate(check.reason.unwrap_or_default()));
        }
        Decision::Yes(e)
    } else {
        Decision::No
    };
    Ok(Decided {
        decision,
        stats: stats(&dp),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets_of_size(4, 2), vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(subsets_of_size(3, 3), vec![0b111]);
        assert_eq!(subsets_of_size(64, 64), vec![u64::MAX]);
        assert!(subsets_of_size(3, 0).is_empty());
    }

    #[test]
    fn small_decisions() {
        let p4 = Graph::path(4);
        assert_eq!(cwd_decide(&p4, 2, Budget::unlimited()).unwrap().decision, Decision::No);
        let yes = cwd_decide(&p4, 3, Budget::unlimited()).unwrap().decision;
        assert!(check_certificate(yes.certificate().unwrap(), &p4, 3, false).accepted);
        let k4 = Graph::complete(4);
        assert!(cwd_decide(&k4, 2, Budget::unlimited()).unwrap().decision.is_yes());
        assert_eq!(cwd_decide(&k4, 1, Budget::unlimited()).unwrap().decision, Decision::No);
    }

    #[test]
    fn cographs_have_width_two() {
        // Join of two independent pairs: a 4-cycle.
        let c4 = Graph::from_edges(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        assert!(cwd_decide(&c4, 2, Budget::unlimited()).unwrap().decision.is_yes());
    }
}
