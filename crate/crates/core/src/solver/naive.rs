//! Brute-force oracles over the unrestricted state space.
//!
//! A state is the set of built vertices, their label classes (up to renaming
//! labels) and the set of edges created so far. Nothing is assumed about
//! when edges are added or how labels are grouped, so these searches are
//! slow but make no modelling shortcuts. Only tiny graphs are accepted.

use std::collections::{HashMap, HashSet};

use super::{bits, full_mask, SolverError};
use crate::graph::Graph;

/// Largest graph accepted by [`naive_lcwd`].
pub const NAIVE_LCWD_LIMIT: usize = 7;
/// Largest graph accepted by [`naive_cwd`].
pub const NAIVE_CWD_LIMIT: usize = 5;

struct Pairs {
    index: Vec<Vec<u32>>,
    edges: u32,
}

impl Pairs {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut index = vec![vec![0u32; n]; n];
        let mut next = 0;
        for i in 0..n {
            for j in i + 1..n {
                index[i][j] = 1 << next;
                index[j][i] = 1 << next;
                next += 1;
            }
        }
        let edges = g.edges().iter().fold(0, |acc, &(u, v)| acc | index[u - 1][v - 1]);
        Pairs { index, edges }
    }

    fn between(&self, a: u64, b: u64) -> u32 {
        let mut out = 0;
        for i in bits(a) {
            for j in bits(b) {
                out |= self.index[i][j];
            }
        }
        out
    }
}

type Blocks = Vec<u64>;

fn canonical(mut blocks: Blocks) -> Blocks {
    blocks.sort_unstable();
    blocks
}

/// Edge additions and label merges available from `(blocks, realized)`.
fn moves_within(pairs: &Pairs, blocks: &Blocks, realized: u32) -> Vec<(Blocks, u32)> {
    let mut out = Vec::new();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let prod = pairs.between(blocks[i], blocks[j]);
            if prod & !pairs.edges == 0 && prod & !realized != 0 {
                out.push((blocks.clone(), realized | prod));
            }
            let mut merged = blocks.clone();
            merged[i] |= merged[j];
            merged.remove(j);
            out.push((canonical(merged), realized));
        }
    }
    out
}

fn check_size(g: &Graph, limit: usize) -> Result<(), SolverError> {
    if g.n() > limit {
        Err(SolverError::TooLarge { n: g.n(), limit })
    } else {
        Ok(())
    }
}

/// Is there a linear expression of width at most `w` for `g`?
pub fn naive_lcwd_decide(g: &Graph, w: usize) -> Result<bool, SolverError> {
    check_size(g, NAIVE_LCWD_LIMIT)?;
    if w == 0 {
        return Ok(g.n() == 0);
    }
    let pairs = Pairs::new(g);
    let full = full_mask(g.n());
    let start: (u64, Blocks, u32) = (0, Vec::new(), 0);
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut stack = vec![start];
    while let Some((placed, blocks, realized)) = stack.pop() {
        if placed == full && realized == pairs.edges {
            return Ok(true);
        }
        let mut next: Vec<(u64, Blocks, u32)> = moves_within(&pairs, &blocks, realized)
            .into_iter()
            .map(|(b, r)| (placed, b, r))
            .collect();
        for x in bits(full & !placed) {
            if blocks.len() < w {
                let mut b = blocks.clone();
                b.push(1 << x);
                next.push((placed | 1 << x, canonical(b), realized));
            }
            for i in 0..blocks.len() {
                let mut b = blocks.clone();
                b[i] |= 1 << x;
                next.push((placed | 1 << x, canonical(b), realized));
            }
        }
        for s in next {
            if seen.insert(s.clone()) {
                stack.push(s);
            }
        }
    }
    Ok(false)
}

/// Linear clique-width of a graph with at most [`NAIVE_LCWD_LIMIT`] vertices.
pub fn naive_lcwd(g: &Graph) -> Result<usize, SolverError> {
    check_size(g, NAIVE_LCWD_LIMIT)?;
    for w in 0..=g.n() {
        if naive_lcwd_decide(g, w)? {
            return Ok(w);
        }
    }
    unreachable!("n labels always suffice")
}

/// Pair up blocks of `a` and `b` in every partial matching that keeps the
/// number of labels at most `w`.
fn identifications(a: &Blocks, b: &Blocks, w: usize, out: &mut Vec<Blocks>) {
    fn rec(a: &Blocks, b: &Blocks, w: usize, i: usize, used: u64, acc: &mut Blocks, out: &mut Vec<Blocks>) {
        if i == a.len() {
            let mut blocks = acc.clone();
            for (j, &bj) in b.iter().enumerate() {
                if used & 1 << j == 0 {
                    blocks.push(bj);
                }
            }
            if blocks.len() <= w {
                out.push(canonical(blocks));
            }
            return;
        }
        acc.push(a[i]);
        rec(a, b, w, i + 1, used, acc, out);
        for (j, &bj) in b.iter().enumerate() {
            if used & 1 << j == 0 {
                *acc.last_mut().expect("pushed") |= bj;
                rec(a, b, w, i + 1, used | 1 << j, acc, out);
                *acc.last_mut().expect("pushed") = a[i];
            }
        }
        acc.pop();
    }
    rec(a, b, w, 0, 0, &mut Vec::new(), out);
}

/// Is there an expression of width at most `w` for `g`?
pub fn naive_cwd_decide(g: &Graph, w: usize) -> Result<bool, SolverError> {
    check_size(g, NAIVE_CWD_LIMIT)?;
    let n = g.n();
    if n == 0 || w == 0 {
        return Ok(n == 0);
    }
    let pairs = Pairs::new(g);
    let full = full_mask(n);
    let mut states: HashMap<u64, HashSet<(Blocks, u32)>> = HashMap::new();
    let mut subsets: Vec<u64> = (1..=full).collect();
    subsets.sort_by_key(|s| s.count_ones());
    for s in subsets {
        let mut found: HashSet<(Blocks, u32)> = HashSet::new();
        if s.count_ones() == 1 {
            found.insert((vec![s], 0));
        } else {
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let mut sub = rest;
            loop {
                let left = low | sub;
                let right = s ^ left;
                if right != 0 {
                    if let (Some(l), Some(r)) = (states.get(&left), states.get(&right)) {
                        for (la, ra) in l {
                            for (lb, rb) in r {
                                let mut merged = Vec::new();
                                identifications(la, lb, w, &mut merged);
                                for blocks in merged {
                                    found.insert((blocks, ra | rb));
                                }
                            }
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        let mut stack: Vec<(Blocks, u32)> = found.iter().cloned().collect();
        while let Some((blocks, realized)) = stack.pop() {
            for m in moves_within(&pairs, &blocks, realized) {
                if found.insert(m.clone()) {
                    stack.push(m);
                }
            }
        }
        if !found.is_empty() {
            states.insert(s, found);
        }
    }
    Ok(states
        .get(&full)
        .is_some_and(|f| f.iter().any(|(_, r)| *r == pairs.edges)))
}

/// Clique-width of a graph with at most [`NAIVE_CWD_LIMIT`] vertices.
pub fn naive_cwd(g: &Graph) -> Result<usize, SolverError> {
    check_size(g, NAIVE_CWD_LIMIT)?;
    for w in 0..=g.n() {
        if naive_cwd_decide(g, w)? {
            return Ok(w);
        }
    }
    unreachable!("n labels always suffice")
}
