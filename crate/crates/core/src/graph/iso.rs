//! Exact isomorphism for small graphs: colour refinement plus
//! individualisation backtracking.

use thiserror::Error;

use super::Graph;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("isomorphism search exceeded {0} nodes")]
pub struct IsoBudgetExceeded(pub u64);

/// Default number of search nodes before giving up.
pub const DEFAULT_ISO_NODES: u64 = 2_000_000;

/// Refine `colors` to the coarsest equitable colouring. Colours are re-ranked
/// by signature, so the result is invariant under vertex renumbering.
fn refine(adj: &[Vec<usize>], colors: &mut [u32]) {
    let mut classes = count_classes(colors);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..adj.len())
            .map(|v| {
                let mut nb: Vec<u32> = adj[v].iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut rank = 0u32;
        for i in 0..sigs.len() {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            colors[sigs[i].2] = rank;
        }
        let now = rank as usize + usize::from(!sigs.is_empty());
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn adjacency_lists(g: &Graph) -> Vec<Vec<usize>> {
    g.ids().map(|v| g.neighbors(v).map(|u| u - 1).collect()).collect()
}

/// Returns an isomorphism `map` (G-id → H-id) if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>, IsoBudgetExceeded> {
    find_isomorphism_with_budget(g, h, DEFAULT_ISO_NODES)
}

pub fn find_isomorphism_with_budget(
    g: &Graph,
    h: &Graph,
    max_nodes: u64,
) -> Result<Option<Vec<usize>>, IsoBudgetExceeded> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    // Both graphs live side by side in one adjacency table: G on 0..n, H on n..2n.
    let mut adj = adjacency_lists(g);
    adj.extend(
        adjacency_lists(h)
            .into_iter()
            .map(|row| row.into_iter().map(|u| u + n).collect()),
    );
    let mut search = JointSearch {
        g,
        h,
        n,
        adj,
        nodes: 0,
        max_nodes,
    };
    search.run(vec![0; 2 * n])
}

struct JointSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    n: usize,
    adj: Vec<Vec<usize>>,
    nodes: u64,
    max_nodes: u64,
}

impl JointSearch<'_> {
    fn run(&mut self, mut colors: Vec<u32>) -> Result<Option<Vec<usize>>, IsoBudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(IsoBudgetExceeded(self.max_nodes));
        }
        refine(&self.adj, &mut colors);
        let n = self.n;
        let k = colors.iter().copied().max().map_or(0, |c| c as usize + 1);
        let mut left: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut right: Vec<Vec<usize>> = vec![Vec::new(); k];
        for v in 0..n {
            left[colors[v] as usize].push(v);
            right[colors[v + n] as usize].push(v + n);
        }
        if left.iter().zip(&right).any(|(a, b)| a.len() != b.len()) {
            return Ok(None);
        }
        let target = (0..k)
            .filter(|&c| left[c].len() > 1)
            .min_by_key(|&c| (left[c].len(), c));
        let Some(cell) = target else {
            let map: Vec<usize> = (0..n)
                .map(|v| right[colors[v] as usize][0] - n + 1)
                .collect();
            let ok = self
                .g
                .edges()
                .iter()
                .all(|&(u, v)| self.h.has_edge(map[u - 1], map[v - 1]));
            return Ok(ok.then_some(map));
        };
        let u = left[cell][0];
        for &v in &right[cell] {
            let mut next = colors.clone();
            next[u] = k as u32;
            next[v] = k as u32;
            if let Some(map) = self.run(next)? {
                return Ok(Some(map));
            }
        }
        Ok(None)
    }
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool, IsoBudgetExceeded> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// Isomorphism-invariant code: the lexicographically least upper-triangle
/// adjacency string over all leaves of the individualisation tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: Vec<u64>,
}

impl CanonicalForm {
    /// Rebuilds an unnamed graph from the code.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        let mut idx = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.bits[idx / 64] & (1 << (idx % 64)) != 0 {
                    g.add_edge(u + 1, v + 1).expect("in range");
                }
                idx += 1;
            }
        }
        g
    }
}

/// Exhaustive over the search tree (no automorphism pruning); intended for
/// catalogue-sized graphs.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let adj = adjacency_lists(g);
    let mut best: Option<CanonicalForm> = None;
    canon_rec(g, &adj, vec![0; g.n()], &mut best);
    best.unwrap_or(CanonicalForm { n: 0, bits: Vec::new() })
}

fn canon_rec(g: &Graph, adj: &[Vec<usize>], mut colors: Vec<u32>, best: &mut Option<CanonicalForm>) {
    refine(adj, &mut colors);
    let n = g.n();
    let k = colors.iter().copied().max().map_or(0, |c| c as usize + 1);
    if k == n {
        let code = leaf_code(g, &colors);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..n {
        cells[colors[v] as usize].push(v);
    }
    let cell = (0..k)
        .filter(|&c| cells[c].len() > 1)
        .min_by_key(|&c| (cells[c].len(), c))
        .expect("non-discrete colouring has a big cell");
    for &v in &cells[cell] {
        let mut next = colors.clone();
        next[v] = k as u32;
        canon_rec(g, adj, next, best);
    }
}

fn leaf_code(g: &Graph, colors: &[u32]) -> CanonicalForm {
    let n = g.n();
    let mut order = vec![0usize; n];
    for (v, &c) in colors.iter().enumerate() {
        order[c as usize] = v + 1;
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; pairs.div_ceil(64)];
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                bits[idx / 64] |= 1 << (idx % 64);
            }
            idx += 1;
        }
    }
    CanonicalForm { n, bits }
}
