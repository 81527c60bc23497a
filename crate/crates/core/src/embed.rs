//! Induced-subgraph embeddings: the explicit index maps into `J_k - z_g`,
//! a checker, and a backtracking search that can also certify that no
//! embedding exists.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::budget::Budget;
use crate::families::{j_hole, j_order, make_j, make_s_plus, make_z, s_core, z_order, FamilyError, SPlusCase};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{what}: t = {t} outside 1..={max}")]
    OutOfRange { what: &'static str, t: usize, max: usize },
    #[error("k = {0} is below 3")]
    SmallK(usize),
    #[error("{name} -> z_{index} falls outside J_k - z_g (m = {m}, g = {g})")]
    BadIndex { name: String, index: i64, m: usize, g: usize },
    #[error("w+ target for case {case}: {found} of the candidates {candidates:?} match")]
    PlusTarget { case: SPlusCase, candidates: Vec<i64>, found: usize },
}

/// A map from guest ids to host ids (`map[guest_id - 1]`).
#[derive(Clone, Debug)]
pub struct Embedding {
    pub guest: Graph,
    pub host: Graph,
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn image(&self, guest_id: usize) -> usize {
        self.map[guest_id - 1]
    }

    /// `guest-name -> host-name` lines, in guest id order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.guest.ids() {
            let _ = writeln!(
                out,
                "{} -> {}",
                self.guest.display_name(v),
                self.host.display_name(self.image(v))
            );
        }
        out
    }
}

/// True iff the map is injective into the host and preserves both edges
/// and non-edges.
pub fn check_embedding(e: &Embedding) -> bool {
    let n = e.guest.n();
    if e.map.len() != n || e.map.iter().any(|&h| h == 0 || h > e.host.n()) {
        return false;
    }
    let mut used = vec![false; e.host.n()];
    for &h in &e.map {
        if std::mem::replace(&mut used[h - 1], true) {
            return false;
        }
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if e.guest.has_edge(u, v) != e.host.has_edge(e.image(u), e.image(v)) {
                return false;
            }
        }
    }
    true
}

/// Guest names assigned to host indices `j` (meaning `z_j` of `J_k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMap {
    pub k: usize,
    pub t: usize,
    pub assignments: Vec<(String, usize)>,
}

impl PhiMap {
    fn checked(k: usize, t: usize, raw: Vec<(String, i64)>) -> Result<PhiMap, EmbedError> {
        let (m, g) = (j_order(k), j_hole(k));
        let mut assignments = Vec::with_capacity(raw.len());
        for (name, index) in raw {
            if index < 1 || index > m as i64 || index == g as i64 {
                return Err(EmbedError::BadIndex { name, index, m, g });
            }
            assignments.push((name, index as usize));
        }
        Ok(PhiMap { k, t, assignments })
    }

    /// Realise the map between `guest` and `J_k - z_g`.
    pub fn embedding(&self, guest: Graph) -> Result<Embedding, EmbedError> {
        let (j, g) = make_j(self.k as i64)?;
        let host = j.delete_vertex(g)?.graph;
        let by_name: HashMap<&str, usize> = self.assignments.iter().map(|(n, j)| (n.as_str(), *j)).collect();
        let map = guest
            .ids()
            .map(|v| {
                let name = guest.display_name(v);
                let j = by_name[name.as_str()];
                host.id_of(&format!("z_{j}")).expect("index avoids z_g")
            })
            .collect();
        Ok(Embedding { guest, host, map })
    }
}

fn need_k(k: usize) -> Result<(), EmbedError> {
    if k < 3 {
        Err(EmbedError::SmallK(k))
    } else {
        Ok(())
    }
}

/// Largest `t` handled directly by [`phi_z`]; larger ones reduce by reversal.
pub fn phi_z_range(k: usize) -> usize {
    k * (k + 1) / 2 + 1
}

/// `v_i -> z_{g-t+i}` for `i != t`.
pub fn phi_z_map(k: usize, t: usize) -> Result<PhiMap, EmbedError> {
    need_k(k)?;
    let max = phi_z_range(k);
    if t == 0 || t > max {
        return Err(EmbedError::OutOfRange { what: "phi_z", t, max });
    }
    let g = j_hole(k) as i64;
    let raw = (1..=z_order(k))
        .filter(|&i| i != t)
        .map(|i| (format!("v_{i}"), g - t as i64 + i as i64))
        .collect();
    PhiMap::checked(k, t, raw)
}

/// Embedding of `Z_k - v_t` into `J_k - z_g`, for `t` in `1..=phi_z_range(k)`.
pub fn phi_z(k: usize, t: usize) -> Result<Embedding, EmbedError> {
    let map = phi_z_map(k, t)?;
    let guest = make_z(k as i64)?.delete_named(&format!("v_{t}"))?.graph;
    map.embedding(guest)
}

/// Embedding of `Z_k - v_t` for any `t`, reversing the layout when `t` is
/// past the direct range.
pub fn phi_z_any(k: usize, t: usize) -> Result<Embedding, EmbedError> {
    let len = z_order(k);
    if t == 0 || t > len {
        return Err(EmbedError::OutOfRange { what: "phi_z_any", t, max: len });
    }
    if t <= phi_z_range(k) {
        return phi_z(k, t);
    }
    let reduced = phi_z(k, len + 1 - t)?;
    let guest = make_z(k as i64)?.delete_named(&format!("v_{t}"))?.graph;
    Ok(compose_reversal(guest, &reduced, |name| reverse_index(name, "v", len)))
}

fn reverse_index(name: &str, prefix: &str, len: usize) -> Option<String> {
    let i: usize = name.strip_prefix(prefix)?.strip_prefix('_')?.parse().ok()?;
    Some(format!("{prefix}_{}", len + 1 - i))
}

/// Pull `reduced` back along a renaming of the guest's vertices.
fn compose_reversal(guest: Graph, reduced: &Embedding, rename: impl Fn(&str) -> Option<String>) -> Embedding {
    let map = guest
        .ids()
        .map(|v| {
            let name = guest.display_name(v);
            let image = rename(&name).unwrap_or(name);
            reduced.image(reduced.guest.vertex(&image))
        })
        .collect();
    Embedding {
        guest,
        host: reduced.host.clone(),
        map,
    }
}

/// Largest `t` handled directly by [`phi_s`].
pub fn phi_s_range(k: usize) -> usize {
    ((k - 1) * (k + 1) + 1) / 2 + 1
}

#[derive(Clone, Debug)]
pub enum PhiOutcome {
    Embedded(Embedding),
    /// The index arithmetic runs off the front of `J_k`
    /// (`g - t + 1 < k + 2`).
    Unavailable,
}

impl PhiOutcome {
    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            PhiOutcome::Embedded(e) => Some(e),
            PhiOutcome::Unavailable => None,
        }
    }
}

/// Index map for `S+_k - v_t` in `J_k - z_g`, or `None` when unavailable.
pub fn phi_s_map(k: usize, t: usize, case: SPlusCase) -> Result<Option<PhiMap>, EmbedError> {
    need_k(k)?;
    let max = phi_s_range(k);
    if t == 0 || t > max {
        return Err(EmbedError::OutOfRange { what: "phi_s", t, max });
    }
    let (g, n) = (j_hole(k) as i64, s_core(k) as i64);
    let (ki, ti) = (k as i64, t as i64);
    if g - ti + 1 < ki + 2 {
        return Ok(None);
    }
    let base = g - ti;
    let mut raw: Vec<(String, i64)> = (1..=n)
        .filter(|&i| i != ti)
        .map(|i| (format!("v_{i}"), base + i))
        .collect();
    raw.extend([
        ("w_1".to_owned(), base - ki),
        ("w_2".to_owned(), base - ki + 1),
        ("w_3".to_owned(), base + n + ki),
        ("w_4".to_owned(), base + n + ki + 1),
    ]);
    let candidates = if case.at_front() {
        vec![base - 1, base]
    } else {
        vec![base + n + 1, base + n + 2]
    };
    let plus = plus_target(k, t, case, &raw, &candidates)?;
    raw.push(("w+".to_owned(), plus));
    PhiMap::checked(k, t, raw).map(Some)
}

/// The candidate whose neighbourhood in `J_k` is exactly the images of
/// `w+`'s neighbours, with the deleted `v_t` placed on `z_g`. Counting `v_t`
/// keeps the choice unique even when `v_t` is the only vertex telling the
/// two candidates apart.
fn plus_target(k: usize, t: usize, case: SPlusCase, raw: &[(String, i64)], candidates: &[i64]) -> Result<i64, EmbedError> {
    let guest = make_s_plus(k as i64, case)?;
    let plus = guest.vertex("w+");
    let (m, g) = (j_order(k) as i64, j_hole(k) as i64);
    let adjacent = |a: i64, b: i64| a != b && (a - b).abs() <= k as i64;
    let mut full: Vec<(String, i64)> = raw.to_vec();
    full.push((format!("v_{t}"), g));
    let fits: Vec<i64> = candidates
        .iter()
        .copied()
        .filter(|&c| c >= 1 && c <= m && full.iter().all(|(_, j)| *j != c))
        .filter(|&c| {
            full.iter()
                .all(|(name, j)| guest.has_edge(plus, guest.vertex(name)) == adjacent(c, *j))
        })
        .collect();
    match fits.as_slice() {
        [one] => Ok(*one),
        _ => Err(EmbedError::PlusTarget {
            case,
            candidates: candidates.to_vec(),
            found: fits.len(),
        }),
    }
}

/// Embedding of `S+_k - v_t` (given case) into `J_k - z_g`, for `t` in
/// `1..=phi_s_range(k)`.
pub fn phi_s(k: usize, t: usize, case: SPlusCase) -> Result<PhiOutcome, EmbedError> {
    match phi_s_map(k, t, case)? {
        None => Ok(PhiOutcome::Unavailable),
        Some(map) => {
            let guest = make_s_plus(k as i64, case)?.delete_named(&format!("v_{t}"))?.graph;
            Ok(PhiOutcome::Embedded(map.embedding(guest)?))
        }
    }
}

/// Reversal of `S+_k`: `v_i <-> v_{n+1-i}`, `w_1 <-> w_4`, `w_2 <-> w_3`;
/// it carries case a to b and c to d.
pub fn s_reversal_name(k: usize, name: &str) -> String {
    let n = s_core(k);
    match name {
        "w_1" => "w_4".into(),
        "w_2" => "w_3".into(),
        "w_3" => "w_2".into(),
        "w_4" => "w_1".into(),
        other => reverse_index(other, "v", n).unwrap_or_else(|| other.to_owned()),
    }
}

/// [`phi_s`] for any `t`, reducing large `t` through the reversal.
pub fn phi_s_any(k: usize, t: usize, case: SPlusCase) -> Result<PhiOutcome, EmbedError> {
    let n = s_core(k);
    if t == 0 || t > n {
        return Err(EmbedError::OutOfRange { what: "phi_s_any", t, max: n });
    }
    if t <= phi_s_range(k) {
        return phi_s(k, t, case);
    }
    match phi_s(k, n + 1 - t, case.mirrored())? {
        PhiOutcome::Unavailable => Ok(PhiOutcome::Unavailable),
        PhiOutcome::Embedded(reduced) => {
            let guest = make_s_plus(k as i64, case)?.delete_named(&format!("v_{t}"))?.graph;
            Ok(PhiOutcome::Embedded(compose_reversal(guest, &reduced, |name| {
                Some(s_reversal_name(k, name))
            })))
        }
    }
}

/// Result of [`find_embedding`].
#[derive(Clone, Debug)]
pub enum EmbedSearch {
    Found(Embedding),
    /// `exhausted` means the whole search space was covered: no embedding exists.
    NotFound { exhausted: bool },
}

impl EmbedSearch {
    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            EmbedSearch::Found(e) => Some(e),
            EmbedSearch::NotFound { .. } => None,
        }
    }
}

struct Matcher<'a> {
    guest: &'a Graph,
    host: &'a Graph,
    host_adj: Vec<Vec<bool>>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: Budget,
    stopped: bool,
}

impl Matcher<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        self.nodes += 1;
        if self.budget.exceeded(self.nodes) {
            self.stopped = true;
            return false;
        }
        let v = self.order[depth];
        for c in 1..=self.host.n() {
            if self.used[c - 1] || self.host.degree(c) < self.guest.degree(v) {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let image = self.map[u - 1];
                self.guest.has_edge(u, v) == self.host_adj[image - 1][c - 1]
            });
            if !consistent {
                continue;
            }
            self.map[v - 1] = c;
            self.used[c - 1] = true;
            if self.run(depth + 1) {
                return true;
            }
            self.used[c - 1] = false;
            if self.stopped {
                return false;
            }
        }
        false
    }
}

/// Guest vertices ordered so that each one (after the first of its
/// component) has as many already-placed neighbours as possible.
fn search_order(guest: &Graph) -> Vec<usize> {
    let n = guest.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = guest
            .ids()
            .filter(|&v| !placed[v - 1])
            .max_by_key(|&v| {
                let back = guest.neighbors(v).filter(|&u| placed[u - 1]).count();
                (back, guest.degree(v), std::cmp::Reverse(v))
            })
            .expect("vertices remain");
        placed[next - 1] = true;
        order.push(next);
    }
    order
}

/// Backtracking search for an induced embedding of `guest` into `host`.
pub fn find_embedding(guest: &Graph, host: &Graph, budget: Budget) -> EmbedSearch {
    if guest.n() > host.n() {
        return EmbedSearch::NotFound { exhausted: true };
    }
    let host_adj = host
        .ids()
        .map(|u| host.ids().map(|v| host.has_edge(u, v)).collect())
        .collect();
    let mut m = Matcher {
        guest,
        host,
        host_adj,
        order: search_order(guest),
        map: vec![0; guest.n()],
        used: vec![false; host.n()],
        nodes: 0,
        budget,
        stopped: false,
    };
    if m.run(0) {
        let e = Embedding {
            guest: guest.clone(),
            host: host.clone(),
            map: m.map,
        };
        debug_assert!(check_embedding(&e));
        EmbedSearch::Found(e)
    } else {
        EmbedSearch::NotFound { exhausted: !m.stopped }
    }
}
