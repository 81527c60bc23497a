//! Simple undirected graphs with 1-based vertex ids and optional names.
//!
//! Vertex ids run over `1..=n`. Every operation that re-indexes vertices
//! returns a [`Subgraph`] carrying the translation back to the parent ids,
//! so named vertices (`v_3`, `z_g`, `w+`) stay traceable through deletions.

mod bitset;
pub mod catalog;
pub mod io;
pub mod iso;

use std::collections::HashSet;

use thiserror::Error;

pub use bitset::Bitset;
pub use io::{read_graph, write_graph};
pub use iso::{canonical_form, find_isomorphism, is_isomorphic, IsoBudgetExceeded};

/// Largest vertex count the mask-based search engines accept.
pub const MASK_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex id {0} (graph has {1} vertices)")]
    UnknownVertex(usize, usize),
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate vertex name {0:?}")]
    DuplicateName(String),
    #[error("graph has {0} vertices; at most {MASK_LIMIT} supported here")]
    TooLarge(usize),
}

/// A simple undirected graph. Adjacency rows are bitsets indexed by `id - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Bitset>,
    names: Vec<Option<String>>,
}

/// An induced subgraph together with its id translation table:
/// `origin[new_id - 1]` is the id the vertex had in the parent graph.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    pub origin: Vec<usize>,
}

impl Subgraph {
    pub fn parent_id(&self, id: usize) -> usize {
        self.origin[id - 1]
    }

    pub fn local_id(&self, parent_id: usize) -> Option<usize> {
        self.origin.iter().position(|&o| o == parent_id).map(|p| p + 1)
    }
}

impl Graph {
    /// Edgeless, unnamed graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: (0..n).map(|_| Bitset::with_capacity(n)).collect(),
            names: vec![None; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete graph on `n` unnamed vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v).expect("ids in range");
            }
        }
        g
    }

    /// Unnamed path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u, u + 1).expect("ids in range");
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::len).sum::<usize>() / 2
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n() {
            Err(GraphError::UnknownVertex(v, self.n()))
        } else {
            Ok(())
        }
    }

    /// Adds the edge `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let fresh = self.adj[u - 1].insert(v - 1);
        self.adj[v - 1].insert(u - 1);
        Ok(fresh)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != 0 && u <= self.n() && self.adj[u - 1].contains(v.wrapping_sub(1))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v - 1].iter().map(|i| i + 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// Sorted edge list with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 1..=self.n() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn name(&self, v: usize) -> Option<&str> {
        self.names.get(v.wrapping_sub(1))?.as_deref()
    }

    /// The vertex's name, or its decimal id when unnamed.
    pub fn display_name(&self, v: usize) -> String {
        self.name(v).map_or_else(|| v.to_string(), str::to_owned)
    }

    pub fn set_name(&mut self, v: usize, name: impl Into<String>) -> Result<(), GraphError> {
        self.check(v)?;
        let name = name.into();
        if let Some(other) = self.id_of(&name) {
            if other != v {
                return Err(GraphError::DuplicateName(name));
            }
        }
        self.names[v - 1] = Some(name);
        Ok(())
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.names
            .iter()
            .position(|n| n.as_deref() == Some(name))
            .map(|p| p + 1)
    }

    /// Like [`Graph::id_of`], panicking on a missing name. For generator code
    /// where the name is known to exist.
    pub fn vertex(&self, name: &str) -> usize {
        self.id_of(name)
            .unwrap_or_else(|| panic!("no vertex named {name:?}"))
    }

    pub fn is_fully_named(&self) -> bool {
        self.names.iter().all(Option::is_some)
    }

    pub fn ids(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n()
    }

    /// Induced subgraph on `keep`, re-indexed in increasing parent-id order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Subgraph, GraphError> {
        let mut origin: Vec<usize> = Vec::with_capacity(keep.len());
        for &v in keep {
            self.check(v)?;
            origin.push(v);
        }
        origin.sort_unstable();
        origin.dedup();
        let mut g = Graph::empty(origin.len());
        for (i, &u) in origin.iter().enumerate() {
            g.names[i] = self.names[u - 1].clone();
            for (j, &v) in origin.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i + 1, j + 1)?;
                }
            }
        }
        Ok(Subgraph { graph: g, origin })
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Subgraph, GraphError> {
        self.check(v)?;
        let keep: Vec<usize> = self.ids().filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Deletes the vertex with the given name.
    pub fn delete_named(&self, name: &str) -> Result<Subgraph, GraphError> {
        self.delete_vertex(self.vertex(name))
    }

    /// Disjoint union; `other`'s ids are shifted by `self.n()`. A name of
    /// `other` that collides with one already present gets primes appended
    /// until it is unique.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n + other.n());
        let mut taken: HashSet<String> = HashSet::new();
        for (i, name) in self.names.iter().enumerate() {
            g.names[i] = name.clone();
            if let Some(s) = name {
                taken.insert(s.clone());
            }
        }
        for (i, name) in other.names.iter().enumerate() {
            g.names[n + i] = name.as_ref().map(|s| {
                let mut s = s.clone();
                while taken.contains(&s) {
                    s.push('\'');
                }
                taken.insert(s.clone());
                s
            });
        }
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("ids in range");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + n, v + n).expect("ids in range");
        }
        g
    }

    /// The same graph with vertex `v` renumbered to `perm[v - 1]`; names travel
    /// with their vertices.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut g = Graph::empty(self.n());
        for v in self.ids() {
            g.names[perm[v - 1] - 1] = self.names[v - 1].clone();
        }
        for (u, v) in self.edges() {
            g.add_edge(perm[u - 1], perm[v - 1]).expect("perm in range");
        }
        g
    }

    /// Adjacency as 0-based `u64` masks for the exponential search engines.
    pub fn masks(&self) -> Result<Vec<u64>, GraphError> {
        if self.n() > MASK_LIMIT {
            return Err(GraphError::TooLarge(self.n()));
        }
        Ok(self.adj.iter().map(Bitset::low_word).collect())
    }

    /// True when `other` has the same vertex names and, under the name
    /// correspondence, exactly the same edges.
    pub fn equal_by_names(&self, other: &Graph) -> bool {
        if self.n() != other.n() || !self.is_fully_named() || !other.is_fully_named() {
            return false;
        }
        let map: Option<Vec<usize>> = self
            .ids()
            .map(|v| other.id_of(self.name(v).expect("named")))
            .collect();
        let Some(map) = map else { return false };
        self.edge_count() == other.edge_count()
            && self.edges().iter().all(|&(u, v)| other.has_edge(map[u - 1], map[v - 1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deleting_a_path_endpoint() {
        let p4 = Graph::path(4);
        let sub = p4.delete_vertex(1).unwrap();
        assert_eq!(sub.graph.n(), 3);
        assert_eq!(sub.graph.edge_count(), 2);
        assert_eq!(sub.origin, vec![2, 3, 4]);
        assert_eq!(sub.local_id(3), Some(2));
    }

    #[test]
    fn delete_vertex_errors() {
        let g = Graph::path(3);
        assert_eq!(
            g.delete_vertex(0).unwrap_err(),
            GraphError::UnknownVertex(0, 3)
        );
        assert!(g.delete_vertex(4).is_err());
        assert!(g.induced_subgraph(&[1, 9]).is_err());
    }

    #[test]
    fn loops_and_duplicate_names_are_rejected() {
        let mut g = Graph::empty(2);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::Loop(1)));
        g.set_name(1, "a").unwrap();
        assert!(matches!(g.set_name(2, "a"), Err(GraphError::DuplicateName(_))));
        g.set_name(1, "a").unwrap();
    }

    #[test]
    fn induced_subgraph_identity_and_union() {
        let g = Graph::path(5);
        let all: Vec<usize> = g.ids().collect();
        assert_eq!(g.induced_subgraph(&all).unwrap().graph, g);

        let u = Graph::empty(1).disjoint_union(&Graph::empty(1));
        assert_eq!((u.n(), u.edge_count()), (2, 0));
        let u = Graph::path(3).disjoint_union(&Graph::empty(1));
        assert_eq!((u.n(), u.edge_count()), (4, 2));
        assert!(u.has_edge(2, 3) && !u.has_edge(3, 4));
    }

    #[test]
    fn union_primes_colliding_names() {
        let mut a = Graph::empty(2);
        a.set_name(1, "a").unwrap();
        a.set_name(2, "b").unwrap();
        let u = a.disjoint_union(&a);
        let names: Vec<String> = u.ids().map(|v| u.display_name(v)).collect();
        assert_eq!(names, ["a", "b", "a'", "b'"]);
    }

    #[test]
    fn masks_refuse_large_graphs() {
        assert!(Graph::empty(64).masks().is_ok());
        assert_eq!(Graph::empty(65).masks(), Err(GraphError::TooLarge(65)));
    }
}
