//! Clique-width expressions: syntax tree, text format, evaluation and
//! certificate checking.

mod ast;
mod parse;

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::graph::{find_isomorphism, Graph};

pub use ast::{CwExpr, LinearBuilder};
pub use parse::parse_expr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: label 0 is not allowed")]
    LabelZero { line: usize, col: usize },
    #[error("{line}:{col}: operation needs two different labels, got {label} twice")]
    SameLabels { line: usize, col: usize, label: u32 },
    #[error("vertex name {0:?} is used twice")]
    DuplicateName(String),
}

/// The value of an expression: a named graph plus one label per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    /// `labels[id - 1]`.
    pub labels: Vec<u32>,
}

impl LabeledGraph {
    pub fn label_of(&self, name: &str) -> Option<u32> {
        self.graph.id_of(name).map(|v| self.labels[v - 1])
    }
}

/// Vertices appear in the graph in left-to-right order of their `Make` nodes.
pub fn evaluate(e: &CwExpr) -> Result<LabeledGraph, ExprError> {
    let names = e.vertex_names();
    let mut graph = Graph::empty(names.len());
    let mut seen = HashSet::new();
    for (i, name) in names.iter().enumerate() {
        if !seen.insert(*name) {
            return Err(ExprError::DuplicateName((*name).to_owned()));
        }
        graph.set_name(i + 1, *name).expect("names checked unique");
    }
    let mut labels = vec![0u32; names.len()];
    let mut next = 0usize;
    eval_rec(e, &mut graph, &mut labels, &mut next);
    Ok(LabeledGraph { graph, labels })
}

/// Returns the ids (1-based) built by `e`; ids are handed out in Make order.
fn eval_rec(e: &CwExpr, graph: &mut Graph, labels: &mut [u32], next: &mut usize) -> Vec<usize> {
    match e {
        CwExpr::Make { label, .. } => {
            *next += 1;
            labels[*next - 1] = *label;
            vec![*next]
        }
        CwExpr::Union(l, r) => {
            let mut ids = eval_rec(l, graph, labels, next);
            ids.extend(eval_rec(r, graph, labels, next));
            ids
        }
        CwExpr::AddEdges { i, j, child } => {
            let ids = eval_rec(child, graph, labels, next);
            let (a, b): (Vec<usize>, Vec<usize>) = (
                ids.iter().copied().filter(|&v| labels[v - 1] == *i).collect(),
                ids.iter().copied().filter(|&v| labels[v - 1] == *j).collect(),
            );
            for &u in &a {
                for &v in &b {
                    graph.add_edge(u, v).expect("distinct labels, distinct vertices");
                }
            }
            ids
        }
        CwExpr::Relabel { from, to, child } => {
            let ids = eval_rec(child, graph, labels, next);
            for &v in &ids {
                if labels[v - 1] == *from {
                    labels[v - 1] = *to;
                }
            }
            ids
        }
    }
}

/// Outcome of [`check_certificate`]; `reason` explains a rejection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub accepted: bool,
    pub width: usize,
    pub linear: bool,
    pub reason: Option<String>,
}

impl CertificateCheck {
    fn reject(width: usize, linear: bool, reason: String) -> Self {
        CertificateCheck {
            accepted: false,
            width,
            linear,
            reason: Some(reason),
        }
    }
}

/// Accepts iff `e` uses at most `max_width` labels, is linear when
/// `require_linear`, and evaluates to a graph equal to `g`. Equality is by
/// vertex names when both sides carry the same name set, otherwise by
/// isomorphism.
pub fn check_certificate(e: &CwExpr, g: &Graph, max_width: usize, require_linear: bool) -> CertificateCheck {
    let width = e.width();
    let linear = e.is_linear();
    if width > max_width {
        return CertificateCheck::reject(width, linear, format!("width {width} exceeds {max_width}"));
    }
    if require_linear && !linear {
        return CertificateCheck::reject(width, linear, "expression is not linear".into());
    }
    let value = match evaluate(e) {
        Ok(v) => v,
        Err(err) => return CertificateCheck::reject(width, linear, err.to_string()),
    };
    let built = &value.graph;
    if built.n() != g.n() {
        return CertificateCheck::reject(
            width,
            linear,
            format!("expression builds {} vertices, graph has {}", built.n(), g.n()),
        );
    }
    let same_names = g.is_fully_named() && {
        let want: HashSet<&str> = g.ids().filter_map(|v| g.name(v)).collect();
        built.ids().all(|v| want.contains(built.name(v).unwrap_or("")))
    };
    let matches = if same_names {
        Ok(built.equal_by_names(g))
    } else {
        find_isomorphism(built, g).map(|m| m.is_some())
    };
    match matches {
        Ok(true) => CertificateCheck {
            accepted: true,
            width,
            linear,
            reason: None,
        },
        Ok(false) if same_names => {
            CertificateCheck::reject(width, linear, "edge sets differ under the name correspondence".into())
        }
        Ok(false) => CertificateCheck::reject(width, linear, "built graph is not isomorphic to the target".into()),
        Err(err) => CertificateCheck::reject(width, linear, err.to_string()),
    }
}

/// Rename vertices through `map` (missing names are kept).
pub fn rename_vertices(e: &CwExpr, map: &HashMap<String, String>) -> CwExpr {
    e.rename(&|n: &str| map.get(n).cloned().unwrap_or_else(|| n.to_owned()))
}
