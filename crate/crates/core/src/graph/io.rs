//! Line-oriented graph files.
//!
//! ```text
//! # optional comments
//! g <n> <m>
//! v <id> <name>      (optional, any number)
//! e <u> <v>          (exactly m lines, 1 <= u < v <= n)
//! ```

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphFileError {
    #[error("line {line}: malformed header, expected `g <n> <m>`")]
    MalformedHeader { line: usize },
    #[error("missing `g <n> <m>` header")]
    MissingHeader,
    #[error("line {line}: malformed record {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex id {id} out of range 1..={n}")]
    IdOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: self-loop at vertex {id}")]
    Loop { line: usize, id: usize },
    #[error("line {line}: edge {u} {v} must be written with u < v")]
    Unordered { line: usize, u: usize, v: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: duplicate vertex name {name:?}")]
    DuplicateName { line: usize, name: String },
    #[error("header announces {expected} edges, file has {found}")]
    EdgeCount { expected: usize, found: usize },
}

pub fn read_graph(text: &str) -> Result<Graph, GraphFileError> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut seen_edges = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let malformed = || GraphFileError::Malformed {
            line,
            text: content.to_owned(),
        };
        let Some((g, _)) = graph.as_mut() else {
            match fields.as_slice() {
                ["g", n, m] => {
                    let n = n.parse().map_err(|_| GraphFileError::MalformedHeader { line })?;
                    let m = m.parse().map_err(|_| GraphFileError::MalformedHeader { line })?;
                    graph = Some((Graph::empty(n), m));
                    continue;
                }
                _ => return Err(GraphFileError::MalformedHeader { line }),
            }
        };
        let n = g.n();
        let id = |s: &str| -> Result<usize, GraphFileError> {
            let id: usize = s.parse().map_err(|_| malformed())?;
            if id == 0 || id > n {
                Err(GraphFileError::IdOutOfRange { line, id, n })
            } else {
                Ok(id)
            }
        };
        match fields.as_slice() {
            ["v", v, name] => {
                let v = id(v)?;
                g.set_name(v, *name).map_err(|e| match e {
                    GraphError::DuplicateName(name) => GraphFileError::DuplicateName { line, name },
                    _ => malformed(),
                })?;
            }
            ["e", u, v] => {
                let (u, v) = (id(u)?, id(v)?);
                if u == v {
                    return Err(GraphFileError::Loop { line, id: u });
                }
                if u > v {
                    return Err(GraphFileError::Unordered { line, u, v });
                }
                if !g.add_edge(u, v).map_err(|_| malformed())? {
                    return Err(GraphFileError::DuplicateEdge { line, u, v });
                }
                seen_edges += 1;
            }
            _ => return Err(malformed()),
        }
    }
    let (g, m) = graph.ok_or(GraphFileError::MissingHeader)?;
    if m != seen_edges {
        return Err(GraphFileError::EdgeCount {
            expected: m,
            found: seen_edges,
        });
    }
    Ok(g)
}

/// Canonical text: header, named vertices in id order, edges sorted.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("g {} {}\n", g.n(), g.edge_count());
    for v in g.ids() {
        if let Some(name) = g.name(v) {
            out.push_str(&format!("v {v} {name}\n"));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_k2() {
        let g = read_graph("g 2 1\ne 1 2\n").unwrap();
        assert_eq!(g, Graph::complete(2));
    }

    #[test]
    fn comments_and_names() {
        let text = "# a labelled path\ng 3 2\nv 1 a\nv 3 c # tail\ne 1 2\ne 2 3\n";
        let g = read_graph(text).unwrap();
        assert_eq!(g.name(1), Some("a"));
        assert_eq!(g.name(2), None);
        assert_eq!(g.id_of("c"), Some(3));
        assert_eq!(write_graph(&g), "g 3 2\nv 1 a\nv 3 c\ne 1 2\ne 2 3\n");
    }

    #[test]
    fn rejects_bad_files() {
        assert_eq!(
            read_graph("g 2 1\ne 1 1\n"),
            Err(GraphFileError::Loop { line: 2, id: 1 })
        );
        assert_eq!(
            read_graph("graph 2 1\n"),
            Err(GraphFileError::MalformedHeader { line: 1 })
        );
        assert_eq!(
            read_graph("g 2 2\ne 1 2\ne 1 2\n"),
            Err(GraphFileError::DuplicateEdge { line: 3, u: 1, v: 2 })
        );
        assert_eq!(
            read_graph("g 2 1\ne 1 3\n"),
            Err(GraphFileError::IdOutOfRange { line: 2, id: 3, n: 2 })
        );
        assert_eq!(
            read_graph("g 2 1\ne 2 1\n"),
            Err(GraphFileError::Unordered { line: 2, u: 2, v: 1 })
        );
        assert_eq!(
            read_graph("g 2 1\n"),
            Err(GraphFileError::EdgeCount { expected: 1, found: 0 })
        );
        assert_eq!(read_graph("# nothing\n"), Err(GraphFileError::MissingHeader));
        assert!(matches!(
            read_graph("g 2 0\nv 1 a\nv 2 a\n"),
            Err(GraphFileError::DuplicateName { line: 3, .. })
        ));
    }
}
