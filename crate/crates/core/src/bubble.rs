//! Bubble models: a grid of vertex sets. Vertices in one column are pairwise
//! adjacent; `u` in column `j`, row `r` and `v` in column `j+1`, row `r'` are
//! adjacent iff `r' < r`. No other pairs are adjacent.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BubbleError {
    #[error("vertex {0} occurs in more than one bubble")]
    Overlap(usize),
    #[error("vertex {0} is in no bubble (ids must cover 1..=n)")]
    Missing(usize),
    #[error("vertex id {0} out of range")]
    OutOfRange(usize),
    #[error("column {0} has no bubbles")]
    EmptyColumn(usize),
}

/// `columns[j][r]` is the bubble in column `j + 1`, row `r + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BubbleModel {
    columns: Vec<Vec<Vec<usize>>>,
    n: usize,
}

impl BubbleModel {
    pub fn new(columns: Vec<Vec<Vec<usize>>>) -> Result<Self, BubbleError> {
        let n: usize = columns.iter().flatten().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for (j, col) in columns.iter().enumerate() {
            if col.is_empty() {
                return Err(BubbleError::EmptyColumn(j + 1));
            }
            for &v in col.iter().flatten() {
                if v == 0 || v > n {
                    return Err(BubbleError::OutOfRange(v));
                }
                if std::mem::replace(&mut seen[v - 1], true) {
                    return Err(BubbleError::Overlap(v));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(BubbleError::Missing(v + 1));
        }
        Ok(BubbleModel { columns, n })
    }

    pub fn columns(&self) -> &[Vec<Vec<usize>>] {
        &self.columns
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(column, row)` of every vertex, 1-based, indexed by `id - 1`.
    fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(0, 0); self.n];
        for (j, col) in self.columns.iter().enumerate() {
            for (r, bubble) in col.iter().enumerate() {
                for &v in bubble {
                    pos[v - 1] = (j + 1, r + 1);
                }
            }
        }
        pos
    }
}

pub fn bubble_to_graph(b: &BubbleModel) -> Graph {
    let pos = b.positions();
    let mut g = Graph::empty(b.n);
    for u in 1..=b.n {
        for v in u + 1..=b.n {
            let ((cu, ru), (cv, rv)) = (pos[u - 1], pos[v - 1]);
            let adjacent = cu == cv || (cv == cu + 1 && rv < ru) || (cu == cv + 1 && ru < rv);
            if adjacent {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Bubble model of the `k`-path power on `n` vertices: `k + 1` singleton
/// bubbles per column, filled column by column in layout order.
pub fn path_power_bubbles(k: usize, n: usize) -> BubbleModel {
    assert!(k >= 1, "path power needs k >= 1");
    let height = k + 1;
    let columns: Vec<Vec<Vec<usize>>> = (1..=n)
        .collect::<Vec<_>>()
        .chunks(height)
        .map(|col| col.iter().map(|&v| vec![v]).collect())
        .collect();
    BubbleModel::new(columns).expect("layout covers 1..=n")
}

/// ASCII grid, one text row per bubble row. Vertices are shown by their name
/// in `names` (or id); `mark` is drawn as `*name*`.
pub fn render_bubbles(b: &BubbleModel, names: Option<&Graph>, mark: Option<usize>) -> String {
    let label = |v: usize| {
        let base = names.map_or_else(|| v.to_string(), |g| g.display_name(v));
        if Some(v) == mark {
            format!("*{base}*")
        } else {
            base
        }
    };
    let cells: Vec<Vec<String>> = b
        .columns
        .iter()
        .map(|col| {
            col.iter()
                .map(|bubble| {
                    let inner: Vec<String> = bubble.iter().map(|&v| label(v)).collect();
                    format!("({})", inner.join(","))
                })
                .collect()
        })
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let rows = b.columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    for r in 0..rows {
        let line: Vec<String> = cells
            .iter()
            .map(|col| format!("{:<width$}", col.get(r).map_or("", String::as_str)))
            .collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{j_order, make_j, path_power};

    #[test]
    fn single_column_is_a_clique() {
        let b = BubbleModel::new(vec![vec![vec![1, 2], vec![3, 4]]]).unwrap();
        assert_eq!(bubble_to_graph(&b), Graph::complete(4));
    }

    #[test]
    fn row_rule_between_columns() {
        let same_row = BubbleModel::new(vec![vec![vec![1]], vec![vec![2]]]).unwrap();
        assert_eq!(bubble_to_graph(&same_row).edge_count(), 0);
        let lower_left = BubbleModel::new(vec![vec![vec![], vec![1]], vec![vec![2]]]).unwrap();
        assert_eq!(bubble_to_graph(&lower_left).edge_count(), 1);
        let far = BubbleModel::new(vec![vec![vec![1]], vec![vec![]], vec![vec![2]]]).unwrap();
        assert_eq!(bubble_to_graph(&far).edge_count(), 0);
    }

    #[test]
    fn invalid_models() {
        assert_eq!(
            BubbleModel::new(vec![vec![vec![1]], vec![vec![1]]]),
            Err(BubbleError::Overlap(1))
        );
        assert_eq!(BubbleModel::new(vec![vec![vec![2]]]), Err(BubbleError::OutOfRange(2)));
        assert_eq!(
            BubbleModel::new(vec![vec![vec![1, 2]], vec![]]),
            Err(BubbleError::EmptyColumn(2))
        );
    }

    #[test]
    fn path_power_round_trip() {
        for k in 1..=5usize {
            for n in 1..=30usize {
                let b = path_power_bubbles(k, n);
                let direct = path_power(k as i64, n as i64).unwrap();
                assert_eq!(bubble_to_graph(&b).edges(), direct.edges(), "k={k} n={n}");
                assert!(b.columns().iter().all(|c| c.len() <= k + 1));
            }
        }
    }

    #[test]
    fn j_column_counts() {
        for (k, cols) in [(2, 4), (3, 6), (5, 10)] {
            let b = path_power_bubbles(k, j_order(k));
            assert_eq!(b.columns().len(), cols, "J_{k}");
        }
    }

    #[test]
    fn render_marks_hole() {
        let (j2, g) = make_j(2).unwrap();
        let text = render_bubbles(&path_power_bubbles(2, j2.n()), Some(&j2), Some(g));
        assert!(text.contains("*z_3*"));
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("(z_1)"));
    }
}
