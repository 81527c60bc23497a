//! Complete catalogues of small graphs up to isomorphism.

use std::collections::BTreeSet;

use super::{canonical_form, Graph};

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, in canonical-code order.
///
/// Built by extending every graph on `n - 1` vertices with a new vertex of
/// every possible neighbourhood, then deduplicating by canonical form.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let mut layer: BTreeSet<_> = BTreeSet::new();
    layer.insert(canonical_form(&Graph::empty(0)));
    for size in 1..=n {
        let mut next = BTreeSet::new();
        for code in &layer {
            let base = code.to_graph();
            for nbhd in 0u64..(1 << (size - 1)) {
                let mut g = Graph::empty(size);
                for (u, v) in base.edges() {
                    g.add_edge(u, v).expect("in range");
                }
                for u in 0..size - 1 {
                    if nbhd & (1 << u) != 0 {
                        g.add_edge(u + 1, size).expect("in range");
                    }
                }
                next.insert(canonical_form(&g));
            }
        }
        layer = next;
    }
    layer.iter().map(|c| c.to_graph()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_sizes_match_known_counts() {
        // OEIS A000088.
        let counts: Vec<usize> = (0..=5).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
    }
}
