//! All graphs of a hereditary class on `n` vertices, one per isomorphism
//! class. Graphs on `n` vertices are grown from those on `n - 1` by adding a
//! vertex with every possible neighborhood; a hereditary class is closed
//! under vertex deletion, so filtering at each size loses nothing.

use std::collections::BTreeMap;

use crate::cotree::build_cotree;
use crate::graph::Graph;
use crate::oracle::canon::canonical_form;
use crate::threshold::is_threshold;

/// Every isomorphism class in a hereditary class, sizes `0..=n` in one list
/// per size. `keep` must be closed under taking induced subgraphs.
pub fn hereditary(n: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Vec<Graph>> {
    let mut levels = vec![vec![Graph::empty(0)]];
    for size in 1..=n {
        let mut next: BTreeMap<String, Graph> = BTreeMap::new();
        for g in &levels[size - 1] {
            for mask in 0u64..1 << (size - 1) {
                let edges: Vec<(usize, usize)> = g
                    .edges()
                    .chain((0..size - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, size - 1)))
                    .collect();
                let h = Graph::from_edges(size, edges).expect("valid edges");
                if keep(&h) {
                    next.entry(canonical_form(&h)).or_insert(h);
                }
            }
        }
        levels.push(next.into_values().collect());
    }
    levels
}

pub fn all_graphs(n: usize) -> Vec<Graph> {
    hereditary(n, |_| true).pop().unwrap_or_default()
}

pub fn all_cographs(n: usize) -> Vec<Graph> {
    hereditary(n, |g| g.vertex_count() == 0 || build_cotree(g).is_ok())
        .pop()
        .unwrap_or_default()
}

pub fn all_threshold(n: usize) -> Vec<Graph> {
    hereditary(n, is_threshold).pop().unwrap_or_default()
}

pub fn all_trivially_perfect(n: usize) -> Vec<Graph> {
    hereditary(n, |g| {
        g.vertex_count() == 0 || build_cotree(g).is_ok_and(|t| t.is_trivially_perfect())
    })
    .pop()
    .unwrap_or_default()
}

/// Unlabeled trees, grown by attaching leaves.
pub fn all_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut next: BTreeMap<String, Graph> = BTreeMap::new();
        for t in &level {
            for v in 0..size - 1 {
                let edges: Vec<(usize, usize)> = t.edges().chain([(v, size - 1)]).collect();
                let h = Graph::from_edges(size, edges).expect("valid edges");
                next.entry(canonical_form(&h)).or_insert(h);
            }
        }
        level = next.into_values().collect();
    }
    level
}
