//! Small graphs that show up throughout the tests and examples.

use crate::graph::Graph;

/// `K1 ⊗ (K2 ⊕ K2)`: vertex 0 is universal, `{1,2}` and `{3,4}` are the wings.
pub fn butterfly() -> Graph {
    Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).unwrap()
}

/// `K1 ⊗ (K1 ⊕ K2)`: vertex 0 is universal, 1 is the pendant, `{2,3}` the edge.
pub fn paw() -> Graph {
    Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (2, 3)]).unwrap()
}

/// `K_{1,n}` with center 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

/// Two disjoint edges `{0,1}`, `{2,3}`.
pub fn two_k2() -> Graph {
    Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
}
