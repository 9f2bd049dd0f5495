use std::collections::VecDeque;
use std::ops::Range;

use crate::error::{Error, Result};

/// Simple undirected graph on the vertices `0..n`.
///
/// Neighbor lists are kept sorted and free of duplicates, so iteration order
/// is deterministic and membership is a binary search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Graph {
            adj,
            edges: n * n.saturating_sub(1) / 2,
        }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    /// Sorts and deduplicates raw adjacency lists. The lists must already be
    /// symmetric and loop-free.
    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph {
            adj,
            edges: twice / 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn vertices(&self) -> Range<usize> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges == 0
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edges == n * n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let adj = (0..n)
            .map(|v| {
                let mut out = Vec::with_capacity(n - 1 - self.degree(v));
                let mut it = self.adj[v].iter().peekable();
                for u in 0..n {
                    if it.peek() == Some(&&u) {
                        it.next();
                    } else if u != v {
                        out.push(u);
                    }
                }
                out
            })
            .collect();
        Self::from_adjacency_unchecked(adj)
    }

    /// Connected components, each sorted ascending, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<usize> {
        let n = self.vertex_count();
        self.vertices().filter(|&v| self.degree(v) + 1 == n).collect()
    }

    /// Subgraph induced by `set`. New vertex `i` corresponds to `set[i]`; the
    /// returned table is `set` itself, mapping new ids to old ones.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let n = self.vertex_count();
        let mut index = vec![usize::MAX; n];
        for (i, &v) in set.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if index[v] != usize::MAX {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} listed twice in induced subgraph"
                )));
            }
            index[v] = i;
        }
        let adj = set
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        Ok((Self::from_adjacency_unchecked(adj), set.to_vec()))
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count());
        let mut adj = vec![Vec::new(); perm.len()];
        for (v, list) in self.adj.iter().enumerate() {
            adj[perm[v]] = list.iter().map(|&w| perm[w]).collect();
        }
        Self::from_adjacency_unchecked(adj)
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|list| list.iter().map(|&w| w + shift).collect()),
        );
        Graph {
            adj,
            edges: self.edges + other.edges,
        }
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let (a, b) = (self.vertex_count(), other.vertex_count());
        let mut adj = self.disjoint_union(other).adj;
        for (v, list) in adj.iter_mut().enumerate() {
            if v < a {
                list.extend(a..a + b);
            } else {
                list.extend(0..a);
            }
        }
        Self::from_adjacency_unchecked(adj)
    }

    /// Largest distance inside a component, or `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best = 0;
        for s in 0..n {
            let dist = self.bfs_distances(s);
            for d in dist {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn bfs_distances(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        // P4 0-1-2-3 complements to the path 1-3-0-2.
        let p4c = Graph::path(4).complement();
        assert_eq!(p4c, Graph::from_edges(4, [(1, 3), (3, 0), (0, 2)]).unwrap());
        // C4 complements to the perfect matching on opposite corners.
        assert_eq!(
            Graph::cycle(4).complement(),
            Graph::from_edges(4, [(0, 2), (1, 3)]).unwrap()
        );
    }

    #[test]
    fn components_examples() {
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(Graph::complete(4).components(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(Graph::empty(3).components(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn induced_subgraph_examples() {
        let (k3, table) = named::butterfly().induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(table, vec![0, 1, 2]);
        let g = named::paw();
        let all: Vec<usize> = g.vertices().collect();
        assert_eq!(g.induced_subgraph(&all).unwrap().0, g);
        let (ends, _) = Graph::path(4).induced_subgraph(&[0, 3]).unwrap();
        assert_eq!(ends, Graph::empty(2));
        assert!(g.induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn join_and_union() {
        let k1 = Graph::empty(1);
        let k2 = Graph::complete(2);
        let butterfly = k1.join(&k2.disjoint_union(&k2));
        assert_eq!(butterfly, named::butterfly());
        assert_eq!(butterfly.universal_vertices(), vec![0]);
        assert_eq!(butterfly.diameter(), Some(2));
        assert_eq!(Graph::empty(2).diameter(), None);
    }
}
