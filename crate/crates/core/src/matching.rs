//! Maximum bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteInstance {
    left: usize,
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteInstance {
    /// `edges` are `(left, right)` pairs; duplicates are dropped.
    pub fn new<I>(left: usize, right: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); left];
        for (u, v) in edges {
            if u >= left || v >= right {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) outside a {left} x {right} bipartite graph"
                )));
            }
            adj[u].push(v);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(BipartiteInstance { left, right, adj })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }
}

/// Matched `(left, right)` pairs, sorted by left endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching(pub Vec<(usize, usize)>);

impl Matching {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Partner of each right vertex, if any.
    pub fn right_partners(&self, right: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; right];
        for &(u, v) in &self.0 {
            out[v] = Some(u);
        }
        out
    }
}

const FREE: usize = usize::MAX;

pub fn max_matching(inst: &BipartiteInstance) -> Matching {
    let (p, q) = (inst.left, inst.right);
    let mut mate_l = vec![FREE; p];
    let mut mate_r = vec![FREE; q];
    let mut dist = vec![0usize; p];
    let mut queue = VecDeque::new();
    loop {
        // BFS from free left vertices builds the layered graph.
        queue.clear();
        let mut found = false;
        for u in 0..p {
            if mate_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &inst.adj[u] {
                let w = mate_r[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        // Vertex-disjoint shortest augmenting paths, found by iterative DFS.
        let mut next = vec![0usize; p];
        for s in 0..p {
            if mate_l[s] != FREE {
                continue;
            }
            let mut path = vec![s];
            while let Some(&u) = path.last() {
                if next[u] == inst.adj[u].len() {
                    dist[u] = usize::MAX;
                    path.pop();
                    continue;
                }
                let v = inst.adj[u][next[u]];
                next[u] += 1;
                let w = mate_r[v];
                if w == FREE {
                    // Augment along the path; each left vertex on it takes
                    // the right vertex it last tried.
                    let mut right = v;
                    while let Some(x) = path.pop() {
                        let prev = mate_l[x];
                        mate_l[x] = right;
                        mate_r[right] = x;
                        right = prev;
                    }
                    break;
                } else if dist[w] == dist[u] + 1 {
                    path.push(w);
                }
            }
        }
    }
    Matching(
        (0..p)
            .filter(|&u| mate_l[u] != FREE)
            .map(|u| (u, mate_l[u]))
            .collect(),
    )
}

/// Every right vertex `0..right` is matched.
pub fn saturates_right(m: &Matching, right: usize) -> bool {
    let mut hit = vec![false; right];
    for &(_, v) in &m.0 {
        if v < right {
            hit[v] = true;
        }
    }
    hit.into_iter().all(|h| h)
}
