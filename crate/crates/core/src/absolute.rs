//! Absolute retracts among connected cographs: `H` is one iff every vertex
//! lies in a clique of size `ω(H)`. When some vertex does not, adding a true
//! twin inside a deficient union branch gives a cograph containing `H` with
//! the same clique number that does not retract to it.

use crate::certificate::Verdict;
use crate::cograph::partitioned::partitioned_on_cotree;
use crate::cotree::{build_cotree, Cotree, Kind, NodeId};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbsoluteVerdict {
    /// `cliques[v]` is a maximum clique containing `v`.
    Absolute { cliques: Vec<Vec<usize>> },
    /// `vertex` is in no maximum clique; `supergraph` contains `H` as the
    /// subgraph induced by its first `|V(H)|` vertices, has the same clique
    /// number, and does not retract to `H`.
    NotAbsolute { vertex: usize, supergraph: Graph },
}

impl AbsoluteVerdict {
    pub fn is_absolute(&self) -> bool {
        matches!(self, AbsoluteVerdict::Absolute { .. })
    }
}

fn connected_cotree(h: &Graph) -> Result<Cotree> {
    let t = build_cotree(h)?;
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(t)
}

/// First vertex not in any maximum clique, with the union node below which
/// it falls short (the deepest such ancestor) and the child on its path.
fn deficiency(t: &Cotree) -> Option<(usize, NodeId, NodeId)> {
    for v in 0..t.vertex_count() {
        let mut child = t.leaf_node(v);
        let mut found = None;
        while let Some(p) = t.parent(child) {
            if t.kind(p) == Some(Kind::Union) {
                let best = t.children(p).iter().map(|&c| t.omega(c)).max().unwrap_or(0);
                if t.omega(child) < best && found.is_none() {
                    found = Some((v, p, child));
                }
            }
            child = p;
        }
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Maximum clique through `v`: at every join ancestor, add a maximum clique
/// of each sibling branch.
fn clique_through(t: &Cotree, v: usize) -> Vec<usize> {
    let mut clique = vec![v];
    let mut child = t.leaf_node(v);
    while let Some(p) = t.parent(child) {
        if t.kind(p) == Some(Kind::Join) {
            for &s in t.children(p) {
                if s != child {
                    clique.extend(t.max_clique(s));
                }
            }
        }
        child = p;
    }
    clique.sort_unstable();
    clique
}

pub fn is_absolute_retract(h: &Graph) -> Result<AbsoluteVerdict> {
    let t = connected_cotree(h)?;
    match deficiency(&t) {
        None => Ok(AbsoluteVerdict::Absolute {
            cliques: (0..h.vertex_count()).map(|v| clique_through(&t, v)).collect(),
        }),
        Some((vertex, _, branch)) => Ok(AbsoluteVerdict::NotAbsolute {
            vertex,
            supergraph: add_twin(h, &t, branch),
        }),
    }
}

/// Adds a true twin of the lowest vertex of a maximum clique of the
/// deficient branch. That branch gains one in clique number but stays below
/// its best sibling, so `ω` is unchanged.
fn add_twin(h: &Graph, t: &Cotree, branch: NodeId) -> Graph {
    let n = h.vertex_count();
    let w = *t.max_clique(branch).iter().min().expect("nonempty branch");
    let edges = h
        .edges()
        .chain(h.neighbors(w).iter().map(|&x| (x, n)))
        .chain([(w, n)]);
    Graph::from_edges(n + 1, edges.collect::<Vec<_>>()).expect("valid edges")
}

/// The supergraph from [`is_absolute_retract`], checked with the
/// partitioned solver before it is returned.
pub fn counterexample_embedding(h: &Graph) -> Result<Graph> {
    let AbsoluteVerdict::NotAbsolute { supergraph, .. } = is_absolute_retract(h)? else {
        return Err(Error::AlreadyAbsolute);
    };
    let tg = build_cotree(&supergraph)?;
    let hset: Vec<usize> = h.vertices().collect();
    let th = build_cotree(h)?;
    assert_eq!(tg.clique_number(), th.clique_number());
    assert!(
        matches!(partitioned_on_cotree(&tg, &hset), Verdict::No(_)),
        "twin insertion must block every retraction"
    );
    Ok(supergraph)
}
