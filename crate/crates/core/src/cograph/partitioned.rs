//! The partitioned case: `H` is given as a vertex subset of `G`, and the
//! co-retraction is the inclusion.
//!
//! Union children without vertices of `H` are pruned when their clique
//! number is at most that of a sibling. Pruning inside a branch without
//! `H`-vertices never lowers its clique number (only non-maximal children
//! go), and a branch with `H`-vertices ends up, if the answer is positive,
//! as exactly its `H`-part. So each union is settled in one bottom-up
//! visit: a free child survives only when its clique number beats every
//! sibling's `H`-part, and then the answer is NO.

use crate::certificate::{NoReason, RetractCertificate, Verdict, VertexMap};
use crate::cotree::{build_cotree, Cotree, Kind, Node, NodeId};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct PartitionedInstance {
    pub graph: Graph,
    /// Sorted vertex set inducing `H`.
    pub hset: Vec<usize>,
}

impl PartitionedInstance {
    pub fn new(graph: Graph, hset: &[usize]) -> Result<Self> {
        let n = graph.vertex_count();
        let mut set = hset.to_vec();
        set.sort_unstable();
        for w in set.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidArgument(format!("vertex {} listed twice", w[0])));
            }
        }
        if let Some(&v) = set.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        Ok(PartitionedInstance { graph, hset: set })
    }

    /// The pattern `G[hset]`; vertex `i` is `hset[i]`.
    pub fn pattern(&self) -> Graph {
        self.graph
            .induced_subgraph(&self.hset)
            .expect("validated set")
            .0
    }
}

/// Decides whether `G[hset]` is a retract of `G` via a retraction fixing
/// `hset` pointwise. The certificate is stated for the pattern graph
/// returned by [`PartitionedInstance::pattern`].
pub fn partitioned_retract(inst: &PartitionedInstance) -> Result<Verdict> {
    let t = build_cotree(&inst.graph)?;
    Ok(partitioned_on_cotree(&t, &inst.hset))
}

pub(crate) fn partitioned_on_cotree(t: &Cotree, hset: &[usize]) -> Verdict {
    let n = t.vertex_count();
    let mut in_h = vec![false; n];
    for &v in hset {
        in_h[v] = true;
    }
    let len = t.node_count();
    // Clique number of the H-part below each node; zero means no H-vertex.
    let mut omega_h = vec![0usize; len];
    for id in 0..len {
        omega_h[id] = match t.node(id) {
            Node::Leaf(v) => in_h[*v] as usize,
            Node::Internal { kind, children } => {
                let it = children.iter().map(|&c| omega_h[c]);
                match kind {
                    Kind::Union => it.max().unwrap_or(0),
                    Kind::Join => it.sum(),
                }
            }
        };
    }
    let root = t.root();
    if omega_h[root] == 0 {
        return Verdict::No(NoReason::Leftover {
            vertex: t.first_leaf(root),
        });
    }
    // Pruned branch -> sibling whose H-part receives it.
    let mut pruned: Vec<(NodeId, NodeId)> = Vec::new();
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        let Node::Internal { kind, children } = t.node(id) else {
            continue;
        };
        let anchored: Vec<NodeId> = children.iter().copied().filter(|&c| omega_h[c] > 0).collect();
        for &c in children {
            if omega_h[c] > 0 {
                stack.push(c);
                continue;
            }
            let target = match kind {
                Kind::Join => None,
                Kind::Union => anchored
                    .iter()
                    .copied()
                    .find(|&s| omega_h[s] >= t.omega(c)),
            };
            match target {
                Some(s) => pruned.push((c, s)),
                None => {
                    return Verdict::No(NoReason::Leftover {
                        vertex: t.first_leaf(c),
                    })
                }
            }
        }
    }
    let mut index = vec![usize::MAX; n];
    for (i, &v) in hset.iter().enumerate() {
        index[v] = i;
    }
    let mut rho = vec![usize::MAX; n];
    for &v in hset {
        rho[v] = index[v];
    }
    for (branch, target) in pruned {
        let clique = max_clique_within(t, target, &in_h, &omega_h);
        for (v, col) in t.subtree_coloring(branch) {
            rho[v] = index[clique[col]];
        }
    }
    Verdict::Yes(RetractCertificate {
        rho: VertexMap(rho),
        gamma: VertexMap(hset.to_vec()),
    })
}

/// Maximum clique of the `H`-part below `id`.
fn max_clique_within(t: &Cotree, id: NodeId, in_h: &[bool], omega_h: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![id];
    while let Some(p) = stack.pop() {
        match t.node(p) {
            Node::Leaf(v) => {
                if in_h[*v] {
                    out.push(*v);
                }
            }
            Node::Internal {
                kind: Kind::Join,
                children,
            } => stack.extend(children.iter().copied().filter(|&c| omega_h[c] > 0)),
            Node::Internal {
                kind: Kind::Union,
                children,
            } => {
                let best = children
                    .iter()
                    .copied()
                    .max_by_key(|&c| (omega_h[c], std::cmp::Reverse(c)))
                    .expect("internal nodes have children");
                stack.push(best);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_retract_certificate;
    use crate::named;

    fn run(g: Graph, hset: &[usize]) -> Verdict {
        let inst = PartitionedInstance::new(g, hset).unwrap();
        let v = partitioned_retract(&inst).unwrap();
        if let Verdict::Yes(c) = &v {
            assert!(verify_retract_certificate(&inst.graph, &inst.pattern(), c));
            for (i, &x) in inst.hset.iter().enumerate() {
                assert_eq!(c.rho.get(x), i);
            }
        }
        v
    }

    #[test]
    fn butterfly_examples() {
        assert!(run(named::butterfly(), &[0, 1, 2]).is_yes());
        assert_eq!(
            run(named::butterfly(), &[0, 1, 2, 3]),
            Verdict::No(NoReason::Leftover { vertex: 4 })
        );
        assert_eq!(
            run(named::butterfly(), &[0, 1, 2, 3, 4]),
            Verdict::Yes(RetractCertificate::identity(5))
        );
    }

    #[test]
    fn other_examples() {
        // C4 onto one edge.
        assert!(run(Graph::cycle(4), &[0, 1]).is_yes());
        // A triangle never retracts to an edge.
        assert!(!run(Graph::complete(3), &[0, 1]).is_yes());
        // Isolated vertices fold onto anything.
        assert!(run(Graph::empty(3), &[1]).is_yes());
        assert!(!run(Graph::empty(3), &[]).is_yes());
        assert!(PartitionedInstance::new(Graph::empty(2), &[0, 0]).is_err());
        assert!(PartitionedInstance::new(Graph::empty(2), &[2]).is_err());
    }
}
