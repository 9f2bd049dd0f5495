//! Seeded random graphs from the classes handled here. The same `(n, seed)`
//! always gives the same graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cotree::{Cotree, CotreeBuilder, Kind, NodeId};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn check(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("need at least one vertex".into()))
    } else {
        Ok(())
    }
}

/// Splits `n >= 2` into at least two positive parts.
fn split(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    loop {
        let mut parts = Vec::new();
        let mut cur = 1;
        for _ in 1..n {
            if rng.gen_bool(0.5) {
                parts.push(cur);
                cur = 1;
            } else {
                cur += 1;
            }
        }
        parts.push(cur);
        if parts.len() >= 2 {
            return parts;
        }
    }
}

/// Size, kind, and the slot to patch with the built child.
type Pending = (usize, Kind, Option<(NodeId, usize)>);

/// Random cotree with `n` shuffled leaves. `root` fixes the kind at the top
/// when `n >= 2`.
pub fn random_cotree(n: usize, seed: u64, root: Option<Kind>) -> Result<Cotree> {
    check(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let top = root.unwrap_or(if rng.gen_bool(0.5) { Kind::Join } else { Kind::Union });
    let mut b = CotreeBuilder::new();
    let mut next = 0;
    let mut pending: Vec<Pending> = vec![(n, top, None)];
    let mut root_id = None;
    let mut children_of: Vec<Vec<NodeId>> = Vec::new();
    let mut arena_of: Vec<NodeId> = Vec::new();
    while let Some((size, kind, slot)) = pending.pop() {
        let id = if size == 1 {
            next += 1;
            b.leaf(labels[next - 1])
        } else {
            let parts = split(size, &mut rng);
            let id = b.internal(kind, Vec::new());
            let pos = children_of.len();
            children_of.push(vec![usize::MAX; parts.len()]);
            arena_of.push(id);
            for (i, p) in parts.into_iter().enumerate() {
                pending.push((p, kind.flip(), Some((pos, i))));
            }
            id
        };
        match slot {
            Some((pos, i)) => children_of[pos][i] = id,
            None => root_id = Some(id),
        }
    }
    for (pos, children) in children_of.into_iter().enumerate() {
        b.set_children(arena_of[pos], children);
    }
    b.finish(root_id.expect("root was built"))
}

pub fn random_cograph(n: usize, seed: u64) -> Result<Graph> {
    Ok(random_cotree(n, seed, None)?.to_graph())
}

/// Random cograph that is connected (a join at the root) when `n >= 2`.
pub fn random_connected_cograph(n: usize, seed: u64) -> Result<Graph> {
    Ok(random_cotree(n, seed, Some(Kind::Join))?.to_graph())
}

/// Threshold graph from a random elimination sequence: vertices arrive one
/// at a time and each is dominating with probability `p`, isolated
/// otherwise. About `p n² / 2` edges.
pub fn random_threshold(n: usize, seed: u64, p: f64) -> Result<Graph> {
    check(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("probability {p} out of range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(p) {
            edges.extend((0..v).map(|u| (labels[u], labels[v])));
        }
    }
    Graph::from_edges(n, edges)
}

/// Random trivially perfect graph: a union of components, each a clique
/// joined to a smaller trivially perfect graph. Splits are roughly even so
/// the nesting depth stays logarithmic.
pub fn random_tp(n: usize, seed: u64) -> Result<Graph> {
    check(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let mut edges = Vec::new();
    // (vertex range start, size, connected)
    let mut stack = vec![(0usize, n, rng.gen_bool(0.5))];
    while let Some((start, size, connected)) = stack.pop() {
        if size == 1 {
            continue;
        }
        if connected {
            let k = rng.gen_range(1..=size.div_ceil(4).max(1));
            let k = k.min(size - 1);
            for u in start..start + k {
                for v in u + 1..start + size {
                    edges.push((labels[u], labels[v]));
                }
            }
            stack.push((start + k, size - k, false));
        } else {
            let parts = rng.gen_range(2..=size.min(4));
            let mut at = start;
            for i in 0..parts {
                let len = size / parts + usize::from(i < size % parts);
                stack.push((at, len, true));
                at += len;
            }
        }
    }
    Graph::from_edges(n, edges)
}
