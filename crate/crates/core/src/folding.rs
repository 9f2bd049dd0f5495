//! Simple folds, fold sequences and folding numbers.
//!
//! A simple fold identifies two vertices at distance two. The folding
//! number `Σ(G)` is the largest `s` such that a sequence of simple folds
//! turns `G` into `K_s`; for disconnected graphs it is the maximum over the
//! components.

use serde::{Deserialize, Serialize};

use crate::cotree::build_cotree;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{self, canon::are_isomorphic, SearchBudget};
use crate::threshold::is_threshold;

/// Pairs `(x, y)` in the labeling of the graph current at that step:
/// `y` is merged into `x` and every vertex above `y` shifts down by one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FoldSequence(pub Vec<(usize, usize)>);

impl FoldSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Color classes of a complete coloring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CompleteColoring(pub Vec<Vec<usize>>);

impl CompleteColoring {
    pub fn classes(&self) -> usize {
        self.0.len()
    }

    /// Partition of `V(g)` into independent classes, every two of them
    /// joined by an edge.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        let mut color = vec![usize::MAX; n];
        for (c, class) in self.0.iter().enumerate() {
            if class.is_empty() {
                return false;
            }
            for &v in class {
                if v >= n || color[v] != usize::MAX {
                    return false;
                }
                color[v] = c;
            }
        }
        if color.contains(&usize::MAX) {
            return false;
        }
        let k = self.0.len();
        let mut seen = vec![false; k * k];
        for (u, v) in g.edges() {
            let (a, b) = (color[u], color[v]);
            if a == b {
                return false;
            }
            seen[a * k + b] = true;
            seen[b * k + a] = true;
        }
        (0..k).all(|a| (0..k).all(|b| a == b || seen[a * k + b]))
    }
}

/// A folding onto `K_number` of the component `G[component]`; the sequence
/// is written in the labeling of that induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Folding {
    pub number: usize,
    pub component: Vec<usize>,
    pub sequence: FoldSequence,
}

impl Folding {
    pub fn verify(&self, g: &Graph) -> bool {
        match g.induced_subgraph(&self.component) {
            Ok((sub, _)) => verify_fold_sequence(&sub, &self.sequence, &Graph::complete(self.number)),
            Err(_) => false,
        }
    }
}

/// Identifies `y` with `x`. Fails unless the two are at distance exactly two.
pub fn apply_fold(g: &Graph, x: usize, y: usize) -> Result<Graph> {
    let n = g.vertex_count();
    for v in [x, y] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let common = g.neighbors(x).iter().any(|&w| g.has_edge(w, y));
    if x == y || g.has_edge(x, y) || !common {
        return Err(Error::NotDistanceTwo { x, y });
    }
    let shift = |v: usize| if v > y { v - 1 } else { v };
    let edges = g
        .edges()
        .map(|(a, b)| (if a == y { x } else { a }, if b == y { x } else { b }))
        .map(|(a, b)| (shift(a), shift(b)));
    let mut edges: Vec<(usize, usize)> = edges.map(|(a, b)| (a.min(b), a.max(b))).collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n - 1, edges)
}

/// True iff every step is a legal simple fold and the result is isomorphic
/// to `target`.
pub fn verify_fold_sequence(g: &Graph, seq: &FoldSequence, target: &Graph) -> bool {
    let mut cur = g.clone();
    for &(x, y) in &seq.0 {
        match apply_fold(&cur, x, y) {
            Ok(next) => cur = next,
            Err(_) => return false,
        }
    }
    if target.is_complete() {
        cur.vertex_count() == target.vertex_count() && cur.is_complete()
    } else {
        are_isomorphic(&cur, target)
    }
}

/// Folds each class of `classes` into its first member. Every step is
/// checked; the classes must be independent and have common neighbors along
/// the way.
pub(crate) fn fold_classes(g: &Graph, classes: &[Vec<usize>]) -> Result<FoldSequence> {
    let n = g.vertex_count();
    let mut cur = g.clone();
    // Current id of each original vertex.
    let mut pos: Vec<usize> = (0..n).collect();
    let mut seq = Vec::new();
    for class in classes {
        let Some((&head, rest)) = class.split_first() else {
            continue;
        };
        for &v in rest {
            let (x, y) = (pos[head], pos[v]);
            cur = apply_fold(&cur, x, y)?;
            seq.push((x, y));
            for p in pos.iter_mut() {
                if *p > y {
                    *p -= 1;
                }
            }
            pos[v] = x;
        }
    }
    Ok(FoldSequence(seq))
}

/// Folding number of a threshold graph, which equals its chromatic number.
/// The sequence folds each class of an optimal coloring of the largest
/// component into one vertex.
pub fn threshold_folding_number(g: &Graph) -> Result<Folding> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !is_threshold(g) {
        return Err(Error::NotThreshold);
    }
    let component = g
        .components()
        .into_iter()
        .max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))
        .expect("nonempty graph");
    let (sub, _) = g.induced_subgraph(&component)?;
    let t = build_cotree(&sub)?;
    let chi = t.chromatic_number();
    let mut classes = vec![Vec::new(); chi];
    for (v, c) in t.coloring().into_iter().enumerate() {
        classes[c].push(v);
    }
    let folding = match fold_classes(&sub, &classes) {
        Ok(sequence) => Folding {
            number: chi,
            component: component.clone(),
            sequence,
        },
        Err(_) => {
            let mut f = oracle::brute_folding_number(&sub, &SearchBudget::folding())?;
            f.component = component.clone();
            f
        }
    };
    if !verify_fold_sequence(&sub, &folding.sequence, &Graph::complete(folding.number)) {
        return Err(Error::InvalidArgument(
            "constructed fold sequence does not verify".into(),
        ));
    }
    Ok(folding)
}

/// Folding number of a graph with a universal vertex: the achromatic
/// number, computed as the number of universal vertices plus the achromatic
/// number of what remains after removing them. The sequence folds each class
/// of the resulting complete coloring into one vertex.
pub fn folding_number_universal(g: &Graph, budget: &SearchBudget) -> Result<Folding> {
    let universal = g.universal_vertices();
    if universal.is_empty() {
        return Err(Error::NoUniversalVertex);
    }
    let rest: Vec<usize> = g.vertices().filter(|v| !universal.contains(v)).collect();
    let (residual, back) = g.induced_subgraph(&rest)?;
    let (psi, coloring) = oracle::brute_achromatic(&residual, budget)?;
    let mut classes: Vec<Vec<usize>> = universal.iter().map(|&u| vec![u]).collect();
    classes.extend(
        coloring
            .0
            .iter()
            .map(|class| class.iter().map(|&v| back[v]).collect()),
    );
    let sequence = fold_classes(g, &classes)?;
    Ok(Folding {
        number: universal.len() + psi,
        component: g.vertices().collect(),
        sequence,
    })
}

/// Folding number of any graph: threshold components and components with a
/// universal vertex use the fast routes, the rest go to exhaustive search.
pub fn folding_number(g: &Graph, budget: &SearchBudget) -> Result<Folding> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut best: Option<Folding> = None;
    for component in g.components() {
        let (sub, _) = g.induced_subgraph(&component)?;
        let mut f = if is_threshold(&sub) {
            threshold_folding_number(&sub)?
        } else if !sub.universal_vertices().is_empty() {
            folding_number_universal(&sub, budget)?
        } else {
            oracle::brute_folding_number(&sub, budget)?
        };
        f.component = component;
        if best.as_ref().is_none_or(|b| f.number > b.number) {
            best = Some(f);
        }
    }
    Ok(best.expect("at least one component"))
}
