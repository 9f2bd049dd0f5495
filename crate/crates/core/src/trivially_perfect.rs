//! Retracts between trivially perfect graphs.
//!
//! In the normalized cotree of a trivially perfect graph every join node has
//! at most one non-leaf child, so a connected component is a set of
//! universal vertices (the leaf children) on top of a smaller forest (the
//! union child). Two connected components are compared by pairing universal
//! vertices and recursing into the forests; forests are compared through a
//! bipartite matching of their components.

use std::collections::HashMap;

use crate::certificate::{NoReason, RetractCertificate, Verdict, VertexMap};
use crate::cotree::{build_cotree, CanonicalForms, Cotree, Kind, Node, NodeId};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{max_matching, saturates_right, BipartiteInstance};

/// Vertices adjacent to every other vertex.
pub fn universal_vertices(g: &Graph) -> Vec<usize> {
    g.universal_vertices()
}

/// Cotree plus, for each join node, its leaf children and its union child.
struct Side<'a> {
    tree: &'a Cotree,
    univ: HashMap<NodeId, Vec<usize>>,
    rest: HashMap<NodeId, NodeId>,
    class: Vec<u32>,
}

impl<'a> Side<'a> {
    fn new(tree: &'a Cotree, forms: &mut CanonicalForms) -> Result<Self> {
        let mut univ = HashMap::new();
        let mut rest = HashMap::new();
        for id in 0..tree.node_count() {
            if tree.kind(id) != Some(Kind::Join) {
                continue;
            }
            let mut leaves = Vec::new();
            for &c in tree.children(id) {
                match tree.leaf_vertex(c) {
                    Some(v) => leaves.push(v),
                    None => {
                        if rest.insert(id, c).is_some() {
                            return Err(Error::NotTriviallyPerfect);
                        }
                    }
                }
            }
            univ.insert(id, leaves);
        }
        Ok(Side {
            tree,
            univ,
            rest,
            class: forms.classify(tree),
        })
    }

    /// Components of the subgraph below `id`.
    fn components(&self, id: NodeId) -> Vec<Comp> {
        match self.tree.kind(id) {
            Some(Kind::Union) => self
                .tree
                .children(id)
                .iter()
                .map(|&c| Comp { node: c, skip: 0 })
                .collect(),
            _ => vec![Comp { node: id, skip: 0 }],
        }
    }

    fn universals(&self, c: Comp) -> &[usize] {
        match self.univ.get(&c.node) {
            Some(list) => &list[c.skip..],
            None => match self.tree.node(c.node) {
                Node::Leaf(v) => &std::slice::from_ref(v)[c.skip..],
                Node::Internal { .. } => unreachable!("components are leaves or joins"),
            },
        }
    }

    fn rest(&self, c: Comp) -> Option<NodeId> {
        self.rest.get(&c.node).copied()
    }

    fn omega(&self, c: Comp) -> usize {
        self.tree.omega(c.node) - c.skip
    }

    fn size(&self, c: Comp) -> usize {
        self.tree.leaf_count(c.node) - c.skip
    }

    fn key(&self, c: Comp) -> (u32, usize) {
        (self.class[c.node], c.skip)
    }

    /// A maximum clique of the component: its universal vertices plus a
    /// maximum clique of the forest below.
    fn max_clique(&self, c: Comp) -> Vec<usize> {
        let mut q = self.universals(c).to_vec();
        if let Some(r) = self.rest(c) {
            q.extend(self.tree.max_clique(r));
        }
        q
    }
}

/// A connected piece of one side: the node of a leaf or join, with the
/// first `skip` universal leaves removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Comp {
    node: NodeId,
    skip: usize,
}

type Key = ((u32, usize), (u32, usize));

struct Solver<'a> {
    g: Side<'a>,
    h: Side<'a>,
    memo: HashMap<Key, Result<(), NoReason>>,
}

impl Solver<'_> {
    /// Is connected piece `d` of H a retract of connected piece `c` of G?
    fn conn(&mut self, c: Comp, d: Comp) -> Result<(), NoReason> {
        let key = (self.g.key(c), self.h.key(d));
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = self.conn_uncached(c, d);
        self.memo.insert(key, r);
        r
    }

    fn conn_uncached(&mut self, c: Comp, d: Comp) -> Result<(), NoReason> {
        if self.g.size(c) < self.h.size(d) {
            return Err(NoReason::TooLarge);
        }
        if self.g.omega(c) != self.h.omega(d) {
            return Err(NoReason::CliqueMismatch);
        }
        let k = self.g.universals(c).len();
        let l = self.h.universals(d).len();
        if l < k {
            return Err(NoReason::UniversalCount);
        }
        let Some(_) = self.h.rest(d) else {
            // H is a clique of the same clique number.
            return Ok(());
        };
        let (gs, hs) = self.strip(c, d, k, l);
        self.forest(&gs, &hs)
    }

    /// Both sides after removing `k` universal vertices from each.
    fn strip(&self, c: Comp, d: Comp, k: usize, l: usize) -> (Vec<Comp>, Vec<Comp>) {
        let gs = match self.g.rest(c) {
            Some(r) => self.g.components(r),
            None => Vec::new(),
        };
        let hs = if l > k {
            vec![Comp {
                node: d.node,
                skip: d.skip + k,
            }]
        } else {
            self.h.components(self.h.rest(d).expect("H is not a clique here"))
        };
        (gs, hs)
    }

    fn forest(&mut self, gs: &[Comp], hs: &[Comp]) -> Result<(), NoReason> {
        if gs.len() < hs.len() {
            return Err(NoReason::ComponentCount);
        }
        if let ([c], [d]) = (gs, hs) {
            return self.conn(*c, *d);
        }
        self.matching(gs, hs)?;
        let top = hs.iter().map(|&d| self.h.omega(d)).max().unwrap_or(0);
        if gs.iter().any(|&c| self.g.omega(c) > top) {
            return Err(NoReason::UnmatchedComponent);
        }
        Ok(())
    }

    /// Maximum matching between components of G and H along retract
    /// edges; fails unless it covers H.
    fn matching(
        &mut self,
        gs: &[Comp],
        hs: &[Comp],
    ) -> Result<Vec<Option<usize>>, NoReason> {
        let mut edges = Vec::new();
        for (i, &c) in gs.iter().enumerate() {
            for (j, &d) in hs.iter().enumerate() {
                if self.conn(c, d).is_ok() {
                    edges.push((i, j));
                }
            }
        }
        let inst = BipartiteInstance::new(gs.len(), hs.len(), edges).expect("indices in range");
        let m = max_matching(&inst);
        if !saturates_right(&m, hs.len()) {
            return Err(NoReason::MatchingDeficit);
        }
        let mut partner = vec![None; gs.len()];
        for &(i, j) in &m.0 {
            partner[i] = Some(j);
        }
        Ok(partner)
    }

    fn build_conn(&mut self, c: Comp, d: Comp, rho: &mut [usize], gamma: &mut [usize]) {
        let k = self.g.universals(c).len();
        let l = self.h.universals(d).len();
        if self.h.rest(d).is_none() {
            clique_certificate(&self.g, c, self.h.universals(d), rho, gamma);
            return;
        }
        for (&x, &y) in self.g.universals(c).iter().zip(self.h.universals(d)) {
            rho[x] = y;
            gamma[y] = x;
        }
        let (gs, hs) = self.strip(c, d, k, l);
        self.build_forest(&gs, &hs, rho, gamma);
    }

    fn build_forest(&mut self, gs: &[Comp], hs: &[Comp], rho: &mut [usize], gamma: &mut [usize]) {
        if let ([c], [d]) = (gs, hs) {
            self.build_conn(*c, *d, rho, gamma);
            return;
        }
        let partner = self.matching(gs, hs).expect("replaying a positive decision");
        for (i, &c) in gs.iter().enumerate() {
            match partner[i] {
                Some(j) => self.build_conn(c, hs[j], rho, gamma),
                None => {
                    let target = hs
                        .iter()
                        .copied()
                        .find(|&d| self.h.omega(d) >= self.g.omega(c))
                        .expect("replaying a positive decision");
                    let clique = self.h.max_clique(target);
                    for (v, col) in self.g.tree.subtree_coloring(c.node) {
                        rho[v] = clique[col];
                    }
                }
            }
        }
    }
}

/// `H`-side clique `ys` with `|ys| = ω(c)`: color `c` optimally and send
/// each color class to one vertex of `ys`, matching a maximum clique of `c`
/// to `ys` so that `rho ∘ gamma = id`.
fn clique_certificate(g: &Side, c: Comp, ys: &[usize], rho: &mut [usize], gamma: &mut [usize]) {
    debug_assert_eq!(c.skip, 0);
    let coloring = g.tree.subtree_coloring(c.node);
    let mut color = HashMap::with_capacity(coloring.len());
    for &(v, col) in &coloring {
        color.insert(v, col);
    }
    let q = g.tree.max_clique(c.node);
    let mut target = vec![usize::MAX; ys.len()];
    for (i, &x) in q.iter().enumerate() {
        target[color[&x]] = ys[i];
        gamma[ys[i]] = x;
    }
    for (v, col) in coloring {
        rho[v] = target[col];
    }
}

/// Decides whether trivially perfect `h` is a retract of trivially perfect
/// `g`.
pub fn tp_retract(g: &Graph, h: &Graph) -> Result<Verdict> {
    let tg = tp_cotree(g)?;
    let th = tp_cotree(h)?;
    tp_retract_cotrees(&tg, &th)
}

fn tp_cotree(g: &Graph) -> Result<Cotree> {
    let t = match build_cotree(g) {
        Ok(t) => t,
        Err(Error::NotCograph(_)) => return Err(Error::NotTriviallyPerfect),
        Err(e) => return Err(e),
    };
    if !t.is_trivially_perfect() {
        return Err(Error::NotTriviallyPerfect);
    }
    Ok(t)
}

/// Same as [`tp_retract`] on normalized cotrees.
pub fn tp_retract_cotrees(tg: &Cotree, th: &Cotree) -> Result<Verdict> {
    if th.vertex_count() > tg.vertex_count() {
        return Ok(Verdict::No(NoReason::TooLarge));
    }
    if tg.clique_number() != th.clique_number() {
        return Ok(Verdict::No(NoReason::CliqueMismatch));
    }
    let mut forms = CanonicalForms::new();
    let mut s = Solver {
        g: Side::new(tg, &mut forms)?,
        h: Side::new(th, &mut forms)?,
        memo: HashMap::new(),
    };
    let gs = s.g.components(tg.root());
    let hs = s.h.components(th.root());
    if let Err(reason) = s.forest(&gs, &hs) {
        return Ok(Verdict::No(match reason {
            NoReason::ComponentCount if gs.len() == 1 => NoReason::ConnectedToDisconnected,
            r => r,
        }));
    }
    let mut rho = vec![usize::MAX; tg.vertex_count()];
    let mut gamma = vec![usize::MAX; th.vertex_count()];
    s.build_forest(&gs, &hs, &mut rho, &mut gamma);
    Ok(Verdict::Yes(RetractCertificate {
        rho: VertexMap(rho),
        gamma: VertexMap(gamma),
    }))
}
