//! Cotrees: recognition, normalization, clique and coloring data, canonical
//! forms and the `J(..)`/`U(..)` text syntax.
//!
//! Nodes live in an arena in post-order, so the root is the last node and
//! the subtree of node `id` occupies the contiguous id range
//! `id + 1 - span(id) ..= id`. Bottom-up passes are plain forward loops.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    /// Disjoint union, written `U`.
    Union,
    /// Join, written `J`.
    Join,
}

impl Kind {
    pub fn flip(self) -> Kind {
        match self {
            Kind::Union => Kind::Join,
            Kind::Join => Kind::Union,
        }
    }

    fn letter(self) -> char {
        match self {
            Kind::Union => 'U',
            Kind::Join => 'J',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf(usize),
    Internal { kind: Kind, children: Vec<NodeId> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cotree {
    nodes: Vec<Node>,
    parent: Vec<Option<NodeId>>,
    span: Vec<usize>,
    leaves: Vec<usize>,
    omega: Vec<usize>,
    leaf_of: Vec<NodeId>,
}

impl Cotree {
    /// Builds a cotree from an arbitrary arena. Nodes unreachable from
    /// `root` are dropped and the rest renumbered in post-order. Internal
    /// nodes need at least one child and the leaves must carry each of
    /// `0..n` exactly once.
    pub fn from_nodes(nodes: Vec<Node>, root: NodeId) -> Result<Self> {
        if root >= nodes.len() {
            return Err(Error::InvalidCotree(format!("root {root} is not a node")));
        }
        let mut order = Vec::with_capacity(nodes.len());
        let mut seen = vec![false; nodes.len()];
        let mut stack = vec![(root, false)];
        seen[root] = true;
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                order.push(id);
                continue;
            }
            stack.push((id, true));
            if let Node::Internal { children, .. } = &nodes[id] {
                if children.is_empty() {
                    return Err(Error::InvalidCotree(format!("node {id} has no children")));
                }
                for &c in children.iter().rev() {
                    if c >= nodes.len() {
                        return Err(Error::InvalidCotree(format!("child {c} is not a node")));
                    }
                    if seen[c] {
                        return Err(Error::InvalidCotree(format!("node {c} has two parents")));
                    }
                    seen[c] = true;
                    stack.push((c, false));
                }
            }
        }
        let mut new_id = vec![usize::MAX; nodes.len()];
        for (i, &old) in order.iter().enumerate() {
            new_id[old] = i;
        }
        let mut out = Vec::with_capacity(order.len());
        for &old in &order {
            out.push(match &nodes[old] {
                Node::Leaf(v) => Node::Leaf(*v),
                Node::Internal { kind, children } => Node::Internal {
                    kind: *kind,
                    children: children.iter().map(|&c| new_id[c]).collect(),
                },
            });
        }
        Self::from_postorder(out)
    }

    fn from_postorder(nodes: Vec<Node>) -> Result<Self> {
        let len = nodes.len();
        let mut parent = vec![None; len];
        let mut span = vec![1; len];
        let mut leaves = vec![0; len];
        let mut omega = vec![0; len];
        let n = nodes.iter().filter(|n| matches!(n, Node::Leaf(_))).count();
        let mut leaf_of = vec![usize::MAX; n];
        for (id, node) in nodes.iter().enumerate() {
            match node {
                Node::Leaf(v) => {
                    if *v >= n {
                        return Err(Error::InvalidCotree(format!(
                            "leaf {v} out of range for {n} leaves"
                        )));
                    }
                    if leaf_of[*v] != usize::MAX {
                        return Err(Error::InvalidCotree(format!("leaf {v} appears twice")));
                    }
                    leaf_of[*v] = id;
                    leaves[id] = 1;
                    omega[id] = 1;
                }
                Node::Internal { kind, children } => {
                    let mut w = 0;
                    for &c in children {
                        parent[c] = Some(id);
                        span[id] += span[c];
                        leaves[id] += leaves[c];
                        w = match kind {
                            Kind::Union => w.max(omega[c]),
                            Kind::Join => w + omega[c],
                        };
                    }
                    omega[id] = w;
                }
            }
        }
        Ok(Cotree {
            nodes,
            parent,
            span,
            leaves,
            omega,
            leaf_of,
        })
    }

    /// Single-vertex cotree.
    pub fn single() -> Self {
        Self::from_postorder(vec![Node::Leaf(0)]).expect("one leaf is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.leaf_of.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> NodeId {
        self.nodes.len() - 1
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn kind(&self, id: NodeId) -> Option<Kind> {
        match &self.nodes[id] {
            Node::Leaf(_) => None,
            Node::Internal { kind, .. } => Some(*kind),
        }
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        match &self.nodes[id] {
            Node::Leaf(_) => &[],
            Node::Internal { children, .. } => children,
        }
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        matches!(self.nodes[id], Node::Leaf(_))
    }

    pub fn leaf_vertex(&self, id: NodeId) -> Option<usize> {
        match self.nodes[id] {
            Node::Leaf(v) => Some(v),
            Node::Internal { .. } => None,
        }
    }

    /// Node holding vertex `v`.
    pub fn leaf_node(&self, v: usize) -> NodeId {
        self.leaf_of[v]
    }

    /// Ids of the subtree rooted at `id`.
    pub fn subtree(&self, id: NodeId) -> RangeInclusive<NodeId> {
        id + 1 - self.span[id]..=id
    }

    pub fn contains(&self, ancestor: NodeId, id: NodeId) -> bool {
        self.subtree(ancestor).contains(&id)
    }

    /// Vertices below `id`, in post-order.
    pub fn leaves(&self, id: NodeId) -> Vec<usize> {
        self.subtree(id)
            .filter_map(|i| self.leaf_vertex(i))
            .collect()
    }

    pub fn leaf_count(&self, id: NodeId) -> usize {
        self.leaves[id]
    }

    /// Clique number of the subgraph below `id`.
    pub fn omega(&self, id: NodeId) -> usize {
        self.omega[id]
    }

    pub fn clique_number(&self) -> usize {
        self.omega[self.root()]
    }

    /// Cographs are perfect and the cotree coloring below is optimal, so
    /// this equals the clique number.
    pub fn chromatic_number(&self) -> usize {
        self.coloring().into_iter().max().map_or(0, |c| c + 1)
    }

    /// Optimal proper coloring of the whole graph, indexed by vertex.
    pub fn coloring(&self) -> Vec<usize> {
        let mut colors = vec![0; self.vertex_count()];
        for (v, c) in self.subtree_coloring(self.root()) {
            colors[v] = c;
        }
        colors
    }

    /// Proper coloring of the subgraph below `id` with `omega(id)` colors,
    /// as `(vertex, color)` pairs. Unions reuse colors across children,
    /// joins give each child a fresh block.
    pub fn subtree_coloring(&self, id: NodeId) -> Vec<(usize, usize)> {
        let range = self.subtree(id);
        let base = *range.start();
        let mut offset = vec![0; self.span[id]];
        let mut out = Vec::with_capacity(self.leaves[id]);
        for p in range.rev() {
            let o = offset[p - base];
            match &self.nodes[p] {
                Node::Leaf(v) => out.push((*v, o)),
                Node::Internal { kind, children } => {
                    let mut next = o;
                    for &c in children {
                        offset[c - base] = next;
                        if *kind == Kind::Join {
                            next += self.omega[c];
                        }
                    }
                }
            }
        }
        out
    }

    /// A maximum clique of the subgraph below `id`, sorted. At unions the
    /// first child of largest clique number is taken.
    pub fn max_clique(&self, id: NodeId) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.omega[id]);
        let mut stack = vec![id];
        while let Some(p) = stack.pop() {
            match &self.nodes[p] {
                Node::Leaf(v) => out.push(*v),
                Node::Internal {
                    kind: Kind::Join,
                    children,
                } => stack.extend(children.iter().copied()),
                Node::Internal {
                    kind: Kind::Union,
                    children,
                } => {
                    let best = children
                        .iter()
                        .copied()
                        .max_by_key(|&c| (self.omega[c], std::cmp::Reverse(c)))
                        .expect("internal nodes have children");
                    stack.push(best);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for node in &self.nodes {
            if let Node::Internal {
                kind: Kind::Join,
                children,
            } = node
            {
                let sides: Vec<Vec<usize>> = children.iter().map(|&c| self.leaves(c)).collect();
                for (i, a) in sides.iter().enumerate() {
                    for b in &sides[i + 1..] {
                        for &u in a {
                            adj[u].extend(b.iter().copied());
                        }
                        for &v in b {
                            adj[v].extend(a.iter().copied());
                        }
                    }
                }
            }
        }
        Graph::from_adjacency_unchecked(adj)
    }

    /// Every internal node has at least two children and differs in kind
    /// from its parent.
    pub fn is_normalized(&self) -> bool {
        self.nodes.iter().all(|node| match node {
            Node::Leaf(_) => true,
            Node::Internal { kind, children } => {
                children.len() >= 2 && children.iter().all(|&c| self.kind(c) != Some(*kind))
            }
        })
    }

    /// Collapses single-child nodes and merges children of the same kind
    /// into their parent. The realized graph is unchanged.
    pub fn normalize(&self) -> Cotree {
        let mut out: Vec<Node> = Vec::with_capacity(self.nodes.len());
        // Position of each old node in `out` after normalization.
        let mut image = vec![0; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            match node {
                Node::Leaf(v) => {
                    image[id] = out.len();
                    out.push(Node::Leaf(*v));
                }
                Node::Internal { kind, children } => {
                    let mut merged = Vec::with_capacity(children.len());
                    for &c in children {
                        let ci = image[c];
                        match &out[ci] {
                            Node::Internal { kind: k, children: cc } if k == kind => {
                                merged.extend(cc.iter().copied())
                            }
                            _ => merged.push(ci),
                        }
                    }
                    if merged.len() == 1 {
                        image[id] = merged[0];
                    } else {
                        image[id] = out.len();
                        out.push(Node::Internal {
                            kind: *kind,
                            children: merged,
                        });
                    }
                }
            }
        }
        let root = image[self.root()];
        Cotree::from_nodes(out, root).expect("normalization keeps a valid tree")
    }

    /// Cotree of the complement graph.
    pub fn flip_kinds(&self) -> Cotree {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n {
                Node::Leaf(v) => Node::Leaf(*v),
                Node::Internal { kind, children } => Node::Internal {
                    kind: kind.flip(),
                    children: children.clone(),
                },
            })
            .collect();
        Cotree {
            nodes,
            ..self.clone()
        }
        .recompute()
    }

    fn recompute(self) -> Cotree {
        Self::from_postorder(self.nodes).expect("same shape stays valid")
    }

    /// Isomorphism invariant of the unordered labeled tree: `L` for a leaf,
    /// otherwise the kind letter followed by the sorted child keys in
    /// parentheses. Leaf ids do not enter the key.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.subtree_key(self.root())
    }

    pub fn subtree_key(&self, id: NodeId) -> Vec<u8> {
        let range = self.subtree(id);
        let base = *range.start();
        let mut keys: Vec<Vec<u8>> = vec![Vec::new(); self.span[id]];
        for p in range {
            keys[p - base] = match &self.nodes[p] {
                Node::Leaf(_) => b"L".to_vec(),
                Node::Internal { kind, children } => {
                    let mut parts: Vec<Vec<u8>> = children
                        .iter()
                        .map(|&c| std::mem::take(&mut keys[c - base]))
                        .collect();
                    parts.sort_unstable();
                    let mut k = vec![kind.letter() as u8, b'('];
                    for (i, part) in parts.iter().enumerate() {
                        if i > 0 {
                            k.push(b',');
                        }
                        k.extend_from_slice(part);
                    }
                    k.push(b')');
                    k
                }
            };
        }
        std::mem::take(&mut keys[id - base])
    }

    /// Two vertices in the same subtree: their lowest common ancestor.
    pub fn lca(&self, a: NodeId, b: NodeId) -> NodeId {
        let mut x = a;
        while !self.contains(x, b) {
            x = self.parent[x].expect("root contains everything");
        }
        x
    }

    /// No induced C4 and no induced P4. Assumes a normalized tree.
    pub fn is_trivially_perfect(&self) -> bool {
        self.find_c4().is_none()
    }

    /// Induced C4 `a-b-c-d-a`, from a join with two non-leaf children.
    pub fn find_c4(&self) -> Option<[usize; 4]> {
        self.find_pair_of_nonleaf_children(Kind::Join).map(|(x, y)| {
            let [a, c] = self.two_from_distinct_children(x);
            let [b, d] = self.two_from_distinct_children(y);
            [a, b, c, d]
        })
    }

    /// Induced 2K2 `{a,b}`, `{c,d}`, from a union with two non-leaf
    /// children.
    pub fn find_2k2(&self) -> Option<[usize; 4]> {
        self.find_pair_of_nonleaf_children(Kind::Union).map(|(x, y)| {
            let [a, b] = self.two_from_distinct_children(x);
            let [c, d] = self.two_from_distinct_children(y);
            [a, b, c, d]
        })
    }

    fn find_pair_of_nonleaf_children(&self, kind: Kind) -> Option<(NodeId, NodeId)> {
        self.nodes.iter().find_map(|node| match node {
            Node::Internal { kind: k, children } if *k == kind => {
                let mut it = children.iter().copied().filter(|&c| !self.is_leaf(c));
                Some((it.next()?, it.next()?))
            }
            _ => None,
        })
    }

    fn two_from_distinct_children(&self, id: NodeId) -> [usize; 2] {
        let ch = self.children(id);
        [self.first_leaf(ch[0]), self.first_leaf(ch[1])]
    }

    /// Smallest-id leaf node's vertex in the subtree (the first in post-order).
    pub fn first_leaf(&self, id: NodeId) -> usize {
        self.subtree(id)
            .find_map(|i| self.leaf_vertex(i))
            .expect("every subtree has a leaf")
    }

    /// Tree whose leaves are renamed `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Cotree {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n {
                Node::Leaf(v) => Node::Leaf(perm[*v]),
                other => other.clone(),
            })
            .collect();
        Self::from_postorder(nodes).expect("relabeling by a permutation is valid")
    }
}

/// Assigns small integer ids to isomorphism classes of subtrees. Shared
/// between several cotrees, equal ids mean isomorphic labeled subtrees.
#[derive(Default, Debug)]
pub struct CanonicalForms {
    table: HashMap<(Kind, Vec<u32>), u32>,
}

impl CanonicalForms {
    pub const LEAF: u32 = 0;

    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, kind: Kind, mut children: Vec<u32>) -> u32 {
        children.sort_unstable();
        let next = self.table.len() as u32 + 1;
        *self.table.entry((kind, children)).or_insert(next)
    }

    /// Class id of every node of `t`.
    pub fn classify(&mut self, t: &Cotree) -> Vec<u32> {
        let mut ids = vec![0; t.node_count()];
        for (id, node) in t.nodes().iter().enumerate() {
            ids[id] = match node {
                Node::Leaf(_) => Self::LEAF,
                Node::Internal { kind, children } => {
                    self.intern(*kind, children.iter().map(|&c| ids[c]).collect())
                }
            };
        }
        ids
    }
}

/// Mutable arena used to assemble cotrees by hand.
#[derive(Default, Debug, Clone)]
pub struct CotreeBuilder {
    nodes: Vec<Node>,
}

impl CotreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaf(&mut self, v: usize) -> NodeId {
        self.nodes.push(Node::Leaf(v));
        self.nodes.len() - 1
    }

    pub fn internal(&mut self, kind: Kind, children: Vec<NodeId>) -> NodeId {
        self.nodes.push(Node::Internal { kind, children });
        self.nodes.len() - 1
    }

    pub fn join(&mut self, children: Vec<NodeId>) -> NodeId {
        self.internal(Kind::Join, children)
    }

    pub fn union(&mut self, children: Vec<NodeId>) -> NodeId {
        self.internal(Kind::Union, children)
    }

    /// Replaces the children of an internal node created earlier.
    pub fn set_children(&mut self, id: NodeId, new: Vec<NodeId>) {
        if let Node::Internal { children, .. } = &mut self.nodes[id] {
            *children = new;
        }
    }

    pub fn finish(self, root: NodeId) -> Result<Cotree> {
        Cotree::from_nodes(self.nodes, root)
    }
}

/// Recognizes a cograph and returns its normalized cotree, or an induced
/// P4 as witness. Splits by components, then by co-components.
pub fn build_cotree(g: &Graph) -> Result<Cotree> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    #[derive(Clone, Copy, PartialEq)]
    enum Known {
        Nothing,
        Connected,
        CoConnected,
    }
    let mut nodes: Vec<Node> = Vec::with_capacity(2 * n);
    let mut stamp = vec![0u32; n];
    let mut clock = 0u32;
    let mut tasks: Vec<(Vec<usize>, NodeId, Known)> = Vec::new();
    nodes.push(Node::Leaf(usize::MAX));
    tasks.push(((0..n).collect(), 0, Known::Nothing));
    while let Some((set, slot, known)) = tasks.pop() {
        if set.len() == 1 {
            nodes[slot] = Node::Leaf(set[0]);
            continue;
        }
        let (kind, parts) = {
            let comps = if known == Known::Connected {
                vec![]
            } else {
                components_within(g, &set, &mut stamp, &mut clock)
            };
            if comps.len() > 1 {
                (Kind::Union, comps)
            } else {
                let cocomps = if known == Known::CoConnected {
                    vec![]
                } else {
                    co_components_within(g, &set, &mut stamp, &mut clock)
                };
                if cocomps.len() > 1 {
                    (Kind::Join, cocomps)
                } else {
                    return Err(Error::NotCograph(find_p4(g, &set)));
                }
            }
        };
        let next = match kind {
            Kind::Union => Known::Connected,
            Kind::Join => Known::CoConnected,
        };
        let mut children = Vec::with_capacity(parts.len());
        for part in parts {
            let id = nodes.len();
            nodes.push(Node::Leaf(usize::MAX));
            children.push(id);
            tasks.push((part, id, next));
        }
        nodes[slot] = Node::Internal { kind, children };
    }
    Cotree::from_nodes(nodes, 0)
}

fn next_stamp(stamp: &mut [u32], clock: &mut u32) -> u32 {
    if *clock == u32::MAX {
        stamp.iter_mut().for_each(|s| *s = 0);
        *clock = 0;
    }
    *clock += 1;
    *clock
}

/// Components of `g[set]`, each sorted, ordered by smallest vertex.
fn components_within(
    g: &Graph,
    set: &[usize],
    stamp: &mut [u32],
    clock: &mut u32,
) -> Vec<Vec<usize>> {
    let member = next_stamp(stamp, clock);
    for &v in set {
        stamp[v] = member;
    }
    let done = next_stamp(stamp, clock);
    let mut out = Vec::new();
    for &s in set {
        if stamp[s] != member {
            continue;
        }
        stamp[s] = done;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbors(v) {
                if stamp[w] == member {
                    stamp[w] = done;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort_unstable_by_key(|c| c[0]);
    out
}

/// Components of the complement of `g[set]`, found without building the
/// complement: each BFS step keeps only the unvisited vertices adjacent to
/// the current one.
fn co_components_within(
    g: &Graph,
    set: &[usize],
    stamp: &mut [u32],
    clock: &mut u32,
) -> Vec<Vec<usize>> {
    let mut unvisited: Vec<usize> = set.iter().rev().copied().collect();
    let mut out = Vec::new();
    let mut keep = Vec::new();
    while let Some(s) = unvisited.pop() {
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() && !unvisited.is_empty() {
            let v = comp[i];
            i += 1;
            let mark = next_stamp(stamp, clock);
            for &w in g.neighbors(v) {
                stamp[w] = mark;
            }
            keep.clear();
            for &u in &unvisited {
                if stamp[u] == mark {
                    keep.push(u);
                } else {
                    comp.push(u);
                }
            }
            std::mem::swap(&mut unvisited, &mut keep);
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort_unstable_by_key(|c| c[0]);
    out
}

/// `g[set]` is connected, co-connected and has at least two vertices, so it
/// contains an induced P4. For an endpoint `v` of any induced P4 `v-x-a-b`,
/// `a` and `b` are adjacent non-neighbors of `v` and `x` is a neighbor of
/// `v` and `a` but not of `b`; trying every `v` therefore finds one.
fn find_p4(g: &Graph, set: &[usize]) -> [usize; 4] {
    let n = g.vertex_count();
    let mut in_set = vec![false; n];
    for &v in set {
        in_set[v] = true;
    }
    for &v in set {
        for &a in set {
            if a == v || g.has_edge(v, a) {
                continue;
            }
            for &b in g.neighbors(a) {
                if !in_set[b] || b == v || g.has_edge(v, b) {
                    continue;
                }
                for &x in g.neighbors(a) {
                    if in_set[x] && x != b && g.has_edge(x, v) && !g.has_edge(x, b) {
                        return [v, x, a, b];
                    }
                }
            }
        }
    }
    unreachable!("a prime graph on two or more vertices contains an induced P4")
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Step {
            Node(NodeId),
            Text(&'static str),
        }
        let mut stack = vec![Step::Node(self.root())];
        while let Some(step) = stack.pop() {
            match step {
                Step::Text(s) => f.write_str(s)?,
                Step::Node(id) => match &self.nodes[id] {
                    Node::Leaf(v) => write!(f, "{v}")?,
                    Node::Internal { kind, children } => {
                        write!(f, "{}(", kind.letter())?;
                        stack.push(Step::Text(")"));
                        for (i, &c) in children.iter().enumerate().rev() {
                            stack.push(Step::Node(c));
                            if i > 0 {
                                stack.push(Step::Text(","));
                            }
                        }
                    }
                },
            }
        }
        Ok(())
    }
}

impl FromStr for Cotree {
    type Err = Error;

    /// `cotree := INT | KIND '(' cotree (',' cotree)+ ')'`, `KIND` one of
    /// `J`, `U`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let err = |offset: usize, message: &str| Error::Syntax {
            offset,
            message: message.to_string(),
        };
        let mut nodes: Vec<Node> = Vec::new();
        // Open internal nodes: (kind, children so far, offset of the letter).
        let mut open: Vec<(Kind, Vec<NodeId>, usize)> = Vec::new();
        let mut root = None;
        // After a finished term we expect ',' or ')' (or the end).
        let mut after_term = false;
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            if root.is_some() {
                return Err(err(i, "trailing input after cotree"));
            }
            if after_term {
                match c {
                    b',' if !open.is_empty() => {
                        after_term = false;
                        i += 1;
                    }
                    b')' if !open.is_empty() => {
                        let (kind, children, at) = open.pop().expect("checked non-empty");
                        if children.len() < 2 {
                            return Err(err(at, "internal node needs at least two children"));
                        }
                        nodes.push(Node::Internal { kind, children });
                        let id = nodes.len() - 1;
                        match open.last_mut() {
                            Some(top) => top.1.push(id),
                            None => root = Some(id),
                        }
                        i += 1;
                    }
                    _ => return Err(err(i, "expected ',' or ')'")),
                }
                continue;
            }
            match c {
                b'J' | b'U' => {
                    let kind = if c == b'J' { Kind::Join } else { Kind::Union };
                    let mut j = i + 1;
                    while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                        j += 1;
                    }
                    if bytes.get(j) != Some(&b'(') {
                        return Err(err(j, "expected '('"));
                    }
                    open.push((kind, Vec::new(), i));
                    i = j + 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let v: usize = s[start..i]
                        .parse()
                        .map_err(|_| err(start, "leaf id too large"))?;
                    nodes.push(Node::Leaf(v));
                    let id = nodes.len() - 1;
                    match open.last_mut() {
                        Some(top) => top.1.push(id),
                        None => root = Some(id),
                    }
                    after_term = true;
                }
                _ => return Err(err(i, "expected a leaf id, 'J(' or 'U('")),
            }
        }
        let root = match root {
            Some(r) => r,
            None if open.is_empty() => return Err(err(bytes.len(), "empty cotree")),
            None => return Err(err(bytes.len(), "unbalanced parentheses")),
        };
        Cotree::from_nodes(nodes, root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn parse(s: &str) -> Cotree {
        s.parse().unwrap()
    }

    #[test]
    fn butterfly_cotree() {
        let t = build_cotree(&named::butterfly()).unwrap();
        assert_eq!(t.to_string(), "J(0,U(J(1,2),J(3,4)))");
        assert_eq!(t.clique_number(), 3);
        assert_eq!(t.chromatic_number(), 3);
        assert!(t.is_normalized());
    }

    #[test]
    fn p4_is_rejected_with_witness() {
        let Err(Error::NotCograph(w)) = build_cotree(&Graph::path(4)) else {
            panic!("P4 is not a cograph");
        };
        let mut sorted = w;
        sorted.sort_unstable();
        assert_eq!(sorted, [0, 1, 2, 3]);
        let g = Graph::path(4);
        let (p, _) = g.induced_subgraph(&w).unwrap();
        assert_eq!(p, Graph::path(4));
    }

    #[test]
    fn single_vertex_is_a_leaf() {
        let t = build_cotree(&Graph::empty(1)).unwrap();
        assert_eq!(t.to_string(), "0");
        assert_eq!(t.clique_number(), 1);
        assert!(matches!(build_cotree(&Graph::empty(0)), Err(Error::EmptyGraph)));
    }

    #[test]
    fn to_graph_examples() {
        assert_eq!(parse("J(0,1)").to_graph(), Graph::complete(2));
        assert_eq!(parse("U(0,1)").to_graph(), Graph::empty(2));
        let gadget = parse("U(0,J(1,2))").to_graph();
        assert_eq!(gadget, Graph::from_edges(3, [(1, 2)]).unwrap());
    }

    #[test]
    fn normalize_examples() {
        let t = parse("J(J(0,1),2)").normalize();
        assert_eq!(t.to_string(), "J(0,1,2)");
        let single = Cotree::from_nodes(
            vec![
                Node::Leaf(0),
                Node::Leaf(1),
                Node::Internal {
                    kind: Kind::Join,
                    children: vec![0, 1],
                },
                Node::Internal {
                    kind: Kind::Union,
                    children: vec![2],
                },
            ],
            3,
        )
        .unwrap();
        assert!(!single.is_normalized());
        assert_eq!(single.normalize().to_string(), "J(0,1)");
        let built = build_cotree(&named::butterfly()).unwrap();
        assert_eq!(built.normalize(), built);
        let deep = parse("U(U(0,U(1,2)),J(3,J(4,5)))").normalize();
        assert_eq!(deep.to_string(), "U(0,1,2,J(3,4,5))");
        assert!(deep.is_normalized());
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "J(0)", "J(0,1", "J(0,,1)", "X(0,1)", "J(0,1))", "J(0,2)", "J(0,0)", "J 0,1"] {
            assert!(bad.parse::<Cotree>().is_err(), "{bad:?} should fail");
        }
        assert_eq!(parse(" J ( 0 , U(1, 2) ) ").to_string(), "J(0,U(1,2))");
    }

    #[test]
    fn canonical_keys() {
        assert_eq!(parse("J(0,1)").canonical_key(), parse("J(1,0)").canonical_key());
        assert_ne!(
            parse("U(0,J(1,2))").canonical_key(),
            parse("J(0,U(1,2))").canonical_key()
        );
        assert_eq!(
            parse("U(J(0,1),2)").canonical_key(),
            parse("U(0,J(2,1))").canonical_key()
        );
        let mut forms = CanonicalForms::new();
        let a = parse("U(J(0,1),2)");
        let b = parse("U(0,J(2,1))");
        let ia = forms.classify(&a)[a.root()];
        let ib = forms.classify(&b)[b.root()];
        assert_eq!(ia, ib);
    }

    #[test]
    fn forbidden_subgraph_witnesses() {
        let c4 = build_cotree(&Graph::cycle(4)).unwrap();
        let w = c4.find_c4().unwrap();
        let (sub, _) = Graph::cycle(4).induced_subgraph(&w).unwrap();
        assert_eq!(sub, Graph::cycle(4));
        let t = build_cotree(&named::butterfly()).unwrap();
        assert!(t.is_trivially_perfect());
        let [a, b, c, d] = t.find_2k2().unwrap();
        let (sub, _) = named::butterfly().induced_subgraph(&[a, b, c, d]).unwrap();
        assert_eq!(sub, named::two_k2());
        assert!(build_cotree(&named::paw()).unwrap().find_2k2().is_none());
    }

    #[test]
    fn subtree_coloring_is_proper() {
        let t = parse("J(U(J(0,1),2),U(3,J(4,5,6)),7)");
        let g = t.to_graph();
        let col = t.coloring();
        assert!(g.edges().all(|(u, v)| col[u] != col[v]));
        assert_eq!(t.chromatic_number(), t.clique_number());
        assert_eq!(t.clique_number(), 2 + 3 + 1);
        let clique = t.max_clique(t.root());
        assert_eq!(clique.len(), 6);
        for (i, &u) in clique.iter().enumerate() {
            for &v in &clique[i + 1..] {
                assert!(g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn complement_flips_kinds() {
        let g = named::butterfly();
        let t = build_cotree(&g).unwrap();
        let tc = build_cotree(&g.complement()).unwrap();
        assert_eq!(t.flip_kinds().canonical_key(), tc.canonical_key());
        assert_eq!(t.flip_kinds().to_graph(), g.complement());
    }
}
