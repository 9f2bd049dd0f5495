//! Retracts between arbitrary cographs, exponential only in `|V(H)|`.
//!
//! A connected piece of `G` is a join node (or a single leaf); its
//! cocomponents are the children. On the `H` side a connected piece is a
//! set of cocomponents of one join node, which lets a part of a partition
//! of the cocomponents of `H` be handled like a whole graph. Connected
//! pieces are compared by trying every surjective assignment of the `H`
//! cocomponents to the `G` cocomponents; disconnected ones by a bipartite
//! matching of components. Both tests are memoized on canonical classes.

use std::collections::HashMap;

use crate::certificate::{NoReason, RetractCertificate, Verdict, VertexMap};
use crate::cotree::{build_cotree, CanonicalForms, Cotree, Kind, NodeId};
use crate::error::Result;
use crate::graph::Graph;
use crate::matching::{max_matching, saturates_right, BipartiteInstance};

struct Side<'a> {
    t: &'a Cotree,
    class: Vec<u32>,
}

impl Side<'_> {
    fn omega(&self, nodes: &[NodeId]) -> usize {
        nodes.iter().map(|&x| self.t.omega(x)).sum()
    }

    fn size(&self, nodes: &[NodeId]) -> usize {
        nodes.iter().map(|&x| self.t.leaf_count(x)).sum()
    }

    fn key(&self, nodes: &[NodeId]) -> Vec<u32> {
        let mut k: Vec<u32> = nodes.iter().map(|&x| self.class[x]).collect();
        k.sort_unstable();
        k
    }

    /// Cocomponents of a connected node, ordered by class.
    fn piece(&self, id: NodeId) -> Vec<NodeId> {
        let mut p = match self.t.kind(id) {
            Some(Kind::Join) => self.t.children(id).to_vec(),
            _ => vec![id],
        };
        p.sort_by_key(|&x| (self.class[x], x));
        p
    }

    /// Components of the graph that is the join of `part`.
    fn components(&self, part: &[NodeId]) -> Vec<Vec<NodeId>> {
        match part {
            [x] if self.t.kind(*x) == Some(Kind::Union) => {
                self.t.children(*x).iter().map(|&c| self.piece(c)).collect()
            }
            _ => vec![part.to_vec()],
        }
    }

    fn max_clique(&self, piece: &[NodeId]) -> Vec<usize> {
        piece.iter().flat_map(|&x| self.t.max_clique(x)).collect()
    }
}

type MemoKey = (Vec<u32>, Vec<u32>);

struct Solver<'a> {
    g: Side<'a>,
    h: Side<'a>,
    conn_memo: HashMap<MemoKey, bool>,
    forest_memo: HashMap<MemoKey, Result<(), NoReason>>,
    /// Assignments tried, across the whole run.
    pub explored: u64,
}

impl Solver<'_> {
    /// Does the connected piece `d` of H retract from connected piece `c`
    /// of G? Both are given as lists of cocomponents.
    fn conn(&mut self, c: &[NodeId], d: &[NodeId]) -> bool {
        let key = (self.g.key(c), self.h.key(d));
        if let Some(&r) = self.conn_memo.get(&key) {
            return r;
        }
        let r = self.assignment(c, d).is_some();
        self.conn_memo.insert(key, r);
        r
    }

    /// First surjective assignment of the cocomponents `d` to the
    /// cocomponents `c` under which every part retracts, as the part of
    /// each `c[i]`.
    fn assignment(&mut self, c: &[NodeId], d: &[NodeId]) -> Option<Vec<Vec<NodeId>>> {
        if self.g.size(c) < self.h.size(d) || self.g.omega(c) != self.h.omega(d) {
            return None;
        }
        if let ([x], [y]) = (c, d) {
            if self.g.t.is_leaf(*x) && self.h.t.is_leaf(*y) {
                return Some(vec![vec![*y]]);
            }
        }
        if c.len() > d.len() {
            return None;
        }
        let cap_omega: Vec<usize> = c.iter().map(|&x| self.g.t.omega(x)).collect();
        let cap_size: Vec<usize> = c.iter().map(|&x| self.g.t.leaf_count(x)).collect();
        let mut st = Enum {
            assign: vec![0; d.len()],
            omega: vec![0; c.len()],
            size: vec![0; c.len()],
            count: vec![0; c.len()],
            empty: c.len(),
        };
        self.search(c, d, &cap_omega, &cap_size, &mut st, 0)
    }

    fn search(
        &mut self,
        c: &[NodeId],
        d: &[NodeId],
        cap_omega: &[usize],
        cap_size: &[usize],
        st: &mut Enum,
        j: usize,
    ) -> Option<Vec<Vec<NodeId>>> {
        if j == d.len() {
            self.explored += 1;
            if st.empty > 0 || (0..c.len()).any(|i| st.omega[i] != cap_omega[i]) {
                return None;
            }
            let mut parts = vec![Vec::new(); c.len()];
            for (jj, &i) in st.assign.iter().enumerate() {
                parts[i].push(d[jj]);
            }
            for (i, part) in parts.iter().enumerate() {
                if self.forest(c[i], part).is_err() {
                    return None;
                }
            }
            return Some(parts);
        }
        if d.len() - j < st.empty {
            return None;
        }
        let (w, s) = (self.h.t.omega(d[j]), self.h.t.leaf_count(d[j]));
        // Identical H cocomponents take non-decreasing targets.
        let lo = if j > 0 && self.h.class[d[j]] == self.h.class[d[j - 1]] {
            st.assign[j - 1]
        } else {
            0
        };
        for i in lo..c.len() {
            if st.omega[i] + w > cap_omega[i] || st.size[i] + s > cap_size[i] {
                continue;
            }
            // Identical empty G cocomponents are interchangeable.
            if st.count[i] == 0
                && (0..i).any(|k| st.count[k] == 0 && self.g.class[c[k]] == self.g.class[c[i]])
            {
                continue;
            }
            st.assign[j] = i;
            st.omega[i] += w;
            st.size[i] += s;
            st.count[i] += 1;
            if st.count[i] == 1 {
                st.empty -= 1;
            }
            let found = self.search(c, d, cap_omega, cap_size, st, j + 1);
            if st.count[i] == 1 {
                st.empty += 1;
            }
            st.count[i] -= 1;
            st.size[i] -= s;
            st.omega[i] -= w;
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Does the join of the H cocomponents `part` retract from the
    /// subgraph of G below cocomponent `gc`?
    fn forest(&mut self, gc: NodeId, part: &[NodeId]) -> Result<(), NoReason> {
        let key = (vec![self.g.class[gc]], self.h.key(part));
        if let Some(&r) = self.forest_memo.get(&key) {
            return r;
        }
        let gs = self.g.components(&[gc]);
        let hs = self.h.components(part);
        let r = self.forest_lists(&gs, &hs).map(|_| ());
        self.forest_memo.insert(key, r);
        r
    }

    /// Matching of components of G onto those of H; returns the H partner
    /// of each G component.
    fn forest_lists(
        &mut self,
        gs: &[Vec<NodeId>],
        hs: &[Vec<NodeId>],
    ) -> Result<Vec<Option<usize>>, NoReason> {
        if gs.len() < hs.len() {
            return Err(NoReason::ComponentCount);
        }
        if let ([c], [d]) = (gs, hs) {
            return if self.conn(c, d) {
                Ok(vec![Some(0)])
            } else {
                Err(NoReason::NoAssignment)
            };
        }
        let mut edges = Vec::new();
        for (i, c) in gs.iter().enumerate() {
            for (j, d) in hs.iter().enumerate() {
                if self.conn(c, d) {
                    edges.push((i, j));
                }
            }
        }
        let inst = BipartiteInstance::new(gs.len(), hs.len(), edges).expect("indices in range");
        let m = max_matching(&inst);
        if !saturates_right(&m, hs.len()) {
            return Err(NoReason::MatchingDeficit);
        }
        let top = hs.iter().map(|d| self.h.omega(d)).max().unwrap_or(0);
        if gs.iter().any(|c| self.g.omega(c) > top) {
            return Err(NoReason::UnmatchedComponent);
        }
        let mut partner = vec![None; gs.len()];
        for &(i, j) in &m.0 {
            partner[i] = Some(j);
        }
        Ok(partner)
    }

    fn build_conn(&mut self, c: &[NodeId], d: &[NodeId], cert: &mut Maps) {
        let parts = self.assignment(c, d).expect("replaying a positive decision");
        if let ([x], [y]) = (c, d) {
            if let (Some(u), Some(v)) = (self.g.t.leaf_vertex(*x), self.h.t.leaf_vertex(*y)) {
                cert.rho[u] = v;
                cert.gamma[v] = u;
                return;
            }
        }
        for (i, part) in parts.iter().enumerate() {
            let gs = self.g.components(&[c[i]]);
            let hs = self.h.components(part);
            self.build_lists(&gs, &hs, cert);
        }
    }

    fn build_lists(&mut self, gs: &[Vec<NodeId>], hs: &[Vec<NodeId>], cert: &mut Maps) {
        let partner = self
            .forest_lists(gs, hs)
            .expect("replaying a positive decision");
        for (i, c) in gs.iter().enumerate() {
            match partner[i] {
                Some(j) => self.build_conn(c, &hs[j], cert),
                None => {
                    let w = self.g.omega(c);
                    let target = hs
                        .iter()
                        .find(|d| self.h.omega(d) >= w)
                        .expect("replaying a positive decision");
                    let clique = self.h.max_clique(target);
                    for &x in c {
                        for (v, col) in subtree_coloring_offset(self.g.t, c, x) {
                            cert.rho[v] = clique[col];
                        }
                    }
                }
            }
        }
    }
}

struct Maps {
    rho: Vec<usize>,
    gamma: Vec<usize>,
}

struct Enum {
    assign: Vec<usize>,
    omega: Vec<usize>,
    size: Vec<usize>,
    count: Vec<usize>,
    empty: usize,
}

/// Coloring of cocomponent `x` inside the join of `piece`, shifted past
/// the colors used by the cocomponents before it.
fn subtree_coloring_offset(t: &Cotree, piece: &[NodeId], x: NodeId) -> Vec<(usize, usize)> {
    let offset: usize = piece
        .iter()
        .take_while(|&&y| y != x)
        .map(|&y| t.omega(y))
        .sum();
    t.subtree_coloring(x)
        .into_iter()
        .map(|(v, c)| (v, c + offset))
        .collect()
}

/// Outcome of the parameterized solver, with the number of complete
/// assignments it examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptOutcome {
    pub verdict: Verdict,
    pub explored: u64,
}

/// Decides whether cograph `h` is a retract of cograph `g`.
pub fn fpt_retract(g: &Graph, h: &Graph) -> Result<Verdict> {
    let tg = build_cotree(g)?;
    let th = build_cotree(h)?;
    Ok(fpt_retract_cotrees(&tg, &th).verdict)
}

/// Same as [`fpt_retract`] on cotrees, which are normalized first.
pub fn fpt_retract_cotrees(tg: &Cotree, th: &Cotree) -> FptOutcome {
    let no = |reason| FptOutcome {
        verdict: Verdict::No(reason),
        explored: 0,
    };
    if th.vertex_count() > tg.vertex_count() {
        return no(NoReason::TooLarge);
    }
    if tg.clique_number() != th.clique_number() {
        return no(NoReason::CliqueMismatch);
    }
    let tg = tg.normalize();
    let th = th.normalize();
    let mut forms = CanonicalForms::new();
    let mut s = Solver {
        g: Side {
            t: &tg,
            class: forms.classify(&tg),
        },
        h: Side {
            t: &th,
            class: forms.classify(&th),
        },
        conn_memo: HashMap::new(),
        forest_memo: HashMap::new(),
        explored: 0,
    };
    let gs = top_components(&s.g);
    let hs = top_components(&s.h);
    if let Err(reason) = s.forest_lists(&gs, &hs) {
        let reason = match reason {
            NoReason::ComponentCount if gs.len() == 1 => NoReason::ConnectedToDisconnected,
            r => r,
        };
        return FptOutcome {
            verdict: Verdict::No(reason),
            explored: s.explored,
        };
    }
    let mut cert = Maps {
        rho: vec![usize::MAX; tg.vertex_count()],
        gamma: vec![usize::MAX; th.vertex_count()],
    };
    s.build_lists(&gs, &hs, &mut cert);
    FptOutcome {
        verdict: Verdict::Yes(RetractCertificate {
            rho: VertexMap(cert.rho),
            gamma: VertexMap(cert.gamma),
        }),
        explored: s.explored,
    }
}

fn top_components(side: &Side) -> Vec<Vec<NodeId>> {
    let root = side.t.root();
    match side.t.kind(root) {
        Some(Kind::Union) => side.components(&[root]),
        _ => vec![side.piece(root)],
    }
}
