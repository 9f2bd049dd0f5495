//! Threshold graphs: elimination orderings and the linear-time retract test.

use serde::{Deserialize, Serialize};

use crate::certificate::{NoReason, RetractCertificate, Verdict, VertexMap};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tag {
    Universal,
    Isolated,
}

/// Vertices in elimination order, each tagged with its role in the graph
/// that remains when it is removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder(pub Vec<(usize, Tag)>);

/// An elimination ordering grouped into maximal blocks. Consecutive
/// blocks have different tags.
#[derive(Clone, Debug)]
pub(crate) struct Blocks {
    order: Vec<usize>,
    /// End (exclusive) of each block in `order`.
    ends: Vec<usize>,
    tags: Vec<Tag>,
}

/// Peels isolated or universal vertices. Only degrees are needed: removing
/// an isolated vertex changes no degree, removing a universal one lowers
/// every remaining degree by one, so the current degree of `v` is
/// `deg(v) - (universal vertices removed so far)`. All vertices of equal
/// degree leave together. Linear time.
pub(crate) fn blocks(g: &Graph) -> Result<Blocks> {
    let n = g.vertex_count();
    let mut start = vec![0; n + 1];
    for v in g.vertices() {
        start[g.degree(v) + 1] += 1;
    }
    for d in 0..n {
        start[d + 1] += start[d];
    }
    let mut by_degree = vec![0; n];
    let mut fill = start.clone();
    for v in g.vertices() {
        by_degree[fill[g.degree(v)]] = v;
        fill[g.degree(v)] += 1;
    }
    let bucket = |d: usize| &by_degree[start[d]..start[d + 1]];
    let mut used = vec![false; n];
    let mut out = Blocks {
        order: Vec::with_capacity(n),
        ends: Vec::new(),
        tags: Vec::new(),
    };
    let (mut remaining, mut removed_universal) = (n, 0);
    while remaining > 0 {
        let iso = removed_universal;
        let uni = removed_universal + remaining - 1;
        let (d, tag) = if !used[iso] && !bucket(iso).is_empty() {
            (iso, Tag::Isolated)
        } else if !used[uni] && !bucket(uni).is_empty() {
            (uni, Tag::Universal)
        } else {
            return Err(Error::NotThreshold);
        };
        used[d] = true;
        let block = bucket(d);
        out.order.extend_from_slice(block);
        out.ends.push(out.order.len());
        out.tags.push(tag);
        remaining -= block.len();
        if tag == Tag::Universal {
            removed_universal += block.len();
        }
    }
    Ok(out)
}

pub fn threshold_elimination(g: &Graph) -> Result<EliminationOrder> {
    let b = blocks(g)?;
    let mut steps = Vec::with_capacity(b.order.len());
    let mut begin = 0;
    for (i, &end) in b.ends.iter().enumerate() {
        steps.extend(b.order[begin..end].iter().map(|&v| (v, b.tags[i])));
        begin = end;
    }
    // The last vertex standing is alone, so it is isolated.
    if let Some(last) = steps.last_mut() {
        last.1 = Tag::Isolated;
    }
    Ok(EliminationOrder(steps))
}

pub fn is_threshold(g: &Graph) -> bool {
    blocks(g).is_ok()
}

/// Cursor into a block structure: everything before `pos` has been removed.
struct Side {
    b: Blocks,
    pos: usize,
    block: usize,
}

impl Side {
    fn remaining(&self) -> usize {
        self.b.order.len() - self.pos
    }

    fn tag(&self) -> Tag {
        self.b.tags[self.block]
    }

    /// Rest of the current block.
    fn front(&self) -> &[usize] {
        &self.b.order[self.pos..self.b.ends[self.block]]
    }

    fn rest(&self) -> &[usize] {
        &self.b.order[self.pos..]
    }

    fn edgeless(&self) -> bool {
        self.remaining() <= 1 || (self.tag() == Tag::Isolated && self.front().len() == self.remaining())
    }

    fn advance(&mut self, k: usize) {
        self.pos += k;
        if self.pos < self.b.order.len() && self.pos == self.b.ends[self.block] {
            self.block += 1;
        }
    }
}

/// Decides whether threshold graph `h` is a retract of threshold graph `g`
/// by peeling both elimination orderings in step.
pub fn threshold_retract(g: &Graph, h: &Graph) -> Result<Verdict> {
    let mut gs = Side {
        b: blocks(g)?,
        pos: 0,
        block: 0,
    };
    let mut hs = Side {
        b: blocks(h)?,
        pos: 0,
        block: 0,
    };
    let mut rho = vec![usize::MAX; g.vertex_count()];
    let mut gamma = vec![usize::MAX; h.vertex_count()];
    loop {
        let (ng, nh) = (gs.remaining(), hs.remaining());
        if nh == 0 {
            if ng == 0 {
                break;
            }
            // What is left of G still has an edge, H has none.
            return Ok(Verdict::No(NoReason::CliqueMismatch));
        }
        if nh > ng {
            return Ok(Verdict::No(NoReason::TooLarge));
        }
        if nh == 1 {
            if !gs.edgeless() {
                return Ok(Verdict::No(NoReason::NotEdgeless));
            }
            let y = hs.rest()[0];
            for &x in gs.rest() {
                rho[x] = y;
            }
            gamma[y] = gs.rest()[0];
            break;
        }
        match (gs.tag(), hs.tag()) {
            (Tag::Universal, Tag::Universal) => {
                let (x, y) = (gs.front()[0], hs.front()[0]);
                rho[x] = y;
                gamma[y] = x;
                gs.advance(1);
                hs.advance(1);
            }
            (Tag::Universal, Tag::Isolated) => {
                return Ok(Verdict::No(NoReason::ConnectedToDisconnected));
            }
            (Tag::Isolated, Tag::Isolated) => {
                let (a, b) = (gs.front().len(), hs.front().len());
                if b > a {
                    return Ok(Verdict::No(NoReason::IsolatedSurplus));
                }
                let (xs, ys) = (gs.front(), hs.front());
                for i in 0..a {
                    rho[xs[i]] = ys[i.min(b - 1)];
                }
                for i in 0..b {
                    gamma[ys[i]] = xs[i];
                }
                gs.advance(a);
                hs.advance(b);
            }
            (Tag::Isolated, Tag::Universal) => {
                let a = gs.front().len();
                let y = hs.front()[0];
                for &x in gs.front() {
                    rho[x] = y;
                }
                gs.advance(a);
                if gs.remaining() == 0 {
                    return Ok(Verdict::No(NoReason::NoLargeComponent));
                }
                // The rest of G is its one component with an edge, and it
                // starts with a universal block.
                let x = gs.front()[0];
                rho[x] = y;
                gamma[y] = x;
                gs.advance(1);
                hs.advance(1);
            }
        }
    }
    Ok(Verdict::Yes(RetractCertificate {
        rho: VertexMap(rho),
        gamma: VertexMap(gamma),
    }))
}
