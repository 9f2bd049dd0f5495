//! 3-partition encoded as a retract problem on cographs.
//!
//! `H` is the join of `3m` gadgets `K1 ⊕ K_{a_i}`. `G` is the join of `m`
//! identical unions, with one child per index triple `{i, j, k}` summing to
//! `B`: the join of the gadgets of `a_i`, `a_j` and `a_k`. `H` is a retract
//! of `G` iff the items split into `m` triples of sum `B`.

use std::fmt;
use std::str::FromStr;

use crate::cotree::{Cotree, CotreeBuilder, NodeId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    pub m: usize,
    pub bound: usize,
    pub items: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Item not strictly between `B/4` and `B/2`.
    Range { index: usize, value: usize },
    Sum { sum: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Range { index, value } => {
                write!(f, "item {index} = {value} is not strictly between B/4 and B/2")
            }
            Violation::Sum { sum, expected } => write!(f, "items sum to {sum}, expected m*B = {expected}"),
        }
    }
}

impl ThreePartitionInstance {
    pub fn new(m: usize, bound: usize, items: Vec<usize>) -> Result<Self> {
        if m == 0 || bound == 0 {
            return Err(Error::InvalidInstance("m and B must be positive".into()));
        }
        if items.len() != 3 * m {
            return Err(Error::InvalidInstance(format!(
                "expected {} items, found {}",
                3 * m,
                items.len()
            )));
        }
        if items.contains(&0) {
            return Err(Error::InvalidInstance("items must be positive".into()));
        }
        Ok(ThreePartitionInstance { m, bound, items })
    }

    pub fn validate(&self) -> Vec<Violation> {
        let b = self.bound;
        let mut out: Vec<Violation> = self
            .items
            .iter()
            .enumerate()
            .filter(|&(_, &a)| !(4 * a > b && 2 * a < b))
            .map(|(index, &value)| Violation::Range { index, value })
            .collect();
        let sum: usize = self.items.iter().sum();
        if sum != self.m * b {
            out.push(Violation::Sum {
                sum,
                expected: self.m * b,
            });
        }
        out
    }

    /// Index triples `i < j < k` with `a_i + a_j + a_k = B`.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        let a = &self.items;
        let n = a.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if a[i] + a[j] + a[k] == self.bound {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }
}

impl FromStr for ThreePartitionInstance {
    type Err = Error;

    /// First line `m B`, then the `3m` items separated by whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let number = |line: usize, tok: &str| -> Result<usize> {
            tok.parse().map_err(|_| Error::Parse {
                line,
                message: format!("expected a nonnegative integer, found {tok:?}"),
            })
        };
        let (line, head) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header `m B`".into(),
        })?;
        let head: Vec<&str> = head.split_whitespace().collect();
        let [m, b] = head[..] else {
            return Err(Error::Parse {
                line,
                message: "header must be `m B`".into(),
            });
        };
        let (m, b) = (number(line, m)?, number(line, b)?);
        let mut items = Vec::new();
        for (line, text) in lines {
            for tok in text.split_whitespace() {
                items.push(number(line, tok)?);
            }
        }
        Self::new(m, b, items)
    }
}

impl fmt::Display for ThreePartitionInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.m, self.bound)?;
        let items: Vec<String> = self.items.iter().map(|a| a.to_string()).collect();
        writeln!(f, "{}", items.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct Encoding {
    pub g: Cotree,
    pub h: Cotree,
    pub triples: Vec<[usize; 3]>,
    /// No triple sums to `B`; `G = K1 ⊕ K1` and `H = K2` stand in.
    pub degenerate: bool,
}

/// Encodes a valid instance; see [`ThreePartitionInstance::validate`].
pub fn encode(inst: &ThreePartitionInstance) -> Result<Encoding> {
    let violations = inst.validate();
    if !violations.is_empty() {
        let text: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidInstance(text.join("; ")));
    }
    Ok(encode_unchecked(inst))
}

pub fn encode_unchecked(inst: &ThreePartitionInstance) -> Encoding {
    let triples = inst.triples();
    if triples.is_empty() {
        let mut b = CotreeBuilder::new();
        let (x, y) = (b.leaf(0), b.leaf(1));
        let u = b.union(vec![x, y]);
        let g = b.finish(u).expect("valid cotree");
        let mut b = CotreeBuilder::new();
        let (x, y) = (b.leaf(0), b.leaf(1));
        let j = b.join(vec![x, y]);
        let h = b.finish(j).expect("valid cotree");
        return Encoding {
            g,
            h,
            triples,
            degenerate: true,
        };
    }

    let mut b = CotreeBuilder::new();
    let mut next = 0;
    let gadgets: Vec<NodeId> = inst
        .items
        .iter()
        .map(|&a| gadget(&mut b, &mut next, a))
        .collect();
    let root = b.join(gadgets);
    let h = b.finish(root).expect("valid cotree").normalize();

    let mut b = CotreeBuilder::new();
    let mut next = 0;
    let parts: Vec<NodeId> = (0..inst.m)
        .map(|_| {
            let options = triples
                .iter()
                .map(|t| {
                    let g: Vec<NodeId> = t.iter().map(|&i| gadget(&mut b, &mut next, inst.items[i])).collect();
                    b.join(g)
                })
                .collect();
            b.union(options)
        })
        .collect();
    let root = b.join(parts);
    let g = b.finish(root).expect("valid cotree").normalize();
    Encoding {
        g,
        h,
        triples,
        degenerate: false,
    }
}

/// `K1 ⊕ K_a`.
fn gadget(b: &mut CotreeBuilder, next: &mut usize, a: usize) -> NodeId {
    let mut leaf = |b: &mut CotreeBuilder| {
        *next += 1;
        b.leaf(*next - 1)
    };
    let single = leaf(b);
    let clique = if a == 1 {
        leaf(b)
    } else {
        let leaves = (0..a).map(|_| leaf(b)).collect();
        b.join(leaves)
    };
    b.union(vec![single, clique])
}

/// A partition of the items into `m` triples of sum `B`, by backtracking:
/// the lowest unused index is always placed first.
pub fn brute_3partition(inst: &ThreePartitionInstance) -> Option<Vec<[usize; 3]>> {
    fn go(a: &[usize], bound: usize, used: &mut [bool], out: &mut Vec<[usize; 3]>) -> bool {
        let Some(i) = used.iter().position(|&u| !u) else {
            return true;
        };
        used[i] = true;
        for j in i + 1..a.len() {
            if used[j] || a[i] + a[j] >= bound {
                continue;
            }
            used[j] = true;
            for k in j + 1..a.len() {
                if !used[k] && a[i] + a[j] + a[k] == bound {
                    used[k] = true;
                    out.push([i, j, k]);
                    if go(a, bound, used, out) {
                        return true;
                    }
                    out.pop();
                    used[k] = false;
                }
            }
            used[j] = false;
        }
        used[i] = false;
        false
    }
    let mut used = vec![false; inst.items.len()];
    let mut out = Vec::new();
    go(&inst.items, inst.bound, &mut used, &mut out).then_some(out)
}
