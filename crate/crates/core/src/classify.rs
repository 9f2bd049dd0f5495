use serde::{Deserialize, Serialize};

use crate::cotree::build_cotree;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::threshold::is_threshold;

/// Smallest of the nested classes threshold ⊂ trivially perfect ⊂ cograph
/// containing a graph. Each larger class carries a forbidden induced
/// subgraph that rules out the smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum GraphClass {
    Threshold,
    /// Not threshold: the four vertices induce `2K2` (edges `{0,1}`, `{2,3}`).
    TriviallyPerfect { two_k2: [usize; 4] },
    /// Not trivially perfect: the four vertices induce the cycle `0-1-2-3-0`.
    Cograph { c4: [usize; 4] },
    /// The four vertices induce the path `0-1-2-3`.
    NotCograph { p4: [usize; 4] },
}

impl GraphClass {
    pub fn name(&self) -> &'static str {
        match self {
            GraphClass::Threshold => "threshold",
            GraphClass::TriviallyPerfect { .. } => "trivially_perfect",
            GraphClass::Cograph { .. } => "cograph",
            GraphClass::NotCograph { .. } => "not_cograph",
        }
    }

    pub fn is_cograph(&self) -> bool {
        !matches!(self, GraphClass::NotCograph { .. })
    }

    pub fn is_trivially_perfect(&self) -> bool {
        matches!(
            self,
            GraphClass::Threshold | GraphClass::TriviallyPerfect { .. }
        )
    }
}

pub fn classify(g: &Graph) -> Result<GraphClass> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if is_threshold(g) {
        return Ok(GraphClass::Threshold);
    }
    let t = match build_cotree(g) {
        Ok(t) => t,
        Err(Error::NotCograph(p4)) => return Ok(GraphClass::NotCograph { p4 }),
        Err(e) => return Err(e),
    };
    if let Some(c4) = t.find_c4() {
        return Ok(GraphClass::Cograph { c4 });
    }
    let two_k2 = t
        .find_2k2()
        .expect("a trivially perfect graph that is not threshold contains 2K2");
    Ok(GraphClass::TriviallyPerfect { two_k2 })
}
