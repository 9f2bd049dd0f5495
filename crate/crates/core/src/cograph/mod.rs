//! Retracts and homomorphisms between arbitrary cographs.

pub mod fpt;
pub mod partitioned;

use serde::{Deserialize, Serialize};

use crate::certificate::{Verdict, VertexMap};
use crate::classify::{classify, GraphClass};
use crate::cotree::build_cotree;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::threshold::threshold_retract;
use crate::trivially_perfect::tp_retract;

/// Which solver produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    #[serde(rename = "threshold")]
    Threshold,
    #[serde(rename = "tp")]
    TriviallyPerfect,
    #[serde(rename = "fpt")]
    Fpt,
    #[serde(rename = "partitioned")]
    Partitioned,
    #[serde(rename = "oracle")]
    Oracle,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Threshold => "threshold",
            Route::TriviallyPerfect => "tp",
            Route::Fpt => "fpt",
            Route::Partitioned => "partitioned",
            Route::Oracle => "oracle",
        }
    }
}

/// A homomorphism `g -> h` between cographs exists iff `χ(g) <= ω(h)`. On
/// success the witness sends each color class of an optimal coloring of
/// `g` to one vertex of a maximum clique of `h`.
pub fn hom_exists(g: &Graph, h: &Graph) -> Result<Option<VertexMap>> {
    let tg = build_cotree(g)?;
    let th = build_cotree(h)?;
    if tg.chromatic_number() > th.clique_number() {
        return Ok(None);
    }
    let clique = th.max_clique(th.root());
    Ok(Some(VertexMap(
        tg.coloring().into_iter().map(|c| clique[c]).collect(),
    )))
}

/// Decides whether `h` is a retract of `g`, using the threshold solver when
/// both graphs are threshold, the trivially perfect solver when both are
/// trivially perfect, and the parameterized solver otherwise.
pub fn retract(g: &Graph, h: &Graph) -> Result<(Route, Verdict)> {
    let cg = classify(g)?;
    let ch = classify(h)?;
    for c in [&cg, &ch] {
        if let GraphClass::NotCograph { p4 } = c {
            return Err(Error::NotCograph(*p4));
        }
    }
    if cg == GraphClass::Threshold && ch == GraphClass::Threshold {
        return Ok((Route::Threshold, threshold_retract(g, h)?));
    }
    if cg.is_trivially_perfect() && ch.is_trivially_perfect() {
        return Ok((Route::TriviallyPerfect, tp_retract(g, h)?));
    }
    Ok((Route::Fpt, fpt::fpt_retract(g, h)?))
}
