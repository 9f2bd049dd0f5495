//! Retracts of cographs.
//!
//! Decides whether a cograph `H` is a retract of a cograph `G` and, on every
//! positive answer, returns a [`RetractCertificate`] that can be checked
//! independently with [`verify_retract_certificate`]. Specialized solvers
//! exist for threshold graphs ([`threshold`]), trivially perfect graphs
//! ([`trivially_perfect`]), the case where `H` is given as an induced
//! subgraph of `G` ([`cograph::partitioned`]), and a parameterized solver
//! for arbitrary cographs ([`cograph::fpt`]). [`retract`] dispatches to the
//! fastest applicable one.
//!
//! The [`oracle`] module contains exponential brute-force searches used as
//! ground truth in tests.

pub mod absolute;
pub mod certificate;
pub mod classify;
pub mod cograph;
pub mod cotree;
pub mod error;
pub mod folding;
pub mod format;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod named;
pub mod oracle;
pub mod reduction;
pub mod threshold;
pub mod trivially_perfect;

pub use certificate::{
    compose_certificates, is_homomorphism, verify_retract_certificate, NoReason,
    RetractCertificate, Verdict, VertexMap,
};
pub use classify::{classify, GraphClass};
pub use cograph::{fpt::fpt_retract, hom_exists, partitioned::partitioned_retract, retract, Route};
pub use cotree::{build_cotree, Cotree, Kind};
pub use error::{Error, Result};
pub use graph::Graph;
pub use threshold::threshold_retract;
pub use trivially_perfect::tp_retract;
