use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Total map from the vertices of one graph to the vertices of another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMap(pub Vec<usize>);

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap((0..n).collect())
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap(self.0.iter().map(|&v| other.0[v]).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for VertexMap {
    fn from(v: Vec<usize>) -> Self {
        VertexMap(v)
    }
}

/// A retraction `rho: G -> H` together with a co-retraction `gamma: H -> G`
/// such that `rho(gamma(y)) = y` for every vertex `y` of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractCertificate {
    pub rho: VertexMap,
    pub gamma: VertexMap,
}

impl RetractCertificate {
    pub fn identity(n: usize) -> Self {
        RetractCertificate {
            rho: VertexMap::identity(n),
            gamma: VertexMap::identity(n),
        }
    }
}

/// True iff `map` sends every vertex of `g` into `h` and every edge of `g`
/// onto an edge of `h`.
pub fn is_homomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    map.len() == g.vertex_count()
        && map.iter().all(|&y| y < h.vertex_count())
        && g.edges().all(|(u, v)| {
            let (a, b) = (map[u], map[v]);
            a != b && h.has_edge(a, b)
        })
}

pub fn verify_retract_certificate(g: &Graph, h: &Graph, cert: &RetractCertificate) -> bool {
    is_homomorphism(g, h, cert.rho.as_slice())
        && is_homomorphism(h, g, cert.gamma.as_slice())
        && (0..h.vertex_count()).all(|y| cert.rho.get(cert.gamma.get(y)) == y)
}

/// Given `A` a retract of `G` and `B` a retract of `A`, the certificate for
/// `B` a retract of `G`: `rho = rho2 ∘ rho1`, `gamma = gamma1 ∘ gamma2`.
pub fn compose_certificates(
    ga: &RetractCertificate,
    ab: &RetractCertificate,
) -> Result<RetractCertificate> {
    let a = ga.gamma.len();
    if ab.rho.len() != a {
        return Err(Error::DimensionMismatch(format!(
            "first certificate targets {a} vertices, second starts from {}",
            ab.rho.len()
        )));
    }
    if let Some(&bad) = ga.rho.0.iter().find(|&&y| y >= a) {
        return Err(Error::DimensionMismatch(format!(
            "first retraction maps to vertex {bad} outside 0..{a}"
        )));
    }
    if let Some(&bad) = ab.gamma.0.iter().find(|&&y| y >= a) {
        return Err(Error::DimensionMismatch(format!(
            "second co-retraction maps to vertex {bad} outside 0..{a}"
        )));
    }
    Ok(RetractCertificate {
        rho: ga.rho.then(&ab.rho),
        gamma: ab.gamma.then(&ga.gamma),
    })
}

/// Why a solver answered NO.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum NoReason {
    /// `H` has more vertices than `G`.
    TooLarge,
    /// Clique numbers differ, or a clique `H` meets a `G` of another clique number.
    CliqueMismatch,
    /// `H` has fewer universal vertices than `G`.
    UniversalCount,
    /// No matching of components covers every component of `H`.
    MatchingDeficit,
    /// Some unmatched component of `G` has no homomorphism into `H`.
    UnmatchedComponent,
    /// `H` is a single vertex but `G` has an edge.
    NotEdgeless,
    /// `G` is connected and `H` is not.
    ConnectedToDisconnected,
    /// `H` has more isolated vertices than `G` can supply.
    IsolatedSurplus,
    /// `H` is connected with an edge but `G` has no component with an edge.
    NoLargeComponent,
    /// No assignment of the cocomponents of `H` to those of `G` works.
    NoAssignment,
    /// `H` has more components than `G`.
    ComponentCount,
    /// Pruning stopped with a vertex outside the target set still present.
    Leftover { vertex: usize },
    /// Exhaustive search found nothing.
    Exhaustive,
}

impl fmt::Display for NoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NoReason::TooLarge => "H has more vertices than G",
            NoReason::CliqueMismatch => "clique numbers differ",
            NoReason::UniversalCount => "H has fewer universal vertices than G",
            NoReason::MatchingDeficit => "components of H cannot all be matched",
            NoReason::UnmatchedComponent => "an unmatched component of G has no homomorphism into H",
            NoReason::NotEdgeless => "H is a single vertex but G has edges",
            NoReason::ConnectedToDisconnected => "G is connected but H is not",
            NoReason::IsolatedSurplus => "H has too many isolated vertices",
            NoReason::NoLargeComponent => "G has no component with an edge",
            NoReason::NoAssignment => "no cocomponent assignment works",
            NoReason::ComponentCount => "H has more components than G",
            NoReason::Leftover { vertex } => {
                return write!(f, "vertex {vertex} outside H survives pruning");
            }
            NoReason::Exhaustive => "exhaustive search found no retraction",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(RetractCertificate),
    No(NoReason),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn certificate(&self) -> Option<&RetractCertificate> {
        match self {
            Verdict::Yes(c) => Some(c),
            Verdict::No(_) => None,
        }
    }

    pub fn reason(&self) -> Option<NoReason> {
        match self {
            Verdict::Yes(_) => None,
            Verdict::No(r) => Some(*r),
        }
    }
}
