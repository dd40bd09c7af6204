//! Separation certificates: a separation `(A, B)`, a model of a pattern in
//! `G[A]` whose branch sets each meet `A ∩ B` once, and a linkage of paths
//! in `G[B]` between separator vertices.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::io::EdgeList;

use super::linked::{is_linked_with, LinkedOptions, Linkedness};
use super::model::{verify_model, MinorModel, ModelViolation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub a: BTreeSet<Vertex>,
    pub b: BTreeSet<Vertex>,
    /// The left-contained pattern, on ids `0..n`.
    pub pattern: Graph,
    pub model: MinorModel,
    pub linkage: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    a: BTreeSet<Vertex>,
    b: BTreeSet<Vertex>,
    pattern: EdgeList,
    model: BTreeMap<Vertex, BTreeSet<Vertex>>,
    linkage: Vec<Vec<Vertex>>,
}

impl SeparationCertificate {
    pub fn separator(&self) -> BTreeSet<Vertex> {
        self.a.intersection(&self.b).copied().collect()
    }

    pub fn order(&self) -> usize {
        self.a.intersection(&self.b).count()
    }

    pub fn to_json(&self) -> String {
        let j = CertificateJson {
            a: self.a.clone(),
            b: self.b.clone(),
            pattern: EdgeList::from_graph(&self.pattern),
            model: self.model.branch_sets.clone(),
            linkage: self.linkage.clone(),
        };
        serde_json::to_string(&j).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, crate::io::FormatError> {
        let j: CertificateJson = serde_json::from_str(s)?;
        Ok(SeparationCertificate {
            a: j.a,
            b: j.b,
            pattern: j.pattern.to_graph()?,
            model: MinorModel::new(j.model),
            linkage: j.linkage,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertViolation {
    #[error("vertex {0} is in neither A nor B")]
    NotACover(Vertex),
    #[error("{0} is in A or B but not in the host")]
    ForeignVertex(Vertex),
    #[error("separation: edge {{{0}, {1}}} joins A\\B to B\\A")]
    CrossingEdge(Vertex, Vertex),
    #[error("G[B\\A] is not connected")]
    BSideDisconnected,
    #[error("left model is not a model in G[A]: {0:?}")]
    LeftModel(Vec<ModelViolation>),
    #[error("left-contains: branch set of {pattern_vertex} meets A∩B in {hits} vertices")]
    LeftContains { pattern_vertex: Vertex, hits: usize },
    #[error("A∩B is not linked in G[B]: {x1:?} cannot be joined to {x2:?}")]
    NotLinked { x1: BTreeSet<Vertex>, x2: BTreeSet<Vertex> },
    #[error("linkage path {0} is not a path of G[B]")]
    LinkageNotAPath(usize),
    #[error("linkage path {0} does not end in A∩B at both ends")]
    LinkageEndpoint(usize),
    #[error("linkage path {path} passes through separator vertex {vertex}")]
    LinkageInternal { path: usize, vertex: Vertex },
    #[error("linkage path {0} has length one")]
    LinkageLengthOne(usize),
    #[error("linkage paths {first} and {second} share vertex {vertex}")]
    LinkageOverlap { first: usize, second: usize, vertex: Vertex },
}

/// What a successful check established about linkedness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateCheck {
    /// False when the separator was too large (or the budget too small) to
    /// decide linkedness; every other condition was checked.
    pub linkedness_verified: bool,
}

pub fn verify_separation_certificate(
    host: &Graph,
    c: &SeparationCertificate,
    opts: &LinkedOptions,
) -> Result<CertificateCheck, Vec<CertViolation>> {
    let mut out = Vec::new();
    if let Some(&v) = c.a.union(&c.b).find(|v| !host.contains_vertex(**v)) {
        out.push(CertViolation::ForeignVertex(v));
    }
    if let Some(v) = host.vertices().find(|v| !c.a.contains(v) && !c.b.contains(v)) {
        out.push(CertViolation::NotACover(v));
    }
    let a_only: BTreeSet<Vertex> = c.a.difference(&c.b).copied().collect();
    let b_only: BTreeSet<Vertex> = c.b.difference(&c.a).copied().collect();
    if let Some((u, v)) = host
        .edges()
        .find(|(u, v)| (a_only.contains(u) && b_only.contains(v)) || (a_only.contains(v) && b_only.contains(u)))
    {
        out.push(CertViolation::CrossingEdge(u, v));
    }
    if !host.induces_connected(&b_only) {
        out.push(CertViolation::BSideDisconnected);
    }
    let sep = c.separator();
    let host_a = host.induced_unchecked(&c.a.iter().copied().filter(|v| host.contains_vertex(*v)).collect());
    if let Err(vs) = verify_model(&host_a, &c.pattern, &c.model) {
        out.push(CertViolation::LeftModel(vs));
    }
    if let Some((&v, s)) = c.model.branch_sets.iter().find(|(_, s)| s.intersection(&sep).count() != 1) {
        out.push(CertViolation::LeftContains {
            pattern_vertex: v,
            hits: s.intersection(&sep).count(),
        });
    }
    let host_b = host.induced_unchecked(&c.b.iter().copied().filter(|v| host.contains_vertex(*v)).collect());
    out.extend(check_linkage(&host_b, &sep, &c.linkage));
    let linked = is_linked_with(&host_b, &sep, opts);
    if let Linkedness::NotLinked { x1, x2 } = &linked {
        out.push(CertViolation::NotLinked {
            x1: x1.clone(),
            x2: x2.clone(),
        });
    }
    if out.is_empty() {
        Ok(CertificateCheck {
            linkedness_verified: linked == Linkedness::Linked,
        })
    } else {
        Err(out)
    }
}

/// Each path must run in `G[B]` between separator vertices, avoid the
/// separator inside, not be a single edge, and be disjoint from the others.
fn check_linkage(host_b: &Graph, sep: &BTreeSet<Vertex>, linkage: &[Vec<Vertex>]) -> Vec<CertViolation> {
    let mut out = Vec::new();
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (i, p) in linkage.iter().enumerate() {
        if !host_b.is_path(p) {
            out.push(CertViolation::LinkageNotAPath(i));
            continue;
        }
        if !sep.contains(&p[0]) || !sep.contains(p.last().unwrap()) {
            out.push(CertViolation::LinkageEndpoint(i));
        }
        if p.len() > 2 {
            if let Some(&v) = p[1..p.len() - 1].iter().find(|v| sep.contains(v)) {
                out.push(CertViolation::LinkageInternal { path: i, vertex: v });
            }
        }
        if p.len() == 2 {
            out.push(CertViolation::LinkageLengthOne(i));
        }
        for &v in p {
            if let Some(&first) = owner.get(&v) {
                out.push(CertViolation::LinkageOverlap {
                    first,
                    second: i,
                    vertex: v,
                });
                break;
            }
        }
        for &v in p {
            owner.entry(v).or_insert(i);
        }
    }
    out
}
