//! Extending a left-contained model across a separation along its linkage.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{edge, Vertex};
use crate::solvers::certificate::{verify_separation_certificate, SeparationCertificate};
use crate::solvers::linked::LinkedOptions;

use super::{invalid, Construction, ConstructionError};

/// Grows the certificate's left model through linkage paths.
///
/// Each `(near, far)` in `pairing` names the two endpoints of one linkage
/// path. The branch set through `near` absorbs the path up to, but not
/// including, `far`, which makes it adjacent to the branch set through
/// `far`. The returned pattern is the certificate's pattern plus one edge
/// per pair. Linkage paths not named in `pairing` are left alone.
pub fn extend_left_model(
    host: &crate::Graph,
    cert: &SeparationCertificate,
    pairing: &[(Vertex, Vertex)],
) -> Result<Construction, ConstructionError> {
    if let Err(vs) = verify_separation_certificate(host, cert, &LinkedOptions::default()) {
        let first = vs.first().map(|v| v.to_string()).unwrap_or_default();
        return Err(invalid(format!("certificate rejected ({} violations, first: {first})", vs.len())));
    }
    let sep = cert.separator();
    let owner: BTreeMap<Vertex, Vertex> = cert
        .model
        .branch_sets
        .iter()
        .map(|(&p, s)| (*s.intersection(&sep).next().expect("certificate checked"), p))
        .collect();

    let mut sets = cert.model.branch_sets.clone();
    let mut new_edges = Vec::new();
    let mut used = BTreeSet::new();
    for &(near, far) in pairing {
        let idx = cert
            .linkage
            .iter()
            .position(|p| p.len() > 1 && ((p[0], p[p.len() - 1]) == (near, far) || (p[0], p[p.len() - 1]) == (far, near)))
            .ok_or_else(|| invalid(format!("({near}, {far}) are not the endpoints of a linkage path")))?;
        if !used.insert(idx) {
            return Err(invalid(format!("linkage path {idx} is paired twice")));
        }
        let path = &cert.linkage[idx];
        let (a, b) = (owner[&near], owner[&far]);
        let interior = path.iter().copied().filter(|&x| x != far);
        sets.get_mut(&a).expect("owner has a branch set").extend(interior);
        new_edges.push(edge(a, b));
    }
    let pattern = cert.pattern.with_edges(&new_edges)?;
    Ok(Construction {
        host: host.clone(),
        order: pattern.vertex_count(),
        pattern,
        model: crate::MinorModel::new(sets),
    })
}
