//! Minor models: one connected branch set per pattern vertex.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Branch sets keyed by pattern vertex. The pattern and host are not
/// stored; [`verify_model`] takes them explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MinorModel {
    pub branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl MinorModel {
    pub fn new(branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>>) -> Self {
        MinorModel { branch_sets }
    }

    /// The model of a graph in itself with singleton branch sets.
    pub fn identity(g: &Graph) -> Self {
        MinorModel {
            branch_sets: g.vertices().map(|v| (v, BTreeSet::from([v]))).collect(),
        }
    }

    pub fn get(&self, v: Vertex) -> Option<&BTreeSet<Vertex>> {
        self.branch_sets.get(&v)
    }

    /// Number of host vertices used.
    pub fn size(&self) -> usize {
        self.branch_sets.values().map(|b| b.len()).sum()
    }

    /// Given `self`, a model of `H` in `G`, and `outer`, a model of `G` in
    /// `F`, returns the model of `H` in `F`.
    pub fn compose(&self, outer: &MinorModel) -> MinorModel {
        MinorModel {
            branch_sets: self
                .branch_sets
                .iter()
                .map(|(&h, set)| {
                    let image = set
                        .iter()
                        .flat_map(|g| outer.branch_sets.get(g).into_iter().flatten().copied())
                        .collect();
                    (h, image)
                })
                .collect(),
        }
    }

    /// Restricts the model to the pattern vertices in `keep`.
    pub fn restrict(&self, keep: &BTreeSet<Vertex>) -> MinorModel {
        MinorModel {
            branch_sets: self
                .branch_sets
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(&v, s)| (v, s.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelViolation {
    #[error("pattern vertex {0} has no branch set")]
    MissingBranchSet(Vertex),
    #[error("branch set given for {0}, which is not a pattern vertex")]
    UnknownPatternVertex(Vertex),
    #[error("branch set of {0} is empty")]
    EmptyBranchSet(Vertex),
    #[error("branch set of {owner} contains {vertex}, which is not a host vertex")]
    ForeignVertex { owner: Vertex, vertex: Vertex },
    #[error("disjointness: branch sets of {a} and {b} share host vertex {vertex}")]
    Overlap { a: Vertex, b: Vertex, vertex: Vertex },
    #[error("connectivity: branch set of {0} does not induce a connected subgraph")]
    Disconnected(Vertex),
    #[error("edge realization: no host edge between the branch sets of {0} and {1}")]
    MissingEdge(Vertex, Vertex),
}

/// Checks disjointness, connectivity and edge realization. Each violated
/// class is reported once, with its first witness in id order.
pub fn verify_model(host: &Graph, pattern: &Graph, m: &MinorModel) -> Result<(), Vec<ModelViolation>> {
    let mut out = Vec::new();
    if let Some(v) = pattern.vertices().find(|v| !m.branch_sets.contains_key(v)) {
        out.push(ModelViolation::MissingBranchSet(v));
    }
    if let Some(&v) = m.branch_sets.keys().find(|v| !pattern.contains_vertex(**v)) {
        out.push(ModelViolation::UnknownPatternVertex(v));
    }
    if let Some((&v, _)) = m.branch_sets.iter().find(|(_, s)| s.is_empty()) {
        out.push(ModelViolation::EmptyBranchSet(v));
    }
    let foreign = m.branch_sets.iter().find_map(|(&owner, s)| {
        s.iter()
            .find(|x| !host.contains_vertex(**x))
            .map(|&vertex| ModelViolation::ForeignVertex { owner, vertex })
    });
    out.extend(foreign);
    let mut owner: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut overlap = None;
    for (&v, s) in &m.branch_sets {
        for &x in s {
            if let Some(&a) = owner.get(&x) {
                overlap.get_or_insert(ModelViolation::Overlap { a, b: v, vertex: x });
            } else {
                owner.insert(x, v);
            }
        }
    }
    out.extend(overlap);
    if let Some((&v, _)) = m
        .branch_sets
        .iter()
        .find(|(_, s)| !s.is_empty() && !host.induces_connected(s))
    {
        out.push(ModelViolation::Disconnected(v));
    }
    let realized = |a: &BTreeSet<Vertex>, b: &BTreeSet<Vertex>| {
        a.iter().any(|&x| host.neighbors(x).any(|y| b.contains(&y)))
    };
    let missing = pattern.edges().find(|&(u, v)| match (m.get(u), m.get(v)) {
        (Some(a), Some(b)) => !realized(a, b),
        _ => false,
    });
    if let Some((u, v)) = missing {
        out.push(ModelViolation::MissingEdge(u, v));
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{complete_graph, wheel};

    fn set(vs: &[Vertex]) -> BTreeSet<Vertex> {
        vs.iter().copied().collect()
    }

    #[test]
    fn identity_model_of_wheel() {
        let w = wheel(6).unwrap();
        assert_eq!(verify_model(&w, &w, &MinorModel::identity(&w)), Ok(()));
    }

    #[test]
    fn k4_in_wheel5_by_hand() {
        // rim 0..5, hub 5; rim split {0,1}, {2,3}, {4}
        let w5 = wheel(5).unwrap();
        let m = MinorModel::new(BTreeMap::from([
            (0, set(&[0, 1])),
            (1, set(&[2, 3])),
            (2, set(&[4])),
            (3, set(&[5])),
        ]));
        assert_eq!(verify_model(&w5, &complete_graph(4), &m), Ok(()));
    }

    #[test]
    fn violations_are_classified() {
        let w5 = wheel(5).unwrap();
        let k4 = complete_graph(4);
        let overlap = MinorModel::new(BTreeMap::from([
            (0, set(&[0, 1])),
            (1, set(&[1, 2, 3])),
            (2, set(&[4])),
            (3, set(&[5])),
        ]));
        assert_eq!(
            verify_model(&w5, &k4, &overlap),
            Err(vec![ModelViolation::Overlap { a: 0, b: 1, vertex: 1 }])
        );
        let split = MinorModel::new(BTreeMap::from([
            (0, set(&[0, 2])),
            (1, set(&[1])),
            (2, set(&[3])),
            (3, set(&[5])),
        ]));
        assert_eq!(
            verify_model(&w5, &k4, &split),
            Err(vec![ModelViolation::Disconnected(0), ModelViolation::MissingEdge(1, 2)])
        );
        let partial = MinorModel::new(BTreeMap::from([(0, set(&[0])), (9, set(&[]))]));
        let errs = verify_model(&w5, &k4, &partial).unwrap_err();
        assert_eq!(errs[0], ModelViolation::MissingBranchSet(1));
        assert!(errs.contains(&ModelViolation::UnknownPatternVertex(9)));
        assert!(errs.contains(&ModelViolation::EmptyBranchSet(9)));
    }

    #[test]
    fn composition_is_a_model() {
        let w5 = wheel(5).unwrap();
        let w4 = wheel(4).unwrap();
        // wheel(4) in wheel(5): merge rim vertices 3 and 4
        let inner = MinorModel::new(BTreeMap::from([
            (0, set(&[0])),
            (1, set(&[1])),
            (2, set(&[2])),
            (3, set(&[3, 4])),
            (4, set(&[5])),
        ]));
        assert_eq!(verify_model(&w5, &w4, &inner), Ok(()));
        // K4 = wheel(3) in wheel(4): merge rim 2 and 3
        let k4_in_w4 = MinorModel::new(BTreeMap::from([
            (0, set(&[0])),
            (1, set(&[1])),
            (2, set(&[2, 3])),
            (3, set(&[4])),
        ]));
        let composed = k4_in_w4.compose(&inner);
        assert_eq!(verify_model(&w5, &complete_graph(4), &composed), Ok(()));
    }
}
