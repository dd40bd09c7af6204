//! The subdivided ladder from two paths joined by a permutation.
//!
//! The host has paths `P = p_0 .. p_(m-1)` and `R = r_0 .. r_(m-1)` and a
//! middle vertex `q_i` on a path `p_i - q_i - r_perm[i]` for every `i`. A
//! monotone run of length `k` in `perm` picks `k` of the middle paths that
//! do not cross; contracting `P` and `R` between them gives `xi(k)`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{make_graph, Graph, Vertex};
use crate::patterns::{xi, XiLayout};
use crate::solvers::model::MinorModel;

use super::es::{es_extract, Direction, MonotoneWitness};
use super::{invalid, precondition, Construction, ConstructionError};

/// Number of linked pairs that guarantees a monotone run of length `k`.
pub fn required_pairs(k: usize) -> usize {
    (k - 1) * (k - 1) + 1
}

/// Host ids: `p_i = i`, `r_j = m + j`, `q_i = 2m + i`.
pub fn double_path_host(perm: &[usize]) -> Result<Graph, ConstructionError> {
    let m = perm.len();
    let mut seen = vec![false; m];
    for &p in perm {
        if p >= m || std::mem::replace(&mut seen[p], true) {
            return Err(invalid(format!("not a permutation of 0..{m}")));
        }
    }
    let mut es = Vec::with_capacity(4 * m);
    for i in 1..m {
        es.push((i - 1, i));
        es.push((m + i - 1, m + i));
    }
    for (i, &j) in perm.iter().enumerate() {
        es.push((i, 2 * m + i));
        es.push((2 * m + i, m + j));
    }
    Ok(make_graph(3 * m, &es)?)
}

pub fn random_permutation(rng: &mut impl Rng, m: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m).collect();
    p.shuffle(rng);
    p
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiFromDoublePath {
    pub construction: Construction,
    pub witness: MonotoneWitness,
}

/// Cuts `0..m` into `k` consecutive segments, segment `j` starting at
/// `starts[j]`; the first segment also takes everything before it.
fn segments(starts: &[usize], m: usize) -> Vec<std::ops::Range<usize>> {
    let k = starts.len();
    (0..k)
        .map(|j| {
            let from = if j == 0 { 0 } else { starts[j] };
            let to = if j + 1 == k { m } else { starts[j + 1] };
            from..to
        })
        .collect()
}

/// Builds the `xi(k)` model. A decreasing run is used with `R` read
/// backwards, which is the same ladder.
pub fn xi_from_double_path(k: usize, perm: &[usize]) -> Result<XiFromDoublePath, ConstructionError> {
    if k < 2 {
        return Err(precondition(format!("need k >= 2, got {k}")));
    }
    let host = double_path_host(perm)?;
    let m = perm.len();
    if m < required_pairs(k) {
        return Err(precondition(format!(
            "{m} linked pairs; a monotone run of {k} needs (k - 1)^2 + 1 = {}",
            required_pairs(k)
        )));
    }
    let witness = es_extract(perm, k, k)?;
    let picks = &witness.indices;
    let l = XiLayout { r: k };
    let mut branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for (j, seg) in segments(picks, m).into_iter().enumerate() {
        branch_sets.insert(l.x(j), seg.collect());
        branch_sets.insert(l.y(j), BTreeSet::from([2 * m + picks[j]]));
    }
    let values: Vec<usize> = picks.iter().map(|&i| perm[i]).collect();
    match witness.direction {
        Direction::Increasing => {
            for (j, seg) in segments(&values, m).into_iter().enumerate() {
                branch_sets.insert(l.z(j), seg.map(|r| m + r).collect());
            }
        }
        Direction::Decreasing => {
            // mirror R so the values increase, then mirror back
            let mirrored: Vec<usize> = values.iter().map(|&v| m - 1 - v).collect();
            for (j, seg) in segments(&mirrored, m).into_iter().enumerate() {
                branch_sets.insert(l.z(j), seg.map(|r| m + (m - 1 - r)).collect());
            }
        }
    }
    Ok(XiFromDoublePath {
        construction: Construction {
            host,
            pattern: xi(k)?,
            model: MinorModel::new(branch_sets),
            order: k,
        },
        witness,
    })
}
