//! Double wheels inside members of `Lambda(B_h)`.
//!
//! Let `u` and `u'` be the leaves matched to the two ends of the path `P`
//! and `Q` the tree path between them. Removing `Q` from the tree leaves at
//! most `2h - 3` subtrees, so one of them, `T_1`, receives a large share of
//! the matched leaves. `T_1` becomes one hub, the apex the other, and the
//! cycle `P + Q` is cut into rim sets at the path vertices matched into
//! `T_1`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{tree_canonical_form, Vertex};
use crate::patterns::{binary_tree_leaves, complete_binary_tree, double_wheel, lambda_build, LambdaInstance};
use crate::solvers::model::MinorModel;

use super::{invalid, precondition, Construction, ConstructionError};

/// `ceil((2^(h/2) - 2) / (2h - 3))`, the order the construction promises.
/// For odd `h` the power is irrational and the quotient never an integer,
/// so floating point is exact enough for the ceiling.
pub fn promised_order(h: u32) -> usize {
    if h < 2 {
        return 0;
    }
    let denom = 2 * h as i64 - 3;
    if h % 2 == 0 {
        let num = (1i64 << (h / 2)) - 2;
        if num <= 0 {
            return 0;
        }
        ((num + denom - 1) / denom) as usize
    } else {
        let q = ((h as f64 / 2.0).exp2() - 2.0) / denom as f64;
        q.max(0.0).ceil() as usize
    }
}

/// `B_h` with a path of `matching.len()` vertices; `matching[i]` is the
/// index (0-based, left to right) of the leaf matched to path vertex `i`.
pub fn binary_lambda(h: u32, matching: &[usize]) -> Result<LambdaInstance, ConstructionError> {
    let leaves = binary_tree_leaves(h);
    let ids: Vec<Vertex> = matching.iter().map(|&i| leaves.start + i).collect();
    if let Some(&bad) = ids.iter().find(|&&v| v >= leaves.end) {
        return Err(invalid(format!("leaf index {} out of range", bad - leaves.start)));
    }
    Ok(lambda_build(&complete_binary_tree(h), ids.len(), &ids)?)
}

/// A random member of `Lambda(B_h)` with a path of `path_len` vertices.
pub fn random_binary_lambda(rng: &mut impl Rng, h: u32, path_len: usize) -> Result<LambdaInstance, ConstructionError> {
    let mut idx: Vec<usize> = (0..1usize << h).collect();
    idx.shuffle(rng);
    idx.truncate(path_len);
    binary_lambda(h, &idx)
}

/// Builds the double-wheel model inside `inst`, whose tree must be a
/// complete binary tree of height `h >= 4` with a nondegenerate promised
/// order (at least 3).
pub fn double_wheel_from_lambda(inst: &LambdaInstance) -> Result<Construction, ConstructionError> {
    let tree = inst.tree();
    let t = tree.vertex_count();
    if !(t + 1).is_power_of_two() || t < 3 {
        return Err(invalid(format!("tree has {t} vertices, not a complete binary tree")));
    }
    let h = (t + 1).trailing_zeros() - 1;
    if tree_canonical_form(&tree)? != tree_canonical_form(&complete_binary_tree(h))? {
        return Err(invalid(format!("tree is not the complete binary tree of height {h}")));
    }
    let promised = promised_order(h);
    if h < 4 || promised < 3 {
        return Err(precondition(format!(
            "degenerate order: h = {h} gives (2^(h/2) - 2)/(2h - 3) rounding up to {promised} < 3"
        )));
    }

    let path = inst.path();
    let matched = inst.matched_leaves();
    let u = matched[0];
    let u2 = *matched.last().expect("path is nonempty");
    let q = tree.tree_path(u, u2)?;
    let on_q: BTreeSet<Vertex> = q.iter().copied().collect();

    // components of T \ Q, best by matched leaf count, ties to the smallest id
    let off_q: BTreeSet<Vertex> = tree.vertices().filter(|v| !on_q.contains(v)).collect();
    let matched_at: BTreeMap<Vertex, usize> = matched.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let rest = tree.induced_subgraph(&off_q)?;
    let t1 = rest
        .connected_components()
        .into_iter()
        .max_by(|a, b| {
            let ca = a.iter().filter(|v| matched_at.contains_key(v)).count();
            let cb = b.iter().filter(|v| matched_at.contains_key(v)).count();
            ca.cmp(&cb).then_with(|| b.first().cmp(&a.first()))
        })
        .ok_or_else(|| invalid("tree path covers the whole tree"))?;

    // J: positions on P matched into T_1, in path order
    let mut j: Vec<usize> = t1.iter().filter_map(|v| matched_at.get(v).copied()).collect();
    j.sort_unstable();
    let r = j.len();
    if r < promised {
        return Err(invalid(format!(
            "only {r} path vertices matched into the best subtree, expected at least {promised}"
        )));
    }

    // C runs along P from its first vertex, then back along Q from u' to u
    let mut rim: Vec<BTreeSet<Vertex>> = (0..r - 1).map(|i| path[j[i]..j[i + 1]].iter().copied().collect()).collect();
    let mut last: BTreeSet<Vertex> = path[j[r - 1]..].iter().chain(&path[..j[0]]).copied().collect();
    last.extend(q.iter().copied());
    rim.push(last);

    let mut branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>> = rim.into_iter().enumerate().collect();
    branch_sets.insert(r, t1);
    branch_sets.insert(r + 1, BTreeSet::from([inst.apex()]));
    Ok(Construction {
        host: inst.graph().clone(),
        pattern: double_wheel(r)?,
        model: MinorModel::new(branch_sets),
        order: r,
    })
}
