//! Wheels from a complete binary tree whose leaves are matched onto a path.
//!
//! The host is `B_h` (heap ids `0..2^(h+1) - 1`) next to a path of `2^h`
//! vertices, each leaf joined to the path vertex chosen by `psi`. Let `u`
//! and `v` be the leaves matched to the two ends of the path and `w` their
//! lowest common ancestor. A complete subtree `tau` that avoids the tree
//! path `uTv` matches its leaves to positions `Q` on the path. Cutting the
//! path at `Q` gives the rim, with the last rim set closed up through `uTv`,
//! and `tau` together with its route towards `w` is the hub.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{make_graph, Graph, Vertex};
use crate::patterns::wheel;
use crate::solvers::model::MinorModel;

use super::{invalid, precondition, Construction, ConstructionError};

/// Which side of the root the lowest common ancestor of `u` and `v` fell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WheelCase {
    /// `w` is not the root, so a whole child subtree of the root avoids `uTv`.
    BelowRoot,
    /// `w` is the root; a grandchild subtree avoids `uTv`.
    AtRoot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WheelFromTree {
    pub construction: Construction,
    pub case: WheelCase,
    /// Root of the complete subtree used inside the hub.
    pub tau_root: Vertex,
    /// Path positions matched to the leaves of `tau`, ascending.
    pub q: Vec<usize>,
}

impl WheelFromTree {
    /// Leaves of the complete subtree inside the hub.
    pub fn tau_leaves(&self) -> usize {
        self.q.len()
    }
}

/// Smallest order the construction guarantees for height `h >= 3`.
pub fn promised_order(h: u32) -> usize {
    (1usize << (h - 2)) + 1
}

/// The host of the construction: `B_h`, the path at ids `N..N + 2^h` where
/// `N = 2^(h+1) - 1`, and the edges from the `i`-th leaf to path position
/// `psi[i]`.
pub fn tree_path_host(h: u32, psi: &[usize]) -> Result<Graph, ConstructionError> {
    check_psi(h, psi)?;
    let leaves = 1usize << h;
    let n_tree = 2 * leaves - 1;
    let mut es: Vec<_> = (1..n_tree).map(|i| ((i - 1) / 2, i)).collect();
    es.extend((1..leaves).map(|j| (n_tree + j - 1, n_tree + j)));
    es.extend(psi.iter().enumerate().map(|(i, &p)| (leaves - 1 + i, n_tree + p)));
    Ok(make_graph(n_tree + leaves, &es)?)
}

fn check_psi(h: u32, psi: &[usize]) -> Result<(), ConstructionError> {
    if h <= 2 {
        return Err(precondition(format!("need h > 2, got h = {h}")));
    }
    if h > 20 {
        return Err(invalid(format!("h = {h} is beyond the supported range")));
    }
    let leaves = 1usize << h;
    if psi.len() != leaves {
        return Err(invalid(format!("psi has {} entries, B_{h} has {leaves} leaves", psi.len())));
    }
    let mut seen = vec![false; leaves];
    for &p in psi {
        if p >= leaves || std::mem::replace(&mut seen[p], true) {
            return Err(invalid(format!("psi is not a bijection onto 0..{leaves} (entry {p})")));
        }
    }
    Ok(())
}

/// A uniformly random bijection from the leaves of `B_h` to path positions.
pub fn random_psi(rng: &mut impl Rng, h: u32) -> Vec<usize> {
    let mut psi: Vec<usize> = (0..1usize << h).collect();
    psi.shuffle(rng);
    psi
}

fn parent(x: Vertex) -> Vertex {
    (x - 1) / 2
}

fn is_descendant(mut x: Vertex, of: Vertex) -> bool {
    loop {
        if x == of {
            return true;
        }
        if x < of || x == 0 {
            return false;
        }
        x = parent(x);
    }
}

fn heap_path(u: Vertex, v: Vertex) -> (Vec<Vertex>, Vertex) {
    let (mut a, mut b) = (u, v);
    let (mut up, mut down) = (vec![], vec![]);
    while a != b {
        if a > b {
            up.push(a);
            a = parent(a);
        } else {
            down.push(b);
            b = parent(b);
        }
    }
    up.push(a);
    up.extend(down.into_iter().rev());
    (up, a)
}

/// Builds the wheel model. `psi[i]` is the path position of the `i`-th
/// leaf of `B_h` in left-to-right order.
pub fn wheel_from_tree_path(h: u32, psi: &[usize]) -> Result<WheelFromTree, ConstructionError> {
    let host = tree_path_host(h, psi)?;
    let leaves = 1usize << h;
    let first_leaf = leaves - 1;
    let n_tree = 2 * leaves - 1;
    let pos_of = |p: usize| n_tree + p;
    let leaf_at: BTreeMap<usize, Vertex> = psi.iter().enumerate().map(|(i, &p)| (p, first_leaf + i)).collect();

    let u = leaf_at[&0];
    let v = leaf_at[&(leaves - 1)];
    let (utv, w) = heap_path(u, v);
    let on_utv: BTreeSet<Vertex> = utv.iter().copied().collect();

    // heap ids grow with depth, so the first disjoint subtree is a shallowest one
    let tau_root = (0..n_tree)
        .find(|&t| !utv.iter().any(|&x| is_descendant(x, t)))
        .expect("a binary tree of height > 2 has a subtree missing any leaf-to-leaf path");
    let tau: BTreeSet<Vertex> = (0..n_tree).filter(|&x| is_descendant(x, tau_root)).collect();
    let mut q: Vec<usize> = tau.iter().filter(|&&x| x >= first_leaf).map(|&x| psi[x - first_leaf]).collect();
    q.sort_unstable();
    let m = q.len();

    let case = if w == 0 { WheelCase::AtRoot } else { WheelCase::BelowRoot };

    // rim: [q_i, q_(i+1)) for i < m, then {q_m}, then the rest closed through uTv
    let mut rim: Vec<BTreeSet<Vertex>> = Vec::with_capacity(m + 1);
    for i in 0..m - 1 {
        rim.push((q[i]..q[i + 1]).map(pos_of).collect());
    }
    rim.push(BTreeSet::from([pos_of(q[m - 1])]));
    let mut closing: BTreeSet<Vertex> = (q[m - 1] + 1..leaves).chain(0..q[0]).map(pos_of).collect();
    closing.extend(on_utv.iter().copied());
    rim.push(closing);

    // hub: tau plus its tree route towards w, up to the first uTv vertex
    let mut hub = tau;
    let (route, _) = heap_path(tau_root, w);
    for &x in &route[1..] {
        if on_utv.contains(&x) {
            break;
        }
        hub.insert(x);
    }

    let order = m + 1;
    let mut branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>> = rim.into_iter().enumerate().collect();
    branch_sets.insert(order, hub);
    let construction = Construction {
        host,
        pattern: wheel(order)?,
        model: MinorModel::new(branch_sets),
        order,
    };
    Ok(WheelFromTree {
        construction,
        case,
        tau_root,
        q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::minor::is_minor;
    use rand::SeedableRng;

    fn check(h: u32, psi: &[usize]) -> WheelFromTree {
        let out = wheel_from_tree_path(h, psi).unwrap();
        assert_eq!(out.construction.verify(), Ok(()), "h = {h}, psi = {psi:?}");
        assert!(out.construction.order >= promised_order(h));
        assert_eq!(out.construction.order, out.q.len() + 1);
        let need = match out.case {
            WheelCase::BelowRoot => 1 << (h - 1),
            WheelCase::AtRoot => 1 << (h - 2),
        };
        assert!(out.tau_leaves() >= need, "{:?} gave only {} leaves", out.case, out.tau_leaves());
        out
    }

    #[test]
    fn identity_matching_h3() {
        let psi: Vec<usize> = (0..8).collect();
        let out = check(3, &psi);
        // u and v are the outermost leaves, so w is the root
        assert_eq!(out.case, WheelCase::AtRoot);
        assert!(out.construction.order >= 3);
    }

    #[test]
    fn reversed_matching_h4() {
        let psi: Vec<usize> = (0..16).rev().collect();
        let out = check(4, &psi);
        assert!(out.construction.order >= 5);
    }

    #[test]
    fn seeded_random_h5() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let psi = random_psi(&mut rng, 5);
        let out = check(5, &psi);
        assert!(out.construction.order >= 9);
        let hub = out.construction.model.get(out.construction.order).unwrap();
        let tau_leaves = hub.iter().filter(|&&x| (31..63).contains(&x) && is_descendant(x, out.tau_root)).count();
        assert!(tau_leaves >= 8);
    }

    #[test]
    fn below_root_case_is_reached() {
        // ends of the path both matched into the left subtree
        let mut psi: Vec<usize> = (0..8).collect();
        psi.swap(1, 7);
        let out = check(3, &psi);
        assert_eq!(out.case, WheelCase::BelowRoot);
        assert_eq!(out.tau_root, 2);
        assert_eq!(out.construction.order, 5);
    }

    #[test]
    fn sweep_small_heights() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for h in 3..=7 {
            for _ in 0..10 {
                check(h, &random_psi(&mut rng, h));
            }
        }
    }

    #[test]
    fn exact_search_agrees_for_h3() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..3 {
            let psi = random_psi(&mut rng, 3);
            let out = check(3, &psi);
            let c = &out.construction;
            assert!(is_minor(&c.pattern, &c.host).unwrap().is_found());
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            wheel_from_tree_path(2, &[0, 1, 2, 3]),
            Err(ConstructionError::Precondition(_))
        ));
        assert!(matches!(
            wheel_from_tree_path(3, &[0, 0, 1, 2, 3, 4, 5, 6]),
            Err(ConstructionError::InvalidInput(_))
        ));
        assert!(wheel_from_tree_path(3, &[0, 1]).is_err());
    }
}
