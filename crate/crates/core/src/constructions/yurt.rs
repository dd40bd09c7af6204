//! Yurt graphs inside members of `Lambda(comb)`.
//!
//! The path of the member is matched to teeth of the comb. Reading the
//! matched teeth in path order gives a sequence of spine positions; a
//! monotone run of length `k` in it gives `k` matching edges that do not
//! cross. Path segments between them form the top row, spine segments
//! with their teeth the bottom row, and the apex stays the apex.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{tree_canonical_form, Vertex};
use crate::patterns::{ceil_sqrt, comb, lambda_build, yurt, LambdaInstance, YurtLayout};
use crate::solvers::model::MinorModel;

use super::es::{es_extract, Direction, MonotoneWitness};
use super::{invalid, precondition, Construction, ConstructionError};

/// Matched teeth needed for a monotone run of length `k`.
pub fn required_teeth(k: usize) -> usize {
    (k - 1) * (k - 1) + 1
}

/// A member of `Lambda(comb(l))` whose path has `path_len` vertices, each
/// matched to a distinct random tooth.
pub fn random_comb_lambda(rng: &mut impl Rng, l: usize, path_len: usize) -> Result<LambdaInstance, ConstructionError> {
    let tree = comb(l)?;
    let mut teeth: Vec<Vertex> = (l..2 * l).collect();
    teeth.shuffle(rng);
    teeth.truncate(path_len);
    Ok(lambda_build(&tree, path_len, &teeth)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YurtFromComb {
    pub construction: Construction,
    pub witness: MonotoneWitness,
}

/// Spine of a comb in order, with the tooth of each spine vertex.
fn comb_spine(inst: &LambdaInstance) -> Result<Vec<(Vertex, Vertex)>, ConstructionError> {
    let tree = inst.tree();
    let t = tree.vertex_count();
    if t % 2 == 1 || t < 4 {
        return Err(precondition(format!("tree has {t} vertices; a comb with at least two teeth is needed")));
    }
    if tree_canonical_form(&tree)? != tree_canonical_form(&comb(t / 2)?)? {
        return Err(invalid("tree is not a comb"));
    }
    let spine: BTreeSet<Vertex> = tree.vertices().filter(|&v| tree.degree(v) > 1).collect();
    let start = *spine
        .iter()
        .find(|&&v| tree.neighbors(v).filter(|w| spine.contains(w)).count() <= 1)
        .expect("a path has an end");
    let mut order = vec![start];
    while order.len() < spine.len() {
        let cur = *order.last().unwrap();
        let prev = order.len().checked_sub(2).map(|i| order[i]);
        let next = tree
            .neighbors(cur)
            .find(|w| spine.contains(w) && Some(*w) != prev)
            .expect("spine is a path");
        order.push(next);
    }
    Ok(order
        .into_iter()
        .map(|s| {
            let tooth = tree.neighbors(s).find(|w| !spine.contains(w)).expect("every spine vertex has a tooth");
            (s, tooth)
        })
        .collect())
}

pub fn yurt_from_lambda_comb(inst: &LambdaInstance, k: usize) -> Result<YurtFromComb, ConstructionError> {
    if k == 0 {
        return Err(precondition("yurt order must be at least 1"));
    }
    let spine = comb_spine(inst)?;
    let path = inst.path();
    if path.len() < required_teeth(k) {
        return Err(precondition(format!(
            "{} matched teeth; a yurt of order {k} needs (k - 1)^2 + 1 = {}",
            path.len(),
            required_teeth(k)
        )));
    }
    let spine_pos: BTreeMap<Vertex, usize> = spine.iter().enumerate().map(|(i, &(_, t))| (t, i)).collect();
    let seq: Vec<usize> = inst.matched_leaves().iter().map(|l| spine_pos[l]).collect();
    let witness = es_extract(&seq, k, k)?;

    let l = YurtLayout { k };
    let m = path.len();
    let picks = &witness.indices;
    let cut = |starts: &[usize], len: usize, j: usize| {
        let from = if j == 0 { 0 } else { starts[j] };
        let to = if j + 1 == starts.len() { len } else { starts[j + 1] };
        from..to
    };
    let mut branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for j in 0..k {
        branch_sets.insert(l.y(j), cut(picks, m, j).map(|i| path[i]).collect());
    }
    let n_spine = spine.len();
    let values: Vec<usize> = picks.iter().map(|&i| seq[i]).collect();
    // read the spine backwards for a decreasing run
    let oriented = |i: usize| match witness.direction {
        Direction::Increasing => i,
        Direction::Decreasing => n_spine - 1 - i,
    };
    let starts: Vec<usize> = values.iter().map(|&v| oriented(v)).collect();
    for (j, &v) in values.iter().enumerate() {
        let mut set: BTreeSet<Vertex> = cut(&starts, n_spine, j).map(|i| spine[oriented(i)].0).collect();
        set.insert(spine[v].1);
        branch_sets.insert(l.x(j), set);
    }
    branch_sets.insert(l.apex(), BTreeSet::from([inst.apex()]));
    Ok(YurtFromComb {
        construction: Construction {
            host: inst.graph().clone(),
            pattern: yurt(k)?,
            model: MinorModel::new(branch_sets),
            order: k,
        },
        witness,
    })
}

/// The path length `Lambda(comb(l))` guarantees: `ceil(sqrt(l))`.
pub fn guaranteed_path(l: usize) -> usize {
    ceil_sqrt(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::bounds::yurt_comb_teeth;
    use crate::solvers::minor::is_minor;
    use rand::SeedableRng;

    fn check(inst: &LambdaInstance, k: usize) -> YurtFromComb {
        let out = yurt_from_lambda_comb(inst, k).unwrap();
        assert_eq!(out.construction.verify(), Ok(()));
        assert_eq!(out.construction.order, k);
        out
    }

    #[test]
    fn identity_matching_k2() {
        let inst = lambda_build(&comb(4).unwrap(), 4, &[4, 5, 6, 7]).unwrap();
        let out = check(&inst, 2);
        assert_eq!(out.witness.direction, Direction::Increasing);
        assert!(is_minor(&yurt(2).unwrap(), inst.graph()).unwrap().is_found());
    }

    #[test]
    fn seeded_k3_on_the_proof_comb() {
        let l = yurt_comb_teeth(3) as usize;
        assert_eq!(l, 25);
        // the shortest path Lambda allows is exactly what the run needs
        assert_eq!(guaranteed_path(l), required_teeth(3));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let inst = random_comb_lambda(&mut rng, l, guaranteed_path(l)).unwrap();
            check(&inst, 3);
        }
    }

    #[test]
    fn decreasing_matching_reverses_the_spine() {
        let inst = lambda_build(&comb(5).unwrap(), 5, &[9, 8, 7, 6, 5]).unwrap();
        let out = check(&inst, 3);
        assert_eq!(out.witness.direction, Direction::Decreasing);
    }

    #[test]
    fn works_on_relabeled_members() {
        // membership recognition yields different ids for the same member
        let inst = lambda_build(&comb(4).unwrap(), 2, &[7, 5]).unwrap();
        let crate::patterns::LambdaMembership::Member(found) = crate::patterns::is_in_lambda(inst.graph(), &comb(4).unwrap()) else {
            panic!("member not recognised");
        };
        check(&found, 2);
    }

    #[test]
    fn sweep_k2_to_k4() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for k in 2..=4 {
            let l = yurt_comb_teeth(k as u64) as usize;
            for _ in 0..10 {
                let len = rng.gen_range(guaranteed_path(l)..=l.min(guaranteed_path(l) + 6));
                let inst = random_comb_lambda(&mut rng, l, len).unwrap();
                check(&inst, k);
            }
        }
    }

    #[test]
    fn rejects_small_combs_and_short_paths() {
        let inst = lambda_build(&comb(1).unwrap(), 2, &[0, 1]).unwrap();
        assert!(matches!(yurt_from_lambda_comb(&inst, 2), Err(ConstructionError::Precondition(_))));
        let inst = lambda_build(&comb(9).unwrap(), 3, &[9, 10, 11]).unwrap();
        assert!(matches!(yurt_from_lambda_comb(&inst, 3), Err(ConstructionError::Precondition(_))));
        let inst = lambda_build(&crate::patterns::star(4), 2, &[1, 2]).unwrap();
        assert!(yurt_from_lambda_comb(&inst, 1).is_err());
    }
}
