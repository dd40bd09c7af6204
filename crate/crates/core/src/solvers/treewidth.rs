//! Exact treewidth by dynamic programming over elimination prefixes.
//!
//! For a set `S` of already eliminated vertices and a next vertex `v`, the
//! fill degree of `v` is `|Q(S, v)|`: the vertices outside `S + v` reachable
//! from `v` through `S`. The treewidth is the least, over orderings, of the
//! largest fill degree. The search runs level by level over prefixes and
//! drops every prefix whose running maximum already reaches a heuristic
//! upper bound, so only promising prefixes are stored.

use std::collections::{BTreeSet, HashMap};

use crate::budget::Budget;
use crate::decomposition::{verify_tree_decomposition, TreeDecomposition};
use crate::graph::{Graph, Vertex};

use super::bitgraph::{bits, BitGraph};
use super::SolverError;

pub const TREEWIDTH_MAX_VERTICES: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreewidthResult {
    pub width: usize,
    /// Elimination ordering achieving `width`.
    pub ordering: Vec<Vertex>,
    /// Witness decomposition of width `width`, built from `ordering`.
    pub decomposition: TreeDecomposition,
}

pub fn exact_treewidth(g: &Graph) -> Result<TreewidthResult, SolverError> {
    exact_treewidth_within(g, &Budget::unlimited())
}

pub fn exact_treewidth_within(g: &Graph, budget: &Budget) -> Result<TreewidthResult, SolverError> {
    let n = g.vertex_count();
    if n > TREEWIDTH_MAX_VERTICES {
        return Err(SolverError::TooLarge {
            n,
            max: TREEWIDTH_MAX_VERTICES,
        });
    }
    let bg = BitGraph::new(g);
    let mut order = Vec::with_capacity(n);
    let mut width = 0;
    for comp in bg.components(bg.full()) {
        let (w, o) = component_treewidth(&bg, comp, budget)?;
        width = width.max(w);
        order.extend(o);
    }
    let ordering: Vec<Vertex> = order.iter().map(|&i| bg.ids[i]).collect();
    let decomposition = decomposition_from_ordering(g, &ordering);
    debug_assert!(verify_tree_decomposition(g, &decomposition).is_ok());
    debug_assert_eq!(decomposition.width(), width);
    Ok(TreewidthResult {
        width,
        ordering,
        decomposition,
    })
}

/// `Q(S, v)`: vertices of `comp` outside `S + v` adjacent to the part of
/// `S + v` that is reachable from `v` within `S + v`.
fn q_set(bg: &BitGraph, comp: u64, s: u64, v: usize) -> u64 {
    let inside = s | 1 << v;
    let reach = bg.flood(1 << v, inside);
    bg.neighborhood(reach) & comp & !inside
}

/// Greedy min-fill elimination, used as the pruning bound.
fn min_fill(bg: &BitGraph, comp: u64) -> (usize, Vec<usize>) {
    let mut adj: Vec<u64> = bg.adj.iter().map(|a| a & comp).collect();
    let mut left = comp;
    let mut order = Vec::new();
    let mut width = 0;
    while left != 0 {
        let fill = |v: usize| -> usize {
            let nb: Vec<usize> = bits(adj[v] & left).collect();
            let mut missing = 0;
            for (i, &a) in nb.iter().enumerate() {
                missing += nb[i + 1..].iter().filter(|&&b| adj[a] >> b & 1 == 0).count();
            }
            missing
        };
        let v = bits(left)
            .min_by_key(|&v| (fill(v), (adj[v] & left).count_ones(), v))
            .unwrap();
        let nb = adj[v] & left & !(1 << v);
        width = width.max(nb.count_ones() as usize);
        for a in bits(nb) {
            adj[a] |= nb & !(1 << a);
        }
        left &= !(1 << v);
        order.push(v);
    }
    (width, order)
}

fn component_treewidth(
    bg: &BitGraph,
    comp: u64,
    budget: &Budget,
) -> Result<(usize, Vec<usize>), SolverError> {
    let (ub, heuristic) = min_fill(bg, comp);
    // best[S] = (running max, last vertex) for prefixes with max < ub
    let mut best: HashMap<u64, (u8, u8)> = HashMap::new();
    let mut layer: Vec<(u64, u8)> = vec![(0, 0)];
    let size = comp.count_ones();
    for _ in 0..size {
        if budget.expired() {
            return Err(SolverError::BudgetExceeded);
        }
        let mut next: HashMap<u64, (u8, u8)> = HashMap::new();
        for &(s, val) in &layer {
            for v in bits(comp & !s) {
                let q = q_set(bg, comp, s, v).count_ones() as u8;
                let nv = val.max(q);
                if (nv as usize) >= ub {
                    continue;
                }
                let t = s | 1 << v;
                let e = next.entry(t).or_insert((u8::MAX, 0));
                if nv < e.0 {
                    *e = (nv, v as u8);
                }
            }
        }
        layer = next.iter().map(|(&s, &(v, _))| (s, v)).collect();
        layer.sort_unstable();
        best.extend(next);
        if layer.is_empty() {
            break;
        }
    }
    match best.get(&comp) {
        Some(&(w, _)) => {
            let mut order = Vec::new();
            let mut s = comp;
            while s != 0 {
                let v = best[&s].1 as usize;
                order.push(v);
                s &= !(1 << v);
            }
            order.reverse();
            Ok((w as usize, order))
        }
        None => Ok((ub, heuristic)),
    }
}

/// Tree decomposition from an elimination ordering: the bag of `v` is `v`
/// with its higher neighbours in the fill graph, attached to the bag of the
/// earliest of those neighbours. Separate trees are chained together; their
/// bags are disjoint, so this keeps the decomposition valid.
pub fn decomposition_from_ordering(g: &Graph, ordering: &[Vertex]) -> TreeDecomposition {
    let pos: HashMap<Vertex, usize> = ordering.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut higher: Vec<BTreeSet<usize>> = ordering
        .iter()
        .map(|&v| g.neighbors(v).map(|w| pos[&w]).filter(|&j| j > pos[&v]).collect())
        .collect();
    let mut bags = std::collections::BTreeMap::new();
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for i in 0..ordering.len() {
        let hs = higher[i].clone();
        let mut bag: BTreeSet<Vertex> = hs.iter().map(|&j| ordering[j]).collect();
        bag.insert(ordering[i]);
        bags.insert(i, bag);
        match hs.iter().next() {
            Some(&parent) => {
                edges.push((i, parent));
                for &j in &hs {
                    if j != parent {
                        higher[parent].insert(j);
                    }
                }
            }
            None => roots.push(i),
        }
    }
    edges.extend(roots.windows(2).map(|w| (w[0], w[1])));
    TreeDecomposition {
        shape: crate::graph::make_graph(ordering.len(), &edges).expect("bag ids are in range"),
        bags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{connected_graphs, trees_up_to};
    use crate::patterns::*;

    fn tw(g: &Graph) -> usize {
        let r = exact_treewidth(g).unwrap();
        assert_eq!(verify_tree_decomposition(g, &r.decomposition), Ok(()));
        assert_eq!(r.decomposition.width(), r.width);
        r.width
    }

    #[test]
    fn closed_forms() {
        assert_eq!(tw(&complete_graph(5)), 4);
        assert_eq!(tw(&Graph::empty()), 0);
        assert_eq!(tw(&complete_graph(1)), 0);
        for n in 2..12 {
            assert_eq!(tw(&path_graph(n)), 1);
            assert_eq!(tw(&complete_graph(n)), n - 1);
        }
        for n in 3..14 {
            assert_eq!(tw(&cycle_graph(n).unwrap()), 2);
        }
        assert_eq!(tw(&complete_binary_tree(3)), 1);
    }

    #[test]
    fn pattern_regression_values() {
        assert_eq!(tw(&xi(5).unwrap()), 2);
        assert_eq!(tw(&wheel(6).unwrap()), 3);
        for k in 3..=5 {
            assert_eq!(tw(&yurt(k).unwrap()), 3);
        }
        assert_eq!(tw(&complete_bipartite(3, 3)), 3);
    }

    /// Brute force over all orderings for tiny graphs.
    fn tw_by_orderings(g: &Graph) -> usize {
        fn perms(items: &mut Vec<Vertex>, k: usize, out: &mut Vec<Vec<Vertex>>) {
            if k == items.len() {
                out.push(items.clone());
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                perms(items, k + 1, out);
                items.swap(k, i);
            }
        }
        let mut all = Vec::new();
        perms(&mut g.vertices().collect(), 0, &mut all);
        all.iter()
            .map(|o| decomposition_from_ordering(g, o).width())
            .min()
            .unwrap_or(0)
    }

    #[test]
    fn matches_ordering_brute_force_on_census() {
        for n in 1..=6 {
            for g in connected_graphs(n) {
                assert_eq!(tw(&g), tw_by_orderings(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn trees_have_width_one() {
        for t in trees_up_to(9).into_iter().filter(|t| t.vertex_count() > 1) {
            assert_eq!(tw(&t), 1);
        }
    }

    #[test]
    fn disconnected_takes_the_max() {
        let g = complete_graph(4).disjoint_union(&cycle_graph(5).unwrap(), 10).unwrap();
        assert_eq!(tw(&g), 3);
    }

    #[test]
    fn too_large_is_rejected() {
        assert_eq!(
            exact_treewidth(&path_graph(41)),
            Err(SolverError::TooLarge { n: 41, max: 40 })
        );
    }
}
