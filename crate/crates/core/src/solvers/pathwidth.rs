//! Exact pathwidth through the vertex separation number.
//!
//! For a vertex ordering, the separation at a prefix `S` is the number of
//! vertices of `S` with a neighbour outside `S`. Pathwidth equals the least,
//! over orderings, of the largest separation. The search has the same
//! level-by-level shape as the treewidth solver.

use std::collections::{BTreeSet, HashMap};

use crate::budget::Budget;
use crate::decomposition::{verify_path_decomposition, PathDecomposition};
use crate::graph::{Graph, Vertex};

use super::bitgraph::{bits, BitGraph};
use super::SolverError;

pub const PATHWIDTH_MAX_VERTICES: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathwidthResult {
    pub width: usize,
    /// Vertex layout achieving `width`.
    pub layout: Vec<Vertex>,
    pub decomposition: PathDecomposition,
}

pub fn exact_pathwidth(g: &Graph) -> Result<PathwidthResult, SolverError> {
    exact_pathwidth_within(g, &Budget::unlimited())
}

pub fn exact_pathwidth_within(g: &Graph, budget: &Budget) -> Result<PathwidthResult, SolverError> {
    let n = g.vertex_count();
    if n > PATHWIDTH_MAX_VERTICES {
        return Err(SolverError::TooLarge {
            n,
            max: PATHWIDTH_MAX_VERTICES,
        });
    }
    let bg = BitGraph::new(g);
    let mut layout = Vec::with_capacity(n);
    let mut width = 0;
    for comp in bg.components(bg.full()) {
        let (w, o) = component_pathwidth(&bg, comp, budget)?;
        width = width.max(w);
        layout.extend(o);
    }
    let layout: Vec<Vertex> = layout.iter().map(|&i| bg.ids[i]).collect();
    let decomposition = decomposition_from_layout(g, &layout);
    debug_assert!(verify_path_decomposition(g, &decomposition).is_ok());
    debug_assert_eq!(decomposition.width(), width);
    Ok(PathwidthResult {
        width,
        layout,
        decomposition,
    })
}

fn boundary(bg: &BitGraph, comp: u64, s: u64) -> u64 {
    bits(s).fold(0, |m, v| if bg.adj[v] & comp & !s != 0 { m | 1 << v } else { m })
}

/// Greedy layout: always add the vertex giving the smallest boundary.
fn greedy(bg: &BitGraph, comp: u64) -> (usize, Vec<usize>) {
    let mut s = 0u64;
    let mut order = Vec::new();
    let mut width = 0;
    while s != comp {
        let v = bits(comp & !s)
            .min_by_key(|&v| (boundary(bg, comp, s | 1 << v).count_ones(), v))
            .unwrap();
        s |= 1 << v;
        width = width.max(boundary(bg, comp, s).count_ones() as usize);
        order.push(v);
    }
    (width, order)
}

fn component_pathwidth(
    bg: &BitGraph,
    comp: u64,
    budget: &Budget,
) -> Result<(usize, Vec<usize>), SolverError> {
    let (ub, heuristic) = greedy(bg, comp);
    let mut best: HashMap<u64, (u8, u8)> = HashMap::new();
    let mut layer: Vec<(u64, u8)> = vec![(0, 0)];
    for _ in 0..comp.count_ones() {
        if budget.expired() {
            return Err(SolverError::BudgetExceeded);
        }
        let mut next: HashMap<u64, (u8, u8)> = HashMap::new();
        for &(s, val) in &layer {
            for v in bits(comp & !s) {
                let t = s | 1 << v;
                let nv = val.max(boundary(bg, comp, t).count_ones() as u8);
                if (nv as usize) >= ub {
                    continue;
                }
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

/// Path decomposition from a layout: bag `i` holds the `i`-th vertex and
/// every earlier vertex that still has a neighbour at position `i` or later.
pub fn decomposition_from_layout(g: &Graph, layout: &[Vertex]) -> PathDecomposition {
    let pos: HashMap<Vertex, usize> = layout.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let last_nb: Vec<usize> = layout
        .iter()
        .map(|&v| g.neighbors(v).map(|w| pos[&w]).max().unwrap_or(0))
        .collect();
    let bags = (0..layout.len())
        .map(|i| {
            let mut bag: BTreeSet<Vertex> = (0..i)
                .filter(|&j| last_nb[j] >= i)
                .map(|j| layout[j])
                .collect();
            bag.insert(layout[i]);
            bag
        })
        .collect();
    PathDecomposition::new(bags)
}
