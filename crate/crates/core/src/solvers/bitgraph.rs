//! Dense bitset view of a small graph, positions `0..n` in id order.

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone)]
pub(crate) struct BitGraph {
    pub n: usize,
    pub adj: Vec<u64>,
    pub ids: Vec<Vertex>,
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

impl BitGraph {
    /// Panics if the graph has more than 64 vertices; callers check first.
    pub fn new(g: &Graph) -> Self {
        assert!(g.vertex_count() <= 64, "bitset graphs hold at most 64 vertices");
        let ids: Vec<Vertex> = g.vertices().collect();
        let pos = |v: Vertex| ids.binary_search(&v).expect("vertex present");
        let adj = ids
            .iter()
            .map(|&v| g.neighbors(v).fold(0u64, |m, w| m | 1 << pos(w)))
            .collect();
        BitGraph { n: ids.len(), adj, ids }
    }

    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn neighborhood(&self, set: u64) -> u64 {
        bits(set).fold(0, |m, i| m | self.adj[i])
    }

    /// Vertices of `within` reachable from `start` inside `within`.
    pub fn flood(&self, start: u64, within: u64) -> u64 {
        let mut seen = start & within;
        let mut frontier = seen;
        while frontier != 0 {
            let next = self.neighborhood(frontier) & within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn components(&self, within: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut rest = within;
        while rest != 0 {
            let c = self.flood(rest & rest.wrapping_neg(), within);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn to_ids(&self, mask: u64) -> std::collections::BTreeSet<Vertex> {
        bits(mask).map(|i| self.ids[i]).collect()
    }
}
