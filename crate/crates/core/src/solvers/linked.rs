//! Linked vertex sets.
//!
//! `S` is linked in `G` when for every two subsets `X1`, `X2` of `S` of
//! equal size there are `|X1|` vertex-disjoint paths between them, each with
//! only its endpoints in `S` and none of length exactly one. A vertex in
//! `X1 ∩ X2` must be joined to itself by a null path: it is an endpoint of
//! one path on each side and the paths are disjoint. So only disjoint pairs
//! need checking, and for those the paths are found by a unit-capacity
//! vertex flow that never enters `S` except at the two ends and ignores
//! edges inside `S`.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::budget::Budget;
use crate::graph::{Graph, Vertex};

/// Exhaustive checking is limited to sets of at most this many vertices.
pub const LINKED_EXHAUSTIVE_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Linkedness {
    Linked,
    /// A pair of equal-size subsets that cannot be joined.
    NotLinked { x1: BTreeSet<Vertex>, x2: BTreeSet<Vertex> },
    /// The check was cut short (budget, or sampling found no failure).
    Unknown,
}

impl Linkedness {
    pub fn is_linked(&self) -> bool {
        matches!(self, Linkedness::Linked)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LinkedOptions {
    pub budget: Budget,
    /// For sets too large to enumerate: test this many random pairs. A
    /// failure is conclusive, success only gives `Unknown`.
    pub samples: Option<(usize, u64)>,
}

impl Default for LinkedOptions {
    fn default() -> Self {
        LinkedOptions {
            budget: Budget::unlimited(),
            samples: None,
        }
    }
}

pub fn is_linked(g: &Graph, s: &BTreeSet<Vertex>) -> Linkedness {
    is_linked_with(g, s, &LinkedOptions::default())
}

pub fn is_linked_with(g: &Graph, s: &BTreeSet<Vertex>, opts: &LinkedOptions) -> Linkedness {
    if s.iter().any(|v| !g.contains_vertex(*v)) {
        let x: BTreeSet<Vertex> = s.iter().copied().filter(|v| !g.contains_vertex(*v)).take(1).collect();
        return Linkedness::NotLinked { x1: x.clone(), x2: x };
    }
    let items: Vec<Vertex> = s.iter().copied().collect();
    let flow = FlowNet::new(g, s);
    if items.len() > LINKED_EXHAUSTIVE_MAX {
        let Some((count, seed)) = opts.samples else {
            return Linkedness::Unknown;
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            if opts.budget.expired() {
                break;
            }
            let mut shuffled = items.clone();
            shuffled.shuffle(&mut rng);
            let t = rand::Rng::gen_range(&mut rng, 1..=items.len() / 2);
            let x1: BTreeSet<Vertex> = shuffled[..t].iter().copied().collect();
            let x2: BTreeSet<Vertex> = shuffled[t..2 * t].iter().copied().collect();
            if flow.max_disjoint(&x1, &x2) < t {
                return Linkedness::NotLinked { x1, x2 };
            }
        }
        return Linkedness::Unknown;
    }
    let m = items.len();
    for t in 1..=m / 2 {
        for mask1 in 0u32..(1 << m) {
            if mask1.count_ones() as usize != t {
                continue;
            }
            if opts.budget.expired() {
                return Linkedness::Unknown;
            }
            let rest = !mask1 & ((1 << m) - 1);
            // enumerate subsets of the rest; skip mirrored pairs
            let mut mask2 = rest;
            loop {
                if mask2.count_ones() as usize == t && mask1 < mask2 {
                    let pick = |mask: u32| -> BTreeSet<Vertex> {
                        (0..m).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect()
                    };
                    let (x1, x2) = (pick(mask1), pick(mask2));
                    if flow.max_disjoint(&x1, &x2) < t {
                        return Linkedness::NotLinked { x1, x2 };
                    }
                }
                if mask2 == 0 {
                    break;
                }
                mask2 = (mask2 - 1) & rest;
            }
        }
    }
    Linkedness::Linked
}

/// Admissible adjacency of the host: edges with both ends in `S` dropped,
/// since they only give paths of length one or paths through `S`.
struct FlowNet {
    ids: Vec<Vertex>,
    in_s: Vec<bool>,
    adj: Vec<Vec<usize>>,
}

/// Residual network for a unit-capacity max flow (Edmonds-Karp).
struct Residual {
    to: Vec<usize>,
    cap: Vec<i32>,
    out: Vec<Vec<usize>>,
}

impl Residual {
    fn new(nodes: usize) -> Self {
        Residual {
            to: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, a: usize, b: usize) {
        self.out[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(1);
        self.out[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![usize::MAX; self.out.len()];
            let mut queue = VecDeque::from([s]);
            let mut reached = vec![false; self.out.len()];
            reached[s] = true;
            while let Some(v) = queue.pop_front() {
                for &e in &self.out[v] {
                    let w = self.to[e];
                    if self.cap[e] > 0 && !reached[w] {
                        reached[w] = true;
                        via[w] = e;
                        queue.push_back(w);
                    }
                }
            }
            if !reached[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

impl FlowNet {
    fn new(g: &Graph, s: &BTreeSet<Vertex>) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let idx = |v: Vertex| ids.binary_search(&v).unwrap();
        let in_s: Vec<bool> = ids.iter().map(|v| s.contains(v)).collect();
        let adj = ids
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .map(idx)
                    .filter(|&w| !(in_s[idx(v)] && in_s[w]))
                    .collect()
            })
            .collect();
        FlowNet { ids, in_s, adj }
    }

    /// Maximum number of vertex-disjoint admissible paths between the
    /// disjoint sets `x1` and `x2`. Vertex `i` is split into `2i -> 2i + 1`;
    /// `x1` vertices can only be entered from the source and `x2` vertices
    /// only left towards the sink, so no vertex of `S` is ever internal.
    fn max_disjoint(&self, x1: &BTreeSet<Vertex>, x2: &BTreeSet<Vertex>) -> usize {
        let n = self.ids.len();
        let idx = |v: &Vertex| self.ids.binary_search(v).unwrap();
        let mut role = vec![0u8; n];
        x1.iter().for_each(|v| role[idx(v)] = 1);
        x2.iter().for_each(|v| role[idx(v)] = 2);
        let usable = |i: usize| !self.in_s[i] || role[i] != 0;
        let (src, sink) = (2 * n, 2 * n + 1);
        let mut net = Residual::new(2 * n + 2);
        for i in (0..n).filter(|&i| usable(i)) {
            net.arc(2 * i, 2 * i + 1);
            match role[i] {
                1 => net.arc(src, 2 * i),
                2 => net.arc(2 * i + 1, sink),
                _ => {}
            }
            if role[i] == 2 {
                continue;
            }
            for &j in &self.adj[i] {
                if usable(j) && role[j] != 1 {
                    net.arc(2 * i + 1, 2 * j);
                }
            }
        }
        net.max_flow(src, sink, x1.len())
    }
}
