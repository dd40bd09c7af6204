//! Generators for the parameterized graph families, and the `Lambda(T)`
//! family of tree + path + apex graphs.
//!
//! Every generator uses a fixed id layout, documented on the function, so
//! that constructions and tests can address named vertices directly.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{make_graph, tree_canonical_form, tree_metrics, Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("{family} needs order at least {min}, got {got}")]
    OrderTooSmall {
        family: &'static str,
        min: usize,
        got: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("path has {len} vertices but the tree has {leaves} leaves; need at least ceil(sqrt({leaves})) = {min}")]
    PathTooShort { len: usize, leaves: usize, min: usize },
    #[error("matching has {got} entries for a path of {len} vertices")]
    MatchingLength { got: usize, len: usize },
    #[error("matched vertex {0} is not a leaf of the tree")]
    NotALeaf(Vertex),
    #[error("leaf {0} is matched twice")]
    MatchingNotInjective(Vertex),
}

fn require(family: &'static str, min: usize, got: usize) -> Result<(), PatternError> {
    if got < min {
        Err(PatternError::OrderTooSmall { family, min, got })
    } else {
        Ok(())
    }
}

/// Smallest `s` with `s * s >= n`.
pub fn ceil_sqrt(n: usize) -> usize {
    let mut s = (n as f64).sqrt() as usize;
    while s * s < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}

pub fn path_graph(n: usize) -> Graph {
    let es: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    make_graph(n, &es).expect("path edges are in range")
}

pub fn cycle_graph(n: usize) -> Result<Graph, PatternError> {
    require("cycle", 3, n)?;
    let es: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(make_graph(n, &es)?)
}

pub fn complete_graph(n: usize) -> Graph {
    let es: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    make_graph(n, &es).expect("clique edges are in range")
}

/// Star with centre 0 and leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    let es: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    make_graph(leaves + 1, &es).expect("star edges are in range")
}

/// Complete bipartite graph, sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let es: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
    make_graph(a + b, &es).expect("bipartite edges are in range")
}

/// Wheel of order `r`: rim cycle on `0..r`, hub `r`.
pub fn wheel(r: usize) -> Result<Graph, PatternError> {
    require("wheel", 3, r)?;
    let mut es: Vec<_> = (0..r).map(|i| (i, (i + 1) % r)).collect();
    es.extend((0..r).map(|i| (i, r)));
    Ok(make_graph(r + 1, &es)?)
}

/// Double wheel of order `r`: rim on `0..r`, hubs `r` and `r + 1`, which
/// are not adjacent to each other.
pub fn double_wheel(r: usize) -> Result<Graph, PatternError> {
    require("double wheel", 3, r)?;
    let mut es: Vec<_> = (0..r).map(|i| (i, (i + 1) % r)).collect();
    es.extend((0..r).map(|i| (i, r)));
    es.extend((0..r).map(|i| (i, r + 1)));
    Ok(make_graph(r + 2, &es)?)
}

/// Ids of the subdivided ladder: `x_i = i`, `y_i = r + i`, `z_i = 2r + i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XiLayout {
    pub r: usize,
}

impl XiLayout {
    pub fn x(self, i: usize) -> Vertex {
        i
    }
    pub fn y(self, i: usize) -> Vertex {
        self.r + i
    }
    pub fn z(self, i: usize) -> Vertex {
        2 * self.r + i
    }
}

/// The 2 x r grid with every vertical edge subdivided once: an x-path and a
/// z-path of `r` vertices each, joined through the middle vertices `y_i`.
pub fn xi(r: usize) -> Result<Graph, PatternError> {
    require("xi", 1, r)?;
    let l = XiLayout { r };
    let mut es = Vec::with_capacity(4 * r);
    for i in 1..r {
        es.push((l.x(i - 1), l.x(i)));
        es.push((l.z(i - 1), l.z(i)));
    }
    for i in 0..r {
        es.push((l.x(i), l.y(i)));
        es.push((l.y(i), l.z(i)));
    }
    Ok(make_graph(3 * r, &es)?)
}

/// Ids of the yurt graph: bottom row `x_i = i`, top row `y_i = k + i`,
/// apex `o = 2k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YurtLayout {
    pub k: usize,
}

impl YurtLayout {
    pub fn x(self, i: usize) -> Vertex {
        i
    }
    pub fn y(self, i: usize) -> Vertex {
        self.k + i
    }
    pub fn apex(self) -> Vertex {
        2 * self.k
    }
}

/// The 2 x k grid plus an apex adjacent to every vertex of the top row.
pub fn yurt(k: usize) -> Result<Graph, PatternError> {
    require("yurt", 1, k)?;
    let l = YurtLayout { k };
    let mut es = Vec::with_capacity(4 * k);
    for i in 1..k {
        es.push((l.x(i - 1), l.x(i)));
        es.push((l.y(i - 1), l.y(i)));
    }
    for i in 0..k {
        es.push((l.x(i), l.y(i)));
        es.push((l.y(i), l.apex()));
    }
    Ok(make_graph(2 * k + 1, &es)?)
}

/// Comb with `r` teeth: spine `0..r`, tooth of spine vertex `i` is `r + i`.
pub fn comb(r: usize) -> Result<Graph, PatternError> {
    require("comb", 1, r)?;
    let mut es: Vec<_> = (1..r).map(|i| (i - 1, i)).collect();
    es.extend((0..r).map(|i| (i, r + i)));
    Ok(make_graph(2 * r, &es)?)
}

/// Complete binary tree of height `h` in heap order: root 0, children of
/// `i` are `2i + 1` and `2i + 2`; the leaves are `2^h - 1 .. 2^(h+1) - 1`.
pub fn complete_binary_tree(h: u32) -> Graph {
    let n = (1usize << (h + 1)) - 1;
    let es: Vec<_> = (1..n).map(|i| ((i - 1) / 2, i)).collect();
    make_graph(n, &es).expect("heap edges are in range")
}

/// Leaves of `complete_binary_tree(h)` in left-to-right order.
pub fn binary_tree_leaves(h: u32) -> std::ops::Range<Vertex> {
    (1usize << h) - 1..(1usize << (h + 1)) - 1
}

/// A member of `Lambda(T)`: a tree, a path whose every vertex is matched to
/// a distinct leaf of the tree, and an apex adjacent to the whole path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaInstance {
    graph: Graph,
    tree_vertices: BTreeSet<Vertex>,
    path: Vec<Vertex>,
    apex: Vertex,
    /// Leaf matched to each path vertex, aligned with `path`.
    matched_leaves: Vec<Vertex>,
}

/// Why a graph fails to be a member of `Lambda(T)`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaViolation {
    #[error("graph has {found} vertices; need the tree's {tree} plus a nonempty path and an apex")]
    VertexCount { tree: usize, found: usize },
    #[error("no vertex is adjacent to exactly a path")]
    NoApex,
    #[error("removing apex and path does not leave a copy of the tree")]
    TreeMismatch,
    #[error("path of {len} vertices is shorter than ceil(sqrt(#leaves)) = {min}")]
    PathTooShort { len: usize, min: usize },
    #[error("path vertex {0} has no edge to a leaf")]
    UnmatchedPathVertex(Vertex),
    #[error("edge {{{0}, {1}}} is not a tree, path, apex or matching edge")]
    ExtraEdge(Vertex, Vertex),
    #[error("leaf {0} is matched to two path vertices")]
    SharedLeaf(Vertex),
}

impl LambdaViolation {
    // how far the decomposition got before failing
    fn depth(&self) -> u8 {
        match self {
            LambdaViolation::VertexCount { .. } | LambdaViolation::NoApex => 0,
            LambdaViolation::TreeMismatch => 1,
            _ => 2,
        }
    }
}

impl LambdaInstance {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tree_vertices(&self) -> &BTreeSet<Vertex> {
        &self.tree_vertices
    }

    pub fn tree(&self) -> Graph {
        self.graph.induced_unchecked(&self.tree_vertices)
    }

    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    pub fn apex(&self) -> Vertex {
        self.apex
    }

    pub fn matched_leaves(&self) -> &[Vertex] {
        &self.matched_leaves
    }

    /// Matching edges as `(path vertex, leaf)`.
    pub fn matching(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.path.iter().copied().zip(self.matched_leaves.iter().copied())
    }

    /// Checks the four membership conditions against the stored graph.
    pub fn validate(&self) -> Result<(), LambdaViolation> {
        let tree = self.tree();
        let metrics = tree_metrics(&tree).map_err(|_| LambdaViolation::TreeMismatch)?;
        let min = ceil_sqrt(metrics.leaves.len());
        if self.path.is_empty() || self.path.len() < min {
            return Err(LambdaViolation::PathTooShort {
                len: self.path.len(),
                min,
            });
        }
        if !self.graph.is_path(&self.path) {
            return Err(LambdaViolation::NoApex);
        }
        let mut used = BTreeSet::new();
        for (p, l) in self.matching() {
            if !metrics.leaves.contains(&l) || !self.graph.has_edge(p, l) {
                return Err(LambdaViolation::UnmatchedPathVertex(p));
            }
            if !used.insert(l) {
                return Err(LambdaViolation::SharedLeaf(l));
            }
        }
        let mut allowed: BTreeSet<(Vertex, Vertex)> = tree.edges().collect();
        allowed.extend(self.path.windows(2).map(|w| crate::graph::edge(w[0], w[1])));
        allowed.extend(self.path.iter().map(|&p| crate::graph::edge(p, self.apex)));
        allowed.extend(self.matching().map(|(p, l)| crate::graph::edge(p, l)));
        if let Some((u, v)) = self.graph.edges().find(|e| !allowed.contains(e)) {
            return Err(LambdaViolation::ExtraEdge(u, v));
        }
        if self.graph.edge_count() != allowed.len() {
            return Err(LambdaViolation::NoApex);
        }
        Ok(())
    }
}

/// Assembles a `Lambda(T)` member. The tree is relabeled to `0..t` in id
/// order, the path occupies `t..t + path_len` and the apex is `t + path_len`.
/// `matching[i]` is the leaf (an id of `tree`) matched to path vertex `i`.
pub fn lambda_build(
    tree: &Graph,
    path_len: usize,
    matching: &[Vertex],
) -> Result<LambdaInstance, PatternError> {
    let metrics = tree_metrics(tree)?;
    let min = ceil_sqrt(metrics.leaves.len()).max(1);
    if path_len < min {
        return Err(PatternError::PathTooShort {
            len: path_len,
            leaves: metrics.leaves.len(),
            min,
        });
    }
    if matching.len() != path_len {
        return Err(PatternError::MatchingLength {
            got: matching.len(),
            len: path_len,
        });
    }
    let mut seen = BTreeSet::new();
    for &l in matching {
        if !metrics.leaves.contains(&l) {
            return Err(PatternError::NotALeaf(l));
        }
        if !seen.insert(l) {
            return Err(PatternError::MatchingNotInjective(l));
        }
    }
    let (relabeled, order) = tree.relabel_compact();
    let index: BTreeMap<Vertex, Vertex> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let t = order.len();
    let path: Vec<Vertex> = (t..t + path_len).collect();
    let apex = t + path_len;
    let matched_leaves: Vec<Vertex> = matching.iter().map(|l| index[l]).collect();
    let mut es: Vec<_> = relabeled.edges().collect();
    es.extend(path.windows(2).map(|w| (w[0], w[1])));
    es.extend(path.iter().map(|&p| (p, apex)));
    es.extend(path.iter().copied().zip(matched_leaves.iter().copied()));
    let graph = make_graph(apex + 1, &es)?;
    let inst = LambdaInstance {
        graph,
        tree_vertices: (0..t).collect(),
        path,
        apex,
        matched_leaves,
    };
    debug_assert_eq!(inst.validate(), Ok(()));
    Ok(inst)
}

/// Outcome of [`is_in_lambda`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaMembership {
    Member(LambdaInstance),
    NotMember(LambdaViolation),
}

impl LambdaMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, LambdaMembership::Member(_))
    }
}

/// Decides whether `h` is a member of `Lambda(tree)` (up to isomorphism of
/// the tree part).
///
/// The apex determines the rest: its neighbourhood must be the path, and
/// what remains must be the tree. Each apex candidate is tried; when none
/// works the violation from the candidate that got furthest is reported.
pub fn is_in_lambda(h: &Graph, tree: &Graph) -> LambdaMembership {
    let tree_form = match tree_canonical_form(tree) {
        Ok(f) => f,
        Err(_) => return LambdaMembership::NotMember(LambdaViolation::TreeMismatch),
    };
    let t = tree.vertex_count();
    let n = h.vertex_count();
    if n < t + 2 {
        return LambdaMembership::NotMember(LambdaViolation::VertexCount { tree: t, found: n });
    }
    let path_len = n - t - 1;
    let mut best: Option<LambdaViolation> = None;
    for apex in h.vertices() {
        if h.degree(apex) != path_len {
            continue;
        }
        match check_apex(h, apex, &tree_form) {
            Ok(inst) => return LambdaMembership::Member(inst),
            Err(v) => {
                if best.as_ref().map_or(true, |b| v.depth() > b.depth()) {
                    best = Some(v);
                }
            }
        }
    }
    LambdaMembership::NotMember(best.unwrap_or(LambdaViolation::NoApex))
}

fn check_apex(h: &Graph, apex: Vertex, tree_form: &str) -> Result<LambdaInstance, LambdaViolation> {
    let path_set: BTreeSet<Vertex> = h.neighbors(apex).collect();
    let path = order_as_path(h, &path_set).ok_or(LambdaViolation::NoApex)?;
    let rest: BTreeSet<Vertex> = h
        .vertices()
        .filter(|v| *v != apex && !path_set.contains(v))
        .collect();
    let tree = h.induced_unchecked(&rest);
    if tree_canonical_form(&tree).ok().as_deref() != Some(tree_form) {
        return Err(LambdaViolation::TreeMismatch);
    }
    let leaves = tree_metrics(&tree)
        .map_err(|_| LambdaViolation::TreeMismatch)?
        .leaves;
    let min = ceil_sqrt(leaves.len());
    if path.len() < min {
        return Err(LambdaViolation::PathTooShort {
            len: path.len(),
            min,
        });
    }
    let mut used = BTreeSet::new();
    let mut matched_leaves = Vec::with_capacity(path.len());
    for &p in &path {
        let mut matched = None;
        for x in h.neighbors(p).filter(|x| rest.contains(x)) {
            if !leaves.contains(&x) || matched.is_some() {
                return Err(LambdaViolation::ExtraEdge(p.min(x), p.max(x)));
            }
            matched = Some(x);
        }
        let l = matched.ok_or(LambdaViolation::UnmatchedPathVertex(p))?;
        if !used.insert(l) {
            return Err(LambdaViolation::SharedLeaf(l));
        }
        matched_leaves.push(l);
    }
    Ok(LambdaInstance {
        graph: h.clone(),
        tree_vertices: rest,
        path,
        apex,
        matched_leaves,
    })
}

/// Orders `set` along the path it induces, starting from the smaller
/// endpoint; `None` if the induced graph is not exactly a path.
fn order_as_path(h: &Graph, set: &BTreeSet<Vertex>) -> Option<Vec<Vertex>> {
    if set.is_empty() {
        return None;
    }
    let sub = h.induced_unchecked(set);
    if sub.edge_count() + 1 != set.len() || !sub.is_connected() {
        return None;
    }
    if sub.vertices().any(|v| sub.degree(v) > 2) {
        return None;
    }
    let start = sub
        .vertices()
        .find(|&v| sub.degree(v) <= 1)
        .expect("a path has an endpoint");
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(next) = sub.neighbors(cur).find(|&w| Some(w) != prev) {
        order.push(next);
        prev = Some(cur);
        cur = next;
    }
    Some(order)
}
