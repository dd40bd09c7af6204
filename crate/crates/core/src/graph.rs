//! Finite simple undirected graphs and the elementary minor operations.
//!
//! A [`Graph`] is an immutable value. Every operation that changes the
//! structure (contraction, deletion, dissolution) returns a new graph, so a
//! construction can be replayed step by step from snapshots.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge ({0}, {0}) is not allowed in a simple graph")]
    Loop(Vertex),
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("edge {{{0}, {1}}} is not in the graph")]
    MissingEdge(Vertex, Vertex),
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    NotDegreeTwo { vertex: Vertex, degree: usize },
    #[error("not a tree: {0}")]
    NotATree(TreeDefect),
    #[error("vertex sequence is not a path: {0}")]
    NotAPath(String),
    #[error("vertex {0} already exists")]
    DuplicateVertex(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeDefect {
    Empty,
    Disconnected,
    Cycle,
}

impl fmt::Display for TreeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeDefect::Empty => write!(f, "graph has no vertices"),
            TreeDefect::Disconnected => write!(f, "graph is disconnected"),
            TreeDefect::Cycle => write!(f, "cycle found"),
        }
    }
}

/// Normalized undirected edge, smaller endpoint first.
pub fn edge(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A finite simple undirected graph on an ordered set of non-negative ids.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.adj.keys().collect::<Vec<_>>())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Builds the graph on ids `0..n` with the given edges. Duplicate pairs
/// collapse into a single edge.
pub fn make_graph(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
    Graph::from_edges(0..n, edges.iter().copied())
}

impl Graph {
    pub fn empty() -> Self {
        Graph::default()
    }

    /// Builds a graph on an explicit vertex set. Every endpoint must be a
    /// member of `vertices`.
    pub fn from_edges(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> =
            vertices.into_iter().map(|v| (v, BTreeSet::new())).collect();
        let n = adj.len();
        let contiguous = adj.keys().next_back().map_or(true, |&last| last + 1 == n);
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            for x in [u, v] {
                if !adj.contains_key(&x) {
                    return Err(if contiguous {
                        GraphError::OutOfRange { vertex: x, n }
                    } else {
                        GraphError::UnknownVertex(x)
                    });
                }
            }
            adj.get_mut(&u).unwrap().insert(v);
            adj.get_mut(&v).unwrap().insert(u);
        }
        Ok(Graph { adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.adj.keys().copied().collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    /// Neighbours of `v`; empty for an unknown vertex.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|ns| ns.iter().copied())
    }

    pub fn neighbor_set(&self, v: Vertex) -> Option<&BTreeSet<Vertex>> {
        self.adj.get(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    /// Contracts the edge `{u, v}`. The merged vertex keeps the smaller id.
    pub fn contract_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let (keep, gone) = edge(u, v);
        let mut adj = self.adj.clone();
        let gone_ns = adj.remove(&gone).unwrap();
        for w in gone_ns {
            let ns = adj.get_mut(&w).unwrap();
            ns.remove(&gone);
            if w != keep {
                ns.insert(keep);
                adj.get_mut(&keep).unwrap().insert(w);
            }
        }
        Ok(Graph { adj })
    }

    /// Removes a degree-2 vertex and joins its two neighbours. If they are
    /// already adjacent the new edge collapses onto the existing one.
    pub fn dissolve_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let degree = self.degree(v);
        if degree != 2 {
            return Err(GraphError::NotDegreeTwo { vertex: v, degree });
        }
        let mut ns = self.adj[&v].iter().copied();
        let (a, b) = (ns.next().unwrap(), ns.next().unwrap());
        let mut adj = self.adj.clone();
        adj.remove(&v);
        adj.get_mut(&a).unwrap().remove(&v);
        adj.get_mut(&b).unwrap().remove(&v);
        adj.get_mut(&a).unwrap().insert(b);
        adj.get_mut(&b).unwrap().insert(a);
        Ok(Graph { adj })
    }

    /// Subdivides the edge `{u, v}` with a fresh vertex `w`.
    pub fn subdivide_edge(&self, u: Vertex, v: Vertex, w: Vertex) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        if self.contains_vertex(w) {
            return Err(GraphError::DuplicateVertex(w));
        }
        let mut adj = self.adj.clone();
        adj.get_mut(&u).unwrap().remove(&v);
        adj.get_mut(&v).unwrap().remove(&u);
        adj.get_mut(&u).unwrap().insert(w);
        adj.get_mut(&v).unwrap().insert(w);
        adj.insert(w, [u, v].into_iter().collect());
        Ok(Graph { adj })
    }

    pub fn delete_vertices(&self, vs: &BTreeSet<Vertex>) -> Result<Graph, GraphError> {
        for &v in vs {
            self.check_vertex(v)?;
        }
        let keep: BTreeSet<Vertex> = self.vertices().filter(|v| !vs.contains(v)).collect();
        Ok(self.induced_unchecked(&keep))
    }

    pub fn delete_edges(&self, es: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut adj = self.adj.clone();
        for &(u, v) in es {
            if !self.has_edge(u, v) {
                return Err(GraphError::MissingEdge(u, v));
            }
            adj.get_mut(&u).unwrap().remove(&v);
            adj.get_mut(&v).unwrap().remove(&u);
        }
        Ok(Graph { adj })
    }

    /// Returns a copy with the given edges added (existing edges are kept).
    pub fn with_edges(&self, es: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        Graph::from_edges(self.vertices(), self.edges().chain(es.iter().copied()))
    }

    pub fn induced_subgraph(&self, keep: &BTreeSet<Vertex>) -> Result<Graph, GraphError> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        Ok(self.induced_unchecked(keep))
    }

    pub(crate) fn induced_unchecked(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let adj = keep
            .iter()
            .filter_map(|v| {
                self.adj
                    .get(v)
                    .map(|ns| (*v, ns.iter().copied().filter(|w| keep.contains(w)).collect()))
            })
            .collect();
        Graph { adj }
    }

    /// Disjoint union; the vertices of `other` are shifted by `offset`.
    pub fn disjoint_union(&self, other: &Graph, offset: Vertex) -> Result<Graph, GraphError> {
        let shifted: Vec<Vertex> = other.vertices().map(|v| v + offset).collect();
        if let Some(&clash) = shifted.iter().find(|v| self.contains_vertex(**v)) {
            return Err(GraphError::DuplicateVertex(clash));
        }
        Graph::from_edges(
            self.vertices().chain(shifted),
            self.edges()
                .chain(other.edges().map(|(u, v)| (u + offset, v + offset))),
        )
    }

    /// Renames vertices to `0..n` preserving their order. Returns the new
    /// graph and the old ids indexed by new id.
    pub fn relabel_compact(&self) -> (Graph, Vec<Vertex>) {
        let order: Vec<Vertex> = self.vertices().collect();
        let index: BTreeMap<Vertex, Vertex> =
            order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let g = Graph::from_edges(0..order.len(), self.edges().map(|(u, v)| (index[&u], index[&v])))
            .expect("relabeling preserves simplicity");
        (g, order)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Components as vertex sets, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen.contains(&start) {
                continue;
            }
            let comp = self.reachable_from(start, |_| true);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` using only vertices accepted by `allow`
    /// (the start vertex itself is always included).
    pub fn reachable_from(&self, start: Vertex, allow: impl Fn(Vertex) -> bool) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if allow(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Whether `set` is nonempty and induces a connected subgraph.
    pub fn induces_connected(&self, set: &BTreeSet<Vertex>) -> bool {
        match set.iter().next() {
            None => false,
            Some(&s) => {
                set.iter().all(|v| self.contains_vertex(*v))
                    && self.reachable_from(s, |w| set.contains(&w)).len() == set.len()
            }
        }
    }

    /// BFS distances from `start`.
    pub fn bfs_distances(&self, start: Vertex) -> BTreeMap<Vertex, usize> {
        let mut dist = BTreeMap::from([(start, 0)]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for w in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS parent pointers from `root` (the root maps to itself).
    pub fn bfs_parents(&self, root: Vertex) -> BTreeMap<Vertex, Vertex> {
        let mut parent = BTreeMap::from([(root, root)]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                    e.insert(v);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Ok when the graph is a tree (connected, `|E| = |V| - 1`).
    pub fn check_tree(&self) -> Result<(), GraphError> {
        if self.vertex_count() == 0 {
            return Err(GraphError::NotATree(TreeDefect::Empty));
        }
        if !self.is_connected() {
            return Err(GraphError::NotATree(TreeDefect::Disconnected));
        }
        if self.edge_count() != self.vertex_count() - 1 {
            return Err(GraphError::NotATree(TreeDefect::Cycle));
        }
        Ok(())
    }

    pub fn is_tree(&self) -> bool {
        self.check_tree().is_ok()
    }

    /// The unique path between two vertices of a tree.
    pub fn tree_path(&self, from: Vertex, to: Vertex) -> Result<Vec<Vertex>, GraphError> {
        self.check_tree()?;
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        let parent = self.bfs_parents(to);
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            cur = parent[&cur];
            path.push(cur);
        }
        Ok(path)
    }

    /// Whether `vs` is a path in this graph: distinct vertices, consecutive
    /// ones adjacent.
    pub fn is_path(&self, vs: &[Vertex]) -> bool {
        let distinct: BTreeSet<_> = vs.iter().collect();
        !vs.is_empty()
            && distinct.len() == vs.len()
            && vs.iter().all(|v| self.contains_vertex(*v))
            && vs.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

/// A path given as its vertex sequence. A single vertex is the null path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPath(Vec<Vertex>);

impl VertexPath {
    pub fn new(host: &Graph, vertices: Vec<Vertex>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::NotAPath("no vertices".into()));
        }
        if !host.is_path(&vertices) {
            return Err(GraphError::NotAPath(format!("{vertices:?}")));
        }
        Ok(VertexPath(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_null(&self) -> bool {
        self.0.len() == 1
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        *self.0.last().unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMetrics {
    pub leaves: BTreeSet<Vertex>,
    pub diameter: usize,
}

/// Leaves (degree-1 vertices) and diameter (in edges) of a tree.
pub fn tree_metrics(t: &Graph) -> Result<TreeMetrics, GraphError> {
    t.check_tree()?;
    let leaves = t.vertices().filter(|&v| t.degree(v) == 1).collect();
    let start = t.vertices().next().unwrap();
    let far = farthest(t, start).0;
    let diameter = farthest(t, far).1;
    Ok(TreeMetrics { leaves, diameter })
}

/// Farthest vertex from `start` (smallest id among ties) and its distance.
fn farthest(g: &Graph, start: Vertex) -> (Vertex, usize) {
    let dist = g.bfs_distances(start);
    let mut best = (start, 0);
    for (&v, &d) in &dist {
        if d > best.1 {
            best = (v, d);
        }
    }
    best
}

/// A longest path of a tree: BFS to the farthest vertex, then again.
pub fn tree_longest_path(t: &Graph) -> Result<Vec<Vertex>, GraphError> {
    t.check_tree()?;
    let a = farthest(t, t.vertices().next().unwrap()).0;
    let b = farthest(t, a).0;
    t.tree_path(a, b)
}

/// Least common ancestor of `u` and `v` in the tree `t` rooted at `root`.
pub fn lca(t: &Graph, root: Vertex, u: Vertex, v: Vertex) -> Result<Vertex, GraphError> {
    t.check_tree()?;
    for x in [root, u, v] {
        t.check_vertex(x)?;
    }
    let parent = t.bfs_parents(root);
    let mut ancestors = BTreeSet::from([u]);
    let mut cur = u;
    while cur != root {
        cur = parent[&cur];
        ancestors.insert(cur);
    }
    let mut cur = v;
    while !ancestors.contains(&cur) {
        cur = parent[&cur];
    }
    Ok(cur)
}

/// Canonical string of an unrooted tree; two trees are isomorphic iff their
/// forms are equal. Rooted at the centre (or the smaller of the two
/// bicentre encodings).
pub fn tree_canonical_form(t: &Graph) -> Result<String, GraphError> {
    t.check_tree()?;
    let path = tree_longest_path(t)?;
    let d = path.len() - 1;
    let centres = if d % 2 == 0 {
        vec![path[d / 2]]
    } else {
        vec![path[d / 2], path[d / 2 + 1]]
    };
    Ok(centres
        .into_iter()
        .map(|c| rooted_form(t, c, None))
        .min()
        .unwrap())
}

fn rooted_form(t: &Graph, v: Vertex, parent: Option<Vertex>) -> String {
    let mut kids: Vec<String> = t
        .neighbors(v)
        .filter(|&w| Some(w) != parent)
        .map(|w| rooted_form(t, w, Some(v)))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let es: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        make_graph(n, &es).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let es: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        make_graph(n, &es).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let es: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        make_graph(n, &es).unwrap()
    }

    fn binary_tree(h: u32) -> Graph {
        let n = (1usize << (h + 1)) - 1;
        let es: Vec<_> = (1..n).map(|i| ((i - 1) / 2, i)).collect();
        make_graph(n, &es).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let p3 = make_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!((p3.vertex_count(), p3.edge_count()), (3, 2));
        let k1 = make_graph(1, &[]).unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
        let c4 = make_graph(4, &[(0, 1), (0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.edge_count(), 4);
    }

    #[test]
    fn make_graph_rejects_bad_pairs() {
        assert_eq!(make_graph(3, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            make_graph(3, &[(0, 3)]),
            Err(GraphError::OutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn contraction_examples() {
        let c3 = cycle(4).contract_edge(0, 1).unwrap();
        assert_eq!(c3, Graph::from_edges([0, 2, 3], [(0, 2), (2, 3), (3, 0)]).unwrap());
        let p2 = path(3).contract_edge(1, 0).unwrap();
        assert_eq!(p2, Graph::from_edges([0, 2], [(0, 2)]).unwrap());
        let k3 = complete(4).contract_edge(2, 3).unwrap();
        assert_eq!((k3.vertex_count(), k3.edge_count()), (3, 3));
        assert_eq!(
            path(3).contract_edge(0, 2),
            Err(GraphError::MissingEdge(0, 2))
        );
    }

    #[test]
    fn dissolve_examples() {
        let e = path(3).dissolve_vertex(1).unwrap();
        assert_eq!(e, Graph::from_edges([0, 2], [(0, 2)]).unwrap());
        let c3 = cycle(4).dissolve_vertex(2).unwrap();
        assert_eq!((c3.vertex_count(), c3.edge_count()), (3, 3));
        // neighbours already adjacent: the would-be parallel edge collapses
        let k2 = cycle(3).dissolve_vertex(0).unwrap();
        assert_eq!(k2, Graph::from_edges([1, 2], [(1, 2)]).unwrap());
        assert!(matches!(
            complete(4).dissolve_vertex(0),
            Err(GraphError::NotDegreeTwo { vertex: 0, degree: 3 })
        ));
    }

    #[test]
    fn dissolve_then_subdivide_restores_edges() {
        let g = cycle(6);
        let d = g.dissolve_vertex(3).unwrap();
        assert_eq!(d.subdivide_edge(2, 4, 3).unwrap(), g);
    }

    #[test]
    fn deletion_examples() {
        let k3 = complete(4).delete_vertices(&BTreeSet::from([3])).unwrap();
        assert_eq!(k3, complete(3));
        let split = path(5).delete_vertices(&BTreeSet::from([2])).unwrap();
        assert_eq!(split.connected_components().len(), 2);
        assert_eq!(split.edge_count(), 2);
        assert_eq!(cycle(5).delete_vertices(&BTreeSet::new()).unwrap(), cycle(5));
        assert_eq!(
            path(2).delete_vertices(&BTreeSet::from([7])),
            Err(GraphError::UnknownVertex(7))
        );
        let no_chord = cycle(4).delete_edges(&[(3, 0)]).unwrap();
        assert_eq!(no_chord, path(4));
    }

    #[test]
    fn connectivity_examples() {
        assert!(cycle(6).is_connected());
        let two = complete(3).disjoint_union(&complete(3), 3).unwrap();
        assert!(!two.is_connected());
        assert_eq!(two.connected_components().len(), 2);
        assert!(make_graph(1, &[]).unwrap().is_connected());
        assert!(Graph::empty().is_connected());
    }

    #[test]
    fn tree_metrics_examples() {
        let m = tree_metrics(&path(5)).unwrap();
        assert_eq!(m.leaves, BTreeSet::from([0, 4]));
        assert_eq!(m.diameter, 4);
        let star = make_graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let m = tree_metrics(&star).unwrap();
        assert_eq!((m.leaves.len(), m.diameter), (4, 2));
        let m = tree_metrics(&binary_tree(3)).unwrap();
        assert_eq!((m.leaves.len(), m.diameter), (8, 6));
        assert_eq!(
            tree_metrics(&cycle(4)),
            Err(GraphError::NotATree(TreeDefect::Cycle))
        );
        let forest = path(2).disjoint_union(&path(2), 2).unwrap();
        assert_eq!(
            tree_metrics(&forest),
            Err(GraphError::NotATree(TreeDefect::Disconnected))
        );
    }

    /// Diameter by brute force: max over all pairs of the tree-path length.
    #[test]
    fn tree_diameter_matches_all_pairs() {
        for h in 0..5 {
            let t = binary_tree(h);
            let mut best = 0;
            for u in t.vertices() {
                for v in t.vertices() {
                    best = best.max(t.tree_path(u, v).unwrap().len() - 1);
                }
            }
            assert_eq!(tree_metrics(&t).unwrap().diameter, best);
        }
    }

    #[test]
    fn lca_examples() {
        assert_eq!(lca(&path(3), 0, 1, 2).unwrap(), 1);
        let star = make_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(lca(&star, 0, 1, 3).unwrap(), 0);
        let b3 = binary_tree(3);
        assert_eq!(lca(&b3, 0, 7, 14).unwrap(), 0);
        assert_eq!(lca(&b3, 0, 7, 8).unwrap(), 3);
        assert!(lca(&cycle(3), 0, 1, 2).is_err());
    }

    /// Oracle: intersect the two root paths and take the deepest shared vertex.
    #[test]
    fn lca_matches_path_intersection() {
        let b = binary_tree(4);
        for u in b.vertices() {
            for v in b.vertices() {
                let pu: BTreeSet<_> = b.tree_path(u, 0).unwrap().into_iter().collect();
                let pv = b.tree_path(v, 0).unwrap();
                let first = *pv.iter().find(|x| pu.contains(x)).unwrap();
                assert_eq!(lca(&b, 0, u, v).unwrap(), first);
            }
        }
    }

    #[test]
    fn canonical_form_detects_isomorphism() {
        let a = make_graph(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let b = make_graph(5, &[(4, 3), (3, 2), (2, 1), (3, 0)]).unwrap();
        let c = make_graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(tree_canonical_form(&a), tree_canonical_form(&b));
        assert_ne!(tree_canonical_form(&a), tree_canonical_form(&c));
    }

    #[test]
    fn vertex_path_lengths() {
        let g = path(4);
        let p = VertexPath::new(&g, vec![0, 1, 2]).unwrap();
        assert_eq!(p.len(), 2);
        let null = VertexPath::new(&g, vec![3]).unwrap();
        assert!(null.is_null());
        assert_eq!(null.len(), 0);
        assert!(VertexPath::new(&g, vec![0, 2]).is_err());
    }
}
