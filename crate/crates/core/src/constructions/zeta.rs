//! From a separation certificate for `T + P` to a member of `Lambda(T)`.
//!
//! The certificate left-contains `H*`, a tree `T` on `n` vertices and a
//! path on `n` vertices joined by one edge, and links every tree branch set
//! to a path branch set through `U = G[B \ A]`. The linkage paths that
//! start at leaves of `T` are contracted to marker nodes `I`, a Steiner
//! tree of `I` in `U` is pruned and smoothed into `T_U`, and then either a
//! long path of `T_U` or the leaves of `T_U` become the path of the
//! `Lambda(T)` member.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{make_graph, tree_metrics, Graph, Vertex};
use crate::patterns::{ceil_sqrt, lambda_build, path_graph, LambdaInstance};
use crate::solvers::certificate::{verify_separation_certificate, CertificateCheck, SeparationCertificate};
use crate::solvers::linked::LinkedOptions;
use crate::solvers::model::MinorModel;

use super::{invalid, Construction, ConstructionError};

/// `T` on ids `0..n`, the path on `n..2n` in order, and one bridge edge
/// from path vertex `n + bridge.0` to tree vertex `bridge.1`.
pub fn h_star(tree: &Graph, bridge: (usize, Vertex)) -> Result<Graph, ConstructionError> {
    let n = check_tree_ids(tree)?;
    if bridge.0 >= n || bridge.1 >= n {
        return Err(invalid(format!("bridge {bridge:?} out of range for n = {n}")));
    }
    let g = tree.disjoint_union(&path_graph(n), n)?;
    Ok(g.with_edges(&[(n + bridge.0, bridge.1)])?)
}

fn check_tree_ids(tree: &Graph) -> Result<usize, ConstructionError> {
    tree.check_tree()?;
    let n = tree.vertex_count();
    if tree.max_vertex() != Some(n - 1) {
        return Err(invalid("tree must use ids 0..n"));
    }
    Ok(n)
}

/// Builds a host and certificate with the shape the construction expects.
///
/// Pattern vertex `v` of `H*` (bridge from the first path vertex to tree
/// vertex 0) has branch set `{v, 2n + v}` on the left, `2n + v` being its
/// separator vertex. Tree vertex `j` is linked to path vertex
/// `pairing[j]` through `4n + 2j` and `4n + 2j + 1`. The right side `U`
/// has these `2n` vertices followed by `extra` more, and `u_edges` are
/// given in local ids `0..2n + extra`.
pub fn lambda_certificate(
    tree: &Graph,
    pairing: &[usize],
    extra: usize,
    u_edges: &[(usize, usize)],
) -> Result<(Graph, SeparationCertificate), ConstructionError> {
    let n = check_tree_ids(tree)?;
    if pairing.len() != n || pairing.iter().collect::<BTreeSet<_>>().len() != n || pairing.iter().any(|&p| p >= n) {
        return Err(invalid("pairing must be a permutation of 0..n"));
    }
    let pattern = h_star(tree, (0, 0))?;
    let sep = |v: Vertex| 2 * n + v;
    let local = |i: usize| 4 * n + i;
    let total = 6 * n + extra;
    let mut es: Vec<(Vertex, Vertex)> = pattern.edges().collect();
    es.extend((0..2 * n).map(|v| (v, sep(v))));
    let mut linkage = Vec::with_capacity(n);
    for (j, &p) in pairing.iter().enumerate() {
        let (x, y) = (local(2 * j), local(2 * j + 1));
        es.extend([(sep(j), x), (x, y), (y, sep(n + p))]);
        linkage.push(vec![sep(j), x, y, sep(n + p)]);
    }
    for &(a, b) in u_edges {
        if a >= 2 * n + extra || b >= 2 * n + extra {
            return Err(invalid(format!("U edge ({a}, {b}) out of range")));
        }
        es.push((local(a), local(b)));
    }
    let host = make_graph(total, &es)?;
    let cert = SeparationCertificate {
        a: (0..4 * n).collect(),
        b: (2 * n..total).collect(),
        pattern,
        model: MinorModel::new((0..2 * n).map(|v| (v, BTreeSet::from([v, sep(v)]))).collect()),
        linkage,
    };
    Ok((host, cert))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaCase {
    /// A path of `T_U` of length at least `ceil(sqrt(|V(T_U)|))` is used.
    LongPath,
    /// The leaves of `T_U` are used; its interior becomes the apex.
    ManyLeaves,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaFromCertificate {
    /// Host, the `Lambda(T)` member as pattern, and its model; `order` is
    /// the length of the member's path.
    pub construction: Construction,
    pub instance: LambdaInstance,
    pub case: ZetaCase,
    /// The case the size test picked, before any fallback.
    pub tested_case: ZetaCase,
    pub t_u_vertices: usize,
    pub check: CertificateCheck,
}

/// A linkage path oriented from its tree end to its path end.
struct Link {
    tree_end: Vertex,
    path_end: Vertex,
    interior: Vec<Vertex>,
}

/// The smoothed Steiner tree: `nodes[i]` are the host vertices of node `i`,
/// nodes `0..marks` are the contracted linkage interiors.
struct SteinerTree {
    nodes: Vec<BTreeSet<Vertex>>,
    marks: usize,
    /// Vertices of `T_U` (node ids) and their adjacency.
    adj: BTreeMap<usize, BTreeSet<usize>>,
    /// Nodes dissolved along each `T_U` edge `(a, b)` with `a < b`.
    chains: BTreeMap<(usize, usize), Vec<usize>>,
}

/// Runs the construction. Certificates with a separator of at most 12
/// vertices have their linkedness checked exhaustively; larger ones are
/// accepted when every other condition holds (see [`CertificateCheck`]).
pub fn lambda_from_certificate(
    host: &Graph,
    tree: &Graph,
    cert: &SeparationCertificate,
) -> Result<LambdaFromCertificate, ConstructionError> {
    let n = check_tree_ids(tree)?;
    if n < 2 {
        return Err(invalid("tree must have at least two vertices"));
    }
    check_h_star(tree, &cert.pattern)?;
    let check = verify_separation_certificate(host, cert, &LinkedOptions::default()).map_err(|vs| {
        let first = vs.first().map(|v| v.to_string()).unwrap_or_default();
        invalid(format!("certificate rejected ({} violations, first: {first})", vs.len()))
    })?;

    let sep = cert.separator();
    let owner: BTreeMap<Vertex, Vertex> = cert
        .model
        .branch_sets
        .iter()
        .map(|(&p, s)| (*s.intersection(&sep).next().expect("certificate checked"), p))
        .collect();
    let links = orient_links(cert, &owner, n)?;
    let tree_leaves = tree_metrics(tree)?.leaves;
    let marked: Vec<&Link> = links.iter().filter(|l| tree_leaves.contains(&owner[&l.tree_end])).collect();

    let u_set: BTreeSet<Vertex> = cert.b.difference(&cert.a).copied().collect();
    let st = steiner_tree(host, &u_set, &marked);
    let t_u_vertices = st.adj.len();
    let s = ceil_sqrt(t_u_vertices);
    let (diam_path, diam) = longest_path(&st.adj);
    let tested_case = if diam >= s { ZetaCase::LongPath } else { ZetaCase::ManyLeaves };
    let need = ceil_sqrt(tree_leaves.len()).max(1);

    let phi = |p: Vertex| cert.model.branch_sets[&p].clone();
    let many_leaves = if tested_case == ZetaCase::ManyLeaves {
        many_leaves_path(&st, &marked, &owner, n, &phi).filter(|(path, _)| path.len() >= need)
    } else {
        None
    };
    let (case, path_sets, matched, apex_set) = match many_leaves {
        Some((path, apex)) => {
            let (sets, leaves): (Vec<_>, Vec<_>) = path.into_iter().unzip();
            (ZetaCase::ManyLeaves, sets, leaves, apex)
        }
        None => {
            let (sets, leaves) = long_path(&st, &diam_path, &marked, &owner);
            let apex: BTreeSet<Vertex> = (n..2 * n).flat_map(&phi).collect();
            (ZetaCase::LongPath, sets, leaves, apex)
        }
    };
    if path_sets.len() < need {
        return Err(invalid(format!(
            "Steiner tree gave a path of {} vertices, below the {need} needed",
            path_sets.len()
        )));
    }

    let instance = lambda_build(tree, path_sets.len(), &matched)?;
    let len = path_sets.len();
    let mut branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>> = (0..n).map(|x| (x, phi(x))).collect();
    branch_sets.extend(path_sets.into_iter().enumerate().map(|(i, s)| (n + i, s)));
    branch_sets.insert(n + len, apex_set);
    Ok(LambdaFromCertificate {
        construction: Construction {
            host: host.clone(),
            pattern: instance.graph().clone(),
            model: MinorModel::new(branch_sets),
            order: len,
        },
        instance,
        case,
        tested_case,
        t_u_vertices,
        check,
    })
}

fn check_h_star(tree: &Graph, pattern: &Graph) -> Result<(), ConstructionError> {
    let n = tree.vertex_count();
    let wrong = || invalid("certificate pattern is not the tree plus a path on n..2n joined by one edge");
    if pattern.vertex_count() != 2 * n || pattern.edge_count() != 2 * n - 1 {
        return Err(wrong());
    }
    let mut bridges = 0;
    for (u, v) in pattern.edges() {
        let ok = match (u < n, v < n) {
            (true, true) => tree.has_edge(u, v),
            (false, false) => v == u + 1,
            _ => {
                bridges += 1;
                true
            }
        };
        if !ok {
            return Err(wrong());
        }
    }
    if bridges != 1 {
        return Err(wrong());
    }
    Ok(())
}

fn orient_links(
    cert: &SeparationCertificate,
    owner: &BTreeMap<Vertex, Vertex>,
    n: usize,
) -> Result<Vec<Link>, ConstructionError> {
    if cert.linkage.len() != n {
        return Err(invalid(format!("linkage has {} paths, expected {n}", cert.linkage.len())));
    }
    cert.linkage
        .iter()
        .map(|p| {
            let (a, b) = (p[0], p[p.len() - 1]);
            let (oa, ob) = (owner[&a], owner[&b]);
            let interior = p[1..p.len() - 1].to_vec();
            match (oa < n, ob < n) {
                (true, false) => Ok(Link {
                    tree_end: a,
                    path_end: b,
                    interior,
                }),
                (false, true) => Ok(Link {
                    tree_end: b,
                    path_end: a,
                    interior: interior.into_iter().rev().collect(),
                }),
                _ => Err(invalid(format!("linkage path {a}..{b} does not join the tree to the path"))),
            }
        })
        .collect()
}

/// Contracts marked interiors, takes a BFS spanning tree of `U*` from the
/// first mark, prunes unmarked leaves (leaving an inclusion-minimal
/// Steiner tree) and dissolves unmarked degree-2 nodes.
fn steiner_tree(host: &Graph, u_set: &BTreeSet<Vertex>, marked: &[&Link]) -> SteinerTree {
    let mut nodes: Vec<BTreeSet<Vertex>> = marked.iter().map(|l| l.interior.iter().copied().collect()).collect();
    let marks = nodes.len();
    let mut node_of: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (i, s) in nodes.iter().enumerate() {
        for &v in s {
            node_of.insert(v, i);
        }
    }
    for &v in u_set {
        if !node_of.contains_key(&v) {
            node_of.insert(v, nodes.len());
            nodes.push(BTreeSet::from([v]));
        }
    }
    let mut star_adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nodes.len()];
    for &v in u_set {
        for w in host.neighbors(v).filter(|w| u_set.contains(w)) {
            let (a, b) = (node_of[&v], node_of[&w]);
            if a != b {
                star_adj[a].insert(b);
            }
        }
    }
    // BFS spanning tree from mark 0
    let mut tree_adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut seen = vec![false; nodes.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    tree_adj.insert(0, BTreeSet::new());
    while let Some(a) = queue.pop_front() {
        for &b in &star_adj[a] {
            if !seen[b] {
                seen[b] = true;
                tree_adj.entry(a).or_default().insert(b);
                tree_adj.entry(b).or_default().insert(a);
                queue.push_back(b);
            }
        }
    }
    // prune unmarked leaves until none remain
    let mut stack: Vec<usize> = tree_adj.iter().filter(|(&a, ns)| a >= marks && ns.len() <= 1).map(|(&a, _)| a).collect();
    while let Some(a) = stack.pop() {
        let Some(ns) = tree_adj.remove(&a) else { continue };
        for b in ns {
            let nb = tree_adj.get_mut(&b).expect("tree neighbour");
            nb.remove(&a);
            if b >= marks && nb.len() <= 1 {
                stack.push(b);
            }
        }
    }
    // dissolve unmarked degree-2 nodes
    let kept: BTreeSet<usize> = tree_adj.iter().filter(|(&a, ns)| a < marks || ns.len() != 2).map(|(&a, _)| a).collect();
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = kept.iter().map(|&a| (a, BTreeSet::new())).collect();
    let mut chains = BTreeMap::new();
    for &a in &kept {
        for &first in &tree_adj[&a] {
            let (mut prev, mut cur) = (a, first);
            let mut chain = Vec::new();
            while !kept.contains(&cur) {
                chain.push(cur);
                let next = *tree_adj[&cur].iter().find(|&&x| x != prev).expect("dissolved nodes have degree 2");
                prev = cur;
                cur = next;
            }
            adj.get_mut(&a).unwrap().insert(cur);
            if a < cur {
                chains.insert((a, cur), chain);
            }
        }
    }
    SteinerTree {
        nodes,
        marks,
        adj,
        chains,
    }
}

fn farthest(adj: &BTreeMap<usize, BTreeSet<usize>>, from: usize) -> (usize, BTreeMap<usize, usize>) {
    let mut parent = BTreeMap::from([(from, from)]);
    let mut queue = VecDeque::from([from]);
    let mut last = from;
    while let Some(a) = queue.pop_front() {
        last = a;
        for &b in &adj[&a] {
            if !parent.contains_key(&b) {
                parent.insert(b, a);
                queue.push_back(b);
            }
        }
    }
    (last, parent)
}

/// A longest path of the tree as a node sequence, and its length in edges.
fn longest_path(adj: &BTreeMap<usize, BTreeSet<usize>>) -> (Vec<usize>, usize) {
    let start = *adj.keys().next().expect("Steiner tree contains mark 0");
    let (a, _) = farthest(adj, start);
    let (b, parent) = farthest(adj, a);
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(parent[path.last().unwrap()]);
    }
    let len = path.len() - 1;
    (path, len)
}

/// Case 1: every `T_U` vertex and dissolved node goes to the vertex of `R`
/// whose component (after deleting the edges of `R`) contains it. Each
/// component holds a mark, the privileged one, whose leaf is matched.
fn long_path(
    st: &SteinerTree,
    r: &[usize],
    marked: &[&Link],
    owner: &BTreeMap<Vertex, Vertex>,
) -> (Vec<BTreeSet<Vertex>>, Vec<Vertex>) {
    let on_r: BTreeMap<usize, usize> = r.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let r_edge = |a: usize, b: usize| matches!((on_r.get(&a), on_r.get(&b)), (Some(i), Some(j)) if i.abs_diff(*j) == 1);
    let mut comp: BTreeMap<usize, usize> = on_r.clone();
    let mut queue: VecDeque<usize> = r.iter().copied().collect();
    while let Some(a) = queue.pop_front() {
        for &b in &st.adj[&a] {
            if !comp.contains_key(&b) && !r_edge(a, b) {
                comp.insert(b, comp[&a]);
                queue.push_back(b);
            }
        }
    }
    let mut sets = vec![BTreeSet::new(); r.len()];
    let mut privileged: Vec<Option<usize>> = r.iter().map(|&a| (a < st.marks).then_some(a)).collect();
    for (&a, &i) in &comp {
        sets[i].extend(st.nodes[a].iter().copied());
        // ascending ids: the first mark seen is the smallest
        if a < st.marks && privileged[i].is_none() {
            privileged[i] = Some(a);
        }
    }
    for (&(a, b), chain) in &st.chains {
        let i = if r_edge(a, b) { on_r[&a].min(on_r[&b]) } else { comp[&a] };
        for &c in chain {
            sets[i].extend(st.nodes[c].iter().copied());
        }
    }
    let leaves = privileged
        .iter()
        .map(|p| owner[&marked[p.expect("every component of T_U minus R holds a mark")].tree_end])
        .collect();
    (sets, leaves)
}

/// Case 2: the leaves of `T_U` keep their path vertices, the other path
/// vertices merge into their predecessor (or successor, before the first
/// kept one), and the interior of `T_U` with its chains is the apex.
/// Returns `None` when `T_U` has no interior.
#[allow(clippy::type_complexity)]
fn many_leaves_path(
    st: &SteinerTree,
    marked: &[&Link],
    owner: &BTreeMap<Vertex, Vertex>,
    n: usize,
    phi: &dyn Fn(Vertex) -> BTreeSet<Vertex>,
) -> Option<(Vec<(BTreeSet<Vertex>, Vertex)>, BTreeSet<Vertex>)> {
    let leaves: Vec<usize> = st.adj.iter().filter(|(_, ns)| ns.len() == 1).map(|(&a, _)| a).collect();
    let interior: Vec<usize> = st.adj.keys().copied().filter(|a| !leaves.contains(a)).collect();
    if interior.is_empty() {
        return None;
    }
    let mut apex: BTreeSet<Vertex> = interior.iter().flat_map(|&a| st.nodes[a].iter().copied()).collect();
    for chain in st.chains.values() {
        apex.extend(chain.iter().flat_map(|&c| st.nodes[c].iter().copied()));
    }
    // path vertex (pattern id) -> the T_U leaf whose linkage ends there
    let kept: BTreeMap<Vertex, usize> = leaves.iter().map(|&l| (owner[&marked[l].path_end], l)).collect();
    let mut out: Vec<(BTreeSet<Vertex>, Vertex)> = Vec::with_capacity(kept.len());
    let mut pending = BTreeSet::new();
    for p in n..2 * n {
        match kept.get(&p) {
            Some(&l) => {
                let mut set = phi(p);
                set.extend(std::mem::take(&mut pending));
                set.extend(marked[l].interior.iter().copied());
                out.push((set, owner[&marked[l].tree_end]));
            }
            None => match out.last_mut() {
                Some((set, _)) => set.extend(phi(p)),
                None => pending.extend(phi(p)),
            },
        }
    }
    Some((out, apex))
}
