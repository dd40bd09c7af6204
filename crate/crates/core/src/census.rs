//! Small-graph enumeration and seeded random generators for the test
//! corpora: connected graphs up to isomorphism, trees, random trees and
//! random graphs of pathwidth two.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{make_graph, tree_canonical_form, Graph, Vertex};
use crate::solvers::pathwidth::exact_pathwidth;

/// Canonical adjacency code of a graph on `0..n` (n <= 11): the smallest
/// upper-triangle bit string over relabelings that sort vertices by a
/// degree-based refinement. Two graphs share a code iff isomorphic.
fn canonical_code(n: usize, adj: &[u16]) -> u64 {
    // refine classes by (degree, sorted neighbour degrees)
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let key: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|a, b| key[*a].cmp(&key[*b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if key[c[0]] == key[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    fn code(adj: &[u16], perm: &[usize]) -> u64 {
        let mut c = 0u64;
        for j in 1..perm.len() {
            for i in 0..j {
                c = c << 1 | u64::from(adj[perm[i]] >> perm[j] & 1);
            }
        }
        c
    }
    fn go(classes: &mut [Vec<usize>], ci: usize, adj: &[u16], perm: &mut Vec<usize>, best: &mut u64) {
        if ci == classes.len() {
            *best = (*best).min(code(adj, perm));
            return;
        }
        let len = classes[ci].len();
        permute(classes, ci, 0, len, adj, perm, best);
    }
    fn permute(
        classes: &mut [Vec<usize>],
        ci: usize,
        k: usize,
        len: usize,
        adj: &[u16],
        perm: &mut Vec<usize>,
        best: &mut u64,
    ) {
        if k == len {
            let base = perm.len();
            perm.extend(classes[ci].iter().copied());
            go(classes, ci + 1, adj, perm, best);
            perm.truncate(base);
            return;
        }
        for i in k..len {
            classes[ci].swap(k, i);
            permute(classes, ci, k + 1, len, adj, perm, best);
            classes[ci].swap(k, i);
        }
    }
    go(&mut classes, 0, adj, &mut perm, &mut best);
    best
}

fn to_graph(n: usize, adj: &[u16]) -> Graph {
    let es: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).filter(move |&j| adj[i] >> j & 1 == 1).map(move |j| (i, j)))
        .collect();
    make_graph(n, &es).expect("census edges in range")
}

/// All connected graphs on exactly `n` vertices up to isomorphism, for
/// `1 <= n <= 8`, in a deterministic order. Every connected graph has a
/// vertex whose removal keeps it connected, so extending each graph on
/// `n - 1` vertices by a vertex with every nonempty neighbourhood reaches
/// all of them.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n), "census covers 1..=8 vertices");
    let mut level: Vec<Vec<u16>> = vec![vec![0]];
    for m in 2..=n {
        let mut seen: BTreeMap<u64, Vec<u16>> = BTreeMap::new();
        for adj in &level {
            for nb in 1u16..(1 << (m - 1)) {
                let mut a = adj.clone();
                for (w, aw) in a.iter_mut().enumerate() {
                    if nb >> w & 1 == 1 {
                        *aw |= 1 << (m - 1);
                    }
                }
                a.push(nb);
                seen.entry(canonical_code(m, &a)).or_insert(a);
            }
        }
        level = seen.into_values().collect();
    }
    level.iter().map(|a| to_graph(n, a)).collect()
}

/// Connected graphs on `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// All trees on `1..=max_n` vertices up to isomorphism (every tree on
/// `n + 1` vertices is a tree on `n` vertices plus a leaf).
pub fn trees_up_to(max_n: usize) -> Vec<Graph> {
    if max_n == 0 {
        return Vec::new();
    }
    let mut out = vec![make_graph(1, &[]).unwrap()];
    let mut level = out.clone();
    for n in 2..=max_n {
        let mut seen: BTreeMap<String, Graph> = BTreeMap::new();
        for t in &level {
            for v in t.vertices() {
                let g = t
                    .disjoint_union(&make_graph(1, &[]).unwrap(), n - 1)
                    .and_then(|g| g.with_edges(&[(v, n - 1)]))
                    .expect("fresh leaf");
                let form = tree_canonical_form(&g).expect("still a tree");
                seen.entry(form).or_insert(g);
            }
        }
        level = seen.into_values().collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Uniform random labeled tree on `n >= 1` vertices via a Pruefer code.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    assert!(n >= 1);
    if n <= 2 {
        return crate::patterns::path_graph(n);
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let rest: Vec<_> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    make_graph(n, &edges).unwrap()
}

/// Random connected graph of pathwidth exactly 2 on `n` vertices
/// (`3 <= n <= 40`), built by sliding a window of three vertices along a
/// random order and adding random edges inside the windows. Rejection
/// sampling ensures connectivity and exact pathwidth.
pub fn random_pathwidth_two(rng: &mut impl Rng, n: usize) -> Graph {
    assert!(n >= 3);
    loop {
        let mut order: Vec<Vertex> = (0..n).collect();
        order.shuffle(rng);
        let mut bag: Vec<Vertex> = order[..3].to_vec();
        let mut edges = Vec::new();
        let add_random = |bag: &[Vertex], edges: &mut Vec<(Vertex, Vertex)>, rng: &mut dyn rand::RngCore| {
            for i in 0..3 {
                for j in i + 1..3 {
                    if rng.gen_bool(0.6) {
                        edges.push((bag[i], bag[j]));
                    }
                }
            }
        };
        add_random(&bag, &mut edges, rng);
        for &v in &order[3..] {
            let drop = rng.gen_range(0..3);
            // keep the newcomer attached to the window
            edges.push((v, bag[(drop + 1) % 3]));
            bag[drop] = v;
            add_random(&bag, &mut edges, rng);
        }
        let g = make_graph(n, &edges).unwrap();
        if g.is_connected() && exact_pathwidth(&g).map(|r| r.width) == Ok(2) {
            return g;
        }
    }
}
