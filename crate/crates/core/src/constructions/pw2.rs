//! Graphs of pathwidth at most two as minors of the subdivided ladder.
//!
//! A compact width-2 decomposition `X_1, ..., X_r` (bags of three, each
//! step swapping one vertex) labels `xi(r + 1)` column by column. The
//! first bag fills columns 0 and 1. Column `i >= 2` puts the vertex
//! introduced by `X_i` on `y_i`; `x_i` and `z_i` carry the two vertices
//! that `X_i` passes on to `X_(i+1)`. Branch sets are label classes.

use std::collections::{BTreeMap, BTreeSet};

use crate::decomposition::{compactify, is_compact, Bag, Optimality, PathDecomposition};
use crate::graph::{edge, Graph, Vertex};
use crate::patterns::{xi, XiLayout};
use crate::solvers::model::MinorModel;
use crate::solvers::pathwidth::exact_pathwidth;

use super::{invalid, precondition, Construction, ConstructionError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pw2Embedding {
    /// Host `xi(max(n - 1, 1))`, pattern `g`, model of `g`.
    pub construction: Construction,
    /// Edges added to reach pathwidth exactly 2 (empty when `pw(g) = 2`).
    pub padding: Vec<(Vertex, Vertex)>,
    /// The width-2 compact decomposition the labels came from.
    pub decomposition: PathDecomposition,
}

impl Pw2Embedding {
    /// `g` plus the padding edges; the model is also a model of this graph.
    pub fn padded(&self) -> Graph {
        self.construction.pattern.with_edges(&self.padding).expect("padding joins existing vertices")
    }
}

/// Computes an optimal compact decomposition with the exact solver and
/// embeds `g`.
pub fn embed_pw2(g: &Graph) -> Result<Pw2Embedding, ConstructionError> {
    let pw = exact_pathwidth(g).map_err(|e| invalid(e.to_string()))?;
    if pw.width > 2 {
        return Err(precondition(format!("pathwidth is {}, not at most 2", pw.width)));
    }
    let compact = compactify(g, &pw.decomposition, Optimality::Checked).map_err(|e| invalid(e.to_string()))?;
    embed_pw2_in_xi(g, &compact.decomposition)
}

/// Embeds `g` in `xi(n - 1)` using the compact decomposition `pd` of width
/// at most 2. Narrower decompositions are widened by merging neighbouring
/// bags, and the first bag is then made a triangle so that the padded
/// graph has pathwidth exactly 2.
pub fn embed_pw2_in_xi(g: &Graph, pd: &PathDecomposition) -> Result<Pw2Embedding, ConstructionError> {
    let n = g.vertex_count();
    if !is_compact(g, pd) {
        return Err(invalid("decomposition is not a compact path decomposition of the graph"));
    }
    if pd.width() > 2 {
        return Err(precondition(format!("decomposition has width {}, more than 2", pd.width())));
    }
    if n <= 2 {
        return Ok(tiny(g));
    }
    let mut bags = pd.bags.clone();
    let widened = bags[0].len() < 3;
    while bags[0].len() < 3 {
        bags = bags.windows(2).map(|w| w[0].union(&w[1]).copied().collect()).collect();
    }
    let first: Vec<Vertex> = bags[0].iter().copied().collect();
    let padding: Vec<(Vertex, Vertex)> = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .map(|(i, j)| edge(first[i], first[j]))
        .filter(|&(u, v)| widened && !g.has_edge(u, v))
        .collect();

    let labels = label(&bags);
    let mut branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for (node, v) in labels {
        branch_sets.entry(v).or_default().insert(node);
    }
    Ok(Pw2Embedding {
        construction: Construction {
            host: xi(bags.len() + 1)?,
            pattern: g.clone(),
            model: MinorModel::new(branch_sets),
            order: bags.len() + 1,
        },
        padding,
        decomposition: PathDecomposition::new(bags),
    })
}

/// Labels of `xi(r + 1)` for compact bags of size three.
fn label(bags: &[Bag]) -> BTreeMap<Vertex, Vertex> {
    let r = bags.len();
    let l = XiLayout { r: r + 1 };
    let kept: Bag = if r > 1 {
        bags[0].intersection(&bags[1]).copied().collect()
    } else {
        bags[0].iter().copied().take(2).collect()
    };
    let mut it = kept.iter().copied();
    // the smallest id of the shared pair goes on the x-row
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    let c = *bags[0].difference(&kept).next().unwrap();
    let mut out = BTreeMap::from([(l.x(0), a), (l.y(0), a), (l.z(0), b), (l.x(1), a), (l.y(1), c), (l.z(1), b)]);
    let (mut cx, mut cz) = (a, b);
    for i in 2..=r {
        let (prev, cur) = (&bags[i - 2], &bags[i - 1]);
        let v = *cur.difference(prev).next().expect("compact bags introduce one vertex");
        if i < r {
            let next: Bag = cur.intersection(&bags[i]).copied().collect();
            match (next.contains(&cx), next.contains(&cz)) {
                (true, true) => {}
                (true, false) => cz = v,
                (false, _) => cx = v,
            }
        }
        out.insert(l.x(i), cx);
        out.insert(l.y(i), v);
        out.insert(l.z(i), cz);
    }
    out
}

fn tiny(g: &Graph) -> Pw2Embedding {
    let host = xi(1).expect("xi(1) exists");
    let l = XiLayout { r: 1 };
    let vs: Vec<Vertex> = g.vertices().collect();
    let branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>> = match vs.as_slice() {
        [] => BTreeMap::new(),
        [v] => BTreeMap::from([(*v, BTreeSet::from([l.x(0), l.y(0), l.z(0)]))]),
        [u, v, ..] => BTreeMap::from([(*u, BTreeSet::from([l.x(0)])), (*v, BTreeSet::from([l.y(0), l.z(0)]))]),
    };
    Pw2Embedding {
        construction: Construction {
            host,
            pattern: g.clone(),
            model: MinorModel::new(branch_sets),
            order: 1,
        },
        padding: Vec::new(),
        decomposition: PathDecomposition::new(vec![g.vertex_set()]),
    }
}
