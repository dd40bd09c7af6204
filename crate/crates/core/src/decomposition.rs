//! Tree and path decompositions, their validity check, and the
//! normalization pipeline: nice form, the forget/introduce swap and the
//! compact form in which every bag has exactly `pw + 1` vertices.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::solvers::pathwidth::{exact_pathwidth, PATHWIDTH_MAX_VERTICES};

pub type Bag = BTreeSet<Vertex>;

/// A condition of the decomposition definition that fails, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {0} lies in no bag")]
    UncoveredVertex(Vertex),
    #[error("edge {{{0}, {1}}} lies in no bag")]
    UncoveredEdge(Vertex, Vertex),
    #[error("bags containing vertex {0} do not form a connected subtree")]
    DisconnectedSupport(Vertex),
    #[error("bag contains {0}, which is not a vertex of the graph")]
    ForeignVertex(Vertex),
    #[error("decomposition shape is not a tree")]
    ShapeNotATree,
    #[error("bag {0} has no shape node")]
    BagWithoutNode(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("invalid decomposition: {}", list(.0))]
    Invalid(Vec<Violation>),
    #[error("not a nice path decomposition: {0}")]
    NotNice(String),
    #[error("position {position}: expected a forget node followed by an introduce node")]
    NotForgetIntroduce { position: usize },
    #[error("decomposition has width {width} but the pathwidth is {pathwidth}")]
    NotOptimal { width: usize, pathwidth: usize },
    #[error("graph has {0} vertices, too many to check optimality; assert it instead")]
    TooLargeToCheck(usize),
}

fn list(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// Width of a bag collection: largest bag size minus one, 0 when empty.
fn width_of<'a>(bags: impl Iterator<Item = &'a Bag>) -> usize {
    bags.map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PathDecomposition {
    pub bags: Vec<Bag>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Bag>) -> Self {
        PathDecomposition { bags }
    }

    pub fn from_slices(bags: &[&[Vertex]]) -> Self {
        PathDecomposition {
            bags: bags.iter().map(|b| b.iter().copied().collect()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Largest bag size minus one. Does not check validity; see
    /// [`checked_width`].
    pub fn width(&self) -> usize {
        width_of(self.bags.iter())
    }

    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let n = self.bags.len();
        let es: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        TreeDecomposition {
            shape: crate::graph::make_graph(n, &es).expect("path shape"),
            bags: self.bags.iter().cloned().enumerate().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub shape: Graph,
    pub bags: BTreeMap<Vertex, Bag>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        width_of(self.bags.values())
    }
}

/// Checks coverage, edge coverage and coherence. Every violated condition
/// is listed, each with its first witness in id order.
pub fn verify_tree_decomposition(g: &Graph, d: &TreeDecomposition) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if !d.bags.is_empty() && !d.shape.is_tree() {
        out.push(Violation::ShapeNotATree);
    }
    if let Some(&t) = d.bags.keys().find(|t| !d.shape.contains_vertex(**t)) {
        out.push(Violation::BagWithoutNode(t));
    }
    let mut support: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for (&t, bag) in &d.bags {
        for &v in bag {
            support.entry(v).or_default().insert(t);
        }
    }
    if let Some(&v) = support.keys().find(|v| !g.contains_vertex(**v)) {
        out.push(Violation::ForeignVertex(v));
    }
    if let Some(v) = g.vertices().find(|v| !support.contains_key(v)) {
        out.push(Violation::UncoveredVertex(v));
    }
    if let Some((u, v)) = g
        .edges()
        .find(|&(u, v)| !d.bags.values().any(|b| b.contains(&u) && b.contains(&v)))
    {
        out.push(Violation::UncoveredEdge(u, v));
    }
    if let Some((&v, _)) = support.iter().find(|(_, ts)| !d.shape.induces_connected(ts)) {
        out.push(Violation::DisconnectedSupport(v));
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

pub fn verify_path_decomposition(g: &Graph, p: &PathDecomposition) -> Result<(), Vec<Violation>> {
    verify_tree_decomposition(g, &p.to_tree_decomposition())
}

/// Width of a path decomposition after checking that it is valid for `g`.
pub fn checked_width(g: &Graph, p: &PathDecomposition) -> Result<usize, DecompositionError> {
    verify_path_decomposition(g, p).map_err(DecompositionError::Invalid)?;
    Ok(p.width())
}

/// Kind of each node of a nice path decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Introduce(Vertex),
    Forget(Vertex),
}

impl NodeKind {
    pub fn vertex(self) -> Vertex {
        match self {
            NodeKind::Introduce(v) | NodeKind::Forget(v) => v,
        }
    }

    pub fn is_introduce(self) -> bool {
        matches!(self, NodeKind::Introduce(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceAnnotation {
    pub kinds: Vec<NodeKind>,
}

/// Reads the node kinds off a nice path decomposition, or explains why it
/// is not nice.
pub fn annotate(p: &PathDecomposition) -> Result<NiceAnnotation, DecompositionError> {
    let mut kinds = Vec::with_capacity(p.len());
    let empty = Bag::new();
    for (i, bag) in p.bags.iter().enumerate() {
        let prev = if i == 0 { &empty } else { &p.bags[i - 1] };
        let added: Vec<_> = bag.difference(prev).copied().collect();
        let removed: Vec<_> = prev.difference(bag).copied().collect();
        match (added.as_slice(), removed.as_slice()) {
            ([v], []) => kinds.push(NodeKind::Introduce(*v)),
            ([], [v]) if i > 0 => kinds.push(NodeKind::Forget(*v)),
            _ => {
                return Err(DecompositionError::NotNice(format!(
                    "bag {i} differs from its predecessor by {} added and {} removed vertices",
                    added.len(),
                    removed.len()
                )))
            }
        }
    }
    Ok(NiceAnnotation { kinds })
}

fn bags_from_kinds(kinds: &[NodeKind]) -> Vec<Bag> {
    let mut cur = Bag::new();
    kinds
        .iter()
        .map(|k| {
            match *k {
                NodeKind::Introduce(v) => cur.insert(v),
                NodeKind::Forget(v) => cur.remove(&v),
            };
            cur.clone()
        })
        .collect()
}

/// Node sequence of a valid decomposition where every step forgets or
/// introduces one vertex: between consecutive bags, forget first (ids
/// ascending) then introduce, and forget everything at the end.
fn naive_kinds(p: &PathDecomposition) -> Vec<NodeKind> {
    let mut kinds = Vec::new();
    let mut prev = Bag::new();
    for bag in p.bags.iter().chain(std::iter::once(&Bag::new())) {
        kinds.extend(prev.difference(bag).map(|&v| NodeKind::Forget(v)));
        kinds.extend(bag.difference(&prev).map(|&v| NodeKind::Introduce(v)));
        prev = bag.clone();
    }
    kinds
}

/// Converts a valid path decomposition into a nice one of the same width,
/// with `n` introduce and `n` forget nodes (the last bag is empty).
///
/// The node order is then normalized by swapping a forget node with the
/// introduce node right after it whenever the bag before the forget has
/// fewer than `width + 1` vertices, which cannot raise the width. The
/// result has the shape `I^s (F I)^(n-s) F^s` with `s = width + 1`.
pub fn make_nice(
    g: &Graph,
    p: &PathDecomposition,
) -> Result<(PathDecomposition, NiceAnnotation), DecompositionError> {
    let width = checked_width(g, p)?;
    let mut kinds = naive_kinds(p);
    if kinds.is_empty() {
        return Ok((PathDecomposition::default(), NiceAnnotation { kinds }));
    }
    let s = width + 1;
    loop {
        let mut size = 0usize;
        let mut swapped = false;
        for i in 0..kinds.len() - 1 {
            if let (NodeKind::Forget(_), NodeKind::Introduce(_)) = (kinds[i], kinds[i + 1]) {
                if size < s {
                    kinds.swap(i, i + 1);
                    swapped = true;
                    break;
                }
            }
            size = if kinds[i].is_introduce() { size + 1 } else { size - 1 };
        }
        if !swapped {
            break;
        }
    }
    let nice = PathDecomposition::new(bags_from_kinds(&kinds));
    debug_assert_eq!(nice.width(), width);
    Ok((nice, NiceAnnotation { kinds }))
}

/// Swaps the forget node at 0-based position `i` with the introduce node at
/// `i + 1`: the new bag at `i` is the union of its neighbours' bags.
pub fn swap_forget_introduce(
    p: &PathDecomposition,
    i: usize,
) -> Result<PathDecomposition, DecompositionError> {
    let ann = annotate(p)?;
    match (ann.kinds.get(i), ann.kinds.get(i + 1)) {
        (Some(NodeKind::Forget(_)), Some(NodeKind::Introduce(_))) if i > 0 => {}
        _ => return Err(DecompositionError::NotForgetIntroduce { position: i }),
    }
    let mut bags = p.bags.clone();
    bags[i] = p.bags[i - 1].union(&p.bags[i + 1]).copied().collect();
    Ok(PathDecomposition::new(bags))
}

/// How optimality of the input decomposition was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Optimality {
    /// Compared against the exact pathwidth solver.
    Checked,
    /// Taken on the caller's word, for hosts beyond the solver's reach.
    Asserted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactDecomposition {
    pub decomposition: PathDecomposition,
    pub optimality: Optimality,
}

/// Compact form of an optimal path decomposition: all bags have
/// `pw + 1` vertices, neighbouring bags exchange exactly one vertex, and
/// there are `n - pw` bags. The bags kept are those of the introduce nodes
/// at 1-based positions `s, s + 2, ..., 2n - s` of the normalized nice form.
pub fn compactify(
    g: &Graph,
    p: &PathDecomposition,
    optimality: Optimality,
) -> Result<CompactDecomposition, DecompositionError> {
    let width = checked_width(g, p)?;
    if optimality == Optimality::Checked {
        let n = g.vertex_count();
        if n > PATHWIDTH_MAX_VERTICES {
            return Err(DecompositionError::TooLargeToCheck(n));
        }
        let pw = exact_pathwidth(g)
            .expect("size checked above")
            .width;
        if pw != width {
            return Err(DecompositionError::NotOptimal {
                width,
                pathwidth: pw,
            });
        }
    }
    let (nice, _) = make_nice(g, p)?;
    let n = g.vertex_count();
    let s = width + 1;
    let bags = if n == 0 {
        Vec::new()
    } else {
        (s..=2 * n - s)
            .step_by(2)
            .map(|pos| nice.bags[pos - 1].clone())
            .collect()
    };
    Ok(CompactDecomposition {
        decomposition: PathDecomposition::new(bags),
        optimality,
    })
}

/// Whether `p` is compact: valid, bags all of one size, neighbours
/// exchanging exactly one vertex each way.
pub fn is_compact(g: &Graph, p: &PathDecomposition) -> bool {
    if verify_path_decomposition(g, p).is_err() {
        return false;
    }
    let size = p.bags.first().map_or(0, |b| b.len());
    p.bags.iter().all(|b| b.len() == size)
        && p.bags
            .windows(2)
            .all(|w| w[0].difference(&w[1]).count() == 1 && w[1].difference(&w[0]).count() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_graph;
    use crate::patterns::{cycle_graph, path_graph, xi};
    use rand::{Rng, SeedableRng};

    fn pd(bags: &[&[Vertex]]) -> PathDecomposition {
        PathDecomposition::from_slices(bags)
    }

    #[test]
    fn verify_examples() {
        let p3 = path_graph(3);
        let d = pd(&[&[0, 1], &[1, 2]]);
        assert_eq!(verify_path_decomposition(&p3, &d), Ok(()));
        assert_eq!(checked_width(&p3, &d), Ok(1));

        let c3 = cycle_graph(3).unwrap();
        assert_eq!(
            verify_path_decomposition(&c3, &d),
            Err(vec![Violation::UncoveredEdge(0, 2)])
        );

        let split = pd(&[&[0, 1], &[2], &[1]]);
        assert_eq!(
            verify_path_decomposition(&p3, &split),
            Err(vec![Violation::UncoveredEdge(1, 2), Violation::DisconnectedSupport(1)])
        );
    }

    #[test]
    fn width_examples() {
        assert_eq!(pd(&[&[0, 1], &[1, 2]]).width(), 1);
        assert_eq!(pd(&[&[0, 1, 2, 3, 4]]).width(), 4);
        assert_eq!(PathDecomposition::default().width(), 0);
    }

    #[test]
    fn make_nice_examples() {
        let p3 = path_graph(3);
        let (nice, ann) = make_nice(&p3, &pd(&[&[0, 1], &[1, 2]])).unwrap();
        assert_eq!(nice, pd(&[&[0], &[0, 1], &[1], &[1, 2], &[2], &[]]));
        assert_eq!(
            ann.kinds,
            vec![
                NodeKind::Introduce(0),
                NodeKind::Introduce(1),
                NodeKind::Forget(0),
                NodeKind::Introduce(2),
                NodeKind::Forget(1),
                NodeKind::Forget(2)
            ]
        );
        let k1 = make_graph(1, &[]).unwrap();
        let (nice, _) = make_nice(&k1, &pd(&[&[0]])).unwrap();
        assert_eq!(nice, pd(&[&[0], &[]]));
        assert!(make_nice(&p3, &pd(&[&[0, 1]])).is_err());
    }

    #[test]
    fn swap_examples() {
        // position 2 here is the third node (0-based)
        let p = pd(&[&[0], &[0, 1], &[1], &[1, 2]]);
        let swapped = swap_forget_introduce(&p, 2).unwrap();
        assert_eq!(swapped, pd(&[&[0], &[0, 1], &[0, 1, 2], &[1, 2]]));
        let p3 = path_graph(3);
        assert_eq!(verify_path_decomposition(&p3, &swapped), Ok(()));
        assert_eq!(
            swap_forget_introduce(&p, 1),
            Err(DecompositionError::NotForgetIntroduce { position: 1 })
        );
        assert!(swap_forget_introduce(&p, 3).is_err());
    }

    #[test]
    fn swap_twice_stays_valid() {
        let g = path_graph(4);
        let p = pd(&[&[0], &[0, 1], &[1], &[1, 2], &[2], &[2, 3], &[3]]);
        let once = swap_forget_introduce(&p, 2).unwrap();
        assert_eq!(verify_path_decomposition(&g, &once), Ok(()));
        // the swapped bag is no longer a nice step, so take the nice form of
        // the result and swap at the next legal spot
        let (nice, ann) = make_nice(&g, &once).unwrap();
        let pos = ann
            .kinds
            .windows(2)
            .position(|w| !w[0].is_introduce() && w[1].is_introduce())
            .unwrap();
        let twice = swap_forget_introduce(&nice, pos).unwrap();
        assert_eq!(verify_path_decomposition(&g, &twice), Ok(()));
    }

    #[test]
    fn compactify_examples() {
        let p4 = path_graph(4);
        let c = compactify(&p4, &pd(&[&[0, 1], &[1, 2], &[2, 3]]), Optimality::Checked).unwrap();
        assert_eq!(c.decomposition, pd(&[&[0, 1], &[1, 2], &[2, 3]]));
        assert_eq!(c.optimality, Optimality::Checked);

        let c4 = cycle_graph(4).unwrap();
        let opt = crate::solvers::pathwidth::exact_pathwidth(&c4).unwrap();
        let c = compactify(&c4, &opt.decomposition, Optimality::Checked).unwrap();
        assert_eq!(c.decomposition.len(), 2);
        assert!(c.decomposition.bags.iter().all(|b| b.len() == 3));

        let x4 = xi(4).unwrap();
        let opt = crate::solvers::pathwidth::exact_pathwidth(&x4).unwrap();
        let c = compactify(&x4, &opt.decomposition, Optimality::Checked).unwrap();
        assert_eq!(c.decomposition.len(), 10);
        assert!(is_compact(&x4, &c.decomposition));

        let wide = pd(&[&[0, 1, 2], &[2, 3]]);
        assert_eq!(
            compactify(&p4, &wide, Optimality::Checked),
            Err(DecompositionError::NotOptimal { width: 2, pathwidth: 1 })
        );
        let asserted = compactify(&p4, &wide, Optimality::Asserted).unwrap();
        assert_eq!(asserted.optimality, Optimality::Asserted);
        assert_eq!(asserted.decomposition.len(), 2);
    }

    /// Random valid decompositions: a random vertex order cut into windows.
    fn random_decomposition(rng: &mut impl Rng, g: &Graph) -> PathDecomposition {
        let mut order: Vec<_> = g.vertices().collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
        // vertex separation layout: bag i holds order[i] and every earlier
        // vertex with a neighbour at or after i
        let pos: BTreeMap<_, _> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let bags = (0..order.len())
            .map(|i| {
                order[..=i]
                    .iter()
                    .copied()
                    .filter(|&v| v == order[i] || g.neighbors(v).any(|w| pos[&w] >= i))
                    .collect()
            })
            .collect();
        PathDecomposition::new(bags)
    }

    #[test]
    fn make_nice_preserves_width_on_random_inputs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(1..12);
            let es: Vec<_> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|_| rng.gen_bool(0.3))
                .collect();
            let g = make_graph(n, &es).unwrap();
            let p = random_decomposition(&mut rng, &g);
            assert_eq!(verify_path_decomposition(&g, &p), Ok(()));
            let (nice, ann) = make_nice(&g, &p).unwrap();
            assert_eq!(verify_path_decomposition(&g, &nice), Ok(()));
            assert_eq!(nice.width(), p.width());
            assert_eq!(annotate(&nice).unwrap(), ann);
            assert_eq!(nice.len(), 2 * n);
            let intro = ann.kinds.iter().filter(|k| k.is_introduce()).count();
            assert_eq!(intro, n);
            // prefix scan: forgets never outnumber introduces, and the live
            // count stays within the bag size bound
            let mut live = 0i64;
            for k in &ann.kinds {
                live += if k.is_introduce() { 1 } else { -1 };
                assert!(live >= 0 && live as usize <= nice.width() + 1);
            }
        }
    }

    #[test]
    fn decomposition_json_round_trip() {
        let d = pd(&[&[0, 1], &[1, 2]]);
        assert_eq!(d.to_json(), r#"{"bags":[[0,1],[1,2]]}"#);
        assert_eq!(PathDecomposition::from_json(&d.to_json()).unwrap(), d);
    }
}
