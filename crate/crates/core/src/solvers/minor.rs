//! Exact minor containment by search over connected partitions.
//!
//! If the host `G` is connected and `H` is a minor of it, every vertex
//! outside the branch sets can be absorbed into a neighbouring branch set.
//! So `H` is a minor of `G` iff `V(G)` splits into `|V(H)|` connected parts
//! whose quotient graph contains `H` as a spanning subgraph. The search
//! contracts one host edge at a time, memoizes partitions it has seen and
//! prunes when too few quotient edges remain. Disconnected hosts are
//! handled by distributing the components of `H` over those of `G`.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::budget::{Budget, Outcome};
use crate::graph::{Graph, Vertex};

use super::bitgraph::{bits, BitGraph};
use super::model::MinorModel;
use super::SolverError;

pub const MINOR_MAX_HOST: usize = 64;

/// Unlimited-time containment test.
pub fn is_minor(pattern: &Graph, host: &Graph) -> Result<Outcome<MinorModel>, SolverError> {
    is_minor_within(pattern, host, &Budget::unlimited())
}

/// Containment test that gives up with `Outcome::Unknown` when the budget
/// runs out. `Absent` is only returned after an exhaustive search.
pub fn is_minor_within(
    pattern: &Graph,
    host: &Graph,
    budget: &Budget,
) -> Result<Outcome<MinorModel>, SolverError> {
    let n = host.vertex_count();
    if n > MINOR_MAX_HOST || pattern.vertex_count() > MINOR_MAX_HOST {
        return Err(SolverError::TooLarge {
            n: n.max(pattern.vertex_count()),
            max: MINOR_MAX_HOST,
        });
    }
    if pattern.vertex_count() == 0 {
        return Ok(Outcome::Found(MinorModel::default()));
    }
    if pattern.vertex_count() > n || pattern.edge_count() > host.edge_count() {
        return Ok(Outcome::Absent);
    }
    let hb = BitGraph::new(host);
    let pb = BitGraph::new(pattern);
    let host_comps = hb.components(hb.full());
    let pat_comps = pb.components(pb.full());

    let mut search = Distribute {
        hb: &hb,
        pb: &pb,
        host_comps: &host_comps,
        pat_comps: &pat_comps,
        cache: HashMap::new(),
        budget,
        unknown: false,
    };
    let mut assign = vec![usize::MAX; pat_comps.len()];
    let mut order: Vec<usize> = (0..pat_comps.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(pat_comps[i].count_ones()));
    let found = search.assign(&order, 0, &mut assign)?;
    Ok(match found {
        Some(parts) => {
            let mut branch_sets = BTreeMap::new();
            for (p, hmask) in parts {
                branch_sets.insert(pb.ids[p], hb.to_ids(hmask));
            }
            Outcome::Found(MinorModel::new(branch_sets))
        }
        None if search.unknown => Outcome::Unknown,
        None => Outcome::Absent,
    })
}

type Placement = Vec<(usize, u64)>;

struct Distribute<'a> {
    hb: &'a BitGraph,
    pb: &'a BitGraph,
    host_comps: &'a [u64],
    pat_comps: &'a [u64],
    cache: HashMap<(usize, u64), Option<Placement>>,
    budget: &'a Budget,
    unknown: bool,
}

impl Distribute<'_> {
    fn assign(
        &mut self,
        order: &[usize],
        idx: usize,
        assign: &mut Vec<usize>,
    ) -> Result<Option<Placement>, SolverError> {
        if idx == order.len() {
            let mut all = Vec::new();
            for (j, &hc) in self.host_comps.iter().enumerate() {
                let pmask = (0..assign.len())
                    .filter(|&i| assign[i] == j)
                    .fold(0u64, |m, i| m | self.pat_comps[i]);
                if pmask == 0 {
                    continue;
                }
                match self.solve(j, hc, pmask)? {
                    Some(p) => all.extend(p),
                    None => return Ok(None),
                }
            }
            return Ok(Some(all));
        }
        let ci = order[idx];
        for j in 0..self.host_comps.len() {
            let used: u32 = (0..assign.len())
                .filter(|&i| assign[i] == j)
                .map(|i| self.pat_comps[i].count_ones())
                .sum();
            if used + self.pat_comps[ci].count_ones() > self.host_comps[j].count_ones() {
                continue;
            }
            assign[ci] = j;
            if let Some(p) = self.assign(order, idx + 1, assign)? {
                return Ok(Some(p));
            }
            assign[ci] = usize::MAX;
        }
        Ok(None)
    }

    fn solve(&mut self, j: usize, hc: u64, pmask: u64) -> Result<Option<Placement>, SolverError> {
        if let Some(r) = self.cache.get(&(j, pmask)) {
            return Ok(r.clone());
        }
        let r = match connected_host_search(self.hb, hc, self.pb, pmask, self.budget) {
            Outcome::Found(p) => Some(p),
            Outcome::Absent => None,
            Outcome::Unknown => {
                self.unknown = true;
                None
            }
        };
        self.cache.insert((j, pmask), r.clone());
        Ok(r)
    }
}

/// Searches for a partition of the connected vertex set `hc` of the host
/// into `|pmask|` connected parts whose quotient contains the pattern
/// induced on `pmask`. Returns `(pattern position, host part)` pairs.
fn connected_host_search(
    hb: &BitGraph,
    hc: u64,
    pb: &BitGraph,
    pmask: u64,
    budget: &Budget,
) -> Outcome<Placement> {
    let pverts: Vec<usize> = bits(pmask).collect();
    let k = pverts.len();
    let hverts: Vec<usize> = bits(hc).collect();
    if k > hverts.len() {
        return Outcome::Absent;
    }
    // pattern adjacency over local indices 0..k
    let padj: Vec<u64> = pverts
        .iter()
        .map(|&p| {
            pverts
                .iter()
                .enumerate()
                .filter(|(_, &q)| pb.adj[p] >> q & 1 == 1)
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let pedges = padj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
    let host_edges = hverts.iter().map(|&v| (hb.adj[v] & hc).count_ones() as usize).sum::<usize>() / 2;
    if pedges > host_edges {
        return Outcome::Absent;
    }
    let mut s = PartitionSearch {
        hb,
        padj: &padj,
        pedges,
        k,
        seen: HashSet::new(),
        budget,
        steps: 0,
        out_of_time: false,
    };
    let start: Vec<u64> = hverts.iter().map(|&v| 1u64 << v).collect();
    match s.dfs(start) {
        Some((parts, f)) => {
            Outcome::Found((0..k).map(|i| (pverts[i], parts[f[i]])).collect())
        }
        None if s.out_of_time => Outcome::Unknown,
        None => Outcome::Absent,
    }
}

struct PartitionSearch<'a> {
    hb: &'a BitGraph,
    padj: &'a [u64],
    pedges: usize,
    k: usize,
    seen: HashSet<Vec<u64>>,
    budget: &'a Budget,
    steps: u64,
    out_of_time: bool,
}

impl PartitionSearch<'_> {
    fn dfs(&mut self, parts: Vec<u64>) -> Option<(Vec<u64>, Vec<usize>)> {
        self.steps += 1;
        if self.steps % 512 == 0 && self.budget.expired() {
            self.out_of_time = true;
        }
        if self.out_of_time {
            return None;
        }
        let nb: Vec<u64> = parts.iter().map(|&p| self.hb.neighborhood(p)).collect();
        let mut qadj = vec![0u64; parts.len()];
        let mut pairs = Vec::new();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if nb[i] & parts[j] != 0 {
                    qadj[i] |= 1 << j;
                    qadj[j] |= 1 << i;
                    pairs.push((i, j));
                }
            }
        }
        let excess = parts.len() - self.k;
        // every further contraction removes at least one quotient edge
        if pairs.len() < self.pedges + excess {
            return None;
        }
        if excess == 0 {
            return embed_spanning(self.padj, &qadj).map(|f| (parts, f));
        }
        pairs.sort_by_key(|&(i, j)| (parts[i] | parts[j]).count_ones());
        for (i, j) in pairs {
            let mut next: Vec<u64> = parts
                .iter()
                .enumerate()
                .filter(|&(x, _)| x != j)
                .map(|(x, &p)| if x == i { p | parts[j] } else { p })
                .collect();
            next.sort_unstable();
            if !self.seen.insert(next.clone()) {
                continue;
            }
            if let Some(r) = self.dfs(next) {
                return Some(r);
            }
            if self.out_of_time {
                return None;
            }
        }
        None
    }
}

/// Finds a bijection `f` from pattern vertices to quotient vertices that
/// maps every pattern edge onto a quotient edge.
fn embed_spanning(padj: &[u64], qadj: &[u64]) -> Option<Vec<usize>> {
    let k = padj.len();
    let pdeg: Vec<u32> = padj.iter().map(|a| a.count_ones()).collect();
    let qdeg: Vec<u32> = qadj.iter().map(|a| a.count_ones()).collect();
    let mut ps = pdeg.clone();
    let mut qs = qdeg.clone();
    ps.sort_unstable_by(|a, b| b.cmp(a));
    qs.sort_unstable_by(|a, b| b.cmp(a));
    if ps.iter().zip(&qs).any(|(p, q)| p > q) {
        return None;
    }
    // place vertices with many already-placed neighbours first
    let mut order = Vec::with_capacity(k);
    let mut placed = 0u64;
    while order.len() < k {
        let v = (0..k)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((padj[v] & placed).count_ones(), pdeg[v], std::cmp::Reverse(v)))
            .unwrap();
        order.push(v);
        placed |= 1 << v;
    }
    let mut f = vec![usize::MAX; k];
    fn go(
        idx: usize,
        order: &[usize],
        padj: &[u64],
        qadj: &[u64],
        pdeg: &[u32],
        qdeg: &[u32],
        f: &mut Vec<usize>,
        used: u64,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for q in 0..qadj.len() {
            if used >> q & 1 == 1 || qdeg[q] < pdeg[v] {
                continue;
            }
            let ok = bits(padj[v])
                .filter(|&w| f[w] != usize::MAX)
                .all(|w| qadj[q] >> f[w] & 1 == 1);
            if !ok {
                continue;
            }
            f[v] = q;
            if go(idx + 1, order, padj, qadj, pdeg, qdeg, f, used | 1 << q) {
                return true;
            }
            f[v] = usize::MAX;
        }
        false
    }
    if go(0, &order, padj, qadj, &pdeg, &qdeg, &mut f, 0) {
        Some(f)
    } else {
        None
    }
}

/// Convenience for tests and reports: `Some(true)` if found, `Some(false)`
/// if absent, `None` if unknown.
pub fn contains_minor(pattern: &Graph, host: &Graph, budget: &Budget) -> Option<bool> {
    match is_minor_within(pattern, host, budget).ok()? {
        Outcome::Found(_) => Some(true),
        Outcome::Absent => Some(false),
        Outcome::Unknown => None,
    }
}

/// Vertex ids used by a model, for callers that want to trim a host.
pub fn model_support(m: &MinorModel) -> Vec<Vertex> {
    m.branch_sets.values().flatten().copied().collect()
}
