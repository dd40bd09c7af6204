//! Batch runs of the constructions with machine-readable reports.
//!
//! A sweep first draws every instance from one seeded generator, in
//! parameter order, and only then runs the rows (in parallel). Row order
//! and content therefore depend on the settings alone; `wall_ms` is left
//! blank unless timing is requested, so reports stay byte-identical.

use std::time::Instant;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use minorkit::budget::{Budget, Outcome as Search};
use minorkit::census::{connected_graphs, random_pathwidth_two};
use minorkit::constructions::bounds::yurt_comb_teeth;
use minorkit::constructions::es::{es_extract, Direction};
use minorkit::constructions::{double_wheel, pw2, wheel, xi, yurt, Construction};
use minorkit::io::to_graph6;
use minorkit::patterns::{binary_tree_leaves, ceil_sqrt};
use minorkit::solvers::minor::is_minor_within;
use minorkit::solvers::pathwidth::exact_pathwidth;
use minorkit::Graph;

/// Hosts up to this size are also checked with the exact minor oracle.
pub const ORACLE_MAX_HOST: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepFamily {
    Wheel,
    DoubleWheel,
    Pw2,
    Xi,
    Yurt,
    Es,
}

impl SweepFamily {
    pub fn name(self) -> &'static str {
        match self {
            SweepFamily::Wheel => "wheel",
            SweepFamily::DoubleWheel => "double_wheel",
            SweepFamily::Pw2 => "pw2",
            SweepFamily::Xi => "xi",
            SweepFamily::Yurt => "yurt",
            SweepFamily::Es => "es",
        }
    }
}

/// What a sweep runs. `from..=to` ranges over the family's main parameter:
/// tree height `h` for wheels and double wheels, vertex count `n` for pw2,
/// order `k` for xi and yurt, sequence length for es.
///
/// For pw2, each `n <= 6` also runs every connected graph on `n` vertices
/// of pathwidth at most 2. For es, every permutation of each length is
/// run and `samples` is ignored; `k` and `l` are the run lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub family: SweepFamily,
    pub from: usize,
    pub to: usize,
    pub samples: usize,
    pub seed: u64,
    pub budget_ms: Option<u64>,
    pub k: usize,
    pub l: usize,
    pub timing: bool,
}

impl SweepSpec {
    pub fn new(family: SweepFamily, from: usize, to: usize, samples: usize, seed: u64) -> Self {
        SweepSpec {
            family,
            from,
            to,
            samples,
            seed,
            budget_ms: None,
            k: 3,
            l: 3,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid sweep: {0}")]
pub struct SpecError(pub String);

fn bad(msg: impl Into<String>) -> Result<(), SpecError> {
    Err(SpecError(msg.into()))
}

pub fn validate(spec: &SweepSpec) -> Result<(), SpecError> {
    if spec.from > spec.to {
        return bad(format!("empty range {}..={}", spec.from, spec.to));
    }
    let (lo, hi, what) = match spec.family {
        SweepFamily::Wheel => (3, 16, "wheel needs h > 2 (and h <= 16 at desk scale)"),
        SweepFamily::DoubleWheel => (11, 18, "double_wheel needs h >= 11, where the promised order reaches 3 (and h <= 18)"),
        SweepFamily::Pw2 => (1, 40, "pw2 needs 1 <= n <= 40"),
        SweepFamily::Xi => (2, 12, "xi needs 2 <= k <= 12"),
        SweepFamily::Yurt => (2, 5, "yurt needs 2 <= k <= 5"),
        SweepFamily::Es => (1, 8, "es enumerates permutations of length 1..=8"),
    };
    if spec.from < lo || spec.to > hi {
        return bad(what);
    }
    if spec.family == SweepFamily::Es {
        if spec.k == 0 || spec.l == 0 {
            return bad("es needs k, l >= 1");
        }
        let need = (spec.k - 1) * (spec.l - 1) + 1;
        if spec.from < need {
            return bad(format!("es needs length >= (k - 1)(l - 1) + 1 = {need}"));
        }
    } else if spec.samples == 0 && spec.family != SweepFamily::Pw2 {
        return bad("samples must be at least 1");
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowOutcome {
    Verified,
    Violated,
    Unknown,
}

/// One report row. The CSV columns are the fields in this order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub family: String,
    pub params: String,
    pub outcome: RowOutcome,
    pub order_achieved: Option<usize>,
    pub order_promised: usize,
    /// Verifier output on violated rows, empty otherwise.
    pub witness: String,
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<Row>,
}

impl SweepReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome == RowOutcome::Violated).count()
    }

    pub fn count(&self, outcome: RowOutcome) -> usize {
        self.rows.iter().filter(|r| r.outcome == outcome).count()
    }

    /// 0 unless some row is violated.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.violations() > 0)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record(["family", "params", "outcome", "order_achieved", "order_promised", "witness", "wall_ms"])
                .expect("in-memory write");
        }
        for r in &self.rows {
            w.serialize(r).expect("rows serialize");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("rows serialize")
    }
}

enum Job {
    Wheel { h: u32, psi: Vec<usize> },
    DoubleWheel { h: u32, leaves: Vec<usize> },
    Pw2 { g: Graph },
    Xi { k: usize, perm: Vec<usize> },
    Yurt { k: usize, teeth: usize, matched: Vec<usize> },
    Es { seq: Vec<usize>, k: usize, l: usize },
}

struct Point {
    params: String,
    job: Job,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    // lexicographic successor
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("p[i] qualifies");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

fn shuffled(rng: &mut ChaCha8Rng, n: usize, keep: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v.truncate(keep);
    v
}

fn points(spec: &SweepSpec) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::new();
    for p in spec.from..=spec.to {
        match spec.family {
            SweepFamily::Wheel => {
                for s in 0..spec.samples {
                    let h = p as u32;
                    let psi = wheel::random_psi(&mut rng, h);
                    out.push(Point { params: format!("h={h};sample={s}"), job: Job::Wheel { h, psi } });
                }
            }
            SweepFamily::DoubleWheel => {
                for s in 0..spec.samples {
                    let h = p as u32;
                    let n_leaves = binary_tree_leaves(h).len();
                    let leaves = shuffled(&mut rng, n_leaves, ceil_sqrt(n_leaves));
                    out.push(Point {
                        params: format!("h={h};path={};sample={s}", leaves.len()),
                        job: Job::DoubleWheel { h, leaves },
                    });
                }
            }
            SweepFamily::Pw2 => {
                if p <= 6 {
                    for (i, g) in connected_graphs(p).into_iter().enumerate() {
                        if exact_pathwidth(&g).expect("six vertices").width <= 2 {
                            out.push(Point { params: format!("n={p};census={i};graph={}", to_graph6(&g)), job: Job::Pw2 { g } });
                        }
                    }
                }
                if p >= 3 {
                    for s in 0..spec.samples {
                        let g = random_pathwidth_two(&mut rng, p);
                        out.push(Point { params: format!("n={p};sample={s};graph={}", to_graph6(&g)), job: Job::Pw2 { g } });
                    }
                }
            }
            SweepFamily::Xi => {
                for s in 0..spec.samples {
                    let perm = shuffled(&mut rng, xi::required_pairs(p), usize::MAX);
                    out.push(Point { params: format!("k={p};sample={s};perm={perm:?}"), job: Job::Xi { k: p, perm } });
                }
            }
            SweepFamily::Yurt => {
                let teeth = yurt_comb_teeth(p as u64) as usize;
                for s in 0..spec.samples {
                    let matched = shuffled(&mut rng, teeth, yurt::guaranteed_path(teeth));
                    out.push(Point {
                        params: format!("k={p};teeth={teeth};sample={s}"),
                        job: Job::Yurt { k: p, teeth, matched },
                    });
                }
            }
            SweepFamily::Es => {
                for (i, seq) in permutations(p).into_iter().enumerate() {
                    out.push(Point {
                        params: format!("n={p};k={};l={};perm={i}", spec.k, spec.l),
                        job: Job::Es { seq, k: spec.k, l: spec.l },
                    });
                }
            }
        }
    }
    out
}

/// Longest strictly monotone subsequences by subset enumeration.
pub fn brute_force_longest(seq: &[usize]) -> (usize, usize) {
    let n = seq.len();
    assert!(n <= 20, "subset enumeration");
    let (mut inc, mut dec) = (0, 0);
    for mask in 0u32..1 << n {
        let pick: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| seq[i]).collect();
        let len = pick.len();
        if pick.windows(2).all(|w| w[0] < w[1]) {
            inc = inc.max(len);
        }
        if pick.windows(2).all(|w| w[0] > w[1]) {
            dec = dec.max(len);
        }
    }
    (inc, dec)
}

struct Verdict {
    outcome: RowOutcome,
    achieved: Option<usize>,
    promised: usize,
    witness: String,
}

impl Verdict {
    fn violated(promised: usize, witness: impl Into<String>) -> Self {
        Verdict {
            outcome: RowOutcome::Violated,
            achieved: None,
            promised,
            witness: witness.into(),
        }
    }
}

fn judge(c: &Construction, promised: usize, budget: &Budget) -> Verdict {
    if let Err(vs) = c.verify() {
        let msg: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        return Verdict {
            achieved: Some(c.order),
            ..Verdict::violated(promised, msg.join("; "))
        };
    }
    if c.order < promised {
        return Verdict {
            achieved: Some(c.order),
            ..Verdict::violated(promised, format!("order {} below promised {promised}", c.order))
        };
    }
    let mut outcome = RowOutcome::Verified;
    let mut witness = String::new();
    if c.host.vertex_count() <= ORACLE_MAX_HOST {
        match is_minor_within(&c.pattern, &c.host, budget) {
            Ok(Search::Found(_)) => {}
            Ok(Search::Absent) => {
                outcome = RowOutcome::Violated;
                witness = "minor oracle finds no model, yet the construction verified".into();
            }
            Ok(Search::Unknown) | Err(_) => outcome = RowOutcome::Unknown,
        }
    }
    Verdict {
        outcome,
        achieved: Some(c.order),
        promised,
        witness,
    }
}

fn run_job(job: &Job, budget: &Budget) -> Verdict {
    match job {
        Job::Wheel { h, psi } => {
            let promised = wheel::promised_order(*h);
            match wheel::wheel_from_tree_path(*h, psi) {
                Ok(w) => judge(&w.construction, promised, budget),
                Err(e) => Verdict::violated(promised, e.to_string()),
            }
        }
        Job::DoubleWheel { h, leaves } => {
            let promised = double_wheel::promised_order(*h);
            match double_wheel::binary_lambda(*h, leaves).and_then(|i| double_wheel::double_wheel_from_lambda(&i)) {
                Ok(c) => judge(&c, promised, budget),
                Err(e) => Verdict::violated(promised, e.to_string()),
            }
        }
        Job::Pw2 { g } => {
            let promised = g.vertex_count().saturating_sub(1).max(1);
            match pw2::embed_pw2(g) {
                Ok(e) => judge(&e.construction, promised, budget),
                Err(e) => Verdict::violated(promised, e.to_string()),
            }
        }
        Job::Xi { k, perm } => match xi::xi_from_double_path(*k, perm) {
            Ok(x) => judge(&x.construction, *k, budget),
            Err(e) => Verdict::violated(*k, e.to_string()),
        },
        Job::Yurt { k, teeth, matched } => {
            let built = minorkit::patterns::comb(*teeth)
                .map_err(minorkit::constructions::ConstructionError::from)
                .and_then(|t| {
                    let ids: Vec<usize> = matched.iter().map(|i| teeth + i).collect();
                    Ok(minorkit::patterns::lambda_build(&t, ids.len(), &ids)?)
                })
                .and_then(|inst| yurt::yurt_from_lambda_comb(&inst, *k));
            match built {
                Ok(y) => judge(&y.construction, *k, budget),
                Err(e) => Verdict::violated(*k, e.to_string()),
            }
        }
        Job::Es { seq, k, l } => {
            let (inc, dec) = brute_force_longest(seq);
            let exists = inc >= *k || dec >= *l;
            match es_extract(seq, *k, *l) {
                Ok(w) => {
                    let target = if w.direction == Direction::Increasing { *k } else { *l };
                    let ok = w.is_valid_for(seq) && w.indices.len() == target && exists;
                    Verdict {
                        outcome: if ok { RowOutcome::Verified } else { RowOutcome::Violated },
                        achieved: Some(w.indices.len()),
                        promised: target,
                        witness: if ok { String::new() } else { format!("bad witness {:?} (oracle: inc {inc}, dec {dec})", w.indices) },
                    }
                }
                Err(e) if exists => Verdict::violated(*k.min(l), format!("{e}, but the oracle finds inc {inc}, dec {dec}")),
                Err(_) => Verdict {
                    outcome: RowOutcome::Verified,
                    achieved: None,
                    promised: 0,
                    witness: String::new(),
                },
            }
        }
    }
}

/// Runs a validated spec.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport, SpecError> {
    validate(spec)?;
    let rows = points(spec)
        .into_par_iter()
        .map(|p| {
            let start = Instant::now();
            let budget = spec.budget_ms.map_or_else(Budget::unlimited, Budget::from_millis);
            let v = run_job(&p.job, &budget);
            Row {
                family: spec.family.name().to_string(),
                params: p.params,
                outcome: v.outcome,
                order_achieved: v.achieved,
                order_promised: v.promised,
                witness: v.witness,
                wall_ms: spec.timing.then(|| start.elapsed().as_millis() as u64),
            }
        })
        .collect();
    Ok(SweepReport { rows })
}
