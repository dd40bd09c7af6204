//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 8 fails by design of the bound it checks. The pathwidth-2
//! threshold `3h(h - 4) + 8` is negative for `h <= 3`, so on tiny hosts
//! the implication is not vacuous and is false (a tree has no triangle,
//! a single vertex has no edge). The run exits successfully only if every
//! other criterion passes and criterion 8 fails in exactly that way.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use minorkit::budget::Budget;
use minorkit::census::{connected_graphs_up_to, random_tree, trees_up_to};
use minorkit::constructions::bounds::{bound, yurt_comb_teeth, Family};
use minorkit::constructions::es::{es_extract, Direction};
use minorkit::constructions::yurt::{guaranteed_path, random_comb_lambda, yurt_from_lambda_comb};
use minorkit::constructions::{pw2, xi, Construction};
use minorkit::decomposition::{compactify, make_nice, verify_path_decomposition, Optimality};
use minorkit::graph::tree_metrics;
use minorkit::patterns::{complete_graph, cycle_graph, path_graph, wheel, xi as xi_graph, yurt};
use minorkit::solvers::minor::is_minor;
use minorkit::solvers::pathwidth::{exact_pathwidth, exact_pathwidth_within};
use minorkit::solvers::treewidth::exact_treewidth_within;
use minorkit::Graph;
use minorkit_cli::cross_check::{cross_check_all, CrossCheck};
use minorkit_cli::sweep::{run_sweep, RowOutcome, SweepFamily, SweepReport, SweepSpec};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn sweep(family: SweepFamily, from: usize, to: usize, samples: usize, seed: u64) -> SweepReport {
    run_sweep(&SweepSpec::new(family, from, to, samples, seed)).expect("acceptance specs are valid")
}

fn construction_soundness() -> Verdict {
    let start = Instant::now();
    let runs = [
        ("wheel", sweep(SweepFamily::Wheel, 3, 8, 20, 1)),
        ("double_wheel", sweep(SweepFamily::DoubleWheel, 12, 16, 2, 2)),
        ("pw2", sweep(SweepFamily::Pw2, 1, 12, 20, 3)),
        ("xi", sweep(SweepFamily::Xi, 2, 5, 50, 4)),
        ("yurt", sweep(SweepFamily::Yurt, 2, 3, 20, 5)),
    ];
    let elapsed = start.elapsed();
    let mut rows = 0;
    let mut bad = Vec::new();
    for (name, r) in &runs {
        rows += r.rows.len();
        for row in &r.rows {
            let short = row.order_achieved.is_none_or(|a| a < row.order_promised);
            if row.outcome != RowOutcome::Verified || short {
                bad.push(format!("{name} {}: {}", row.params, row.witness));
            }
        }
    }
    let census = runs[2].1.rows.iter().filter(|r| r.params.contains("census")).count();
    let pass = bad.is_empty() && census == 79 && elapsed < Duration::from_secs(600);
    verdict(
        pass,
        format!("{rows} rows ({census} census graphs), {} not verified, {:.1}s {}", bad.len(), elapsed.as_secs_f64(), bad.first().cloned().unwrap_or_default()),
    )
}

fn oracle_equivalence() -> Verdict {
    let mut small: Vec<Construction> = Vec::new();
    for g in connected_graphs_up_to(6) {
        if exact_pathwidth(&g).unwrap().width <= 2 {
            small.push(pw2::embed_pw2(&g).unwrap().construction);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let perm = xi::random_permutation(&mut rng, xi::required_pairs(2));
        small.push(xi::xi_from_double_path(2, &perm).unwrap().construction);
        let teeth = yurt_comb_teeth(2) as usize;
        let inst = random_comb_lambda(&mut rng, teeth, guaranteed_path(teeth)).unwrap();
        small.push(yurt_from_lambda_comb(&inst, 2).unwrap().construction);
    }
    small.retain(|c| c.host.vertex_count() <= 14);
    let disagreements = small
        .par_iter()
        .filter(|c| !(c.verify().is_ok() && is_minor(&c.pattern, &c.host).unwrap().is_found()))
        .count();
    verdict(disagreements == 0 && !small.is_empty(), format!("{} hosts of at most 14 vertices, {disagreements} disagreements", small.len()))
}

/// Longest strictly increasing subsequence by patience sorting.
fn lis(seq: &[i64]) -> usize {
    let mut tails: Vec<i64> = Vec::new();
    for &x in seq {
        match tails.binary_search(&x) {
            Ok(_) => {}
            Err(i) if i == tails.len() => tails.push(x),
            Err(i) => tails[i] = x,
        }
    }
    tails.len()
}

fn erdos_szekeres() -> Verdict {
    let exhaustive = sweep(SweepFamily::Es, 7, 7, 0, 0);
    let perm_ok = exhaustive.rows.len() == 5040 && exhaustive.count(RowOutcome::Verified) == 5040;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut failures = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(0..=40);
        let mut pool: Vec<i64> = (-100..100).collect();
        pool.shuffle(&mut rng);
        let seq = &pool[..n];
        let (k, l) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let up = lis(seq);
        let neg: Vec<i64> = seq.iter().map(|x| -x).collect();
        let down = lis(&neg);
        let exists = up >= k || down >= l;
        match es_extract(seq, k, l) {
            Ok(w) => {
                let want = if w.direction == Direction::Increasing { k } else { l };
                if !exists || !w.is_valid_for(seq) || w.indices.len() != want {
                    failures += 1;
                }
            }
            Err(_) => failures += usize::from(exists || n >= (k - 1) * (l - 1) + 1),
        }
    }
    verdict(perm_ok && failures == 0, format!("5040 permutations: {}; 10000 random sequences: {failures} failures", if perm_ok { "all verified" } else { "MISMATCH" }))
}

fn decomposition_pipeline() -> Verdict {
    let graphs = connected_graphs_up_to(6);
    let bad: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let opt = exact_pathwidth(g).unwrap();
            let ok = make_nice(g, &opt.decomposition)
                .and_then(|(nice, _)| compactify(g, &nice, Optimality::Checked))
                .is_ok_and(|c| {
                    let c = c.decomposition;
                    verify_path_decomposition(g, &c).is_ok()
                        && c.bags.iter().all(|b| b.len() == opt.width + 1)
                        && c.len() == g.vertex_count() - opt.width
                        && c.width() == opt.width
                });
            (!ok).then(|| minorkit::io::to_graph6(g))
        })
        .collect();
    let pass = bad.is_empty();
    verdict(pass, format!("{} census graphs, {} violations", graphs.len(), bad.len()))
}

fn exact_solvers() -> Verdict {
    let budget = || Budget::from_millis(60_000);
    let tw = |g: &Graph| exact_treewidth_within(g, &budget()).ok().map(|r| r.width);
    let pw = |g: &Graph| exact_pathwidth_within(g, &budget()).ok().map(|r| r.width);
    let mut misses = Vec::new();
    let mut check = |name: String, got: (Option<usize>, Option<usize>), want_tw: usize, pw_ok: &dyn Fn(usize) -> bool| {
        if got.0 != Some(want_tw) || !got.1.is_some_and(pw_ok) {
            misses.push(format!("{name}: {got:?}"));
        }
    };
    for t in trees_up_to(10).into_iter().filter(|t| t.vertex_count() >= 2) {
        let n = t.vertex_count();
        let log = usize::BITS as usize - (n - 1).leading_zeros() as usize;
        check(format!("tree {}", minorkit::io::to_graph6(&t)), (tw(&t), pw(&t)), 1, &|p| p <= log);
    }
    for n in 2..=12 {
        let p = path_graph(n);
        check(format!("P{n}"), (tw(&p), pw(&p)), 1, &|p| p == 1);
    }
    for n in 3..=12 {
        let c = cycle_graph(n).unwrap();
        check(format!("C{n}"), (tw(&c), pw(&c)), 2, &|p| p == 2);
    }
    for n in 2..=10 {
        let k = complete_graph(n);
        check(format!("K{n}"), (tw(&k), pw(&k)), n - 1, &|p| p == n - 1);
    }
    for r in 2..=6 {
        let g = xi_graph(r).unwrap();
        check(format!("xi({r})"), (tw(&g), pw(&g)), 2, &|p| p == 2);
    }
    for r in 4..=8 {
        let g = wheel(r).unwrap();
        check(format!("wheel({r})"), (tw(&g), pw(&g)), 3, &|p| p == 3);
    }
    for k in 3..=5 {
        let g = yurt(k).unwrap();
        check(format!("yurt({k})"), (tw(&g), pw(&g)), 3, &|p| p == 3);
    }
    verdict(misses.is_empty(), format!("{} mismatches {}", misses.len(), misses.first().cloned().unwrap_or_default()))
}

fn diameter_leaves() -> Verdict {
    let holds = |t: &Graph| {
        let m = tree_metrics(t).unwrap();
        m.leaves.len() * m.diameter + 1 >= t.vertex_count()
    };
    let trees = trees_up_to(9);
    let mut violations = trees.iter().filter(|t| !holds(t)).count();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=50);
        violations += usize::from(!holds(&random_tree(&mut rng, n)));
    }
    verdict(violations == 0, format!("{} census trees and 1000 random trees, {violations} violations", trees.len()))
}

fn bound_formulas() -> Verdict {
    let spots = [(Family::Wheel, 10, 358), (Family::Yurt, 2, 23), (Family::DoubleWheel, 1, 8108), (Family::Pw2, 10, 188)];
    let mut bad = spots.iter().filter(|&&(f, k, v)| bound(f, k).unwrap() != v).count();
    for k in 1..=60u64 {
        let x = k as f64;
        // the bound expressions, evaluated in floating point
        let wheel = (36.0 * x - 2.5).ceil();
        let yurt = 6.0 * x.powi(4) - 24.0 * x.powi(3) + 48.0 * x * x - 48.0 * x + 23.0;
        let pw2 = 3.0 * x * (x - 4.0) + 8.0;
        let inner = 8.0 * x * (8.0 * x).log2() + 2.0;
        let dw = 12.0 * inner * inner - 4.0;
        bad += usize::from(bound(Family::Wheel, k).unwrap() as f64 != wheel);
        bad += usize::from(bound(Family::Yurt, k).unwrap() as f64 != yurt);
        bad += usize::from(bound(Family::Pw2, k).unwrap() as f64 != pw2);
        bad += usize::from((bound(Family::DoubleWheel, k).unwrap() as f64 - dw.ceil()).abs() > 1.0);
    }
    verdict(bad == 0, format!("4 spot values and 240 formula evaluations, {bad} mismatches"))
}

fn consistency_census() -> (Verdict, bool) {
    let queries: Vec<(Family, usize)> = Family::ALL.iter().flat_map(|&f| (1..=4).map(move |k| (f, k))).collect();
    let hosts = connected_graphs_up_to(7);
    let checks: Vec<(Graph, CrossCheck)> = hosts
        .par_iter()
        .flat_map_iter(|g| cross_check_all(g, &queries, &Budget::unlimited()).unwrap().into_iter().map(move |c| (g.clone(), c)))
        .collect();
    let bad: Vec<&(Graph, CrossCheck)> = checks.iter().filter(|(_, c)| !c.consistent).collect();
    let mut by_query: BTreeMap<String, usize> = BTreeMap::new();
    for (_, c) in &bad {
        *by_query.entry(format!("{}(k={}, bound {})", c.family, c.k, c.bound)).or_default() += 1;
    }
    // the documented cause: only negative pathwidth-2 thresholds fail
    let explained = !bad.is_empty() && bad.iter().all(|(_, c)| c.family == Family::Pw2 && c.bound < 0);
    let summary: Vec<String> = by_query.iter().map(|(q, n)| format!("{q}: {n}")).collect();
    (
        verdict(
            bad.is_empty(),
            format!("{} checks on {} hosts, {} inconsistent [{}]", checks.len(), hosts.len(), bad.len(), summary.join(", ")),
        ),
        explained,
    )
}

fn determinism() -> Verdict {
    let specs = [
        SweepSpec::new(SweepFamily::Wheel, 3, 6, 5, 77),
        SweepSpec::new(SweepFamily::Pw2, 3, 9, 5, 78),
        SweepSpec::new(SweepFamily::Xi, 2, 5, 10, 79),
        SweepSpec::new(SweepFamily::Yurt, 2, 3, 5, 80),
        SweepSpec::new(SweepFamily::DoubleWheel, 11, 12, 2, 81),
    ];
    let lib_ok = specs.iter().all(|s| {
        let (a, b) = (run_sweep(s).unwrap(), run_sweep(s).unwrap());
        a.to_csv() == b.to_csv() && a.to_json() == b.to_json()
    });
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_minorkit"))
            .args(["sweep", "--family", "xi", "--from", "2", "--to", "4", "--samples", "8", "--seed", "5", "--out"])
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        (std::fs::read(&out).unwrap(), std::fs::read(out.with_extension("json")).unwrap())
    };
    let bin_ok = run("a.csv") == run("b.csv");
    verdict(lib_ok && bin_ok, format!("{} library sweeps and one binary sweep rerun, identical: {}", specs.len(), lib_ok && bin_ok))
}

fn main() {
    let started = Instant::now();
    let mut unexpected = 0;
    let mut report = |n: usize, what: &str, v: Verdict, expected_fail: Option<(bool, &str)>| {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {n}: {tag}  {what}: {}", v.detail);
        match (v.pass, expected_fail) {
            (true, None) => {}
            (false, Some((true, why))) => println!("             known failure: {why}"),
            (true, Some(_)) => {
                println!("             passed although a failure was expected");
                unexpected += 1;
            }
            _ => unexpected += 1,
        }
    };
    report(1, "construction soundness sweep", construction_soundness(), None);
    report(2, "minor oracle agrees on small hosts", oracle_equivalence(), None);
    report(3, "Erdős–Szekeres extraction", erdos_szekeres(), None);
    report(4, "decomposition pipeline", decomposition_pipeline(), None);
    report(5, "exact solver closed forms", exact_solvers(), None);
    report(6, "leaves times diameter", diameter_leaves(), None);
    report(7, "bound formulas", bound_formulas(), None);
    let (v8, explained) = consistency_census();
    report(
        8,
        "consistency census",
        v8,
        Some((explained, "3h(h - 4) + 8 is negative for h <= 3, so small pathwidth-2 patterns are claimed in every host")),
    );
    report(9, "determinism", determinism(), None);
    println!("acceptance finished in {:.1}s", started.elapsed().as_secs_f64());
    if unexpected > 0 {
        eprintln!("{unexpected} criteria did not behave as expected");
        std::process::exit(1);
    }
}
