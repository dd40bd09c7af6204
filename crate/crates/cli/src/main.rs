use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use minorkit::budget::{Budget, Outcome};
use minorkit::census::{random_pathwidth_two, random_tree};
use minorkit::constructions::bounds::{bound, Family};
use minorkit::constructions::pw2::embed_pw2;
use minorkit::constructions::{wheel, xi};
use minorkit::decomposition::{compactify, verify_path_decomposition, Optimality, PathDecomposition};
use minorkit::patterns;
use minorkit::solvers::certificate::{verify_separation_certificate, SeparationCertificate};
use minorkit::solvers::linked::{is_linked_with, LinkedOptions, Linkedness};
use minorkit::solvers::minor::is_minor_within;
use minorkit::solvers::model::verify_model;
use minorkit::solvers::pathwidth::exact_pathwidth_within;
use minorkit::solvers::treewidth::exact_treewidth_within;
use minorkit::solvers::SolverError;
use minorkit::{Graph, MinorModel};
use minorkit_cli::cross_check::cross_check;
use minorkit_cli::formats::{read_graph, read_text, write_graph, GraphFormat};
use minorkit_cli::sweep::{run_sweep, SweepFamily, SweepSpec};

#[derive(Parser)]
#[command(name = "minorkit", version, about = "Minor models, exact oracles and construction sweeps")]
struct Cli {
    /// Format of graph files read and written.
    #[arg(long, global = true, value_enum, default_value_t = GraphFormat::Graph6)]
    format: GraphFormat,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Time limit for exact searches; running out gives "unknown".
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Path,
    Cycle,
    Complete,
    Star,
    Wheel,
    DoubleWheel,
    Xi,
    Yurt,
    Comb,
    BinaryTree,
    /// Binary tree of height n plus a path matched to its leaves at random.
    TreePath,
    /// Two paths joined through a random permutation, sized for xi(n).
    DoublePath,
    RandomTree,
    RandomPw2,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph.
    Gen { kind: GenKind, n: usize },
    /// Exact treewidth with an elimination ordering.
    Tw { graph: PathBuf },
    /// Exact pathwidth with a path decomposition.
    Pw { graph: PathBuf },
    /// Decide whether PATTERN is a minor of HOST.
    Minor { pattern: PathBuf, host: PathBuf },
    /// Decide whether a vertex set is linked.
    Linked {
        graph: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
    },
    /// Check a minor model given as JSON branch sets.
    VerifyModel { host: PathBuf, pattern: PathBuf, model: PathBuf },
    /// Check a separation certificate given as JSON.
    VerifyCert { host: PathBuf, certificate: PathBuf },
    /// Check a path decomposition given as JSON.
    VerifyDecomp { graph: PathBuf, decomposition: PathBuf },
    /// Compact form of an optimal path decomposition.
    Compactify {
        graph: PathBuf,
        decomposition: PathBuf,
        /// Skip the exact optimality check (for graphs beyond the solver).
        #[arg(long)]
        asserted: bool,
    },
    /// Embed a graph of pathwidth at most 2 in the subdivided ladder.
    Embed { graph: PathBuf },
    /// Treewidth threshold of a pattern family.
    Bound { family: Family, k: u64 },
    /// Run a construction sweep and report CSV (and JSON next to --out).
    Sweep {
        #[arg(long, value_enum)]
        family: SweepFamily,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        /// Run lengths for the es family.
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        l: usize,
        /// Fill the wall_ms column (makes reports timing dependent).
        #[arg(long)]
        timing: bool,
        /// Print JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Check a treewidth bound against one host.
    CrossCheck { family: Family, k: usize, host: PathBuf },
}

/// Exit statuses: 0 for success or unknown, 1 for a violation.
type Status = u8;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(s) => ExitCode::from(s),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    cli.budget_ms.map_or_else(Budget::unlimited, Budget::from_millis)
}

fn graph(cli: &Cli, p: &Path) -> Result<Graph> {
    read_graph(p, cli.format)
}

fn json_file<T: serde::de::DeserializeOwned>(p: &Path) -> Result<T> {
    serde_json::from_str(&read_text(p)?).with_context(|| format!("parsing {}", p.display()))
}

fn unknown_on_budget<T>(r: Result<T, SolverError>) -> Result<Option<T>> {
    match r {
        Ok(t) => Ok(Some(t)),
        Err(SolverError::BudgetExceeded) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn generate(cli: &Cli, kind: GenKind, n: usize) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    if matches!(kind, GenKind::BinaryTree | GenKind::TreePath) && n > 20 {
        bail!("tree height {n} is beyond 20");
    }
    Ok(match kind {
        GenKind::Path => patterns::path_graph(n),
        GenKind::Cycle => patterns::cycle_graph(n)?,
        GenKind::Complete => patterns::complete_graph(n),
        GenKind::Star => patterns::star(n),
        GenKind::Wheel => patterns::wheel(n)?,
        GenKind::DoubleWheel => patterns::double_wheel(n)?,
        GenKind::Xi => patterns::xi(n)?,
        GenKind::Yurt => patterns::yurt(n)?,
        GenKind::Comb => patterns::comb(n)?,
        GenKind::BinaryTree => patterns::complete_binary_tree(n as u32),
        GenKind::TreePath => {
            let psi = wheel::random_psi(&mut rng, n as u32);
            wheel::tree_path_host(n as u32, &psi)?
        }
        GenKind::DoublePath => {
            if n < 2 {
                bail!("double-path needs n >= 2");
            }
            let perm = xi::random_permutation(&mut rng, xi::required_pairs(n));
            xi::double_path_host(&perm)?
        }
        GenKind::RandomTree => {
            if n == 0 {
                bail!("random-tree needs n >= 1");
            }
            random_tree(&mut rng, n)
        }
        GenKind::RandomPw2 => {
            if !(3..=40).contains(&n) {
                bail!("random-pw2 needs 3 <= n <= 40");
            }
            random_pathwidth_two(&mut rng, n)
        }
    })
}

fn run(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Gen { kind, n } => {
            let g = generate(cli, *kind, *n)?;
            emit(cli, &write_graph(&g, cli.format))?;
        }
        Command::Tw { graph: p } => {
            let g = graph(cli, p)?;
            let out = match unknown_on_budget(exact_treewidth_within(&g, &budget(cli)))? {
                Some(r) => json!({"treewidth": r.width, "ordering": r.ordering}),
                None => json!({"treewidth": "unknown"}),
            };
            emit(cli, &out.to_string())?;
        }
        Command::Pw { graph: p } => {
            let g = graph(cli, p)?;
            let out = match unknown_on_budget(exact_pathwidth_within(&g, &budget(cli)))? {
                Some(r) => json!({"pathwidth": r.width, "layout": r.layout, "decomposition": r.decomposition}),
                None => json!({"pathwidth": "unknown"}),
            };
            emit(cli, &out.to_string())?;
        }
        Command::Minor { pattern, host } => {
            let (h, g) = (graph(cli, pattern)?, graph(cli, host)?);
            let out = match is_minor_within(&h, &g, &budget(cli))? {
                Outcome::Found(m) => json!({"outcome": "found", "model": m}),
                Outcome::Absent => json!({"outcome": "absent"}),
                Outcome::Unknown => json!({"outcome": "unknown"}),
            };
            emit(cli, &out.to_string())?;
        }
        Command::Linked { graph: p, set } => {
            let g = graph(cli, p)?;
            let s: BTreeSet<usize> = set.iter().copied().collect();
            let opts = LinkedOptions {
                budget: budget(cli),
                samples: Some((2000, cli.seed)),
            };
            let out = match is_linked_with(&g, &s, &opts) {
                Linkedness::Linked => json!({"linked": true}),
                Linkedness::NotLinked { x1, x2 } => json!({"linked": false, "x1": x1, "x2": x2}),
                Linkedness::Unknown => json!({"linked": "unknown"}),
            };
            emit(cli, &out.to_string())?;
        }
        Command::VerifyModel { host, pattern, model } => {
            let (g, h) = (graph(cli, host)?, graph(cli, pattern)?);
            let m: MinorModel = json_file(model)?;
            return report(cli, verify_model(&g, &h, &m).map(|_| json!({"valid": true})));
        }
        Command::VerifyCert { host, certificate } => {
            let g = graph(cli, host)?;
            let c = SeparationCertificate::from_json(&read_text(certificate)?)?;
            let opts = LinkedOptions {
                budget: budget(cli),
                samples: None,
            };
            let r = verify_separation_certificate(&g, &c, &opts)
                .map(|chk| json!({"valid": true, "linkedness_verified": chk.linkedness_verified}));
            return report(cli, r);
        }
        Command::VerifyDecomp { graph: p, decomposition } => {
            let g = graph(cli, p)?;
            let d: PathDecomposition = json_file(decomposition)?;
            return report(cli, verify_path_decomposition(&g, &d).map(|_| json!({"valid": true, "width": d.width()})));
        }
        Command::Compactify { graph: p, decomposition, asserted } => {
            let g = graph(cli, p)?;
            let d: PathDecomposition = json_file(decomposition)?;
            let opt = if *asserted { Optimality::Asserted } else { Optimality::Checked };
            let c = compactify(&g, &d, opt)?;
            emit(cli, &c.decomposition.to_json())?;
        }
        Command::Embed { graph: p } => {
            let g = graph(cli, p)?;
            let e = embed_pw2(&g)?;
            let c = &e.construction;
            if let Err(vs) = c.verify() {
                bail!("embedding failed verification: {vs:?}");
            }
            let out = json!({
                "host": format!("xi({})", c.order),
                "model": c.model,
                "padding": e.padding,
                "decomposition": e.decomposition,
            });
            emit(cli, &out.to_string())?;
        }
        Command::Bound { family, k } => {
            emit(cli, &bound(*family, *k)?.to_string())?;
        }
        Command::Sweep { family, from, to, samples, k, l, timing, json } => {
            let spec = SweepSpec {
                family: *family,
                from: *from,
                to: *to,
                samples: *samples,
                seed: cli.seed,
                budget_ms: cli.budget_ms,
                k: *k,
                l: *l,
                timing: *timing,
            };
            let r = match run_sweep(&spec) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(2);
                }
            };
            match &cli.out {
                Some(p) => {
                    fs::write(p, r.to_csv()).with_context(|| format!("writing {}", p.display()))?;
                    let j = p.with_extension("json");
                    fs::write(&j, r.to_json()).with_context(|| format!("writing {}", j.display()))?;
                }
                None if *json => println!("{}", r.to_json()),
                None => print!("{}", r.to_csv()),
            }
            return Ok(r.exit_code() as Status);
        }
        Command::CrossCheck { family, k, host } => {
            let g = graph(cli, host)?;
            let c = cross_check(*family, *k, &g, &budget(cli))?;
            emit(cli, &serde_json::to_string(&c)?)?;
            return Ok(if c.consistent { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Prints the success value, or the violations with exit status 1.
fn report<E: std::fmt::Display>(cli: &Cli, r: Result<serde_json::Value, Vec<E>>) -> Result<Status> {
    match r {
        Ok(v) => {
            emit(cli, &v.to_string())?;
            Ok(0)
        }
        Err(vs) => {
            let msgs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            emit(cli, &json!({"valid": false, "violations": msgs}).to_string())?;
            Ok(1)
        }
    }
}
