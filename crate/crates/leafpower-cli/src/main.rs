//! `leafpower` — construct gadget graphs and their leaf roots, assemble the
//! chained family, check chordality, work with leaf trees, decide k-leaf-power
//! membership, and extract minimal obstructions.
//!
//! Every subcommand accepts `--json` and then prints a single run report to
//! stdout with `schema: "v1"`, the argv echo, sha-256 digests of the input
//! files, `elapsed_ms`, and command-specific fields. Exit codes: 0 for
//! affirmative verdicts and successful emission, 1 for negative verdicts
//! (no root, not chordal, verification failure, input already a leaf power),
//! 2 for usage and I/O errors, 3 for an exceeded search budget.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use leafpower::chordal::{is_chordal, is_strongly_chordal, EliminationOrdering};
use leafpower::gadgets::{
    assemble_hn, bot_gadget, bot_root, family_minus, interior_gadget, interior_root_r,
    interior_root_t, linear_top_gadget, linear_top_root, merged_root_minus_bot,
    merged_root_minus_top, top_gadget, top_root, Part,
};
use leafpower::io::{read_graph, read_tree, write_dot, write_graph, write_tree};
use leafpower::{
    extract_minimal, recognize, verify_leaf_root, Budget, DistanceConstraintSet, Graph, LeafTree,
    MinimalityCertificate, ObstructionError, RecognizeError, RecognizeOptions,
};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "leafpower",
    version,
    about = "Exact k-leaf-power machinery: gadgets, families, verification, \
             recognition, and minimal obstructions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a building-block graph, optionally with a constructed leaf root
    Gadget(GadgetArgs),
    /// Assemble the chained family H_n, optionally minus one end block
    Assemble(AssembleArgs),
    /// Check chordality or strong chordality of a graph file
    Check(CheckArgs),
    /// Leaf-tree utilities: distances, root verification, power extraction
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Decide whether a graph admits a k-leaf root
    Recognize(RecognizeArgs),
    /// Extract a minimal induced subgraph that is not a k-leaf power
    ExtractMin(ExtractMinArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetKind {
    Top,
    Bot,
    Interior,
    LinearTop,
}

#[derive(Clone, Copy, ValueEnum)]
enum RootVariant {
    T,
    R,
}

#[derive(Args)]
struct GadgetArgs {
    /// Which block to construct
    #[arg(long, value_enum)]
    kind: GadgetKind,
    /// Distance threshold the block is built for
    #[arg(long)]
    k: u64,
    /// Also emit the constructed leaf root (interior has variants T and R;
    /// the other blocks only accept T)
    #[arg(long, value_enum, ignore_case = true)]
    root: Option<RootVariant>,
    /// Write the graph file here instead of embedding it in the report
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the root tree file here instead of embedding it in the report
    #[arg(long)]
    tree_out: Option<PathBuf>,
    /// Also write a DOT rendering of the graph
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MinusPart {
    Top,
    Bot,
}

#[derive(Args)]
struct AssembleArgs {
    /// Distance threshold the family is built for (k ≥ 5)
    #[arg(long)]
    k: u64,
    /// Number of interior copies
    #[arg(long)]
    n: usize,
    /// Remove one end block (the remainder is a k-leaf power)
    #[arg(long, value_enum)]
    minus: Option<MinusPart>,
    /// With --minus: also emit the merged leaf root of the remainder
    #[arg(long)]
    root: bool,
    /// Write the graph file here instead of embedding it in the report
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the merged root tree file here instead of embedding it
    #[arg(long)]
    tree_out: Option<PathBuf>,
    /// Also write a DOT rendering of the graph
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Graph file to check
    graph: PathBuf,
    /// Check ordinary chordality
    #[arg(long, conflicts_with = "strongly_chordal")]
    chordal: bool,
    /// Check strong chordality (simple elimination ordering)
    #[arg(long)]
    strongly_chordal: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Print leaf-to-leaf distances
    Dist(TreeDistArgs),
    /// Verify that a tree is a k-leaf root of a graph
    Verify(TreeVerifyArgs),
    /// Emit the k-leaf power of a tree as a graph file
    Power(TreePowerArgs),
}

#[derive(Args)]
struct TreeDistArgs {
    /// Tree file to read
    #[arg(long)]
    tree: PathBuf,
    /// Only this pair, written `a,b`
    #[arg(long)]
    pair: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TreeVerifyArgs {
    /// Graph the tree is claimed to root
    #[arg(long)]
    graph: PathBuf,
    /// Candidate leaf root
    #[arg(long)]
    tree: PathBuf,
    /// Distance threshold
    #[arg(long)]
    k: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TreePowerArgs {
    /// Tree file to read
    #[arg(long)]
    tree: PathBuf,
    /// Distance threshold
    #[arg(long)]
    k: u64,
    /// Write the power graph here instead of embedding it in the report
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RecognizeArgs {
    /// Graph file to decide
    #[arg(long)]
    graph: PathBuf,
    /// Distance threshold (k ≥ 2)
    #[arg(long)]
    k: u64,
    /// Only accept caterpillar (linear) roots
    #[arg(long)]
    linear: bool,
    /// Pin one leaf distance exactly, written `u,v=d`; repeatable
    #[arg(long = "pin")]
    pins: Vec<String>,
    /// Lower-bound every distance from a leaf, written `v>=d`; repeatable
    #[arg(long = "min-dist")]
    min_dists: Vec<String>,
    /// Wall-clock budget in seconds; exceeding it exits 3, never "no root"
    #[arg(long)]
    budget: Option<u64>,
    /// Write the witness tree here when a root is found
    #[arg(long)]
    emit_root: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExtractMinArgs {
    /// Graph file to minimize (must not be a k-leaf power)
    #[arg(long)]
    graph: PathBuf,
    /// Distance threshold (k ≥ 2)
    #[arg(long)]
    k: u64,
    /// Wall-clock budget in seconds for the whole descent
    #[arg(long)]
    budget: Option<u64>,
    /// Write the minimal subgraph here as a graph file
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

/// One input file: contents plus its sha-256 digest, echoed in the report.
struct Input {
    path: PathBuf,
    sha256: String,
}

fn load(path: &Path) -> Result<(String, Input)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let digest = Sha256::digest(text.as_bytes());
    let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok((
        text,
        Input {
            path: path.to_path_buf(),
            sha256,
        },
    ))
}

fn load_graph(path: &Path) -> Result<(Graph, Input)> {
    let (text, input) = load(path)?;
    let g = read_graph(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    Ok((g, input))
}

fn load_tree(path: &Path) -> Result<(LeafTree, Input)> {
    let (text, input) = load(path)?;
    let t = read_tree(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    Ok((t, input))
}

/// Accumulates the run report; printed once at the end of a subcommand.
struct Report {
    started: Instant,
    inputs: Vec<Input>,
    artifacts: Vec<(String, PathBuf)>,
    fields: Map<String, Value>,
    human: Vec<String>,
}

impl Report {
    fn new() -> Report {
        Report {
            started: Instant::now(),
            inputs: Vec::new(),
            artifacts: Vec::new(),
            fields: Map::new(),
            human: Vec::new(),
        }
    }

    fn input(&mut self, input: Input) {
        self.inputs.push(input);
    }

    fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    fn line(&mut self, text: impl Into<String>) {
        self.human.push(text.into());
    }

    fn artifact(&mut self, kind: &str, path: &Path, content: &str) -> Result<()> {
        std::fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display()))?;
        self.artifacts.push((kind.to_string(), path.to_path_buf()));
        Ok(())
    }

    /// Emits either the JSON report or the collected human lines.
    fn finish(self, json: bool) {
        if json {
            let mut body = Map::new();
            body.insert("schema".into(), json!("v1"));
            body.insert(
                "command".into(),
                json!(std::env::args().collect::<Vec<String>>()),
            );
            body.insert(
                "inputs".into(),
                json!(self
                    .inputs
                    .iter()
                    .map(|i| json!({
                        "path": i.path.display().to_string(),
                        "sha256": i.sha256,
                    }))
                    .collect::<Vec<Value>>()),
            );
            body.insert(
                "elapsed_ms".into(),
                json!(self.started.elapsed().as_millis() as u64),
            );
            for (k, v) in self.fields {
                body.insert(k, v);
            }
            if !self.artifacts.is_empty() {
                body.insert(
                    "artifacts".into(),
                    json!(self
                        .artifacts
                        .iter()
                        .map(|(kind, path)| json!({
                            "kind": kind,
                            "path": path.display().to_string(),
                        }))
                        .collect::<Vec<Value>>()),
                );
            }
            println!("{}", Value::Object(body));
        } else {
            for line in self.human {
                println!("{line}");
            }
            for (kind, path) in self.artifacts {
                eprintln!("wrote {kind} to {}", path.display());
            }
        }
    }
}

fn ordering_labels(ordering: &Option<EliminationOrdering>, g: &Graph) -> Vec<String> {
    ordering
        .as_ref()
        .map(|o| o.order.iter().map(|&v| g.label(v).to_string()).collect())
        .unwrap_or_default()
}

fn parse_pin(text: &str) -> Result<(String, String, u64)> {
    // u,v=d
    let (pair, d) = text
        .split_once('=')
        .ok_or_else(|| anyhow!("--pin wants `u,v=d`, got {text:?}"))?;
    let (u, v) = pair
        .split_once(',')
        .ok_or_else(|| anyhow!("--pin wants `u,v=d`, got {text:?}"))?;
    let d: u64 = d
        .trim()
        .parse()
        .map_err(|_| anyhow!("--pin distance must be an integer, got {text:?}"))?;
    Ok((u.trim().to_string(), v.trim().to_string(), d))
}

fn parse_min_dist(text: &str) -> Result<(String, u64)> {
    // v>=d
    let (v, d) = text
        .split_once(">=")
        .ok_or_else(|| anyhow!("--min-dist wants `v>=d`, got {text:?}"))?;
    let d: u64 = d
        .trim()
        .parse()
        .map_err(|_| anyhow!("--min-dist bound must be an integer, got {text:?}"))?;
    Ok((v.trim().to_string(), d))
}

fn run_gadget(args: GadgetArgs) -> Result<i32> {
    let mut report = Report::new();
    let gadget = match args.kind {
        GadgetKind::Top => top_gadget(args.k)?,
        GadgetKind::Bot => bot_gadget(),
        GadgetKind::Interior => interior_gadget(args.k)?,
        GadgetKind::LinearTop => linear_top_gadget(args.k)?,
    };
    let root = match (args.root, args.kind) {
        (None, _) => None,
        (Some(RootVariant::T), GadgetKind::Top) => Some(top_root(args.k)?),
        (Some(RootVariant::T), GadgetKind::Bot) => Some(bot_root(args.k)?),
        (Some(RootVariant::T), GadgetKind::Interior) => Some(interior_root_t(args.k)?),
        (Some(RootVariant::R), GadgetKind::Interior) => Some(interior_root_r(args.k)?),
        (Some(RootVariant::T), GadgetKind::LinearTop) => Some(linear_top_root(args.k)?),
        (Some(RootVariant::R), _) => {
            bail!("root variant R exists only for --kind interior")
        }
    };

    let graph_text = write_graph(&gadget.graph)?;
    report.set("vertices", json!(gadget.graph.n()));
    report.set("edges", json!(gadget.graph.edge_count()));
    report.set("anchors", json!(gadget.anchors));
    report.line(format!(
        "{} vertices, {} edges; anchors {:?}",
        gadget.graph.n(),
        gadget.graph.edge_count(),
        gadget.anchors
    ));
    match &args.out {
        Some(path) => report.artifact("graph", path, &graph_text)?,
        None => {
            report.set("graph", json!(graph_text));
            report.line(graph_text.trim_end().to_string());
        }
    }
    if let Some(path) = &args.dot {
        report.artifact("dot", path, &write_dot(&gadget.graph)?)?;
    }
    if let Some(root) = &root {
        let tree_text = write_tree(root)?;
        match &args.tree_out {
            Some(path) => report.artifact("tree", path, &tree_text)?,
            None => {
                report.set("root", json!(tree_text));
                report.line(tree_text.clone());
            }
        }
    }
    report.finish(args.json);
    Ok(EXIT_OK)
}

fn run_assemble(args: AssembleArgs) -> Result<i32> {
    let mut report = Report::new();
    if args.root && args.minus.is_none() {
        bail!("--root needs --minus: the full family has no k-leaf root");
    }
    let fam = assemble_hn(args.k, args.n)?;
    let graph = match args.minus {
        None => fam.graph.clone(),
        Some(MinusPart::Top) => family_minus(&fam, Part::Top),
        Some(MinusPart::Bot) => family_minus(&fam, Part::Bot),
    };
    let graph_text = write_graph(&graph)?;
    report.set("vertices", json!(graph.n()));
    report.set("edges", json!(graph.edge_count()));
    report.line(format!(
        "H_{}(k={}){}: {} vertices, {} edges",
        args.n,
        args.k,
        match args.minus {
            None => "".to_string(),
            Some(MinusPart::Top) => " minus top".to_string(),
            Some(MinusPart::Bot) => " minus bot".to_string(),
        },
        graph.n(),
        graph.edge_count()
    ));
    match &args.out {
        Some(path) => report.artifact("graph", path, &graph_text)?,
        None => {
            report.set("graph", json!(graph_text));
            report.line(graph_text.trim_end().to_string());
        }
    }
    if let Some(path) = &args.dot {
        report.artifact("dot", path, &write_dot(&graph)?)?;
    }
    if args.root {
        let root = match args.minus {
            Some(MinusPart::Bot) => merged_root_minus_bot(args.k, args.n)?,
            Some(MinusPart::Top) => merged_root_minus_top(args.k, args.n)?,
            None => unreachable!("checked above"),
        };
        let tree_text = write_tree(&root)?;
        match &args.tree_out {
            Some(path) => report.artifact("tree", path, &tree_text)?,
            None => {
                report.set("root", json!(tree_text));
                report.line(tree_text.clone());
            }
        }
    }
    report.finish(args.json);
    Ok(EXIT_OK)
}

fn run_check(args: CheckArgs) -> Result<i32> {
    if !args.chordal && !args.strongly_chordal {
        bail!("pick one of --chordal or --strongly-chordal");
    }
    let mut report = Report::new();
    let (g, input) = load_graph(&args.graph)?;
    report.input(input);
    let (holds, ordering, what) = if args.strongly_chordal {
        let (ok, ord) = is_strongly_chordal(&g);
        (ok, ord, "strongly-chordal")
    } else {
        let (ok, ord) = is_chordal(&g);
        (ok, ord, "chordal")
    };
    let labels = ordering_labels(&ordering, &g);
    report.set("check", json!(what));
    report.set("verdict", json!(if holds { what } else { "fails" }));
    report.set("holds", json!(holds));
    if holds {
        report.set("elimination_ordering", json!(labels));
        report.line(format!("{what}: yes"));
        report.line(format!("elimination ordering: {}", labels.join(" ")));
    } else {
        report.line(format!("{what}: no"));
    }
    report.finish(args.json);
    Ok(if holds { EXIT_OK } else { EXIT_NEGATIVE })
}

fn run_tree_dist(args: TreeDistArgs) -> Result<i32> {
    let mut report = Report::new();
    let (t, input) = load_tree(&args.tree)?;
    report.input(input);
    match &args.pair {
        Some(pair) => {
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| anyhow!("--pair wants `a,b`, got {pair:?}"))?;
            let d = t.leaf_distance(a.trim(), b.trim())?;
            report.set("pair", json!([a.trim(), b.trim()]));
            report.set("distance", json!(d));
            report.line(format!("{d}"));
        }
        None => {
            let dm = t.distance_matrix();
            let labels = dm.labels.clone();
            report.set("labels", json!(labels));
            report.set("distances", json!(dm.d));
            for i in 0..labels.len() {
                for j in (i + 1)..labels.len() {
                    report.line(format!("{} {} {}", labels[i], labels[j], dm.d[i][j]));
                }
            }
        }
    }
    report.finish(args.json);
    Ok(EXIT_OK)
}

fn run_tree_verify(args: TreeVerifyArgs) -> Result<i32> {
    let mut report = Report::new();
    let (g, input) = load_graph(&args.graph)?;
    report.input(input);
    let (t, input) = load_tree(&args.tree)?;
    report.input(input);
    let outcome = verify_leaf_root(&t, &g, args.k);
    report.set("k", json!(args.k));
    report.set("verdict", json!(if outcome.ok { "root" } else { "not-a-root" }));
    report.set(
        "discrepancies",
        json!(outcome
            .discrepancies
            .iter()
            .map(|d| format!("{d:?}"))
            .collect::<Vec<String>>()),
    );
    if outcome.ok {
        report.line(format!("tree is a {}-leaf root of the graph", args.k));
    } else {
        report.line(format!(
            "tree is NOT a {}-leaf root ({} discrepancies)",
            args.k,
            outcome.discrepancies.len()
        ));
        for d in &outcome.discrepancies {
            report.line(format!("  {d:?}"));
        }
    }
    report.finish(args.json);
    Ok(if outcome.ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn run_tree_power(args: TreePowerArgs) -> Result<i32> {
    let mut report = Report::new();
    let (t, input) = load_tree(&args.tree)?;
    report.input(input);
    let g = t.leaf_power_graph(args.k);
    let graph_text = write_graph(&g)?;
    report.set("k", json!(args.k));
    report.set("vertices", json!(g.n()));
    report.set("edges", json!(g.edge_count()));
    match &args.out {
        Some(path) => report.artifact("graph", path, &graph_text)?,
        None => {
            report.set("graph", json!(graph_text));
            report.line(graph_text.trim_end().to_string());
        }
    }
    report.finish(args.json);
    Ok(EXIT_OK)
}

fn run_recognize(args: RecognizeArgs) -> Result<i32> {
    let mut report = Report::new();
    let (g, input) = load_graph(&args.graph)?;
    report.input(input);

    let mut constraints = DistanceConstraintSet::new();
    for pin in &args.pins {
        let (u, v, d) = parse_pin(pin)?;
        constraints.pin(&u, &v, d)?;
    }
    for md in &args.min_dists {
        let (v, d) = parse_min_dist(md)?;
        constraints.min_distance(&v, d)?;
    }
    let opts = RecognizeOptions {
        linear_only: args.linear,
        budget: Budget {
            wall: args.budget.map(Duration::from_secs),
            ..Default::default()
        },
    };
    report.set("k", json!(args.k));
    report.set("linear", json!(args.linear));

    match recognize(&g, args.k, &constraints, &opts) {
        Ok(res) => {
            report.set("topologies", json!(res.stats.topologies));
            report.set("systems", json!(res.stats.systems));
            report.set("solver_nodes", json!(res.stats.solver_nodes));
            match res.root() {
                Some(tree) => {
                    let tree_text = write_tree(tree)?;
                    report.set("verdict", json!("Root"));
                    report.set("witness_tree", json!(tree_text));
                    report.line(format!("root found: {tree_text}"));
                    if let Some(path) = &args.emit_root {
                        report.artifact("tree", path, &tree_text)?;
                    }
                    report.finish(args.json);
                    Ok(EXIT_OK)
                }
                None => {
                    report.set("verdict", json!("NoRoot"));
                    report.line(format!(
                        "no {}-leaf root exists (exhausted {} topologies)",
                        args.k, res.stats.topologies
                    ));
                    report.finish(args.json);
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Err(RecognizeError::BudgetExceeded { stats }) => {
            report.set("verdict", json!("BudgetExceeded"));
            report.set("topologies", json!(stats.topologies));
            report.set("systems", json!(stats.systems));
            report.set("solver_nodes", json!(stats.solver_nodes));
            report.line(format!(
                "search budget exceeded after {} topologies — verdict inconclusive",
                stats.topologies
            ));
            report.finish(args.json);
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(e.into()),
    }
}

fn certificate_json(cert: &MinimalityCertificate) -> Value {
    let sub = &cert.subgraph;
    json!({
        "k": cert.k,
        "vertices": sub.labels(),
        "edges": sub
            .edges()
            .iter()
            .map(|&(u, v)| json!([sub.label(u), sub.label(v)]))
            .collect::<Vec<Value>>(),
        "self_check": {
            "verdict": "NoRoot",
            "topologies": cert.self_check.stats.topologies,
        },
        "vertex_checks": cert
            .checks
            .iter()
            .map(|(label, res)| json!({
                "deleted": label,
                "verdict": "Root",
                "topologies": res.stats.topologies,
            }))
            .collect::<Vec<Value>>(),
    })
}

fn run_extract_min(args: ExtractMinArgs) -> Result<i32> {
    let mut report = Report::new();
    let (g, input) = load_graph(&args.graph)?;
    report.input(input);
    let budget = Budget {
        wall: args.budget.map(Duration::from_secs),
        ..Default::default()
    };
    report.set("k", json!(args.k));
    match extract_minimal(&g, args.k, budget) {
        Ok(cert) => {
            report.set("verdict", json!("Minimal"));
            report.set("certificate", certificate_json(&cert));
            report.line(format!(
                "minimal non-{}-leaf-power subgraph on {} of {} vertices: {}",
                args.k,
                cert.subgraph.n(),
                g.n(),
                cert.subgraph.labels().join(" ")
            ));
            if let Some(path) = &args.out {
                report.artifact("graph", path, &write_graph(&cert.subgraph)?)?;
            }
            report.finish(args.json);
            Ok(EXIT_OK)
        }
        Err(ObstructionError::InputIsLeafPower { k }) => {
            report.set("verdict", json!("InputIsLeafPower"));
            report.line(format!(
                "nothing to extract: the graph already is a {k}-leaf power"
            ));
            report.finish(args.json);
            Ok(EXIT_NEGATIVE)
        }
        Err(ObstructionError::BudgetExceeded { reached, deleted }) => {
            report.set("verdict", json!("BudgetExceeded"));
            report.set("deleted_so_far", json!(deleted));
            report.set("reached_vertices", json!(reached.labels()));
            report.line(format!(
                "budget exceeded after deleting {} vertices — descent incomplete",
                deleted.len()
            ));
            report.finish(args.json);
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(e.into()),
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Gadget(args) => run_gadget(args),
        Cmd::Assemble(args) => run_assemble(args),
        Cmd::Check(args) => run_check(args),
        Cmd::Tree(TreeCmd::Dist(args)) => run_tree_dist(args),
        Cmd::Tree(TreeCmd::Verify(args)) => run_tree_verify(args),
        Cmd::Tree(TreeCmd::Power(args)) => run_tree_power(args),
        Cmd::Recognize(args) => run_recognize(args),
        Cmd::ExtractMin(args) => run_extract_min(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(EXIT_USAGE);
        }
    }
}
