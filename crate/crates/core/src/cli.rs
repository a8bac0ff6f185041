//! Command-line front end. The binary is a thin wrapper over [`run`].
//!
//! Exit codes: 0 ok, 2 bad generator spec, 3 seed is not a triangle,
//! 4 unreadable input, 5 a `compare` check failed.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::{generate, ClassError, ClassLabel, Generated};
use crate::ftg::{base_cycles, build_ftg, ftt, ftt_json};
use crate::graph::{parse_edge_list, parse_json, to_dot, to_edge_list, to_json, Graph, GraphDoc, NodeId, Triangle};
use crate::rigidity::{is_globally_rigid, rank_oracle_rigid, rigidity_rank};
use crate::sim::{run_full, SimConfig, SimError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(ClassError),
    #[error("seed {0:?} is not a triangle of the graph")]
    Seed(Vec<NodeId>),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0} check(s) failed")]
    Property(usize),
    #[error(transparent)]
    Sim(SimError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Spec(_) => 2,
            CliError::Seed(_) => 3,
            CliError::Io { .. } => 4,
            CliError::Property(_) => 5,
            CliError::Sim(SimError::SeedNotTriangle(_)) => 3,
            CliError::Sim(_) => 1,
        }
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io { path: path.display().to_string(), msg: e.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Edgelist,
}

#[derive(Debug, Parser)]
#[command(name = "trianglebar", version, about = "Triangle-bar localizability toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph from a spec such as `cycle:6` or `net:m=12,ext=2`.
    Gen {
        spec: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the distributed protocol on a scenario file and print the report.
    Run {
        scenario: PathBuf,
        #[arg(long, value_parser = parse_triple)]
        seed_triangle: Option<[NodeId; 3]>,
        #[arg(long)]
        scheduler_seed: Option<u64>,
        /// Write delivered messages here, one per line.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Global rigidity verdict for a graph file.
    Oracle {
        graph: PathBuf,
    },
    /// Flip-triangle graph, plus its BFS tree and base cycles when seeded.
    Ftg {
        graph: PathBuf,
        #[arg(long, value_parser = parse_triple)]
        seed_triangle: Option<[NodeId; 3]>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Runs several scheduler seeds and checks agreement and soundness.
    Compare {
        graph: PathBuf,
        #[arg(long, value_parser = parse_triple)]
        seed_triangle: Option<[NodeId; 3]>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Print the message trace of a scenario run.
    Trace {
        scenario: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        scheduler_seed: Option<u64>,
    },
}

fn parse_triple(s: &str) -> Result<[NodeId; 3], String> {
    let ids: Vec<NodeId> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("`{t}` is not a node id")))
        .collect::<Result<_, _>>()?;
    ids.try_into().map_err(|_| "expected three ids `a,b,c`".to_string())
}

/// Scenario file. `graph` is a path (relative to the scenario file), a
/// generator spec, or an inline graph document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub graph: GraphSource,
    #[serde(default)]
    pub seed_triangle: Option<[NodeId; 3]>,
    #[serde(default)]
    pub scheduler_seed: u64,
    #[serde(default)]
    pub trace: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSource {
    Named(String),
    Inline(GraphDoc),
}

/// What `gen` writes in JSON form.
#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratedDoc {
    pub spec: String,
    pub label: ClassLabel,
    pub graph: GraphDoc,
    pub seed_triangle: Option<Triangle>,
    #[serde(default)]
    pub stream: Option<Vec<Triangle>>,
    #[serde(default)]
    pub ordering: Option<Vec<NodeId>>,
    #[serde(default)]
    pub apex: Option<NodeId>,
}

impl GeneratedDoc {
    pub fn new(spec: &str, g: &Generated) -> Self {
        GeneratedDoc {
            spec: spec.to_string(),
            label: g.label,
            graph: to_json(&g.graph),
            seed_triangle: g.seed,
            stream: g.stream.clone(),
            ordering: g.ordering.clone(),
            apex: g.apex,
        }
    }
}

/// A loaded graph and the seed its source suggests, if any.
pub struct Loaded {
    pub graph: Graph,
    pub seed: Option<Triangle>,
}

/// Reads a graph file: a `gen` document, a bare `{"nodes","edges"}`
/// document, or an edge list.
pub fn load_graph_file(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_graph_text(&text).map_err(|msg| io_err(path, msg))
}

fn parse_graph_text(text: &str) -> Result<Loaded, String> {
    if !text.trim_start().starts_with('{') {
        let (graph, _) = parse_edge_list(text).map_err(|e| e.to_string())?;
        return Ok(Loaded { graph, seed: None });
    }
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if value.get("graph").is_some() {
        let doc: GeneratedDoc = serde_json::from_value(value).map_err(|e| e.to_string())?;
        let graph = doc_graph(&doc.graph)?;
        return Ok(Loaded { graph, seed: doc.seed_triangle });
    }
    Ok(Loaded { graph: parse_json(text).map_err(|e| e.to_string())?, seed: None })
}

fn doc_graph(doc: &GraphDoc) -> Result<Graph, String> {
    parse_json(&serde_json::to_string(doc).expect("serializable")).map_err(|e| e.to_string())
}

pub fn load_scenario(path: &Path) -> Result<(Scenario, Loaded), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let scenario: Scenario = serde_json::from_str(&text).map_err(|e| io_err(path, e))?;
    let loaded = match &scenario.graph {
        GraphSource::Inline(doc) => Loaded { graph: doc_graph(doc).map_err(|m| io_err(path, m))?, seed: None },
        GraphSource::Named(name) => {
            let file = path.parent().unwrap_or(Path::new(".")).join(name);
            if file.is_file() {
                load_graph_file(&file)?
            } else if name.contains(':') {
                let g = generate(name).map_err(CliError::Spec)?;
                Loaded { graph: g.graph, seed: g.seed }
            } else {
                return Err(io_err(&file, "no such graph file"));
            }
        }
    };
    Ok((scenario, loaded))
}

fn resolve_seed(g: &Graph, explicit: Option<[NodeId; 3]>, fallback: Option<Triangle>) -> Result<Triangle, CliError> {
    match explicit {
        Some(ids) => g.triangle(ids).map_err(|_| CliError::Seed(ids.to_vec())),
        None => fallback
            .filter(|&t| g.is_triangle(t))
            .or_else(|| g.triangles().first().copied())
            .ok_or_else(|| CliError::Seed(Vec::new())),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| io_err(Path::new("<stdout>"), e))
        }
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Renders `gen` output in the chosen format.
pub fn render_generated(spec: &str, format: Format) -> Result<String, CliError> {
    let g = generate(spec).map_err(CliError::Spec)?;
    Ok(match format {
        Format::Json => pretty(&GeneratedDoc::new(spec, &g)),
        Format::Dot => to_dot(&g.graph),
        Format::Edgelist => to_edge_list(&g.graph),
    })
}

#[derive(Debug, Serialize)]
struct OracleDoc {
    nodes: usize,
    edges: usize,
    rigidity_rank: usize,
    rank_oracle_rigid: bool,
    #[serde(flatten)]
    verdict: crate::rigidity::RigidityVerdict,
}

/// One named check of `compare`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Runs `trials` scheduler seeds concurrently and checks that every run
/// marks the same set and that the set induces a globally rigid graph.
pub fn compare(g: &Graph, seed: Triangle, trials: u64) -> Result<Vec<Check>, CliError> {
    let runs: Vec<Result<BTreeSet<NodeId>, SimError>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..trials)
            .map(|t| {
                s.spawn(move || {
                    let config = SimConfig { scheduler_seed: t, ..SimConfig::default() };
                    run_full(g, seed, config).map(|(r, _)| r.localizable_nodes)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("trial thread")).collect()
    });
    let sets = runs.into_iter().collect::<Result<Vec<_>, _>>().map_err(CliError::Sim)?;
    let first = &sets[0];
    let diverging = sets.iter().filter(|s| *s != first).count();
    let nodes: Vec<NodeId> = first.iter().copied().collect();
    let (sub, _) = g.induced(&nodes);
    let verdict = is_globally_rigid(&sub);
    Ok(vec![
        Check {
            name: "order-independence",
            pass: diverging == 0,
            detail: format!("{trials} seeds, {diverging} diverging"),
        },
        Check {
            name: "soundness",
            pass: verdict.globally_rigid,
            detail: format!("{} of {} nodes marked, induced subgraph globally rigid: {}", nodes.len(), g.n(), verdict.globally_rigid),
        },
    ])
}

fn run_scenario(
    scenario: &Path,
    seed_triangle: Option<[NodeId; 3]>,
    scheduler_seed: Option<u64>,
    want_trace: bool,
) -> Result<(crate::sim::LocalizabilityReport, Vec<crate::sim::TraceLine>), CliError> {
    let (sc, loaded) = load_scenario(scenario)?;
    let seed = resolve_seed(&loaded.graph, seed_triangle.or(sc.seed_triangle), loaded.seed)?;
    let config = SimConfig {
        scheduler_seed: scheduler_seed.unwrap_or(sc.scheduler_seed),
        trace: want_trace || sc.trace,
        ..SimConfig::default()
    };
    run_full(&loaded.graph, seed, config).map_err(CliError::Sim)
}

fn trace_text(trace: &[crate::sim::TraceLine]) -> String {
    trace.iter().map(|l| format!("{l}\n")).collect()
}

/// Executes one command, writing its document to stdout or `--out`.
pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { spec, out, format } => emit(out.as_deref(), &render_generated(&spec, format)?),
        Command::Run { scenario, seed_triangle, scheduler_seed, trace } => {
            let (report, lines) = run_scenario(&scenario, seed_triangle, scheduler_seed, trace.is_some())?;
            if let Some(path) = &trace {
                std::fs::write(path, trace_text(&lines)).map_err(|e| io_err(path, e))?;
            } else if !lines.is_empty() {
                eprint!("{}", trace_text(&lines));
            }
            emit(None, &pretty(&report))
        }
        Command::Trace { scenario, out, scheduler_seed } => {
            let (_, lines) = run_scenario(&scenario, None, scheduler_seed, true)?;
            emit(out.as_deref(), &trace_text(&lines))
        }
        Command::Oracle { graph } => {
            let g = load_graph_file(&graph)?.graph;
            let doc = OracleDoc {
                nodes: g.n(),
                edges: g.edge_count(),
                rigidity_rank: rigidity_rank(&g),
                rank_oracle_rigid: rank_oracle_rigid(&g, 0, 3),
                verdict: is_globally_rigid(&g),
            };
            emit(None, &pretty(&doc))
        }
        Command::Ftg { graph, seed_triangle, out, format } => {
            let loaded = load_graph_file(&graph)?;
            let ftg = build_ftg(&loaded.graph);
            let text = match format {
                Format::Dot => ftg.to_dot(),
                Format::Edgelist => ftg.edges().iter().map(|(a, b)| format!("{a} {b}\n")).collect(),
                Format::Json => {
                    let mut doc = serde_json::json!({ "triangles": ftg.vertices(), "edges": ftg.edges() });
                    if let Some(ids) = seed_triangle {
                        let root = loaded.graph.triangle(ids).map_err(|_| CliError::Seed(ids.to_vec()))?;
                        let tree = ftt(&ftg, root).map_err(|_| CliError::Seed(ids.to_vec()))?;
                        doc["tree"] = ftt_json(&tree, &base_cycles(&ftg, &tree));
                    }
                    pretty(&doc)
                }
            };
            emit(out.as_deref(), &text)
        }
        Command::Compare { graph, seed_triangle, trials } => {
            let loaded = load_graph_file(&graph)?;
            let seed = resolve_seed(&loaded.graph, seed_triangle, loaded.seed)?;
            let checks = compare(&loaded.graph, seed, trials)?;
            for c in &checks {
                println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            match checks.iter().filter(|c| !c.pass).count() {
                0 => Ok(()),
                k => Err(CliError::Property(k)),
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I) -> ExitCode
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
