//! Command-line front end: argument definitions, dispatch and report
//! formatting. `main.rs` only maps outcomes to exit codes.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_frechet::bench::{run_bench, BenchConfig, BenchError, BenchReport};
use graph_frechet::embedded_graph::{contract_degree2, edge_curve_table, ContractedGraph};
use graph_frechet::general_graph::graph_frechet_contracted;
use graph_frechet::oracle::{gen_instance, Instance, InstanceKind, InstanceSpec, OracleError};
use graph_frechet::tree_frechet::{contract_rooted, root_tree_at, tree_frechet_rooted, tree_frechet_unrooted_contracted, TreeError};
use graph_frechet::{curve_frechet, load_graph, save_graph, Curve, Distance, FrechetResult, Graph, GraphError, Isomorphism};
use serde::{Deserialize, Serialize};

pub const EXIT_FINITE: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNDEFINED: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "graph-frechet", version, about = "Fréchet distance between embedded trees and graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub file1: PathBuf,
    pub file2: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Also print the optimal vertex map of the contracted graphs.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Tree,
    Graph,
    Perturbed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two polylines, each stored as a path graph whose
    /// root is the starting endpoint.
    Curve(PairArgs),
    /// Distance between two trees; rooted if both files carry a root.
    Tree(PairArgs),
    /// Distance between two graphs by exhaustive isomorphism search.
    Graph {
        #[command(flatten)]
        pair: PairArgs,
        /// Refuse inputs with more contracted vertices than this.
        #[arg(long, default_value_t = 64)]
        guard: usize,
    },
    /// Write random instances in the graph file format.
    Gen {
        #[arg(long, value_enum, default_value = "tree")]
        kind: GenKind,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dimension: usize,
        #[arg(long, default_value_t = 0)]
        extra_edges: usize,
        /// Edges to subdivide with short degree-2 chains.
        #[arg(long, default_value_t = 0)]
        chains: usize,
        #[arg(long)]
        rooted: bool,
        /// Output file; give two for a perturbed pair. Without one, a
        /// single graph is written to standard output.
        #[arg(long = "out", short = 'o')]
        out: Vec<PathBuf>,
    },
    /// Time the tree solver on perturbed bounded-degree trees.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [256usize, 512, 1024, 2048])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Load { path: PathBuf, source: GraphError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Generator(#[from] OracleError),
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error("{0}")]
    Usage(String),
    #[error("contracted graph has {size} vertices, above the guard of {limit}")]
    Guard { size: usize, limit: usize },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Guard { .. } => EXIT_GUARD,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UndefinedTag {
    #[serde(rename = "undefined")]
    Undefined,
}

/// A distance as it appears in reports: a number or the string "undefined".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportValue {
    Finite(f64),
    Undefined(UndefinedTag),
}

impl From<Distance> for ReportValue {
    fn from(d: Distance) -> Self {
        match d {
            Distance::Finite(v) => ReportValue::Finite(v),
            Distance::Undefined => ReportValue::Undefined(UndefinedTag::Undefined),
        }
    }
}

impl From<ReportValue> for Distance {
    fn from(v: ReportValue) -> Self {
        match v {
            ReportValue::Finite(v) => Distance::Finite(v),
            ReportValue::Undefined(_) => Distance::Undefined,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub mode: String,
    pub inputs: Vec<String>,
    pub result: ReportValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn exit_code(&self) -> u8 {
        match self.result {
            ReportValue::Finite(_) => EXIT_FINITE,
            ReportValue::Undefined(_) => EXIT_UNDEFINED,
        }
    }
}

/// `v` with 12 significant digits, trailing zeros removed.
pub fn format_distance(d: Distance) -> String {
    let Distance::Finite(v) = d else {
        return "undefined".into();
    };
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    load_graph(&bytes).map_err(|source| CliError::Load { path: path.into(), source })
}

/// The polyline of a path graph, starting at its root.
pub fn path_curve(g: &Graph) -> Result<Curve, CliError> {
    let root = g.root().ok_or_else(|| CliError::Usage("curve files need a \"root\" naming the starting endpoint".into()))?;
    let mut nbrs: BTreeMap<_, Vec<_>> = g.vertices().iter().map(|(id, _)| (id, Vec::new())).collect();
    for (a, b) in g.edges() {
        nbrs.get_mut(a).expect("validated").push(b);
        nbrs.get_mut(b).expect("validated").push(a);
    }
    let not_path = || CliError::Usage("curve input must be a single path".into());
    if g.vertex_count() < 2 || g.edges().len() + 1 != g.vertex_count() || nbrs.values().any(|n| n.len() > 2) {
        return Err(not_path());
    }
    if nbrs[root].len() != 1 {
        return Err(CliError::Usage("curve root must be an endpoint of the path".into()));
    }
    let mut order = vec![root];
    let mut prev = root;
    let mut cur = nbrs[root][0];
    order.push(cur);
    while let Some(&next) = nbrs[cur].iter().find(|&&x| x != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    if order.len() != g.vertex_count() {
        return Err(not_path());
    }
    let points = order.iter().map(|id| g.point(id).expect("validated").clone()).collect();
    Ok(Curve::new(points).map_err(GraphError::from)?)
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn witness_map(c1: &ContractedGraph, c2: &ContractedGraph, iso: &Isomorphism) -> BTreeMap<String, String> {
    (0..c1.vertex_count())
        .map(|v| (c1.id(v).0.clone(), c2.id(iso.image(v)).0.clone()))
        .collect()
}

struct Solved {
    c1: ContractedGraph,
    c2: ContractedGraph,
    result: FrechetResult,
    timings: BTreeMap<String, f64>,
}

fn timings(contraction: f64, table: f64, solve: f64) -> BTreeMap<String, f64> {
    [("contraction", contraction), ("table", table), ("solve", solve)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

/// Tree pipeline: rooted when both graphs carry a root, unrooted when
/// neither does.
fn solve_tree_timed(g1: &Graph, g2: &Graph) -> Result<Solved, CliError> {
    let rooted = match (g1.root(), g2.root()) {
        (Some(_), Some(_)) => true,
        (None, None) => false,
        _ => return Err(CliError::Usage("either both tree files carry a root or neither does".into())),
    };
    let start = Instant::now();
    let (c1, c2) = if rooted {
        (contract_rooted(g1)?, contract_rooted(g2)?)
    } else {
        let none = BTreeSet::new();
        let (c1, c2) = (contract_degree2(g1, &none)?, contract_degree2(g2, &none)?);
        if !c1.is_tree() || !c2.is_tree() {
            return Err(GraphError::NotATree.into());
        }
        (c1, c2)
    };
    let contraction = ms(start);
    let t = Instant::now();
    let table = edge_curve_table(&c1, &c2)?;
    let table_ms = ms(t);
    let t = Instant::now();
    let result = if rooted {
        let t1 = root_tree_at(&c1, g1.root().expect("rooted"))?;
        let t2 = root_tree_at(&c2, g2.root().expect("rooted"))?;
        tree_frechet_rooted(&t1, &t2, &table)
    } else {
        tree_frechet_unrooted_contracted(&c1, &c2, &table)?
    };
    let solve = ms(t);
    Ok(Solved { c1, c2, result, timings: timings(contraction, table_ms, solve) })
}

fn solve_graph_timed(g1: &Graph, g2: &Graph, guard: usize) -> Result<Solved, CliError> {
    let start = Instant::now();
    let none = BTreeSet::new();
    let (c1, c2) = (contract_degree2(g1, &none)?, contract_degree2(g2, &none)?);
    let contraction = ms(start);
    let size = c1.vertex_count().max(c2.vertex_count());
    if size > guard {
        return Err(CliError::Guard { size, limit: guard });
    }
    let t = Instant::now();
    let table = edge_curve_table(&c1, &c2)?;
    let table_ms = ms(t);
    let t = Instant::now();
    let result = graph_frechet_contracted(&c1, &c2, &table);
    let solve = ms(t);
    Ok(Solved { c1, c2, result, timings: timings(contraction, table_ms, solve) })
}

fn inputs(pair: &PairArgs) -> Vec<String> {
    vec![pair.file1.display().to_string(), pair.file2.display().to_string()]
}

fn pair_report(mode: &str, pair: &PairArgs, solved: Solved) -> RunReport {
    let witness = match (&solved.result.witness, pair.witness) {
        (Some(iso), true) if solved.result.distance.is_finite() => Some(witness_map(&solved.c1, &solved.c2, iso)),
        _ => None,
    };
    RunReport {
        mode: mode.into(),
        inputs: inputs(pair),
        result: solved.result.distance.into(),
        witness,
        timings_ms: solved.timings,
    }
}

fn write_report(report: &RunReport, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, report)?;
            writeln!(out)
        }
        Format::Text => {
            writeln!(out, "{}", format_distance(report.result.into()))?;
            for (a, b) in report.witness.iter().flatten() {
                writeln!(out, "{a} -> {b}")?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
struct BenchRowJson {
    n: usize,
    contracted_vertices: usize,
    contraction_ms: f64,
    table_ms: f64,
    solve_ms: f64,
    total_ms: f64,
    result: ReportValue,
}

fn write_bench(report: &BenchReport, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            let rows: Vec<BenchRowJson> = report
                .rows
                .iter()
                .map(|r| BenchRowJson {
                    n: r.n,
                    contracted_vertices: r.contracted_vertices,
                    contraction_ms: r.contraction_ms,
                    table_ms: r.table_ms,
                    solve_ms: r.solve_ms,
                    total_ms: r.total_ms,
                    result: r.distance.into(),
                })
                .collect();
            let doc = serde_json::json!({ "mode": "bench", "rows": rows, "slope": report.slope });
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Text => {
            writeln!(out, "{:>8} {:>11} {:>15} {:>10} {:>10} {:>10}  result", "n", "contracted", "contraction_ms", "table_ms", "solve_ms", "total_ms")?;
            for r in &report.rows {
                writeln!(
                    out,
                    "{:>8} {:>11} {:>15.3} {:>10.3} {:>10.3} {:>10.3}  {}",
                    r.n,
                    r.contracted_vertices,
                    r.contraction_ms,
                    r.table_ms,
                    r.solve_ms,
                    r.total_ms,
                    format_distance(r.distance)
                )?;
            }
            match report.slope {
                Some(s) => writeln!(out, "slope {s:.3}"),
                None => writeln!(out, "slope n/a"),
            }
        }
    }
}

/// Runs one command, writing its report to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::Curve(pair) => {
            let (g1, g2) = (read_graph(&pair.file1)?, read_graph(&pair.file2)?);
            let (p, q) = (path_curve(&g1)?, path_curve(&g2)?);
            let start = Instant::now();
            let value = curve_frechet(&p, &q).map_err(GraphError::from)?;
            let report = RunReport {
                mode: "curve".into(),
                inputs: inputs(pair),
                result: Distance::Finite(value).into(),
                witness: None,
                timings_ms: [("solve".to_string(), ms(start))].into_iter().collect(),
            };
            write_report(&report, pair.format, out)?;
            Ok(report.exit_code())
        }
        Command::Tree(pair) => {
            let (g1, g2) = (read_graph(&pair.file1)?, read_graph(&pair.file2)?);
            let report = pair_report("tree", pair, solve_tree_timed(&g1, &g2)?);
            write_report(&report, pair.format, out)?;
            Ok(report.exit_code())
        }
        Command::Graph { pair, guard } => {
            let (g1, g2) = (read_graph(&pair.file1)?, read_graph(&pair.file2)?);
            let report = pair_report("graph", pair, solve_graph_timed(&g1, &g2, *guard)?);
            write_report(&report, pair.format, out)?;
            Ok(report.exit_code())
        }
        Command::Gen { kind, n, max_degree, eps, seed, dimension, extra_edges, chains, rooted, out: files } => {
            let spec = InstanceSpec {
                kind: match kind {
                    GenKind::Tree => InstanceKind::Tree,
                    GenKind::Graph => InstanceKind::Graph,
                    GenKind::Perturbed => InstanceKind::PerturbedCopy,
                },
                n: *n,
                max_degree: *max_degree,
                eps: *eps,
                dimension: *dimension,
                seed: *seed,
                extra_edges: *extra_edges,
                chains: *chains,
                rooted: *rooted,
            };
            let graphs = match gen_instance(&spec)? {
                Instance::Single(g) => vec![g],
                Instance::Pair(a, b) => vec![a, b],
            };
            if files.is_empty() && graphs.len() == 1 {
                out.write_all(&save_graph(&graphs[0]))?;
                return Ok(EXIT_FINITE);
            }
            if files.len() != graphs.len() {
                return Err(CliError::Usage(format!("expected {} --out file(s), got {}", graphs.len(), files.len())));
            }
            for (g, path) in graphs.iter().zip(files) {
                std::fs::write(path, save_graph(g)).map_err(|source| CliError::Io { path: path.clone(), source })?;
            }
            Ok(EXIT_FINITE)
        }
        Command::Bench { sizes, seed, eps, max_degree, repeats, format } => {
            let cfg = BenchConfig {
                sizes: sizes.clone(),
                seed: *seed,
                eps: *eps,
                max_degree: *max_degree,
                repeats: *repeats,
            };
            let report = run_bench(&cfg)?;
            write_bench(&report, *format, out)?;
            Ok(EXIT_FINITE)
        }
    }
}
