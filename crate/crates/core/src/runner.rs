//! Reproducible experiments behind the `fpseed` command line.
//!
//! An [`ExperimentSpec`] fully determines the bytes of its output. Every
//! output carries a provenance block with the tool version, the generator
//! name and the experiment spec itself: a `provenance` key in JSON, `#`
//! comment lines in CSV and edge lists. `fpseed replay` re-runs the
//! experiment read back from any output file.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::epidemic::{
    self,
    export::{ComparisonSummary, CurveSummary},
    SirConfig,
};
use crate::error::Error;
use crate::generators::{generate, Family, GenSpec};
use crate::graph::{read_edge_list_file, write_edge_list, Graph};
use crate::metrics::{means_report, MeansReport, TwoKDistribution};
use crate::rng::{self, domain, RNG_NAME};
use crate::seeding::{select_seeds, Strategy, StrategyConfig};

pub const TOOL: &str = "fpseed";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const WORKERS_ENV: &str = "FPSEED_WORKERS";

/// Exit status: success.
pub const EXIT_OK: i32 = 0;
/// Exit status: the experiment failed for a domain reason.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit status: malformed command line or spec.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => EXIT_USAGE,
            RunError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Domain(Error::Io(e))
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, RunError> {
    Err(RunError::Usage(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    EdgeList,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::EdgeList => "edge-list",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Input {
    EdgeList { path: PathBuf },
    Generate(GenSpec),
}

impl Input {
    /// Generator name echoed in summaries.
    pub fn generator_name(&self) -> &'static str {
        match self {
            Input::EdgeList { .. } => "edge_list",
            Input::Generate(spec) => spec.family.name(),
        }
    }

    pub fn load(&self) -> crate::Result<Graph> {
        match self {
            Input::EdgeList { path } => Ok(read_edge_list_file(path)?.0),
            Input::Generate(spec) => Ok(generate(spec)?.graph),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedParams {
    pub strategy: Strategy,
    pub k: usize,
    pub p: Option<f64>,
    pub max_rounds: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveParams {
    pub strategies: Vec<Strategy>,
    pub fractions: Vec<f64>,
    pub replicates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpidemicParams {
    pub beta: f64,
    pub delta: f64,
    pub initial_infected_fraction: f64,
    pub replicates: usize,
    pub t_max: usize,
    pub immunize_fraction: f64,
    pub strategies: Vec<Strategy>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    ErdosRenyi,
    ScaleFree,
    SmallWorld,
    Star,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    pub family: FamilyKind,
    pub n: usize,
    /// Values of the family's swept parameter: `p_edge`, `gamma` or `p_rewire`.
    pub grid: Vec<f64>,
    pub m_edges: Option<usize>,
    pub k_neighbors: Option<usize>,
    pub replicates: usize,
}

impl SweepParams {
    pub fn param_name(&self) -> &'static str {
        match self.family {
            FamilyKind::ErdosRenyi => "p_edge",
            FamilyKind::ScaleFree => "gamma",
            FamilyKind::SmallWorld => "p_rewire",
            FamilyKind::Star => "none",
        }
    }

    fn gen_spec(&self, value: f64, rng_seed: u64) -> Result<GenSpec, RunError> {
        let family = match self.family {
            FamilyKind::ErdosRenyi => Family::ErdosRenyi { p_edge: value },
            FamilyKind::ScaleFree => match self.m_edges {
                Some(m_edges) => Family::ScaleFree { gamma: value, m_edges },
                None => return usage("scale-free sweep needs --m-edges"),
            },
            FamilyKind::SmallWorld => match self.k_neighbors {
                Some(k_neighbors) => Family::SmallWorld { k_neighbors, p_rewire: value },
                None => return usage("small-world sweep needs --k-neighbors"),
            },
            FamilyKind::Star => Family::Star,
        };
        Ok(GenSpec { family, n: self.n, rng_seed })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Gen,
    Stats,
    Seed(SeedParams),
    ThresholdCurve(CurveParams),
    Epidemic(EpidemicParams),
    Sweep(SweepParams),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen => "gen",
            Command::Stats => "stats",
            Command::Seed(_) => "seed",
            Command::ThresholdCurve(_) => "threshold-curve",
            Command::Epidemic(_) => "epidemic",
            Command::Sweep(_) => "sweep",
        }
    }

    pub fn default_format(&self) -> Format {
        match self {
            Command::Gen => Format::EdgeList,
            Command::Stats | Command::Seed(_) => Format::Json,
            Command::ThresholdCurve(_) | Command::Epidemic(_) | Command::Sweep(_) => Format::Csv,
        }
    }

    fn accepts(&self, f: Format) -> bool {
        match self {
            Command::Gen => f == Format::EdgeList,
            Command::Stats | Command::ThresholdCurve(_) | Command::Epidemic(_) => f != Format::EdgeList,
            Command::Seed(_) => f == Format::Json,
            Command::Sweep(_) => f == Format::Csv,
        }
    }
}

/// Everything that determines an output file's contents.
///
/// The output path and worker count do not affect the bytes written and are
/// left out of the provenance echo.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    #[serde(flatten)]
    pub command: Command,
    pub input: Option<Input>,
    pub format: Format,
    pub rng_seed: u64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub rng: String,
    pub spec: ExperimentSpec,
}

impl Provenance {
    pub fn new(spec: &ExperimentSpec) -> Self {
        Provenance { tool: TOOL.into(), version: VERSION.into(), rng: RNG_NAME.into(), spec: spec.clone() }
    }

    /// `#` comment lines for text outputs.
    pub fn comment_lines(&self) -> String {
        let spec = serde_json::to_string(&self.spec).expect("spec serializes");
        format!("# {} {}\n# rng: {}\n# spec: {}\n", self.tool, self.version, self.rng, spec)
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), RunError> {
        if !self.command.accepts(self.format) {
            return usage(format!("format {} is not available for {}", self.format.name(), self.command.name()));
        }
        let needs_input = !matches!(self.command, Command::Sweep(_));
        match (&self.input, needs_input) {
            (None, true) => return usage(format!("{} needs --input or generator flags", self.command.name())),
            (Some(_), false) => return usage("sweep takes its graphs from the family grid, not --input"),
            _ => {}
        }
        if matches!(self.command, Command::Gen) && !matches!(self.input, Some(Input::Generate(_))) {
            return usage("gen needs generator flags (--family, --n, ...)");
        }
        Ok(())
    }
}

/// Runs `spec` and returns the output bytes.
pub fn render(spec: &ExperimentSpec) -> Result<Vec<u8>, RunError> {
    spec.validate()?;
    let provenance = Provenance::new(spec);
    let mut out = Vec::new();
    let generator = spec.input.as_ref().map(Input::generator_name).unwrap_or("none");
    let graph = match &spec.input {
        Some(input) => Some(input.load()?),
        None => None,
    };
    match (&spec.command, spec.format) {
        (Command::Gen, _) => {
            out.extend_from_slice(provenance.comment_lines().as_bytes());
            write_edge_list(graph.as_ref().expect("validated"), &mut out)?;
        }
        (Command::Stats, Format::Json) => {
            let g = graph.as_ref().expect("validated");
            let doc = StatsOutput {
                provenance,
                node_count: g.node_count(),
                edge_count: g.edge_count(),
                report: means_report(g)?,
            };
            write_json(&doc, &mut out)?;
        }
        (Command::Stats, _) => {
            out.extend_from_slice(provenance.comment_lines().as_bytes());
            TwoKDistribution::from_graph(graph.as_ref().expect("validated")).write_csv(&mut out)?;
        }
        (Command::Seed(p), _) => {
            let g = graph.as_ref().expect("validated");
            let cfg = StrategyConfig { strategy: p.strategy, k: p.k, p: p.p, rng_seed: spec.rng_seed, max_rounds: p.max_rounds };
            let set = select_seeds(g, &cfg)?;
            let doc = SeedOutput {
                provenance,
                strategy: p.strategy,
                k: p.k,
                p: if p.strategy == Strategy::Global { Some(cfg.effective_p()) } else { None },
                rng_seed: spec.rng_seed,
                seeds: set.seeds.iter().map(|&i| g.label(i)).collect(),
                rounds_used: set.rounds_used,
            };
            write_json(&doc, &mut out)?;
        }
        (Command::ThresholdCurve(p), format) => {
            let g = graph.as_ref().expect("validated");
            let curve = epidemic::immunization_curve(g, &p.strategies, &p.fractions, p.replicates, spec.rng_seed)?;
            if format == Format::Json {
                write_json(&WithProvenance { provenance, summary: CurveSummary::new(&curve, generator) }, &mut out)?;
            } else {
                out.extend_from_slice(provenance.comment_lines().as_bytes());
                epidemic::export::write_curve_csv(&curve, &mut out)?;
            }
        }
        (Command::Epidemic(p), format) => {
            let g = graph.as_ref().expect("validated");
            let cfg = SirConfig {
                beta: p.beta,
                delta: p.delta,
                initial_infected_fraction: p.initial_infected_fraction,
                replicates: p.replicates,
                t_max: p.t_max,
                rng_seed: spec.rng_seed,
            };
            let cmp = epidemic::compare_strategies(g, &cfg, p.immunize_fraction, &p.strategies)?;
            if format == Format::Json {
                write_json(&WithProvenance { provenance, summary: ComparisonSummary::new(&cmp, generator) }, &mut out)?;
            } else {
                out.extend_from_slice(provenance.comment_lines().as_bytes());
                epidemic::export::write_comparison_csv(&cmp, &mut out)?;
            }
        }
        (Command::Sweep(p), _) => {
            let rows = sweep(p, spec.rng_seed)?;
            out.extend_from_slice(provenance.comment_lines().as_bytes());
            write_sweep_csv(&rows, &mut out)?;
        }
    }
    Ok(out)
}

/// Runs `spec` on a pool capped at `spec.workers` threads and writes the
/// result to `spec.output`, or standard output when unset.
pub fn run(spec: &ExperimentSpec) -> Result<(), RunError> {
    let bytes = with_workers(spec.workers, || render(spec))??;
    match &spec.output {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, RunError> {
    match workers {
        Some(0) => usage("--workers must be at least 1"),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| RunError::Usage(format!("cannot start {n} workers: {e}")))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

fn write_json<T: Serialize>(doc: &T, out: &mut Vec<u8>) -> Result<(), RunError> {
    serde_json::to_writer_pretty(&mut *out, doc).map_err(Error::from)?;
    out.push(b'\n');
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StatsOutput {
    pub provenance: Provenance,
    pub node_count: usize,
    pub edge_count: usize,
    #[serde(flatten)]
    pub report: MeansReport,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SeedOutput {
    pub provenance: Provenance,
    pub strategy: Strategy,
    pub k: usize,
    pub p: Option<f64>,
    pub rng_seed: u64,
    pub seeds: Vec<String>,
    pub rounds_used: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct WithProvenance<T> {
    provenance: Provenance,
    #[serde(flatten)]
    summary: T,
}

/// One generated graph in a sweep. Metric cells are empty when undefined,
/// for instance when every node was isolated or the graph is regular.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: String,
    pub n: usize,
    pub param_name: String,
    pub param: f64,
    pub replicate: usize,
    pub rng_seed: u64,
    pub pruned: usize,
    #[serde(rename = "mu_D")]
    pub mu_d: Option<f64>,
    #[serde(rename = "mu_L")]
    pub mu_l: Option<f64>,
    #[serde(rename = "mu_G")]
    pub mu_g: Option<f64>,
    pub inversity: Option<f64>,
    pub leverage_local: Option<f64>,
    pub leverage_global: Option<f64>,
}

pub const SWEEP_HEADER: [&str; 13] = [
    "family",
    "n",
    "param_name",
    "param",
    "replicate",
    "rng_seed",
    "pruned",
    "mu_D",
    "mu_L",
    "mu_G",
    "inversity",
    "leverage_local",
    "leverage_global",
];

/// Generates `replicates` graphs per grid value and reports their means.
///
/// Grid index `i`, replicate `r` uses generator seed
/// `derive_seed(rng_seed, [SWEEP, i, r])`.
pub fn sweep(p: &SweepParams, rng_seed: u64) -> Result<Vec<SweepRow>, RunError> {
    if p.replicates == 0 {
        return usage("sweep needs at least one replicate");
    }
    if p.grid.is_empty() && p.family != FamilyKind::Star {
        return usage("sweep needs a non-empty --grid");
    }
    let grid = if p.family == FamilyKind::Star { vec![0.0] } else { p.grid.clone() };
    let specs = grid
        .iter()
        .enumerate()
        .flat_map(|(i, &value)| {
            (0..p.replicates).map(move |r| (i, r, value, rng::derive_seed(rng_seed, &[domain::SWEEP, i as u64, r as u64])))
        })
        .map(|(i, r, value, seed)| Ok((i, r, value, p.gen_spec(value, seed)?)))
        .collect::<Result<Vec<_>, RunError>>()?;
    for (_, _, _, spec) in &specs {
        spec.validate()?;
    }
    specs
        .par_iter()
        .map(|&(_, r, value, spec)| {
            // a sparse draw can leave every node isolated; that is a row, not a failure
            let (report, pruned) = match generate(&spec) {
                Ok(generated) => (means_report(&generated.graph).ok(), generated.pruned_isolated),
                Err(crate::Error::EmptyGraph) => (None, spec.n),
                Err(e) => return Err(e.into()),
            };
            Ok(SweepRow {
                family: spec.family.name().into(),
                n: spec.n,
                param_name: p.param_name().into(),
                param: value,
                replicate: r,
                rng_seed: spec.rng_seed,
                pruned,
                mu_d: report.map(|m| m.mu_d),
                mu_l: report.map(|m| m.mu_l),
                mu_g: report.map(|m| m.mu_g),
                inversity: report.and_then(|m| m.inversity),
                leverage_local: report.map(|m| m.leverage_local),
                leverage_global: report.map(|m| m.leverage_global),
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> crate::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads sweep rows back, skipping provenance comments.
pub fn read_sweep_csv<R: io::Read>(input: R) -> crate::Result<Vec<SweepRow>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    Ok(r.deserialize().collect::<Result<Vec<SweepRow>, _>>()?)
}

/// Recovers the experiment spec embedded in any output file.
pub fn read_provenance(path: &Path) -> Result<ExperimentSpec, RunError> {
    let text = fs::read_to_string(path)?;
    if let Some(line) = text.lines().find_map(|l| l.strip_prefix("# spec: ")) {
        return serde_json::from_str(line).map_err(|e| RunError::Usage(format!("bad spec line: {e}")));
    }
    #[derive(Deserialize)]
    struct Doc {
        provenance: Provenance,
    }
    match serde_json::from_str::<Doc>(&text) {
        Ok(doc) => Ok(doc.provenance.spec),
        Err(_) => usage(format!("{} carries no provenance block", path.display())),
    }
}

// ---------------------------------------------------------------------------
// Command line

#[derive(Debug, Parser)]
#[command(name = "fpseed", version, about = "Friendship-paradox seeding and epidemic-control experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,

    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Master seed for every random draw.
    #[arg(long = "rng-seed", global = true, default_value_t = 0)]
    pub rng_seed: u64,

    /// Worker thread cap. Does not change results.
    #[arg(long, global = true, env = WORKERS_ENV)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Generate a graph and write it as an edge list.
    Gen(GraphArgs),
    /// Mean degree, local and global means, inversity and related metrics.
    Stats(GraphArgs),
    /// Select a seed set.
    Seed {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        strategy: Strategy,
        #[arg(long)]
        k: usize,
        /// Inclusion probability for the global strategy.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        max_rounds: Option<usize>,
    },
    /// Epidemic threshold of the residual graph across immunized fractions.
    ThresholdCurve {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_delimiter = ',', default_value = "random,local,global")]
        strategies: Vec<Strategy>,
        #[arg(long, value_delimiter = ',', default_value = "0,0.05,0.1,0.25,0.5,0.75")]
        fractions: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        replicates: usize,
    },
    /// SIR ensembles under each immunization strategy.
    Epidemic {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 0.20)]
        beta: f64,
        #[arg(long, default_value_t = 0.15)]
        delta: f64,
        #[arg(long, default_value_t = 0.01)]
        initial_fraction: f64,
        #[arg(long, default_value_t = 100)]
        replicates: usize,
        #[arg(long, default_value_t = 10_000)]
        t_max: usize,
        #[arg(long, default_value_t = 0.2)]
        immunize_fraction: f64,
        #[arg(long, value_delimiter = ',', default_value = "random,local,global")]
        strategies: Vec<Strategy>,
    },
    /// Means and leverage over a grid of generated graphs.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        /// Values of p_edge, gamma or p_rewire.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<f64>,
        #[arg(long)]
        m_edges: Option<usize>,
        #[arg(long)]
        k_neighbors: Option<usize>,
        #[arg(long, default_value_t = 100)]
        replicates: usize,
    },
    /// Re-run the experiment recorded in an output file.
    Replay {
        /// A file written by an earlier run.
        file: PathBuf,
    },
}

/// Graph source: an edge list or generator parameters.
#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge list: one `u v` pair per line, `#` comments.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p_edge: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub m_edges: Option<usize>,
    #[arg(long)]
    pub k_neighbors: Option<usize>,
    #[arg(long)]
    pub p_rewire: Option<f64>,
}

impl GraphArgs {
    fn into_input(self, rng_seed: u64) -> Result<Option<Input>, RunError> {
        let generator_flags = self.family.is_some()
            || self.n.is_some()
            || self.p_edge.is_some()
            || self.gamma.is_some()
            || self.m_edges.is_some()
            || self.k_neighbors.is_some()
            || self.p_rewire.is_some();
        match (self.input, generator_flags) {
            (Some(_), true) => usage("--input cannot be combined with generator flags"),
            (Some(path), false) => Ok(Some(Input::EdgeList { path })),
            (None, false) => Ok(None),
            (None, true) => {
                let Some(family) = self.family else { return usage("generator flags need --family") };
                let Some(n) = self.n else { return usage("generator flags need --n") };
                let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| RunError::Usage(format!("{family:?} needs {flag}")));
                let family = match family {
                    FamilyKind::ErdosRenyi => Family::ErdosRenyi { p_edge: need(self.p_edge, "--p-edge")? },
                    FamilyKind::ScaleFree => Family::ScaleFree {
                        gamma: need(self.gamma, "--gamma")?,
                        m_edges: self.m_edges.ok_or_else(|| RunError::Usage("scale-free needs --m-edges".into()))?,
                    },
                    FamilyKind::SmallWorld => Family::SmallWorld {
                        k_neighbors: self
                            .k_neighbors
                            .ok_or_else(|| RunError::Usage("small-world needs --k-neighbors".into()))?,
                        p_rewire: need(self.p_rewire, "--p-rewire")?,
                    },
                    FamilyKind::Star => Family::Star,
                };
                Ok(Some(Input::Generate(GenSpec { family, n, rng_seed })))
            }
        }
    }
}

impl Cli {
    /// Builds the spec this command line describes.
    pub fn into_spec(self) -> Result<ExperimentSpec, RunError> {
        let rng_seed = self.rng_seed;
        let (command, input) = match self.command {
            Cmd::Gen(g) => (Command::Gen, g.into_input(rng_seed)?),
            Cmd::Stats(g) => (Command::Stats, g.into_input(rng_seed)?),
            Cmd::Seed { graph, strategy, k, p, max_rounds } => {
                (Command::Seed(SeedParams { strategy, k, p, max_rounds }), graph.into_input(rng_seed)?)
            }
            Cmd::ThresholdCurve { graph, strategies, fractions, replicates } => {
                (Command::ThresholdCurve(CurveParams { strategies, fractions, replicates }), graph.into_input(rng_seed)?)
            }
            Cmd::Epidemic { graph, beta, delta, initial_fraction, replicates, t_max, immunize_fraction, strategies } => (
                Command::Epidemic(EpidemicParams {
                    beta,
                    delta,
                    initial_infected_fraction: initial_fraction,
                    replicates,
                    t_max,
                    immunize_fraction,
                    strategies,
                }),
                graph.into_input(rng_seed)?,
            ),
            Cmd::Sweep { family, n, grid, m_edges, k_neighbors, replicates } => {
                (Command::Sweep(SweepParams { family, n, grid, m_edges, k_neighbors, replicates }), None)
            }
            Cmd::Replay { file } => {
                let mut spec = read_provenance(&file)?;
                spec.output = self.output;
                spec.workers = self.workers;
                return Ok(spec);
            }
        };
        let format = self.format.unwrap_or_else(|| command.default_format());
        Ok(ExperimentSpec { command, input, format, rng_seed, output: self.output, workers: self.workers })
    }
}

/// Parses `args`, runs, reports errors on standard error and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.into_spec().and_then(|spec| run(&spec)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("fpseed: {e}");
            e.exit_code()
        }
    }
}
