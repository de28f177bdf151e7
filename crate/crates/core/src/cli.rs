//! The `tint` command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 invalid input, 4 runtime failure.
//! Output files are written atomically and only on success.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::dot::export_dot;
use crate::dynamics::{run, RuleConfig, Trace, WeightTable};
use crate::error::Error;
use crate::fixture;
use crate::ingest::{
    knn_graph, load_embeddings, parse_graph, parse_vocabulary, write_graph, IngestError,
};
use crate::miner::{reinforce, IntReport, DEFAULT_CAP};
use crate::stats::TraceStats;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Runtime(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::StepLimitExceeded(_) | Error::BasicRuleViolated(_) => {
                CliError::Runtime(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tint",
    version,
    about = "Metaphor comprehension as excitation dynamics on thin categories"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inject a metaphor into a graph and record a trace.
    Run(RunArgs),
    /// Mine natural transformations from a trace snapshot.
    Mine(MineArgs),
    /// Render a trace snapshot as Graphviz DOT.
    ExportDot(DotArgs),
    /// Build a k-nearest-neighbour graph from word vectors.
    Embed(EmbedArgs),
    /// Summarize a trace per step.
    Stats(StatsArgs),
    /// Print a bundled fixture graph.
    Fixture(FixtureArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FixtureName {
    Tsuchi,
}

/// `A:B`, read "A is like B".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaphorArg {
    pub target: String,
    pub source: String,
}

impl FromStr for MetaphorArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok(MetaphorArg {
                target: a.to_owned(),
                source: b.to_owned(),
            }),
            _ => Err(format!("expected TARGET:SOURCE, got `{s}`")),
        }
    }
}

/// `final` or a snapshot index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepArg {
    Final,
    At(usize),
}

impl FromStr for StepArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "final" {
            return Ok(StepArg::Final);
        }
        s.parse()
            .map(StepArg::At)
            .map_err(|_| format!("expected `final` or a step number, got `{s}`"))
    }
}

impl StepArg {
    fn resolve(self, trace: &Trace) -> Result<usize, CliError> {
        let last = trace.final_step();
        match self {
            StepArg::Final => Ok(last),
            StepArg::At(t) if t <= last => Ok(t),
            StepArg::At(t) => Err(CliError::Invalid(format!(
                "step {t} is past the final snapshot {last}"
            ))),
        }
    }
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["graph", "fixture"]))]
pub struct RunArgs {
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub fixture: Option<FixtureName>,
    /// TARGET:SOURCE, e.g. `Wing:Sail` for "a wing is like a sail".
    #[arg(long)]
    pub metaphor: MetaphorArg,
    #[arg(long, default_value_t = 20)]
    pub steps: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub fork_depth: usize,
    #[arg(long, default_value_t = 5)]
    pub relax_every: u32,
    #[arg(long, default_value_t = 2)]
    pub grace: u32,
    #[arg(long, default_value_t = 1.0)]
    pub temperature: f64,
    #[arg(long)]
    pub deterministic: bool,
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eta: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[arg(long)]
    pub trace: PathBuf,
    #[arg(long, default_value = "final")]
    pub step: StepArg,
    /// Keep only transformations surviving at least this many snapshots.
    #[arg(long, default_value_t = 1)]
    pub survival: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the input graph with μ reinforced along surviving components.
    #[arg(long)]
    pub reinforced_graph: Option<PathBuf>,
    /// Reinforcement step; defaults to the trace's `eta`.
    #[arg(long)]
    pub eta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DotArgs {
    #[arg(long)]
    pub trace: PathBuf,
    #[arg(long, default_value = "final")]
    pub step: StepArg,
    /// Defaults to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long)]
    pub vectors: PathBuf,
    #[arg(long)]
    pub vocab: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0.0)]
    pub floor: f64,
    /// Defaults to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub trace: PathBuf,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    #[arg(value_enum, default_value = "tsuchi")]
    pub name: FixtureName,
    /// Defaults to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn read_trace(path: &Path) -> Result<Trace, CliError> {
    Trace::from_json(&read(path)?)
        .map_err(|e| CliError::Invalid(format!("{}: invalid trace: {e}", path.display())))
}

fn ingest_error(path: &Path, e: IngestError) -> CliError {
    CliError::Invalid(format!("{}: {e}", path.display()))
}

/// Writes through a sibling temporary file so a failed run leaves no partial output.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let fail = |e: std::io::Error| CliError::Runtime(format!("{}: {e}", path.display()));
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("{}: not a file path", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    if let Err(e) = fs::write(&tmp, contents).and_then(|_| fs::rename(&tmp, path)) {
        let _ = fs::remove_file(&tmp);
        return Err(fail(e));
    }
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => stdout
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::Runtime(e.to_string())),
    }
}

fn say(stdout: &mut dyn Write, line: String) -> Result<(), CliError> {
    writeln!(stdout, "{line}").map_err(|e| CliError::Runtime(e.to_string()))
}

fn cmd_run(a: RunArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let c = match (&a.graph, a.fixture) {
        (Some(path), _) => parse_graph(&read(path)?)
            .map_err(|e| ingest_error(path, e))?
            .to_category()?,
        (None, Some(FixtureName::Tsuchi)) => fixture::tsuchi(),
        (None, None) => {
            return Err(CliError::Usage(
                "one of --graph or --fixture is required".into(),
            ))
        }
    };
    let cfg = RuleConfig {
        fork_depth: a.fork_depth,
        temperature: a.temperature,
        relax_every: a.relax_every,
        grace: a.grace,
        epsilon: a.epsilon,
        eta: a.eta,
        deterministic: a.deterministic,
        theta: a.theta,
        max_steps: a.steps,
        seed: a.seed,
    };
    let target = c.id(&a.metaphor.target)?;
    let source = c.id(&a.metaphor.source)?;
    let weights = WeightTable::from_category(&c);
    let trace = run(&c, &weights, target, source, cfg)?;
    write_atomic(&a.out, &trace.to_json())?;
    say(
        stdout,
        format!(
            "{} steps, {} generators excited at the end, {} events",
            trace.final_step(),
            trace.snapshots.last().map_or(0, Vec::len),
            trace.events.len()
        ),
    )
}

fn cmd_mine(a: MineArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let trace = read_trace(&a.trace)?;
    let step = a.step.resolve(&trace)?;
    if a.cap == 0 {
        return Err(CliError::Usage("--cap must be at least 1".into()));
    }
    let mut report = IntReport::from_trace(&trace, step, a.cap)?;
    report.entries.retain(|e| e.survival >= a.survival);

    let reinforced = match &a.reinforced_graph {
        Some(path) => {
            let (_, weights) = trace.rebuild()?;
            let eta = a.eta.unwrap_or(trace.config.eta);
            let next = reinforce(&weights, &report, a.survival, eta)?;
            let mut doc = trace.graph.clone();
            for (i, rec) in doc.generators.iter_mut().enumerate() {
                rec.weight = next.as_slice()[i];
            }
            Some((path, write_graph(&doc)))
        }
        None => None,
    };
    write_atomic(&a.out, &report.to_json())?;
    if let Some((path, text)) = reinforced {
        write_atomic(path, &text)?;
    }
    say(
        stdout,
        format!(
            "{} transformations at step {step}, top comprehensiveness {}",
            report.entries.len(),
            report.entries.first().map_or(0, |e| e.comprehensiveness)
        ),
    )
}

fn cmd_export_dot(a: DotArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let trace = read_trace(&a.trace)?;
    let step = a.step.resolve(&trace)?;
    emit(a.out.as_deref(), &export_dot(&trace, step)?, stdout)
}

fn cmd_embed(a: EmbedArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let table = load_embeddings(&read(&a.vectors)?).map_err(|e| ingest_error(&a.vectors, e))?;
    let vocab = parse_vocabulary(&read(&a.vocab)?).map_err(|e| ingest_error(&a.vocab, e))?;
    let doc = knn_graph(&table, &vocab, a.k, a.floor).map_err(|e| match e {
        IngestError::InvalidK { .. } | IngestError::InvalidFloor(_) => {
            CliError::Usage(e.to_string())
        }
        IngestError::TokenMissing(_) | IngestError::DegenerateVector(_) => {
            ingest_error(&a.vectors, e)
        }
        _ => ingest_error(&a.vocab, e),
    })?;
    emit(a.out.as_deref(), &write_graph(&doc), stdout)
}

fn cmd_stats(a: StatsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let trace = read_trace(&a.trace)?;
    emit(None, &TraceStats::of(&trace).render(), stdout)
}

fn cmd_fixture(a: FixtureArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let doc = match a.name {
        FixtureName::Tsuchi => fixture::tsuchi_doc(),
    };
    emit(a.out.as_deref(), &write_graph(&doc), stdout)
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Run(a) => cmd_run(a, stdout),
        Command::Mine(a) => cmd_mine(a, stdout),
        Command::ExportDot(a) => cmd_export_dot(a, stdout),
        Command::Embed(a) => cmd_embed(a, stdout),
        Command::Stats(a) => cmd_stats(a, stdout),
        Command::Fixture(a) => cmd_fixture(a, stdout),
    }
}

/// Parses `args`, runs the command and reports errors on standard error.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    match execute(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tint: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
