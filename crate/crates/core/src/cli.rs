//! The `league-hits` command line.
//!
//! Tables go to the output stream; warnings, diagnostics and errors go to the
//! error stream. Nothing is written to the output stream unless the command
//! succeeds.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::graph::{
    build_adjacency, AdjacencyMatrix, GraphError, DEFAULT_DRAW_WEIGHT, DEFAULT_WIN_WEIGHT,
};
use crate::hits::{
    hits, HitsError, HitsResult, SolverConfig, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
};
use crate::io::{
    emit_matrix, emit_table, parse_matches, parse_matrix, parse_table, OutputFormat, ParseError,
    DEFAULT_DECIMALS,
};
use crate::rank::{
    compare_rankings, points_table, rank_authority, rank_hub, HubOrder, RankError, RankTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_NOT_CONVERGED: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "league-hits",
    version,
    about = "Rank league teams by HITS authority (wins over good opposition) and hub (losses to it) weights"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute authority and/or hub rankings
    Rank(RankArgs),
    /// Print the conventional points table for a matches file
    Points(PointsArgs),
    /// Print the adjacency matrix built from a matches file
    Matrix(MatrixArgs),
    /// Compare two rank tables (CSV or JSON)
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
struct WeightArgs {
    /// Weight of the loser -> winner edge for a win
    #[arg(long, default_value_t = DEFAULT_WIN_WEIGHT)]
    win_weight: f64,

    /// Weight of each direction of a draw
    #[arg(long, default_value_t = DEFAULT_DRAW_WEIGHT)]
    draw_weight: f64,
}

#[derive(Args, Debug)]
struct TableOutput {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Decimal places for weights in text and CSV output
    #[arg(long, default_value_t = DEFAULT_DECIMALS)]
    decimals: usize,
}

#[derive(Args, Debug)]
struct RankArgs {
    #[arg(long)]
    input: PathBuf,

    #[arg(long, value_enum, default_value_t = InputKind::Matches)]
    input_kind: InputKind,

    #[arg(long, value_enum, default_value_t = Which::Both)]
    which: Which,

    /// Stop when both vectors move less than this (L2) between sweeps
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,

    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS)]
    max_iters: usize,

    #[command(flatten)]
    weights: WeightArgs,

    #[command(flatten)]
    output: TableOutput,

    #[arg(long, value_enum, default_value_t = HubOrderArg::BestFirst)]
    hub_order: HubOrderArg,

    /// Index teams alphabetically instead of by first appearance
    #[arg(long)]
    sort_teams: bool,

    /// Fail with exit code 5 instead of warning when the iteration cap is hit
    #[arg(long)]
    strict_convergence: bool,

    /// Print iteration count and eigenvalues to stderr
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct PointsArgs {
    #[arg(long)]
    input: PathBuf,

    #[command(flatten)]
    weights: WeightArgs,

    #[command(flatten)]
    output: TableOutput,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long)]
    input: PathBuf,

    #[command(flatten)]
    weights: WeightArgs,

    /// Index teams alphabetically instead of by first appearance
    #[arg(long)]
    sort_teams: bool,
}

#[derive(Args, Debug)]
struct CompareArgs {
    first: PathBuf,
    second: PathBuf,

    /// text or json
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Matches,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Authority,
    Hub,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HubOrderArg {
    BestFirst,
    RawDesc,
}

impl From<HubOrderArg> for HubOrder {
    fn from(h: HubOrderArg) -> Self {
        match h {
            HubOrderArg::BestFirst => HubOrder::BestTeamFirst,
            HubOrderArg::RawDesc => HubOrder::RawDesc,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Degenerate(HitsError),
    #[error("no convergence after {iterations} iterations (tolerance {tolerance:e})")]
    NotConverged { iterations: usize, tolerance: f64 },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Read { source, .. } if source.kind() == io::ErrorKind::InvalidData => EXIT_PARSE,
            Self::Read { .. } => EXIT_USAGE,
            Self::Parse { .. } | Self::Data(_) => EXIT_PARSE,
            Self::Degenerate(_) => EXIT_DEGENERATE,
            Self::NotConverged { .. } => EXIT_NOT_CONVERGED,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::InvalidWeight { .. } => Self::Usage(e.to_string()),
            other => Self::Data(other.to_string()),
        }
    }
}

impl From<RankError> for CliError {
    fn from(e: RankError) -> Self {
        Self::Data(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn parsed<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn load_matches_matrix(path: &Path, weights: &WeightArgs) -> Result<AdjacencyMatrix, CliError> {
    let matches = parsed(path, parse_matches(&read(path)?))?;
    Ok(build_adjacency(
        &matches,
        weights.win_weight,
        weights.draw_weight,
    )?)
}

fn join_tables(tables: &[RankTable], output: &TableOutput) -> String {
    let format = OutputFormat::from(output.format);
    if format == OutputFormat::Json && tables.len() > 1 {
        let mut s = serde_json::to_string_pretty(tables).expect("rank tables serialize");
        s.push('\n');
        return s;
    }
    tables
        .iter()
        .map(|t| emit_table(t, format, output.decimals))
        .collect::<Vec<_>>()
        .join("\n")
}

fn report_diagnostics(r: &HitsResult, args: &RankArgs, err: &mut dyn Write) {
    if args.verbose {
        let _ = writeln!(
            err,
            "iterations: {}, converged: {}, authority eigenvalue: {}, hub eigenvalue: {}",
            r.iterations, r.converged, r.authority_eigenvalue, r.hub_eigenvalue
        );
    }
    if !r.converged && !args.strict_convergence {
        let _ = writeln!(
            err,
            "warning: no convergence after {} iterations; reporting the last iterate",
            r.iterations
        );
    }
    if r.degenerate_suspected {
        let _ = writeln!(
            err,
            "warning: eigenvalue estimate settled but the vectors did not; the top eigenvalue may be repeated"
        );
    }
}

fn cmd_rank(args: &RankArgs, err: &mut dyn Write) -> Result<String, CliError> {
    let cfg =
        SolverConfig::new(args.tol, args.max_iters).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut matrix = match args.input_kind {
        InputKind::Matches => load_matches_matrix(&args.input, &args.weights)?,
        InputKind::Matrix => parsed(&args.input, parse_matrix(&read(&args.input)?))?,
    };
    if args.sort_teams {
        matrix = matrix.sorted_by_name();
    }

    let result = hits(&matrix, &cfg).map_err(|e| match e {
        HitsError::DegenerateGraph => CliError::Degenerate(e),
        other => CliError::Usage(other.to_string()),
    })?;
    report_diagnostics(&result, args, err);
    if !result.converged && args.strict_convergence {
        return Err(CliError::NotConverged {
            iterations: result.iterations,
            tolerance: args.tol,
        });
    }

    let idx = matrix.index();
    let mut tables = Vec::with_capacity(2);
    if matches!(args.which, Which::Authority | Which::Both) {
        tables.push(rank_authority(&result.authority, idx)?);
    }
    if matches!(args.which, Which::Hub | Which::Both) {
        tables.push(rank_hub(&result.hub, idx, args.hub_order.into())?);
    }
    Ok(join_tables(&tables, &args.output))
}

fn cmd_points(args: &PointsArgs) -> Result<String, CliError> {
    let w = &args.weights;
    for (which, value) in [("win", w.win_weight), ("draw", w.draw_weight)] {
        if !(value.is_finite() && value >= 0.0) {
            return Err(CliError::Usage(format!(
                "{which} weight must be non-negative, got {value}"
            )));
        }
    }
    let matches = parsed(&args.input, parse_matches(&read(&args.input)?))?;
    let table = points_table(&matches, w.win_weight, w.draw_weight);
    Ok(join_tables(&[table], &args.output))
}

fn cmd_matrix(args: &MatrixArgs) -> Result<String, CliError> {
    let mut m = load_matches_matrix(&args.input, &args.weights)?;
    if args.sort_teams {
        m = m.sorted_by_name();
    }
    Ok(emit_matrix(&m))
}

fn cmd_compare(args: &CompareArgs) -> Result<String, CliError> {
    if args.format == Format::Csv {
        return Err(CliError::Usage(
            "compare supports --format text or json".into(),
        ));
    }
    let a = parsed(&args.first, parse_table(&read(&args.first)?))?;
    let b = parsed(&args.second, parse_table(&read(&args.second)?))?;
    let report = compare_rankings(&a, &b)?;

    if args.format == Format::Json {
        let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
        s.push('\n');
        return Ok(s);
    }
    let team_w = report
        .displacements
        .iter()
        .map(|d| d.team.chars().count())
        .max()
        .unwrap_or(0)
        .max(4);
    let mut out = String::from("# displacement = rank in second table - rank in first table\n");
    out.push_str(&format!(
        "{:<team_w$}  {:>6}  {:>6}  {:>12}\n",
        "team", "first", "second", "displacement"
    ));
    for d in &report.displacements {
        out.push_str(&format!(
            "{:<team_w$}  {:>6}  {:>6}  {:>+12}\n",
            d.team, d.rank_a, d.rank_b, d.displacement
        ));
    }
    match report.kendall_tau_b {
        Some(tau) => out.push_str(&format!("kendall_tau_b: {tau:.6}\n")),
        None => out.push_str("kendall_tau_b: undefined\n"),
    }
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command, returning
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };

    let result = match &cli.command {
        Command::Rank(a) => cmd_rank(a, err),
        Command::Points(a) => cmd_points(a),
        Command::Matrix(a) => cmd_matrix(a),
        Command::Compare(a) => cmd_compare(a),
    };
    match result {
        Ok(text) => {
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
