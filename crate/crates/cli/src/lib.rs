//! The `topoglyph` command line: argument parsing, the worker pool, and
//! uniform JSON output with a schema version.
//!
//! Exit codes: 0 on success, 1 on malformed input or a domain error (a JSON
//! error object goes to stderr), 2 when a search exhausts its budget.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use topoglyph_core::arrangements::ArrangementError;
use topoglyph_core::bounds::BoundsError;
use topoglyph_core::chords::ChordError;
use topoglyph_core::search::{PermError, SearchError};
use topoglyph_core::{DrawingError, GraphError, RotsysError};

mod commands;
mod svg;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "topoglyph",
    version,
    about = "Rotation systems, chord diagrams, pseudochord arrangements and topological drawings"
)]
pub struct Cli {
    /// Worker threads for searches and enumerations.
    #[arg(long, global = true, env = "TOPOGLYPH_WORKERS", default_value_t = 1,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: u32,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Emit JSON even where another format is the default.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Abstract rotation systems and their searches.
    #[command(subcommand)]
    Rotsys(commands::rotsys::RotsysCmd),
    /// Chord diagrams and their crossing counts.
    #[command(subcommand)]
    Chords(commands::chords::ChordsCmd),
    /// Arrangements of pseudochords.
    #[command(subcommand)]
    Arr(commands::arr::ArrCmd),
    /// Drawings: validation, isomorphism, spanning trees.
    #[command(subcommand)]
    Draw(commands::draw::DrawCmd),
    /// Closed-form bounds and random partitions.
    #[command(subcommand)]
    Bounds(commands::bounds::BoundsCmd),
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Rotsys(#[from] RotsysError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Chords(#[from] ChordError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Io { .. } => "io",
            CliError::Search(e) if e.is_budget() => "budget",
            CliError::Rotsys(_) | CliError::Search(_) | CliError::Perm(_) => "rotsys",
            CliError::Chords(_) => "chords",
            CliError::Arrangement(_) => "arrangement",
            CliError::Drawing(_) | CliError::Graph(_) => "drawing",
            CliError::Bounds(_) => "bounds",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Search(e) if e.is_budget() => 2,
            _ => 1,
        }
    }

    fn to_json(&self) -> Value {
        let mut error = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Drawing(DrawingError::Invalid(d)) = self {
            error["diagnostic"] = serde_json::to_value(d).unwrap_or(Value::Null);
        }
        json!({ "schema_version": SCHEMA_VERSION, "error": error })
    }
}

/// What a command prints on success.
pub enum Output {
    Json(Value),
    /// Pre-rendered text such as CSV, printed verbatim.
    Text(String),
}

/// Adds the schema version to a JSON object.
pub(crate) fn versioned(mut v: Value) -> Output {
    if let Value::Object(map) = &mut v {
        map.insert("schema_version".into(), SCHEMA_VERSION.into());
    }
    Output::Json(v)
}

pub(crate) fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub(crate) fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub(crate) fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| CliError::Input(format!("bad list entry {x:?} in {s:?}"))))
        .collect()
}

pub struct Context {
    pub workers: usize,
    pub seed: u64,
    pub json: bool,
}

fn execute(cli: Cli) -> Result<Output, CliError> {
    let ctx = Context { workers: cli.workers as usize, seed: cli.seed, json: cli.json };
    match cli.command {
        Command::Rotsys(c) => commands::rotsys::run(c, &ctx),
        Command::Chords(c) => commands::chords::run(c, &ctx),
        Command::Arr(c) => commands::arr::run(c, &ctx),
        Command::Draw(c) => commands::draw::run(c, &ctx),
        Command::Bounds(c) => commands::bounds::run(c, &ctx),
    }
}

fn report(err: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(err, "{}", e.to_json());
    e.exit_code()
}

/// Parses `args` (program name first), runs the command inside a pool of
/// the requested size and writes the result. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            return report(err, &CliError::Usage(e.render().to_string().trim_end().to_owned()));
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers as usize).build() {
        Ok(p) => p,
        Err(e) => return report(err, &CliError::Usage(e.to_string())),
    };
    match pool.install(|| execute(cli)) {
        Ok(Output::Json(v)) => {
            let text = serde_json::to_string_pretty(&v).expect("JSON value");
            let _ = writeln!(out, "{text}");
            0
        }
        Ok(Output::Text(t)) => {
            let _ = write!(out, "{t}");
            0
        }
        Err(e) => report(err, &e),
    }
}
