//! The `rainbow-ap` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails (a failing suite,
//! or a rainbow AP found under `check --expect-free`), 2 on usage or input
//! errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ap::{enumerate_rainbow_aps, find_rainbow_ap};
use crate::coloring::{Coloring, Topology};
use crate::constructions::{construct_interval4, construct_k, construct_pow3, construct_z24, tile, VariantTag};
use crate::error::Error;
use crate::harness::run_suite;
use crate::search::{search_rainbow_free, Budget, SearchConfig, SymmetryLevel};
use crate::symmetry::canonical_form;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "rainbow-ap", version, about = "Rainbow arithmetic progressions: constructions, checks and searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a coloring without rainbow progressions.
    Construct(ConstructArgs),
    /// Look for rainbow progressions in a coloring read from a file or stdin.
    Check(CheckArgs),
    /// Search equinumerous colorings of Z_n for one without rainbow progressions.
    Search(SearchArgs),
    /// Run a named verification suite and print its JSON report.
    VerifySuite(VerifyArgs),
    /// Print the canonical representative of a coloring's symmetry orbit.
    Canon(CanonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// 4-coloring of [n] (k = 4) or the inductive k-coloring (k >= 5).
    Standard,
    /// The Z_24 coloring tiled to Z_n (n a multiple of 24).
    Z24,
    /// Color i by the exponent of 3 in i.
    Pow3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TopologyArg {
    Interval,
    Cyclic,
}

impl From<TopologyArg> for Topology {
    fn from(t: TopologyArg) -> Self {
        match t {
            TopologyArg::Interval => Topology::Interval,
            TopologyArg::Cyclic => Topology::Cyclic,
        }
    }
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value = "default", value_parser = parse_variant)]
    variant: VariantTag,
    #[arg(long, value_enum, default_value_t = Family::Standard)]
    family: Family,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Coloring file (text letters or JSON); stdin when absent or "-".
    #[arg(long)]
    input: Option<PathBuf>,
    /// Topology for text input (default: interval).
    #[arg(long, value_enum)]
    topology: Option<TopologyArg>,
    /// Number of colors for text input (default: up to the largest letter).
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Progression length (default: k).
    #[arg(long = "ap")]
    ap_length: Option<usize>,
    /// Print every rainbow progression instead of the first.
    #[arg(long)]
    list_all: bool,
    /// Exit with status 1 if a rainbow progression exists.
    #[arg(long)]
    expect_free: bool,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Progression length (default: k).
    #[arg(long = "ap")]
    ap_length: Option<usize>,
    /// Node budget.
    #[arg(long)]
    budget: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<u64>,
    #[arg(long, default_value = "value-order", value_parser = parse_symmetry)]
    symmetry: SymmetryLevel,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Also write a found certificate, as text, to this file.
    #[arg(long)]
    certificate_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// thm1.1 | thm1.2 | k3-positive | z8 | z24 | pow3 | open-q
    suite: String,
    /// Suite parameters as key=value.
    #[arg(long = "param", value_parser = parse_key_value)]
    params: Vec<(String, String)>,
}

#[derive(Debug, Args)]
struct CanonArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_variant(s: &str) -> Result<VariantTag, String> {
    s.parse()
}

fn parse_symmetry(s: &str) -> Result<SymmetryLevel, String> {
    s.parse()
}

fn parse_key_value(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_owned(), v.trim().to_owned()))
        .ok_or_else(|| format!("expected key=value, got {s:?}"))
}

/// A failed command: exit code plus a diagnostic for stderr.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

/// Runs the command line in `args` (including the program name).
///
/// `read_stdin` is called only when a command needs its input from stdin.
pub fn run<R>(args: &[String], read_stdin: R, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    R: FnOnce() -> io::Result<String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Check(a) => check(a, read_stdin, out),
        Command::Search(a) => search(a, out),
        Command::VerifySuite(a) => verify(a, out),
        Command::Canon(a) => canon(a, read_stdin, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn emit(c: &Coloring, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Text => writeln!(out, "{}", c.letters()),
        Format::Json => writeln!(out, "{}", serde_json::to_string(&c.to_json()).expect("serializable")),
    }
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> CmdResult {
    if a.variant != VariantTag::Default && (a.family != Family::Standard || a.k != 4) {
        return Err(Failure(EXIT_USAGE, "--variant applies only to the 4-color standard family".into()));
    }
    let c = match a.family {
        Family::Standard if a.k == 4 => construct_interval4(a.n, a.variant)?,
        Family::Standard => construct_k(a.k, a.n)?,
        Family::Z24 => {
            if a.k != 4 {
                return Err(Failure(EXIT_USAGE, "the z24 family uses k = 4".into()));
            }
            if a.n == 0 || !a.n.is_multiple_of(24) {
                return Err(Failure(EXIT_USAGE, format!("z24 family needs n divisible by 24, got {}", a.n)));
            }
            tile(&construct_z24(), a.n / 24)?
        }
        Family::Pow3 => construct_pow3(a.n)?,
    };
    emit(&c, a.format, out)?;
    Ok(EXIT_OK)
}

fn read_coloring<R>(input: &InputArgs, read_stdin: R) -> Result<Coloring, Failure>
where
    R: FnOnce() -> io::Result<String>,
{
    let raw = match &input.input {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
            .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?,
        _ => read_stdin()?,
    };
    let text = raw.trim();
    if text.starts_with('{') {
        let c = Coloring::from_json_str(text)?;
        if let Some(t) = input.topology {
            if Topology::from(t) != c.topology() {
                return Err(Failure(EXIT_USAGE, "--topology contradicts the JSON input".into()));
            }
        }
        if input.k.is_some_and(|k| k != c.k()) {
            return Err(Failure(EXIT_USAGE, "--k contradicts the JSON input".into()));
        }
        return Ok(c);
    }
    let topology = input.topology.map(Topology::from).unwrap_or(Topology::Interval);
    let c = match input.k {
        Some(k) => Coloring::from_letters(topology, k, text)?,
        None => Coloring::from_letters_infer_k(topology, text)?,
    };
    Ok(c)
}

fn check<R>(a: CheckArgs, read_stdin: R, out: &mut dyn Write) -> CmdResult
where
    R: FnOnce() -> io::Result<String>,
{
    let c = read_coloring(&a.input, read_stdin)?;
    let length = a.ap_length.unwrap_or(c.k());
    if length < 3 {
        return Err(Failure(EXIT_USAGE, format!("--ap must be at least 3, got {length}")));
    }
    let found = if a.list_all {
        let all = enumerate_rainbow_aps(&c, length)?;
        writeln!(out, "{}", serde_json::to_string(&all).expect("serializable"))?;
        !all.is_empty()
    } else {
        match find_rainbow_ap(&c, length)? {
            Some(w) => {
                writeln!(out, "{}", serde_json::to_string(&w).expect("serializable"))?;
                true
            }
            None => {
                writeln!(out, "no rainbow AP({length})")?;
                false
            }
        }
    };
    Ok(if a.expect_free && found { EXIT_FAIL } else { EXIT_OK })
}

fn search(a: SearchArgs, out: &mut dyn Write) -> CmdResult {
    let config = SearchConfig::new(a.n, a.k)
        .with_budget(Budget {
            max_nodes: a.budget.unwrap_or(u64::MAX),
            time_limit: a.time_limit.map(Duration::from_secs),
        })
        .with_symmetry(a.symmetry)
        .with_threads(a.threads);
    let outcome = search_rainbow_free(&config, a.ap_length.unwrap_or(a.k))?;
    if let (Some(path), Some(c)) = (&a.certificate_out, outcome.status.certificate()) {
        fs::write(path, format!("{}\n", c.letters()))
            .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    }
    writeln!(out, "{}", serde_json::to_string(&outcome).expect("serializable"))?;
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let params: BTreeMap<String, String> = a.params.into_iter().collect();
    let report = run_suite(&a.suite, &params)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
}

fn canon<R>(a: CanonArgs, read_stdin: R, out: &mut dyn Write) -> CmdResult
where
    R: FnOnce() -> io::Result<String>,
{
    let c = read_coloring(&a.input, read_stdin)?;
    emit(&canonical_form(&c), a.format, out)?;
    Ok(EXIT_OK)
}
