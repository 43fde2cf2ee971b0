//! `bihole`: compute the bipartite-hole-number, build heavy cycles and
//! paths, check classical Hamiltonicity conditions and run property sweeps.
//!
//! Exit codes: 0 ok, 1 internal error or sweep failure, 2 connectivity
//! precondition, 3 degree precondition, 4 input or parse error.

use std::fmt::Display;
use std::io::{ErrorKind, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bihole::conditions::ConditionRegistry;
use bihole::generators::{named, Family};
use bihole::heavy_cycle::{cycle_through_heavy_with, verify_heavy_cycle, CycleError};
use bihole::heavy_path::{heavy_path_with, verify_heavy_path, PathError};
use bihole::io::{parse_edge_list_with, parse_graph6, parse_graph6_lines, write_dot, EdgeListOptions, Highlight};
use bihole::oracle::Oracle;
use bihole::sweep::{run_sweep, PropertyRegistry, Source, SCHEMA};
use bihole::{bipartite_hole_number, Graph};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "bihole", version, about = "Bipartite-hole-number toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the bipartite-hole-number.
    AlphaTilde {
        #[command(flatten)]
        input: Input,
        /// Emit the full certificate as JSON.
        #[arg(long)]
        certificate: bool,
    },
    /// Build a cycle through every vertex of degree >= alpha_tilde.
    Cycle {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Construction,
    },
    /// Build a path between two vertices through every vertex of degree >= alpha_tilde + 1.
    Path {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[command(flatten)]
        output: Construction,
    },
    /// Evaluate Hamiltonicity conditions as a JSON report.
    Check {
        #[command(flatten)]
        input: Input,
        /// Comma-separated condition names (default: all).
        #[arg(long, value_delimiter = ',')]
        conditions: Vec<String>,
    },
    /// Run the property suite over a stream of graphs.
    VerifySweep(SweepArgs),
}

#[derive(Args)]
struct Input {
    /// Graph in graph6 format.
    #[arg(long, group = "source")]
    graph6: Option<String>,
    /// Edge-list file ("n m" header, then one "u v" line per edge).
    #[arg(long, group = "source")]
    edges: Option<PathBuf>,
    /// Named family, e.g. `cycle,5`, `complete_bipartite,3,4`, `petersen`.
    #[arg(long, group = "source")]
    family: Option<String>,
    /// Edge-list ids start at 1.
    #[arg(long, requires = "edges")]
    one_based: bool,
}

#[derive(Args)]
struct Construction {
    /// Re-check the result with the independent validator.
    #[arg(long)]
    verify: bool,
    /// Write a DOT rendering with the result highlighted.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Print a JSON object instead of the bare vertex sequence.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("stream").required(true).multiple(false)))]
struct SweepArgs {
    /// Every labeled graph on N vertices.
    #[arg(long, value_name = "N", group = "stream")]
    enumerate: Option<usize>,
    /// COUNT,N,P,SEED with P as `a/b` or a decimal, e.g. `500,10,1/2,42`.
    #[arg(long, value_name = "COUNT,N,P,SEED", group = "stream")]
    random: Option<String>,
    /// One graph6 graph per line.
    #[arg(long, value_name = "FILE", group = "stream")]
    graph6_file: Option<PathBuf>,
    /// Comma-separated property names (default: all).
    #[arg(long, value_delimiter = ',')]
    properties: Vec<String>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Permit exhaustive enumeration above the default limit.
    #[arg(long)]
    allow_large: bool,
    /// Write failing graphs as graph6 lines to FILE.
    #[arg(long, value_name = "FILE")]
    dump: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }

    fn input(message: impl Display) -> Self {
        Failure::new(4, message)
    }
}

impl From<CycleError> for Failure {
    fn from(e: CycleError) -> Self {
        let code = match e {
            CycleError::NotTwoConnected => 2,
            _ => 1,
        };
        Failure::new(code, e)
    }
}

impl From<PathError> for Failure {
    fn from(e: PathError) -> Self {
        let code = match e {
            PathError::Disconnected(_) => 2,
            PathError::DegreePrecondition { .. } => 3,
            PathError::SameEndpoints(_) | PathError::VertexOutOfRange { .. } => 4,
            PathError::InternalInconsistency(_) => 1,
        };
        Failure::new(code, e)
    }
}

type CliResult = Result<(), Failure>;

fn read_graph(input: &Input) -> Result<Graph, Failure> {
    if let Some(text) = &input.graph6 {
        return parse_graph6(text).map_err(Failure::input);
    }
    if let Some(path) = &input.edges {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let opts = EdgeListOptions {
            one_based: input.one_based,
        };
        return parse_edge_list_with(&text, opts).map_err(Failure::input);
    }
    if let Some(text) = &input.family {
        let family: Family = text.parse().map_err(Failure::input)?;
        return named(&family).map_err(Failure::input);
    }
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| Failure::input(format!("stdin: {e}")))?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Failure::input("no graph given (use --graph6, --edges, --family or stdin)"))?;
    parse_graph6(line).map_err(Failure::input)
}

/// Writes one line to stdout; a closed pipe is not an error.
fn emit(line: &str) -> CliResult {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{line}") {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(Failure::new(1, e)),
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(value: &T) -> CliResult {
    emit(&serde_json::to_string_pretty(value).map_err(|e| Failure::new(1, e))?)
}

fn print_sequence(seq: &[usize]) -> CliResult {
    let words: Vec<String> = seq.iter().map(usize::to_string).collect();
    emit(&words.join(" "))
}

fn write_file(path: &PathBuf, contents: &str) -> CliResult {
    std::fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: T,
}

fn versioned<T: Serialize>(body: T) -> Versioned<T> {
    Versioned { schema: SCHEMA, body }
}

fn alpha_tilde(input: &Input, certificate: bool) -> CliResult {
    let g = read_graph(input)?;
    let cert = bipartite_hole_number(&g);
    if certificate {
        print_json(&versioned(&cert))
    } else {
        emit(&cert.value.to_string())
    }
}

fn cycle(input: &Input, out: &Construction) -> CliResult {
    let g = read_graph(input)?;
    let cert = bipartite_hole_number(&g);
    let found = cycle_through_heavy_with(&g, &cert)?;
    if out.verify && !verify_heavy_cycle(&g, &found.cycle, found.threshold) {
        return Err(Failure::new(1, "constructed cycle failed verification"));
    }
    if let Some(path) = &out.dot {
        write_file(path, &write_dot(&g, &Highlight::cycle(found.cycle.vertices())))?;
    }
    if out.json {
        print_json(&versioned(&found))
    } else {
        print_sequence(found.cycle.vertices())
    }
}

fn path(input: &Input, from: usize, to: usize, out: &Construction) -> CliResult {
    let g = read_graph(input)?;
    let cert = bipartite_hole_number(&g);
    let found = heavy_path_with(&g, &cert, from, to)?;
    if out.verify && !verify_heavy_path(&g, &found.path, from, to, found.threshold) {
        return Err(Failure::new(1, "constructed path failed verification"));
    }
    if let Some(file) = &out.dot {
        write_file(file, &write_dot(&g, &Highlight::path(found.path.vertices())))?;
    }
    if out.json {
        print_json(&versioned(&found))
    } else {
        print_sequence(found.path.vertices())
    }
}

fn check(input: &Input, conditions: &[String]) -> CliResult {
    let g = read_graph(input)?;
    let names: Vec<&str> = conditions.iter().map(String::as_str).collect();
    let reports = ConditionRegistry::default()
        .evaluate(&g, &names)
        .map_err(Failure::input)?;
    #[derive(Serialize)]
    struct Reports<T> {
        conditions: T,
    }
    print_json(&versioned(Reports { conditions: reports }))
}

/// `a/b` or a decimal in `[0, 1]` as an exact fraction.
fn parse_probability(text: &str) -> Option<(u64, u64)> {
    if let Some((a, b)) = text.split_once('/') {
        return Some((a.trim().parse().ok()?, b.trim().parse().ok()?));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if frac.len() > 18 || !frac.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let den = 10u64.pow(frac.len() as u32);
    let int: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    Some((int.checked_mul(den)?.checked_add(frac)?, den))
}

fn parse_random(text: &str) -> Result<Source, Failure> {
    let bad = || Failure::input(format!("--random expects COUNT,N,P,SEED, got `{text}`"));
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [count, n, p, seed] = parts[..] else {
        return Err(bad());
    };
    let (num, den) = parse_probability(p).ok_or_else(bad)?;
    Ok(Source::Random {
        count: count.parse().map_err(|_| bad())?,
        n: n.parse().map_err(|_| bad())?,
        num,
        den,
        seed: seed.parse().map_err(|_| bad())?,
    })
}

fn verify_sweep(args: &SweepArgs) -> CliResult {
    let source = if let Some(n) = args.enumerate {
        Source::Enumerate {
            n,
            allow_large: args.allow_large,
        }
    } else if let Some(text) = &args.random {
        parse_random(text)?
    } else if let Some(path) = &args.graph6_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        Source::Graphs(parse_graph6_lines(&text).map_err(Failure::input)?)
    } else {
        unreachable!("clap requires one stream source")
    };
    let registry = PropertyRegistry::default();
    let names: Vec<&str> = args.properties.iter().map(String::as_str).collect();
    let props = registry.select(&names).map_err(Failure::input)?;
    let summary = run_sweep(&source, &props, Oracle::default(), args.jobs).map_err(Failure::input)?;
    if let Some(path) = &args.dump {
        write_file(path, &summary.dump())?;
    }
    print_json(&summary)?;
    if summary.ok() {
        Ok(())
    } else {
        Err(Failure::new(1, format!("{} property failures", summary.failures)))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::AlphaTilde { input, certificate } => alpha_tilde(input, *certificate),
        Command::Cycle { input, output } => cycle(input, output),
        Command::Path {
            input,
            from,
            to,
            output,
        } => path(input, *from, *to, output),
        Command::Check { input, conditions } => check(input, conditions),
        Command::VerifySweep(args) => verify_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("bihole: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
