//! The `binpack` command line.
//!
//! Exit codes: 0 success, 1 usage or argument error, 2 unreadable or
//! malformed input, 3 an invalid packing or a ratio below one (a broken
//! reference value).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;

use crate::bounds::{exact_min_bins, lower_bound_l1, ExactStatus, DEFAULT_NODE_LIMIT};
use crate::heuristics::{A2Config, Algorithm};
use crate::io::{self, BenchRecord};
use crate::model::{validate_packing, Ratio, Verdict};
use crate::{Instance, InstanceSet};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "binpack",
    version,
    about = "One-dimensional bin packing heuristics and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pack the instances of one file and write the packings.
    Solve(SolveArgs),
    /// Run algorithms over every instance set in a directory.
    Bench(BenchArgs),
    /// Generate a uniform random instance in plain format.
    Gen(GenArgs),
    /// Compute the optimum of small instances by branch and bound.
    Exact(ExactArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Orlib,
    Plain,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "orlib")]
    format: Format,
    /// Zero-based instance within the file; all instances when omitted.
    #[arg(long)]
    index: Option<usize>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_parser = parse_algorithm)]
    alg: Algorithm,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = A2Config::DEFAULT_R, value_parser = parse_positive)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the packing documents.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Directory of OR-Library files, optionally with a `sets.toml` mapping.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm, default_value = "a1,a2,ffd")]
    algs: Vec<Algorithm>,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = A2Config::DEFAULT_R, value_parser = parse_positive)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1, value_parser = parse_positive)]
    jobs: usize,
    /// Write 0 in the elapsed_micros column so output is reproducible.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    capacity: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    min: u64,
    #[arg(long)]
    max: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT, value_parser = clap::value_parser!(u64).range(1..))]
    node_limit: u64,
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".to_owned()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
        .map_err(|e: crate::heuristics::HeuristicError| e.to_string())
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Runs the command line on `args` (including the program name) and
/// returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a, stdout),
        Command::Bench(a) => cmd_bench(a, stdout),
        Command::Gen(a) => cmd_gen(a, stdout),
        Command::Exact(a) => cmd_exact(a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write output: {e}"))),
    }
}

fn load_instances(args: &InputArgs) -> Result<Vec<Instance>, Failure> {
    let text = read_text(&args.input)?;
    let stem = args
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let parse_err =
        |e: io::ParseError| Failure::new(EXIT_INPUT, format!("{}: {e}", args.input.display()));
    let instances = match args.format {
        Format::Orlib => io::parse_orlib::<u64>(&stem, &text)
            .map_err(parse_err)?
            .into_instances(),
        Format::Plain => vec![io::parse_plain::<u64>(&stem, &text).map_err(parse_err)?],
    };
    match args.index {
        None => Ok(instances),
        Some(k) => instances
            .into_iter()
            .nth(k)
            .map(|i| vec![i])
            .ok_or_else(|| Failure::new(EXIT_USAGE, format!("--index {k} is out of range"))),
    }
}

fn check_valid(instance: &Instance, packing: &crate::Packing, alg: Algorithm) -> CmdResult {
    match validate_packing(instance, packing) {
        Ok(Verdict::Valid) => Ok(()),
        Ok(Verdict::Invalid(v)) => Err(Failure::new(
            EXIT_INVALID,
            format!(
                "{alg} produced an invalid packing for {}: {}",
                instance.name(),
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            ),
        )),
        Err(e) => Err(Failure::new(EXIT_INVALID, e.to_string())),
    }
}

fn checked_ratio(bins: usize, reference: usize, what: &str) -> Result<Ratio, Failure> {
    let ratio = Ratio::new(bins, reference)
        .map_err(|e| Failure::new(EXIT_INVALID, format!("{what}: {e}")))?;
    if ratio.is_below_one() {
        return Err(Failure::new(
            EXIT_INVALID,
            format!("{what}: {bins} bins beat the reference {reference}; the reference is not a valid lower value"),
        ));
    }
    Ok(ratio)
}

fn cmd_solve(args: SolveArgs, stdout: &mut dyn Write) -> CmdResult {
    let config =
        A2Config::new(args.r, args.seed).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let instances = load_instances(&args.input)?;
    let mut documents = String::new();
    let mut report = String::new();
    for inst in &instances {
        let packing = args.alg.pack(inst, &config);
        check_valid(inst, &packing, args.alg)?;
        documents.push_str(&io::write_packing(&packing, inst));
        let (reference, ratio) = match inst.best_known() {
            Some(best) => {
                let r = checked_ratio(packing.bin_count(), best, inst.name())?;
                (best.to_string(), r.to_string())
            }
            None => ("na".to_owned(), "na".to_owned()),
        };
        writeln!(
            report,
            "instance={} bins={} reference={reference} ratio={ratio}",
            inst.name(),
            packing.bin_count()
        )
        .unwrap();
    }
    write_output(None, &report, stdout)?;
    if let Some(out) = &args.out {
        write_output(Some(out), &documents, stdout)?;
    }
    Ok(())
}

fn cmd_gen(args: GenArgs, stdout: &mut dyn Write) -> CmdResult {
    let inst = io::generate_uniform(args.n, args.capacity, args.min, args.max, args.seed)
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    write_output(args.out.as_deref(), &io::write_plain(&inst), stdout)
}

fn cmd_exact(args: ExactArgs, stdout: &mut dyn Write) -> CmdResult {
    let instances = load_instances(&args.input)?;
    let mut report = String::new();
    for inst in &instances {
        let result = exact_min_bins(inst, args.node_limit);
        let line = match result.status {
            ExactStatus::Solved { optimum } => format!("optimum={optimum}"),
            ExactStatus::Timeout => format!("status=timeout nodes={}", result.nodes),
        };
        writeln!(report, "instance={} {line}", inst.name()).unwrap();
    }
    write_output(None, &report, stdout)
}

/// Per-(set, algorithm) ratio statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct SetSummary {
    pub set_name: String,
    pub algorithm: String,
    pub mean_ratio: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub instances_counted: usize,
}

impl std::fmt::Display for SetSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "set={} alg={} instances={} mean={:.4} min={:.4} max={:.4}",
            self.set_name,
            self.algorithm,
            self.instances_counted,
            self.mean_ratio,
            self.min_ratio,
            self.max_ratio
        )
    }
}

/// Summaries for every (set, algorithm) pair, in first-appearance order.
pub fn summarize(records: &[BenchRecord]) -> Vec<SetSummary> {
    let mut out: Vec<(SetSummary, f64)> = Vec::new();
    for rec in records {
        let value = rec.ratio.to_f64();
        match out
            .iter_mut()
            .find(|(s, _)| s.set_name == rec.set_name && s.algorithm == rec.algorithm)
        {
            Some((s, sum)) => {
                *sum += value;
                s.instances_counted += 1;
                s.min_ratio = s.min_ratio.min(value);
                s.max_ratio = s.max_ratio.max(value);
            }
            None => out.push((
                SetSummary {
                    set_name: rec.set_name.clone(),
                    algorithm: rec.algorithm.clone(),
                    mean_ratio: 0.0,
                    min_ratio: value,
                    max_ratio: value,
                    instances_counted: 1,
                },
                value,
            )),
        }
    }
    out.into_iter()
        .map(|(mut s, sum)| {
            s.mean_ratio = sum / s.instances_counted as f64;
            s
        })
        .collect()
}

#[derive(Debug, Deserialize)]
struct SetsFile {
    set: Vec<SetEntry>,
}

#[derive(Debug, Deserialize)]
struct SetEntry {
    name: String,
    file: PathBuf,
}

/// Instance sets of a data directory. A `sets.toml` of
/// `[[set]] name = "bp1" file = "binpack1.txt"` entries fixes names and
/// order; otherwise every `*.txt` file is a set named by its stem, in file
/// name order.
pub fn load_data_dir(dir: &Path) -> Result<Vec<InstanceSet>, String> {
    let mapping = dir.join("sets.toml");
    let entries: Vec<(String, PathBuf)> = if mapping.is_file() {
        let text = fs::read_to_string(&mapping)
            .map_err(|e| format!("cannot read {}: {e}", mapping.display()))?;
        let sets: SetsFile =
            toml::from_str(&text).map_err(|e| format!("{}: {e}", mapping.display()))?;
        sets.set
            .into_iter()
            .map(|e| (e.name, dir.join(e.file)))
            .collect()
    } else {
        let mut files: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(|e| format!("cannot read data directory {}: {e}", dir.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "txt"))
            .collect();
        files.sort();
        files
            .into_iter()
            .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), p))
            .collect()
    };
    if entries.is_empty() {
        return Err(format!("no instance files in {}", dir.display()));
    }
    entries
        .into_iter()
        .map(|(name, path)| {
            let text = fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            io::parse_orlib::<u64>(&name, &text).map_err(|e| format!("{}: {e}", path.display()))
        })
        .collect()
}

/// Reference bin count for ratios: the best-known value when the data
/// carries one, else the exact optimum if it is found within the default
/// node limit, else the L1 bound.
pub fn reference_bins(instance: &Instance) -> usize {
    instance.best_known().unwrap_or_else(|| {
        exact_min_bins(instance, DEFAULT_NODE_LIMIT)
            .optimum()
            .unwrap_or_else(|| lower_bound_l1(instance))
    })
}

/// Options of one benchmark sweep.
#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub algorithms: Vec<Algorithm>,
    pub a2: A2Config,
    pub jobs: usize,
    pub timing: bool,
}

/// Runs every algorithm on every instance. Records come back in
/// (set, instance, algorithm) order whatever the number of workers.
pub fn run_bench(sets: &[InstanceSet], options: &BenchOptions) -> Result<Vec<BenchRecord>, String> {
    let mut jobs = Vec::new();
    for set in sets {
        for inst in set.instances() {
            for &alg in &options.algorithms {
                jobs.push((set.set_name(), inst, alg));
            }
        }
    }
    let one =
        |&(set_name, inst, alg): &(&str, &Instance, Algorithm)| -> Result<BenchRecord, String> {
            let start = Instant::now();
            let packing = alg.pack(inst, &options.a2);
            let elapsed = start.elapsed();
            check_valid(inst, &packing, alg).map_err(|f| f.message)?;
            let reference = reference_bins(inst);
            let what = format!("{set_name}/{} ({alg})", inst.name());
            let ratio =
                checked_ratio(packing.bin_count(), reference, &what).map_err(|f| f.message)?;
            let is_a2 = alg == Algorithm::A2;
            Ok(BenchRecord {
                set_name: set_name.to_owned(),
                instance_name: inst.name().to_owned(),
                algorithm: alg.tag().to_owned(),
                bins: packing.bin_count(),
                reference,
                ratio,
                elapsed_micros: if options.timing {
                    elapsed.as_micros() as u64
                } else {
                    0
                },
                probes: packing.probes(),
                r: if is_a2 { options.a2.r() } else { 0 },
                seed: if is_a2 { options.a2.seed() } else { 0 },
            })
        };
    if options.jobs <= 1 {
        return jobs.iter().map(one).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| e.to_string())?;
    pool.install(|| jobs.par_iter().map(one).collect())
}

fn cmd_bench(args: BenchArgs, stdout: &mut dyn Write) -> CmdResult {
    let sets = load_data_dir(&args.data).map_err(|m| Failure::new(EXIT_INPUT, m))?;
    let options = BenchOptions {
        algorithms: args.algs,
        a2: A2Config::new(args.r, args.seed)
            .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?,
        jobs: args.jobs,
        timing: !args.no_timing,
    };
    let records = run_bench(&sets, &options).map_err(|m| Failure::new(EXIT_INVALID, m))?;
    write_output(args.csv.as_deref(), &io::write_csv(&records), stdout)?;
    let mut summary = String::new();
    for s in summarize(&records) {
        writeln!(summary, "{s}").unwrap();
    }
    write_output(None, &summary, stdout)
}
