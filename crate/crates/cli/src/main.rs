use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use mincut_core::analysis::{analysis_rows, write_analysis_csv};
use mincut_core::montecarlo::{
    bench_runtime, estimate_success, write_csv, BenchFamily, BenchRow, EstimateRow, TrialConfig,
};
use mincut_core::oracle::{brute_force_min_cut, deterministic_min_cut, BRUTE_FORCE_LIMIT};
use mincut_core::{
    generate, parse_graph, serialize_graph, Algorithm, Capacity, ContractibleGraph, Cut, Error,
    Event, GeneratorKind, RandomSource, RunOptions,
};

mod source;

use source::GraphSource;

#[derive(Parser)]
#[command(name = "mincut", version, about = "Randomized minimum cut experiments")]
struct Cli {
    /// Seed for every random choice; a fresh one is drawn and printed if omitted.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph to a file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Find a minimum cut of a graph file.
    Mincut {
        input: PathBuf,
        #[arg(long, default_value = "fpz1")]
        algorithm: Algorithm,
        /// Best of this many independent runs.
        #[arg(long, default_value_t = 1)]
        repetitions: usize,
        /// Read capacities as floating point.
        #[arg(long)]
        fractional: bool,
    },
    /// Estimate a success probability and print it as a CSV row.
    Estimate(EstimateArgs),
    /// Tabulate the success-probability recurrences for n = 2..=N.
    Analyze {
        #[arg(value_name = "N")]
        max_n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time algorithms across graph sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "fpz2,optimal")]
        algorithms: Vec<Algorithm>,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        repetitions: usize,
        /// `dense` or `cycle`.
        #[arg(long, default_value = "dense")]
        family: BenchFamily,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Unit cycle on N vertices.
    Cycle { n: usize, output: PathBuf },
    /// Unit complete graph on N vertices.
    Complete { n: usize, output: PathBuf },
    /// Two cliques joined by a light cut; prints the planted cut value.
    Planted {
        left: usize,
        right: usize,
        output: PathBuf,
        #[arg(long, default_value_t = 10)]
        intra: u64,
        #[arg(long, default_value_t = 1)]
        inter: u64,
        #[arg(long, default_value_t = 1)]
        crossing: usize,
    },
    /// Connected G(n, p) with random integer capacities.
    Random {
        n: usize,
        output: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        min_capacity: u64,
        #[arg(long, default_value_t = 10)]
        max_capacity: u64,
    },
}

#[derive(Args)]
struct EstimateArgs {
    /// Graph file.
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    input: Option<PathBuf>,
    /// Generator such as `cycle:16`, `complete:6`, `planted:4:4:10:1` or
    /// `random:12:0.4`.
    #[arg(long)]
    graph: Option<GraphSource>,
    #[arg(long, default_value = "fpz1")]
    algorithm: Algorithm,
    #[arg(long, default_value = "survival")]
    event: Event,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A failed command and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Self { code: 1, message: format!("{}: {e}", path.display()) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidArgument(_)
            | Error::TooFewVertices(_)
            | Error::TooManyVertices { .. }
            | Error::SelfLoop(_)
            | Error::VertexOutOfRange { .. }
            | Error::NegativeCapacity { .. } => 2,
            Error::Disconnected | Error::NoContractibleEdge => 3,
            _ => 1,
        };
        Self { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or_else(|| {
        let s = rand::random();
        eprintln!("seed: {s}");
        s
    });
    let result = match cli.command {
        Command::Gen { kind } => cmd_gen(kind, seed),
        Command::Mincut { input, algorithm, repetitions, fractional } => {
            if fractional {
                cmd_mincut::<f64>(&input, algorithm, repetitions, seed)
            } else {
                cmd_mincut::<u64>(&input, algorithm, repetitions, seed)
            }
        }
        Command::Estimate(args) => cmd_estimate(args, seed),
        Command::Analyze { max_n, output } => cmd_analyze(max_n, output.as_deref()),
        Command::Bench { algorithms, sizes, repetitions, family, output } => {
            cmd_bench(&algorithms, &sizes, repetitions, family, seed, output.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| Failure::io(path, e))
}

fn read_graph<C: Capacity>(path: &Path) -> Result<ContractibleGraph<C>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    parse_graph(&text).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

/// Sends CSV to `path`, or to stdout when no path is given.
fn emit(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> Result<(), Error>) -> CmdResult {
    match path {
        Some(p) => {
            let mut file = fs::File::create(p).map_err(|e| Failure::io(p, e))?;
            write(&mut file)?;
        }
        None => write(&mut io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_gen(kind: GenKind, seed: u64) -> CmdResult {
    let (kind, output) = match kind {
        GenKind::Cycle { n, output } => (GeneratorKind::Cycle { n }, output),
        GenKind::Complete { n, output } => (GeneratorKind::Complete { n }, output),
        GenKind::Planted { left, right, output, intra, inter, crossing } => {
            (GeneratorKind::Planted { left, right, intra, inter, crossing }, output)
        }
        GenKind::Random { n, output, p, min_capacity, max_capacity } => (
            GeneratorKind::Random { n, edge_probability: p, min_capacity, max_capacity },
            output,
        ),
    };
    let generated = generate(&kind, seed)?;
    write_file(&output, &serialize_graph(&generated.graph))?;
    if let Some(cut) = generated.planted {
        println!("planted cut value: {}", cut.value());
    }
    Ok(())
}

fn cmd_mincut<C: Capacity>(input: &Path, algorithm: Algorithm, repetitions: usize, seed: u64) -> CmdResult {
    if repetitions == 0 {
        return Err(Failure::usage("repetitions must be at least 1"));
    }
    let g: ContractibleGraph<C> = read_graph(input)?;
    let mut rng = RandomSource::new(seed);
    let start = Instant::now();
    let out = algorithm.solve(&g, repetitions, &mut rng, &RunOptions::default())?;
    let elapsed = start.elapsed();
    let side: Vec<String> = out.cut.canonical_side().iter().map(usize::to_string).collect();
    println!("value: {}", out.cut.value());
    println!("side: {}", side.join(" "));
    println!("contractions: {}", out.stats.contractions);
    println!("time: {:.6}s", elapsed.as_secs_f64());
    Ok(())
}

/// A minimum cut to track: the planted one when known, else the oracle's.
fn reference_cut<C: Capacity>(g: &ContractibleGraph<C>, planted: Option<Cut<C>>) -> Result<Cut<C>, Error> {
    match planted {
        Some(cut) => Ok(cut),
        None if g.n_original() <= BRUTE_FORCE_LIMIT => brute_force_min_cut(g),
        None => deterministic_min_cut(g),
    }
}

fn cmd_estimate(args: EstimateArgs, seed: u64) -> CmdResult {
    if args.trials == 0 {
        return Err(Failure::usage("trials must be at least 1"));
    }
    if args.repetitions == 0 {
        return Err(Failure::usage("repetitions must be at least 1"));
    }
    let (label, generated) = match (&args.input, &args.graph) {
        (Some(path), _) => (path.display().to_string(), None),
        (None, Some(src)) => (src.to_string(), Some(src.generate(seed)?)),
        (None, None) => return Err(Failure::usage("either --input or --graph is required")),
    };
    let (g, planted) = match generated {
        Some(gen) => (gen.graph, gen.planted),
        None => (read_graph::<u64>(args.input.as_deref().expect("checked above"))?, None),
    };
    if !g.is_connected() {
        return Err(Error::Disconnected.into());
    }
    let target = reference_cut(&g, planted)?;
    let mut config = TrialConfig::new(args.algorithm, args.trials, seed).repetitions(args.repetitions);
    if let Some(t) = args.threads {
        config = config.threads(t);
    }
    let est = estimate_success(&config, &g, &target, args.event)?;
    let row = EstimateRow::new(&label, args.algorithm, g.n_original(), &est);
    emit(args.output.as_deref(), |w| write_csv(&[row], w))
}

fn cmd_analyze(max_n: usize, output: Option<&Path>) -> CmdResult {
    if max_n < 2 {
        return Err(Failure::usage(format!("N must be at least 2, got {max_n}")));
    }
    let rows = analysis_rows(max_n)?;
    emit(output, |w| write_analysis_csv(&rows, w))
}

fn cmd_bench(
    algorithms: &[Algorithm],
    sizes: &[usize],
    repetitions: usize,
    family: BenchFamily,
    seed: u64,
    output: Option<&Path>,
) -> CmdResult {
    if sizes.is_empty() {
        return Err(Failure::usage("no sizes given"));
    }
    if let Some(&n) = sizes.iter().find(|&&n| n < 2) {
        return Err(Failure::usage(format!("sizes must be at least 2, got {n}")));
    }
    if repetitions == 0 {
        return Err(Failure::usage("repetitions must be at least 1"));
    }
    let mut rows = Vec::new();
    for &alg in algorithms {
        let records = bench_runtime(alg, family, sizes, repetitions, seed)?;
        rows.extend(records.iter().map(BenchRow::from));
    }
    emit(output, |w| write_csv(&rows, w))
}
