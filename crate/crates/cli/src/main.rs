use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bmssp_cli::{
    crossover_threshold, emit_csv, emit_ratio_curve, ratio_curve, run_benchmark, time_once,
    Algorithm, BenchError, BenchOptions, GraphSource,
};
use bmssp_core::{generate_sparse_random, write_dimacs, DEFAULT_MAX_WEIGHT};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bmssp",
    version,
    about = "Shortest-path benchmark harness: BMSSP vs Dijkstra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random sparse graph as a DIMACS .gr file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
        max_weight: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time a single run of one algorithm and print its checksum.
    Run {
        #[command(flatten)]
        input: InputArgs,
        /// Seed for --gen-n.
        #[arg(long, default_value_t = 1, requires = "gen_n")]
        seed: u64,
        #[arg(long, value_enum)]
        algo: Algorithm,
        #[arg(long, default_value_t = 1)]
        source: usize,
    },
    /// Time both algorithms on each instance and write a CSV table.
    Bench {
        /// DIMACS .gr files.
        #[arg(long, num_args = 1..)]
        inputs: Vec<PathBuf>,
        /// Also bench generated graphs with 2^p vertices for each p given.
        #[arg(long, num_args = 1..)]
        gen_log2: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
        max_weight: u64,
        #[arg(long, default_value_t = 5)]
        reps: u32,
        #[arg(long, default_value_t = 1)]
        source: usize,
        /// Run each algorithm once, untimed, before timing.
        #[arg(long)]
        warmup: bool,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Write (n, log2(n)^(-1/3)) for n = 2^p .. 2^q.
    RatioCurve {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Print the first n at which BMSSP's cost model wins for a constant ratio c.
    Threshold {
        #[arg(long)]
        c: f64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// DIMACS .gr file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generate a random graph with this many vertices instead.
    #[arg(long)]
    gen_n: Option<usize>,
}

enum Failure {
    Usage(String),
    Correctness(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Correctness(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Correctness(m) | Failure::Io(m) => m,
        }
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        // Unreadable and malformed input files both count as I/O failures.
        match e {
            BenchError::Dimacs { .. } => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn io_failure(path: &Path) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(io_failure(path))
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen {
            n,
            seed,
            max_weight,
            out,
        } => {
            let graph = generate_sparse_random(n, seed, max_weight)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let comment = format!("random sparse graph n={n} seed={seed} max_weight={max_weight}");
            let mut file = create(&out)?;
            write_dimacs(&graph, &mut file, Some(&comment)).map_err(io_failure(&out))?;
            file.flush().map_err(io_failure(&out))?;
        }
        Command::Run {
            input,
            seed,
            algo,
            source,
        } => {
            let source_spec = match (input.input, input.gen_n) {
                (Some(path), _) => GraphSource::Dimacs(path),
                (None, Some(n)) => GraphSource::Generated {
                    n,
                    seed,
                    max_weight: DEFAULT_MAX_WEIGHT,
                },
                (None, None) => unreachable!("clap requires one input"),
            };
            let graph = source_spec.load()?;
            let (elapsed, state) =
                time_once(&graph, algo, source).map_err(|e| Failure::Usage(e.to_string()))?;
            println!(
                "{} {algo}: n={} m={} time_ms={:.6} checksum={} reached={}",
                source_spec.label(),
                graph.vertex_count(),
                graph.edge_count(),
                elapsed.as_secs_f64() * 1e3,
                state.checksum(),
                state.reached()
            );
        }
        Command::Bench {
            inputs,
            gen_log2,
            seed,
            max_weight,
            reps,
            source,
            warmup,
            csv,
        } => {
            if reps == 0 {
                return Err(Failure::Usage("--reps must be at least 1".into()));
            }
            let mut sources: Vec<GraphSource> =
                inputs.into_iter().map(GraphSource::Dimacs).collect();
            for p in gen_log2 {
                if p >= 32 {
                    return Err(Failure::Usage(format!("--gen-log2 {p} is too large")));
                }
                sources.push(GraphSource::Generated {
                    n: 1 << p,
                    seed,
                    max_weight,
                });
            }
            if sources.is_empty() {
                return Err(Failure::Usage(
                    "nothing to bench: give --inputs or --gen-log2".into(),
                ));
            }
            let options = BenchOptions {
                repetitions: reps,
                source,
                warmup,
            };
            let mut records = Vec::new();
            let mut failures = Vec::new();
            for (spec, result) in sources.iter().zip(run_benchmark(&sources, &options)) {
                match result {
                    Ok(r) => {
                        match r.mismatch {
                            Some(m) => {
                                eprintln!(
                                    "{}: checksum mismatch (dijkstra {}, bmssp {})",
                                    r.instance, m.dijkstra, m.bmssp
                                );
                                failures.push(Failure::Correctness(format!(
                                    "{}: checksum mismatch",
                                    r.instance
                                )));
                            }
                            None => eprintln!(
                                "{}: n={} m={} dijkstra {:.3} ms, bmssp {:.3} ms, ratio {:.3}",
                                r.instance, r.n, r.m, r.time_dijkstra_ms, r.time_bmssp_ms, r.ratio
                            ),
                        }
                        records.push(r);
                    }
                    Err(e) => {
                        eprintln!("{}: {e}", spec.label());
                        failures.push(Failure::from(e));
                    }
                }
            }
            let file = create(&csv)?;
            emit_csv(&records, file).map_err(|e| Failure::Io(format!("{}: {e}", csv.display())))?;
            // Remaining rows are still written; the exit code reports the worst failure.
            if let Some(failure) = failures.into_iter().max_by_key(Failure::code) {
                return Err(failure);
            }
        }
        Command::RatioCurve { n_min, n_max, csv } => {
            let curve = ratio_curve(n_min, n_max).map_err(|e| Failure::Usage(e.to_string()))?;
            let file = create(&csv)?;
            emit_ratio_curve(&curve, file)
                .map_err(|e| Failure::Io(format!("{}: {e}", csv.display())))?;
        }
        Command::Threshold { c } => {
            let t = crossover_threshold(c).map_err(|e| Failure::Usage(e.to_string()))?;
            match &t.exact {
                Some(n0) => println!("n0 = {n0}"),
                None => println!(
                    "n0 = floor(2^{}) + 1 (too large to print exactly)",
                    t.exponent
                ),
            }
            println!(
                "n0 ~ 10^{} (log10 n0 = {:.3})",
                t.order_of_magnitude(),
                t.log10
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
