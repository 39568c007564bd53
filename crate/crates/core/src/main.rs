use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use memorybench::analysis::{self, TcnArch, DEFAULT_RECEPTIVE_CAP, DEFAULT_TAU, MAX_SPECTRUM_SIZE};
use memorybench::io::{self, format_f64, GroupKey};
use memorybench::memory::{DEFAULT_ALPHA_MAX, DEFAULT_EPSILON};
use memorybench::scaling::solve_alpha_max;
use memorybench::target::DEFAULT_N_SEQUENCES;
use memorybench::{generate, materialize, Activation, MemoryKernel, MemoryKind, MemorySpec, TargetConfig};

#[derive(Parser)]
#[command(name = "memorybench", version, about = "Synthetic memory benchmarks: generation, diagnostics, aggregation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a dataset directory (x.npy, y.npy, manifest.json)
    Gen(GenArgs),
    /// Dump the kernel or its tail-energy profile as CSV
    Analyze(AnalyzeArgs),
    /// Singular values of the causal target matrix
    Spectrum(SpectrumArgs),
    /// TCN approximation bound for an architecture
    Bound(BoundArgs),
    /// Merge result files and take minima over seeds
    Aggregate(AggregateArgs),
}

#[derive(Args)]
struct MemoryArgs {
    #[arg(long, value_enum)]
    memory: KindArg,
    #[arg(long)]
    alpha: f64,
    /// Polynomial tail parameter, or "auto" to solve it from --epsilon
    #[arg(long = "alpha-max", default_value_t = DEFAULT_ALPHA_MAX.to_string())]
    alpha_max: String,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Exp,
    Poly,
    Delta,
    Airy,
}

impl From<KindArg> for MemoryKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Exp => MemoryKind::Exp,
            KindArg::Poly => MemoryKind::Poly,
            KindArg::Delta => MemoryKind::Delta,
            KindArg::Airy => MemoryKind::Airy,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ActivationArg {
    Tanh,
    Identity,
}

impl From<ActivationArg> for Activation {
    fn from(a: ActivationArg) -> Self {
        match a {
            ActivationArg::Tanh => Activation::Tanh,
            ActivationArg::Identity => Activation::Identity,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    memory: MemoryArgs,
    #[arg(long = "T", default_value_t = 1024)]
    t_max: usize,
    #[arg(long, default_value_t = DEFAULT_N_SEQUENCES)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Also write a held-out split drawn from seed + 1 into OUT/test
    #[arg(long)]
    test: bool,
    #[arg(long, value_enum, default_value = "tanh")]
    sigma1: ActivationArg,
    #[arg(long, value_enum, default_value = "tanh")]
    sigma2: ActivationArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Complexity,
    Kernel,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    memory: MemoryArgs,
    #[arg(long = "T", default_value_t = 1024)]
    t_max: usize,
    #[arg(long, value_enum, default_value = "complexity")]
    what: What,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    memory: MemoryArgs,
    /// Matrix size
    #[arg(long = "L")]
    size: usize,
    /// Kernel horizon; defaults to L
    #[arg(long = "T")]
    t_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TAU)]
    tau: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    memory: MemoryArgs,
    #[arg(long = "T", default_value_t = 1024)]
    t_max: usize,
    /// Filter size
    #[arg(long = "l")]
    filter_size: usize,
    /// Depth
    #[arg(long = "K")]
    depth: usize,
    /// Channel counts M_1,...,M_K
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    channels: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_RECEPTIVE_CAP)]
    cap: u64,
}

#[derive(Args)]
struct AggregateArgs {
    #[arg(long, num_args = 1.., required = true)]
    results: Vec<PathBuf>,
    #[arg(long, default_value = "model,memory,alpha,m")]
    group: String,
    #[arg(long)]
    out: PathBuf,
}

enum Failure {
    /// Bad flags: exit 2.
    Usage(String),
    /// Solver or I/O failure: exit 1.
    Runtime(String),
}

impl From<memorybench::Error> for Failure {
    fn from(e: memorybench::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Aggregate(args) => cmd_aggregate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Validates the memory flags and resolves `--alpha-max auto`.
fn memory_spec(args: &MemoryArgs, t_max: usize) -> Result<MemorySpec, Failure> {
    let alpha_max = match args.alpha_max.as_str() {
        "auto" => {
            if !(args.epsilon > 0.0) {
                return Err(usage(format!("epsilon {} must be positive", args.epsilon)));
            }
            solve_alpha_max(t_max, args.epsilon)?.mu
        }
        text => text.parse::<f64>().map_err(|_| usage(format!("invalid --alpha-max {text:?}")))?,
    };
    MemorySpec::with_tail(args.memory.into(), args.alpha, t_max, alpha_max, args.epsilon).map_err(usage)
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn cmd_gen(args: GenArgs) -> CmdResult {
    if args.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let spec = memory_spec(&args.memory, args.t_max)?;
    let kernel = materialize(spec)?;
    let config = TargetConfig::new(kernel, args.n, args.seed).with_activations(args.sigma1.into(), args.sigma2.into());

    io::write_dataset(&generate(&config)?, &args.out)?;
    if args.test {
        io::write_dataset(&generate(&config.test_split())?, &args.out.join("test"))?;
    }
    match config.kernel.mu() {
        Some(mu) => println!("mu={}", format_f64(mu)),
        None => println!("mu=none"),
    }
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs) -> CmdResult {
    let kernel = materialize(memory_spec(&args.memory, args.t_max)?)?;
    let mut out = create(&args.out)?;
    match args.what {
        What::Complexity => {
            writeln!(out, "s,complexity")?;
            for (s, c) in analysis::complexity_profile(&kernel).values().iter().enumerate() {
                writeln!(out, "{s},{}", format_f64(*c))?;
            }
        }
        What::Kernel => {
            writeln!(out, "s,rho")?;
            for (s, r) in kernel.values().iter().enumerate() {
                writeln!(out, "{s},{}", format_f64(*r))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_spectrum(args: SpectrumArgs) -> CmdResult {
    if args.size == 0 || args.size > MAX_SPECTRUM_SIZE {
        return Err(usage(format!("--L must be in [1, {MAX_SPECTRUM_SIZE}]")));
    }
    let t_max = args.t_max.unwrap_or(args.size);
    if t_max + 1 < args.size {
        return Err(usage(format!("--T {t_max} is too short for --L {}", args.size)));
    }
    if !(args.tau >= 0.0) {
        return Err(usage("--tau must be nonnegative"));
    }
    let kernel: MemoryKernel = materialize(memory_spec(&args.memory, t_max)?)?;
    let matrix = analysis::causal_matrix(&kernel, args.size)?;
    let spectrum = analysis::singular_values_with_tau(&matrix, args.tau)?;

    let mut out = create(&args.out)?;
    writeln!(out, "index,sigma")?;
    for (i, s) in spectrum.singular_values.iter().enumerate() {
        writeln!(out, "{i},{}", format_f64(*s))?;
    }
    writeln!(out, "# effective_rank,{}", spectrum.effective_rank)?;
    writeln!(out, "# tau,{}", format_f64(spectrum.tau))?;
    out.flush()?;
    println!("effective_rank={}", spectrum.effective_rank);
    Ok(())
}

fn cmd_bound(args: BoundArgs) -> CmdResult {
    if args.channels.len() != args.depth {
        return Err(usage(format!("--channels has {} entries but --K is {}", args.channels.len(), args.depth)));
    }
    let arch = TcnArch::with_cap(args.filter_size, args.channels, args.cap).map_err(usage)?;
    let kernel = materialize(memory_spec(&args.memory, args.t_max)?)?;
    let report = analysis::tcn_bound(&kernel, &arch);
    println!("M={}", report.effective_filters);
    println!("receptive_field={}", report.receptive_field);
    println!("coverage_term={}", format_f64(report.coverage_term));
    println!("truncation_term={}", format_f64(report.truncation_term));
    println!("total={}", format_f64(report.total));
    Ok(())
}

fn cmd_aggregate(args: AggregateArgs) -> CmdResult {
    let keys = GroupKey::parse_list(&args.group).map_err(usage)?;
    let rows = io::aggregate(&args.results, &keys)?;
    let mut out = create(&args.out)?;
    io::write_aggregate_csv(&mut out, &keys, &rows)?;
    out.flush()?;
    Ok(())
}
