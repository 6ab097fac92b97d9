mod bundle;
mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("estimated {units:.3e} work units exceed the budget {budget:.0e}; rerun with --force to proceed")]
    Budget { units: f64, budget: f64 },
    #[error("{0}")]
    Core(#[from] harmsum_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "harmsum", version, about = "Experiments on twisted harmonic sums over F_q[θ]")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// Flat key=value configuration file; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Field order; selects the default modulus for prime powers.
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Comma-separated list of s.
    #[arg(long, global = true, value_delimiter = ',')]
    s: Option<Vec<usize>>,
    #[arg(long, global = true)]
    maxdeg: Option<usize>,
    #[arg(long, global = true)]
    d_lo: Option<usize>,
    #[arg(long, global = true)]
    d_hi: Option<usize>,
    #[arg(long, global = true)]
    n_max: Option<u64>,
    #[arg(long, global = true)]
    s_max: Option<usize>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Ignore the cost guard and overwrite conflicting cache files.
    #[arg(long, global = true)]
    force: bool,
    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    dump_config: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build H_s by both routes, cross-check, cache it and emit the degree table.
    ComputeH,
    Verify {
        #[arg(value_enum)]
        check: VerifyCheck,
    },
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyCheck {
    /// Both construction routes, degree claims and the leading coefficient.
    HGrid,
    /// The product form of H_{2q−1}.
    TwoQMinusOne,
    /// Exact period identity for π̃_d and ω_{d−m}.
    PeriodIdentity,
    LambdaLimit,
    LowerCoeffs,
    Nu,
    InterpCrosscheck,
    /// S_d(1;s′) extracted from H_s against enumeration.
    PowerSums,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    Conjecture,
    BgCongruence,
    Components,
    BcUnits,
}

fn command_name(c: &Command) -> String {
    let v = |x: &dyn ValueEnumName| x.name();
    match c {
        Command::ComputeH => "compute-h".into(),
        Command::Verify { check } => format!("verify {}", v(check)),
        Command::Scan { kind } => format!("scan {}", v(kind)),
    }
}

trait ValueEnumName {
    fn name(&self) -> String;
}

impl<T: ValueEnum> ValueEnumName for T {
    fn name(&self) -> String {
        self.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
    }
}

fn effective_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let f = &cli.flags;
    let mut cfg = match &f.config {
        Some(path) => RunConfig::parse(&std::fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(c) = &cli.command {
        cfg.command = command_name(c);
    }
    if let Some(q) = f.q {
        cfg.set_q(q)?;
    }
    if let Some(s) = &f.s {
        cfg.s = s.clone();
    }
    cfg.maxdeg = f.maxdeg.or(cfg.maxdeg);
    cfg.d_lo = f.d_lo.or(cfg.d_lo);
    cfg.d_hi = f.d_hi.or(cfg.d_hi);
    cfg.n_max = f.n_max.or(cfg.n_max);
    cfg.s_max = f.s_max.or(cfg.s_max);
    if let Some(t) = f.threads {
        cfg.threads = t;
    }
    if let Some(d) = &f.cache_dir {
        cfg.cache_dir = d.clone();
    }
    if let Some(d) = &f.out_dir {
        cfg.out_dir = d.clone();
    }
    cfg.force |= f.force;
    if cfg.threads == 0 {
        return Err(CliError::Usage("threads must be at least 1".into()));
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cfg = effective_config(&cli)?;
    if cli.flags.dump_config {
        print!("{}", cfg.to_text());
        return Ok(0);
    }
    if cfg.command.is_empty() {
        return Err(CliError::Usage("no command given (compute-h, verify, scan)".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let start = Instant::now();
    let mut bundle = pool.install(|| commands::dispatch(&cfg))?;
    bundle.timing.push(("total".into(), start.elapsed()));
    bundle.write(&cfg.out_dir)?;
    print!("{}", bundle.render());
    Ok(bundle.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            // proven-statement failures arrive as checks, so anything here is usage or budget
            eprintln!("harmsum: {e}");
            ExitCode::from(3)
        }
    }
}
