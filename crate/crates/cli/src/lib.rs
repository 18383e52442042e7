//! Command-line front end: `solve`, `verify`, `classify` and `bench`.

pub mod bench;
pub mod error;
pub mod exit;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use skolemkit::certs::{parse_certificate, serialize, verify, InputEcho, Verdict};
use skolemkit::lrs::{classify, decompose, format_rational, normalize_to_integer, InputSpec, SequenceSpec};
use skolemkit::padic::PrimeStrategy;
use skolemkit::solver::{find_all_zeros, OutcomeKind, SolveConfig};

use bench::{run_bench, BenchConfig};
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "skolemkit", version, about = "Certified zeros of integer linear recurrence sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Find all zeros and emit a certificate.
    Solve(SolveArgs),
    /// Check a certificate against a recurrence.
    Verify(VerifyArgs),
    /// Report whether a recurrence is simple and non-degenerate.
    Classify(ClassifyArgs),
    /// Solve random instances and tabulate outcomes per order.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Input file (text or JSON), `-` for stdin, or an inline `c1 … cd ; u0 … ud-1`.
    pub input: String,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub timeout: f64,
    /// Prefer this prime for the p-adic jumps.
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    pub modulus_cap: u64,
    /// Write the certificate here.
    #[arg(long)]
    pub json_out: Option<PathBuf>,
    /// Re-read the emitted certificate and run the verifier on it.
    #[arg(long)]
    pub selfcheck: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub spec: String,
    pub certificate: PathBuf,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    pub input: String,
    /// For degenerate input, print the non-degenerate interleaved parts.
    #[arg(long)]
    pub decompose: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Orders to sample, e.g. `2..6` (inclusive) or `3`.
    #[arg(long, default_value = "2..6")]
    pub orders: String,
    /// Instances per order.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Coefficient and initial value range, e.g. `-20..20` (inclusive).
    #[arg(long, default_value = "-20..20", allow_hyphen_values = true)]
    pub coeff_range: String,
    /// Per-instance budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub timeout: f64,
    /// Scale the budget by the order.
    #[arg(long)]
    pub timeout_per_order: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to `SKOLEMKIT_THREADS`, then the core count.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Write the per-order CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Parse `a..b` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Input(format!("bad range `{s}`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim_start_matches('=').trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn read_path(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Read an input argument: `-` is stdin, an existing path is read, anything
/// else is parsed as an inline spec.
pub fn read_input(arg: &str) -> Result<InputSpec, CliError> {
    let src = if arg == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
        s
    } else if Path::new(arg).exists() {
        read_path(Path::new(arg))?
    } else {
        arg.to_string()
    };
    Ok(InputSpec::parse(&src)?)
}

fn echo(input: &InputSpec) -> InputEcho {
    InputEcho { coefficients: input.coefficients.clone(), initial: input.initial.clone() }
}

fn integer_spec(input: &InputSpec) -> Result<SequenceSpec, CliError> {
    Ok(normalize_to_integer(&input.coefficients, &input.initial)?.spec)
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io { path: "<output>".into(), source: e }
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let input = read_input(&a.input)?;
    if !(a.timeout > 0.0) {
        return Err(CliError::Input("timeout must be positive".into()));
    }
    let mut cfg = SolveConfig::default().with_timeout(Duration::from_secs_f64(a.timeout));
    cfg.modulus_cap = a.modulus_cap;
    if let Some(p) = a.prime {
        cfg.prime_strategy = PrimeStrategy::Fixed(p);
    }
    let outcome = find_all_zeros(&input, &cfg)?;
    writeln!(out, "{outcome}").map_err(io_err)?;
    let s = &outcome.stats;
    writeln!(
        out,
        "stats: tree_depth {} max_jump {} zeros {} nodes {} elapsed {:.3}s",
        s.tree_depth,
        s.max_jump,
        s.zeros_count,
        s.nodes,
        s.elapsed.as_secs_f64()
    )
    .map_err(io_err)?;
    if s.prime_fallbacks > 0 {
        writeln!(out, "note: the requested prime was not admissible at {} zero(s); another prime was used", s.prime_fallbacks)
            .map_err(io_err)?;
    }
    let code = match &outcome.kind {
        OutcomeKind::Solved { certificate, .. } => {
            let text = serialize(certificate);
            if let Some(path) = &a.json_out {
                std::fs::write(path, &text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                writeln!(out, "certificate: {}", path.display()).map_err(io_err)?;
            }
            if a.selfcheck {
                let reread = parse_certificate(&text)?;
                match verify(&echo(&input), &reread) {
                    Verdict::Accept => writeln!(out, "selfcheck: accept").map_err(io_err)?,
                    Verdict::Reject(r) => {
                        writeln!(out, "selfcheck: reject: {r}").map_err(io_err)?;
                        return Ok(exit::SELFCHECK);
                    }
                }
            }
            exit::SOLVED
        }
        OutcomeKind::Degenerate => exit::DEGENERATE,
        OutcomeKind::NotSimple => exit::NOT_SIMPLE,
        OutcomeKind::IdenticallyZero => exit::IDENTICALLY_ZERO,
        OutcomeKind::Timeout { .. } => exit::TIMEOUT,
    };
    Ok(code)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let input = read_input(&a.spec)?;
    let cert = parse_certificate(&read_path(&a.certificate)?)?;
    Ok(match verify(&echo(&input), &cert) {
        Verdict::Accept => {
            writeln!(out, "accept").map_err(io_err)?;
            exit::ACCEPT
        }
        Verdict::Reject(r) => {
            writeln!(out, "reject: {r}").map_err(io_err)?;
            exit::REJECT
        }
    })
}

fn format_spec(s: &SequenceSpec) -> String {
    let c: Vec<String> = s.recurrence.coeffs().iter().map(|x| x.to_string()).collect();
    let u: Vec<String> = s.initial.iter().map(format_rational).collect();
    format!("{} ; {}", c.join(" "), u.join(" "))
}

fn cmd_classify(a: &ClassifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = integer_spec(&read_input(&a.input)?)?;
    let class = classify(&spec)?;
    writeln!(out, "class: {}", class.variant).map_err(io_err)?;
    writeln!(out, "detail: {}", class.detail).map_err(io_err)?;
    writeln!(out, "minimal: {}", format_spec(&class.minimal)).map_err(io_err)?;
    if a.decompose && !class.unity_orders.is_empty() {
        let k = class.period();
        for (r, part) in decompose(&class.minimal, &class)?.iter().enumerate() {
            let pc = classify(part)?;
            writeln!(out, "part {r} mod {k}: {} [{}]", format_spec(&pc.minimal), pc.variant).map_err(io_err)?;
        }
    }
    Ok(exit::SOLVED)
}

/// Worker count: explicit flag, then `SKOLEMKIT_THREADS`, then the core count.
pub fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("SKOLEMKIT_THREADS").ok().and_then(|v| v.parse().ok()))
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (o1, o2) = parse_range(&a.orders)?;
    let (lo, hi) = parse_range(&a.coeff_range)?;
    if o1 < 1 || (lo == 0 && hi == 0) || !(a.timeout > 0.0) {
        return Err(CliError::Input("orders must be ≥ 1, the range must contain a nonzero value, and the timeout must be positive".into()));
    }
    let cfg = BenchConfig {
        orders: (o1 as usize..=o2 as usize).collect(),
        count: a.count,
        lo,
        hi,
        timeout: Duration::from_secs_f64(a.timeout),
        scale_timeout: a.timeout_per_order,
        seed: a.seed,
        threads: thread_count(a.threads),
    };
    let report = run_bench(&cfg);
    write!(out, "{}", report.table()).map_err(io_err)?;
    let csv = report.csv().map_err(|e| CliError::Internal(e.to_string()))?;
    match &a.csv {
        Some(path) => std::fs::write(path, csv).map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
        None => write!(out, "\n{csv}").map_err(io_err)?,
    }
    Ok(exit::SOLVED)
}

/// Run the CLI on `args`, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return exit::USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    let r = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Classify(a) => cmd_classify(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match r {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}
