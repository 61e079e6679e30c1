//! `rpe` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 oracle deviation.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::analytic::{
    advantage_interval, exact_forms, negativity_closed, pt_spectrum_closed, threshold_fidelity,
};
use crate::oracle::{self, MAX_ORACLE_DIM};
use crate::output::{format_sig, to_json, write_csv, ScanMeta};
use crate::search::scan;
use crate::states::{schmidt_state, IsoParams, SchmidtVector};
use crate::verify::{self, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ORACLE_DEVIATION: i32 = 3;

/// Oracle deviation above which `negativity --oracle` fails.
pub const ORACLE_DEVIATION_LIMIT: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "rpe", version, about = "Negativity of remotely prepared entanglement from isotropic qudit pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Outcome negativity and partial-transpose spectrum for one Schmidt spectrum
    Negativity(NegativityArgs),
    /// Bell-optimality threshold and the mixed-measurement advantage interval
    Threshold(ThresholdArgs),
    /// Sweep F and emit the strategy comparison as CSV or JSON
    Scan(ScanArgs),
    /// Run the seeded self-check suites
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("spectrum").required(true).args(["lambda", "uniform", "rank"])))]
struct NegativityArgs {
    /// Local dimension
    #[arg(long)]
    d: usize,
    /// Fidelity of each isotropic link
    #[arg(long = "F")]
    fidelity: f64,
    /// Schmidt coefficients, comma separated; padded with zeros up to d
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    lambda: Option<Vec<f64>>,
    /// Uniform spectrum of full rank (the Bell outcome)
    #[arg(long)]
    uniform: bool,
    /// Uniform spectrum of the given rank
    #[arg(long)]
    rank: Option<usize>,
    /// Cross-check against the brute-force four-qudit computation (d <= 5)
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    #[arg(long)]
    d: usize,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    steps: usize,
    /// Emit JSON instead of CSV
    #[arg(long)]
    json: bool,
    /// Write to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    d_max: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Negative control: check an implementation with the max{0,·} clip removed
    #[arg(long)]
    corrupt_clip: bool,
}

struct Usage(String);

type CmdResult = Result<i32, Usage>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Negativity(a) => cmd_negativity(&a, out),
        Command::Threshold(a) => cmd_threshold(&a, out),
        Command::Scan(a) => cmd_scan(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Usage {
    Usage(e.to_string())
}

fn io(e: std::io::Error) -> Usage {
    Usage(format!("output failed: {e}"))
}

fn params(d: usize, f: f64) -> Result<IsoParams, Usage> {
    IsoParams::new(d, f).map_err(usage)
}

fn spectrum(a: &NegativityArgs) -> Result<SchmidtVector, Usage> {
    if let Some(raw) = &a.lambda {
        if raw.len() > a.d {
            return Err(Usage(format!("{} Schmidt coefficients for d = {}", raw.len(), a.d)));
        }
        let sum: f64 = raw.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Usage(format!("Schmidt coefficients sum to {sum}, expected 1")));
        }
        let mut lam = raw.clone();
        lam.resize(a.d, 0.0);
        SchmidtVector::normalized(lam).map_err(usage)
    } else if let Some(r) = a.rank {
        SchmidtVector::uniform(r, a.d).map_err(usage)
    } else {
        SchmidtVector::uniform(a.d, a.d).map_err(usage)
    }
}

fn cmd_negativity(a: &NegativityArgs, out: &mut dyn Write) -> CmdResult {
    let p = params(a.d, a.fidelity)?;
    let lam = spectrum(a)?;
    let n = negativity_closed(&p, &lam).map_err(usage)?;
    let spec = pt_spectrum_closed(&p, &lam).map_err(usage)?;

    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io);
    w(out, format!("d = {}, F = {}", p.d(), format_sig(p.fidelity())))?;
    w(out, format!("a = {}, b = {}", format_sig(p.a()), format_sig(p.b())))?;
    let shown: Vec<String> = lam.lambdas().iter().map(|&x| format_sig(x)).collect();
    w(out, format!("lambda = [{}] (rank {})", shown.join(", "), lam.rank()))?;
    w(out, format!("negativity = {}", format_sig(n)))?;
    w(out, "pt spectrum:".into())?;
    for (k, e) in spec.diag_eigs.iter().enumerate() {
        w(out, format!("  |{k}{k}>        {}", format_sig(*e)))?;
    }
    for e in &spec.pair_eigs {
        w(
            out,
            format!(
                "  psi({},{})+   {}\n  psi({},{})-   {}",
                e.k,
                e.l,
                format_sig(e.plus),
                e.k,
                e.l,
                format_sig(e.minus)
            ),
        )?;
    }

    if a.oracle {
        if p.d() > MAX_ORACLE_DIM {
            w(out, format!("oracle skipped: d > {MAX_ORACLE_DIM}"))?;
            return Ok(EXIT_OK);
        }
        let numeric = (|| {
            let joint = oracle::build_joint(&p)?;
            let psi = schmidt_state(&lam, p.d())?;
            let (_, rho) = oracle::measure_outcome(&joint, &psi, p.d())?;
            oracle::negativity_numeric(&rho, p.d())
        })()
        .map_err(usage)?;
        let deviation = (numeric - n).abs();
        w(out, format!("oracle negativity = {}", format_sig(numeric)))?;
        w(out, format!("deviation = {deviation:.3e}"))?;
        if deviation > ORACLE_DEVIATION_LIMIT {
            w(out, format!("oracle deviation exceeds {ORACLE_DEVIATION_LIMIT:e}"))?;
            return Ok(EXIT_ORACLE_DEVIATION);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_threshold(a: &ThresholdArgs, out: &mut dyn Write) -> CmdResult {
    if a.d < 2 {
        return Err(Usage(format!("d must be at least 2, got {}", a.d)));
    }
    let (t_exact, lo_exact, hi_exact) = exact_forms(a.d);
    let (lo, hi) = advantage_interval(a.d);
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io);
    w(out, format!("d = {}", a.d))?;
    w(out, format!("threshold = {}  {}", format_sig(threshold_fidelity(a.d)), t_exact))?;
    w(out, format!("interval = ({}, {})", format_sig(lo), format_sig(hi)))?;
    w(out, format!("  lo = {lo_exact}"))?;
    w(out, format!("  hi = {hi_exact}"))?;
    if a.d == 2 {
        w(out, "note: for d = 2 both measurements consist of Bell states; no advantage".into())?;
    }
    Ok(EXIT_OK)
}

fn cmd_scan(a: &ScanArgs, out: &mut dyn Write) -> CmdResult {
    let rows = scan(a.d, a.from, a.to, a.steps).map_err(usage)?;
    let mut sink: Box<dyn Write + '_> = match &a.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Usage(format!("cannot create {}: {e}", path.display())))?,
        )),
        None => Box::new(out),
    };
    if a.json {
        let meta = ScanMeta {
            d: a.d,
            from: a.from,
            to: a.to,
            steps: a.steps,
        };
        writeln!(sink, "{}", to_json(&meta, &rows)).map_err(io)?;
    } else {
        write_csv(&rows, &mut sink).map_err(io)?;
    }
    sink.flush().map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if !(2..=10).contains(&a.d_max) {
        return Err(Usage(format!("--d-max must be in 2..=10, got {}", a.d_max)));
    }
    if a.samples == 0 {
        return Err(Usage("--samples must be positive".into()));
    }
    let cfg = VerifyConfig {
        d_max: a.d_max,
        samples: a.samples,
        seed: a.seed,
    };
    let results = if a.corrupt_clip {
        verify::run_all_with(&cfg, verify::negativity_unclipped)
    } else {
        verify::run_all(&cfg)
    };
    let (mut passed, mut failed) = (0, 0);
    for s in &results {
        passed += s.passed;
        failed += s.failed;
        let status = if s.ok() { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {:<20} passed {:>6}  failed {:>6}", s.name, s.passed, s.failed).map_err(io)?;
        if let Some(f) = &s.first_failure {
            writeln!(out, "     first failure: {f}").map_err(io)?;
        }
    }
    writeln!(out, "total: passed {passed}, failed {failed}").map_err(io)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// Entry point for the `rpe` binary.
pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    run(std::env::args_os(), &mut out, &mut err)
}
