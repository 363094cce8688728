//! The `hartley` command-line tool.
//!
//! Exit codes are the same for every subcommand: 0 success, 1 failed
//! verification or audit, 2 unparsable input, 3 usage or length error.

mod io;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

pub use io::{parse_csv, parse_plain, read_signal, render, Layout, ReadError, SignalFile};

use crate::audit::{audit_report_with, count_ops, OpCount};
use crate::batch::map_trials;
use crate::derive::{
    derive_plan, identify_surd, pre_addition_matrix, residual_matrix, verify_decomposition,
    ALPHABET_TOL,
};
use crate::error::Error;
use crate::kernels::{run_kernel, KernelId};
use crate::reference::{dht_to_dft, naive_dft, naive_dht, naive_idht};
use crate::signal::{HartleySpectrum, RealSignal};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Default seed for `verify`.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "hartley",
    version,
    about = "Fast discrete Hartley transforms for N = 4, 8, 12 and 24",
    after_help = "Exit codes: 0 success, 1 verification or audit failure, \
                  2 parse error, 3 usage or length error.\n\
                  Files ending in .csv are read as one CSV row or column; anything \
                  else as one number per line ('#' lines and blank lines skipped). \
                  Output uses the input's format."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Forward DHT of a signal file.
    Transform {
        /// Blocklength; defaults to the file length.
        #[arg(long)]
        n: Option<usize>,
        /// Use the O(N²) definition instead of a fast kernel (any N).
        #[arg(long, conflicts_with = "fast")]
        naive: bool,
        /// Use a fast kernel (the default).
        #[arg(long)]
        fast: bool,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Inverse DHT by the definition (any N).
    Inverse {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// DFT through the DHT; writes one `re im` pair per line.
    Dft {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Compare every fast kernel with the definition on random signals.
    ///
    /// Samples are uniform in [-1, 1] from ChaCha8 seeded with SEED; trial t
    /// for blocklength N uses stream (N << 32) | t, so any failure can be
    /// replayed from the seed, N and trial index.
    Verify {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count the additions and multiplications of every kernel.
    Count {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Show the derivation of a kernel from the DHT matrix.
    Derive {
        #[arg(long)]
        n: usize,
        /// Show only `P_J`, the residual `T(J)` and its alphabet.
        #[arg(long)]
        layer: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Median time per transform, fast kernel against the definition.
    Bench {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        reps: u64,
        /// Restrict to one blocklength.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Replaceable internals, so tests can run the commands against a faulty
/// kernel or counter.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub kernel: fn(KernelId, &[f64]) -> Vec<f64>,
    pub counter: fn(KernelId) -> OpCount,
}

impl Default for Hooks {
    fn default() -> Self {
        Self {
            kernel: run_kernel::<f64>,
            counter: count_ops,
        }
    }
}

struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn failure(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::EmptySignal | Error::NonFinite { .. } => EXIT_PARSE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ReadError> for Exit {
    fn from(e: ReadError) -> Self {
        match e {
            ReadError::Io(message) => Exit::usage(message),
            ReadError::Content(e) => e.into(),
        }
    }
}

/// Run the tool with default hooks; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, Hooks::default(), out, err)
}

pub fn run_with<I, T>(args: I, hooks: Hooks, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut report = String::new();
    let result = dispatch(cli.command, hooks, &mut report);
    let _ = out.write_all(report.as_bytes());
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(command: Command, hooks: Hooks, out: &mut String) -> Result<(), Exit> {
    match command {
        Command::Transform {
            n,
            naive,
            fast: _,
            input,
            output,
        } => cmd_transform(n, naive, &input, &output, hooks),
        Command::Inverse { input, output } => {
            let file = read_signal(&input)?;
            let spectrum = HartleySpectrum::new(file.values)?;
            let v = naive_idht(&spectrum);
            write_rows(
                &output,
                file.layout,
                v.samples().iter().map(|&x| vec![x]).collect(),
            )
        }
        Command::Dft { input, output } => {
            let file = read_signal(&input)?;
            let v = RealSignal::new(file.values)?;
            let u = match KernelId::from_len(v.len()) {
                Ok(id) => dht_to_dft(&HartleySpectrum::new((hooks.kernel)(id, v.samples()))?),
                Err(_) => naive_dft(&v),
            };
            let rows = u.coefficients().iter().map(|c| vec![c.re, c.im]).collect();
            write_rows(&output, file.layout, rows)
        }
        Command::Verify {
            trials,
            seed,
            format,
        } => cmd_verify(trials, seed, format, hooks, out),
        Command::Count { format } => cmd_count(format, hooks, out),
        Command::Derive { n, layer, format } => cmd_derive(n, layer, format, out),
        Command::Bench { reps, n, format } => cmd_bench(reps, n, format, hooks, out),
    }
}

fn write_rows(path: &Path, layout: Layout, rows: Vec<Vec<f64>>) -> Result<(), Exit> {
    std::fs::write(path, render(layout, &rows))
        .map_err(|e| Exit::usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_transform(
    n: Option<usize>,
    naive: bool,
    input: &Path,
    output: &Path,
    hooks: Hooks,
) -> Result<(), Exit> {
    let file = read_signal(input)?;
    let v = RealSignal::new(file.values)?;
    if let Some(n) = n {
        if !naive {
            KernelId::from_len(n)?;
        }
        if n != v.len() {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: v.len(),
            }
            .into());
        }
    }
    let spectrum = if naive {
        naive_dht(&v)
    } else {
        let id = KernelId::from_len(v.len())?;
        HartleySpectrum::new((hooks.kernel)(id, v.samples()))?
    };
    let rows = spectrum.coefficients().iter().map(|&x| vec![x]).collect();
    write_rows(output, file.layout, rows)
}

#[derive(Debug, Serialize)]
struct VerifyRow {
    n: usize,
    trials: u64,
    max_error: f64,
    worst_trial: u64,
    tolerance: f64,
    passed: bool,
}

/// Random signal for trial `trial` of blocklength `n`.
pub fn trial_signal(seed: u64, n: usize, trial: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | trial);
    (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

fn cmd_verify(
    trials: u64,
    seed: u64,
    format: Format,
    hooks: Hooks,
    out: &mut String,
) -> Result<(), Exit> {
    let rows: Vec<VerifyRow> = KernelId::ALL
        .iter()
        .map(|&id| {
            let n = id.blocklength();
            // error relative to the per-trial tolerance scale max(1, |v|inf)
            let errors = map_trials(trials as usize, |t| {
                let v = trial_signal(seed, n, t as u64);
                let fast = (hooks.kernel)(id, &v);
                let slow = naive_dht(&RealSignal::new(v.clone()).expect("finite"));
                let scale = v.iter().fold(1.0f64, |m, x| m.max(x.abs()));
                let err = fast
                    .iter()
                    .zip(slow.coefficients())
                    .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                (err, err / scale)
            });
            let (worst_trial, &(max_error, _)) = errors
                .iter()
                .enumerate()
                .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
                .expect("at least one trial");
            let tolerance = 1e-10 * n as f64;
            VerifyRow {
                n,
                trials,
                max_error,
                worst_trial: worst_trial as u64,
                tolerance,
                passed: errors.iter().all(|&(_, rel)| rel <= tolerance),
            }
        })
        .collect();
    let passed = rows.iter().all(|r| r.passed);
    match format {
        Format::Text => {
            let _ = writeln!(out, "verify: {trials} trials per N, ChaCha8 seed {seed}");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "N={:<3} max_error {:<24} tolerance {:<8e} {}",
                    r.n,
                    format!("{:e}", r.max_error),
                    r.tolerance,
                    if r.passed { "ok" } else { "FAIL" }
                );
            }
        }
        Format::Machine => {
            let doc = json!({ "seed": seed, "trials": trials, "rows": rows, "passed": passed });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializes")
            );
        }
    }
    match rows.iter().find(|r| !r.passed) {
        None => Ok(()),
        Some(r) => Err(Exit::failure(format!(
            "N={} trial {} (seed {seed}): error {:e} exceeds {:e}",
            r.n, r.worst_trial, r.max_error, r.tolerance
        ))),
    }
}

fn cmd_count(format: Format, hooks: Hooks, out: &mut String) -> Result<(), Exit> {
    let report = audit_report_with(hooks.counter);
    match format {
        Format::Text => out.push_str(&report.to_text()),
        Format::Machine => {
            out.push_str(&report.to_json());
            out.push('\n');
        }
    }
    if report.all_pass() {
        return Ok(());
    }
    let mismatches: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !(r.meets_bound && r.additions_match()))
        .map(|r| {
            format!(
                "N={}: expected {} additions and {} multiplications, measured {} and {}",
                r.n, r.declared_additions, r.mu, r.additions, r.multiplications
            )
        })
        .collect();
    Err(Exit::failure(mismatches.join("; ")))
}

fn describe(x: f64) -> String {
    match identify_surd(x) {
        Some(s) if x != 0.0 && x != 1.0 => format!("{x} = {s}"),
        _ => x.to_string(),
    }
}

fn matrix_rows<T: Copy>(m: &nalgebra::DMatrix<T>) -> Vec<Vec<T>> {
    (0..m.nrows())
        .map(|r| m.row(r).iter().copied().collect())
        .collect()
}

fn cmd_derive(
    n: usize,
    layer: Option<usize>,
    format: Format,
    out: &mut String,
) -> Result<(), Exit> {
    let id = KernelId::from_len(n)?;
    if let Some(j) = layer {
        let p = pre_addition_matrix(id, j)?;
        let det = p.determinant()?;
        let t = residual_matrix(id, j)?;
        let alphabet = t.alphabet(ALPHABET_TOL)?;
        match format {
            Format::Text => {
                let _ = writeln!(out, "{id}, layer {j}: S({j}) = P·v, det P = {det}");
                let _ = writeln!(out, "P =");
                for r in matrix_rows(&p.entries) {
                    let cells: Vec<String> = r.iter().map(|x| format!("{x:>2}")).collect();
                    let _ = writeln!(out, "  {}", cells.join(" "));
                }
                let _ = writeln!(out, "T = H·P⁻¹ =");
                for r in matrix_rows(&t.entries) {
                    let cells: Vec<String> = r.iter().map(|x| format!("{x:>7.4}")).collect();
                    let _ = writeln!(out, "  {}", cells.join(" "));
                }
                let _ = writeln!(out, "alphabet:");
                for a in &alphabet {
                    let _ = writeln!(out, "  {}", describe(*a));
                }
            }
            Format::Machine => {
                let doc = json!({
                    "n": n,
                    "layer": j,
                    "determinant": det,
                    "pre_addition": matrix_rows(&p.entries),
                    "residual": matrix_rows(&t.entries),
                    "alphabet": alphabet,
                });
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializes")
                );
            }
        }
        return Ok(());
    }

    let plan = derive_plan(id)?;
    let (passed, report) = verify_decomposition(id)?;
    match format {
        Format::Text => {
            let _ = writeln!(
                out,
                "{id}: constants applied after layer {}",
                plan.product_layer
            );
            for stage in &plan.stages {
                let alphabet: Vec<String> = stage.alphabet.iter().map(|&a| describe(a)).collect();
                let _ = writeln!(
                    out,
                    "layer {}: alphabet [{}]",
                    stage.order,
                    alphabet.join(", ")
                );
                for line in stage.special.to_string().lines() {
                    let _ = writeln!(out, "  special: {line}");
                }
            }
            for c in &plan.constants {
                let _ = writeln!(
                    out,
                    "multiply S{}({}) by {}",
                    c.column,
                    plan.product_layer,
                    describe(c.value)
                );
            }
            let _ = write!(out, "{}", plan.schedule);
            let _ = writeln!(
                out,
                "reconstruction: matrix error {:e}, schedule error {:e}: {}",
                report.matrix_error,
                report.schedule_error,
                if passed { "pass" } else { "FAIL" }
            );
        }
        Format::Machine => {
            let stages: Vec<_> = plan
                .stages
                .iter()
                .map(|s| json!({ "layer": s.order, "alphabet": s.alphabet, "special": s.special }))
                .collect();
            let doc = json!({
                "n": n,
                "product_layer": plan.product_layer,
                "stages": stages,
                "post": matrix_rows(&plan.post),
                "schedule": plan.schedule,
                "report": report,
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializes")
            );
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Exit::failure(format!(
            "{id}: decomposition does not reproduce the DHT matrix"
        )))
    }
}

#[derive(Debug, Serialize)]
struct BenchRow {
    n: usize,
    reps: u64,
    fast_ns: f64,
    naive_ns: f64,
    speedup: f64,
    low_confidence: bool,
}

/// Median nanoseconds per call over up to 101 timed batches.
fn median_ns(reps: u64, mut f: impl FnMut()) -> f64 {
    let batches = reps.min(101);
    let per_batch = reps / batches;
    let mut samples: Vec<f64> = (0..batches)
        .map(|_| {
            let start = Instant::now();
            for _ in 0..per_batch {
                f();
            }
            start.elapsed().as_nanos() as f64 / per_batch as f64
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}

fn cmd_bench(
    reps: u64,
    n: Option<usize>,
    format: Format,
    hooks: Hooks,
    out: &mut String,
) -> Result<(), Exit> {
    let ids = match n {
        Some(n) => vec![KernelId::from_len(n)?],
        None => KernelId::ALL.to_vec(),
    };
    let rows: Vec<BenchRow> = ids
        .iter()
        .map(|&id| {
            let v = trial_signal(DEFAULT_SEED, id.blocklength(), 0);
            let signal = RealSignal::new(v.clone()).expect("finite");
            let fast_ns = median_ns(reps, || {
                std::hint::black_box((hooks.kernel)(id, std::hint::black_box(&v)));
            });
            let naive_ns = median_ns(reps, || {
                std::hint::black_box(naive_dht(std::hint::black_box(&signal)));
            });
            BenchRow {
                n: id.blocklength(),
                reps,
                fast_ns,
                naive_ns,
                speedup: naive_ns / fast_ns.max(f64::MIN_POSITIVE),
                low_confidence: reps < 3,
            }
        })
        .collect();
    match format {
        Format::Text => {
            let _ = writeln!(
                out,
                "{:>4} {:>12} {:>12} {:>8}",
                "N", "fast ns", "naive ns", "speedup"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>4} {:>12.1} {:>12.1} {:>8.1}{}",
                    r.n,
                    r.fast_ns,
                    r.naive_ns,
                    r.speedup,
                    if r.low_confidence {
                        "  (single sample, low confidence)"
                    } else {
                        ""
                    }
                );
            }
        }
        Format::Machine => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&rows).expect("serializes")
            );
        }
    }
    Ok(())
}
