//! Command-line front end: evaluation, table generation, sampling, and
//! verification.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on numerical failures
//! (including a verification run with failing checks). The environment
//! variables `NORMRATIO_TOL` (default evaluation tolerance) and
//! `NORMRATIO_THREADS` (sampling/verification parallelism) apply when the
//! corresponding flags are absent.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dist::{Method, NormalRatio};
use crate::meijer::EvalOptions;
use crate::params::{DistParams, EvalResult};
use crate::verify::{run_full_with, RunConfig};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "normratio",
    about = "Distribution of Z = (X1···XM)/(Y1···YN) for independent zero-mean normals",
    long_about = "Evaluates the exact distribution of the ratio of products of independent \
                  zero-mean normal random variables: density, distribution function, survival, \
                  characteristic function, quantiles, fractional moments, sampling and a \
                  verification harness. The general formulas are Meijer G-functions with \
                  argument \u{3bb}\u{b2}z\u{b2}, \u{3bb} = 2^((N\u{2212}M)/2)\u{b7}sN/\u{3c3}M, evaluated by Mellin\u{2013}Barnes contour \
                  quadrature and residue series.",
    disable_version_flag = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Density f_Z(z) = λ/π^((M+N)/2) · G^{M,N}_{N,M}(λ²z² | 0,…,0; 0,…,0)
    Pdf(EvalArgs),
    /// CDF F_Z(z) = 1/2 + λ/(2π^((M+N)/2)) · z · G^{M,N+1}_{N+1,M+1}(λ²z² | 1/2,0,…,0; 0,…,0,−1/2)
    Cdf(EvalArgs),
    /// Survival P(Z > z) = 1 − F_Z(z), computed as 1/2 − (F_Z(z) − 1/2)
    Sf(EvalArgs),
    /// Quantile Q(p): the unique root of F_Z(z) = p; Q(1−p) = −Q(p)
    Quantile(QuantileArgs),
    /// Characteristic function φ_Z(t) via G^{N+1,M−1}_{M−1,N+1} at 2^M σM²t²/(2^{N+2}sN²) for M ≥ 1 (analogous G^{N+1,0}_{0,N+2} for M = 0)
    Cf(CfArgs),
    /// Fractional moment E|Z|^r = 2^{(M−N)r/2} σM^r sN^{−r} π^{−(M+N)/2} Γ((r+1)/2)^M Γ((1−r)/2)^N
    Moment(MomentArgs),
    /// Seeded reproducible draws of Z (chunk k comes from substream (seed, k))
    Sample(SampleArgs),
    /// Grid of (z, pdf, cdf) rows over the given z values
    Table(TableArgs),
    /// Verification report: KS goodness of fit, normalization quadrature, closed-form equivalence sweeps, moment consistency, asymptotic trends
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct DistArgs {
    /// Number of numerator factors M
    #[arg(long)]
    m: usize,
    /// Number of denominator factors N
    #[arg(long)]
    n: usize,
    /// Comma-separated σ_{X_i} (defaults to all ones)
    #[arg(long, value_delimiter = ',')]
    sigma_x: Option<Vec<f64>>,
    /// Comma-separated σ_{Y_j} (defaults to all ones)
    #[arg(long, value_delimiter = ',')]
    sigma_y: Option<Vec<f64>>,
}

impl DistArgs {
    fn params(&self) -> Result<DistParams> {
        let sx = self.sigma_x.clone().unwrap_or_else(|| vec![1.0; self.m]);
        let sy = self.sigma_y.clone().unwrap_or_else(|| vec![1.0; self.n]);
        DistParams::new(self.m, self.n, &sx, &sy)
    }
}

#[derive(Args, Debug)]
struct OutArgs {
    /// plain | csv | json
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    output_format: Format,
    /// Write to this path instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// Evaluation point (repeatable)
    #[arg(long, allow_negative_numbers = true, required = true)]
    z: Vec<f64>,
    /// auto | meijer | closed-form | asymptotic | quadrature
    #[arg(long, default_value = "auto")]
    method: String,
    /// Absolute kernel tolerance (overrides NORMRATIO_TOL)
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct QuantileArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// Probability in (0, 1) (repeatable)
    #[arg(long, required = true)]
    p: Vec<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct CfArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// Frequency (repeatable)
    #[arg(long, allow_negative_numbers = true, required = true)]
    t: Vec<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct MomentArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// Moment order (repeatable); finite for −1 < r < 1 when M, N ≥ 1
    #[arg(long, allow_negative_numbers = true, required = true)]
    r: Vec<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// Number of draws
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// Grid point (repeatable)
    #[arg(long, allow_negative_numbers = true, required = true)]
    z: Vec<f64>,
    #[arg(long, default_value = "auto")]
    method: String,
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo draws for the KS check
    #[arg(long, default_value_t = crate::verify::DEFAULT_SAMPLE_SIZE)]
    sample_size: usize,
    #[command(flatten)]
    out: OutArgs,
}

fn env_tol() -> Option<f64> {
    std::env::var("NORMRATIO_TOL").ok()?.parse().ok()
}

fn env_threads() -> usize {
    std::env::var("NORMRATIO_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
}

fn options(tol: Option<f64>) -> EvalOptions {
    let mut opts = EvalOptions::default();
    if let Some(t) = tol.or_else(env_tol) {
        opts.abs_tol = t;
        opts.rel_tol = (t * 0.01).max(1e-14);
    }
    opts
}

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}

/// 17 significant digits in scientific notation.
fn csv_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn render_pairs(out: &OutArgs, op: &str, arg_name: &str, rows: &[(f64, EvalResult)]) -> Result<()> {
    let text = match out.output_format {
        Format::Plain => {
            let mut s = String::new();
            for (_, r) in rows {
                s.push_str(&format!("{}\n", r.value));
            }
            s
        }
        Format::Csv => {
            let mut s = format!("{arg_name},{op}\n");
            for (a, r) in rows {
                s.push_str(&format!("{},{}\n", csv_num(*a), csv_num(r.value)));
            }
            s
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(a, r)| {
                    serde_json::json!({
                        arg_name: a,
                        "value": r.value,
                        "abs_err_estimate": r.abs_err_estimate,
                        "method": r.method.to_string(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "op": op, "results": items }))
                .expect("serializable")
                + "\n"
        }
    };
    emit(out, &text)
}

fn run_inner(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Pdf(a) => {
            let dist = NormalRatio::with_options(a.dist.params()?, options(a.tol));
            let method = Method::from_str(&a.method)?;
            let rows: Result<Vec<_>> = a
                .z
                .iter()
                .map(|&z| dist.pdf(z, method).map(|r| (z, r)))
                .collect();
            render_pairs(&a.out, "pdf", "z", &rows?)
        }
        Cmd::Cdf(a) => {
            let dist = NormalRatio::with_options(a.dist.params()?, options(a.tol));
            let method = Method::from_str(&a.method)?;
            let rows: Result<Vec<_>> = a
                .z
                .iter()
                .map(|&z| dist.cdf(z, method).map(|r| (z, r)))
                .collect();
            render_pairs(&a.out, "cdf", "z", &rows?)
        }
        Cmd::Sf(a) => {
            let dist = NormalRatio::with_options(a.dist.params()?, options(a.tol));
            let method = Method::from_str(&a.method)?;
            let rows: Result<Vec<_>> = a
                .z
                .iter()
                .map(|&z| dist.sf(z, method).map(|r| (z, r)))
                .collect();
            render_pairs(&a.out, "sf", "z", &rows?)
        }
        Cmd::Quantile(a) => {
            let dist = NormalRatio::with_options(a.dist.params()?, options(a.tol));
            let rows: Result<Vec<_>> = a
                .p
                .iter()
                .map(|&p| dist.quantile(p).map(|r| (p, r)))
                .collect();
            render_pairs(&a.out, "quantile", "p", &rows?)
        }
        Cmd::Cf(a) => {
            let dist = NormalRatio::with_options(a.dist.params()?, options(a.tol));
            let rows: Result<Vec<_>> = a.t.iter().map(|&t| dist.cf(t).map(|r| (t, r))).collect();
            render_pairs(&a.out, "cf", "t", &rows?)
        }
        Cmd::Moment(a) => {
            let dist = NormalRatio::new(a.dist.params()?);
            let rows: Result<Vec<_>> = a
                .r
                .iter()
                .map(|&r| dist.fractional_moment(r).map(|v| (r, v)))
                .collect();
            render_pairs(&a.out, "moment", "r", &rows?)
        }
        Cmd::Sample(a) => {
            let dist = NormalRatio::new(a.dist.params()?);
            let batch = dist.sample_with_threads(a.count.max(1), a.seed, env_threads());
            let text = match a.out.output_format {
                Format::Plain => {
                    let mut s = String::new();
                    for v in &batch.values {
                        s.push_str(&format!("{v}\n"));
                    }
                    s
                }
                Format::Csv => {
                    let mut s = String::from("value\n");
                    for v in &batch.values {
                        s.push_str(&format!("{}\n", csv_num(*v)));
                    }
                    s
                }
                Format::Json => {
                    serde_json::to_string_pretty(&serde_json::json!({
                        "seed": batch.seed,
                        "count": batch.values.len(),
                        "values": batch.values,
                    }))
                    .expect("serializable")
                        + "\n"
                }
            };
            emit(&a.out, &text)
        }
        Cmd::Table(a) => {
            let dist = NormalRatio::with_options(a.dist.params()?, options(a.tol));
            let method = Method::from_str(&a.method)?;
            let mut rows = Vec::new();
            for &z in &a.z {
                let pdf = dist.pdf(z, method)?;
                let cdf = dist.cdf(z, method)?;
                rows.push((z, pdf, cdf));
            }
            let text = match a.out.output_format {
                Format::Plain => {
                    let mut s = String::new();
                    for (z, p, c) in &rows {
                        s.push_str(&format!("{z} {} {}\n", p.value, c.value));
                    }
                    s
                }
                Format::Csv => {
                    let mut s = String::from("z,pdf,cdf\n");
                    for (z, p, c) in &rows {
                        s.push_str(&format!(
                            "{},{},{}\n",
                            csv_num(*z),
                            csv_num(p.value),
                            csv_num(c.value)
                        ));
                    }
                    s
                }
                Format::Json => {
                    let items: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(z, p, c)| {
                            serde_json::json!({"z": z, "pdf": p.value, "cdf": c.value})
                        })
                        .collect();
                    serde_json::to_string_pretty(&serde_json::json!({ "table": items }))
                        .expect("serializable")
                        + "\n"
                }
            };
            emit(&a.out, &text)
        }
        Cmd::Verify(a) => {
            let params = a.dist.params()?;
            let report = run_full_with(
                &params,
                a.seed,
                RunConfig {
                    sample_size: a.sample_size,
                    threads: env_threads(),
                },
            )?;
            let text = match a.out.output_format {
                Format::Plain => {
                    let mut s = String::new();
                    for c in &report.checks {
                        s.push_str(&format!(
                            "{:28} statistic {:>12.5e}  threshold {:>9.2e}  {}\n",
                            c.name,
                            c.statistic,
                            c.threshold,
                            if c.passed { "PASS" } else { "FAIL" }
                        ));
                    }
                    s.push_str(&format!(
                        "overall: {}\n",
                        if report.all_passed { "PASS" } else { "FAIL" }
                    ));
                    s
                }
                Format::Csv => {
                    let mut s = String::from("name,statistic,threshold,passed\n");
                    for c in &report.checks {
                        s.push_str(&format!(
                            "{},{},{},{}\n",
                            c.name,
                            csv_num(c.statistic),
                            csv_num(c.threshold),
                            c.passed
                        ));
                    }
                    s
                }
                Format::Json => report.to_json() + "\n",
            };
            emit(&a.out, &text)?;
            if !report.all_passed {
                return Err(Error::ConvergenceFailure(
                    "verification checks failed".into(),
                ));
            }
            Ok(())
        }
    }
}

/// Parses and executes a command line; returns the process exit code
/// (0 success, 1 usage error, 2 numerical failure).
pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match run_inner(cli) {
        Ok(()) => 0,
        Err(Error::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
