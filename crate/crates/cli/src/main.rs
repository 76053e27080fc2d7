//! `dedekind`: exact Dedekind sums and congruence verification from the
//! command line.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use dedekind_core::perf::{decade_points, growth, time_decades};
use dedekind_core::report::{family_table_to_csv, family_table_to_json};
use dedekind_core::{
    cf_expand, dedekind_fast, dedekind_naive, family_table, jacobi, mu, scan_identities,
    scan_theorem1, scan_theorem2, ExactRational, Format, Identity, ReportSet, ScanOptions,
};

#[derive(Parser, Debug)]
#[command(
    name = "dedekind",
    version,
    about = "Exact Dedekind sums and their congruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print S(a,b) = 12 s(a,b), s(a,b) and b*S(a,b)
    Sum {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        b: i64,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
    },
    /// Print the odd-length continued fraction of a/b and T(a,b)
    Cf {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        b: i64,
    },
    /// Print mu(a,b)
    Mu {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        b: i64,
    },
    /// Print the Jacobi symbol (a|b)
    Jacobi {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        b: i64,
    },
    /// Run exhaustive verification suites and write a report
    Check {
        #[arg(long)]
        bmax: i64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Also scan moduli divisible by 9 in the theorem1 suite
        #[arg(long)]
        include_9div: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        /// Maximum number of violation records kept per report
        #[arg(long, default_value_t = 100)]
        cap: usize,
    },
    /// Tabulate the b = c d^2, a = c d + 1 family
    Examples {
        #[arg(long)]
        cmax: i64,
        #[arg(long)]
        dmax: i64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Compare naive and fast evaluation times per decade of b
    Bench {
        #[arg(long)]
        bmax: i64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Naive,
    Fast,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Theorem1,
    Theorem2,
    Identities,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

/// Failure of a mathematical check, as opposed to bad input.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) if e.is::<CheckFailed>() => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Sum { a, b, method } => cmd_sum(a, b, method),
        Command::Cf { a, b } => {
            let cf = cf_expand(a, b)?;
            println!("{cf} T={}", cf.alternating_sum());
            Ok(ExitCode::SUCCESS)
        }
        Command::Mu { a, b } => {
            println!("mu={}", mu(a, b)?.value());
            Ok(ExitCode::SUCCESS)
        }
        Command::Jacobi { a, b } => {
            println!("jacobi={}", jacobi(a, b)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            bmax,
            suite,
            include_9div,
            out,
            format,
            jobs,
            cap,
        } => {
            if bmax < 2 {
                bail!("--bmax must be at least 2, got {bmax}");
            }
            let opts = ScanOptions {
                jobs: jobs as usize,
                cap,
            };
            let mut reports = Vec::new();
            if matches!(suite, Suite::Theorem1 | Suite::All) {
                reports.push(scan_theorem1(bmax, include_9div, &opts)?);
            }
            if matches!(suite, Suite::Theorem2 | Suite::All) {
                reports.push(scan_theorem2(bmax, &opts)?);
            }
            if matches!(suite, Suite::Identities | Suite::All) {
                reports.push(scan_identities(bmax, &Identity::ALL, &opts)?);
            }
            let set = ReportSet { reports };
            emit(out.as_ref(), &set.render(format.into())?)?;
            for r in &set.reports {
                eprintln!(
                    "{}: {} tuples, {} violations{}",
                    r.kind.as_str(),
                    r.tuples_checked,
                    r.violation_count,
                    if r.truncated() {
                        " (list truncated at cap)"
                    } else {
                        ""
                    }
                );
            }
            Ok(if set.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Examples {
            cmax,
            dmax,
            out,
            format,
        } => {
            if cmax < 1 || cmax % 2 == 0 {
                bail!("--cmax must be an odd integer >= 1, got {cmax}");
            }
            if dmax < 3 || dmax % 2 == 0 {
                bail!("--dmax must be an odd integer >= 3, got {dmax}");
            }
            let rows = family_table(cmax, dmax).map_err(|e| match e {
                dedekind_core::Error::Disagreement { .. } => {
                    anyhow::Error::new(CheckFailed(e.to_string()))
                }
                other => other.into(),
            })?;
            let text = match format {
                OutputFormat::Csv => family_table_to_csv(&rows)?,
                OutputFormat::Json => family_table_to_json(&rows)?,
            };
            emit(out.as_ref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { bmax, samples } => cmd_bench(bmax, samples),
    }
}

fn cmd_sum(a: i64, b: i64, method: Method) -> anyhow::Result<ExitCode> {
    let timed = |f: fn(i64, i64) -> dedekind_core::Result<dedekind_core::DedekindValue>| {
        let start = Instant::now();
        let v = f(a, b);
        (v, start.elapsed().as_nanos())
    };
    let value = match method {
        Method::Naive => dedekind_naive(a, b)?,
        Method::Fast => dedekind_fast(a, b)?,
        Method::Both => {
            let (naive, naive_ns) = timed(dedekind_naive);
            let (fast, fast_ns) = timed(dedekind_fast);
            let (naive, fast) = (naive?, fast?);
            if naive != fast {
                return Err(
                    CheckFailed(format!("naive S={} but fast S={}", naive.s12, fast.s12)).into(),
                );
            }
            println!("naive_ns={naive_ns}");
            println!("fast_ns={fast_ns}");
            fast
        }
    };
    println!("S={}", value.s12);
    println!("s={}", value.s());
    println!("bS={}", value.b_times_s);
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(bmax: i64, samples: usize) -> anyhow::Result<ExitCode> {
    if bmax < 2 {
        bail!("--bmax must be at least 2, got {bmax}");
    }
    let timings =
        time_decades(&decade_points(bmax), samples).map_err(|e| CheckFailed(e.to_string()))?;
    println!(
        "{:>12} {:>8} {:>14} {:>12}",
        "b", "samples", "naive_ns", "fast_ns"
    );
    for t in &timings {
        println!(
            "{:>12} {:>8} {:>14} {:>12}",
            t.b, t.samples, t.naive_median_ns, t.fast_median_ns
        );
    }
    let ratio = |(n, d): (u64, u64)| ExactRational::new(n as i128, d as i128);
    if let (Some(naive), Some(fast)) = (
        growth(&timings, |t| t.naive_median_ns),
        growth(&timings, |t| t.fast_median_ns),
    ) {
        println!("naive_growth={}", ratio(naive));
        println!("fast_growth={}", ratio(fast));
    }
    Ok(ExitCode::SUCCESS)
}
