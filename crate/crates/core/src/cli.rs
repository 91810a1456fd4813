//! The `bisigma` command line.
//!
//! Exit status: 0 on success, 1 when `verify` finds a disagreement, 2 for
//! usage errors and violated preconditions. Plain-text output is for people;
//! `--json` records are the stable machine interface.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

use crate::error::{EngineError, OracleError};
use crate::extremal::{self, max_edges, GraphParams};
use crate::format::{self, Format};
use crate::oracle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREEMENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Default sweep depth for `verify`.
pub const DEFAULT_N_MAX: u64 = 7;

#[derive(Debug, Parser)]
#[command(
    name = "bisigma",
    version,
    about = "Maximum sum of squared degrees over bipartite graphs with n vertices and m edges"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regime, k0 and every extremal construction for (n, m).
    Classify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        /// Emit the JSON record instead of text.
        #[arg(long)]
        json: bool,
    },
    /// The maximum sum of squared degrees.
    Max {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Print the graph B^l(n, m, k).
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
        /// edge-list, biadjacency or dot
        #[arg(long, default_value = "edge-list")]
        format: String,
    },
    /// f(k) for k from ceil(n/2) to k0 (requires m >= n).
    Fk {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Check the engine against exhaustive enumeration for all n <= n-max.
    Verify {
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: u64,
        /// Worker threads; defaults to all cores.
        #[arg(long, env = "BISIGMA_JOBS")]
        jobs: Option<usize>,
    },
    /// One row per (n, m) for n in n-from..=n-to.
    Table {
        #[arg(long)]
        n_from: u64,
        #[arg(long)]
        n_to: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<crate::error::GraphError> for Failure {
    fn from(e: crate::error::GraphError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Classify { n, m, json } => {
            let c = extremal::classify(GraphParams::new(n, m)?)?;
            if json {
                writeln!(out, "{}", c.to_json())?;
            } else {
                write_classification(&c, out)?;
            }
        }
        Command::Max { n, m } => {
            writeln!(out, "{}", extremal::max_sigma2(GraphParams::new(n, m)?)?)?;
        }
        Command::Construct { n, m, k, format } => {
            let format: Format = format.parse()?;
            let spec = extremal::canonical_spec(n, m, k)?;
            let g = extremal::construct_bl(&spec)?;
            write!(out, "{}", format::serialize(&g, format))?;
        }
        Command::Fk { n, m } => {
            for (k, f) in extremal::fk_profile(GraphParams::new(n, m)?)? {
                writeln!(out, "{k} {f}")?;
            }
        }
        Command::Verify { n_max, jobs } => return verify(n_max, jobs, out),
        Command::Table { n_from, n_to } => {
            if n_from < 2 || n_from > n_to {
                return Err(Failure::Usage(format!(
                    "table range needs 2 <= n-from <= n-to, got {n_from}..={n_to}"
                )));
            }
            writeln!(out, "n m regime k0 max_sigma2 classes")?;
            for n in n_from..=n_to {
                for m in 0..=max_edges(n) {
                    let c = extremal::classify(GraphParams::new(n, m)?)?;
                    writeln!(
                        out,
                        "{n} {m} {} {} {} {}",
                        c.regime.name(),
                        c.k0.map_or_else(|| "-".to_string(), |k| k.to_string()),
                        c.max_sigma2,
                        c.iso_classes
                    )?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_classification(
    c: &extremal::ExtremalClassification,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let (n, m) = (c.params.n(), c.params.m());
    write!(out, "n={n} m={m} regime={}", c.regime.name())?;
    if let Some(k0) = c.k0 {
        write!(out, " k0={k0}")?;
    }
    writeln!(out)?;
    if let Some(b) = c.boundary {
        let rel = match b.relation {
            std::cmp::Ordering::Less => "<",
            std::cmp::Ordering::Equal => "=",
            std::cmp::Ordering::Greater => ">",
        };
        writeln!(out, "boundary: m={} {rel} (n-k0)(k0-1)={}", b.lhs, b.rhs)?;
    }
    writeln!(out, "max_sigma2: {}", c.max_sigma2)?;
    writeln!(out, "constructions:")?;
    for con in &c.constructions {
        let s = &con.spec;
        writeln!(
            out,
            "  B^l({n},{m},{}) q={} r={} x={:?} y={:?} class={}",
            s.k,
            s.q,
            s.r,
            con.degree_sequence.x_degrees,
            con.degree_sequence.y_degrees,
            con.iso_class
        )?;
    }
    writeln!(out, "iso_classes: {}", c.iso_classes)
}

fn verify(n_max: u64, jobs: Option<usize>, out: &mut dyn Write) -> Result<i32, Failure> {
    let sweep = || oracle::verify_sweep(n_max);
    let summary = match jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(sweep)?,
        None => sweep()?,
    };

    writeln!(out, "n m regime brute_max engine_max classes verdict")?;
    for report in &summary.reports {
        writeln!(out, "{}", report.summary_line())?;
    }
    let disagreements: Vec<_> = summary.disagreements().collect();
    writeln!(
        out,
        "instances={} agreements={} disagreements={}",
        summary.instances,
        summary.agreements,
        disagreements.len()
    )?;
    for report in &disagreements {
        writeln!(out, "{}", report.to_json())?;
    }
    Ok(if disagreements.is_empty() {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    })
}
