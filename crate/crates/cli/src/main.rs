//! Command-line front end: compute amplitudes, expand coefficients in q,
//! run the check suite and print comparison tables.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rp3_vertex::amplitude::{compute, compute_normalized, AmplitudeSpec, Geometry};
use rp3_vertex::analysis::fixture::bundled_dir;
use rp3_vertex::analysis::{Suite, SuiteConfig, SuiteName};
use rp3_vertex::ring::{graded_bidegrees, Bidegree};
use rp3_vertex::specialize::Specializer;
use rp3_vertex::{Partition, QSer, RatFn, Rational, Series};

const FIXTURES_ENV: &str = "RP3_VERTEX_FIXTURES";

#[derive(Parser, Debug)]
#[command(name = "rp3-vertex", version, about = "Exact topological vertex amplitudes on local P1xP1")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,

    /// Largest cutoff accepted.
    #[arg(long, default_value_t = 4, global = true)]
    max_cutoff: u32,

    /// Largest q-order accepted.
    #[arg(long, default_value_t = 20, global = true)]
    max_q_order: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// local-p1xp1 or resolved-conifold.
    #[arg(long, default_value = "local-p1xp1", value_parser = parse_geometry)]
    geometry: Geometry,

    /// First color, e.g. "[1,1]".
    #[arg(long, default_value = "[1]", value_parser = parse_partition)]
    alpha: Partition,

    /// Second color; "[]" for the unknot.
    #[arg(long, default_value = "[]", value_parser = parse_partition)]
    gamma: Partition,

    /// Refined amplitude instead of the regular one.
    #[arg(long)]
    refined: bool,

    /// Total degree in (Q_b, Q_f) kept.
    #[arg(long, default_value_t = 3)]
    cutoff: u32,

    /// Do not divide by the closed amplitude.
    #[arg(long)]
    unnormalized: bool,
}

impl SpecArgs {
    fn spec(&self, q_order: u32) -> AmplitudeSpec {
        AmplitudeSpec {
            geometry: self.geometry,
            alpha: self.alpha.clone(),
            gamma: self.gamma.clone(),
            refined: self.refined,
            cutoff: self.cutoff,
            q_order,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the amplitude as a series in Q_b, Q_f.
    Compute {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Expand coefficients in q after extracting a monomial prefactor.
    Expand {
        #[command(flatten)]
        spec: SpecArgs,
        /// One bidegree "r,s"; all nonzero coefficients when absent.
        #[arg(long, value_parser = parse_bidegree)]
        coeff: Option<Bidegree>,
        #[arg(long, default_value_t = 15)]
        q_order: u32,
    },
    /// Run a check suite; exits nonzero unless every verdict is the expected one.
    Check {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: SuiteName,
        /// Fixture directory; defaults to $RP3_VERTEX_FIXTURES, then the bundled fixtures.
        #[arg(long)]
        fixtures_dir: Option<PathBuf>,
        /// Glob over check ids, e.g. "fixture/refined_*".
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
        #[arg(long, default_value_t = 20)]
        q_order: u32,
    },
    /// Side-by-side table: regular against refined, or local against conifold.
    Compare {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = Against::Refined)]
        against: Against,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Against {
    Refined,
    Conifold,
}

fn parse_geometry(s: &str) -> Result<Geometry, String> {
    s.parse().map_err(|e: rp3_vertex::Error| e.to_string())
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: rp3_vertex::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<SuiteName, String> {
    s.parse().map_err(|e: rp3_vertex::Error| e.to_string())
}

fn parse_bidegree(s: &str) -> Result<Bidegree, String> {
    let (r, t) = s.split_once(',').ok_or_else(|| format!("expected r,s, got {s:?}"))?;
    let n = |x: &str| x.trim().parse::<u32>().map_err(|_| format!("expected nonnegative integers in {s:?}"));
    Ok((n(r)?, n(t)?))
}

fn check_ceilings(cli: &Cli, cutoff: u32, q_order: Option<u32>) -> Result<()> {
    if cutoff > cli.max_cutoff {
        bail!("cutoff {cutoff} exceeds the ceiling {} (raise --max-cutoff)", cli.max_cutoff);
    }
    if let Some(q) = q_order {
        if q > cli.max_q_order {
            bail!("q-order {q} exceeds the ceiling {} (raise --max-q-order)", cli.max_q_order);
        }
    }
    Ok(())
}

fn amplitude(sp: &Specializer<Rational>, args: &SpecArgs) -> Result<Series> {
    let spec = args.spec(0);
    if args.unnormalized {
        Ok(compute(sp, &spec))
    } else {
        compute_normalized(sp, &spec).context("normalizing by the closed amplitude")
    }
}

#[derive(Serialize)]
struct ExpansionJson {
    r: u32,
    s: u32,
    series: QSer,
}

#[derive(Serialize)]
struct CompareRow {
    r: u32,
    s: u32,
    left: RatFn,
    right: RatFn,
    equal: bool,
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let sp = Specializer::<Rational>::new();
    match &cli.command {
        Command::Compute { spec } => {
            check_ceilings(cli, spec.cutoff, None)?;
            let z = amplitude(&sp, spec)?;
            let doc = match cli.output {
                Output::Json => json(&z)?,
                Output::Text => z.to_string(),
            };
            Ok((doc, true))
        }
        Command::Expand { spec, coeff, q_order } => {
            check_ceilings(cli, spec.cutoff, Some(*q_order))?;
            let z = amplitude(&sp, spec)?;
            let keys: Vec<Bidegree> = match coeff {
                Some(k) => {
                    if !z.is_determined(*k) {
                        bail!("bidegree ({},{}) lies beyond cutoff {}", k.0, k.1, spec.cutoff);
                    }
                    vec![*k]
                }
                None => z.terms().into_iter().map(|(k, _)| k).collect(),
            };
            let mut rows = Vec::new();
            for (r, s) in keys {
                let c = z.coeff((r, s)).expect("determined");
                let e = QSer::expand(&c, *q_order).with_context(|| format!("expanding ({r},{s})"))?;
                rows.push(ExpansionJson { r, s, series: e });
            }
            let doc = match cli.output {
                Output::Json => json(&rows)?,
                Output::Text => rows
                    .iter()
                    .map(|x| format!("({},{}): {}  [prefactor {}]", x.r, x.s, x.series, x.series.prefactor()))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Ok((doc, true))
        }
        Command::Check { suite, fixtures_dir, filter, cutoff, q_order } => {
            check_ceilings(cli, *cutoff, Some(*q_order))?;
            let dir = fixtures_dir.clone().or_else(|| std::env::var_os(FIXTURES_ENV).map(PathBuf::from)).unwrap_or_else(bundled_dir);
            let config = SuiteConfig { suite: *suite, fixtures_dir: dir, cutoff: *cutoff, q_order: *q_order, filter: filter.clone() };
            let report = Suite::new(config)?.run(&sp);
            let doc = match cli.output {
                Output::Json => json(&report)?,
                Output::Text => report.summary().trim_end().to_string(),
            };
            Ok((doc, report.passed))
        }
        Command::Compare { spec, against } => {
            check_ceilings(cli, spec.cutoff, None)?;
            let (left, right, labels) = match against {
                Against::Refined => {
                    let regular = amplitude(&sp, &SpecArgs { refined: false, ..spec.clone() })?;
                    let refined = amplitude(&sp, &SpecArgs { refined: true, ..spec.clone() })?.substitute_t_eq_q()?;
                    (regular, refined, ("regular", "refined at t=q"))
                }
                Against::Conifold => {
                    let local = amplitude(&sp, &SpecArgs { geometry: Geometry::LocalP1xp1, ..spec.clone() })?;
                    let conifold = amplitude(&sp, &SpecArgs { geometry: Geometry::ResolvedConifold, ..spec.clone() })?;
                    (local, conifold, ("local P1xP1", "resolved conifold"))
                }
            };
            let keys: Vec<Bidegree> = match against {
                Against::Refined => graded_bidegrees(spec.cutoff),
                Against::Conifold => (0..=spec.cutoff).map(|r| (r, 0)).collect(),
            };
            let rows: Vec<CompareRow> = keys
                .into_iter()
                .map(|(r, s)| {
                    let (a, b) = (left.coeff((r, s)).unwrap(), right.coeff((r, s)).unwrap());
                    CompareRow { r, s, equal: a == b, left: a, right: b }
                })
                .collect();
            let doc = match cli.output {
                Output::Json => json(&rows)?,
                Output::Text => {
                    let cells: Vec<(String, String, String, &str)> = rows
                        .iter()
                        .map(|x| (format!("({},{})", x.r, x.s), x.left.to_string(), x.right.to_string(), if x.equal { "=" } else { "!=" }))
                        .collect();
                    let w1 = cells.iter().map(|c| c.1.len()).max().unwrap_or(0).max(labels.0.len());
                    let mut out = format!("{:<7}  {:<w1$}  {:<2}  {}", "(r,s)", labels.0, "", labels.1);
                    for (k, a, b, eq) in &cells {
                        out.push_str(&format!("\n{k:<7}  {a:<w1$}  {eq:<2}  {b}"));
                    }
                    out
                }
            };
            Ok((doc, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((doc, ok)) => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{doc}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
