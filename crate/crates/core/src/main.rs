use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use stairdepth::covering::{check_family, cover_pair};
use stairdepth::depth::{flat_depth, tukey_depth, AffineFlat, PointSet};
use stairdepth::flats::{cover_flat, fixtures, generate};
use stairdepth::grid::GridParams;
use stairdepth::pipeline::{line_depth_sweep, LineSource, Pipeline};
use stairdepth::scalar::{parse_scalar_list, to_fraction_string};
use stairdepth::{stair, verify, AxisBox, Point};

/// Exact stair-convexity and line-depth tools for the stretched grid.
#[derive(Parser)]
#[command(name = "stairdepth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lines {
    Pairs,
    Random,
    Axis,
}

#[derive(Clone, Copy, ValueEnum)]
enum DepthKind {
    Point,
    Flat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Cover,
    Lemma4,
    Lemma1,
    Depth,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the stretched grid and its parameters.
    Grid {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Cover two points with stair-halfspaces.
    Cover {
        #[arg(long)]
        d: usize,
        /// Comma-separated rationals, e.g. `1/2,3`.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        verify: bool,
    },
    /// Cover a stair-flat from the fixture library or a seeded random one.
    Coverflat {
        #[arg(long, conflicts_with = "random")]
        fixture: Option<String>,
        #[arg(long, requires_all = ["d", "k"])]
        random: bool,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        verify: bool,
    },
    /// Tukey depth of a point, or of a flat given by a base point and directions.
    Depth {
        #[arg(value_enum)]
        kind: DepthKind,
        /// JSON file `{"points": [["p/q", ...], ...]}`.
        #[arg(long)]
        set: std::path::PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        query: String,
        #[arg(long = "dir", allow_hyphen_values = true)]
        dirs: Vec<String>,
    },
    /// Shallow halfspaces for lines through the stretched grid.
    Theorem1 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "random")]
        lines: Lines,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the exact line depth.
        #[arg(long)]
        no_depth: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Run built-in self-checks.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

fn line(text: &str) -> anyhow::Result<()> {
    writeln!(std::io::stdout().lock(), "{text}")?;
    Ok(())
}

fn emit<T: Serialize>(v: &T) -> anyhow::Result<()> {
    line(&serde_json::to_string(v)?)
}

fn point(s: &str, d: Option<usize>) -> anyhow::Result<Point> {
    let p = Point::try_new(parse_scalar_list(s)?)?;
    if let Some(d) = d {
        if p.dim() != d {
            bail!("expected {d} coordinates, got {}", p.dim());
        }
    }
    Ok(p)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Grid { d, m, emit: format } => {
            let g = GridParams::new(d, m)?;
            match format {
                Emit::Json => {
                    emit(&json!({ "params": g, "n": g.n() }))?;
                    for (idx, p) in g.indices().iter().zip(g.points()) {
                        emit(&json!({ "index": idx, "point": p }))?;
                    }
                }
                Emit::Csv => {
                    let head: Vec<String> = (0..d)
                        .map(|i| format!("j{i}"))
                        .chain((0..d).map(|i| format!("x{i}")))
                        .collect();
                    line(&head.join(","))?;
                    for (idx, p) in g.indices().iter().zip(g.points()) {
                        let cells: Vec<String> = idx
                            .iter()
                            .map(usize::to_string)
                            .chain(p.coords().iter().map(|c| c.to_integer().to_string()))
                            .collect();
                        line(&cells.join(","))?;
                    }
                }
            }
            Ok(true)
        }
        Command::Cover { d, p, q, verify } => {
            let (p, q) = (point(&p, Some(d))?, point(&q, Some(d))?);
            let fam = cover_pair(&p, &q)?;
            if verify {
                let cert = check_family(&fam, &p, &q)?;
                let passed = cert.passed;
                emit(&json!({ "family": fam, "certificate": cert }))?;
                Ok(passed)
            } else {
                emit(&json!({ "family": fam }))?;
                Ok(true)
            }
        }
        Command::Coverflat {
            fixture,
            random,
            d,
            k,
            seed,
            verify,
        } => {
            let flat = match (fixture, random) {
                (Some(name), _) => fixtures::by_name(&name).with_context(|| {
                    let known: Vec<&str> = fixtures::NAMES.iter().map(|(n, _)| *n).collect();
                    format!("unknown fixture {name}; known: {}", known.join(", "))
                })?,
                (None, true) => generate::random_diagonal(d.unwrap_or(0), k.unwrap_or(0), seed)?,
                (None, false) => bail!("give --fixture NAME or --random --d D --k K"),
            };
            let fam = cover_flat(&flat)?;
            if verify {
                let cert = if fam.members.is_empty() {
                    None
                } else {
                    Some(stair::verify_cover(
                        &fam.members,
                        fam.delta,
                        &AxisBox::unbounded(fam.dim),
                    )?)
                };
                let passed = cert.as_ref().map_or(fam.delta == 0, |c| c.passed);
                emit(&json!({ "family": fam, "certificate": cert }))?;
                Ok(passed)
            } else {
                emit(&json!({ "family": fam }))?;
                Ok(true)
            }
        }
        Command::Depth {
            kind,
            set,
            query,
            dirs,
        } => {
            let text = std::fs::read_to_string(&set)
                .with_context(|| format!("reading {}", set.display()))?;
            let s: PointSet = serde_json::from_str(&text).context("parsing point set")?;
            let s = PointSet::new(s.points)?;
            let x = point(&query, s.dim())?;
            let result = match kind {
                DepthKind::Point => tukey_depth(&s, &x)?,
                DepthKind::Flat => {
                    let dirs = dirs
                        .iter()
                        .map(|v| point(v, Some(x.dim())))
                        .collect::<anyhow::Result<Vec<_>>>()?;
                    flat_depth(&s, &AffineFlat::new(x, dirs)?)?
                }
            };
            emit(
                &json!({ "depth": result.depth, "witness": result.witness, "count": result.depth }),
            )?;
            Ok(true)
        }
        Command::Theorem1 {
            d,
            m,
            lines,
            count,
            seed,
            no_depth,
            csv,
        } => {
            let pipe = Pipeline::new(GridParams::new(d, m)?)?;
            let source = match lines {
                Lines::Pairs => LineSource::GridPairs,
                Lines::Random => LineSource::Random { count, seed },
                Lines::Axis => LineSource::AxisLines,
            };
            let report = line_depth_sweep(&pipe, &source.lines(&pipe), !no_depth)?;
            if csv {
                line("index,trivial,depth,count_h2,count_h3,failures")?;
                for r in &report.rows {
                    let depth = r.depth.map_or(String::new(), |v| v.to_string());
                    line(&format!(
                        "{},{},{},{},{},{}",
                        r.index,
                        r.trivial,
                        depth,
                        r.count_h2,
                        r.count_h3,
                        r.failures.len()
                    ))?;
                }
            } else {
                for r in &report.rows {
                    emit(r)?;
                }
            }
            let ratio = |v: Option<stairdepth::Scalar>| v.as_ref().map(to_fraction_string);
            emit(&json!({
                "summary": {
                    "d": report.d, "m": report.m, "n": report.n, "lines": report.rows.len(),
                    "slack_constant": report.slack_constant, "bound": to_fraction_string(&report.bound),
                    "max_depth": report.max_depth, "max_count_h3": report.max_count_h3,
                    "max_depth_ratio": ratio(report.max_depth_ratio()),
                    "max_count_ratio": ratio(report.max_count_ratio()),
                    "failures": report.failures(),
                }
            }))?;
            Ok(report.failures() == 0)
        }
        Command::Verify { suite } => {
            let name = match suite {
                Suite::All => "all",
                Suite::Cover => "cover",
                Suite::Lemma4 => "lemma4",
                Suite::Lemma1 => "lemma1",
                Suite::Depth => "depth",
            };
            let records = verify::run_suite(name)?;
            for r in &records {
                emit(r)?;
            }
            Ok(records.iter().all(|r| r.passed))
        }
    }
}

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("STAIRDEPTH_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e)
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
