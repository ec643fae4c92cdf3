//! Command-line front end.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::error::{Error, Result};
use crate::formats::{parse_edge_list, trajectory_csv, OperatorDump, WalkSpec};
use crate::instance::{demo, generate_instance, Instance, ScheduleMode, DEMOS};
use crate::quantum::BuildConfig;
use crate::verifier::{run_matched_observed, MatchReport, MatchTolerances};

/// Build the coined quantum walk that reproduces a random walk and verify the match.
#[derive(Debug, Clone, Parser)]
#[command(name = "walkmatch", version)]
pub struct Cli {
    /// Edge-list file (`u v` per line).
    #[arg(long, requires = "walk", conflicts_with_all = ["demo", "seed"])]
    pub graph: Option<PathBuf>,
    /// Walk-spec JSON file.
    #[arg(long, requires = "graph")]
    pub walk: Option<PathBuf>,
    /// Built-in instance: cycle4, k3 or path5-lazy.
    #[arg(long, conflicts_with = "seed")]
    pub demo: Option<String>,
    /// Seed for a random instance.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Vertex count of the random instance [default: 8].
    #[arg(long, requires = "seed")]
    pub n: Option<usize>,
    /// Schedule kind of the random instance [default: nonhomogeneous].
    #[arg(long, value_enum, requires = "seed")]
    pub mode: Option<ScheduleMode>,
    /// Number of walk steps.
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// Tolerance on max |mu(v,t) - pi_v(t)|.
    #[arg(long = "tol", default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Output directory.
    #[arg(long = "out", default_value = "walkmatch-out")]
    pub output_dir: PathBuf,
    /// Also write operators/t<k>.json for every step.
    #[arg(long)]
    pub dump_operators: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Files { graph: PathBuf, walk: PathBuf },
    Demo(String),
    Random { seed: u64, n: usize, mode: ScheduleMode },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub source: Source,
    pub steps: usize,
    pub tolerance: f64,
    pub output_dir: PathBuf,
    pub dump_operators: bool,
}

impl TryFrom<Cli> for RunSpec {
    type Error = Error;

    fn try_from(cli: Cli) -> Result<Self> {
        if cli.seed.is_none() && (cli.n.is_some() || cli.mode.is_some()) {
            return Err(Error::Parse("--n and --mode only apply with --seed".into()));
        }
        let source = match (cli.graph, cli.walk, cli.demo, cli.seed) {
            (Some(graph), Some(walk), None, None) => Source::Files { graph, walk },
            (None, None, Some(name), None) => Source::Demo(name),
            (None, None, None, Some(seed)) => Source::Random {
                seed,
                n: cli.n.unwrap_or(8),
                mode: cli.mode.unwrap_or_default(),
            },
            _ => {
                return Err(Error::Parse(
                    "give exactly one of --graph/--walk, --demo, or --seed".into(),
                ))
            }
        };
        if cli.tolerance.is_nan() || cli.tolerance <= 0.0 {
            return Err(Error::Parse(format!("--tol must be positive, got {}", cli.tolerance)));
        }
        Ok(Self {
            source,
            steps: cli.steps,
            tolerance: cli.tolerance,
            output_dir: cli.output_dir,
            dump_operators: cli.dump_operators,
        })
    }
}

/// Failure to produce a report at all.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Walk(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn read(path: &Path) -> std::result::Result<String, RunError> {
    fs::read_to_string(path).map_err(|source| RunError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> std::result::Result<(), RunError> {
    fs::write(path, contents).map_err(|source| RunError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_instance(source: &Source) -> std::result::Result<Instance, RunError> {
    match source {
        Source::Files { graph, walk } => {
            let (g, labels) = parse_edge_list(&read(graph)?)?;
            let (schedule, initial) = WalkSpec::from_json(&read(walk)?)?.resolve(g.vertex_count())?;
            Ok(Instance {
                graph: g,
                schedule,
                initial,
                labels,
            })
        }
        Source::Demo(name) => demo(name).ok_or_else(|| {
            Error::Parse(format!("unknown demo `{name}` (available: {})", DEMOS.join(", "))).into()
        }),
        Source::Random { seed, n, mode } => Ok(generate_instance(*seed, *n, *mode)?),
    }
}

/// Runs the matched construction and writes `trajectory.csv`, `report.json`
/// and, if requested, `operators/t<k>.json` into the output directory.
pub fn run(spec: &RunSpec) -> std::result::Result<MatchReport, RunError> {
    let instance = load_instance(&spec.source)?;
    let out = &spec.output_dir;
    let mkdir = |p: &Path| {
        fs::create_dir_all(p).map_err(|source| RunError::Io {
            path: p.to_owned(),
            source,
        })
    };
    mkdir(out)?;
    let ops_dir = out.join("operators");
    if spec.dump_operators {
        mkdir(&ops_dir)?;
    }

    let mut dumps = Vec::new();
    let report = run_matched_observed(
        &instance.graph,
        &instance.schedule,
        &instance.initial,
        spec.steps,
        &BuildConfig::default(),
        MatchTolerances::with_deviation(spec.tolerance),
        |walk, rec| {
            if spec.dump_operators {
                dumps.push(OperatorDump::new(rec.t, walk.shift(), &rec.coin));
            }
        },
    )?;

    write(&out.join("trajectory.csv"), &trajectory_csv(&report, &instance.labels))?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write(&out.join("report.json"), &(json + "\n"))?;
    for dump in &dumps {
        write(&ops_dir.join(format!("t{}.json", dump.t)), &(dump.to_json() + "\n"))?;
    }
    Ok(report)
}

/// Process exit status: 0 when the walks matched, 1 on an invariant breach,
/// 2 when no report could be produced.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let spec = match RunSpec::try_from(cli) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match run(&spec) {
        Ok(report) if report.passed => {
            println!(
                "matched {} steps: max |mu - pi| = {:e}",
                report.horizon, report.max_abs_deviation
            );
            0
        }
        Ok(report) => {
            for f in &report.failures {
                eprintln!("breach: {f}");
            }
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
