mod report;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::RunReport;
use vertexlab::constructions::{Family, FamilyParams, FAMILIES};
use vertexlab::curves::{DEFAULT_SAMPLES, DEFAULT_TOL};
use vertexlab::verify::{run_suite, Suite, SuiteConfig, SUITES};

const SAMPLES_ENV: &str = "VERTEXLAB_SAMPLES";

#[derive(Parser, Debug)]
#[command(name = "vertexlab", version, about = "Vertices of closed curves on space forms and surfaces of revolution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family member; write its curvature CSV, SVG plot and JSON report.
    Build {
        /// flat-translation, flat-glide, horocycle, hyp-translation, hyp-glide,
        /// cyl2v, pair-flat, pair-hyp, neck or polar-cos5.
        #[arg(value_parser = parse_family)]
        family: Family,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Output directory.
        #[arg(long, default_value = "vertexlab-out")]
        out: PathBuf,
    },
    /// Run a verification suite; exit 1 if any check fails.
    Verify {
        /// kneser, maps, neck-limit, dichotomy, jackson, families or
        /// moebius-inflections.
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Number of random cases (kneser: 200, moebius-inflections: 50).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonArgs,
        /// Directory for the JSON report; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-emit a report as JSON, CSV or SVG.
    Export {
        report: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct ParamArgs {
    /// Period or neck length (default 1; 2π for neck).
    #[arg(long = "L")]
    l: Option<f64>,
    /// Perturbation amplitude (default 0.05·min(L, 1)).
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Horocycle height (default 1).
    #[arg(long)]
    h: Option<f64>,
    /// Offset of embedded pairs (default 0.5).
    #[arg(long)]
    eps: Option<f64>,
    /// Shape constant of the cylinder curve (default 0.09).
    #[arg(long)]
    a: Option<f64>,
    /// Target Gauss curvature of the neck profile (default 0).
    #[arg(long = "K", allow_negative_numbers = true)]
    k: Option<f64>,
}

impl From<ParamArgs> for FamilyParams {
    fn from(p: ParamArgs) -> Self {
        FamilyParams { l: p.l, lambda: p.lambda, h: p.h, eps: p.eps, a: p.a, k: p.k }
    }
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Profile grid size [default: $VERTEXLAB_SAMPLES or 4096].
    #[arg(long)]
    samples: Option<usize>,
    /// Relative tolerance for declaring κ′ identically zero.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Record wall time in the report (makes it run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::from_name(s).map_err(|_| {
        let names: Vec<&str> = FAMILIES.iter().map(|f| f.name()).collect();
        format!("unknown family '{s}'; expected one of: {}", names.join(", "))
    })
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::from_name(s).map_err(|_| {
        let names: Vec<&str> = SUITES.iter().map(|f| f.name()).collect();
        format!("unknown suite '{s}'; expected one of: {}", names.join(", "))
    })
}

fn samples(arg: Option<usize>) -> Result<usize> {
    let n = match (arg, std::env::var(SAMPLES_ENV)) {
        (Some(n), _) => n,
        (None, Ok(v)) => v.trim().parse().with_context(|| format!("{SAMPLES_ENV}={v} is not a sample count"))?,
        (None, Err(_)) => DEFAULT_SAMPLES,
    };
    if n < 64 {
        bail!("need at least 64 samples, got {n}");
    }
    Ok(n)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn cmd_build(family: Family, params: FamilyParams, common: CommonArgs, out: &Path, argv: Vec<String>) -> Result<()> {
    let start = Instant::now();
    let mut rep = RunReport::new(argv);
    let built = report::build(family, &params, samples(common.samples)?, common.tol, &mut rep)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let stem = family.name();
    write(&out.join(format!("{stem}.csv")), &built.profile.to_csv())?;
    let plot = svg::render(&built.family.curve, built.profile.len(), &built.vertex_params, &built.inflection_params);
    write(&out.join(format!("{stem}.svg")), &plot)?;
    if common.timing {
        rep.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    write(&out.join(format!("{stem}.json")), &rep.to_json()?)?;
    let count = match rep.vertices.as_ref().map(|v| &v["count"]) {
        Some(serde_json::Value::String(s)) => s.clone(),
        Some(v) => v.to_string(),
        None => String::new(),
    };
    println!("{stem}: {count} vertices; wrote {stem}.csv, {stem}.svg, {stem}.json to {}", out.display());
    for note in &rep.notes {
        println!("note: {note}");
    }
    Ok(())
}

fn cmd_verify(suite: Suite, cfg: SuiteConfig, timing: bool, out: Option<&Path>, argv: Vec<String>) -> Result<bool> {
    let start = Instant::now();
    let result = run_suite(suite, &cfg);
    let mut rep = RunReport::new(argv);
    rep.samples = Some(cfg.samples);
    rep.tol = Some(cfg.tol);
    rep.lines = result.checks.iter().map(|c| c.line()).collect();
    for line in &rep.lines {
        eprintln!("{line}");
    }
    let passed = result.passed();
    if let Some(first) = result.first_failure() {
        eprintln!("first failure: {}", first.line());
    }
    rep.suite = Some(result);
    if timing {
        rep.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    let json = rep.to_json()?;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            write(&dir.join(format!("{}.json", suite.name())), &json)?;
        }
        None => print!("{json}"),
    }
    Ok(passed)
}

fn cmd_export(path: &Path, format: Format, out: Option<&Path>) -> Result<()> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rep: RunReport = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let body = match format {
        Format::Json => rep.to_json()?,
        Format::Csv | Format::Svg => match (&rep.suite, rep.family) {
            (Some(suite), _) if format == Format::Csv => report::suite_csv(suite),
            (_, Some(family)) => {
                let params = rep.params.clone().unwrap_or_default();
                let mut scratch = RunReport::new(rep.command.clone());
                let n = rep.samples.unwrap_or(DEFAULT_SAMPLES);
                let built = report::build(family, &params, n, rep.tol.unwrap_or(DEFAULT_TOL), &mut scratch)?;
                if format == Format::Csv {
                    built.profile.to_csv()
                } else {
                    svg::render(&built.family.curve, built.profile.len(), &built.vertex_params, &built.inflection_params)
                }
            }
            _ => bail!("{} has no curve to export as {format:?}", path.display()),
        },
    };
    match out {
        Some(p) => write(p, &body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build { family, params, common, out } => cmd_build(family, params.into(), common, &out, argv).map(|_| true),
        Command::Verify { suite, n, seed, common, out } => samples(common.samples).and_then(|samples| {
            let cfg = SuiteConfig { samples, cases: n, seed, tol: common.tol };
            cmd_verify(suite, cfg, common.timing, out.as_deref(), argv)
        }),
        Command::Export { report, format, out } => cmd_export(&report, format, out.as_deref()).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
