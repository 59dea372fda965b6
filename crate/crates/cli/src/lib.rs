//! Command-line front end for `grassframe`: file formats, report emission
//! and the command surface of the `grassframe` binary.
//!
//! Exit codes: 0 success, 1 usage, 2 parse or validation error, 3 numerical
//! failure, 4 failed check.

pub mod check;
pub mod emit;
mod error;
pub mod format;
pub mod report;

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grassframe::constructions::{
    angle_catalog, circular_frame, double, mub_r2, naimark_complement, simplex_etf, six_in_r4,
};
use grassframe::coreanalysis::{classify_vector, core, isolable_set, validate_core};
use grassframe::frames::{gram, tightness};
use grassframe::{Tolerances, UnitVectorSystem};
use serde_json::{json, Value};

pub use error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "grassframe", version, about = "Coherence, isolability and core analysis of unit-vector systems")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Scalar equality tolerance (norms, tightness, multiplicities)
    #[arg(long, global = true)]
    pub tol_eq: Option<f64>,
    /// Neighbor tolerance: | |<x,y>| - coherence | at or below this is a neighbor
    #[arg(long, global = true)]
    pub tol_neighbor: Option<f64>,
    /// Residual below which a hull or cone distance counts as zero
    #[arg(long, global = true)]
    pub tol_hull: Option<f64>,
    /// Relative eigenvalue cutoff for numerical rank
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write output here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalArgs {
    /// Flags win over file overrides, which win over `base`.
    fn apply(&self, base: Tolerances) -> Tolerances {
        Tolerances {
            eq_abs: self.tol_eq.unwrap_or(base.eq_abs),
            neighbor_abs: self.tol_neighbor.unwrap_or(base.neighbor_abs),
            hull_abs: self.tol_hull.unwrap_or(base.hull_abs),
            rank_rel: self.tol_rank.unwrap_or(base.rank_rel),
            ..base
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one or more files ("-" or nothing reads standard input)
    Analyze { files: Vec<String> },
    /// Core iteration trace and validation
    Core { file: Option<String> },
    /// Isolability verdicts, for every vector or one
    Classify {
        file: Option<String>,
        #[arg(long)]
        index: Option<usize>,
    },
    /// Naimark complement, written as a frame file
    Naimark { file: Option<String> },
    /// Doubled system in twice the dimension, written as a frame file
    Double { file: Option<String> },
    /// Write a built-in frame
    Construct {
        #[command(subcommand)]
        frame: Construction,
    },
    /// Closed-form packing angles known for (m, n)
    Catalog {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Invariant suite; exits 4 if any invariant fails
    Check {
        file: Option<String>,
        /// Treat the input as a Grassmannian frame, so diagnostic failures count too
        #[arg(long)]
        grassmannian: bool,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum Construction {
    /// m equally spaced lines in the plane
    Circular {
        #[arg(long)]
        m: usize,
    },
    /// Six equiangular vectors in R^4 at angle 1/3
    SixInR4,
    /// Two mutually unbiased bases of R^2
    MubR2,
    /// n + 1 vectors of the regular simplex in R^n
    Simplex {
        #[arg(long)]
        n: usize,
    },
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code; errors go to `stderr`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 1;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let mut failure = None;
    let output = match execute(&cli, stdin, stderr, &mut failure) {
        Ok(out) => out,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.global.out {
        Some(path) => fs::write(path, &output).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout.write_all(output.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return e.exit_code();
    }
    match failure {
        Some(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
        None => 0,
    }
}

fn read_input(name: Option<&str>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match name {
        None | Some("-") => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            Ok(s)
        }
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        }),
    }
}

fn load(
    name: Option<&str>,
    stdin: &mut dyn Read,
    global: &GlobalArgs,
) -> Result<(UnitVectorSystem, Tolerances), CliError> {
    let text = read_input(name, stdin)?;
    system_from_text(&text, global)
}

fn system_from_text(text: &str, global: &GlobalArgs) -> Result<(UnitVectorSystem, Tolerances), CliError> {
    let file = format::parse_frame(text)?;
    let tol = global.apply(file.tolerances(Tolerances::default())).validated()?;
    Ok((file.system(&tol)?, tol))
}

fn source_name(name: Option<&str>) -> String {
    name.unwrap_or("-").to_string()
}

/// Produces the output text. Errors that still leave something to print
/// (a failed check, one bad file among several) go to `failure`.
fn execute(
    cli: &Cli,
    stdin: &mut dyn Read,
    stderr: &mut dyn Write,
    failure: &mut Option<CliError>,
) -> Result<String, CliError> {
    let g = &cli.global;
    let text_mode = g.format == OutputFormat::Text;
    match &cli.command {
        Command::Analyze { files } => analyze_files(files, stdin, g, stderr, failure),
        Command::Core { file } => {
            let (x, tol) = load(file.as_deref(), stdin, g)?;
            let trace = core(&x, &tol)?;
            let validation = validate_core(&x, &trace, &tol)?;
            if text_mode {
                let mut out = report::core_text(&trace);
                out.push_str(&format!("validation: {} ({})\n", validation.status, validation.size.detail));
                for w in &trace.warnings {
                    out.push_str(&format!("warning: {w}\n"));
                }
                Ok(out)
            } else {
                emit::report_json(&json!({
                    "source": source_name(file.as_deref()),
                    "tolerances": tol,
                    "trace": trace,
                    "validation": validation,
                }))
            }
        }
        Command::Classify { file, index } => {
            let (x, tol) = load(file.as_deref(), stdin, g)?;
            let verdicts = match index {
                Some(i) => vec![classify_vector(&x, *i, &tol)?],
                None => isolable_set(&x, &tol)?.verdicts,
            };
            if text_mode {
                Ok(report::verdict_table(&verdicts))
            } else {
                emit::report_json(&json!({
                    "source": source_name(file.as_deref()),
                    "coherence": gram(&x).coherence,
                    "tolerances": tol,
                    "verdicts": verdicts,
                }))
            }
        }
        Command::Naimark { file } => {
            let (x, tol) = load(file.as_deref(), stdin, g)?;
            let y = naimark_complement(&x, &tol)?;
            let summary = json!({
                "lambda": y.lambda,
                "multiplicity": y.multiplicity,
                "norm_error": y.norm_error,
                "gram_error": y.gram_error,
                "coherence_error": y.coherence_error,
                "coherence": gram(&y.system).coherence,
                "source_coherence": gram(&x).coherence,
                "tolerances": tol,
            });
            frame_output(&y.system, summary, text_mode)
        }
        Command::Double { file } => {
            let (x, tol) = load(file.as_deref(), stdin, g)?;
            let d = double(&x, &tol)?;
            let summary = json!({
                "coherence": gram(&d).coherence,
                "source_coherence": gram(&x).coherence,
                "tightness": tightness(&d, &tol),
                "source_tightness": tightness(&x, &tol),
                "tolerances": tol,
            });
            frame_output(&d, summary, text_mode)
        }
        Command::Construct { frame } => {
            let (x, name) = match frame {
                Construction::Circular { m } => (circular_frame(*m)?, format!("circular m = {m}")),
                Construction::SixInR4 => (six_in_r4(), "six-in-r4".to_string()),
                Construction::MubR2 => (mub_r2(), "mub-r2".to_string()),
                Construction::Simplex { n } => (simplex_etf(*n)?, format!("simplex n = {n}")),
            };
            let summary = json!({ "construction": name, "coherence": gram(&x).coherence });
            frame_output(&x, summary, text_mode)
        }
        Command::Catalog { m, n } => {
            let entries = angle_catalog(*m, *n);
            if text_mode {
                if entries.is_empty() {
                    return Ok("unknown\n".into());
                }
                Ok(entries
                    .iter()
                    .map(|e| {
                        let kind = serde_json::to_value(e.kind).ok();
                        format!(
                            "{} ({},{}) = {}  [{}]\n",
                            kind.as_ref().and_then(Value::as_str).unwrap_or("?"),
                            e.m,
                            e.n,
                            e.value,
                            e.rule
                        )
                    })
                    .collect())
            } else {
                emit::report_json(&json!({
                    "m": m,
                    "n": n,
                    "known": !entries.is_empty(),
                    "entries": entries,
                }))
            }
        }
        Command::Check { file, grassmannian } => {
            let (x, tol) = load(file.as_deref(), stdin, g)?;
            let r = check::run_checks(&source_name(file.as_deref()), &x, &tol, *grassmannian);
            if r.failed > 0 {
                *failure = Some(CliError::CheckFailed { failed: r.failed });
            }
            if text_mode {
                Ok(check::render_text(&r))
            } else {
                emit::report_json(&r)
            }
        }
    }
}

fn frame_output(x: &UnitVectorSystem, mut summary: Value, text_mode: bool) -> Result<String, CliError> {
    emit::round_floats(&mut summary);
    if text_mode {
        let header: Vec<String> = match &summary {
            Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {v}")).collect(),
            _ => Vec::new(),
        };
        Ok(format::frame_text(x, &header))
    } else {
        emit::json_string(&format::frame_value(x, Some(summary)))
    }
}

fn analyze_one(name: &str, text: &str, global: &GlobalArgs) -> Result<report::AnalysisReport, CliError> {
    let (x, tol) = system_from_text(text, global)?;
    report::analyze(name, &x, &tol, false)
}

/// Files are read up front, then analyzed on one thread each; results are
/// emitted in argument order.
fn analyze_files(
    files: &[String],
    stdin: &mut dyn Read,
    global: &GlobalArgs,
    stderr: &mut dyn Write,
    failure: &mut Option<CliError>,
) -> Result<String, CliError> {
    let names: Vec<String> = if files.is_empty() { vec!["-".into()] } else { files.to_vec() };
    let inputs: Vec<Result<String, CliError>> = names.iter().map(|n| read_input(Some(n), stdin)).collect();
    let results: Vec<Result<report::AnalysisReport, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .zip(inputs)
            .map(|(name, input)| scope.spawn(move || analyze_one(name, &input?, global)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis thread panicked"))
            .collect()
    });

    let text_mode = global.format == OutputFormat::Text;
    let single = names.len() == 1;
    let mut reports = Vec::new();
    for (name, r) in names.iter().zip(results) {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) if single => return Err(e),
            Err(e) => {
                let _ = writeln!(stderr, "error: {name}: {e}");
                let worse = failure.as_ref().is_none_or(|f| e.exit_code() > f.exit_code());
                if worse {
                    *failure = Some(e);
                }
            }
        }
    }
    if text_mode {
        Ok(reports.iter().map(report::render_text).collect::<Vec<_>>().join("\n"))
    } else if single {
        emit::report_json(&reports[0])
    } else {
        emit::report_json(&reports)
    }
}
