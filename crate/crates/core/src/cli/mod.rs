//! Command-line front end.
//!
//! ```text
//! primitive-forge construct --expr "x^2" --interval 0 1 --level 2
//! primitive-forge integrate --expr "sin(x)" --interval 0 3.141592653589793 --tol 1e-4 --lipschitz 1
//! primitive-forge table --expr "exp(x)" --interval 0 1 --level 14 --format csv
//! ```
//!
//! Exit codes: 0 when the tolerance is met, 2 when it is not, 1 on any
//! input or I/O error (reported as a single `error:` line on stderr).

pub mod export;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engine::{construct_antiderivative, convergence_table, definite_integral, EngineConfig};
use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::oscillation::{Rigor, DEFAULT_SAMPLES};
use crate::partition::{DEFAULT_MAX_LEVEL, MAX_SUPPORTED_LEVEL};

use export::{
    construct_csv, guarantee, integrate_csv, table_csv, ConstructRecord, IntegrateRecord, PointRecord, RowRecord,
    TableRecord,
};

pub const MAX_LEVEL_ENV: &str = "PRIMITIVE_FORGE_MAX_LEVEL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_UNMET: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "primitive-forge",
    version,
    about = "Piecewise-quadratic antiderivatives with uniform error certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the antiderivative and emit its segments and certificate.
    Construct(RunArgs),
    /// Emit the definite integral over the interval and its certificate.
    Integrate(RunArgs),
    /// Emit one row per level: omega, bound and the integral.
    Table(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Integrand in x, e.g. "exp(x)*cos(x)".
    #[arg(long)]
    expr: String,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
    interval: Vec<f64>,
    /// Target bound on the uniform error.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Use exactly this level instead of the stopping rule (last row for `table`).
    #[arg(long)]
    level: Option<u32>,
    #[arg(long, env = MAX_LEVEL_ENV, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: u32,
    /// Samples per partition member.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Lipschitz constant of the integrand; makes the bound rigorous.
    #[arg(long, allow_negative_numbers = true)]
    lipschitz: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Comma-separated points at which to evaluate the antiderivative.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    eval: Vec<f64>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Construct,
    Integrate,
    Table,
}

/// Validated command-line settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub expression: String,
    pub interval: (f64, f64),
    pub tolerance: f64,
    pub max_level: u32,
    pub fixed_level: Option<u32>,
    pub rigor: Rigor,
    pub samples: usize,
    pub format: Format,
    pub eval_points: Vec<f64>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn from_args(mode: Mode, args: RunArgs) -> Result<Self> {
        let (a, b) = (args.interval[0], args.interval[1]);
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInterval { a, b });
        }
        if !(1..=MAX_SUPPORTED_LEVEL).contains(&args.max_level) {
            return Err(Error::LevelOutOfRange {
                level: args.max_level,
                max: MAX_SUPPORTED_LEVEL,
            });
        }
        if mode != Mode::Construct && !args.eval.is_empty() {
            return Err(Error::InvalidArgument("--eval is only valid with construct".into()));
        }
        if let Some(x) = args.eval.iter().find(|x| !(a..=b).contains(*x)) {
            return Err(Error::OutOfDomain { x: *x, a, b });
        }
        let rigor = match args.lipschitz {
            Some(l) => Rigor::Lipschitz(l),
            None => Rigor::Sampled,
        };
        let cfg = Self {
            mode,
            expression: args.expr,
            interval: (a, b),
            tolerance: args.tol,
            max_level: args.max_level,
            fixed_level: args.level,
            rigor,
            samples: args.samples,
            format: args.format,
            eval_points: args.eval,
            out: args.out,
        };
        cfg.engine().validate()?;
        Ok(cfg)
    }

    pub fn engine(&self) -> EngineConfig {
        EngineConfig {
            tolerance: self.tolerance,
            max_level: self.max_level,
            rigor: self.rigor,
            samples_per_interval: self.samples,
            fixed_level: self.fixed_level,
        }
    }
}

struct Rendered {
    text: String,
    met: bool,
}

fn execute(cfg: &RunConfig) -> Result<Rendered> {
    let f = Expression::parse(&cfg.expression)?;
    let (a, b) = cfg.interval;
    let engine = cfg.engine();
    match cfg.mode {
        Mode::Construct => {
            let (pq, cert) = construct_antiderivative(&f, a, b, &engine)?;
            let mut record = ConstructRecord::new(&cfg.expression, &pq, &cert);
            record.points = cfg
                .eval_points
                .iter()
                .map(|&x| {
                    Ok(PointRecord {
                        x,
                        value: pq.eval(x)?,
                        error_bound: cert.error_bound_at(x)?,
                    })
                })
                .collect::<Result<_>>()?;
            let text = match cfg.format {
                Format::Json => json(&record),
                Format::Csv => construct_csv(&record),
            };
            Ok(Rendered { text, met: cert.met })
        }
        Mode::Integrate => {
            let (value, cert) = definite_integral(&f, a, b, &engine)?;
            let record = IntegrateRecord {
                expression: cfg.expression.clone(),
                value,
                certificate: (&cert).into(),
            };
            let text = match cfg.format {
                Format::Json => json(&record),
                Format::Csv => integrate_csv(&record),
            };
            Ok(Rendered { text, met: cert.met })
        }
        Mode::Table => {
            let rows = convergence_table(&f, a, b, &engine)?;
            let met = rows.last().is_some_and(|r| r.met);
            let record = TableRecord {
                expression: cfg.expression.clone(),
                interval: [a, b],
                tolerance: cfg.tolerance,
                rigor: cfg.rigor.label().to_string(),
                lipschitz: cfg.rigor.lipschitz(),
                guarantee: guarantee(cfg.rigor.is_certified()).to_string(),
                samples: cfg.samples,
                rows: rows.iter().map(RowRecord::from).collect(),
            };
            let text = match cfg.format {
                Format::Json => json(&record),
                Format::Csv => table_csv(&record),
            };
            Ok(Rendered { text, met })
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("records serialize");
    text.push('\n');
    text
}

fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, ArgsOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ArgsOutcome::Clap)?;
    let (mode, args) = match cli.command {
        Command::Construct(args) => (Mode::Construct, args),
        Command::Integrate(args) => (Mode::Integrate, args),
        Command::Table(args) => (Mode::Table, args),
    };
    RunConfig::from_args(mode, args).map_err(ArgsOutcome::Invalid)
}

enum ArgsOutcome {
    Clap(clap::Error),
    Invalid(Error),
}

/// Runs the CLI with explicit output streams; returns the exit code.
pub fn run_with_io<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(cfg) => cfg,
        Err(ArgsOutcome::Clap(e)) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return EXIT_OK;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "error: {}", line.trim_start_matches("error: "));
            return EXIT_INPUT_ERROR;
        }
        Err(ArgsOutcome::Invalid(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };

    let rendered = match execute(&cfg) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };

    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &rendered.text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(rendered.text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_INPUT_ERROR;
    }

    if rendered.met {
        EXIT_OK
    } else {
        EXIT_UNMET
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}
