use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use aqaw_cli::error::exit;
use aqaw_cli::eval::{cmd_eval, EvalArgs, EvalKind};
use aqaw_cli::output::pretty;
use aqaw_cli::table::{cmd_table, TableArgs, TableKind};
use aqaw_cli::verify::{cmd_verify, Suite};
use aqaw_cli::{CliError, OutputFormat, RunConfig};
use aqaw_core::{SolutionId, C64};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "aqaw", version, about = "Associated q-Askey-Wilson kernel: evaluate, verify, tabulate")]
struct Cli {
    /// JSON run configuration (params, tolerance, cf, output_format, seed).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for the randomized suites; overrides the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format; overrides the configuration.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Evaluate everything on the calling thread.
    #[arg(long, global = true)]
    serial: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    z_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z_im: Option<f64>,
}

impl PointArgs {
    fn z(&self) -> Option<C64> {
        match (self.z_re, self.z_im) {
            (None, None) => None,
            (re, im) => Some(C64::new(re.unwrap_or(0.0), im.unwrap_or(0.0))),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity.
    Eval {
        #[arg(value_enum)]
        kind: EvalKind,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        /// Solution S1..S6 for `eval solution`.
        #[arg(long, value_parser = parse_solution)]
        solution: Option<SolutionId>,
        /// Evaluate the solution at 1/u instead of u.
        #[arg(long)]
        inverse: bool,
        /// Numerator parameter (`re` or `re,im`); for W the six values a..f.
        #[arg(long = "num", value_parser = parse_complex, allow_hyphen_values = true)]
        numerators: Vec<C64>,
        /// Denominator parameter (`re` or `re,im`).
        #[arg(long = "den", value_parser = parse_complex, allow_hyphen_values = true)]
        denominators: Vec<C64>,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Emit a table as CSV or a JSON array.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Largest index of the coefficient table.
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 50)]
        depth: usize,
        #[arg(long, default_value_t = 101)]
        grid_n: usize,
        /// Write to this file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got {s:?}")),
    }
}

fn parse_solution(s: &str) -> Result<SolutionId, String> {
    SolutionId::parse(s).ok_or_else(|| format!("unknown solution {s:?}, expected S1..S6"))
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>, i32), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(format) = cli.format {
        cfg.output_format = format;
    }
    match cli.command {
        Command::Eval { kind, n, point, x, solution, inverse, numerators, denominators } => {
            let args = EvalArgs { n, z: point.z(), x, solution, inverse, numerators, denominators };
            let r = cmd_eval(kind, &cfg, &args)?;
            Ok((r.render(cfg.output_format), None, exit::OK))
        }
        Command::Verify { suite } => {
            let report = cmd_verify(suite, &cfg, cli.serial)?;
            let code = if report.passed { exit::OK } else { exit::VERIFICATION_FAILED };
            Ok((report.render(cfg.output_format), None, code))
        }
        Command::Table { kind, n, point, depth, grid_n, output } => {
            let args = TableArgs { grid_n, n_max: n, depth, z: point.z().unwrap_or(C64::new(2.0, 0.0)) };
            let t = cmd_table(kind, &cfg, &args, cli.serial)?;
            Ok((t.render(cfg.output_format), output, exit::OK))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(cli) {
        Ok((text, Some(path), code)) => match std::fs::write(&path, text) {
            Ok(()) => (String::new(), code),
            Err(e) => {
                let e = CliError::Io(e);
                (pretty(&e.to_json()), e.exit_code())
            }
        },
        Ok((text, None, code)) => (text, code),
        Err(e) => (pretty(&e.to_json()), e.exit_code()),
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
