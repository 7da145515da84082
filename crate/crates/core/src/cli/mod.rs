//! Command-line front end. [`run`] parses arguments, dispatches to a
//! subcommand and returns the process exit code.

mod algebra;
mod check;
mod idspace;
mod reproduce;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebras::spec::{build_builtin, from_json, BuiltinParams, ScalarText};
use crate::algebras::{AlgError, Built};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "tortken",
    version,
    about = "Exact identity checks, identity spaces and ideals of nonassociative algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print an algebra's table and predicates, or run its defining checks
    Algebra {
        #[arg(value_enum)]
        action: AlgebraAction,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Decide whether a polynomial is an identity of an algebra
    Check(check::CheckArgs),
    /// Multilinear identity space of a given degree
    Idspace(idspace::IdspaceArgs),
    /// Certify simplicity of a finite algebra
    Simplicity {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Regenerate one of the fixed reports
    Reproduce {
        #[arg(value_enum)]
        target: reproduce::Target,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraAction {
    Show,
    Validate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for random trials and random constructions
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random dense assignments for non-multilinear identities
    #[arg(long, default_value_t = 64)]
    pub trials: usize,
}

/// Selects an algebra: a built-in construction with parameters, or a JSON
/// specification file.
#[derive(Args, Debug, Clone, Default)]
pub struct AlgebraArgs {
    /// divided-power, gametic, novikov, symmetric, osborn, osborn-plus,
    /// osborn-plus-explicit, osborn-bar, osborn-laurent, integration, square,
    /// p2, random-commutative, lie2, tensor-leibniz
    #[arg(long, value_name = "KIND", conflicts_with = "spec")]
    pub builtin: Option<String>,
    /// JSON algebra: a built-in `{"kind", "params"}` or a `structure_constants` table
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long = "N", value_name = "N")]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    /// Degree window `LO..HI` of a graded construction
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    pub window: Option<(i64, i64)>,
    #[arg(long)]
    pub variant: Option<String>,
    /// Field characteristic for constructions over any field (0 = Q)
    #[arg(long = "char")]
    pub characteristic: Option<u64>,
    /// Apply `plus`, `minus` or `opposite` after construction
    #[arg(long)]
    pub transform: Option<String>,
}

pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got '{s}'"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound '{lo}'"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound '{hi}'"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<AlgError> for UsageError {
    fn from(e: AlgError) -> UsageError {
        UsageError(e.to_string())
    }
}

impl From<crate::identcheck::CheckError> for UsageError {
    fn from(e: crate::identcheck::CheckError) -> UsageError {
        UsageError(e.to_string())
    }
}

impl From<crate::idealtool::IdealError> for UsageError {
    fn from(e: crate::idealtool::IdealError) -> UsageError {
        UsageError(e.to_string())
    }
}

impl From<crate::freepoly::PolyError> for UsageError {
    fn from(e: crate::freepoly::PolyError) -> UsageError {
        UsageError(e.to_string())
    }
}

impl AlgebraArgs {
    pub fn is_given(&self) -> bool {
        self.builtin.is_some() || self.spec.is_some()
    }

    fn params(&self, seed: u64) -> BuiltinParams {
        BuiltinParams {
            p: self.p,
            m: self.m,
            alpha: self.alpha.clone().map(ScalarText::Text),
            beta: self.beta.clone().map(ScalarText::Text),
            dim: self.dim,
            n: self.n,
            k: self.k,
            l: self.l,
            window: self.window,
            variant: self.variant.clone(),
            seed: Some(seed),
            characteristic: self.characteristic,
            transform: self.transform.clone(),
        }
    }

    /// The constructor kind, for built-ins and JSON built-in specs.
    pub fn kind(&self) -> Result<Option<String>, UsageError> {
        if let Some(b) = &self.builtin {
            return Ok(Some(b.clone()));
        }
        let Some(path) = &self.spec else {
            return Ok(None);
        };
        let text = read(path)?;
        let v: Value = serde_json::from_str(&text).map_err(|e| UsageError(format!("$: {e}")))?;
        Ok(v.get("kind")
            .and_then(Value::as_str)
            .filter(|k| *k != "structure_constants")
            .map(str::to_string))
    }

    pub fn build(&self, seed: u64) -> Result<Built, UsageError> {
        match (&self.builtin, &self.spec) {
            (Some(kind), _) => Ok(build_builtin(kind, &self.params(seed))?),
            (None, Some(path)) => Ok(from_json(&read(path)?)?),
            (None, None) => Err(UsageError(
                "no algebra given: use --builtin KIND or --spec FILE".into(),
            )),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, UsageError> {
    std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

/// Output of a subcommand in both formats.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

pub(crate) fn header(command: &str, out: &OutputArgs) -> String {
    format!(
        "# tortken {command} seed={} trials={}\n",
        out.seed, out.trials
    )
}

pub(crate) fn json_header(command: &str, out: &OutputArgs, body: Value) -> Value {
    let mut v = json!({
        "command": command,
        "seed": out.seed,
        "trials": out.trials,
    });
    if let (Some(obj), Value::Object(body)) = (v.as_object_mut(), body) {
        obj.extend(body);
    }
    v
}

fn dispatch(cli: Cli) -> Result<(Report, Format), UsageError> {
    Ok(match cli.command {
        Command::Algebra { action, alg, out } => (algebra::run(action, &alg, &out)?, out.format),
        Command::Check(args) => {
            let f = args.out.format;
            (check::run(&args)?, f)
        }
        Command::Idspace(args) => {
            let f = args.out.format;
            (idspace::run(&args)?, f)
        }
        Command::Simplicity { alg, out } => (algebra::simplicity(&alg, &out)?, out.format),
        Command::Reproduce { target, out } => (reproduce::run(target, &out)?, out.format),
    })
}

/// Runs the command line `args` (including the program name), writing
/// reports to `stdout` and diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli) {
        Ok((report, format)) => {
            let _ = match format {
                Format::Text => write!(stdout, "{}", report.text),
                Format::Json => writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("json value")
                ),
            };
            report.code
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}
