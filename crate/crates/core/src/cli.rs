//! The `lambek` command-line driver.
//!
//! Exit codes: 0 success, 1 a verdict failed, 2 usage or parse error,
//! 3 internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::check::{check_program, Mode};
use crate::enumerate::{enumerate_inhabitants, EnumerateError, SearchBudget};
use crate::eval::{EvalError, Evaluator, DEFAULT_FUEL};
use crate::semantics::{
    fundamental_smoke_decl, AlgebraKind, ProbeConfig, SemanticsError, SmokeVerdict,
};
use crate::syntax::{parse_program, parse_type, pretty_expr, pretty_type, Expr, Program};
use crate::theorems::{run_theorem, TheoremError, TheoremKind, TheoremSpec, TrialConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "lambek",
    version,
    about = "Ordered, linear and unrestricted lambda calculi"
)]
pub struct CliConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Typecheck every declaration.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Ordered)]
        mode: Mode,
    },
    /// Evaluate a declaration and print its value.
    Run {
        file: PathBuf,
        decl: String,
        #[arg(long, value_enum, default_value_t = Mode::Ordered)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Test a declaration against the resource predicate at its type.
    Predicate {
        file: PathBuf,
        decl: String,
        #[arg(long, value_enum, default_value_t = Mode::Ordered)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = AlgebraKind::Free)]
        algebra: AlgebraKind,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Count the normal inhabitants of a type.
    Count {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_enum, default_value_t = Mode::Ordered)]
        mode: Mode,
        /// Also print the inhabitants.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = SearchBudget::default().max_depth)]
        max_depth: usize,
        #[arg(long, default_value_t = SearchBudget::default().max_size)]
        max_size: usize,
    },
    /// Check a declaration against one of the free theorems.
    Theorems {
        file: PathBuf,
        #[arg(long, value_enum)]
        spec: TheoremKind,
        #[arg(long)]
        decl: String,
        /// Defaults to the mode the theorem is stated in.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, default_value_t = TrialConfig::default().max_len)]
        max_len: usize,
        #[arg(long, default_value_t = TrialConfig::default().trials)]
        trials: usize,
        #[arg(long, default_value_t = TrialConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
}

/// A failure that ends the command with a non-zero exit code.
#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

impl From<SemanticsError> for Failure {
    fn from(e: SemanticsError) -> Self {
        match e {
            SemanticsError::UnknownDeclaration(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::MalformedTree(_) => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn emit(&mut self, human: &str, record: Json) {
        // A closed pipe is not worth a different exit code.
        let _ = match self.format {
            Format::Human => writeln!(self.out, "{human}"),
            Format::Json => writeln!(self.out, "{record}"),
        };
    }
}

fn to_json<T: Serialize>(v: &T) -> Json {
    serde_json::to_value(v).expect("records serialize")
}

fn load(path: &Path) -> Result<Program, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_program(&text).map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))
}

/// Runs the driver on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut o = Output {
        format: config.format,
        out,
    };
    match dispatch(config.command, &mut o) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            match f {
                Failure::Usage(_) => EXIT_USAGE,
                Failure::Internal(_) => EXIT_INTERNAL,
            }
        }
    }
}

fn dispatch(command: Command, o: &mut Output<'_>) -> Result<i32, Failure> {
    match command {
        Command::Check { file, mode } => check(&file, mode, o),
        Command::Run {
            file,
            decl,
            mode,
            fuel,
        } => run_decl(&file, &decl, mode, fuel, o),
        Command::Predicate {
            file,
            decl,
            mode,
            algebra,
            fuel,
        } => predicate(&file, &decl, mode, algebra, fuel, o),
        Command::Count {
            ty,
            mode,
            list,
            max_depth,
            max_size,
        } => count(
            &ty,
            mode,
            list,
            SearchBudget {
                max_depth,
                max_size,
            },
            o,
        ),
        Command::Theorems {
            file,
            spec,
            decl,
            mode,
            max_len,
            trials,
            seed,
            fuel,
        } => {
            let config = TrialConfig {
                trials,
                max_len,
                seed,
                fuel,
            };
            theorems(
                &file,
                spec,
                &decl,
                mode.unwrap_or(spec.default_mode()),
                &config,
                o,
            )
        }
    }
}

fn check(file: &Path, mode: Mode, o: &mut Output<'_>) -> Result<i32, Failure> {
    let p = load(file)?;
    let mut all = true;
    for v in check_program(&p, mode) {
        all &= v.verdict.accepted;
        let first = v.verdict.diagnostics.first();
        let human = match first {
            None => format!("{}: accepted ({})", v.name, v.mode),
            Some(d) => format!("{}: rejected ({}) {d}", v.name, v.mode),
        };
        o.emit(
            &human,
            json!({
                "command": "check",
                "name": v.name,
                "mode": v.mode,
                "accepted": v.verdict.accepted,
                "rule": first.map(|d| d.rule.clone()),
                "diagnostics": v.verdict.diagnostics,
            }),
        );
    }
    Ok(if all { EXIT_OK } else { EXIT_VERDICT })
}

fn run_decl(
    file: &Path,
    decl: &str,
    mode: Mode,
    fuel: u64,
    o: &mut Output<'_>,
) -> Result<i32, Failure> {
    let p = load(file)?;
    if p.declaration(decl).is_none() {
        return Err(Failure::Usage(format!("no declaration named `{decl}`")));
    }
    let verdicts = check_program(&p, mode);
    let v = verdicts
        .iter()
        .find(|v| v.name == decl)
        .expect("one verdict per declaration");
    if let Some(d) = v.verdict.diagnostics.first() {
        o.emit(
            &format!("{decl}: rejected ({}) {d}", v.mode),
            json!({ "command": "run", "name": decl, "mode": v.mode, "accepted": false, "rule": d.rule, "diagnostics": v.verdict.diagnostics }),
        );
        return Ok(EXIT_VERDICT);
    }
    let mut ev = Evaluator::new(fuel).with_globals(&p);
    match ev.eval(&Expr::var(decl)) {
        Ok(value) => {
            let shown = value.to_string();
            o.emit(
                &shown,
                json!({ "command": "run", "name": decl, "mode": v.mode, "accepted": true, "value": shown, "fuel_left": ev.fuel() }),
            );
            Ok(EXIT_OK)
        }
        Err(e @ (EvalError::OutOfFuel | EvalError::DepthExceeded(_))) => {
            o.emit(
                &format!("{decl}: {e}"),
                json!({ "command": "run", "name": decl, "mode": v.mode, "accepted": true, "error": e.to_string() }),
            );
            Ok(EXIT_VERDICT)
        }
        Err(e) => Err(Failure::Internal(format!("{decl}: {e}"))),
    }
}

fn predicate(
    file: &Path,
    decl: &str,
    mode: Mode,
    algebra: AlgebraKind,
    fuel: u64,
    o: &mut Output<'_>,
) -> Result<i32, Failure> {
    let p = load(file)?;
    let config = ProbeConfig {
        fuel,
        algebra: Some(algebra),
        ..ProbeConfig::default()
    };
    let verdict = fundamental_smoke_decl(&p, decl, mode, &config)?;
    let human = match &verdict {
        SmokeVerdict::Holds { applications } => {
            format!("{decl}: holds ({applications} probe applications)")
        }
        SmokeVerdict::Fails { failure } => format!("{decl}: fails\n{failure}"),
        SmokeVerdict::Vacuous { reason } => format!("{decl}: vacuous, {reason}"),
    };
    let mut record =
        json!({ "command": "predicate", "name": decl, "mode": mode, "algebra": algebra });
    if let (Json::Object(r), Json::Object(v)) = (&mut record, to_json(&verdict)) {
        r.extend(v);
    }
    o.emit(&human, record);
    Ok(if verdict.holds() {
        EXIT_OK
    } else {
        EXIT_VERDICT
    })
}

fn count(
    src: &str,
    mode: Mode,
    list: bool,
    budget: SearchBudget,
    o: &mut Output<'_>,
) -> Result<i32, Failure> {
    let ty = parse_type(src).map_err(|e| Failure::Usage(format!("type:{e}")))?;
    let found = enumerate_inhabitants(&ty, mode, budget)?;
    let terms: Vec<String> = found.terms.iter().map(pretty_expr).collect();
    let mut human = found.terms.len().to_string();
    if found.truncated {
        human.push_str(" (truncated)");
    }
    if list {
        for t in &terms {
            human.push('\n');
            human.push_str(t);
        }
    }
    let mut record = json!({
        "command": "count",
        "type": pretty_type(&ty),
        "mode": mode,
        "count": found.terms.len(),
        "truncated": found.truncated,
    });
    if list {
        record["terms"] = json!(terms);
    }
    o.emit(&human, record);
    Ok(EXIT_OK)
}

fn theorems(
    file: &Path,
    kind: TheoremKind,
    decl: &str,
    mode: Mode,
    config: &TrialConfig,
    o: &mut Output<'_>,
) -> Result<i32, Failure> {
    let p = load(file)?;
    let report = run_theorem(&TheoremSpec::new(kind, mode), &p, decl, config)?;
    let mut human = if !report.typechecked {
        format!("{decl}: {kind} not applicable, rejected in {mode} mode")
    } else if report.failures.is_empty() {
        format!("{decl}: {kind} holds on {} trials ({mode})", report.trials)
    } else {
        format!(
            "{decl}: {kind} fails on {} of {} trials ({mode})",
            report.failures.len(),
            report.trials
        )
    };
    for f in report.failures.iter().take(5) {
        human.push_str(&format!(
            "\n  input {} gave {}, expected {}",
            f.input, f.actual, f.expected
        ));
    }
    if !report.realized.is_empty() {
        human.push_str(&format!("\n  realized: {}", report.realized.join(", ")));
    }
    let mut record = json!({ "command": "theorems", "name": decl, "clean": report.clean() });
    if let (Json::Object(r), Json::Object(v)) = (&mut record, to_json(&report)) {
        r.extend(v.into_iter().filter(|(k, _)| k != "program"));
    }
    o.emit(&human, record);
    Ok(if report.clean() {
        EXIT_OK
    } else {
        EXIT_VERDICT
    })
}
