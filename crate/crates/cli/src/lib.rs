//! Command-line driver for `sapta`.
//!
//! [`run`] does all the work on an already-parsed [`RunConfig`] and returns
//! the exit status with the text to print, so it can be tested without a
//! process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sapta_core::logic::{CONNECTIVES, IMPLICATION};
use sapta_core::scenarios::{
    self, AliceOutcome, EprBasis, Perspective, ScenarioReport, SlitSetup, SpinOutcome,
};
use sapta_core::semantics::ExtensionalReading;
use sapta_core::syntax::{parse_file, pretty, ParseError};
use sapta_core::{
    classify_with, evaluate_closed, mutual_exclusivity_certificate, EvalError, EvalOptions,
    IncompatibilityMode, JudgmentSet, Model, SourceSpan, Tv3,
};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "sapta",
    version,
    about = "Contextual seven-valued predication toolkit"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled scenarios.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// How incompatibility between contexts is decided.
    #[arg(long, global = true, value_enum, default_value_t = Incompat::Relational)]
    incompat: Incompat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Incompat {
    Relational,
    Extensional,
    ExtensionalEverywhere,
}

impl From<Incompat> for IncompatibilityMode {
    fn from(i: Incompat) -> Self {
        match i {
            Incompat::Relational => IncompatibilityMode::Relational,
            Incompat::Extensional => {
                IncompatibilityMode::Extensional(ExtensionalReading::Somewhere)
            }
            Incompat::ExtensionalEverywhere => {
                IncompatibilityMode::Extensional(ExtensionalReading::Everywhere)
            }
        }
    }
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Parse a formula file and print its syntax trees.
    Parse {
        /// Formula file, or `-` for stdin.
        file: PathBuf,
    },
    /// Evaluate every formula in a file over a model.
    Eval {
        file: PathBuf,
        #[arg(long)]
        model: PathBuf,
    },
    /// Classify a judgment set into one of the seven predications.
    Classify {
        /// Judgment file; alternative to `--judgments`.
        #[arg(
            value_name = "JUDGMENTS",
            conflicts_with = "judgments",
            required_unless_present = "judgments"
        )]
        path: Option<PathBuf>,
        #[arg(long)]
        judgments: Option<PathBuf>,
        #[arg(long)]
        model: PathBuf,
        /// Predicate to classify; required when the judgments mention several.
        #[arg(long)]
        predicate: Option<String>,
    },
    /// Run one built-in scenario.
    Scenario {
        #[command(subcommand)]
        scenario: Scenario,
    },
    /// Run every built-in scenario against its pinned predication.
    Corpus {
        /// Number of cat openings for the frequency check.
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
    },
    /// Print the 21-row mutual exclusivity certificate.
    Exclusivity,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Scenario {
    #[command(name = "double_slit", alias = "double-slit")]
    DoubleSlit(DoubleSlitArgs),
    Cat(CatArgs),
    Wigner(WignerArgs),
    Epr(EprArgs),
    Qcc,
    Threshold(ThresholdArgs),
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct DoubleSlitArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Setup::OneSlitObserved, Setup::OneSlitUnobserved, Setup::TwoSlitsUnobserved])]
    setups: Vec<Setup>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Setup {
    OneSlitObserved,
    OneSlitUnobserved,
    TwoSlitsUnobserved,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct CatArgs {
    /// Leave the box closed.
    #[arg(long)]
    closed: bool,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct WignerArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [View::Friend, View::Wigner])]
    perspectives: Vec<View>,
    /// The friend finds spin down instead of spin up.
    #[arg(long)]
    spin_down: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum View {
    Friend,
    Wigner,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct EprArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Basis::ZeroOne, Basis::PlusMinus])]
    bases: Vec<Basis>,
    /// Alice obtains A1 or A- instead of A0 or A+.
    #[arg(long)]
    second_outcome: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Basis {
    ZeroOne,
    PlusMinus,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct ThresholdArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 2.0, 3.0, 4.5, 6.0], allow_negative_numbers = true)]
    levels: Vec<f64>,
    #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
    lower: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    upper: f64,
}

/// One parsed invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub seed: u64,
    pub incompatibility: IncompatibilityMode,
    /// ANSI color in text output.
    pub color: bool,
}

impl RunConfig {
    pub fn from_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        Ok(RunConfig {
            command: cli.command,
            format: cli.format,
            seed: cli.seed,
            incompatibility: cli.incompat.into(),
            color: false,
        })
    }

    /// Input files named on the command line.
    pub fn input_paths(&self) -> Vec<&Path> {
        match &self.command {
            Command::Parse { file } => vec![file.as_path()],
            Command::Eval { file, model } => vec![file.as_path(), model.as_path()],
            Command::Classify {
                path,
                judgments,
                model,
                ..
            } => path
                .iter()
                .chain(judgments)
                .chain([model])
                .map(PathBuf::as_path)
                .collect(),
            _ => vec![],
        }
    }

    pub fn reads_stdin(&self) -> bool {
        self.input_paths().iter().any(|p| p.as_os_str() == "-")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    path: Option<String>,
    span: Option<SourceSpan>,
}

impl Failure {
    fn input(kind: &'static str, message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            kind,
            message: message.into(),
            path: None,
            span: None,
        }
    }

    fn at(mut self, path: &Path) -> Failure {
        self.path = Some(path.display().to_string());
        self
    }

    fn with_span(mut self, span: SourceSpan) -> Failure {
        self.span = Some(span);
        self
    }

    fn to_json(&self) -> Value {
        let mut e = json!({ "kind": self.kind, "message": self.message });
        if let Some(p) = &self.path {
            e["path"] = json!(p);
        }
        if let Some(s) = &self.span {
            e["span"] = json!(s);
        }
        json!({ "error": e })
    }

    fn to_text(&self) -> String {
        match &self.path {
            Some(p) => format!("error: {p}: {}\n", self.message),
            None => format!("error: {}\n", self.message),
        }
    }
}

fn parse_failure(e: &ParseError, path: &Path) -> Failure {
    let kind = match e {
        ParseError::Syntax(_) => "syntax",
        ParseError::UnboundVariable { .. } => "unbound-variable",
    };
    Failure::input(kind, e.to_string())
        .at(path)
        .with_span(e.span())
}

struct Ctx<'a> {
    config: &'a RunConfig,
    stdin: Option<&'a str>,
}

impl Ctx<'_> {
    fn read(&self, path: &Path) -> Result<String, Failure> {
        if path.as_os_str() == "-" {
            return self
                .stdin
                .map(str::to_string)
                .ok_or_else(|| Failure::input("io", "no standard input available").at(path));
        }
        std::fs::read_to_string(path)
            .map_err(|e| Failure::input("io", format!("cannot read file: {e}")).at(path))
    }

    fn model(&self, path: &Path) -> Result<Model, Failure> {
        let text = self.read(path)?;
        Model::from_json(&text).map_err(|e| Failure::input("model", e.to_string()).at(path))
    }

    fn json(&self) -> bool {
        self.config.format == Format::Json
    }

    fn paint(&self, text: &str, code: &str) -> String {
        if self.config.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn tv(&self, v: Tv3) -> String {
        let code = match v {
            Tv3::True3 => "32",
            Tv3::False3 => "31",
            Tv3::Undet3 => "33",
        };
        self.paint(v.symbol(), code)
    }

    fn verdict(&self, pass: bool) -> String {
        if pass {
            self.paint("PASS", "32")
        } else {
            self.paint("FAIL", "31")
        }
    }

    fn metadata(&self) -> Value {
        json!({
            "connectives": CONNECTIVES,
            "implication": IMPLICATION,
            "incompatibility": self.config.incompatibility.name(),
        })
    }
}

/// Output of a successful command: the rendered text and exit status.
struct Done {
    code: u8,
    out: String,
}

fn done(out: String) -> Result<Done, Failure> {
    Ok(Done { code: EXIT_OK, out })
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Executes one invocation. `stdin` supplies the text for any `-` path.
pub fn run(config: &RunConfig, stdin: Option<&str>) -> RunOutput {
    let ctx = Ctx { config, stdin };
    let result = match &config.command {
        Command::Parse { file } => cmd_parse(&ctx, file),
        Command::Eval { file, model } => cmd_eval(&ctx, file, model),
        Command::Classify {
            path,
            judgments,
            model,
            predicate,
        } => {
            let js = path
                .as_ref()
                .or(judgments.as_ref())
                .expect("clap requires one judgment path");
            cmd_classify(&ctx, js, model, predicate.as_deref())
        }
        Command::Scenario { scenario } => cmd_scenario(&ctx, scenario),
        Command::Corpus { trials } => cmd_corpus(&ctx, *trials),
        Command::Exclusivity => cmd_exclusivity(&ctx),
    };
    match result {
        Ok(d) => RunOutput {
            code: d.code,
            stdout: d.out,
            stderr: String::new(),
        },
        Err(f) if ctx.json() => RunOutput {
            code: f.code,
            stdout: render_json(&f.to_json()),
            stderr: String::new(),
        },
        Err(f) => RunOutput {
            code: f.code,
            stdout: String::new(),
            stderr: f.to_text(),
        },
    }
}

/// Parses `args` (including the program name) and runs them. Flag errors
/// exit with 64; `--help` and `--version` exit with 0.
pub fn run_args<I, T>(args: I, color: bool, stdin: impl FnOnce() -> Option<String>) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    match RunConfig::from_args(&args) {
        Ok(mut config) => {
            config.color = color && config.format == Format::Text;
            let input = if config.reads_stdin() { stdin() } else { None };
            run(&config, input.as_deref())
        }
        Err(e) => {
            let rendered = e.render().to_string();
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                return RunOutput {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                };
            }
            if wants_json(&args) {
                let f = Failure {
                    code: EXIT_USAGE,
                    kind: "usage",
                    message: e.kind().to_string(),
                    path: None,
                    span: None,
                };
                let mut v = f.to_json();
                v["error"]["detail"] = json!(rendered.trim_end());
                RunOutput {
                    code: EXIT_USAGE,
                    stdout: render_json(&v),
                    stderr: String::new(),
                }
            } else {
                RunOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            }
        }
    }
}

/// JSON is the default; only an explicit `--format text` turns it off.
fn wants_json(args: &[OsString]) -> bool {
    let mut format = "json".to_string();
    let mut it = args.iter().map(|a| a.to_string_lossy());
    while let Some(a) = it.next() {
        if a == "--format" {
            if let Some(v) = it.next() {
                format = v.to_string();
            }
        } else if let Some(v) = a.strip_prefix("--format=") {
            format = v.to_string();
        }
    }
    format != "text"
}

fn cmd_parse(ctx: &Ctx, file: &Path) -> Result<Done, Failure> {
    let src = ctx.read(file)?;
    let entries = parse_file(&src).map_err(|e| parse_failure(&e, file))?;
    if ctx.json() {
        let formulas: Vec<Value> = entries
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "line": e.line,
                    "formula": pretty(&e.formula),
                    "ast": e.formula,
                })
            })
            .collect();
        return done(render_json(&json!({ "formulas": formulas })));
    }
    let mut out = String::new();
    for e in &entries {
        let _ = writeln!(
            out,
            "{}: {}",
            entry_label(e.name.as_deref(), e.line),
            pretty(&e.formula)
        );
    }
    done(out)
}

fn entry_label(name: Option<&str>, line: usize) -> String {
    name.map_or_else(|| format!("line {line}"), str::to_string)
}

fn cmd_eval(ctx: &Ctx, file: &Path, model_path: &Path) -> Result<Done, Failure> {
    let src = ctx.read(file)?;
    let entries = parse_file(&src).map_err(|e| parse_failure(&e, file))?;
    let model = ctx.model(model_path)?;
    let opts = EvalOptions {
        incompatibility: ctx.config.incompatibility,
    };
    let mut results = Vec::new();
    for e in &entries {
        let v = evaluate_closed(&e.formula, &model, opts).map_err(|err| {
            let f = Failure::input("eval", err.to_string()).at(file);
            match err {
                EvalError::UndeclaredName { span, .. }
                | EvalError::UnboundVariable { span, .. } => f.with_span(span),
                EvalError::NoContexts => f,
            }
        })?;
        results.push((e, v));
    }
    if ctx.json() {
        let mut out = ctx.metadata();
        out["defaultedValuationEntries"] = json!(model.defaulted_entries());
        out["results"] = results
            .iter()
            .map(|(e, v)| json!({ "name": e.name, "line": e.line, "formula": pretty(&e.formula), "value": v }))
            .collect();
        return done(render_json(&out));
    }
    let mut out = String::new();
    for (e, v) in &results {
        let _ = writeln!(
            out,
            "{}: {}",
            entry_label(e.name.as_deref(), e.line),
            ctx.tv(*v)
        );
    }
    let _ = writeln!(
        out,
        "# {} connectives, {} implication, {} incompatibility, {} defaulted valuation entries",
        CONNECTIVES,
        IMPLICATION,
        ctx.config.incompatibility.name(),
        model.defaulted_entries()
    );
    done(out)
}

fn cmd_classify(
    ctx: &Ctx,
    js_path: &Path,
    model_path: &Path,
    predicate: Option<&str>,
) -> Result<Done, Failure> {
    let text = ctx.read(js_path)?;
    let js = JudgmentSet::from_json(&text)
        .map_err(|e| Failure::input("judgments", e.to_string()).at(js_path))?;
    let model = ctx.model(model_path)?;
    let predicate = match predicate {
        Some(p) => p.to_string(),
        None => match js.predicates().as_slice() {
            [one] => one.to_string(),
            [] => {
                return Err(
                    Failure::input("judgments", "no judgments; pass --predicate").at(js_path),
                )
            }
            many => {
                return Err(Failure::input(
                    "judgments",
                    format!(
                        "judgments mention several predicates ({}); pass --predicate",
                        many.join(", ")
                    ),
                )
                .at(js_path))
            }
        },
    };
    let class = classify_with(&js, &model, &predicate, ctx.config.incompatibility)
        .map_err(|e| Failure::input("model", e.to_string()))?;
    if ctx.json() {
        let mut out = class.to_output(&predicate);
        out["predicate"] = json!(predicate);
        out["label"] = json!(class.label());
        out["metadata"] = ctx.metadata();
        return done(render_json(&out));
    }
    let mut out = format!("{}: {}\n", predicate, ctx.paint(&class.to_string(), "1"));
    if let Some(f) = class.schema_formula(&predicate) {
        let _ = writeln!(out, "schema: {}", pretty(&f));
    }
    done(out)
}

fn cmd_scenario(ctx: &Ctx, s: &Scenario) -> Result<Done, Failure> {
    let report = build_scenario(s, ctx.config.seed)
        .map_err(|e| Failure::input("scenario", e.to_string()))?;
    if ctx.json() {
        return done(render_json(&report.to_json()));
    }
    done(scenario_text(ctx, &report))
}

fn build_scenario(s: &Scenario, seed: u64) -> Result<ScenarioReport, scenarios::ScenarioError> {
    match s {
        Scenario::DoubleSlit(a) => {
            let setups: Vec<SlitSetup> = a
                .setups
                .iter()
                .map(|s| match s {
                    Setup::OneSlitObserved => SlitSetup::OneSlitObserved,
                    Setup::OneSlitUnobserved => SlitSetup::OneSlitUnobserved,
                    Setup::TwoSlitsUnobserved => SlitSetup::TwoSlitsUnobserved,
                })
                .collect();
            scenarios::double_slit(&setups)
        }
        Scenario::Cat(a) => scenarios::cat(!a.closed, seed),
        Scenario::Wigner(a) => {
            let views: Vec<Perspective> = a
                .perspectives
                .iter()
                .map(|v| match v {
                    View::Friend => Perspective::Friend,
                    View::Wigner => Perspective::Wigner,
                })
                .collect();
            let outcome = if a.spin_down {
                SpinOutcome::Down
            } else {
                SpinOutcome::Up
            };
            scenarios::wigner(&views, outcome)
        }
        Scenario::Epr(a) => {
            let bases: Vec<EprBasis> = a
                .bases
                .iter()
                .map(|b| match b {
                    Basis::ZeroOne => EprBasis::ZeroOne,
                    Basis::PlusMinus => EprBasis::PlusMinus,
                })
                .collect();
            let outcome = if a.second_outcome {
                AliceOutcome::Second
            } else {
                AliceOutcome::First
            };
            scenarios::epr(&bases, outcome)
        }
        Scenario::Qcc => scenarios::qcc(),
        Scenario::Threshold(a) => scenarios::threshold(&a.levels, a.lower, a.upper),
    }
}

fn scenario_text(ctx: &Ctx, r: &ScenarioReport) -> String {
    let mut out = format!("scenario {}\n", r.name);
    for j in &r.judgments {
        let _ = writeln!(out, "  {} {}: {}", j.context, j.predicate, ctx.tv(j.value));
    }
    let _ = writeln!(out, "expected: {}", r.expected);
    match r.classify() {
        Ok(c) => {
            let pass = c == r.expected;
            let _ = writeln!(out, "classified: {} {}", c, ctx.verdict(pass));
        }
        Err(e) => {
            let _ = writeln!(out, "classified: error: {e}");
        }
    }
    for (k, w) in &r.witnesses {
        let z = w.as_complex();
        match w {
            scenarios::Witness::Real(x) => {
                let _ = writeln!(out, "  {k} = {x}");
            }
            scenarios::Witness::Complex(_) => {
                let _ = writeln!(out, "  {k} = {} {:+}i", z.re, z.im);
            }
        }
    }
    for (k, v) in &r.notes {
        let _ = writeln!(out, "  note {k}: {v}");
    }
    out
}

fn cmd_corpus(ctx: &Ctx, trials: usize) -> Result<Done, Failure> {
    let report = scenarios::corpus(ctx.config.seed, trials)
        .map_err(|e| Failure::input("scenario", e.to_string()))?;
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let out = if ctx.json() {
        let mut v = serde_json::to_value(&report).expect("corpus serializes");
        v["pass"] = json!(report.passed());
        v["frequencyPass"] = json!(report.frequency_ok());
        render_json(&v)
    } else {
        let mut out = String::new();
        for e in &report.entries {
            let actual = e
                .actual
                .as_ref()
                .map_or_else(|| "error".to_string(), |c| c.label());
            let _ = writeln!(
                out,
                "{} {:<36} pinned {} got {}",
                ctx.verdict(e.passed()),
                e.name,
                e.pinned.tag(),
                actual
            );
        }
        let _ = writeln!(
            out,
            "{} cat alive frequency {:.5} over {} trials (seed {})",
            ctx.verdict(report.frequency_ok()),
            report.alive_frequency,
            report.trials,
            report.seed
        );
        let passed = report.entries.iter().filter(|e| e.passed()).count();
        let _ = writeln!(
            out,
            "corpus: {passed}/{} scenarios match",
            report.entries.len()
        );
        out
    };
    Ok(Done { code, out })
}

fn cmd_exclusivity(ctx: &Ctx) -> Result<Done, Failure> {
    let cert = mutual_exclusivity_certificate();
    if ctx.json() {
        let mut v = serde_json::to_value(&cert).expect("certificate serializes");
        v["allDistinct"] = json!(cert.all_distinct());
        return done(render_json(&v));
    }
    let mut out = String::new();
    for r in &cert.rows {
        let _ = writeln!(
            out,
            "{} {:<9} vs {} {:<9} {}",
            r.left, r.left_values, r.right, r.right_values, r.verdict
        );
    }
    let _ = writeln!(out, "{}/{} pairs distinct", cert.distinct, cert.total);
    done(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_defaults_to_zero() {
        let c = RunConfig::from_args(["sapta", "exclusivity"]).unwrap();
        assert_eq!(c.seed, 0);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.incompatibility, IncompatibilityMode::Relational);
        assert!(!c.reads_stdin());
    }

    #[test]
    fn in_process_run() {
        let c = RunConfig::from_args(["sapta", "--format", "text", "scenario", "cat", "--closed"])
            .unwrap();
        let out = run(&c, None);
        assert_eq!(out.code, EXIT_OK);
        assert!(
            out.stdout.contains("P3 (syāt avaktavyam)"),
            "{}",
            out.stdout
        );
    }

    #[test]
    fn stdin_path() {
        let c = RunConfig::from_args(["sapta", "parse", "-"]).unwrap();
        assert!(c.reads_stdin());
        assert_eq!(run(&c, None).code, EXIT_INPUT);
        assert_eq!(run(&c, Some("p(x)")).code, EXIT_OK);
    }

    #[test]
    fn help_exits_zero() {
        let out = run_args(["sapta", "--help"], false, || None);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("classify"));
    }
}
