//! `twistbench`: check, build and run the acceptance battery from the shell.
//!
//! Exit codes: 0 verified, 1 a mathematical check failed, 2 bad input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};
use twistcore::catalog::{self, Built, Params};
use twistcore::scalar::{set_float_epsilon, Gaussian};
use twistcore::serial::{report_json, with_provenance};
use twistcore::suite::{self, Status};
use twistcore::workbench::{Document, Resolver, TaskCommand};
use twistcore::{Backend, Error, Report, Scalar, Q};

const DEFAULT_EPSILON: f64 = 1e-9;
const VERBOSE_WITNESSES: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "twistbench", version, about = "Verify twisted tensor products and their iterations")]
struct Cli {
    /// Scalar backend; overrides the document's `backend` field.
    #[arg(long, global = true)]
    backend: Option<Backend>,
    /// Float tolerance; overrides the document's `epsilon` field.
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Keep up to 16 witnesses per failing comparison instead of one.
    #[arg(long, global = true)]
    verbose_witnesses: bool,
    /// Print the JSON report instead of the indented text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify one object of a document, or a catalog entry.
    Check(Target),
    /// Build a product and write it with provenance; nothing is written on failure.
    Build {
        #[command(flatten)]
        target: Target,
        /// Output file; standard output when absent.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run a document's tasks in order; build outputs resolve against the document's directory.
    Run { path: PathBuf },
    /// Run the acceptance battery; FILTER is a comma list of ids or names.
    Suite { filter: Option<String> },
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Every catalog entry and deformation scenario.
    List,
}

#[derive(Args, Debug)]
struct Target {
    /// Catalog entry name instead of a document.
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
    /// Document path, or `key=value` parameters with `--catalog`.
    #[arg(value_name = "PATH | key=value")]
    args: Vec<String>,
}

/// What a target resolves to before a backend is picked.
enum Source {
    Catalog(String, Params),
    Document(Document, String),
}

fn source(t: &Target) -> Result<Source, Error> {
    match &t.catalog {
        Some(name) => Ok(Source::Catalog(name.clone(), catalog::parse_params(t.args.iter().map(String::as_str))?)),
        None => match t.args.as_slice() {
            [path, object] => {
                Ok(Source::Document(read_document(Path::new(path))?, object.clone()))
            }
            _ => Err(Error::Parse("expected `PATH OBJECT` or `--catalog NAME [key=value...]`".into())),
        },
    }
}

struct Settings {
    backend: Backend,
}

/// Flag, then document field, then the default.
fn settings(cli: &Cli, doc: Option<&Document>) -> Settings {
    let backend = cli.backend.or(doc.and_then(|d| d.backend)).unwrap_or(Backend::Gaussian);
    let eps = cli.epsilon.or(doc.and_then(|d| d.epsilon)).unwrap_or(DEFAULT_EPSILON);
    set_float_epsilon(eps);
    Settings { backend }
}

fn check_with<S: Scalar>(src: &Source) -> Result<Report, Error> {
    match src {
        Source::Catalog(name, p) => catalog::build::<S>(name, p).map(|b| b.report),
        Source::Document(doc, obj) => Resolver::<S>::new(doc).check(obj),
    }
}

fn build_with<S: Scalar>(src: &Source) -> Result<Built, Error> {
    match src {
        Source::Catalog(name, p) => catalog::build::<S>(name, p),
        Source::Document(doc, obj) => Resolver::<S>::new(doc).build(obj),
    }
}

macro_rules! on_backend {
    ($backend:expr, $f:ident, $($arg:expr),*) => {
        match $backend {
            Backend::Rational => $f::<Q>($($arg),*),
            Backend::Gaussian => $f::<Gaussian>($($arg),*),
            Backend::Float => $f::<Complex64>($($arg),*),
        }
    };
}

/// Report to stdout, or to stderr when stdout carries the built object.
fn emit(cli: &Cli, report_value: Value, human: impl FnOnce() -> String, to_stderr: bool) -> anyhow::Result<()> {
    let text = if cli.json { serde_json::to_string_pretty(&report_value)? + "\n" } else { human() };
    if to_stderr {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    if let Some(path) = &cli.report {
        write_json(path, &report_value)?;
    }
    Ok(())
}

fn write_json(path: &Path, v: &Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn exit_for(pass: bool) -> ExitCode {
    ExitCode::from(if pass { 0 } else { 1 })
}

fn render(r: &Report) -> String {
    let mut s = r.render();
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn read_document(path: &Path) -> Result<Document, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Document::parse(&text)
}

/// The file written by `build`: the object, its `type`, and provenance.
fn build_file(built: &Built, backend: Backend) -> Option<Value> {
    let object = built.object.as_ref().filter(|o| built.report.pass && !o.is_null())?;
    let mut file = with_provenance(object.clone(), &built.construction, built.inputs(), &built.report);
    file["type"] = json!(if file.get("differential").is_some() { "dg_algebra" } else { "algebra" });
    file["provenance"]["backend"] = json!(backend.name());
    Some(file)
}

fn run_tasks<S: Scalar>(doc: &Document, dir: &Path, backend: Backend) -> anyhow::Result<Vec<Value>> {
    let res = Resolver::<S>::new(doc);
    let mut done = Vec::with_capacity(doc.tasks.len());
    for t in &doc.tasks {
        let (command, report, written) = match t.command {
            TaskCommand::Check => ("check", res.check(&t.object)?, None),
            TaskCommand::Build => {
                let built = res.build(&t.object)?;
                let written = match (&t.out, build_file(&built, backend)) {
                    (Some(out), Some(file)) => {
                        let path = dir.join(out);
                        write_json(&path, &file)?;
                        Some(path.display().to_string())
                    }
                    _ => None,
                };
                ("build", built.report, written)
            }
        };
        done.push(json!({
            "command": command,
            "object": t.object,
            "pass": report.pass,
            "written": written,
            "report": report_json(&report),
        }));
    }
    Ok(done)
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    if cli.verbose_witnesses {
        twistcore::report::set_witness_limit(VERBOSE_WITNESSES);
    }
    match &cli.command {
        Command::Check(t) => {
            let src = source(t)?;
            let s = settings(cli, doc_of(&src));
            let report = on_backend!(s.backend, check_with, &src)?;
            emit(cli, report_json(&report), || render(&report), false)?;
            Ok(exit_for(report.pass))
        }
        Command::Build { target, out } => {
            let src = source(target)?;
            let s = settings(cli, doc_of(&src));
            let built = on_backend!(s.backend, build_with, &src)?;
            emit(cli, report_json(&built.report), || render(&built.report), out.is_none())?;
            if !built.report.pass {
                return Ok(exit_for(false));
            }
            let Some(file) = build_file(&built, s.backend) else {
                eprintln!("{} verifies but has no algebra to write", built.construction);
                return Ok(ExitCode::from(0));
            };
            match out {
                Some(path) => write_json(path, &file)?,
                None => println!("{}", serde_json::to_string_pretty(&file)?),
            }
            Ok(exit_for(true))
        }
        Command::Run { path } => {
            let doc = read_document(path)?;
            let s = settings(cli, Some(&doc));
            let dir = path.parent().unwrap_or(Path::new("."));
            let done = on_backend!(s.backend, run_tasks, &doc, dir, s.backend)?;
            let pass = done.iter().all(|t| t["pass"] == json!(true));
            emit(cli, json!({ "backend": s.backend.name(), "tasks": done }), || {
                let mut text = String::new();
                for t in &done {
                    let mark = if t["pass"] == json!(true) { "pass" } else { "FAIL" };
                    text.push_str(&format!("{mark}  {} {}", t["command"].as_str().unwrap_or_default(), t["object"].as_str().unwrap_or_default()));
                    if let Some(w) = t["written"].as_str() {
                        text.push_str(&format!(" -> {w}"));
                    }
                    text.push('\n');
                }
                text
            }, false)?;
            Ok(exit_for(pass))
        }
        Command::Suite { filter } => {
            let s = settings(cli, None);
            let outcomes = on_backend!(s.backend, run_suite, filter.as_deref())?;
            let value = json!({ "backend": s.backend.name(), "criteria": outcomes });
            emit(cli, value, || {
                let mut text = String::new();
                for o in &outcomes {
                    let mark = match o.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::Skip => "skip",
                    };
                    text.push_str(&format!("{:>2}  {mark}  {}\n", o.id, o.name));
                    if o.status == Status::Fail {
                        if let Some(f) = o.report.first_failure() {
                            text.push_str(&render(f).lines().map(|l| format!("      {l}\n")).collect::<String>());
                        }
                    }
                }
                text
            }, false)?;
            Ok(exit_for(outcomes.iter().all(|o| o.status != Status::Fail)))
        }
        Command::Catalog { action: CatalogAction::List } => {
            for (name, about) in catalog::list() {
                println!("{name:<24} {about}");
            }
            Ok(ExitCode::from(0))
        }
    }
}

fn run_suite<S: Scalar>(filter: Option<&str>) -> Result<Vec<suite::Outcome>, Error> {
    suite::run::<S>(filter)
}

fn doc_of(src: &Source) -> Option<&Document> {
    match src {
        Source::Document(d, _) => Some(d),
        Source::Catalog(..) => None,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let input = e.downcast_ref::<Error>().is_none_or(Error::is_input_error);
            ExitCode::from(if input { 2 } else { 1 })
        }
    }
}
