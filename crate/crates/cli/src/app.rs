//! Command-line interface. Exit codes: 0 on success, 1 when a check fails
//! (including `tensor extract` on a form outside the tensor image), 2 on
//! usage, parse and evaluation errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use iforms_core::checks::{run_checks_with, Execution};
use iforms_core::coeffs::{Space, VectorField};
use iforms_core::forms::Form;
use iforms_core::json::{form_from_json, form_to_json, tensor_from_json, tensor_to_json, PolyDoc};
use iforms_core::render::{form_latex, form_text, poly_latex, poly_text, tensor_text};
use iforms_core::tensors::{embed, evaluate_components, evaluate_insertion, is_tensor, Detection};
use thiserror::Error;

use crate::eval::{eval_expr, field_from_components, Env};
use crate::parse::{parse, parse_field_binding, ParseError};

#[derive(Debug, Parser)]
#[command(name = "iforms", version, about = "Exact calculus of iterated differential forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression and print its normal form.
    Eval(EvalArgs),
    /// Apply an operator such as `lie[X]`, `d2` or `H2` to an expression.
    Apply {
        /// Operator prefix, written as in the expression language without
        /// its argument.
        #[arg(long)]
        op: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Covariant tensor workflows.
    Tensor {
        #[command(subcommand)]
        action: TensorAction,
    },
    /// Run randomized identity suites.
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// The expression, e.g. `d1(x^2*y)` or `d{1,2}(x) * d1(y)`.
    #[arg(short = 'e', long = "expr")]
    pub expr: String,
    /// Comma-separated coordinate names.
    #[arg(long, default_value = "x,y")]
    pub coords: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Inline vector field, `NAME: c1, ..., cn`. Repeatable.
    #[arg(long = "vf")]
    pub vf: Vec<String>,
    /// JSON file of named vector fields.
    #[arg(long)]
    pub vfs: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum TensorAction {
    /// Print the iterated form of a tensor.
    Embed {
        #[arg(long)]
        tensor: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Read a tensor off a form, or report the obstruction.
    Extract {
        /// JSON file holding the form.
        #[arg(long, conflicts_with = "expr")]
        form: Option<PathBuf>,
        /// The form as an expression.
        #[arg(short = 'e', long = "expr")]
        expr: Option<String>,
        #[arg(long, default_value = "x,y")]
        coords: String,
        /// Tensor order; defaults to the largest slot present.
        #[arg(long)]
        order: Option<usize>,
        /// `text` or `json`.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a tensor on vector fields through iterated insertions.
    Eval {
        #[arg(long)]
        tensor: PathBuf,
        /// JSON file of vector fields; the first `p` are used unless
        /// `--fields` names them.
        #[arg(long)]
        vfs: Option<PathBuf>,
        /// Inline vector field, `NAME: c1, ..., cn`. Repeatable.
        #[arg(long = "vf")]
        vf: Vec<String>,
        /// Comma-separated field names, in argument order.
        #[arg(long)]
        fields: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// One of commutation, partition, kappa, homotopy, tensor, pullback, all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cases per identity.
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
    /// Run cases on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{error}\n  {source_line}\n  {caret}")]
    Parse { error: ParseError, source_line: String, caret: String },
    #[error(transparent)]
    Engine(#[from] iforms_core::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

/// Successful outcomes; `Failed` maps to exit status 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
}

fn parse_error(source: &str, error: ParseError) -> AppError {
    let source_line = source.lines().nth(error.line.saturating_sub(1)).unwrap_or("").to_string();
    let caret = format!("{}^", " ".repeat(error.column.saturating_sub(1)));
    AppError::Parse { error, source_line, caret }
}

fn read(path: &Path) -> Result<String, AppError> {
    std::fs::read_to_string(path).map_err(|e| AppError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn json_error(path: &Path, message: impl ToString) -> AppError {
    AppError::Io { path: path.display().to_string(), message: message.to_string() }
}

/// Reads a vector field file. Components may be polynomial documents or
/// expression strings over the file's coordinates.
pub fn read_fields(path: &Path) -> Result<(Space, Vec<(String, VectorField)>), AppError> {
    let text = read(path)?;
    let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| json_error(path, e))?;
    let names: Vec<String> = doc
        .get("space")
        .and_then(|v| serde_json::from_value(v.clone()).ok())
        .ok_or_else(|| json_error(path, "missing `space` list"))?;
    let space = Space::new(names)?;
    let fields = doc.get("fields").and_then(|v| v.as_array()).ok_or_else(|| json_error(path, "missing `fields` list"))?;
    let mut out = Vec::new();
    for f in fields {
        let name = f.get("name").and_then(|v| v.as_str()).ok_or_else(|| json_error(path, "field without `name`"))?;
        let comps = f
            .get("components")
            .and_then(|v| v.as_array())
            .ok_or_else(|| json_error(path, format!("field {name} without `components`")))?;
        let mut polys = Vec::new();
        for c in comps {
            let p = match c {
                serde_json::Value::String(src) => {
                    let e = parse(src, &space).map_err(|e| parse_error(src, e))?;
                    crate::eval::eval_poly(&e, &space, &Env::new())?
                }
                other => {
                    let doc: PolyDoc = serde_json::from_value(other.clone()).map_err(|e| json_error(path, e))?;
                    doc.to_poly(&space)?
                }
            };
            polys.push(p);
        }
        out.push((name.to_string(), VectorField::new(&space, polys)?));
    }
    Ok((space, out))
}

fn bind_inline(bindings: &[String], space: &Space, env: &mut Env) -> Result<(), AppError> {
    for b in bindings {
        let (name, comps) = parse_field_binding(b, space).map_err(|e| parse_error(b, e))?;
        let x = field_from_components(&comps, space, env)?;
        env.insert(name, x);
    }
    Ok(())
}

fn environment(space: &Space, vf: &[String], vfs: Option<&Path>) -> Result<Env, AppError> {
    let mut env = Env::new();
    if let Some(path) = vfs {
        let (file_space, fields) = read_fields(path)?;
        if &file_space != space {
            return Err(AppError::Usage(format!(
                "{}: fields live over [{file_space}] but the coordinates are [{space}]",
                path.display()
            )));
        }
        env.extend(fields);
    }
    bind_inline(vf, space, &mut env)?;
    Ok(env)
}

fn render(form: &Form, format: Format) -> String {
    match format {
        Format::Text => form_text(form),
        Format::Json => form_to_json(form),
        Format::Latex => form_latex(form),
    }
}

/// Parses and evaluates `source` over `coords`.
pub fn evaluate(source: &str, coords: &str, vf: &[String], vfs: Option<&Path>) -> Result<Form, AppError> {
    let space = Space::parse(coords)?;
    let env = environment(&space, vf, vfs)?;
    let e = parse(source, &space).map_err(|e| parse_error(source, e))?;
    Ok(eval_expr(&e, &space, &env)?)
}

fn run_eval(args: &EvalArgs, source: &str, out: &mut dyn Write) -> Result<Status, AppError> {
    let form = evaluate(source, &args.coords, &args.vf, args.vfs.as_deref())?;
    emit(out, &render(&form, args.format))?;
    Ok(Status::Ok)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), AppError> {
    writeln!(out, "{text}").map_err(|e| AppError::Io { path: "<stdout>".into(), message: e.to_string() })
}

fn run_tensor(action: &TensorAction, out: &mut dyn Write) -> Result<Status, AppError> {
    match action {
        TensorAction::Embed { tensor, format } => {
            let t = tensor_from_json(&read(tensor)?)?;
            emit(out, &render(&embed(&t), *format))?;
            Ok(Status::Ok)
        }
        TensorAction::Extract { form, expr, coords, order, format } => {
            let w = match (form, expr) {
                (Some(path), _) => form_from_json(&read(path)?)?,
                (None, Some(src)) => evaluate(src, coords, &[], None)?,
                (None, None) => return Err(AppError::Usage("pass --form <file.json> or -e <expr>".into())),
            };
            let p = order.unwrap_or(w.max_slot() as usize);
            match is_tensor(&w, p)? {
                Detection::Tensor(t) => {
                    let text = match format {
                        Format::Json => tensor_to_json(&t),
                        _ => tensor_text(&t),
                    };
                    emit(out, &text)?;
                    Ok(Status::Ok)
                }
                Detection::Obstructed(o) => {
                    emit(out, &format!("not a tensor; obstruction: {}", render(&o, *format)))?;
                    Ok(Status::Failed)
                }
            }
        }
        TensorAction::Eval { tensor, vfs, vf, fields, format } => {
            let t = tensor_from_json(&read(tensor)?)?;
            let env = environment(t.space(), vf, vfs.as_deref())?;
            let chosen: Vec<VectorField> = match fields {
                Some(names) => names
                    .split(',')
                    .map(str::trim)
                    .map(|n| env.get(n).cloned().ok_or_else(|| AppError::Engine(iforms_core::Error::UnknownField(n.into()))))
                    .collect::<Result<_, _>>()?,
                None => {
                    let ordered = match vfs {
                        Some(path) => read_fields(path)?.1.into_iter().map(|(_, x)| x).collect(),
                        None => Vec::new(),
                    };
                    let inline: Vec<VectorField> = vf
                        .iter()
                        .map(|b| parse_field_binding(b, t.space()).expect("bound above").0)
                        .map(|n| env[&n].clone())
                        .collect();
                    ordered.into_iter().chain(inline).take(t.order()).collect()
                }
            };
            if chosen.len() != t.order() {
                return Err(AppError::Usage(format!(
                    "a tensor of order {} needs {} vector fields, got {}",
                    t.order(),
                    t.order(),
                    chosen.len()
                )));
            }
            let value = evaluate_insertion(&embed(&t), &chosen)?;
            debug_assert_eq!(Ok(value.clone()), evaluate_components(&t, &chosen));
            let text = match format {
                Format::Latex => poly_latex(&value),
                Format::Json => serde_json::to_string(&PolyDoc::from_poly(&value)).expect("serializable"),
                Format::Text => poly_text(&value),
            };
            emit(out, &text)?;
            Ok(Status::Ok)
        }
    }
}

fn run_check(args: &CheckArgs, out: &mut dyn Write) -> Result<Status, AppError> {
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let report = run_checks_with(&args.suite, args.seed, args.cases, exec)?;
    emit(out, &report.to_string())?;
    Ok(if report.passed() { Status::Ok } else { Status::Failed })
}

/// Executes a parsed command line, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Status, AppError> {
    match &cli.command {
        Command::Eval(args) => run_eval(args, &args.expr, out),
        Command::Apply { op, eval } => {
            let source = format!("{}({})", op.trim(), eval.expr);
            run_eval(eval, &source, out)
        }
        Command::Tensor { action } => run_tensor(action, out),
        Command::Check(args) => run_check(args, out),
    }
}

/// Entry point shared by the binary and tests.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
