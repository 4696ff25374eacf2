//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or invalid model,
//! 3 negative analytic result (not square summable, divergent Gramian),
//! 4 numerical failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{self, L2Report};
use crate::error::Error;
use crate::gramian::{self, GramianRoute};
use crate::io::{self, matrix_to_json, Mode, ModelDocument, FORMAT_VERSION};
use crate::minimize::minimize;
use crate::numerics::Matrix;
use crate::sva::{self, SvaForm};
use crate::wfa::{Word, Wfa};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MODEL: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "wfa-sva", version, about = "Singular value automata and approximate minimization of weighted automata")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Digits after the decimal point for displayed numbers (default: shortest exact form).
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// Keep unknown fields in model files instead of rejecting them.
    #[arg(long, global = true)]
    pub lenient: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the automaton on a word.
    Eval {
        #[arg(long)]
        model: PathBuf,
        /// Word written without separators; '' is the empty word.
        #[arg(long, conflicts_with = "symbols", allow_hyphen_values = true)]
        string: Option<String>,
        /// Comma-separated symbols, for multi-character alphabets.
        #[arg(long)]
        symbols: Option<String>,
    },
    /// Exact minimization.
    Minimize {
        #[arg(long)]
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reachability and observability Gramians.
    Gramians {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        method: RouteArg,
    },
    /// Singular value automaton.
    Sva {
        #[arg(long)]
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also print diagnostics of the balanced form.
        #[arg(long)]
        report: bool,
    },
    /// Truncate the singular value automaton to a number of states.
    Truncate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        states: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also compute the exact squared error.
        #[arg(long)]
        exact_error: bool,
    },
    /// l2 norm of the function.
    Norm {
        #[arg(long)]
        model: PathBuf,
    },
    /// l2 distance between two functions.
    Distance {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Decide square summability.
    CheckL2 {
        #[arg(long)]
        model: PathBuf,
    },
    /// Brute-force Hankel block as CSV.
    Hankel {
        #[arg(long)]
        model: PathBuf,
        /// Maximum prefix length.
        #[arg(long)]
        max_len: usize,
        /// Maximum suffix length (defaults to --max-len).
        #[arg(long)]
        max_suffix_len: Option<usize>,
        /// Print singular values instead of the block.
        #[arg(long)]
        svd: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum RouteArg {
    Auto,
    Linear,
    FixedPoint,
}

impl From<RouteArg> for GramianRoute {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Auto => GramianRoute::Auto,
            RouteArg::Linear => GramianRoute::LinearSystem,
            RouteArg::FixedPoint => GramianRoute::FixedPoint,
        }
    }
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::OutOfRange { .. } | Error::HankelCap { .. } => EXIT_USAGE,
            e if e.is_model_error() => EXIT_MODEL,
            e if e.is_analytic_negative() => EXIT_NEGATIVE,
            _ => EXIT_NUMERICAL,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Ctx<'a> {
    json: bool,
    precision: Option<usize>,
    mode: Mode,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn num(&self, x: f64) -> String {
        match self.precision {
            Some(p) => format!("{x:.p$}"),
            None => format!("{x}"),
        }
    }

    fn line(&mut self, s: &str) {
        let _ = writeln!(self.out, "{s}");
    }

    fn note(&mut self, s: &str) {
        let _ = writeln!(self.err, "{s}");
    }

    fn emit(&mut self, command: &str, mut body: Value) {
        body["format_version"] = json!(FORMAT_VERSION);
        body["command"] = json!(command);
        let _ = writeln!(self.out, "{}", serde_json::to_string_pretty(&body).expect("serializable"));
    }

    fn load(&self, path: &Path) -> std::result::Result<ModelDocument, Failure> {
        Ok(io::read_document(path, self.mode)?)
    }

    fn matrix_lines(&mut self, m: &Matrix) {
        for r in m.row_iter() {
            let cells: Vec<String> = r.iter().map(|&x| self.num(x)).collect();
            self.line(&cells.join(" "));
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        precision: cli.precision,
        mode: if cli.lenient { Mode::Lenient } else { Mode::Strict },
        out,
        err,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(f) => {
            if ctx.json {
                let body = json!({ "error": f.message, "exit_code": f.code });
                ctx.emit("error", body);
            }
            ctx.note(&format!("error: {}", f.message));
            f.code
        }
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Outcome {
    match command {
        Command::Eval { model, string, symbols } => eval(ctx, &model, string, symbols),
        Command::Minimize { model, output } => minimize_cmd(ctx, &model, output),
        Command::Gramians { model, method } => gramians_cmd(ctx, &model, method.into()),
        Command::Sva { model, output, report } => sva_cmd(ctx, &model, output, report),
        Command::Truncate { model, states, output, exact_error } => truncate_cmd(ctx, &model, states, output, exact_error),
        Command::Norm { model } => norm_cmd(ctx, &model),
        Command::Distance { model, other } => distance_cmd(ctx, &model, &other),
        Command::CheckL2 { model } => check_l2_cmd(ctx, &model),
        Command::Hankel { model, max_len, max_suffix_len, svd } => {
            hankel_cmd(ctx, &model, max_len, max_suffix_len.unwrap_or(max_len), svd)
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn eval(ctx: &mut Ctx, model: &Path, string: Option<String>, symbols: Option<String>) -> Outcome {
    let a = ctx.load(model)?.wfa;
    let word = match (string, symbols) {
        (Some(s), None) => a.alphabet().tokenize(&s)?,
        (None, Some(s)) if s.is_empty() => Word::empty(),
        (None, Some(s)) => s.split(',').map(|x| x.trim().to_string()).collect(),
        _ => return Err(usage("one of --string or --symbols is required")),
    };
    let value = a.evaluate(&word)?;
    if ctx.json {
        let body = json!({ "word": word.0, "value": value });
        ctx.emit("eval", body);
    } else {
        let s = ctx.num(value);
        ctx.line(&s);
    }
    Ok(EXIT_OK)
}

fn write_or_print(ctx: &mut Ctx, output: Option<PathBuf>, doc: &ModelDocument) -> std::result::Result<(), Failure> {
    match output {
        Some(p) => io::write_document(&p, doc).map_err(|e| Failure { code: EXIT_MODEL, message: e.to_string() }),
        None => {
            if !ctx.json {
                let text = io::serialize_document(doc);
                let _ = write!(ctx.out, "{text}");
            }
            Ok(())
        }
    }
}

fn name_of(doc: &ModelDocument) -> String {
    doc.metadata
        .as_ref()
        .and_then(|m| m.name.clone())
        .unwrap_or_else(|| "model".to_string())
}

fn minimize_cmd(ctx: &mut Ctx, model: &Path, output: Option<PathBuf>) -> Outcome {
    let doc = ctx.load(model)?;
    let r = minimize(&doc.wfa);
    let name = name_of(&doc);
    let out_doc = ModelDocument::new(r.minimal.clone()).with_name(&format!("{name} (minimal)"), Some("minimize"));
    let to_stdout = output.is_none();
    write_or_print(ctx, output, &out_doc)?;
    if ctx.json {
        let body = json!({
            "original_dim": r.original_dim,
            "minimal_dim": r.minimal_dim,
            "is_zero": r.is_zero,
            "model": io::document_to_value(&out_doc),
        });
        ctx.emit("minimize", body);
    } else {
        let report = format!("original_dim {}\nminimal_dim {}", r.original_dim, r.minimal_dim);
        if to_stdout {
            ctx.note(&report);
        } else {
            ctx.line(&report);
        }
    }
    Ok(EXIT_OK)
}

fn gramians_cmd(ctx: &mut Ctx, model: &Path, route: GramianRoute) -> Outcome {
    let a = ctx.load(model)?.wfa;
    let g = gramian::gramians(&a, route)?;
    if ctx.json {
        let body = json!({
            "method": g.method.name(),
            "iterations": g.iterations,
            "residual_p": g.residual_p,
            "residual_s": g.residual_s,
            "gp": matrix_to_json(&g.gp),
            "gs": matrix_to_json(&g.gs),
        });
        ctx.emit("gramians", body);
    } else {
        ctx.line(&format!("method {}", g.method.name()));
        ctx.line(&format!("iterations {}", g.iterations));
        let (rp, rs) = (ctx.num(g.residual_p), ctx.num(g.residual_s));
        ctx.line(&format!("residual_p {rp}"));
        ctx.line(&format!("residual_s {rs}"));
        ctx.line("G_p");
        ctx.matrix_lines(&g.gp);
        ctx.line("G_s");
        ctx.matrix_lines(&g.gs);
    }
    Ok(EXIT_OK)
}

/// The balanced form stored in `doc`, or a freshly computed one.
fn sva_of(doc: &ModelDocument) -> std::result::Result<SvaForm, Failure> {
    Ok(match &doc.sigmas {
        Some(s) => sva::from_balanced(doc.wfa.clone(), s.clone())?,
        None => sva::compute_sva(&doc.wfa)?,
    })
}

fn sva_cmd(ctx: &mut Ctx, model: &Path, output: Option<PathBuf>, report: bool) -> Outcome {
    let doc = ctx.load(model)?;
    let s = sva::compute_sva(&doc.wfa)?;
    let name = name_of(&doc);
    let mut out_doc = ModelDocument::new(s.automaton.clone()).with_name(&format!("{name} (sva)"), Some("sva"));
    out_doc.sigmas = Some(s.sigmas.clone());
    let to_stdout = output.is_none();
    write_or_print(ctx, output, &out_doc)?;
    let diag = report.then(|| sva::sva_diagnostics(&s));
    if ctx.json {
        let mut body = json!({
            "sigmas": s.sigmas,
            "source_dim": s.source_dim,
            "minimized": s.minimized,
            "model": io::document_to_value(&out_doc),
        });
        if let Some(d) = &diag {
            body["report"] = json!({
                "max_identity_residual": d.max_residual(),
                "max_coefficient_excess": d.max_coefficient_excess,
                "coefficient_violations": d.violations.len(),
                "jitter_p": s.jitter.0,
                "jitter_s": s.jitter.1,
            });
        }
        ctx.emit("sva", body);
        return Ok(EXIT_OK);
    }
    let mut lines: Vec<String> = s.sigmas.iter().map(|&x| ctx.num(x)).collect();
    if let Some(d) = &diag {
        lines.push(format!("source_dim {}", s.source_dim));
        lines.push(format!("minimized {}", s.minimized));
        lines.push(format!("max_identity_residual {}", ctx.num(d.max_residual())));
        lines.push(format!("max_coefficient_excess {}", ctx.num(d.max_coefficient_excess)));
        lines.push(format!("coefficient_violations {}", d.violations.len()));
        if let Some(j) = s.jitter.0.or(s.jitter.1) {
            lines.push(format!("cholesky_jitter {}", ctx.num(j)));
        }
    }
    for l in lines {
        if to_stdout {
            ctx.note(&l);
        } else {
            ctx.line(&l);
        }
    }
    Ok(EXIT_OK)
}

fn truncate_cmd(ctx: &mut Ctx, model: &Path, states: usize, output: Option<PathBuf>, exact: bool) -> Outcome {
    let doc = ctx.load(model)?;
    let s = sva_of(&doc)?;
    let r = if exact { sva::truncate_with_error(&s, states)? } else { sva::truncate(&s, states)? };
    let name = name_of(&doc);
    let out_doc = ModelDocument::new(r.truncated.clone())
        .with_name(&format!("{name} (truncated to {states})"), Some("truncate"));
    let to_stdout = output.is_none();
    write_or_print(ctx, output, &out_doc)?;
    if ctx.json {
        let body = json!({
            "kept": r.kept,
            "dropped_sigmas": r.dropped_sigmas,
            "bound": r.bound,
            "exact_error_sq": r.exact_error_sq,
            "model": io::document_to_value(&out_doc),
        });
        ctx.emit("truncate", body);
        return Ok(EXIT_OK);
    }
    let mut lines = vec![format!("kept {}", r.kept), format!("bound {}", ctx.num(r.bound))];
    if let Some(e) = r.exact_error_sq {
        lines.push(format!("exact_error_sq {}", ctx.num(e)));
    }
    for l in lines {
        if to_stdout {
            ctx.note(&l);
        } else {
            ctx.line(&l);
        }
    }
    Ok(EXIT_OK)
}

fn print_scalar_or_infinite(ctx: &mut Ctx, command: &str, key: &str, value: Result<f64, Error>) -> Outcome {
    match value {
        Ok(v) => {
            if ctx.json {
                ctx.emit(command, json!({ key: v, "finite": true }));
            } else {
                let s = ctx.num(v);
                ctx.line(&s);
            }
            Ok(EXIT_OK)
        }
        Err(e) if e.is_analytic_negative() => {
            if ctx.json {
                ctx.emit(command, json!({ key: Value::Null, "finite": false, "reason": e.to_string() }));
            } else {
                ctx.line("infinite");
                ctx.note(&e.to_string());
            }
            Ok(EXIT_NEGATIVE)
        }
        Err(e) => Err(e.into()),
    }
}

fn norm_cmd(ctx: &mut Ctx, model: &Path) -> Outcome {
    let a = ctx.load(model)?.wfa;
    print_scalar_or_infinite(ctx, "norm", "norm", analysis::norm_l2(&a))
}

fn distance_cmd(ctx: &mut Ctx, model: &Path, other: &Path) -> Outcome {
    let a = ctx.load(model)?.wfa;
    let b = ctx.load(other)?.wfa;
    print_scalar_or_infinite(ctx, "distance", "distance", analysis::distance_l2(&a, &b))
}

fn l2_json(r: &L2Report) -> Value {
    json!({
        "member": r.member,
        "method": r.method.name(),
        "witness": r.witness,
        "minimized_square_dim": r.minimized_square_dim,
        "sufficient": {
            "kron_radius": r.sufficient.kron_radius,
            "kron_norm_1": r.sufficient.kron_norm_1,
            "kron_norm_inf": r.sufficient.kron_norm_inf,
            "gram_norm_2": r.sufficient.gram_norm_2,
        },
    })
}

fn check_l2_cmd(ctx: &mut Ctx, model: &Path) -> Outcome {
    let a = ctx.load(model)?.wfa;
    let r = analysis::check_l2(&a)?;
    if ctx.json {
        ctx.emit("check-l2", l2_json(&r));
    } else {
        ctx.line(&format!("member {}", r.member));
        ctx.line(&format!("method {}", r.method.name()));
        let w = ctx.num(r.witness);
        ctx.line(&format!("witness {w}"));
        let opt = |ctx: &Ctx, x: Option<f64>| x.map(|v| ctx.num(v)).unwrap_or_else(|| "skipped".into());
        let lines = [
            format!("kron_radius {}", opt(ctx, r.sufficient.kron_radius)),
            format!("kron_norm_1 {}", opt(ctx, r.sufficient.kron_norm_1)),
            format!("kron_norm_inf {}", opt(ctx, r.sufficient.kron_norm_inf)),
            format!("gram_norm_2 {}", ctx.num(r.sufficient.gram_norm_2)),
        ];
        for l in lines {
            ctx.line(&l);
        }
    }
    Ok(if r.member { EXIT_OK } else { EXIT_NEGATIVE })
}

fn render(a: &Wfa, w: &[usize]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        a.alphabet().render(w)
    }
}

fn hankel_cmd(ctx: &mut Ctx, model: &Path, lp: usize, ls: usize, svd: bool) -> Outcome {
    let a = ctx.load(model)?.wfa;
    let hb = analysis::hankel_block(&a, lp, ls)?;
    if svd {
        let s = analysis::hankel_svd(&hb)?;
        if ctx.json {
            ctx.emit("hankel", json!({ "singular_values": s.singular_values }));
        } else {
            ctx.line("singular_value");
            for &x in &s.singular_values {
                let v = ctx.num(x);
                ctx.line(&v);
            }
        }
        return Ok(EXIT_OK);
    }
    if ctx.json {
        let body = json!({
            "prefixes": hb.prefixes.iter().map(|p| render(&a, p)).collect::<Vec<_>>(),
            "suffixes": hb.suffixes.iter().map(|s| render(&a, s)).collect::<Vec<_>>(),
            "values": matrix_to_json(&hb.values),
        });
        ctx.emit("hankel", body);
        return Ok(EXIT_OK);
    }
    let header: Vec<String> = std::iter::once("prefix".to_string())
        .chain(hb.suffixes.iter().map(|s| render(&a, s)))
        .collect();
    ctx.line(&header.join(","));
    for (i, p) in hb.prefixes.iter().enumerate() {
        let mut cells = vec![render(&a, p)];
        cells.extend(hb.values.row(i).iter().map(|&x| ctx.num(x)));
        ctx.line(&cells.join(","));
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("wfa-sva").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn model_file(dir: &Path, name: &str, a: &Wfa) -> String {
        let p = dir.join(format!("{name}.json"));
        std::fs::write(&p, io::serialize(a)).unwrap();
        p.to_string_lossy().into_owned()
    }

    #[test]
    fn eval_and_usage_errors() {
        let dir = tempfile::tempdir().unwrap();
        let m = model_file(dir.path(), "signed", &catalog::signed_two_state());
        assert_eq!(run_capture(&["eval", "--model", &m, "--string", "ba"]), (0, "60\n".into(), String::new()));
        let (code, out, _) = run_capture(&["eval", "--model", &m, "--string", ""]);
        assert_eq!((code, out.as_str()), (0, "3\n"));
        assert_eq!(run_capture(&["eval", "--model", &m, "--symbols", "b,a"]).1, "60\n");
        assert_eq!(run_capture(&["eval", "--model", &m, "--string", "bc"]).0, EXIT_MODEL);
        assert_eq!(run_capture(&["eval", "--model", &m]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
        assert_eq!(run_capture(&["eval", "--model", "/nonexistent.json", "--string", "a"]).0, EXIT_MODEL);
    }

    #[test]
    fn precision_flag() {
        let dir = tempfile::tempdir().unwrap();
        let m = model_file(dir.path(), "g", &catalog::generative_two_state());
        assert_eq!(run_capture(&["--precision", "3", "eval", "--model", &m, "--string", "a"]).1, "0.083\n");
    }

    #[test]
    fn check_l2_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let yes = model_file(dir.path(), "yes", &catalog::dynamic_det_free());
        let no = model_file(dir.path(), "no", &catalog::dynamic_absorbing());
        assert_eq!(run_capture(&["check-l2", "--model", &yes]).0, EXIT_OK);
        let (code, out, _) = run_capture(&["check-l2", "--model", &no]);
        assert_eq!(code, EXIT_NEGATIVE);
        assert!(out.starts_with("member false"));
        let (code, out, _) = run_capture(&["norm", "--model", &no]);
        assert_eq!((code, out.as_str()), (EXIT_NEGATIVE, "infinite\n"));
    }

    #[test]
    fn json_output_has_version() {
        let dir = tempfile::tempdir().unwrap();
        let m = model_file(dir.path(), "g", &catalog::dynamic_det_free());
        for args in [
            vec!["--json", "eval", "--model", &m, "--string", "ab"],
            vec!["--json", "gramians", "--model", &m],
            vec!["--json", "sva", "--model", &m, "--report"],
            vec!["--json", "truncate", "--model", &m, "--states", "1", "--exact-error"],
            vec!["--json", "norm", "--model", &m],
            vec!["--json", "check-l2", "--model", &m],
            vec!["--json", "hankel", "--model", &m, "--max-len", "2", "--svd"],
            vec!["--json", "minimize", "--model", &m],
        ] {
            let (code, out, err) = run_capture(&args);
            assert_eq!(code, 0, "{args:?}: {err}");
            let v: Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["format_version"], "1", "{args:?}");
        }
    }

    #[test]
    fn truncate_states_out_of_range_is_usage_error() {
        let dir = tempfile::tempdir().unwrap();
        let m = model_file(dir.path(), "g", &catalog::dynamic_det_free());
        assert_eq!(run_capture(&["truncate", "--model", &m, "--states", "2"]).0, EXIT_USAGE);
    }

    #[test]
    fn hankel_csv_layout() {
        let dir = tempfile::tempdir().unwrap();
        let m = model_file(dir.path(), "s", &catalog::signed_two_state());
        let (code, out, _) = run_capture(&["hankel", "--model", &m, "--max-len", "1"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "prefix,ε,a,b");
        assert_eq!(lines.len(), 4);
        assert!(lines[3].starts_with("b,"));
        assert_eq!(lines[3].split(',').nth(2), Some("60"));
    }
}
