//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards process arguments and the exit code.
//!
//! Exit codes: 0 true / all passed, 1 false / failures found, 2 input
//! error, 3 translation budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::dynamics::{update, UpdateDescriptor};
use crate::models::{parse_model_with, render_model, validate_model, ConditionalModel, ValidationMode};
use crate::oracle::{
    builtin_model, builtin_source, check_property, nixon_table, CheckConfig, CheckReport, BUILTIN_MODELS, PROPERTIES,
};
use crate::semantics::{explain, Interpretation};
use crate::syntax::{parse_clause_set, parse_formula};
use crate::translation::{translate_with_stats, LemmaForm, TranslationBudget, TranslationError};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ceteris",
    version,
    about = "Ceteris paribus counterfactuals over finite conditional models"
)]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sem {
    Cp,
    Nc,
    Ms,
}

impl From<Sem> for Interpretation {
    fn from(s: Sem) -> Self {
        match s {
            Sem::Cp => Interpretation::Cp,
            Sem::Nc => Interpretation::Nc,
            Sem::Ms => Interpretation::Ms,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate formulas at a world
    Eval {
        /// Built-in model name or path to a model file
        #[arg(long)]
        model: String,
        #[arg(long)]
        world: String,
        #[arg(long, value_enum, default_value = "cp")]
        sem: Sem,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(required = true)]
        formulas: Vec<String>,
    },
    /// Apply a ceteris paribus update and write the updated model
    Update {
        #[arg(long)]
        model: String,
        /// Clause such as "{m, s}"
        #[arg(long)]
        clause: String,
        #[arg(long, value_enum, default_value = "cp")]
        sem: Sem,
        /// Output file; the model goes to stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Translate into the plain comparative-possibility fragment
    Translate {
        formula: String,
        #[arg(long, value_enum, default_value = "cp")]
        sem: Sem,
        #[arg(long, default_value_t = TranslationBudget::default().max_clause)]
        max_clause: usize,
        #[arg(long, default_value_t = TranslationBudget::default().max_nodes)]
        max_nodes: u64,
        /// Use the unrepaired rule statements
        #[arg(long)]
        literal: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a property over random and enumerated models
    Check {
        /// Property identifier, or "all"
        property: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, env = "CP_SEED", default_value_t = 0)]
        seed: u64,
        /// Skip the exhaustive small-model sweep
        #[arg(long)]
        no_enumerate: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the Nixon table computed by update-then-evaluate
    Table {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Validate a model file
    Validate {
        #[arg(long)]
        model: String,
        /// Accept partial preorders
        #[arg(long)]
        relaxed: bool,
    },
    /// Write built-in models as .cpm files
    ExportBuiltin {
        /// fine, lewis, noiter or all
        name: String,
        /// Directory to write into
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

struct Fail(i32, String);

fn input(msg: impl std::fmt::Display) -> Fail {
    Fail(EXIT_INPUT, format!("error: {msg}"))
}

fn model_text(spec: &str) -> Result<String, Fail> {
    if let Ok(src) = builtin_source(spec) {
        return Ok(src.to_string());
    }
    std::fs::read_to_string(spec).map_err(|e| input(format!("cannot read model `{spec}`: {e}")))
}

/// Loads a built-in or a file. Partial preorders are accepted so that
/// superset-updated models can be read back.
pub fn load_model(spec: &str) -> Result<ConditionalModel, String> {
    load(spec).map_err(|f| f.1)
}

fn load(spec: &str) -> Result<ConditionalModel, Fail> {
    if let Ok(m) = builtin_model(spec) {
        return Ok(m);
    }
    let text = model_text(spec)?;
    parse_model_with(&text, ValidationMode::Relaxed).map_err(|e| input(format!("{spec}: {e}")))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match Invocation::try_parse_from(args) {
        Ok(inv) => inv,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_TRUE };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(inv.command, out) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}

fn io(e: std::io::Error) -> Fail {
    input(e)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Fail> {
    match cmd {
        Command::Eval {
            model,
            world,
            sem,
            format,
            formulas,
        } => cmd_eval(&model, &world, sem.into(), format, &formulas, out),
        Command::Update {
            model,
            clause,
            sem,
            out: path,
            format,
        } => cmd_update(&model, &clause, sem.into(), path.as_deref(), format, out),
        Command::Translate {
            formula,
            sem,
            max_clause,
            max_nodes,
            literal,
            format,
        } => {
            let budget = TranslationBudget { max_clause, max_nodes };
            let form = if literal { LemmaForm::Literal } else { LemmaForm::Sound };
            cmd_translate(&formula, sem.into(), &budget, form, format, out)
        }
        Command::Check {
            property,
            trials,
            seed,
            no_enumerate,
            format,
        } => {
            let cfg = CheckConfig {
                trials,
                seed,
                enumerate: !no_enumerate,
                ..Default::default()
            };
            cmd_check(&property, &cfg, format, out)
        }
        Command::Table { format } => cmd_table(format, out),
        Command::Validate { model, relaxed } => cmd_validate(&model, relaxed, out),
        Command::ExportBuiltin { name, dir } => cmd_export(&name, &dir, out),
    }
}

fn names(m: &ConditionalModel, s: &crate::models::WorldSet) -> Vec<String> {
    m.names_of(s).into_iter().map(String::from).collect()
}

fn braces(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

fn cmd_eval(
    model: &str,
    world: &str,
    x: Interpretation,
    format: Format,
    formulas: &[String],
    out: &mut dyn Write,
) -> Result<i32, Fail> {
    let m = load(model)?;
    let w = m.world_or_err(world).map_err(input)?;
    let parsed = formulas
        .iter()
        .map(|s| parse_formula(s).map_err(|e| input(format!("`{s}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut all = true;
    for f in &parsed {
        let t = explain(&m, w, f, x);
        all &= t.holds;
        let min = t.min_worlds.as_ref().map(|s| names(&m, s));
        let class = t.agreement_class.as_ref().map(|s| names(&m, s));
        match format {
            Format::Json => {
                let rec = json!({
                    "model": m.name(),
                    "world": world,
                    "interpretation": x.as_str(),
                    "formula": f.to_string(),
                    "holds": t.holds,
                    "min_worlds": min,
                    "agreement_class": class,
                });
                writeln!(out, "{rec}").map_err(io)?;
            }
            Format::Text => {
                writeln!(out, "{}  {f}", t.holds).map_err(io)?;
                if let Some(min) = min {
                    writeln!(out, "  min worlds: {}", braces(&min)).map_err(io)?;
                }
                if let Some(class) = class {
                    writeln!(out, "  agreement class: {}", braces(&class)).map_err(io)?;
                }
            }
        }
    }
    Ok(if all { EXIT_TRUE } else { EXIT_FALSE })
}

fn cmd_update(
    model: &str,
    clause: &str,
    x: Interpretation,
    path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Fail> {
    let m = load(model)?;
    let g = parse_clause_set(clause).map_err(|e| input(format!("clause `{clause}`: {e}")))?;
    let u = update(&m, &UpdateDescriptor::new(g.clone(), x));
    let report = validate_model(&u, ValidationMode::Relaxed);
    if !report.is_ok() {
        return Err(input(format!("updated model is not a conditional model:\n{report}")));
    }
    let text = render_model(&u);
    let mut changes = Vec::new();
    for w in m.world_ids() {
        let (before, after) = (m.entertainable(w), u.entertainable(w));
        let dropped = names(&m, &before.difference(after));
        let order_changed = m.order(w) != u.order(w);
        changes.push((
            m.world_name(w).to_string(),
            dropped,
            order_changed,
            u.order(w).is_total(),
        ));
    }
    if let Some(p) = path {
        std::fs::write(p, &text).map_err(|e| input(format!("cannot write {}: {e}", p.display())))?;
    }
    match format {
        Format::Json => {
            let rec = json!({
                "clause": g.to_string(),
                "interpretation": x.as_str(),
                "changes": changes.iter().map(|(w, d, c, t)| json!({
                    "world": w, "dropped": d, "order_changed": c, "total": t,
                })).collect::<Vec<_>>(),
                "model": text,
            });
            writeln!(out, "{rec}").map_err(io)?;
        }
        Format::Text => {
            writeln!(out, "# update with {g} under {x}").map_err(io)?;
            for (w, dropped, changed, total) in &changes {
                let mut line = format!("# {w}: ");
                if dropped.is_empty() {
                    line.push_str("entertainable set unchanged");
                } else {
                    line.push_str(&format!("drops {}", braces(dropped)));
                }
                if *changed {
                    line.push_str(", order changed");
                }
                if !total {
                    line.push_str(", order partial");
                }
                writeln!(out, "{line}").map_err(io)?;
            }
            if path.is_none() {
                write!(out, "{text}").map_err(io)?;
            }
        }
    }
    Ok(EXIT_TRUE)
}

fn cmd_translate(
    formula: &str,
    x: Interpretation,
    budget: &TranslationBudget,
    form: LemmaForm,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Fail> {
    let f = parse_formula(formula).map_err(|e| input(format!("`{formula}`: {e}")))?;
    let t = translate_with_stats(&f, x, budget, form).map_err(|e| match e {
        TranslationError::ClauseTooLarge { .. } | TranslationError::TooLarge { .. } => {
            Fail(EXIT_BUDGET, format!("error: {e} (raise --max-clause / --max-nodes)"))
        }
    })?;
    match format {
        Format::Json => {
            let rec = json!({
                "formula": f.to_string(),
                "interpretation": x.as_str(),
                "translation": t.formula.to_string(),
                "stats": t.stats,
            });
            writeln!(out, "{rec}").map_err(io)?;
        }
        Format::Text => {
            writeln!(out, "{}", t.formula).map_err(io)?;
            writeln!(out, "# nodes: {}", t.stats.nodes).map_err(io)?;
            writeln!(out, "# shared nodes: {}", t.stats.shared_nodes).map_err(io)?;
            writeln!(out, "# gamma* size: {}", t.stats.gamma_star_size).map_err(io)?;
            writeln!(out, "# modalities lowered: {}", t.stats.modalities_lowered).map_err(io)?;
            writeln!(out, "# comparisons eliminated: {}", t.stats.comparisons_eliminated).map_err(io)?;
        }
    }
    Ok(EXIT_TRUE)
}

fn cmd_check(property: &str, cfg: &CheckConfig, format: Format, out: &mut dyn Write) -> Result<i32, Fail> {
    let ids: Vec<&str> = if property == "all" {
        PROPERTIES.iter().copied().filter(|&p| p != "modal-gamma").collect()
    } else {
        vec![property]
    };
    let reports = ids
        .iter()
        .map(|id| check_property(id, cfg).map_err(input))
        .collect::<Result<Vec<CheckReport>, _>>()?;
    for r in &reports {
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(r).expect("report serializes")).map_err(io)?,
            Format::Text => write!(out, "{r}").map_err(io)?,
        }
    }
    Ok(if reports.iter().all(CheckReport::passed) {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    })
}

fn cmd_table(format: Format, out: &mut dyn Write) -> Result<i32, Fail> {
    let cells = nixon_table();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&cells).expect("cells serialize")).map_err(io)?,
        Format::Text => {
            writeln!(out, "{:<12} {:<8} {:<6} {:<6} {:<6}", "", "clause", "CP", "NC", "MS").map_err(io)?;
            for row in cells.chunks(3) {
                let v = |i: usize| if row[i].computed { "true" } else { "false" };
                writeln!(
                    out,
                    "{:<12} {:<8} {:<6} {:<6} {:<6}",
                    row[0].counterfactual,
                    row[0].clause,
                    v(0),
                    v(1),
                    v(2)
                )
                .map_err(io)?;
            }
            let ok = cells.iter().filter(|c| c.computed == c.expected).count();
            writeln!(out, "{ok}/{} cells as expected", cells.len()).map_err(io)?;
        }
    }
    Ok(if cells.iter().all(|c| c.computed == c.expected) {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    })
}

fn cmd_validate(model: &str, relaxed: bool, out: &mut dyn Write) -> Result<i32, Fail> {
    let text = model_text(model)?;
    let m = crate::models::parse_model_unchecked(&text).map_err(|e| input(format!("{model}: {e}")))?;
    let mode = if relaxed {
        ValidationMode::Relaxed
    } else {
        ValidationMode::Strict
    };
    let report = validate_model(&m, mode);
    if report.is_ok() {
        writeln!(out, "ok: {} ({} worlds)", m.name(), m.len()).map_err(io)?;
    }
    write!(out, "{report}").map_err(io)?;
    Ok(if report.is_ok() { EXIT_TRUE } else { EXIT_FALSE })
}

fn cmd_export(name: &str, dir: &Path, out: &mut dyn Write) -> Result<i32, Fail> {
    let names: Vec<&str> = if name == "all" {
        BUILTIN_MODELS.to_vec()
    } else {
        vec![name]
    };
    std::fs::create_dir_all(dir).map_err(|e| input(format!("cannot create {}: {e}", dir.display())))?;
    for n in names {
        let src = builtin_source(n).map_err(input)?;
        let path = dir.join(format!("{n}.cpm"));
        std::fs::write(&path, src).map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
        writeln!(out, "wrote {}", path.display()).map_err(io)?;
    }
    Ok(EXIT_TRUE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("ceteris").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_exit_codes() {
        let (c, o, _) = go(&["eval", "--model", "fine", "--world", "w", "--sem", "cp", "[p,{m}]h"]);
        assert_eq!(c, 0);
        assert!(o.contains("min worlds: {u1}"), "{o}");
        let (c, o, _) = go(&["eval", "--model", "fine", "--world", "w", "p cf> h"]);
        assert_eq!(c, 1);
        assert!(o.contains("min worlds: {v1}"), "{o}");
        let (c, _, e) = go(&["eval", "--model", "fine", "--world", "nowhere", "p"]);
        assert_eq!(c, 2, "{e}");
        let (c, _, _) = go(&["eval", "--model", "fine", "--world", "w", "p &"]);
        assert_eq!(c, 2);
        let (c, _, _) = go(&["frobnicate"]);
        assert_eq!(c, 2);
    }

    #[test]
    fn translate_budget_exit() {
        let (c, _, e) = go(&["translate", "--sem", "ms", "--max-nodes", "10", "[p, {a, b}] q"]);
        assert_eq!(c, 3, "{e}");
        let (c, o, _) = go(&["translate", "[p, {m}] h"]);
        assert_eq!(c, 0);
        assert!(o.contains("# gamma* size: 2"), "{o}");
    }

    #[test]
    fn table_passes() {
        let (c, o, _) = go(&["table"]);
        assert_eq!(c, 0);
        assert!(o.contains("12/12"), "{o}");
    }
}
