//! Command-line front end. Every command builds a JSON report; the human
//! output is a rendering of that same report.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::corpus::{self, CorpusError, ModelGrid, PhaseResult};
use crate::kernel::{Equation, Strength, TheoryRef};
use crate::semantics::{applicable, check_equation_model, FiniteModel, SemanticsError, DEFAULT_CAP};
use crate::syntax::{parse_equation, parse_script, parse_term_or_equation};
use crate::term::{decoration_of, typecheck, Loc, Term};
use crate::theory::{bank_theory, state_theory, Theory, BANK_LOCATION};
use crate::translate::{
    erase_check, erase_equation, erase_script, erase_term, erase_theory, expand_equation, expand_term,
    explicit_typecheck, simplify, simplify_equation,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "statecheck", version, about = "Check decorated equational proofs about global states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoryChoice {
    State,
    Bank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrengthChoice {
    Strong,
    Weak,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Theory to work in.
    #[arg(long, value_enum)]
    pub theory: Option<TheoryChoice>,
    /// Locations of the state theory, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub locations: Option<Vec<String>>,
    /// Print the JSON report instead of the text rendering.
    #[arg(long)]
    pub json: bool,
    /// Largest number of (input, state) pairs the oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a proof script with the kernel, then check its erasure.
    Check {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Expand a term or equation into explicit state-passing form.
    Expand {
        input: String,
        /// Also print the peephole-simplified expansion.
        #[arg(long)]
        simplify: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Drop decorations from a term, an equation or a proof file.
    Erase {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check an equation exhaustively in a finite model.
    Verify {
        equation: String,
        /// Carrier sizes such as `i:2,j:3` (for the bank, `acct:N` sets the modulus).
        #[arg(long)]
        model: Option<String>,
        /// Check with this strength instead of the written one.
        #[arg(long, value_enum)]
        strength: Option<StrengthChoice>,
        #[command(flatten)]
        common: Common,
    },
    /// Check every bundled proof and sweep it through the model grid.
    Corpus {
        /// `full`, or size vectors such as `2x3,2x2x2`.
        #[arg(long, default_value = "full")]
        model_grid: String,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Check { common, .. }
            | Command::Expand { common, .. }
            | Command::Erase { common, .. }
            | Command::Verify { common, .. }
            | Command::Corpus { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Expand { .. } => "expand",
            Command::Erase { .. } => "erase",
            Command::Verify { .. } => "verify",
            Command::Corpus { .. } => "corpus",
        }
    }
}

/// A finished command: its report and exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub code: u8,
}

impl Outcome {
    /// The text printed on stdout.
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
            s.push('\n');
            s
        } else {
            render_human(&self.report)
        }
    }
}

enum CliError {
    Usage(String),
    Cap(String),
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn semantics_error(e: SemanticsError) -> CliError {
    match e {
        SemanticsError::EnumerationTooLarge { .. } => CliError::Cap(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn run(cli: &Cli) -> Outcome {
    let cmd = &cli.command;
    let result = match cmd {
        Command::Check { file, common } => cmd_check(file, common),
        Command::Expand { input, simplify, common } => cmd_expand(input, *simplify, common),
        Command::Erase { input, common } => cmd_erase(input, common),
        Command::Verify { equation, model, strength, common } => {
            cmd_verify(equation, model.as_deref(), *strength, common)
        }
        Command::Corpus { model_grid, common } => cmd_corpus(model_grid, common),
    };
    match result {
        Ok(o) => o,
        Err(e) => {
            let (code, msg) = match e {
                CliError::Usage(m) => (EXIT_USAGE, m),
                CliError::Cap(m) => (EXIT_CAP, m),
            };
            Outcome { report: json!({ "command": cmd.name(), "status": "error", "error": msg }), code }
        }
    }
}

/// The theory named by the flags; `fallback` supplies state locations when
/// `--locations` is absent.
fn theory_from_flags(common: &Common, fallback: &[Loc]) -> Result<Theory, CliError> {
    match common.theory {
        Some(TheoryChoice::Bank) => {
            if common.locations.is_some() {
                return Err(usage("--locations does not apply to the bank theory"));
            }
            Ok(bank_theory())
        }
        _ => match &common.locations {
            Some(locs) => state_theory(locs).map_err(usage),
            None if fallback.is_empty() => state_theory(&["i"]).map_err(usage),
            None => state_theory(&fallback.iter().map(Loc::as_str).collect::<Vec<_>>()).map_err(usage),
        },
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn cmd_check(file: &Path, common: &Common) -> Result<Outcome, CliError> {
    let src = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let script = parse_script(&src).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let th = if common.theory.is_some() || common.locations.is_some() {
        theory_from_flags(common, &[])?
    } else {
        script.theory.build().map_err(usage)?
    };
    let session = corpus::session_for(&th)?;
    let apparent = corpus::apparent_session_for(&th)?;
    let kernel = session.check(&script);
    let erased = erase_check(&apparent, &script);
    let accepted = kernel.is_accepted() && erased.is_accepted();
    let report = json!({
        "command": "check",
        "file": file.display().to_string(),
        "script": script.name,
        "theory": th.header(),
        "goal": script.goal.to_string(),
        "lemmas": session.lemmas().map(|r| r.id.clone()).collect::<Vec<_>>(),
        "kernel": to_value(&PhaseResult::from(&kernel)),
        "erased": to_value(&PhaseResult::from(&erased)),
        "status": if accepted { "accepted" } else { "rejected" },
    });
    Ok(Outcome { report, code: if accepted { EXIT_OK } else { EXIT_FAILED } })
}

fn mentioned(input: &Result<Term, Equation>) -> Vec<Loc> {
    let mut locs = match input {
        Ok(t) => t.mentioned_locs(),
        Err(eq) => {
            let mut v = eq.lhs.mentioned_locs();
            v.extend(eq.rhs.mentioned_locs());
            v
        }
    };
    locs.sort();
    locs.dedup();
    locs
}

fn cmd_expand(input: &str, simp: bool, common: &Common) -> Result<Outcome, CliError> {
    let parsed = parse_term_or_equation(input).map_err(usage)?;
    let th = theory_from_flags(common, &mentioned(&parsed))?;
    let mut report = json!({ "command": "expand", "input": input, "theory": th.header(), "status": "ok" });
    match &parsed {
        Ok(t) => {
            let e = expand_term(&th, t).map_err(usage)?;
            let (src, tgt) = explicit_typecheck(&th, &e).map_err(usage)?;
            report["kind"] = json!("term");
            report["expanded"] = json!(e.to_string());
            report["arrow"] = json!(format!("{src} -> {tgt}"));
            if simp {
                report["simplified"] = json!(simplify(&th, &e).to_string());
            }
        }
        Err(eq) => {
            let e = expand_equation(&th, eq).map_err(usage)?;
            report["kind"] = json!("equation");
            report["strength"] = to_value(&eq.strength);
            report["expanded"] = json!(e.to_string());
            if simp {
                report["simplified"] = json!(simplify_equation(&th, &e).to_string());
            }
        }
    }
    Ok(Outcome { report, code: EXIT_OK })
}

fn cmd_erase(input: &str, common: &Common) -> Result<Outcome, CliError> {
    let path = Path::new(input);
    if path.is_file() {
        let src = std::fs::read_to_string(path).map_err(|e| usage(format!("{input}: {e}")))?;
        let script = parse_script(&src).map_err(|e| usage(format!("{input}: {e}")))?;
        let report = json!({
            "command": "erase",
            "input": input,
            "kind": "proof",
            "theory": script.theory.header(),
            "apparent": erase_script(&script).to_string(),
            "status": "ok",
        });
        return Ok(Outcome { report, code: EXIT_OK });
    }
    let parsed = parse_term_or_equation(input).map_err(usage)?;
    let th = theory_from_flags(common, &mentioned(&parsed))?;
    let plain = erase_theory(&th);
    let mut report = json!({ "command": "erase", "input": input, "theory": th.header(), "status": "ok" });
    match &parsed {
        Ok(t) => {
            let (src, tgt) = typecheck(t, &th).map_err(usage)?;
            let d = decoration_of(t, &th).map_err(usage)?;
            let e = erase_term(t);
            typecheck(&e, &plain).map_err(usage)?;
            report["kind"] = json!("term");
            report["decoration"] = to_value(&d);
            report["apparent"] = json!(format!("{e} : {src} -> {tgt}"));
        }
        Err(eq) => {
            eq.arrow(&th).map_err(usage)?;
            let e = erase_equation(eq);
            let (src, tgt) = e.arrow(&plain).map_err(usage)?;
            report["kind"] = json!("equation");
            report["strength"] = to_value(&eq.strength);
            report["apparent"] = json!(format!("{} = {} : {src} -> {tgt}", e.lhs, e.rhs));
        }
    }
    Ok(Outcome { report, code: EXIT_OK })
}

fn cmd_verify(
    input: &str,
    model: Option<&str>,
    strength: Option<StrengthChoice>,
    common: &Common,
) -> Result<Outcome, CliError> {
    let mut eq = parse_equation(input).map_err(usage)?;
    if let Some(s) = strength {
        eq.strength = match s {
            StrengthChoice::Strong => Strength::Strong,
            StrengthChoice::Weak => Strength::Weak,
        };
    }
    let bank = common.theory == Some(TheoryChoice::Bank);
    let (th, m) = if bank {
        let th = theory_from_flags(common, &[])?;
        let modulus = match model {
            None => crate::semantics::DEFAULT_BANK_MODULUS,
            Some(text) => text
                .strip_prefix(BANK_LOCATION)
                .and_then(|r| r.strip_prefix(':'))
                .and_then(|n| n.trim().parse().ok())
                .ok_or_else(|| usage(format!("bank models are written `{BANK_LOCATION}:N`, not `{text}`")))?,
        };
        (th, FiniteModel::bank(modulus).map_err(semantics_error)?)
    } else {
        let m = match model {
            Some(text) => Some(FiniteModel::parse(text).map_err(semantics_error)?),
            None => None,
        };
        let fallback: Vec<Loc> = match &m {
            Some(m) => m.locations().cloned().collect(),
            None => mentioned(&Err(eq.clone())),
        };
        let th = theory_from_flags(common, &fallback)?;
        let m = match m {
            Some(m) => m,
            None => {
                let sizes: Vec<(&str, u32)> = th.locations.iter().map(|l| (l.as_str(), 2)).collect();
                FiniteModel::canonical(&sizes).map_err(semantics_error)?
            }
        };
        (th, m)
    };
    eq.arrow(&th).map_err(usage)?;
    if !applicable(&th, &eq, &m) {
        return Err(usage(format!("model {m} cannot interpret `{eq}` in {}", th.header())));
    }
    let check = check_equation_model(&th, &eq, &m, common.cap).map_err(semantics_error)?;
    let report = json!({
        "command": "verify",
        "equation": eq.to_string(),
        "theory": th.header(),
        "model": m.to_string(),
        "holds": check.holds,
        "inputs": check.inputs,
        "counterexample": to_value(&check.counterexample),
        "status": if check.holds { "holds" } else { "fails" },
    });
    Ok(Outcome { report, code: if check.holds { EXIT_OK } else { EXIT_FAILED } })
}

fn cmd_corpus(grid: &str, common: &Common) -> Result<Outcome, CliError> {
    let mut scripts = corpus::scripts()?;
    if let Some(choice) = common.theory {
        scripts.retain(|(_, s)| matches!(s.theory, TheoryRef::Bank) == (choice == TheoryChoice::Bank));
    }
    let known: Vec<String> = scripts
        .iter()
        .flat_map(|(_, s)| match &s.theory {
            TheoryRef::State(locs) => locs.clone(),
            TheoryRef::Bank => Vec::new(),
        })
        .collect();
    let locations: Option<Vec<Loc>> = match &common.locations {
        Some(names) => {
            if let Some(bad) = names.iter().find(|n| !known.contains(n)) {
                return Err(usage(format!("location `{bad}` is not used by the bundled proofs")));
            }
            Some(names.iter().map(Loc::new).collect())
        }
        None => None,
    };
    let max_len = locations.as_ref().map_or(3, Vec::len);
    let grid = ModelGrid::parse(grid, max_len)?;
    let report = corpus::run_corpus(&grid, locations.as_deref(), common.cap, &scripts)?;
    if let Some(e) = report.items.iter().flat_map(|i| &i.oracle.failures).find_map(|f| f.error.as_ref()) {
        if e.contains("exceeds the cap") {
            return Err(CliError::Cap(e.clone()));
        }
    }
    let ok = report.ok();
    let mut v = to_value(&report);
    v["command"] = json!("corpus");
    v["grid"] = json!(grid.0.iter().map(|s| s.iter().map(u32::to_string).collect::<Vec<_>>().join("x")).collect::<Vec<_>>());
    v["status"] = json!(if ok { "ok" } else { "failed" });
    Ok(Outcome { report: v, code: if ok { EXIT_OK } else { EXIT_FAILED } })
}

/// Indented `key: value` text for a JSON report.
pub fn render_human(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_))) => {
            Some(format!("[{}]", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match (scalar(x), x) {
                    (Some(s), _) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    (None, Value::String(s)) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for line in s.lines() {
                            out.push_str(&format!("{pad}  {line}\n"));
                        }
                    }
                    (None, Value::Array(a)) if a.is_empty() => out.push_str(&format!("{pad}{k}: (none)\n")),
                    (None, _) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(x, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(x, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let cli = Cli::try_parse_from(std::iter::once("statecheck").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn verify_update_then_lookup() {
        let o = run_args(&["verify", "comp(l[i],u[i]) ~~ id[V[i]]", "--model", "i:2,j:2"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.report);
        assert_eq!(o.report["holds"], json!(true));
        let o = run_args(&["verify", "comp(l[i],u[i]) ~~ id[V[i]]", "--model", "i:2,j:2", "--strength", "strong"]);
        assert_eq!(o.code, EXIT_FAILED);
        assert!(o.report["counterexample"].is_object());
    }

    #[test]
    fn verify_reports_cap_and_parse_errors() {
        let o = run_args(&["verify", "comp(l[i],u[i]) ~~ id[V[i]]", "--model", "i:3,j:3", "--cap", "5"]);
        assert_eq!(o.code, EXIT_CAP);
        let o = run_args(&["verify", "comp(u[i]"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert_eq!(o.report["status"], json!("error"));
    }

    #[test]
    fn corpus_on_a_two_location_grid() {
        let o = run_args(&["corpus", "--locations", "i,j", "--model-grid", "2x3", "--json"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.render(true));
        assert_eq!(o.report["items"].as_array().unwrap().len(), 8);
        assert_eq!(o.report["grid"], json!(["2x3"]));
    }

    #[test]
    fn reports_are_stable_and_rendered_from_json() {
        let a = run_args(&["expand", "comp(l[i], u[i])", "--simplify"]);
        let b = run_args(&["expand", "comp(l[i], u[i])", "--simplify"]);
        assert_eq!(a.render(true), b.render(true));
        let text = a.render(false);
        assert!(text.contains("expanded: "), "{text}");
        assert!(text.contains("status: ok"));
    }

    #[test]
    fn erase_term_and_equation() {
        let o = run_args(&["erase", "l[i]"]);
        assert_eq!(o.report["apparent"], json!("l[i] : unit -> V[i]"));
        assert_eq!(o.report["decoration"], json!("accessor"));
        let o = run_args(&["erase", "comp(l[i], u[i]) ~~ id[V[i]]"]);
        assert_eq!(o.report["apparent"], json!("comp(l[i], u[i]) = id[V[i]] : V[i] -> V[i]"));
    }

    #[test]
    fn bank_verify_uses_modulus() {
        let eq = "comp(balance, deposit, seven) ~~ comp(plus, prod(seven, id[V[acct]]), pi2inv[V[acct]], balance)";
        let o = run_args(&["verify", eq, "--theory", "bank", "--model", "acct:10"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.report);
        let o = run_args(&["verify", eq, "--theory", "bank", "--model", "acct:10", "--strength", "strong"]);
        assert_eq!(o.code, EXIT_FAILED);
    }
}
