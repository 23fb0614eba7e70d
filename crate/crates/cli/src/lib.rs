//! The `dualis` command line: prove, check, dualize, mirror, classify,
//! enumerate and rules.
//!
//! Exit codes: 0 success (proved, valid, no disagreements), 1 refuted or
//! invalid, 2 unknown, 64 usage, parse and IO errors.

pub mod corpus;
pub mod report;

use std::io::{Read, Write};
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use dualis::calculus::{builtin_calculus, BuiltinId, Calculus, Sequent};
use dualis::engine::{check_proof, ContractionPolicy, ProofDocument, SearchConfig, SearchResult};
use dualis::formula::parse_formula;
use dualis::search;
use dualis::semantics::classify;
use dualis::stahlize::{mirror_sequent, stahlize_calculus};
use serde_json::{json, Value};

use crate::corpus::{generate, CorpusSpec, Template};
use crate::report::build_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const DEPTH_ENV: &str = "DUALIS_DEPTH";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "dualis", version, about = "Sequent calculi and their arrow-reversed duals")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
    /// Search depth bound [default: $DUALIS_DEPTH or 64].
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// `implicit-set` or `bounded:K`.
    #[arg(long, global = true, default_value = "implicit-set")]
    contraction: ContractionPolicy,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search for a proof of a sequent.
    Prove {
        /// Builtin id (LK, LJ, SP, ANTI_LJ) or calculus JSON file.
        #[arg(long)]
        calculus: String,
        sequent: String,
    },
    /// Check a proof file; `-` reads standard input.
    Check {
        proof: String,
        /// Defaults to the calculus named in the file.
        #[arg(long)]
        calculus: Option<String>,
    },
    /// Reverse every rule of a calculus; `-` reads JSON from standard input.
    Dualize { calculus: String },
    /// Swap the two sides of a sequent.
    Mirror { sequent: String },
    /// Tautology, Contradiction or Contingent.
    Classify { formula: String },
    /// Compare search against the truth-table oracle over a generated corpus.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        atoms: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// Comma-separated: right, left, multi.
        #[arg(long, value_delimiter = ',', default_value = "right,left,multi")]
        templates: Vec<Template>,
        #[arg(long, default_value_t = 2000)]
        multi_count: usize,
        #[arg(long, default_value_t = 3)]
        max_per_side: usize,
        #[arg(long, default_value_t = 2)]
        multi_max_size: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Comma-separated builtin ids.
        #[arg(long, value_delimiter = ',', default_value = "LK,LJ,SP,ANTI_LJ")]
        calculi: Vec<BuiltinId>,
        /// Leave per-sequent rows out of the JSON report.
        #[arg(long)]
        no_rows: bool,
    },
    /// List the rules of a calculus.
    Rules { calculus: String },
}

/// A diagnostic plus the exit code it maps to.
struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

struct Ctx<'a> {
    emit: Emit,
    config: SearchConfig,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn print(&mut self, text: &str) -> Result<(), Failure> {
        let sep = if text.ends_with('\n') { "" } else { "\n" };
        write!(self.out, "{text}{sep}").map_err(|e| usage(format!("write failed: {e}")))
    }

    fn print_json(&mut self, v: &Value) -> Result<(), Failure> {
        self.print(&serde_json::to_string_pretty(v).expect("json value serializes"))
    }

    fn read_source(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| usage(format!("reading standard input: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| usage(format!("reading {path}: {e}")))
        }
    }

    /// Builtin id first, then a calculus JSON file.
    fn load_calculus(&mut self, spec: &str) -> Result<Calculus, Failure> {
        if let Ok(id) = spec.parse::<BuiltinId>() {
            return Ok(builtin_calculus(id));
        }
        if spec != "-" && !Path::new(spec).exists() {
            return Err(usage(format!("unknown calculus `{spec}` (not a builtin id or a file)")));
        }
        let text = self.read_source(spec)?;
        Calculus::from_json(&text).map_err(|e| usage(format!("{spec}: {e}")))
    }
}

/// Runs one invocation. `depth_env` is the value of `DUALIS_DEPTH`.
pub fn run<I, T>(
    args: I,
    depth_env: Option<String>,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli, depth_env, stdin, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "dualis: {msg}");
            code
        }
    }
}

fn resolve_depth(flag: Option<usize>, env: Option<String>) -> Result<usize, Failure> {
    match (flag, env) {
        (Some(d), _) => Ok(d),
        (None, Some(v)) => v.trim().parse().map_err(|_| usage(format!("{DEPTH_ENV}={v:?} is not a natural number"))),
        (None, None) => Ok(SearchConfig::DEFAULT_DEPTH),
    }
}

fn dispatch(cli: Cli, depth_env: Option<String>, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let config = SearchConfig {
        depth_bound: resolve_depth(cli.depth, depth_env)?,
        contraction_policy: cli.contraction,
        ..SearchConfig::default()
    };
    let mut ctx = Ctx { emit: cli.emit, config, stdin, out };
    match cli.command {
        Command::Prove { calculus, sequent } => cmd_prove(&mut ctx, &calculus, &sequent),
        Command::Check { proof, calculus } => cmd_check(&mut ctx, &proof, calculus.as_deref()),
        Command::Dualize { calculus } => cmd_dualize(&mut ctx, &calculus),
        Command::Mirror { sequent } => cmd_mirror(&mut ctx, &sequent),
        Command::Classify { formula } => cmd_classify(&mut ctx, &formula),
        Command::Rules { calculus } => cmd_rules(&mut ctx, &calculus),
        Command::Enumerate {
            atoms,
            max_size,
            templates,
            multi_count,
            max_per_side,
            multi_max_size,
            seed,
            calculi,
            no_rows,
        } => {
            let spec =
                CorpusSpec { atom_count: atoms, max_size, templates, multi_count, max_per_side, multi_max_size, seed };
            cmd_enumerate(&mut ctx, &spec, &calculi, no_rows)
        }
    }
}

fn parse_sequent(text: &str) -> Result<Sequent, Failure> {
    Sequent::parse(text).map_err(|e| usage(format!("cannot parse sequent {text:?}: {e}")))
}

fn calculus_value(c: &Calculus) -> Value {
    serde_json::from_str(&c.to_json()).expect("calculus JSON is valid")
}

fn cmd_prove(ctx: &mut Ctx<'_>, calculus: &str, sequent: &str) -> Outcome {
    let c = ctx.load_calculus(calculus)?;
    let goal = parse_sequent(sequent)?;
    let result = search(&c, &goal, &ctx.config).map_err(usage)?;
    let code = match result {
        SearchResult::Proved(_) => EXIT_OK,
        SearchResult::Refuted => EXIT_NEGATIVE,
        SearchResult::Unknown { .. } => EXIT_UNKNOWN,
    };
    match ctx.emit {
        Emit::Json => {
            let proof = match &result {
                SearchResult::Proved(p) => {
                    serde_json::to_value(ProofDocument { calculus: c.name.clone(), root: p.clone() })
                        .expect("proof serializes")
                }
                _ => Value::Null,
            };
            let v = json!({
                "calculus": c.name,
                "sequent": goal.to_string(),
                "verdict": result.verdict(),
                "depth_bound": ctx.config.depth_bound,
                "contraction": ctx.config.contraction_policy.to_string(),
                "proof": proof,
            });
            ctx.print_json(&v)?;
        }
        Emit::Text => {
            let text = match &result {
                SearchResult::Proved(p) => format!("proved in {}\n{}", c.name, p.render_text()),
                SearchResult::Refuted => format!("refuted in {}: no proof of {goal} exists", c.name),
                SearchResult::Unknown { depth_bound } => {
                    format!("unknown in {}: search of {goal} hit the depth bound {depth_bound}", c.name)
                }
            };
            ctx.print(&text)?;
        }
    }
    Ok(code)
}

/// Accepts a proof document or any object carrying one under `proof`,
/// such as the JSON output of `prove`.
fn read_proof_document(text: &str) -> Result<ProofDocument, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let doc = match v.get("proof") {
        Some(inner) if v.get("root").is_none() => inner.clone(),
        _ => v,
    };
    if doc.is_null() {
        return Err("document carries no proof".into());
    }
    serde_json::from_value(doc).map_err(|e| e.to_string())
}

fn cmd_check(ctx: &mut Ctx<'_>, path: &str, calculus: Option<&str>) -> Outcome {
    let text = ctx.read_source(path)?;
    let doc = read_proof_document(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    let c = ctx.load_calculus(calculus.unwrap_or(&doc.calculus))?;
    let verdict = check_proof(&c, &doc.root);
    match ctx.emit {
        Emit::Json => {
            let failure = verdict.failure.as_ref().map(|f| json!({ "path": f.path, "reason": f.reason.to_string() }));
            ctx.print_json(&json!({ "calculus": c.name, "valid": verdict.is_valid(), "failure": failure }))?;
        }
        Emit::Text => ctx.print(&format!("{}: {verdict}", c.name))?,
    }
    Ok(if verdict.is_valid() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_dualize(ctx: &mut Ctx<'_>, calculus: &str) -> Outcome {
    let c = ctx.load_calculus(calculus)?;
    let d = stahlize_calculus(&c);
    let text = match ctx.emit {
        Emit::Json => d.to_json(),
        Emit::Text => d.render_text(),
    };
    ctx.print(&text)?;
    Ok(EXIT_OK)
}

fn cmd_rules(ctx: &mut Ctx<'_>, calculus: &str) -> Outcome {
    let c = ctx.load_calculus(calculus)?;
    match ctx.emit {
        Emit::Json => ctx.print_json(&calculus_value(&c))?,
        Emit::Text => ctx.print(&c.render_text())?,
    }
    Ok(EXIT_OK)
}

fn cmd_mirror(ctx: &mut Ctx<'_>, sequent: &str) -> Outcome {
    let s = parse_sequent(sequent)?;
    let m = mirror_sequent(&s);
    match ctx.emit {
        Emit::Json => ctx.print_json(&json!({ "sequent": s.to_string(), "mirror": m.to_string() }))?,
        Emit::Text => ctx.print(&m.to_string())?,
    }
    Ok(EXIT_OK)
}

fn cmd_classify(ctx: &mut Ctx<'_>, formula: &str) -> Outcome {
    let f = parse_formula(formula).map_err(|e| usage(format!("cannot parse formula {formula:?}: {e}")))?;
    let class = classify(&f).map_err(usage)?;
    match ctx.emit {
        Emit::Json => ctx.print_json(&json!({ "formula": f.to_string(), "classification": class.to_string() }))?,
        Emit::Text => ctx.print(&class.to_string())?,
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(ctx: &mut Ctx<'_>, spec: &CorpusSpec, calculi: &[BuiltinId], no_rows: bool) -> Outcome {
    if calculi.is_empty() {
        return Err(usage("no calculi given"));
    }
    let corpus = generate(spec).map_err(usage)?;
    let mut report = build_report(spec, &corpus, calculi, &ctx.config);
    let passed = report.passed();
    match ctx.emit {
        Emit::Json => {
            if no_rows {
                report.rows.clear();
            }
            ctx.print(&report.to_json())?;
        }
        Emit::Text => ctx.print(&report.render_text())?,
    }
    Ok(if passed { EXIT_OK } else { EXIT_NEGATIVE })
}
