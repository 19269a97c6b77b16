//! `pal` — command-line driver for the announcement-logic model checker.
//!
//! Exit codes: 0 on success (or a Valid verdict / true evaluation), 1 on a
//! countermodel or false evaluation or a suite expectation mismatch, 2 on
//! usage or input errors.

use clap::{Args, Parser, Subcommand};
use pal_core::checker::{check_rule, check_valid, Scope, Semantics, Verdict};
use pal_core::enumerate::Frame;
use pal_core::formula::Agent;
use pal_core::model::{EpistemicModel, WorldSet};
use pal_core::suites::{axiom_suite, faithfulness_sweep, substitution_suite, SuiteReport};
use pal_core::{direct, parse, sse, wisemen};
use serde_json::{json, Value};
use std::fmt;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pal", version, about = "Announcement-logic model checker")]
struct Cli {
    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ScopeArgs {
    /// Largest number of worlds searched.
    #[arg(long, default_value_t = 2)]
    max_worlds: usize,
    /// Comma-separated agent names.
    #[arg(long, value_delimiter = ',', default_value = "a,b")]
    agents: Vec<String>,
    /// Comma-separated atom names.
    #[arg(long, value_delimiter = ',', default_value = "p,q")]
    atoms: Vec<String>,
    /// Frame class: k or s5 (default s5). For suites this also restricts
    /// the reported rows to one frame.
    #[arg(long)]
    frame: Option<String>,
    /// Cap on the number of models examined.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its canonical rendering.
    Parse { formula: String },
    /// Evaluate a formula at a world of a model file.
    Eval {
        #[arg(long)]
        model: String,
        #[arg(long)]
        world: String,
        /// Evaluation domain (world ids, comma separated); implies sse.
        #[arg(long, value_delimiter = ',')]
        domain: Option<Vec<String>>,
        #[arg(long, default_value = "direct")]
        semantics: String,
        formula: String,
    },
    /// Announce a formula in a model and print the updated model.
    Announce {
        #[arg(long)]
        model: String,
        formula: String,
    },
    /// Bounded validity check; prints a countermodel if one exists.
    Valid {
        #[command(flatten)]
        scope: ScopeArgs,
        #[arg(long, default_value = "direct")]
        semantics: String,
        formula: String,
    },
    /// Check an inference rule as per-model validity preservation.
    Rule {
        #[command(flatten)]
        scope: ScopeArgs,
        #[arg(long, default_value = "direct")]
        semantics: String,
        #[arg(long = "premise", required = true)]
        premises: Vec<String>,
        #[arg(long)]
        conclusion: String,
    },
    /// Run a reproduction suite: axioms, substitution, or faithfulness.
    Suite {
        /// Which suite: axioms | substitution | faithfulness.
        which: String,
        #[command(flatten)]
        scope: ScopeArgs,
        /// Restrict suite rows to one semantics (direct or sse).
        #[arg(long)]
        semantics: Option<String>,
    },
    /// Solve the wise men puzzle and report the announcement cascade.
    Wisemen {
        /// Include the optional white-spot visibility axioms.
        #[arg(long)]
        footnote_axioms: bool,
        /// Also check premises |- goal over a tiny bounded scope.
        #[arg(long)]
        consequence_check: bool,
    },
}

/// Any input or usage problem; maps to exit code 2.
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn parse_frame(s: &str) -> Result<Frame, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "k" => Ok(Frame::K),
        "s5" => Ok(Frame::S5),
        other => Err(CliError(format!("unknown frame `{other}` (use k or s5)"))),
    }
}

fn parse_semantics(s: &str) -> Result<Semantics, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "direct" => Ok(Semantics::Direct),
        "sse" => Ok(Semantics::Sse),
        other => Err(CliError(format!(
            "unknown semantics `{other}` (use direct or sse)"
        ))),
    }
}

fn build_scope(args: &ScopeArgs, semantics: Semantics) -> Result<Scope, CliError> {
    let agents = args
        .agents
        .iter()
        .map(|a| Agent::new(a.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let frame = parse_frame(args.frame.as_deref().unwrap_or("s5"))?;
    let mut scope = Scope::new(
        args.max_worlds,
        agents,
        args.atoms.clone(),
        frame,
        semantics,
    )?;
    if let Some(b) = args.budget {
        scope = scope.with_budget(b);
    }
    Ok(scope)
}

fn load_model(path: &str) -> Result<EpistemicModel, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read `{path}`: {e}")))?;
    Ok(EpistemicModel::from_json_str(&text)?)
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::ValidUpToBound { models_checked } => json!({
            "verdict": "valid_up_to_bound",
            "models_checked": models_checked,
        }),
        Verdict::Countermodel(c) => {
            let mut out = json!({
                "verdict": "countermodel",
                "model": c.model.to_json_value(),
                "world": c.world,
            });
            if let Some(d) = &c.domain {
                out["domain"] = json!(d);
            }
            out
        }
    }
}

/// Prints a verdict and returns the exit code. In human mode a countermodel
/// goes to stdout as a bare model file (feedable back to `pal eval`), with
/// the witness world/domain on stderr.
fn report_verdict(v: &Verdict, as_json: bool) -> ExitCode {
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&verdict_json(v)).unwrap()
        );
        return match v {
            Verdict::ValidUpToBound { .. } => ExitCode::SUCCESS,
            Verdict::Countermodel(_) => ExitCode::from(1),
        };
    }
    match v {
        Verdict::ValidUpToBound { models_checked } => {
            println!("valid up to bound ({models_checked} models checked)");
            ExitCode::SUCCESS
        }
        Verdict::Countermodel(c) => {
            match &c.domain {
                Some(d) => eprintln!(
                    "countermodel: world {} in domain {{{}}}",
                    c.world,
                    d.join(", ")
                ),
                None => eprintln!("countermodel: world {}", c.world),
            }
            println!("{}", c.model.to_json_string());
            ExitCode::from(1)
        }
    }
}

/// The human suite table is rendered from the JSON report, so the two
/// outputs cannot drift apart.
fn render_suite_table(report: &Value) -> String {
    let mut out = String::new();
    let rows = report.as_array().expect("suite report is an array");
    out.push_str(&format!(
        "{:<34} {:<5} {:<7} {:<13} {:<13} {:<5} {:>7}\n",
        "item", "frame", "backend", "verdict", "expected", "ok", "millis"
    ));
    for row in rows {
        let get = |k: &str| row[k].as_str().unwrap_or("?").to_string();
        let ok = row["verdict"] == row["expected"];
        out.push_str(&format!(
            "{:<34} {:<5} {:<7} {:<13} {:<13} {:<5} {:>7}\n",
            get("name"),
            get("frame"),
            get("semantics"),
            get("verdict"),
            get("expected"),
            if ok { "yes" } else { "NO" },
            row["millis"].as_u64().unwrap_or(0),
        ));
    }
    out
}

fn report_suite(report: &SuiteReport, as_json: bool) -> ExitCode {
    let json_report = report.to_json();
    if as_json {
        println!("{}", serde_json::to_string_pretty(&json_report).unwrap());
    } else {
        print!("{}", render_suite_table(&json_report));
        let mismatches = report.mismatches();
        if mismatches.is_empty() {
            println!("all {} rows match expectations", report.items.len());
        } else {
            for item in &mismatches {
                println!(
                    "MISMATCH: {} [{} / {}] expected {}, got {}",
                    item.name,
                    item.frame.as_str(),
                    item.semantics.as_str(),
                    item.expected.as_str(),
                    if item.verdict.is_valid() {
                        "valid"
                    } else {
                        "countermodel"
                    },
                );
            }
        }
    }
    if report.all_as_expected() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Parse { formula } => {
            let f = parse(&formula)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "formula": f.to_string() })).unwrap()
                );
            } else {
                println!("{f}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval {
            model,
            world,
            domain,
            semantics,
            formula,
        } => {
            let m = load_model(&model)?;
            let f = parse(&formula)?;
            let w = m
                .world_index(&world)
                .ok_or_else(|| CliError(format!("unknown world `{world}`")))?;
            let semantics = parse_semantics(&semantics)?;
            if domain.is_some() && semantics == Semantics::Direct {
                return Err(CliError("--domain only applies to --semantics sse".into()));
            }
            let value = match semantics {
                Semantics::Direct => direct::eval_direct(&m, w, &f)?,
                Semantics::Sse => {
                    let d = match &domain {
                        None => WorldSet::full(m.n_worlds()),
                        Some(ids) => {
                            let mut d = WorldSet::empty(m.n_worlds());
                            for id in ids {
                                let i = m.world_index(id).ok_or_else(|| {
                                    CliError(format!("unknown world `{id}` in domain"))
                                })?;
                                d.insert(i);
                            }
                            d
                        }
                    };
                    sse::eval_sse(&m, &d, w, &f)?
                }
            };
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "value": value })).unwrap()
                );
            } else {
                println!("{value}");
            }
            Ok(if value {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Announce { model, formula } => {
            let m = load_model(&model)?;
            let f = parse(&formula)?;
            let updated = direct::announce(&m, &f)?;
            println!("{}", updated.to_json_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::Valid {
            scope,
            semantics,
            formula,
        } => {
            let semantics = parse_semantics(&semantics)?;
            let scope = build_scope(&scope, semantics)?;
            let f = parse(&formula)?;
            let verdict = check_valid(&f, &scope)?;
            Ok(report_verdict(&verdict, cli.json))
        }
        Command::Rule {
            scope,
            semantics,
            premises,
            conclusion,
        } => {
            let semantics = parse_semantics(&semantics)?;
            let scope = build_scope(&scope, semantics)?;
            let premises = premises
                .iter()
                .map(|p| parse(p))
                .collect::<Result<Vec<_>, _>>()?;
            let conclusion = parse(&conclusion)?;
            let verdict = check_rule(&premises, &conclusion, &scope)?;
            Ok(report_verdict(&verdict, cli.json))
        }
        Command::Suite {
            which,
            scope,
            semantics,
        } => {
            let base = build_scope(&scope, Semantics::Direct)?;
            match which.as_str() {
                "axioms" | "substitution" => {
                    let mut report = if which == "axioms" {
                        axiom_suite(&base)?
                    } else {
                        substitution_suite(&base)?
                    };
                    if let Some(s) = semantics {
                        let s = parse_semantics(&s)?;
                        report.items.retain(|i| i.semantics == s);
                    }
                    if let Some(f) = &scope.frame {
                        let f = parse_frame(f)?;
                        report.items.retain(|i| i.frame == f);
                    }
                    Ok(report_suite(&report, cli.json))
                }
                "faithfulness" => {
                    let report = faithfulness_sweep(&base, 500, 3, 3, 10_000, 2024)?;
                    if cli.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&report.to_json()).unwrap()
                        );
                    } else {
                        println!(
                            "exhaustive cases: {}, random cases: {}, discrepancies: {}",
                            report.exhaustive_cases,
                            report.random_cases,
                            report.discrepancies.len()
                        );
                        for d in report.discrepancies.iter().take(3) {
                            println!(
                                "  {} at world {} of domain {{{}}}: sse={}, direct={}",
                                d.formula,
                                d.world,
                                d.domain.join(", "),
                                d.sse_value,
                                d.direct_value
                            );
                        }
                    }
                    Ok(if report.ok() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    })
                }
                other => Err(CliError(format!(
                    "unknown suite `{other}` (use axioms, substitution, or faithfulness)"
                ))),
            }
        }
        Command::Wisemen {
            footnote_axioms,
            consequence_check,
        } => {
            let mut report = wisemen::solve(footnote_axioms)?;
            if consequence_check {
                report.consequence = Some(wisemen::consequence_check(Semantics::Direct)?);
            }
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).unwrap()
                );
            } else {
                let cascade: Vec<String> = report.cascade.iter().map(|n| n.to_string()).collect();
                println!("worlds: {}", cascade.join(" -> "));
                println!(
                    "premises: {}",
                    if report.premises_ok {
                        "hold at every world"
                    } else {
                        "FAIL"
                    }
                );
                println!(
                    "theorem whitespot_c: {}",
                    if report.goal_ok { "VALID" } else { "REFUTED" }
                );
                if let Some(c) = &report.consequence {
                    println!(
                        "consequence check: {}",
                        if c.is_valid() {
                            "valid up to bound"
                        } else {
                            "COUNTERMODEL"
                        }
                    );
                }
            }
            Ok(if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
