//! Reproduction suites: the axiom/rule table, the uniform-substitution
//! failures, and the cross-backend agreement sweep.
//!
//! Each suite evaluates a fixed list of items at a given scope and reports
//! one row per (item, frame, semantics) with the observed verdict, the
//! expected verdict, and the elapsed time. A suite "passes" when every
//! observed verdict matches its expectation.

use crate::checker::{
    check_rule, check_rule_under, check_valid, CheckError, Scope, Semantics, ValidityNotion,
    Verdict,
};
use crate::direct::eval_direct;
use crate::enumerate::{enumerate_models, Frame};
use crate::formula::Formula;
use crate::generate::FormulaGen;
use crate::model::WorldSet;
use crate::parser::parse;
use crate::sse::eval_sse;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::time::Instant;

/// The verdict a suite item is expected to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Valid,
    Countermodel,
}

impl Expectation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Expectation::Valid => "valid",
            Expectation::Countermodel => "countermodel",
        }
    }

    fn matches(&self, verdict: &Verdict) -> bool {
        match self {
            Expectation::Valid => verdict.is_valid(),
            Expectation::Countermodel => !verdict.is_valid(),
        }
    }
}

/// One row of a suite report.
#[derive(Debug, Clone)]
pub struct SuiteItem {
    pub name: String,
    pub form: String,
    pub semantics: Semantics,
    pub frame: Frame,
    pub verdict: Verdict,
    pub expected: Expectation,
    pub millis: u128,
}

impl SuiteItem {
    pub fn as_expected(&self) -> bool {
        self.expected.matches(&self.verdict)
    }

    pub fn to_json(&self) -> Value {
        let mut row = json!({
            "name": self.name,
            "form": self.form,
            "semantics": self.semantics.as_str(),
            "frame": self.frame.as_str(),
            "verdict": match &self.verdict {
                Verdict::ValidUpToBound { .. } => "valid",
                Verdict::Countermodel(_) => "countermodel",
            },
            "expected": self.expected.as_str(),
            "millis": self.millis as u64,
        });
        if let Verdict::Countermodel(c) = &self.verdict {
            let mut cm = json!({
                "model": c.model.to_json_value(),
                "world": c.world,
            });
            if let Some(domain) = &c.domain {
                cm["domain"] = json!(domain);
            }
            row["countermodel"] = cm;
        }
        row
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    pub fn all_as_expected(&self) -> bool {
        self.items.iter().all(SuiteItem::as_expected)
    }

    pub fn mismatches(&self) -> Vec<&SuiteItem> {
        self.items.iter().filter(|i| !i.as_expected()).collect()
    }

    pub fn find(&self, name: &str, frame: Frame, semantics: Semantics) -> Option<&SuiteItem> {
        self.items
            .iter()
            .find(|i| i.name == name && i.frame == frame && i.semantics == semantics)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.items.iter().map(SuiteItem::to_json).collect())
    }
}

/// What a suite entry checks: a single formula or an inference rule, under
/// the scope's notion or under an explicitly named validity notion.
enum Query {
    Formula(Formula),
    Rule {
        premises: Vec<Formula>,
        conclusion: Formula,
        notion: Option<ValidityNotion>,
    },
}

impl Query {
    fn formula(src: &str) -> Query {
        Query::Formula(parse(src).expect("suite formulas parse"))
    }

    fn rule(premises: &[&str], conclusion: &str) -> Query {
        Query::Rule {
            premises: premises
                .iter()
                .map(|p| parse(p).expect("suite formulas parse"))
                .collect(),
            conclusion: parse(conclusion).expect("suite formulas parse"),
            notion: None,
        }
    }

    fn rule_under(premises: &[&str], conclusion: &str, notion: ValidityNotion) -> Query {
        match Query::rule(premises, conclusion) {
            Query::Rule {
                premises,
                conclusion,
                ..
            } => Query::Rule {
                premises,
                conclusion,
                notion: Some(notion),
            },
            Query::Formula(_) => unreachable!(),
        }
    }

    fn render(&self) -> String {
        match self {
            Query::Formula(f) => f.to_string(),
            Query::Rule {
                premises,
                conclusion,
                ..
            } => {
                let ps: Vec<String> = premises.iter().map(|p| p.to_string()).collect();
                format!("{} |- {}", ps.join(", "), conclusion)
            }
        }
    }

    fn run(&self, scope: &Scope) -> Result<Verdict, CheckError> {
        match self {
            Query::Formula(f) => check_valid(f, scope),
            Query::Rule {
                premises,
                conclusion,
                notion,
            } => match notion {
                None => check_rule(premises, conclusion, scope),
                Some(n) => check_rule_under(premises, conclusion, scope, *n),
            },
        }
    }
}

struct Entry {
    name: String,
    query: Query,
    /// (frame, expected verdict) pairs this entry runs under.
    frames: Vec<(Frame, Expectation)>,
    /// Restrict to one backend (for items tied to a validity notion).
    only_semantics: Option<Semantics>,
}

impl Entry {
    fn new(name: impl Into<String>, query: Query, frames: Vec<(Frame, Expectation)>) -> Entry {
        Entry {
            name: name.into(),
            query,
            frames,
            only_semantics: None,
        }
    }

    fn sse_only(mut self) -> Entry {
        self.only_semantics = Some(Semantics::Sse);
        self
    }
}

fn run_entries(entries: Vec<Entry>, base: &Scope) -> Result<SuiteReport, CheckError> {
    let mut items = Vec::new();
    for entry in entries {
        for &(frame, expected) in &entry.frames {
            let semantics_list = match entry.only_semantics {
                Some(s) => vec![s],
                None => vec![Semantics::Direct, Semantics::Sse],
            };
            for semantics in semantics_list {
                let scope = base.clone().with_frame(frame).with_semantics(semantics);
                let start = Instant::now();
                let verdict = entry.query.run(&scope)?;
                items.push(SuiteItem {
                    name: entry.name.clone(),
                    form: entry.query.render(),
                    semantics,
                    frame,
                    verdict,
                    expected,
                    millis: start.elapsed().as_millis(),
                });
            }
        }
    }
    Ok(SuiteReport { items })
}

const V: Expectation = Expectation::Valid;
const CM: Expectation = Expectation::Countermodel;

fn both(expected_s5: Expectation, expected_k: Expectation) -> Vec<(Frame, Expectation)> {
    vec![(Frame::S5, expected_s5), (Frame::K, expected_k)]
}

/// The axiom and inference-rule table. Schemata are instantiated with the
/// distinct atoms p, q, r and the scope's first agent; the group operators
/// E and C always range over the whole scope group.
///
/// Two of the published schemata circulate in two variants that are not
/// interchangeable; both variants are checked and reported separately
/// (`*_table` vs `*_listing`), and the expectations record which variant
/// holds on which frame class at this bound.
pub fn axiom_suite(base: &Scope) -> Result<SuiteReport, CheckError> {
    let entries = vec![
        // System K.
        Entry::new("tautology_top", Query::formula("top"), both(V, V)),
        Entry::new(
            "tautology_excluded_middle",
            Query::formula("p | ~p"),
            both(V, V),
        ),
        Entry::new(
            "axiom_k",
            Query::formula("K a (p -> q) -> (K a p -> K a q)"),
            both(V, V),
        ),
        Entry::new(
            "modus_ponens",
            Query::rule(&["p -> q", "p"], "q"),
            both(V, V),
        ),
        Entry::new("necessitation", Query::rule(&["p"], "K a p"), both(V, V)),
        // System S5: frame-dependent, refutable over class K.
        Entry::new("axiom_t", Query::formula("K a p -> p"), both(V, CM)),
        Entry::new("axiom_4", Query::formula("K a p -> K a K a p"), both(V, CM)),
        Entry::new(
            "axiom_5",
            Query::formula("~K a p -> K a ~K a p"),
            both(V, CM),
        ),
        // Reduction axioms.
        Entry::new(
            "atomic_permanence",
            Query::formula("[!p] q <-> (p -> q)"),
            both(V, V),
        ),
        Entry::new(
            "conjunction",
            Query::formula("[!p] (q & r) <-> ([!p] q & [!p] r)"),
            both(V, V),
        ),
        Entry::new(
            "partial_functionality",
            Query::formula("[!p] ~q <-> (p -> ~[!p] q)"),
            both(V, V),
        ),
        // Action-knowledge circulates with a single and a doubly nested K;
        // the doubled form needs reflexivity and transitivity.
        Entry::new(
            "action_knowledge_listing",
            Query::formula("[!p] K a q <-> (p -> K a (p -> [!p] q))"),
            both(V, V),
        ),
        Entry::new(
            "action_knowledge_table",
            Query::formula("[!p] K a q <-> (p -> K a (p -> K a (p -> [!p] q)))"),
            both(V, CM),
        ),
        // The announcement/common-knowledge reduction: the well-formed
        // variant guards the target common knowledge with the announcement
        // itself; the other drops that conjunct and fails outside S5 (and
        // on S5 from three worlds up).
        Entry::new(
            "rck_reduction_table",
            Query::formula("[!p] C(r | q) <-> (p -> C(p & [!p] r | [!p] q))"),
            both(V, V),
        ),
        Entry::new(
            "rck_reduction_listing",
            Query::formula("[!p] C(q | r) <-> (p -> C([!p] q | [!p] r))"),
            both(V, CM),
        ),
        // Relativized-common-knowledge schemata.
        Entry::new(
            "c_normality",
            Query::formula("C(r | p -> q) -> (C(r | p) -> C(r | q))"),
            both(V, V),
        ),
        Entry::new(
            "mix_table_fwd",
            Query::formula("C(q | p) -> E (q -> (p & C(q | p)))"),
            both(V, V),
        ),
        Entry::new(
            "mix_table_bwd",
            Query::formula("E (q -> (p & C(q | p))) -> C(q | p)"),
            both(V, V),
        ),
        // The listing variant of the mix axiom carries an inner C(r | q)
        // with a third metavariable; its forward direction is refutable
        // even on S5 at two worlds.
        Entry::new(
            "mix_listing_fwd",
            Query::formula("C(r | p) -> E (r -> (p & C(r | q)))"),
            both(CM, CM),
        ),
        Entry::new(
            "mix_listing_bwd",
            Query::formula("E (r -> (p & C(r | q))) -> C(r | p)"),
            both(V, CM),
        ),
        Entry::new(
            "induction_fwd",
            Query::formula("(E (q -> p) & C(q | p -> E (q -> p))) -> C(q | p)"),
            both(V, V),
        ),
        Entry::new(
            "induction_bwd",
            Query::formula("C(q | p) -> (E (q -> p) & C(q | p -> E (q -> p)))"),
            both(V, V),
        ),
        // Rules of inference for the dynamic operators.
        Entry::new(
            "announcement_nec",
            Query::rule(&["p"], "[!q] p"),
            both(V, V),
        ),
        Entry::new(
            "rck_necessitation",
            Query::rule(&["p"], "C(q | p)"),
            both(V, V),
        ),
    ];
    run_entries(entries, base)
}

/// The six principles that are valid for atoms but not schematically. For
/// each: the atomic form is checked, then the schematic form is attacked by
/// substituting the Moore sentence `q & ~K a q` for `p`.
///
/// Where the canonical witness provably cannot refute the schema (announcing
/// a Moore conjunction leaves no accessible world refuting its atom, and on
/// a reflexive frame `K a (q & ~K a q)` is unsatisfiable), a secondary
/// witness about another agent's ignorance, `q & ~K b q`, is also tried
/// when the scope has a second agent; those rows carry the `_alt` suffix.
///
/// The report ends with the announcement-necessitation demonstration: under
/// full-domain-only validity the rule has a two-world counterexample, while
/// domain-quantified validity preserves it.
pub fn substitution_suite(base: &Scope) -> Result<SuiteReport, CheckError> {
    if base.frame != Frame::S5 {
        return Err(CheckError::BadScope(
            "the substitution suite runs on S5 agents".into(),
        ));
    }
    let principles = [
        ("principle_1", "p -> ~[!p] ~p"),
        ("principle_2", "p -> ~[!p] ~K a p"),
        ("principle_3", "p -> ~[!p] (p & ~K a p)"),
        ("principle_4", "(p & ~K a p) -> ~[!p & ~K a p] (p & ~K a p)"),
        ("principle_5", "K a p -> ~[!p] ~K a p"),
        ("principle_6", "K a p -> ~[!p] (p & ~K a p)"),
    ];
    // Which schematic attacks actually admit a countermodel at this scale:
    // the canonical witness refutes principles 1 and 2 only; the secondary
    // witness additionally refutes principle 5.
    let moore_refutable = ["principle_1", "principle_2"];
    let alt_refutable = ["principle_1", "principle_2", "principle_5"];

    let moore = parse("q & ~K a q").expect("witness parses");
    let alt_moore = base
        .agents
        .get(1)
        .map(|b| parse(&format!("q & ~K {} q", b.name())).expect("witness parses"));

    let mut entries = Vec::new();
    for (name, src) in principles {
        let atomic = parse(src).expect("principles parse");
        entries.push(Entry::new(
            format!("{name}_atomic"),
            Query::Formula(atomic.clone()),
            vec![(Frame::S5, V)],
        ));
        let schematic = atomic.substitute("p", &moore);
        let expected = if moore_refutable.contains(&name) {
            CM
        } else {
            V
        };
        entries.push(Entry::new(
            format!("{name}_schematic"),
            Query::Formula(schematic),
            vec![(Frame::S5, expected)],
        ));
        if let Some(alt) = &alt_moore {
            if !moore_refutable.contains(&name) {
                let expected = if alt_refutable.contains(&name) { CM } else { V };
                entries.push(Entry::new(
                    format!("{name}_schematic_alt"),
                    Query::Formula(atomic.substitute("p", alt)),
                    vec![(Frame::S5, expected)],
                ));
            }
        }
    }

    // Announcement necessitation with an epistemic premise: broken by the
    // full-domain-only notion, preserved by domain quantification.
    entries.push(
        Entry::new(
            "announcement_nec_tvalid_naive",
            Query::rule_under(&["~K a p"], "[!p] ~K a p", ValidityNotion::SseFullDomain),
            vec![(Frame::S5, CM)],
        )
        .sse_only(),
    );
    entries.push(
        Entry::new(
            "announcement_nec_vld",
            Query::rule_under(&["~K a p"], "[!p] ~K a p", ValidityNotion::SseAllDomains),
            vec![(Frame::S5, V)],
        )
        .sse_only(),
    );

    run_entries(entries, base)
}

/// Result of the cross-backend agreement sweep.
#[derive(Debug, Clone)]
pub struct FaithfulnessReport {
    pub exhaustive_cases: u64,
    pub random_cases: u64,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Debug, Clone)]
pub struct Discrepancy {
    pub model: crate::model::EpistemicModel,
    pub domain: Vec<String>,
    pub world: String,
    pub formula: String,
    pub sse_value: bool,
    pub direct_value: bool,
}

impl FaithfulnessReport {
    pub fn ok(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "exhaustive_cases": self.exhaustive_cases,
            "random_cases": self.random_cases,
            "discrepancies": self.discrepancies.iter().map(|d| json!({
                "model": d.model.to_json_value(),
                "domain": d.domain,
                "world": d.world,
                "formula": d.formula,
                "sse": d.sse_value,
                "direct": d.direct_value,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks that evaluating under a domain equals direct evaluation on the
/// restricted model: exhaustively over every scoped model, nonempty domain,
/// domain world, and pool formula; then over `random_cases` sampled cases
/// at `random_worlds` worlds.
pub fn faithfulness_sweep(
    base: &Scope,
    pool_size: usize,
    pool_depth: usize,
    random_worlds: usize,
    random_cases: u64,
    seed: u64,
) -> Result<FaithfulnessReport, CheckError> {
    let pool = FormulaGen::new(seed, &base.atoms, &base.agents).pool(pool_size, pool_depth);
    let mut report = FaithfulnessReport {
        exhaustive_cases: 0,
        random_cases: 0,
        discrepancies: Vec::new(),
    };

    // The restricted model is shared across all worlds and formulas of one
    // (model, domain) pair.
    let mut check_pair = |m: &crate::model::EpistemicModel,
                          d: &WorldSet,
                          worlds: &[usize],
                          formulas: &[&Formula],
                          count: &mut u64|
     -> Result<(), CheckError> {
        let restricted = m.restrict(d).expect("nonempty domain");
        for &w in worlds {
            let w_in = restricted
                .world_index(m.world_id(w))
                .expect("world is in the domain");
            for f in formulas {
                let sse_value = eval_sse(m, d, w, f)?;
                let direct_value = eval_direct(&restricted, w_in, f)?;
                *count += 1;
                if sse_value != direct_value {
                    report.discrepancies.push(Discrepancy {
                        model: m.clone(),
                        domain: d.iter().map(|v| m.world_id(v).to_string()).collect(),
                        world: m.world_id(w).to_string(),
                        formula: f.to_string(),
                        sse_value,
                        direct_value,
                    });
                }
            }
        }
        Ok(())
    };

    let all: Vec<&Formula> = pool.iter().collect();
    let mut exhaustive = 0u64;
    for n in 1..=base.max_worlds {
        for m in enumerate_models(n, &base.agents, &base.atoms, base.frame) {
            for code in 1..(1u64 << n) {
                let d = WorldSet::from_code(n, code);
                let members: Vec<usize> = d.iter().collect();
                check_pair(&m, &d, &members, &all, &mut exhaustive)?;
            }
        }
    }

    let mut random = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = random_worlds;
    let enumeration = enumerate_models(n, &base.agents, &base.atoms, base.frame);
    let total = enumeration.total();
    while random < random_cases {
        let idx = rng.gen_range(0..total);
        let m = enumeration.model_at(idx);
        let code = rng.gen_range(1..(1u64 << n));
        let d = WorldSet::from_code(n, code);
        let members: Vec<usize> = d.iter().collect();
        let w = *members.choose(&mut rng).unwrap();
        let f = *all.choose(&mut rng).unwrap();
        check_pair(&m, &d, &[w], &[f], &mut random)?;
    }
    report.exhaustive_cases = exhaustive;
    report.random_cases = random;
    Ok(report)
}
