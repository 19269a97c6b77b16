//! Bounded validity and rule checking over enumerated models.
//!
//! A query is checked against every model with 1..=max_worlds worlds in the
//! fixed enumeration order; the first falsifying witness is returned, so
//! identical scopes always produce identical verdicts. Every countermodel is
//! re-falsified on construction through a second evaluation path (the other
//! semantics, on the restricted model where a domain is involved).

use crate::direct::{eval_direct, EvalError};
use crate::enumerate::{enumerate_models, Frame};
use crate::formula::{Agent, Formula};
use crate::model::{EpistemicModel, WorldSet};
use crate::sse::{eval_sse, tvalid_naive, vld_in_model};
use thiserror::Error;

/// Which evaluation backend a check runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    Direct,
    Sse,
}

impl Semantics {
    pub fn as_str(&self) -> &'static str {
        match self {
            Semantics::Direct => "direct",
            Semantics::Sse => "sse",
        }
    }
}

/// What "valid in one model" means while checking. Rule checking is
/// per-model validity preservation under the chosen notion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidityNotion {
    /// True at every world (direct semantics).
    DirectAllWorlds,
    /// True at every world of every domain (domain-passing semantics).
    SseAllDomains,
    /// True at every world under the full domain only; the flawed notion.
    SseFullDomain,
}

impl ValidityNotion {
    fn for_semantics(semantics: Semantics) -> Self {
        match semantics {
            Semantics::Direct => ValidityNotion::DirectAllWorlds,
            Semantics::Sse => ValidityNotion::SseAllDomains,
        }
    }
}

/// The search space of a bounded check.
#[derive(Debug, Clone)]
pub struct Scope {
    pub max_worlds: usize,
    pub agents: Vec<Agent>,
    pub atoms: Vec<String>,
    pub frame: Frame,
    pub semantics: Semantics,
    pub model_budget: Option<u64>,
}

impl Scope {
    pub fn new(
        max_worlds: usize,
        agents: Vec<Agent>,
        atoms: Vec<String>,
        frame: Frame,
        semantics: Semantics,
    ) -> Result<Self, CheckError> {
        if max_worlds == 0 {
            return Err(CheckError::BadScope("max_worlds must be at least 1".into()));
        }
        if agents.is_empty() {
            return Err(CheckError::BadScope("agent set must be nonempty".into()));
        }
        Ok(Scope {
            max_worlds,
            agents,
            atoms,
            frame,
            semantics,
            model_budget: None,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.model_budget = Some(budget);
        self
    }

    pub fn with_semantics(mut self, semantics: Semantics) -> Self {
        self.semantics = semantics;
        self
    }

    pub fn with_frame(mut self, frame: Frame) -> Self {
        self.frame = frame;
        self
    }

    /// The formula may only use the scope's atoms and agents.
    pub fn validate_formula(&self, f: &Formula) -> Result<(), CheckError> {
        for p in f.atoms() {
            if !self.atoms.contains(&p) {
                return Err(CheckError::AtomOutsideScope(p));
            }
        }
        for a in f.agents() {
            if !self.agents.contains(&a) {
                return Err(CheckError::AgentOutsideScope(a.name().to_string()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("bad scope: {0}")]
    BadScope(String),
    #[error("atom `{0}` is not in the scope")]
    AtomOutsideScope(String),
    #[error("agent `{0}` is not in the scope")]
    AgentOutsideScope(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A concrete falsifying witness. `domain` is present exactly when the
/// witness lives in the domain-passing semantics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub model: EpistemicModel,
    pub domain: Option<Vec<String>>,
    pub world: String,
}

/// Outcome of a bounded check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    ValidUpToBound { models_checked: u64 },
    Countermodel(Box<Countermodel>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::ValidUpToBound { .. })
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Verdict::Countermodel(c) => Some(c),
            Verdict::ValidUpToBound { .. } => None,
        }
    }
}

struct Witness {
    domain: Option<WorldSet>,
    world: usize,
}

/// First (domain, world) where `f` fails in `m` under the notion, in
/// domain-code then world order; `None` when `f` is valid in `m`.
fn first_failure(
    m: &EpistemicModel,
    f: &Formula,
    notion: ValidityNotion,
) -> Result<Option<Witness>, EvalError> {
    let n = m.n_worlds();
    match notion {
        ValidityNotion::DirectAllWorlds => {
            for w in 0..n {
                if !eval_direct(m, w, f)? {
                    return Ok(Some(Witness {
                        domain: None,
                        world: w,
                    }));
                }
            }
            Ok(None)
        }
        ValidityNotion::SseAllDomains => {
            for code in 0..(1u64 << n) {
                let d = WorldSet::from_code(n, code);
                let members: Vec<usize> = d.iter().collect();
                for w in members {
                    if !eval_sse(m, &d, w, f)? {
                        return Ok(Some(Witness {
                            domain: Some(d),
                            world: w,
                        }));
                    }
                }
            }
            Ok(None)
        }
        ValidityNotion::SseFullDomain => {
            let full = WorldSet::full(n);
            for w in 0..n {
                if !eval_sse(m, &full, w, f)? {
                    return Ok(Some(Witness {
                        domain: Some(full),
                        world: w,
                    }));
                }
            }
            Ok(None)
        }
    }
}

fn valid_in_model(
    m: &EpistemicModel,
    f: &Formula,
    notion: ValidityNotion,
) -> Result<bool, EvalError> {
    match notion {
        ValidityNotion::DirectAllWorlds => {
            for w in 0..m.n_worlds() {
                if !eval_direct(m, w, f)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ValidityNotion::SseAllDomains => vld_in_model(m, f),
        ValidityNotion::SseFullDomain => tvalid_naive(m, f),
    }
}

/// Independent re-falsification of a witness: the claimed failure is
/// recomputed through the other backend (on the restricted model when the
/// witness carries a domain).
fn recheck_failure(m: &EpistemicModel, witness: &Witness, f: &Formula) -> Result<bool, EvalError> {
    match &witness.domain {
        None => {
            let full = WorldSet::full(m.n_worlds());
            Ok(!eval_direct(m, witness.world, f)? && !eval_sse(m, &full, witness.world, f)?)
        }
        Some(d) => {
            if !d.contains(witness.world) {
                return Ok(false);
            }
            let restricted = m.restrict(d).expect("witness domain is nonempty");
            let w_in = restricted
                .world_index(m.world_id(witness.world))
                .expect("witness world is in the domain");
            Ok(!eval_sse(m, d, witness.world, f)? && !eval_direct(&restricted, w_in, f)?)
        }
    }
}

fn build_countermodel(
    m: &EpistemicModel,
    witness: Witness,
    f: &Formula,
) -> Result<Countermodel, EvalError> {
    assert!(
        recheck_failure(m, &witness, f)?,
        "countermodel failed independent re-falsification for `{f}`"
    );
    Ok(Countermodel {
        model: m.clone(),
        domain: witness
            .domain
            .map(|d| d.iter().map(|w| m.world_id(w).to_string()).collect()),
        world: m.world_id(witness.world).to_string(),
    })
}

fn scoped_models(scope: &Scope) -> impl Iterator<Item = EpistemicModel> + '_ {
    (1..=scope.max_worlds)
        .flat_map(move |n| enumerate_models(n, &scope.agents, &scope.atoms, scope.frame))
}

/// Bounded validity of `f`: the first countermodel in enumeration order, or
/// the number of models exhausted.
pub fn check_valid(f: &Formula, scope: &Scope) -> Result<Verdict, CheckError> {
    scope.validate_formula(f)?;
    let notion = ValidityNotion::for_semantics(scope.semantics);
    let mut checked = 0u64;
    for m in scoped_models(scope) {
        if scope.model_budget.is_some_and(|b| checked >= b) {
            return Ok(Verdict::ValidUpToBound {
                models_checked: checked,
            });
        }
        checked += 1;
        if let Some(witness) = first_failure(&m, f, notion)? {
            return Ok(Verdict::Countermodel(Box::new(build_countermodel(
                &m, witness, f,
            )?)));
        }
    }
    Ok(Verdict::ValidUpToBound {
        models_checked: checked,
    })
}

/// Per-model validity preservation for an inference rule: in every scoped
/// model where all premises are valid, the conclusion must be valid. The
/// validity notion follows the scope's semantics.
pub fn check_rule(
    premises: &[Formula],
    conclusion: &Formula,
    scope: &Scope,
) -> Result<Verdict, CheckError> {
    let notion = ValidityNotion::for_semantics(scope.semantics);
    check_rule_under(premises, conclusion, scope, notion)
}

/// Rule checking under an explicit validity notion; used to demonstrate how
/// the full-domain-only notion breaks announcement necessitation.
pub fn check_rule_under(
    premises: &[Formula],
    conclusion: &Formula,
    scope: &Scope,
    notion: ValidityNotion,
) -> Result<Verdict, CheckError> {
    for p in premises {
        scope.validate_formula(p)?;
    }
    scope.validate_formula(conclusion)?;
    let mut checked = 0u64;
    for m in scoped_models(scope) {
        if scope.model_budget.is_some_and(|b| checked >= b) {
            return Ok(Verdict::ValidUpToBound {
                models_checked: checked,
            });
        }
        checked += 1;
        let mut premises_hold = true;
        for p in premises {
            if !valid_in_model(&m, p, notion)? {
                premises_hold = false;
                break;
            }
        }
        if !premises_hold {
            continue;
        }
        if let Some(witness) = first_failure(&m, conclusion, notion)? {
            // Premise validity is also rechecked through the opposite
            // backend before the witness is accepted.
            for p in premises {
                assert!(
                    recheck_premise(&m, p, notion)?,
                    "rule countermodel premise recheck failed for `{p}`"
                );
            }
            return Ok(Verdict::Countermodel(Box::new(build_countermodel(
                &m, witness, conclusion,
            )?)));
        }
    }
    Ok(Verdict::ValidUpToBound {
        models_checked: checked,
    })
}

/// Cross-backend recheck that a premise really is valid in `m` under the
/// notion that found the countermodel.
fn recheck_premise(
    m: &EpistemicModel,
    p: &Formula,
    notion: ValidityNotion,
) -> Result<bool, EvalError> {
    let n = m.n_worlds();
    match notion {
        ValidityNotion::DirectAllWorlds => {
            let full = WorldSet::full(n);
            for w in 0..n {
                if !eval_sse(m, &full, w, p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ValidityNotion::SseAllDomains => {
            for code in 1..(1u64 << n) {
                let d = WorldSet::from_code(n, code);
                let restricted = m.restrict(&d).expect("nonempty domain");
                for w in 0..restricted.n_worlds() {
                    if !eval_direct(&restricted, w, p)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        ValidityNotion::SseFullDomain => {
            for w in 0..n {
                if !eval_direct(m, w, p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}
