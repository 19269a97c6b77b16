//! The domain-passing semantics: every connective takes an explicit
//! evaluation domain alongside the current world. Announcements shrink the
//! domain that is recursively passed on; atoms and the knowledge operators
//! check domain membership.
//!
//! `vld_in_model` quantifies over all domains and all worlds inside them.
//! `tvalid_naive` checks only the full domain; it is kept because the
//! announcement-necessitation rule is *not* preserved under it, which the
//! checker demonstrates with a two-world counterexample.

use crate::direct::EvalError;
use crate::formula::{Agent, Formula};
use crate::model::{EpistemicModel, EvaluationDomain, WorldSet};

fn atom_index(m: &EpistemicModel, p: &str) -> Result<usize, EvalError> {
    m.atom_index(p)
        .ok_or_else(|| EvalError::UnknownAtom(p.to_string()))
}

fn agent_index(m: &EpistemicModel, a: &Agent) -> Result<usize, EvalError> {
    m.agent_index(a)
        .ok_or_else(|| EvalError::UnknownAgent(a.name().to_string()))
}

/// Truth of `f` at world `w` under evaluation domain `d`. The world need
/// not be a member of `d`, and `d` may be empty; the clauses are total.
pub fn eval_sse(
    m: &EpistemicModel,
    d: &EvaluationDomain,
    w: usize,
    f: &Formula,
) -> Result<bool, EvalError> {
    debug_assert!(w < m.n_worlds());
    debug_assert_eq!(d.universe_size(), m.n_worlds());
    match f {
        Formula::Atom(p) => Ok(d.contains(w) && m.valuation(atom_index(m, p)?).contains(w)),
        Formula::Top => Ok(true),
        Formula::Neg(g) => Ok(!eval_sse(m, d, w, g)?),
        Formula::And(l, r) => Ok(eval_sse(m, d, w, l)? && eval_sse(m, d, w, r)?),
        Formula::Or(l, r) => Ok(eval_sse(m, d, w, l)? || eval_sse(m, d, w, r)?),
        Formula::Imp(l, r) => Ok(!eval_sse(m, d, w, l)? || eval_sse(m, d, w, r)?),
        Formula::Iff(l, r) => Ok(eval_sse(m, d, w, l)? == eval_sse(m, d, w, r)?),
        Formula::Knows(a, g) => {
            let rel = m.relation(agent_index(m, a)?);
            for v in 0..m.n_worlds() {
                if d.contains(v) && rel.contains(w, v) && !eval_sse(m, d, v, g)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Everyone(g) => {
            let rel = m.evr();
            for v in 0..m.n_worlds() {
                if d.contains(v) && rel.contains(w, v) && !eval_sse(m, d, v, g)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Announce(ann, g) => {
            if !eval_sse(m, d, w, ann)? {
                return Ok(true);
            }
            let restricted = announced_domain(m, d, ann)?;
            eval_sse(m, &restricted, w, g)
        }
        Formula::Rck(guard, body) => {
            // Pairs whose target is a domain member satisfying the guard;
            // the guard is checked at the target world.
            let mut guard_set = WorldSet::empty(m.n_worlds());
            for v in d.iter() {
                if eval_sse(m, d, v, guard)? {
                    guard_set.insert(v);
                }
            }
            let reach = m.evr().restrict_targets(&guard_set).tc();
            for v in 0..m.n_worlds() {
                if reach.contains(w, v) && !eval_sse(m, d, v, body)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Ck(g) => eval_sse(m, d, w, &Formula::rck(Formula::Top, (**g).clone())),
    }
}

/// The domain passed on by announcing `ann` under `d`: the members of `d`
/// where `ann` holds under `d`. Always a subset of `d`.
pub fn announced_domain(
    m: &EpistemicModel,
    d: &EvaluationDomain,
    ann: &Formula,
) -> Result<EvaluationDomain, EvalError> {
    let mut out = WorldSet::empty(m.n_worlds());
    for z in d.iter() {
        if eval_sse(m, d, z, ann)? {
            out.insert(z);
        }
    }
    Ok(out)
}

/// Validity in `m` under the domain-passing semantics: `f` holds at every
/// world of every domain over `m`'s worlds. Iterates all 2^n domains, so
/// callers keep the world count small.
pub fn vld_in_model(m: &EpistemicModel, f: &Formula) -> Result<bool, EvalError> {
    let n = m.n_worlds();
    assert!(n <= 32, "domain iteration over 2^n sets");
    for code in 0..(1u64 << n) {
        let d = WorldSet::from_code(n, code);
        for w in d.iter() {
            if !eval_sse(m, &d, w, f)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The flawed validity notion: `f` holds at every world under the full
/// domain only. Retained to reproduce the failure of announcement
/// necessitation; use [`vld_in_model`] for actual validity.
pub fn tvalid_naive(m: &EpistemicModel, f: &Formula) -> Result<bool, EvalError> {
    let full = WorldSet::full(m.n_worlds());
    for w in 0..m.n_worlds() {
        if !eval_sse(m, &full, w, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Relation;
    use crate::parser::parse;

    fn agent(s: &str) -> Agent {
        Agent::new(s).unwrap()
    }

    /// Two worlds, one agent with the total relation, p true at w1 only.
    fn base_model() -> EpistemicModel {
        EpistemicModel::new(
            vec!["w1".into(), "w2".into()],
            vec![agent("a")],
            vec![Relation::total(2)],
            vec!["p".into()],
            vec![WorldSet::from_indices(2, &[0])],
        )
        .unwrap()
    }

    #[test]
    fn knowledge_is_vacuous_under_the_empty_domain() {
        let m = base_model();
        let empty = WorldSet::empty(2);
        for f in ["K a p", "K a ~p", "K a ~top"] {
            assert!(eval_sse(&m, &empty, 0, &parse(f).unwrap()).unwrap());
        }
    }

    #[test]
    fn announcement_restricts_the_domain() {
        let m = base_model();
        let full = WorldSet::full(2);
        assert!(eval_sse(&m, &full, 0, &parse("[!p] K a p").unwrap()).unwrap());
    }

    #[test]
    fn atoms_check_domain_membership() {
        let m = base_model();
        let d = WorldSet::from_indices(2, &[1]);
        // w2 is in the domain but p is false there.
        assert!(!eval_sse(&m, &d, 1, &parse("p").unwrap()).unwrap());
        // p is true at w1 but w1 is outside the domain.
        assert!(!eval_sse(&m, &d, 0, &parse("p").unwrap()).unwrap());
    }

    #[test]
    fn vld_examples() {
        let m = base_model();
        assert!(vld_in_model(&m, &Formula::Top).unwrap());
        // Axiom T holds in a reflexive model across all domains.
        assert!(vld_in_model(&m, &parse("K a p -> p").unwrap()).unwrap());
        // An atom not true everywhere fails at the full domain.
        assert!(!vld_in_model(&m, &parse("p").unwrap()).unwrap());
    }

    #[test]
    fn tvalid_examples() {
        let m = base_model();
        assert!(tvalid_naive(&m, &Formula::Top).unwrap());
        // The two-world witness: ~K a p holds at every world under the
        // full domain, but announcing p breaks it at w1.
        assert!(tvalid_naive(&m, &parse("~K a p").unwrap()).unwrap());
        assert!(!tvalid_naive(&m, &parse("[!p] ~K a p").unwrap()).unwrap());
    }

    #[test]
    fn vld_implies_tvalid_but_not_conversely() {
        let m = base_model();
        let f = parse("~K a p").unwrap();
        assert!(tvalid_naive(&m, &f).unwrap());
        assert!(!vld_in_model(&m, &f).unwrap());
    }

    #[test]
    fn announced_domain_is_a_subset() {
        let m = base_model();
        let d = WorldSet::full(2);
        let d2 = announced_domain(&m, &d, &parse("p").unwrap()).unwrap();
        assert!(d2.is_subset(&d));
        assert_eq!(d2, WorldSet::from_indices(2, &[0]));
    }
}
