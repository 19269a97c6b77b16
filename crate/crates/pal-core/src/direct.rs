//! Direct Kripke semantics: truth at a world, extensions, and announcement
//! as model restriction.

use crate::formula::{Agent, Formula};
use crate::model::{EpistemicModel, WorldSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("announced formula `{0}` is false at every world")]
    EmptyAnnouncement(String),
}

fn atom_index(m: &EpistemicModel, p: &str) -> Result<usize, EvalError> {
    m.atom_index(p)
        .ok_or_else(|| EvalError::UnknownAtom(p.to_string()))
}

fn agent_index(m: &EpistemicModel, a: &Agent) -> Result<usize, EvalError> {
    m.agent_index(a)
        .ok_or_else(|| EvalError::UnknownAgent(a.name().to_string()))
}

/// The set of worlds where `f` holds.
pub fn extension(m: &EpistemicModel, f: &Formula) -> Result<WorldSet, EvalError> {
    let mut out = WorldSet::empty(m.n_worlds());
    for w in 0..m.n_worlds() {
        if eval_direct(m, w, f)? {
            out.insert(w);
        }
    }
    Ok(out)
}

/// Truth of `f` at world index `w` of `m`.
pub fn eval_direct(m: &EpistemicModel, w: usize, f: &Formula) -> Result<bool, EvalError> {
    debug_assert!(w < m.n_worlds());
    match f {
        Formula::Atom(p) => Ok(m.valuation(atom_index(m, p)?).contains(w)),
        Formula::Top => Ok(true),
        Formula::Neg(g) => Ok(!eval_direct(m, w, g)?),
        Formula::And(l, r) => Ok(eval_direct(m, w, l)? && eval_direct(m, w, r)?),
        Formula::Or(l, r) => Ok(eval_direct(m, w, l)? || eval_direct(m, w, r)?),
        Formula::Imp(l, r) => Ok(!eval_direct(m, w, l)? || eval_direct(m, w, r)?),
        Formula::Iff(l, r) => Ok(eval_direct(m, w, l)? == eval_direct(m, w, r)?),
        Formula::Knows(a, g) => {
            let rel = m.relation(agent_index(m, a)?);
            for v in 0..m.n_worlds() {
                if rel.contains(w, v) && !eval_direct(m, v, g)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Everyone(g) => {
            let rel = m.evr();
            for v in 0..m.n_worlds() {
                if rel.contains(w, v) && !eval_direct(m, v, g)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Announce(ann, g) => {
            if !eval_direct(m, w, ann)? {
                return Ok(true);
            }
            // The announced formula holds at w, so the extension is
            // nonempty and w survives the update.
            let updated = announce(m, ann)?;
            let w_after = updated
                .world_index(m.world_id(w))
                .expect("announced world survives");
            eval_direct(&updated, w_after, g)
        }
        Formula::Rck(guard, body) => {
            // Relativization is computed once against the current model.
            let guard_ext = extension(m, guard)?;
            let reach = m.evr().restrict_targets(&guard_ext).tc();
            for v in 0..m.n_worlds() {
                if reach.contains(w, v) && !eval_direct(m, v, body)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Ck(g) => eval_direct(m, w, &Formula::rck(Formula::Top, (**g).clone())),
    }
}

/// The public announcement of `f`: the submodel on `f`'s extension.
/// Announcing a formula that is false everywhere is an error, since a model
/// must keep at least one world.
pub fn announce(m: &EpistemicModel, f: &Formula) -> Result<EpistemicModel, EvalError> {
    let ext = extension(m, f)?;
    if ext.is_empty() {
        return Err(EvalError::EmptyAnnouncement(f.to_string()));
    }
    Ok(m.restrict(&ext).expect("nonempty extension"))
}
