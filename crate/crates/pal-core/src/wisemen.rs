//! The wise men puzzle: three agents, a white or black spot each, at least
//! one white. After a and then b publicly announce that they do not know
//! their own spot, c knows his spot is white.
//!
//! The puzzle is verified on its canonical possible-worlds model: one world
//! per spot assignment except all-black, with each agent's relation linking
//! worlds that agree on the other two spots.

use crate::checker::{check_rule, CheckError, Scope, Semantics, Verdict};
use crate::direct::{announce, eval_direct, EvalError};
use crate::enumerate::Frame;
use crate::formula::{Agent, Formula};
use crate::model::{EpistemicModel, Relation, WorldSet};
use crate::parser::parse;
use crate::sse::eval_sse;
use serde_json::{json, Value};

const AGENTS: [&str; 3] = ["a", "b", "c"];

fn spot_atom(agent: &str) -> String {
    format!("ws{agent}")
}

/// World ids encode the three spots in agent order, `b` for black and `w`
/// for white: `wbb` is "a white, b black, c black".
fn world_id(spots: [bool; 3]) -> String {
    spots.iter().map(|&s| if s { 'w' } else { 'b' }).collect()
}

fn assignments() -> Vec<[bool; 3]> {
    let mut out = Vec::new();
    for a in [false, true] {
        for b in [false, true] {
            for c in [false, true] {
                if a || b || c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// The canonical seven-world model.
pub fn canonical_model() -> EpistemicModel {
    build_model(assignments())
}

/// The negative control: the same construction including the all-black
/// world, i.e. without the guarantee that one spot is white.
pub fn model_with_all_black() -> EpistemicModel {
    let mut worlds = vec![[false, false, false]];
    worlds.extend(assignments());
    build_model(worlds)
}

fn build_model(worlds: Vec<[bool; 3]>) -> EpistemicModel {
    let n = worlds.len();
    let ids = worlds.iter().map(|&s| world_id(s)).collect();
    let agents: Vec<Agent> = AGENTS
        .iter()
        .map(|a| Agent::new(*a).expect("fixed names"))
        .collect();
    // Each agent considers two worlds alike when the other two spots agree.
    let rels = (0..3)
        .map(|i| {
            let mut r = Relation::empty(n);
            for (x, sx) in worlds.iter().enumerate() {
                for (y, sy) in worlds.iter().enumerate() {
                    let agree = (0..3).all(|j| j == i || sx[j] == sy[j]);
                    if agree {
                        r.insert(x, y);
                    }
                }
            }
            r
        })
        .collect();
    let atoms = AGENTS.iter().map(|a| spot_atom(a)).collect();
    let vals = (0..3)
        .map(|i| {
            let mut v = WorldSet::empty(n);
            for (x, sx) in worlds.iter().enumerate() {
                if sx[i] {
                    v.insert(x);
                }
            }
            v
        })
        .collect();
    EpistemicModel::new(ids, agents, rels, atoms, vals).expect("well-formed puzzle model")
}

/// The puzzle bundled as data: agents, their spot atoms, the premises, and
/// the theorem.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub agents: [Agent; 3],
    pub spot_atoms: [String; 3],
    pub premises: Vec<Formula>,
    pub goal: Formula,
}

pub fn scenario() -> Scenario {
    Scenario {
        agents: AGENTS.map(|a| Agent::new(a).expect("fixed names")),
        spot_atoms: AGENTS.map(spot_atom),
        premises: premises(),
        goal: goal(),
    }
}

/// The rules of the riddle: it is common knowledge that at least one spot
/// is white, and that whenever an agent's spot is black, each other agent
/// knows so.
pub fn premises() -> Vec<Formula> {
    let mut out = vec![parse("C ((wsa | wsb | wsc))").expect("fixed formula")];
    for x in AGENTS {
        for y in AGENTS {
            if x != y {
                let src = format!("C (~ws{x} -> K {y} ~ws{x})");
                out.push(parse(&src).expect("fixed formula"));
            }
        }
    }
    out
}

/// The optional strengthening: common knowledge that white spots are seen
/// too. Not needed for the theorem; disabled by default.
pub fn footnote_premises() -> Vec<Formula> {
    let mut out = Vec::new();
    for x in AGENTS {
        for y in AGENTS {
            if x != y {
                let src = format!("C (ws{x} -> K {y} ws{x})");
                out.push(parse(&src).expect("fixed formula"));
            }
        }
    }
    out
}

/// After a announces not knowing his spot and then b announces the same,
/// c knows his spot is white.
pub fn goal() -> Formula {
    parse("[!~(K a wsa | K a ~wsa)] [!~(K b wsb | K b ~wsb)] K c wsc").expect("fixed formula")
}

fn ignorance_announcement(agent: &str) -> Formula {
    parse(&format!("~(K {agent} ws{agent} | K {agent} ~ws{agent})")).expect("fixed formula")
}

/// Outcome of running the puzzle end to end.
#[derive(Debug, Clone)]
pub struct WisemenReport {
    pub premises_ok: bool,
    pub goal_ok: bool,
    /// World counts: initial, after a's announcement, after b's.
    pub cascade: Vec<usize>,
    /// Surviving world ids after each announcement.
    pub worlds_after: Vec<Vec<String>>,
    /// Present when the consequence check was requested.
    pub consequence: Option<Verdict>,
}

impl WisemenReport {
    pub fn ok(&self) -> bool {
        self.premises_ok && self.goal_ok && self.consequence.as_ref().is_none_or(Verdict::is_valid)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "premises_ok": self.premises_ok,
            "goal_ok": self.goal_ok,
            "cascade": self.cascade,
            "worlds_after": self.worlds_after,
        });
        if let Some(c) = &self.consequence {
            v["consequence_valid"] = json!(c.is_valid());
        }
        v
    }
}

/// Verifies the premises and the theorem on the canonical model (at every
/// world, in both semantics at the full domain) and reports the cascade of
/// surviving worlds through the two announcements.
pub fn solve(include_footnote: bool) -> Result<WisemenReport, EvalError> {
    let m = canonical_model();
    let mut premise_set = premises();
    if include_footnote {
        premise_set.extend(footnote_premises());
    }

    let full = WorldSet::full(m.n_worlds());
    let mut premises_ok = true;
    for p in &premise_set {
        for w in 0..m.n_worlds() {
            premises_ok &= eval_direct(&m, w, p)?;
            premises_ok &= eval_sse(&m, &full, w, p)?;
        }
    }

    let g = goal();
    let mut goal_ok = true;
    for w in 0..m.n_worlds() {
        goal_ok &= eval_direct(&m, w, &g)?;
        goal_ok &= eval_sse(&m, &full, w, &g)?;
    }

    let after_a = announce(&m, &ignorance_announcement("a"))?;
    let after_b = announce(&after_a, &ignorance_announcement("b"))?;
    let cascade = vec![m.n_worlds(), after_a.n_worlds(), after_b.n_worlds()];
    let worlds_after = vec![after_a.worlds().to_vec(), after_b.worlds().to_vec()];

    Ok(WisemenReport {
        premises_ok,
        goal_ok,
        cascade,
        worlds_after,
        consequence: None,
    })
}

/// Checks `premises |- goal` as per-model validity preservation over a tiny
/// scope (all S5 models with up to two worlds over the puzzle vocabulary).
pub fn consequence_check(semantics: Semantics) -> Result<Verdict, CheckError> {
    let agents = AGENTS
        .iter()
        .map(|a| Agent::new(*a).expect("fixed names"))
        .collect();
    let atoms = AGENTS.iter().map(|a| spot_atom(a)).collect();
    let scope = Scope::new(2, agents, atoms, Frame::S5, semantics)?;
    check_rule(&premises(), &goal(), &scope)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_model_shape() {
        let m = canonical_model();
        assert_eq!(m.n_worlds(), 7);
        assert!(m.is_s5());
        for (_, props) in m.classify_frame() {
            assert!(props.all());
        }
        // Equivalence blocks have at most two worlds: a world and its
        // own-spot flip when both are present.
        for i in 0..3 {
            let rel = m.relation(i);
            for w in 0..7 {
                let class = (0..7).filter(|&v| rel.contains(w, v)).count();
                assert!(class <= 2);
            }
        }
        // The all-white world is a-related exactly to itself and bww.
        let www = m.world_index("www").unwrap();
        let bww = m.world_index("bww").unwrap();
        let ra = m.relation(0);
        for v in 0..7 {
            assert_eq!(ra.contains(www, v), v == www || v == bww);
        }
    }

    #[test]
    fn premise_list_shape() {
        let ps = premises();
        assert_eq!(ps.len(), 7);
        assert_eq!(footnote_premises().len(), 6);
        let sc = scenario();
        assert_eq!(sc.premises, ps);
        assert_eq!(sc.goal, goal());
        assert_eq!(sc.spot_atoms, ["wsa", "wsb", "wsc"].map(String::from));
    }

    #[test]
    fn goal_shape() {
        let g = goal();
        assert_eq!(g.announcement_depth(), 2);
        assert_eq!(
            crate::parser::parse(&g.to_string()).unwrap(),
            g,
            "goal renders stably"
        );
        assert_eq!(g.atoms(), vec!["wsa", "wsb", "wsc"]);
    }

    #[test]
    fn solve_reproduces_the_cascade() {
        let report = solve(false).unwrap();
        assert!(report.premises_ok);
        assert!(report.goal_ok);
        assert_eq!(report.cascade, vec![7, 6, 4]);
        // All four survivors have a white c-spot.
        for id in &report.worlds_after[1] {
            assert!(id.ends_with('w'));
        }
        assert!(report.ok());
    }

    #[test]
    fn footnote_premises_also_hold() {
        let report = solve(true).unwrap();
        assert!(report.premises_ok && report.goal_ok);
    }

    #[test]
    fn negative_control_fails_without_the_white_guarantee() {
        let m = model_with_all_black();
        assert_eq!(m.n_worlds(), 8);
        let g = goal();
        let holds_everywhere = (0..m.n_worlds()).all(|w| eval_direct(&m, w, &g).unwrap());
        assert!(!holds_everywhere);
    }
}
