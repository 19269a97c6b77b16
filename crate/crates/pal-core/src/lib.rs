//! Model checking for public announcement logic with relativized common
//! knowledge over finite multi-agent Kripke models.
//!
//! Two evaluation backends are provided and cross-checked against each
//! other: the direct Kripke semantics ([`direct`]) and a domain-passing
//! semantics in which every connective threads an explicit evaluation
//! domain ([`sse`]). On top of them sit a bounded countermodel finder
//! ([`checker`]), reproduction suites for the axiom systems and the
//! uniform-substitution failures ([`suites`]), and the wise men puzzle
//! ([`wisemen`]).

pub mod checker;
pub mod direct;
pub mod enumerate;
pub mod formula;
pub mod generate;
pub mod model;
pub mod parser;
pub mod sse;
pub mod suites;
pub mod wisemen;

pub use checker::{check_rule, check_valid, Scope, Semantics, Verdict};
pub use enumerate::Frame;
pub use formula::{render, Agent, Formula};
pub use model::{EpistemicModel, Relation, WorldSet};
pub use parser::parse;
