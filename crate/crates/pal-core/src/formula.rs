//! Abstract syntax for public announcement logic with relativized common
//! knowledge, plus the pretty-printer and uniform substitution.
//!
//! The concrete grammar (ASCII) is handled by [`crate::parser`]. Precedence,
//! tightest first: unary prefixes (`~`, `K a`, `E`, `C`, `[!..]`), then `&`,
//! then `|`, then `->` (right-associative), then `<->` (right-associative).
//! `&` and `|` associate to the left.

use std::fmt;
use thiserror::Error;

/// Raised when a name is not a valid identifier (letters/digits, starting
/// with a letter, and not one of the reserved words `top`, `K`, `E`, `C`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid identifier `{0}`")]
pub struct InvalidIdentifier(pub String);

/// True iff `s` is a lexically valid atom/agent/world name.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
    head_ok && chars.all(|c| c.is_ascii_alphanumeric()) && !matches!(s, "top" | "K" | "E" | "C")
}

/// An agent name. Agents and atoms live in disjoint namespaces, so `K p q`
/// parses with `p` as the agent and `q` as the atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Agent(String);

impl Agent {
    pub fn new(name: impl Into<String>) -> Result<Self, InvalidIdentifier> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(Agent(name))
        } else {
            Err(InvalidIdentifier(name))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Agent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A formula of the logic.
///
/// `Ck(f)` is definitionally `Rck(Top, f)`; the evaluators treat the two
/// identically, but the distinction is kept in the tree so that reports can
/// show what the user typed. Use [`Formula::normalize_ck`] to erase it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Top,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Knows(Agent, Box<Formula>),
    Everyone(Box<Formula>),
    /// `Announce(f, g)` is `[!f] g`: g holds after f is truthfully announced.
    Announce(Box<Formula>, Box<Formula>),
    /// `Rck(guard, body)` is `C(guard | body)`: along every path through the
    /// group relation restricted to guard-worlds, the body holds.
    Rck(Box<Formula>, Box<Formula>),
    Ck(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn knows(agent: Agent, f: Formula) -> Formula {
        Formula::Knows(agent, Box::new(f))
    }

    pub fn everyone(f: Formula) -> Formula {
        Formula::Everyone(Box::new(f))
    }

    pub fn announce(ann: Formula, f: Formula) -> Formula {
        Formula::Announce(Box::new(ann), Box::new(f))
    }

    pub fn rck(guard: Formula, body: Formula) -> Formula {
        Formula::Rck(Box::new(guard), Box::new(body))
    }

    pub fn ck(f: Formula) -> Formula {
        Formula::Ck(Box::new(f))
    }

    /// Replaces every occurrence of the atom `target` by `replacement`.
    /// There are no binders in the language, so insertion is verbatim.
    pub fn substitute(&self, target: &str, replacement: &Formula) -> Formula {
        match self {
            Formula::Atom(p) if p == target => replacement.clone(),
            Formula::Atom(_) | Formula::Top => self.clone(),
            Formula::Neg(f) => Formula::neg(f.substitute(target, replacement)),
            Formula::And(l, r) => Formula::and(
                l.substitute(target, replacement),
                r.substitute(target, replacement),
            ),
            Formula::Or(l, r) => Formula::or(
                l.substitute(target, replacement),
                r.substitute(target, replacement),
            ),
            Formula::Imp(l, r) => Formula::imp(
                l.substitute(target, replacement),
                r.substitute(target, replacement),
            ),
            Formula::Iff(l, r) => Formula::iff(
                l.substitute(target, replacement),
                r.substitute(target, replacement),
            ),
            Formula::Knows(a, f) => Formula::knows(a.clone(), f.substitute(target, replacement)),
            Formula::Everyone(f) => Formula::everyone(f.substitute(target, replacement)),
            Formula::Announce(a, f) => Formula::announce(
                a.substitute(target, replacement),
                f.substitute(target, replacement),
            ),
            Formula::Rck(g, b) => Formula::rck(
                g.substitute(target, replacement),
                b.substitute(target, replacement),
            ),
            Formula::Ck(f) => Formula::ck(f.substitute(target, replacement)),
        }
    }

    /// Rewrites every `Ck(f)` into `Rck(Top, f)`.
    pub fn normalize_ck(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Top => self.clone(),
            Formula::Neg(f) => Formula::neg(f.normalize_ck()),
            Formula::And(l, r) => Formula::and(l.normalize_ck(), r.normalize_ck()),
            Formula::Or(l, r) => Formula::or(l.normalize_ck(), r.normalize_ck()),
            Formula::Imp(l, r) => Formula::imp(l.normalize_ck(), r.normalize_ck()),
            Formula::Iff(l, r) => Formula::iff(l.normalize_ck(), r.normalize_ck()),
            Formula::Knows(a, f) => Formula::knows(a.clone(), f.normalize_ck()),
            Formula::Everyone(f) => Formula::everyone(f.normalize_ck()),
            Formula::Announce(a, f) => Formula::announce(a.normalize_ck(), f.normalize_ck()),
            Formula::Rck(g, b) => Formula::rck(g.normalize_ck(), b.normalize_ck()),
            Formula::Ck(f) => Formula::rck(Formula::Top, f.normalize_ck()),
        }
    }

    /// Nesting depth of the modal operators (K, E, C, announcement).
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top => 0,
            Formula::Neg(f) => f.modal_depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
                l.modal_depth().max(r.modal_depth())
            }
            Formula::Knows(_, f) | Formula::Everyone(f) | Formula::Ck(f) => 1 + f.modal_depth(),
            Formula::Announce(a, f) => 1 + a.modal_depth().max(f.modal_depth()),
            Formula::Rck(g, b) => 1 + g.modal_depth().max(b.modal_depth()),
        }
    }

    /// Nesting depth of announcement operators only.
    pub fn announcement_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top => 0,
            Formula::Neg(f) | Formula::Knows(_, f) | Formula::Everyone(f) | Formula::Ck(f) => {
                f.announcement_depth()
            }
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Imp(l, r)
            | Formula::Iff(l, r)
            | Formula::Rck(l, r) => l.announcement_depth().max(r.announcement_depth()),
            Formula::Announce(a, f) => 1 + a.announcement_depth().max(f.announcement_depth()),
        }
    }

    /// Atom names occurring in the formula, in first-occurrence order.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Atom(p) = f {
                if !out.iter().any(|q| q == p) {
                    out.push(p.clone());
                }
            }
        });
        out
    }

    /// Agent names occurring in the formula, in first-occurrence order.
    pub fn agents(&self) -> Vec<Agent> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Knows(a, _) = f {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
        });
        out
    }

    fn walk(&self, visit: &mut impl FnMut(&Formula)) {
        visit(self);
        match self {
            Formula::Atom(_) | Formula::Top => {}
            Formula::Neg(f) | Formula::Knows(_, f) | Formula::Everyone(f) | Formula::Ck(f) => {
                f.walk(visit)
            }
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Imp(l, r)
            | Formula::Iff(l, r)
            | Formula::Announce(l, r)
            | Formula::Rck(l, r) => {
                l.walk(visit);
                r.walk(visit);
            }
        }
    }
}

/// Precedence levels used by the renderer; higher binds tighter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Iff,
    Imp,
    Or,
    And,
    Unary,
}

impl Formula {
    fn prec(&self) -> Prec {
        match self {
            Formula::Iff(..) => Prec::Iff,
            Formula::Imp(..) => Prec::Imp,
            Formula::Or(..) => Prec::Or,
            Formula::And(..) => Prec::And,
            _ => Prec::Unary,
        }
    }

    /// `min`: the loosest precedence printable without parentheses at this
    /// position. `no_pipe`: inside a `C( .. | .. )` guard, an `Or` at an
    /// otherwise-bare position must be parenthesized, because the first
    /// top-level `|` there is read as the guard/body separator.
    fn render_into(&self, out: &mut String, min: Prec, no_pipe: bool) {
        let needs_parens = self.prec() < min || (no_pipe && matches!(self, Formula::Or(..)));
        if needs_parens {
            out.push('(');
            self.render_into(out, Prec::Iff, false);
            out.push(')');
            return;
        }
        match self {
            Formula::Atom(p) => out.push_str(p),
            Formula::Top => out.push_str("top"),
            Formula::Neg(f) => {
                out.push('~');
                f.render_into(out, Prec::Unary, false);
            }
            Formula::And(l, r) => {
                l.render_into(out, Prec::And, no_pipe);
                out.push_str(" & ");
                r.render_into(out, Prec::Unary, no_pipe);
            }
            Formula::Or(l, r) => {
                l.render_into(out, Prec::Or, no_pipe);
                out.push_str(" | ");
                r.render_into(out, Prec::And, no_pipe);
            }
            Formula::Imp(l, r) => {
                l.render_into(out, Prec::Or, no_pipe);
                out.push_str(" -> ");
                r.render_into(out, Prec::Imp, no_pipe);
            }
            Formula::Iff(l, r) => {
                l.render_into(out, Prec::Imp, no_pipe);
                out.push_str(" <-> ");
                r.render_into(out, Prec::Iff, no_pipe);
            }
            Formula::Knows(a, f) => {
                out.push_str("K ");
                out.push_str(a.name());
                out.push(' ');
                f.render_into(out, Prec::Unary, false);
            }
            Formula::Everyone(f) => {
                out.push_str("E ");
                f.render_into(out, Prec::Unary, false);
            }
            Formula::Announce(a, f) => {
                out.push_str("[!");
                a.render_into(out, Prec::Iff, false);
                out.push_str("] ");
                f.render_into(out, Prec::Unary, false);
            }
            // CK sugar is preferred when the guard is literally `top`.
            Formula::Rck(g, b) if **g == Formula::Top => render_ck(out, b),
            Formula::Rck(g, b) => {
                out.push_str("C(");
                g.render_into(out, Prec::Iff, true);
                out.push_str(" | ");
                b.render_into(out, Prec::Iff, false);
                out.push(')');
            }
            Formula::Ck(f) => render_ck(out, f),
        }
    }
}

/// A parenthesized argument of `C` is reread in guard mode, where a bare
/// `|` would turn it into the relativized form, so bare pipes inside it
/// are kept behind parentheses.
fn render_ck(out: &mut String, operand: &Formula) {
    out.push_str("C ");
    if operand.prec() < Prec::Unary {
        out.push('(');
        operand.render_into(out, Prec::Iff, true);
        out.push(')');
    } else {
        operand.render_into(out, Prec::Unary, false);
    }
}

/// Minimal-parenthesis concrete syntax; `parse(render(f))` recovers `f`
/// (up to the definitional `C f` = `C(top | f)` identity).
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    f.render_into(&mut out, Prec::Iff, false);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn a() -> Agent {
        Agent::new("a").unwrap()
    }

    #[test]
    fn identifier_rules() {
        assert!(is_identifier("p"));
        assert!(is_identifier("wsa"));
        assert!(is_identifier("w1"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("1p"));
        assert!(!is_identifier("p_q"));
        assert!(!is_identifier("top"));
        assert!(!is_identifier("K"));
        assert!(Agent::new("top").is_err());
    }

    #[test]
    fn render_atom() {
        assert_eq!(render(&Formula::atom("p")), "p");
    }

    #[test]
    fn render_ck_sugar_for_top_guard() {
        let f = Formula::rck(Formula::Top, Formula::atom("p"));
        assert_eq!(render(&f), "C p");
    }

    #[test]
    fn render_precedence_forces_parens() {
        let f = Formula::and(
            Formula::or(Formula::atom("p"), Formula::atom("q")),
            Formula::atom("r"),
        );
        assert_eq!(render(&f), "(p | q) & r");
    }

    #[test]
    fn render_right_assoc_imp() {
        let f = Formula::imp(
            Formula::atom("p"),
            Formula::imp(Formula::atom("q"), Formula::atom("r")),
        );
        assert_eq!(render(&f), "p -> q -> r");
        let g = Formula::imp(
            Formula::imp(Formula::atom("p"), Formula::atom("q")),
            Formula::atom("r"),
        );
        assert_eq!(render(&g), "(p -> q) -> r");
    }

    #[test]
    fn render_left_assoc_and_or() {
        let l = Formula::and(
            Formula::and(Formula::atom("p"), Formula::atom("q")),
            Formula::atom("r"),
        );
        assert_eq!(render(&l), "p & q & r");
        let r = Formula::and(
            Formula::atom("p"),
            Formula::and(Formula::atom("q"), Formula::atom("r")),
        );
        assert_eq!(render(&r), "p & (q & r)");
    }

    #[test]
    fn render_guard_pipe_is_parenthesized() {
        let f = Formula::rck(
            Formula::or(Formula::atom("p"), Formula::atom("q")),
            Formula::atom("r"),
        );
        assert_eq!(render(&f), "C((p | q) | r)");
        assert_eq!(parse(&render(&f)).unwrap(), f);
        // An implication guard keeps its bare pipe-free rendering.
        let g = Formula::rck(
            Formula::imp(Formula::atom("p"), Formula::atom("q")),
            Formula::atom("r"),
        );
        assert_eq!(render(&g), "C(p -> q | r)");
        assert_eq!(parse(&render(&g)).unwrap(), g);
    }

    #[test]
    fn substitute_moore_instance() {
        // p -> p with p := q & ~K a q
        let f = Formula::imp(Formula::atom("p"), Formula::atom("p"));
        let moore = Formula::and(
            Formula::atom("q"),
            Formula::neg(Formula::knows(a(), Formula::atom("q"))),
        );
        let g = f.substitute("p", &moore);
        assert_eq!(g, Formula::imp(moore.clone(), moore));
    }

    #[test]
    fn substitute_no_occurrence() {
        let f = Formula::atom("q");
        assert_eq!(f.substitute("p", &Formula::Top), f);
    }

    #[test]
    fn substitute_both_positions_of_announcement() {
        let f = Formula::announce(Formula::atom("p"), Formula::atom("p"));
        let neg_p = Formula::neg(Formula::atom("p"));
        assert_eq!(
            f.substitute("p", &neg_p),
            Formula::announce(neg_p.clone(), neg_p)
        );
    }

    #[test]
    fn depths() {
        let f = parse("[!~(K a wsa | K a ~wsa)] [!~(K b wsb | K b ~wsb)] K c wsc").unwrap();
        assert_eq!(f.announcement_depth(), 2);
        assert_eq!(f.modal_depth(), 3);
        assert_eq!(f.atoms(), vec!["wsa", "wsb", "wsc"]);
        assert_eq!(
            f.agents(),
            vec![
                Agent::new("a").unwrap(),
                Agent::new("b").unwrap(),
                Agent::new("c").unwrap()
            ]
        );
    }

    #[test]
    fn ck_argument_never_rereads_as_relativized() {
        let disj = Formula::ck(Formula::or(Formula::atom("p"), Formula::atom("q")));
        assert_eq!(render(&disj), "C ((p | q))");
        assert_eq!(parse(&render(&disj)).unwrap(), disj);

        let imp = Formula::ck(Formula::imp(
            Formula::atom("p"),
            Formula::or(Formula::atom("q"), Formula::atom("r")),
        ));
        assert_eq!(render(&imp), "C (p -> (q | r))");
        assert_eq!(parse(&render(&imp)).unwrap(), imp);
    }

    #[test]
    fn normalize_ck_rewrites_sugar() {
        let f = Formula::ck(Formula::atom("p"));
        assert_eq!(
            f.normalize_ck(),
            Formula::rck(Formula::Top, Formula::atom("p"))
        );
    }
}
