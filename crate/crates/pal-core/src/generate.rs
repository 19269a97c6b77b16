//! Seeded random formula generation for the property sweeps. The same seed
//! always yields the same pool, so sweep results are reproducible.

use crate::formula::{Agent, Formula};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub struct FormulaGen {
    rng: ChaCha8Rng,
    atoms: Vec<String>,
    agents: Vec<Agent>,
    /// When false, the announcement constructor is never produced.
    pub with_announcements: bool,
}

impl FormulaGen {
    pub fn new(seed: u64, atoms: &[String], agents: &[Agent]) -> Self {
        assert!(!atoms.is_empty() && !agents.is_empty());
        FormulaGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: atoms.to_vec(),
            agents: agents.to_vec(),
            with_announcements: true,
        }
    }

    pub fn formula(&mut self, max_depth: usize) -> Formula {
        if max_depth == 0 {
            return match self.rng.gen_range(0..4) {
                0 => Formula::Top,
                _ => Formula::Atom(self.atoms.choose(&mut self.rng).unwrap().clone()),
            };
        }
        let ceiling = if self.with_announcements { 12 } else { 11 };
        match self.rng.gen_range(0..ceiling) {
            0 => Formula::Top,
            1 => Formula::Atom(self.atoms.choose(&mut self.rng).unwrap().clone()),
            2 => Formula::neg(self.formula(max_depth - 1)),
            3 => Formula::and(self.formula(max_depth - 1), self.formula(max_depth - 1)),
            4 => Formula::or(self.formula(max_depth - 1), self.formula(max_depth - 1)),
            5 => Formula::imp(self.formula(max_depth - 1), self.formula(max_depth - 1)),
            6 => Formula::iff(self.formula(max_depth - 1), self.formula(max_depth - 1)),
            7 => Formula::knows(
                self.agents.choose(&mut self.rng).unwrap().clone(),
                self.formula(max_depth - 1),
            ),
            8 => Formula::everyone(self.formula(max_depth - 1)),
            9 => Formula::ck(self.formula(max_depth - 1)),
            10 => Formula::rck(self.formula(max_depth - 1), self.formula(max_depth - 1)),
            _ => Formula::announce(self.formula(max_depth - 1), self.formula(max_depth - 1)),
        }
    }

    /// `count` distinct formulas of depth at most `max_depth`.
    pub fn pool(&mut self, count: usize, max_depth: usize) -> Vec<Formula> {
        let mut out: Vec<Formula> = Vec::with_capacity(count);
        let mut attempts = 0usize;
        while out.len() < count {
            attempts += 1;
            assert!(
                attempts < count * 1000,
                "formula space too small for {count} distinct formulas"
            );
            let f = self.formula(max_depth);
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Vec<String>, Vec<Agent>) {
        (
            vec!["p".to_string(), "q".to_string()],
            vec![Agent::new("a").unwrap(), Agent::new("b").unwrap()],
        )
    }

    #[test]
    fn generation_is_deterministic() {
        let (atoms, agents) = setup();
        let a: Vec<_> = FormulaGen::new(7, &atoms, &agents).pool(50, 3);
        let b: Vec<_> = FormulaGen::new(7, &atoms, &agents).pool(50, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn pool_is_distinct_and_depth_bounded() {
        let (atoms, agents) = setup();
        let pool = FormulaGen::new(1, &atoms, &agents).pool(500, 3);
        assert_eq!(pool.len(), 500);
        for f in &pool {
            assert!(f.modal_depth() <= 3);
        }
        for (i, f) in pool.iter().enumerate() {
            assert!(!pool[..i].contains(f));
        }
    }

    #[test]
    fn announcement_free_mode() {
        let (atoms, agents) = setup();
        let mut g = FormulaGen::new(3, &atoms, &agents);
        g.with_announcements = false;
        for f in g.pool(200, 4) {
            assert_eq!(f.announcement_depth(), 0);
        }
    }
}
