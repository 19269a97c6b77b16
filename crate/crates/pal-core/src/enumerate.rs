//! Deterministic enumeration of all models over a fixed number of worlds.
//!
//! Worlds are labeled `w1..wn`. For frame `K` every relation bit code and
//! every valuation bit code is produced; for frame `S5` relations range over
//! the equivalence relations, enumerated as set partitions in
//! restricted-growth-string order. Components vary lexicographically with
//! the first declared agent most significant, then the remaining agents,
//! then the atoms in declared order; within a component, codes ascend.
//!
//! No quotienting by isomorphism is done, so searches may revisit isomorphic
//! duplicates; this affects performance only.

use crate::formula::Agent;
use crate::model::{EpistemicModel, Relation, WorldSet};

/// The frame class a search ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// All relations.
    K,
    /// Equivalence relations only.
    S5,
}

impl Frame {
    pub fn as_str(&self) -> &'static str {
        match self {
            Frame::K => "k",
            Frame::S5 => "s5",
        }
    }
}

/// All set partitions of `{0..n}` as restricted growth strings, in
/// lexicographic order. `partitions(3)` has 5 entries (the Bell numbers).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, prefix: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for block in 0..=max {
            prefix.push(block);
            let next_max = max.max(block + 1);
            go(n, prefix, next_max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    go(n, &mut vec![0], 1, &mut out);
    out
}

fn partition_to_relation(rgs: &[usize]) -> Relation {
    let n = rgs.len();
    let mut r = Relation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if rgs[x] == rgs[y] {
                r.insert(x, y);
            }
        }
    }
    r
}

/// Number of models with exactly `n_worlds` worlds for the given counts.
pub fn model_count(n_worlds: usize, n_agents: usize, n_atoms: usize, frame: Frame) -> u128 {
    let per_relation: u128 = match frame {
        Frame::K => 1u128 << (n_worlds * n_worlds),
        Frame::S5 => partitions(n_worlds).len() as u128,
    };
    let per_valuation: u128 = 1u128 << n_worlds;
    per_relation.pow(n_agents as u32) * per_valuation.pow(n_atoms as u32)
}

/// A deterministic stream of models. Models can also be decoded directly
/// from their enumeration index, so index ranges partition the stream.
pub struct ModelEnumeration {
    n_worlds: usize,
    agents: Vec<Agent>,
    atoms: Vec<String>,
    frame: Frame,
    s5_relations: Vec<Relation>,
    total: u128,
    next: u128,
}

impl ModelEnumeration {
    pub fn new(n_worlds: usize, agents: &[Agent], atoms: &[String], frame: Frame) -> Self {
        assert!(n_worlds >= 1, "models need at least one world");
        assert!(
            n_worlds * n_worlds <= 64,
            "enumeration uses 64-bit relation codes"
        );
        let s5_relations = match frame {
            Frame::K => Vec::new(),
            Frame::S5 => partitions(n_worlds)
                .iter()
                .map(|p| partition_to_relation(p))
                .collect(),
        };
        ModelEnumeration {
            n_worlds,
            agents: agents.to_vec(),
            atoms: atoms.to_vec(),
            frame,
            s5_relations,
            total: model_count(n_worlds, agents.len(), atoms.len(), frame),
            next: 0,
        }
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    /// Decodes the model at `index` in enumeration order.
    pub fn model_at(&self, index: u128) -> EpistemicModel {
        assert!(index < self.total);
        let n = self.n_worlds;
        let rel_radix: u128 = match self.frame {
            Frame::K => 1u128 << (n * n),
            Frame::S5 => self.s5_relations.len() as u128,
        };
        let val_radix: u128 = 1u128 << n;

        // Mixed-radix digits, least significant last: the final atom varies
        // fastest and the first agent slowest.
        let mut rest = index;
        let mut val_codes = vec![0u64; self.atoms.len()];
        for slot in val_codes.iter_mut().rev() {
            *slot = (rest % val_radix) as u64;
            rest /= val_radix;
        }
        let mut rel_codes = vec![0u128; self.agents.len()];
        for slot in rel_codes.iter_mut().rev() {
            *slot = rest % rel_radix;
            rest /= rel_radix;
        }

        let worlds = (1..=n).map(|i| format!("w{i}")).collect();
        let rels = rel_codes
            .iter()
            .map(|&code| match self.frame {
                Frame::K => Relation::from_code(n, code as u64),
                Frame::S5 => self.s5_relations[code as usize].clone(),
            })
            .collect();
        let vals = val_codes
            .iter()
            .map(|&code| WorldSet::from_code(n, code))
            .collect();
        EpistemicModel::new(worlds, self.agents.clone(), rels, self.atoms.clone(), vals)
            .expect("enumerated models are well formed")
    }
}

impl Iterator for ModelEnumeration {
    type Item = EpistemicModel;

    fn next(&mut self) -> Option<EpistemicModel> {
        if self.next >= self.total {
            return None;
        }
        let m = self.model_at(self.next);
        self.next += 1;
        Some(m)
    }
}

/// All models with exactly `n_worlds` worlds, in enumeration order.
pub fn enumerate_models(
    n_worlds: usize,
    agents: &[Agent],
    atoms: &[String],
    frame: Frame,
) -> ModelEnumeration {
    ModelEnumeration::new(n_worlds, agents, atoms, frame)
}
