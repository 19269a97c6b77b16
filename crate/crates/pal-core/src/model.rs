//! Finite epistemic models: a nonempty ordered set of worlds, one
//! accessibility relation per agent, and an atomic valuation.
//!
//! Worlds are addressed by index internally; the public surface also speaks
//! world ids. Relations and world sets are bit matrices/vectors over the
//! fixed world order, so the relation algebra is word-parallel.

use crate::formula::{is_identifier, Agent};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("relations live on different world universes ({0} vs {1} worlds)")]
    UniverseMismatch(usize, usize),
    #[error("universe too large for the closure oracle ({0} worlds, limit 4)")]
    UniverseTooLarge(usize),
    #[error("a model needs at least one world")]
    NoWorlds,
    #[error("evaluation domain is empty")]
    EmptyDomain,
    #[error("duplicate world id `{0}`")]
    DuplicateWorld(String),
    #[error("duplicate agent `{0}`")]
    DuplicateAgent(String),
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("invalid identifier `{0}`")]
    BadIdentifier(String),
    #[error("unknown world id `{0}`")]
    UnknownWorld(String),
    #[error("model file: {0}")]
    Json(#[from] serde_json::Error),
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A subset of the worlds of some model; also serves as an evaluation
/// domain for the domain-passing semantics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    n: usize,
    bits: Vec<u64>,
}

/// The domain parameter threaded through the embedding semantics.
pub type EvaluationDomain = WorldSet;

impl WorldSet {
    pub fn empty(n: usize) -> Self {
        WorldSet {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in 0..n {
            s.insert(w);
        }
        s
    }

    /// Decodes a bit code: bit `j` means world `j` is a member. Only the
    /// low `n` bits are read, so `n` must be at most 64.
    pub fn from_code(n: usize, code: u64) -> Self {
        assert!(n <= 64, "bit codes cover at most 64 worlds");
        let mut s = Self::empty(n);
        s.bits[0] = code & mask_low(n);
        s
    }

    pub fn from_indices(n: usize, members: &[usize]) -> Self {
        let mut s = Self::empty(n);
        for &w in members {
            s.insert(w);
        }
        s
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, w: usize) {
        debug_assert!(w < self.n);
        self.bits[w / 64] |= 1 << (w % 64);
    }

    pub fn contains(&self, w: usize) -> bool {
        debug_assert!(w < self.n);
        self.bits[w / 64] >> (w % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&w| self.contains(w))
    }

    pub fn intersection(&self, other: &WorldSet) -> Result<WorldSet, ModelError> {
        if self.n != other.n {
            return Err(ModelError::UniverseMismatch(self.n, other.n));
        }
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        Ok(WorldSet { n: self.n, bits })
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

fn mask_low(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A binary relation on the worlds of some model, stored row-major:
/// bit `from * n + to`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![0; words_for(n * n)],
        }
    }

    pub fn total(n: usize) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            for y in 0..n {
                r.insert(x, y);
            }
        }
        r
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            r.insert(x, x);
        }
        r
    }

    /// Decodes a bit code: bit `k` is the pair (world `k / n`, world `k % n`).
    /// Usable for universes of up to 8 worlds (64 pair bits).
    pub fn from_code(n: usize, code: u64) -> Self {
        assert!(n * n <= 64, "relation bit codes cover at most 8 worlds");
        let mut r = Self::empty(n);
        r.bits[0] = code & mask_low(n * n);
        r
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut r = Self::empty(n);
        for &(x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, from: usize, to: usize) {
        debug_assert!(from < self.n && to < self.n);
        let k = from * self.n + to;
        self.bits[k / 64] |= 1 << (k % 64);
    }

    pub fn contains(&self, from: usize, to: usize) -> bool {
        debug_assert!(from < self.n && to < self.n);
        let k = from * self.n + to;
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |x| (0..self.n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.contains(x, y))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn check_universe(&self, other: &Relation) -> Result<(), ModelError> {
        if self.n != other.n {
            Err(ModelError::UniverseMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    /// Pairwise set union.
    pub fn union_rel(&self, other: &Relation) -> Result<Relation, ModelError> {
        self.check_universe(other)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a | b)
            .collect();
        Ok(Relation { n: self.n, bits })
    }

    /// Pairwise set intersection.
    pub fn intersection_rel(&self, other: &Relation) -> Result<Relation, ModelError> {
        self.check_universe(other)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        Ok(Relation { n: self.n, bits })
    }

    /// True iff `self` is included in `other` as a set of pairs.
    pub fn sub_rel(&self, other: &Relation) -> Result<bool, ModelError> {
        self.check_universe(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    /// The least transitive relation containing `self` (no reflexive
    /// closure), by iterated composition until the fixpoint.
    pub fn tc(&self) -> Relation {
        let mut r = self.clone();
        loop {
            let mut changed = false;
            for k in 0..self.n {
                for i in 0..self.n {
                    if r.contains(i, k) {
                        for j in 0..self.n {
                            if r.contains(k, j) && !r.contains(i, j) {
                                r.insert(i, j);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                return r;
            }
        }
    }

    /// Keeps only the pairs whose target lies in `targets`.
    pub fn restrict_targets(&self, targets: &WorldSet) -> Relation {
        debug_assert_eq!(self.n, targets.n);
        let mut r = Relation::empty(self.n);
        for (x, y) in self.pairs() {
            if targets.contains(y) {
                r.insert(x, y);
            }
        }
        r
    }

    /// Keeps only the pairs with both endpoints in `set`.
    pub fn restrict_to(&self, set: &WorldSet) -> Relation {
        debug_assert_eq!(self.n, set.n);
        let mut r = Relation::empty(self.n);
        for (x, y) in self.pairs() {
            if set.contains(x) && set.contains(y) {
                r.insert(x, y);
            }
        }
        r
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.contains(x, x))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs()
            .all(|(x, y)| (0..self.n).all(|z| !self.contains(y, z) || self.contains(x, z)))
    }

    pub fn is_euclidean(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                (0..self.n)
                    .all(|z| !(self.contains(x, y) && self.contains(x, z)) || self.contains(y, z))
            })
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_transitive() && self.is_euclidean()
    }
}

/// The closure oracle: reads the second-order definition literally by
/// enumerating every relation `Q` on the universe and intersecting the
/// transitive supersets of `r`. Only feasible for at most 4 worlds.
pub fn tc_oracle(r: &Relation) -> Result<Relation, ModelError> {
    let n = r.universe_size();
    if n > 4 {
        return Err(ModelError::UniverseTooLarge(n));
    }
    let mut acc = Relation::total(n);
    for code in 0..(1u64 << (n * n)) {
        let q = Relation::from_code(n, code);
        if q.is_transitive() && r.sub_rel(&q)? {
            acc = acc.intersection_rel(&q)?;
        }
    }
    Ok(acc)
}

/// Per-agent frame properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameProperties {
    pub reflexive: bool,
    pub transitive: bool,
    pub euclidean: bool,
}

impl FrameProperties {
    pub fn all(&self) -> bool {
        self.reflexive && self.transitive && self.euclidean
    }
}

/// A finite epistemic model with a fixed agent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicModel {
    worlds: Vec<String>,
    agents: Vec<Agent>,
    rels: Vec<Relation>,
    atoms: Vec<String>,
    vals: Vec<WorldSet>,
}

impl EpistemicModel {
    pub fn new(
        worlds: Vec<String>,
        agents: Vec<Agent>,
        rels: Vec<Relation>,
        atoms: Vec<String>,
        vals: Vec<WorldSet>,
    ) -> Result<Self, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::NoWorlds);
        }
        let n = worlds.len();
        for (i, w) in worlds.iter().enumerate() {
            if !is_identifier(w) {
                return Err(ModelError::BadIdentifier(w.clone()));
            }
            if worlds[..i].contains(w) {
                return Err(ModelError::DuplicateWorld(w.clone()));
            }
        }
        for (i, a) in agents.iter().enumerate() {
            if agents[..i].contains(a) {
                return Err(ModelError::DuplicateAgent(a.name().to_string()));
            }
        }
        for (i, p) in atoms.iter().enumerate() {
            if !is_identifier(p) {
                return Err(ModelError::BadIdentifier(p.clone()));
            }
            if atoms[..i].contains(p) {
                return Err(ModelError::DuplicateAtom(p.clone()));
            }
        }
        assert_eq!(agents.len(), rels.len(), "one relation per agent");
        assert_eq!(atoms.len(), vals.len(), "one world set per atom");
        for r in &rels {
            if r.universe_size() != n {
                return Err(ModelError::UniverseMismatch(r.universe_size(), n));
            }
        }
        for v in &vals {
            if v.universe_size() != n {
                return Err(ModelError::UniverseMismatch(v.universe_size(), n));
            }
        }
        Ok(EpistemicModel {
            worlds,
            agents,
            rels,
            atoms,
            vals,
        })
    }

    pub fn n_worlds(&self) -> usize {
        self.worlds.len()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_id(&self, w: usize) -> &str {
        &self.worlds[w]
    }

    pub fn world_index(&self, id: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == id)
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent_index(&self, agent: &Agent) -> Option<usize> {
        self.agents.iter().position(|a| a == agent)
    }

    pub fn relation(&self, agent_idx: usize) -> &Relation {
        &self.rels[agent_idx]
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_index(&self, atom: &str) -> Option<usize> {
        self.atoms.iter().position(|p| p == atom)
    }

    pub fn valuation(&self, atom_idx: usize) -> &WorldSet {
        &self.vals[atom_idx]
    }

    /// The group relation: left-fold of union over the agents' relations in
    /// their fixed order (empty relation for an empty group).
    pub fn evr(&self) -> Relation {
        let mut acc = Relation::empty(self.n_worlds());
        for r in &self.rels {
            acc = acc.union_rel(r).expect("same universe by construction");
        }
        acc
    }

    /// Frame properties per agent, in agent order.
    pub fn classify_frame(&self) -> Vec<(Agent, FrameProperties)> {
        self.agents
            .iter()
            .zip(&self.rels)
            .map(|(a, r)| {
                (
                    a.clone(),
                    FrameProperties {
                        reflexive: r.is_reflexive(),
                        transitive: r.is_transitive(),
                        euclidean: r.is_euclidean(),
                    },
                )
            })
            .collect()
    }

    /// True iff every agent's relation is an equivalence.
    pub fn is_s5(&self) -> bool {
        self.rels.iter().all(|r| r.is_equivalence())
    }

    /// The submodel on `domain`: worlds restricted (order kept), relations
    /// and valuations intersected accordingly. The domain must be nonempty.
    pub fn restrict(&self, domain: &WorldSet) -> Result<EpistemicModel, ModelError> {
        if domain.universe_size() != self.n_worlds() {
            return Err(ModelError::UniverseMismatch(
                domain.universe_size(),
                self.n_worlds(),
            ));
        }
        if domain.is_empty() {
            return Err(ModelError::EmptyDomain);
        }
        let keep: Vec<usize> = domain.iter().collect();
        let new_n = keep.len();
        let new_index = |old: usize| keep.iter().position(|&k| k == old);
        let worlds = keep.iter().map(|&w| self.worlds[w].clone()).collect();
        let rels = self
            .rels
            .iter()
            .map(|r| {
                let mut out = Relation::empty(new_n);
                for (x, y) in r.pairs() {
                    if let (Some(nx), Some(ny)) = (new_index(x), new_index(y)) {
                        out.insert(nx, ny);
                    }
                }
                out
            })
            .collect();
        let vals = self
            .vals
            .iter()
            .map(|v| {
                let mut out = WorldSet::empty(new_n);
                for w in v.iter() {
                    if let Some(nw) = new_index(w) {
                        out.insert(nw);
                    }
                }
                out
            })
            .collect();
        EpistemicModel::new(worlds, self.agents.clone(), rels, self.atoms.clone(), vals)
    }

    pub fn from_json_str(text: &str) -> Result<Self, ModelError> {
        let file: ModelFile = serde_json::from_str(text)?;
        file.into_model()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ModelFile::from_model(self)).expect("model serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&ModelFile::from_model(self)).expect("model serializes")
    }
}

/// The on-disk shape of a model. World order is array order; agent and atom
/// order is key order; unknown keys are rejected.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    worlds: Vec<String>,
    agents: IndexMap<String, Vec<(String, String)>>,
    valuation: IndexMap<String, Vec<String>>,
}

impl ModelFile {
    fn from_model(m: &EpistemicModel) -> ModelFile {
        let agents = m
            .agents
            .iter()
            .zip(&m.rels)
            .map(|(a, r)| {
                let pairs = r
                    .pairs()
                    .map(|(x, y)| (m.worlds[x].clone(), m.worlds[y].clone()))
                    .collect();
                (a.name().to_string(), pairs)
            })
            .collect();
        let valuation = m
            .atoms
            .iter()
            .zip(&m.vals)
            .map(|(p, v)| {
                let ws = v.iter().map(|w| m.worlds[w].clone()).collect();
                (p.clone(), ws)
            })
            .collect();
        ModelFile {
            worlds: m.worlds.clone(),
            agents,
            valuation,
        }
    }

    fn into_model(self) -> Result<EpistemicModel, ModelError> {
        let n = self.worlds.len();
        let index = |id: &str| -> Result<usize, ModelError> {
            self.worlds
                .iter()
                .position(|w| w == id)
                .ok_or_else(|| ModelError::UnknownWorld(id.to_string()))
        };
        let mut agents = Vec::new();
        let mut rels = Vec::new();
        for (name, pairs) in &self.agents {
            let agent = Agent::new(name.clone()).map_err(|e| ModelError::BadIdentifier(e.0))?;
            let mut r = Relation::empty(n);
            for (from, to) in pairs {
                r.insert(index(from)?, index(to)?);
            }
            agents.push(agent);
            rels.push(r);
        }
        let mut atoms = Vec::new();
        let mut vals = Vec::new();
        for (atom, members) in &self.valuation {
            let mut v = WorldSet::empty(n);
            for id in members {
                v.insert(index(id)?);
            }
            atoms.push(atom.clone());
            vals.push(v);
        }
        EpistemicModel::new(self.worlds, agents, rels, atoms, vals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(r: &Relation) -> Vec<(usize, usize)> {
        r.pairs().collect()
    }

    #[test]
    fn union_examples() {
        let empty = Relation::empty(2);
        let r = Relation::from_pairs(2, &[(0, 1)]);
        assert_eq!(empty.union_rel(&r).unwrap(), r);
        assert_eq!(r.union_rel(&r).unwrap(), r);
        let q = Relation::from_pairs(2, &[(1, 0)]);
        assert_eq!(pairs(&r.union_rel(&q).unwrap()), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn intersection_examples() {
        let r = Relation::from_pairs(2, &[(0, 1)]);
        assert!(r.intersection_rel(&Relation::empty(2)).unwrap().is_empty());
        let s = Relation::from_pairs(2, &[(0, 1), (1, 1)]);
        let t = Relation::from_pairs(2, &[(1, 1)]);
        assert_eq!(s.intersection_rel(&t).unwrap(), t);
        assert_eq!(s.intersection_rel(&s).unwrap(), s);
    }

    #[test]
    fn sub_examples() {
        let r = Relation::from_pairs(2, &[(0, 1)]);
        assert!(Relation::empty(2).sub_rel(&r).unwrap());
        assert!(r.sub_rel(&r).unwrap());
        let q = Relation::from_pairs(2, &[(1, 0)]);
        assert!(!r.sub_rel(&q).unwrap());
    }

    #[test]
    fn universe_mismatch_is_an_error() {
        let r = Relation::empty(2);
        let q = Relation::empty(3);
        assert!(matches!(
            r.union_rel(&q),
            Err(ModelError::UniverseMismatch(2, 3))
        ));
        assert!(r.intersection_rel(&q).is_err());
        assert!(r.sub_rel(&q).is_err());
    }

    #[test]
    fn tc_examples() {
        let r = Relation::from_pairs(3, &[(0, 1), (1, 2)]);
        assert_eq!(pairs(&r.tc()), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(Relation::empty(2).tc().is_empty());
        let loops = Relation::from_pairs(1, &[(0, 0)]);
        assert_eq!(loops.tc(), loops);
    }

    #[test]
    fn tc_oracle_examples() {
        let r = Relation::from_pairs(2, &[(0, 1), (1, 0)]);
        assert_eq!(
            pairs(&tc_oracle(&r).unwrap()),
            vec![(0, 0), (0, 1), (1, 0), (1, 1)]
        );
        assert!(tc_oracle(&Relation::empty(2)).unwrap().is_empty());
        let single = Relation::from_pairs(2, &[(0, 1)]);
        assert_eq!(tc_oracle(&single).unwrap(), single);
        assert!(matches!(
            tc_oracle(&Relation::empty(5)),
            Err(ModelError::UniverseTooLarge(5))
        ));
    }

    #[test]
    fn tc_matches_oracle_exhaustively_on_three_worlds() {
        for code in 0..(1u64 << 9) {
            let r = Relation::from_code(3, code);
            assert_eq!(r.tc(), tc_oracle(&r).unwrap(), "relation code {code}");
        }
    }

    fn two_world_model(rel: Relation, p_at: &[usize]) -> EpistemicModel {
        EpistemicModel::new(
            vec!["w1".into(), "w2".into()],
            vec![Agent::new("a").unwrap()],
            vec![rel],
            vec!["p".into()],
            vec![WorldSet::from_indices(2, p_at)],
        )
        .unwrap()
    }

    #[test]
    fn classify_frame_examples() {
        let m = two_world_model(Relation::total(2), &[0]);
        let props = m.classify_frame()[0].1;
        assert!(props.reflexive && props.transitive && props.euclidean);
        assert!(m.is_s5());

        let lonely = EpistemicModel::new(
            vec!["w1".into()],
            vec![Agent::new("a").unwrap()],
            vec![Relation::empty(1)],
            vec![],
            vec![],
        )
        .unwrap();
        let props = lonely.classify_frame()[0].1;
        assert!(!props.reflexive && props.transitive && props.euclidean);

        // w1 R w2 twice but not w2 R w2: euclideanness fails.
        let m = two_world_model(Relation::from_pairs(2, &[(0, 1)]), &[]);
        let props = m.classify_frame()[0].1;
        assert!(!props.reflexive && props.transitive && !props.euclidean);
    }

    #[test]
    fn evr_examples() {
        let r = Relation::from_pairs(2, &[(0, 1)]);
        let m = two_world_model(r.clone(), &[]);
        assert_eq!(m.evr(), r);

        let m2 = EpistemicModel::new(
            vec!["w1".into(), "w2".into()],
            vec![Agent::new("a").unwrap(), Agent::new("b").unwrap()],
            vec![
                Relation::from_pairs(2, &[(0, 1)]),
                Relation::from_pairs(2, &[(1, 0)]),
            ],
            vec![],
            vec![],
        )
        .unwrap();
        assert_eq!(pairs(&m2.evr()), vec![(0, 1), (1, 0)]);

        let m3 = EpistemicModel::new(
            vec!["w1".into()],
            vec![
                Agent::new("a").unwrap(),
                Agent::new("b").unwrap(),
                Agent::new("c").unwrap(),
            ],
            vec![Relation::empty(1), Relation::empty(1), Relation::empty(1)],
            vec![],
            vec![],
        )
        .unwrap();
        assert!(m3.evr().is_empty());
    }

    #[test]
    fn restrict_examples() {
        let m = two_world_model(Relation::total(2), &[0]);
        assert_eq!(m.restrict(&WorldSet::full(2)).unwrap(), m);

        let r = m.restrict(&WorldSet::from_indices(2, &[0])).unwrap();
        assert_eq!(r.worlds(), &["w1".to_string()]);
        assert_eq!(r.relation(0), &Relation::from_pairs(1, &[(0, 0)]));
        assert_eq!(r.valuation(0), &WorldSet::from_indices(1, &[0]));

        // An atom false everywhere stays empty.
        let m = two_world_model(Relation::total(2), &[]);
        let r = m.restrict(&WorldSet::from_indices(2, &[1])).unwrap();
        assert!(r.valuation(0).is_empty());

        assert!(matches!(
            m.restrict(&WorldSet::empty(2)),
            Err(ModelError::EmptyDomain)
        ));
    }

    #[test]
    fn model_validation() {
        assert!(matches!(
            EpistemicModel::new(vec![], vec![], vec![], vec![], vec![]),
            Err(ModelError::NoWorlds)
        ));
        assert!(matches!(
            EpistemicModel::new(
                vec!["w1".into(), "w1".into()],
                vec![],
                vec![],
                vec![],
                vec![]
            ),
            Err(ModelError::DuplicateWorld(_))
        ));
        assert!(matches!(
            EpistemicModel::new(vec!["1w".into()], vec![], vec![], vec![], vec![]),
            Err(ModelError::BadIdentifier(_))
        ));
    }

    #[test]
    fn model_json_round_trip() {
        let m = EpistemicModel::new(
            vec!["w1".into(), "w2".into()],
            vec![
                Agent::new("a").unwrap(),
                Agent::new("b".to_string()).unwrap(),
            ],
            vec![Relation::total(2), Relation::identity(2)],
            vec!["p".into(), "q".into()],
            vec![
                WorldSet::from_indices(2, &[0]),
                WorldSet::from_indices(2, &[]),
            ],
        )
        .unwrap();
        let text = m.to_json_string();
        let back = EpistemicModel::from_json_str(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn model_json_rejects_unknown_keys_and_bad_worlds() {
        let bad = r#"{"worlds": ["w1"], "agents": {}, "valuation": {}, "extra": 1}"#;
        assert!(matches!(
            EpistemicModel::from_json_str(bad),
            Err(ModelError::Json(_))
        ));
        let bad = r#"{"worlds": ["w1"], "agents": {"a": [["w1", "w9"]]}, "valuation": {}}"#;
        assert!(matches!(
            EpistemicModel::from_json_str(bad),
            Err(ModelError::UnknownWorld(_))
        ));
    }
}
