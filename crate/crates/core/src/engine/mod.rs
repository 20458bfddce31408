//! Decision procedure for exact derivability in the calculus.

mod family;
mod forward;
mod search;
mod trie;
mod universe;

use dashmap::DashMap;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub use family::{default_atoms, formulas_up_to, sequent_family, theorem_candidates, SequentFamily};
pub use forward::{forward_closure, forward_closure_with_limit, ForwardClosure, ForwardError, DEFAULT_CLOSURE_LIMIT};
pub use universe::MAX_UNIVERSE;

use crate::kernel::{Derivation, Mode};
use crate::syntax::{Sequent, Succedent};
use search::Search;
use universe::{Goal, Universe};

/// Default bound on distinct goals per query.
pub const DEFAULT_MEMO_CAP: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub goals_expanded: u64,
    pub distinct_goals: u64,
    pub max_weight_seen: usize,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionResult {
    Provable {
        derivation: Derivation,
        min_height: usize,
        stats: SearchStats,
    },
    /// The whole reachable goal space was exhausted without a derivation.
    Unprovable { certificate: SearchStats },
}

impl DecisionResult {
    pub fn is_provable(&self) -> bool {
        matches!(self, DecisionResult::Provable { .. })
    }

    pub fn min_height(&self) -> Option<usize> {
        match self {
            DecisionResult::Provable { min_height, .. } => Some(*min_height),
            DecisionResult::Unprovable { .. } => None,
        }
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            DecisionResult::Provable { derivation, .. } => Some(derivation),
            DecisionResult::Unprovable { .. } => None,
        }
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            DecisionResult::Provable { stats, .. } => stats,
            DecisionResult::Unprovable { certificate } => certificate,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            DecisionResult::Provable {
                derivation,
                min_height,
                stats,
            } => json!({
                "status": "provable",
                "min_height": min_height,
                "derivation": derivation.to_node(),
                "stats": stats,
            }),
            DecisionResult::Unprovable { certificate } => json!({
                "status": "unprovable",
                "stats": certificate,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("resource limit: {distinct_goals} distinct goals exceed the cap of {cap}")]
    ResourceLimit { distinct_goals: u64, cap: usize },
    #[error("resource limit: {count} distinct subformulas exceed the supported {max}")]
    TooManySubformulas { count: usize, max: usize },
    #[error("`|-` with empty antecedent and empty succedent is not a judgment")]
    EmptyJudgment,
}

impl EngineError {
    pub fn to_json(&self) -> Value {
        json!({ "status": "resource-limit", "error": self.to_string() })
    }
}

/// Proof search in one mode, with a shared cache of per-sequent verdicts.
///
/// The cache maps a sequent to its minimal height (or to unprovable). It
/// can be shared by reference across threads; two threads racing on the
/// same sequent compute the same value.
pub struct Engine {
    mode: Mode,
    cap: usize,
    memo: DashMap<Sequent, Option<usize>>,
}

impl Engine {
    pub fn new(mode: Mode) -> Engine {
        Engine::with_cap(mode, DEFAULT_MEMO_CAP)
    }

    pub fn with_cap(mode: Mode, cap: usize) -> Engine {
        Engine {
            mode,
            cap,
            memo: DashMap::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn search<T>(
        &self,
        s: &Sequent,
        then: impl FnOnce(&Search<'_>, Goal, search::Counters) -> T,
    ) -> Result<T, EngineError> {
        if s.is_empty_judgment() {
            return Err(EngineError::EmptyJudgment);
        }
        let u = Universe::for_sequent(s).ok_or_else(|| EngineError::TooManySubformulas {
            count: s.subformulas().len(),
            max: MAX_UNIVERSE,
        })?;
        let root = u.goal_of(s).expect("universe covers its own sequent");
        let found = Search::run(&u, self.mode, root, self.cap).map_err(|e| EngineError::ResourceLimit {
            distinct_goals: e.distinct_goals,
            cap: self.cap,
        })?;
        let counters = found.counters();
        let h = found.min_height(root).map(|h| h as usize);
        self.memo.insert(s.clone(), h);
        Ok(then(&found, root, counters))
    }

    /// Full decision with a minimal derivation and search statistics.
    pub fn decide(&self, s: &Sequent) -> Result<DecisionResult, EngineError> {
        let mode = self.mode;
        self.search(s, |found, root, c| {
            let stats = SearchStats {
                goals_expanded: c.goals_expanded,
                distinct_goals: c.distinct_goals,
                max_weight_seen: c.max_weight_seen,
                mode,
            };
            match found.derivation(root) {
                Some(derivation) => DecisionResult::Provable {
                    min_height: derivation.height(),
                    derivation,
                    stats,
                },
                None => DecisionResult::Unprovable { certificate: stats },
            }
        })
    }

    /// Minimal height if provable, `None` if not. Cached.
    pub fn min_height(&self, s: &Sequent) -> Result<Option<usize>, EngineError> {
        if let Some(h) = self.memo.get(s) {
            return Ok(*h);
        }
        self.search(s, |_, _, _| ())?;
        Ok(*self.memo.get(s).expect("search records its root"))
    }

    pub fn is_provable(&self, s: &Sequent) -> Result<bool, EngineError> {
        Ok(self.min_height(s)?.is_some())
    }

    /// Every provable `Δ' ⊢ S'` with `Δ' ⊆ Δ` and `S'` the original
    /// succedent or empty.
    pub fn provable_subsequents(&self, s: &Sequent) -> Result<Vec<(Sequent, DecisionResult)>, EngineError> {
        let ant: Vec<_> = s.antecedent().iter().cloned().collect();
        assert!(ant.len() <= 12, "provable_subsequents supports at most 12 antecedent formulas");
        let mut succs = vec![s.succedent().clone()];
        if !s.succedent().is_absurd() {
            succs.push(Succedent::Absurd);
        }
        let mut out = Vec::new();
        for mask in 0u32..(1 << ant.len()) {
            let sub: Vec<_> = (0..ant.len()).filter(|i| mask & (1 << i) != 0).map(|i| ant[i].clone()).collect();
            for succ in &succs {
                let candidate = Sequent::new(sub.iter().cloned(), succ.clone());
                if candidate.is_empty_judgment() {
                    continue;
                }
                let result = self.decide(&candidate)?;
                if result.is_provable() {
                    out.push((candidate, result));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}

/// One-shot decision with a fresh engine.
pub fn decide(s: &Sequent, mode: Mode) -> Result<DecisionResult, EngineError> {
    Engine::new(mode).decide(s)
}

pub fn provable_subsequents(s: &Sequent, mode: Mode) -> Result<Vec<(Sequent, DecisionResult)>, EngineError> {
    Engine::new(mode).provable_subsequents(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check_derivation;
    use crate::syntax::parse_sequent;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn run(s: &str) -> DecisionResult {
        decide(&seq(s), Mode::Tennant).unwrap()
    }

    #[test]
    fn lewis_paradox_is_unprovable() {
        for mode in Mode::ALL {
            let r = decide(&seq("~A, A |- B"), mode).unwrap();
            assert!(!r.is_provable());
            assert!(r.stats().distinct_goals <= r.stats().goals_expanded);
        }
    }

    #[test]
    fn lewis_theorem_has_height_three() {
        let r = run("|- ~A -> (A -> B)");
        assert_eq!(r.min_height(), Some(3));
        let d = r.derivation().unwrap();
        check_derivation(d, Mode::Tennant).unwrap();
        assert_eq!(d, &crate::kernel::fixtures::d1_upper());
    }

    #[test]
    fn examples() {
        assert!(run("~A -> (A -> B), ~A, A |- B").is_provable());
        assert_eq!(run("~A, A |-").min_height(), Some(1));
        assert!(!run("(p->p), q |- q").is_provable());
        assert_eq!(run("q |- q").min_height(), Some(0));
        assert_eq!(run("p -> p, p |- p").min_height(), Some(1));
    }

    #[test]
    fn contraction_through_set_contexts() {
        // Needs the negated formula twice.
        let r = run("|- ~~(p | ~p)");
        assert!(r.is_provable());
        check_derivation(r.derivation().unwrap(), Mode::Tennant).unwrap();
    }

    #[test]
    fn empty_judgment_rejected() {
        assert_eq!(
            decide(&Sequent::absurd([]), Mode::Tennant),
            Err(EngineError::EmptyJudgment)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let engine = Engine::with_cap(Mode::Tennant, 3);
        let err = engine.decide(&seq("~A -> (A -> B), ~A, A |- B")).unwrap_err();
        assert!(matches!(err, EngineError::ResourceLimit { cap: 3, .. }));
    }

    #[test]
    fn subsequents() {
        let found = provable_subsequents(&seq("B, ~A, A |-"), Mode::Tennant).unwrap();
        let names: Vec<String> = found.iter().map(|(s, _)| s.print()).collect();
        assert!(names.contains(&"A, ~A |-".to_string()));
        assert!(!names.contains(&"A, B, ~A |-".to_string()));

        let found = provable_subsequents(&seq("p |- p"), Mode::Tennant).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].0, seq("p |- p"));

        let found = provable_subsequents(&seq("~A, A |- B"), Mode::Tennant).unwrap();
        assert!(found.iter().all(|(s, _)| s.succedent().is_absurd()));
    }
}
