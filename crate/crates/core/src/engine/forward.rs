//! Forward saturation: apply every rule to every derived sequent until
//! nothing new appears. Shares no code with the backward search; used as
//! an independent oracle for it.

use std::collections::HashMap;

use thiserror::Error;

use super::universe::{bit, bits, Goal, Idx, Shape, Universe, ABSURD};
use crate::kernel::Mode;
use crate::syntax::{Formula, Sequent};

/// Largest universe (after subformula closure) saturated by default.
pub const DEFAULT_CLOSURE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForwardError {
    #[error("resource limit: universe has {size} formulas, limit is {limit}")]
    UniverseTooLarge { size: usize, limit: usize },
}

/// The derivable sequents over a universe, each with its minimal height.
pub struct ForwardClosure {
    universe: Universe,
    weight_cap: usize,
    facts: HashMap<Goal, u32>,
}

impl ForwardClosure {
    pub fn universe(&self) -> &[Formula] {
        self.universe.formulas()
    }

    pub fn weight_cap(&self) -> usize {
        self.weight_cap
    }

    fn lookup(&self, s: &Sequent) -> Option<u32> {
        if s.weight() > self.weight_cap {
            return None;
        }
        let g = self.universe.goal_of(s)?;
        self.facts.get(&g).copied()
    }

    pub fn contains(&self, s: &Sequent) -> bool {
        self.lookup(s).is_some()
    }

    /// Round in which `s` first appeared, i.e. its minimal derivation height.
    pub fn min_height(&self, s: &Sequent) -> Option<usize> {
        self.lookup(s).map(|h| h as usize)
    }

    /// Derivable sequents within the weight cap, in canonical order.
    pub fn sequents(&self) -> Vec<Sequent> {
        let mut out: Vec<Sequent> = self
            .facts
            .keys()
            .filter(|g| self.universe.weight(**g) <= self.weight_cap)
            .map(|g| self.universe.sequent_of(*g))
            .collect();
        out.sort();
        out
    }

    pub fn len(&self) -> usize {
        self.facts
            .keys()
            .filter(|g| self.universe.weight(**g) <= self.weight_cap)
            .count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn has(mask: u64, i: Idx) -> bool {
    mask & bit(i) != 0
}

struct Saturation<'a> {
    u: &'a Universe,
    mode: Mode,
    facts: HashMap<Goal, u32>,
    /// Facts by succedent; the last slot holds the empty succedent.
    by_succ: Vec<Vec<Goal>>,
    /// Facts by antecedent member.
    by_member: Vec<Vec<Goal>>,
}

impl Saturation<'_> {
    fn absurd_allowed(&self, succ: Idx) -> bool {
        self.mode == Mode::Tennant || succ != ABSURD
    }

    fn with_succ(&self, s: Idx) -> &[Goal] {
        let slot = if s == ABSURD { self.u.len() } else { s as usize };
        &self.by_succ[slot]
    }

    fn unary(&self, f: Goal, out: &mut Vec<Goal>) {
        let Goal { ant: m, succ: s } = f;
        for p in 0..self.u.len() as Idx {
            match self.u.shape(p) {
                Shape::Atom => {}
                Shape::Neg(a) => {
                    if s == a {
                        out.push(Goal { ant: m | bit(p), succ: ABSURD });
                    }
                    if s == ABSURD && has(m, a) {
                        out.push(Goal { ant: m & !bit(a), succ: p });
                    }
                }
                Shape::And(a, b) => {
                    if self.absurd_allowed(s) && (has(m, a) || has(m, b)) {
                        out.push(Goal {
                            ant: (m & !bit(a) & !bit(b)) | bit(p),
                            succ: s,
                        });
                    }
                }
                Shape::Or(a, b) => {
                    if s == a || s == b {
                        out.push(Goal { ant: m, succ: p });
                    }
                }
                Shape::Imp(a, b) => {
                    if s == ABSURD && has(m, a) {
                        out.push(Goal { ant: m & !bit(a), succ: p });
                    }
                    if s == b {
                        out.push(Goal { ant: m & !bit(a), succ: p });
                    }
                }
            }
        }
    }

    fn and(p: Idx, f1: Goal, f2: Goal, out: &mut Vec<Goal>) {
        out.push(Goal { ant: f1.ant | f2.ant, succ: p });
    }

    fn or(p: Idx, a: Idx, b: Idx, f1: Goal, f2: Goal, out: &mut Vec<Goal>) {
        let succ = match (f1.succ, f2.succ) {
            (ABSURD, ABSURD) => ABSURD,
            (x, ABSURD) | (ABSURD, x) => x,
            (x, y) if x == y => x,
            _ => return,
        };
        for delta in [f1.ant & !bit(a), f1.ant] {
            for gamma in [f2.ant & !bit(b), f2.ant] {
                out.push(Goal { ant: bit(p) | delta | gamma, succ });
            }
        }
    }

    fn imp(&self, p: Idx, b: Idx, f1: Goal, f2: Goal, out: &mut Vec<Goal>) {
        if self.absurd_allowed(f2.succ) {
            for gamma in [f2.ant & !bit(b), f2.ant] {
                out.push(Goal {
                    ant: bit(p) | f1.ant | gamma,
                    succ: f2.succ,
                });
            }
        }
    }

    /// Conclusions of two-premise rules with `f` as one of the premises and
    /// any known fact as the other.
    fn binary(&self, f: Goal, out: &mut Vec<Goal>) {
        for p in 0..self.u.len() as Idx {
            match self.u.shape(p) {
                Shape::And(a, b) => {
                    if f.succ == a {
                        for &g in self.with_succ(b) {
                            Self::and(p, f, g, out);
                        }
                    }
                    if f.succ == b {
                        for &g in self.with_succ(a) {
                            Self::and(p, g, f, out);
                        }
                    }
                }
                Shape::Or(a, b) => {
                    if has(f.ant, a) {
                        for &g in &self.by_member[b as usize] {
                            Self::or(p, a, b, f, g, out);
                        }
                    }
                    if has(f.ant, b) {
                        for &g in &self.by_member[a as usize] {
                            Self::or(p, a, b, g, f, out);
                        }
                    }
                }
                Shape::Imp(a, b) => {
                    if f.succ == a {
                        for &g in &self.by_member[b as usize] {
                            self.imp(p, b, f, g, out);
                        }
                    }
                    if has(f.ant, b) {
                        for &g in self.with_succ(a) {
                            self.imp(p, b, g, f, out);
                        }
                    }
                }
                _ => {}
            }
        }
    }

    fn record(&mut self, g: Goal, round: u32) -> bool {
        if g.ant == 0 && g.succ == ABSURD || self.facts.contains_key(&g) {
            return false;
        }
        self.facts.insert(g, round);
        let slot = if g.succ == ABSURD { self.u.len() } else { g.succ as usize };
        self.by_succ[slot].push(g);
        for i in bits(g.ant) {
            self.by_member[i as usize].push(g);
        }
        true
    }

    fn run(&mut self) {
        let mut frontier = Vec::new();
        for i in 0..self.u.len() as Idx {
            let g = Goal { ant: bit(i), succ: i };
            if self.record(g, 0) {
                frontier.push(g);
            }
        }
        let mut round = 0;
        let mut produced = Vec::new();
        while !frontier.is_empty() {
            round += 1;
            produced.clear();
            for &f in &frontier {
                self.unary(f, &mut produced);
                self.binary(f, &mut produced);
            }
            frontier.clear();
            for &g in &produced {
                if self.record(g, round) {
                    frontier.push(g);
                }
            }
        }
    }
}

/// All sequents derivable from formulas in (the subformula closure of)
/// `universe`, restricted to sequent weight `<= weight_cap`.
///
/// Saturation itself is not weight bounded: a derivation of a light sequent
/// may pass through heavier ones, and all of them stay inside the universe.
pub fn forward_closure(
    universe: &[Formula],
    weight_cap: usize,
    mode: Mode,
) -> Result<ForwardClosure, ForwardError> {
    forward_closure_with_limit(universe, weight_cap, mode, DEFAULT_CLOSURE_LIMIT)
}

pub fn forward_closure_with_limit(
    universe: &[Formula],
    weight_cap: usize,
    mode: Mode,
    limit: usize,
) -> Result<ForwardClosure, ForwardError> {
    let too_large = |size| ForwardError::UniverseTooLarge { size, limit };
    let u = Universe::new(universe).ok_or_else(|| too_large(usize::MAX))?;
    if u.len() > limit {
        return Err(too_large(u.len()));
    }
    let mut sat = Saturation {
        u: &u,
        mode,
        facts: HashMap::new(),
        by_succ: vec![Vec::new(); u.len() + 1],
        by_member: vec![Vec::new(); u.len()],
    };
    sat.run();
    let facts = std::mem::take(&mut sat.facts);
    Ok(ForwardClosure {
        universe: u,
        weight_cap,
        facts,
    })
}
