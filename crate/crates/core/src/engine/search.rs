//! Backward proof search over the finite goal space of one query.
//!
//! Every premise of every rule instance is built from subformulas of its
//! conclusion, so the goals reachable from a query are finite. Because the
//! principal formula of a left rule may stay in the premise contexts, the
//! goal graph can have cycles; provability is therefore computed as a least
//! fixpoint, one height level at a time. Round `h` marks every goal that has
//! a rule instance whose premises were all marked in earlier rounds, so a
//! goal's round is exactly its minimal derivation height.

use std::collections::HashMap;

use super::trie::SubsetTrie;
use super::universe::{bit, bits, submasks, Goal, Idx, Shape, Universe, ABSURD};
use crate::kernel::{Derivation, Mode, RuleName};
use crate::syntax::Sequent;

const UNKNOWN: u32 = u32::MAX;
const DENSE_LIMIT: usize = 16;

/// One premise position of a two-premise rule: the goal `({extra} ∪ X, succ)`
/// for a context `X` drawn from the conclusion antecedent.
#[derive(Clone, Copy, Debug)]
struct Side {
    extra: Option<Idx>,
    succ: Idx,
}

impl Side {
    fn goal(self, ctx: u64) -> Goal {
        Goal {
            ant: ctx | self.extra.map_or(0, bit),
            succ: self.succ,
        }
    }

    /// The largest context `X ⊆ within` with `self.goal(X) == g`, if any.
    fn context_of(self, g: Goal, within: u64) -> Option<u64> {
        if g.succ != self.succ {
            return None;
        }
        let allowed = within | self.extra.map_or(0, bit);
        if g.ant & !allowed != 0 {
            return None;
        }
        if let Some(e) = self.extra {
            if g.ant & bit(e) == 0 {
                return None;
            }
        }
        Some(g.ant & within)
    }
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Axiom,
    Unary(RuleName, Goal),
    /// Premises `left.goal(X)` and `right.goal(Y)` for `X, Y ⊆ ant` with
    /// `X ∪ Y ⊇ required`.
    Binary {
        rule: RuleName,
        left: Side,
        right: Side,
        required: u64,
    },
}

/// Every backward rule instance for `g`, as steps.
fn steps(u: &Universe, mode: Mode, g: Goal, mut emit: impl FnMut(Step)) {
    let q = g.ant;
    let absurd = g.succ == ABSURD;

    if !absurd && q == bit(g.succ) {
        emit(Step::Axiom);
    }

    for p in bits(q) {
        match u.shape(p) {
            Shape::Atom => {}
            Shape::Neg(a) => {
                if absurd {
                    for ctx in [q & !bit(p), q] {
                        emit(Step::Unary(RuleName::LNeg, Goal { ant: ctx, succ: a }));
                    }
                }
            }
            Shape::And(a, b) => {
                let parts = bit(a) | bit(b);
                if (mode == Mode::Tennant || !absurd) && q & parts == 0 {
                    for ctx in [q & !bit(p), q] {
                        for pick in [bit(a), bit(b), parts] {
                            emit(Step::Unary(RuleName::LAnd, Goal { ant: ctx | pick, succ: g.succ }));
                        }
                    }
                }
            }
            Shape::Or(a, b) => {
                let required = q & !bit(p);
                let combos: &[(Idx, Idx)] = if absurd {
                    &[(ABSURD, ABSURD)]
                } else {
                    &[(g.succ, g.succ), (g.succ, ABSURD), (ABSURD, g.succ)]
                };
                for &(s1, s2) in combos {
                    emit(Step::Binary {
                        rule: RuleName::LOr,
                        left: Side { extra: Some(a), succ: s1 },
                        right: Side { extra: Some(b), succ: s2 },
                        required,
                    });
                }
            }
            Shape::Imp(a, b) => {
                if mode == Mode::Tennant || !absurd {
                    emit(Step::Binary {
                        rule: RuleName::LImp,
                        left: Side { extra: None, succ: a },
                        right: Side { extra: Some(b), succ: g.succ },
                        required: q & !bit(p),
                    });
                }
            }
        }
    }

    if absurd {
        return;
    }
    match u.shape(g.succ) {
        Shape::Atom => {}
        Shape::Neg(a) => {
            if q & bit(a) == 0 {
                emit(Step::Unary(RuleName::RNeg, Goal { ant: q | bit(a), succ: ABSURD }));
            }
        }
        Shape::And(a, b) => emit(Step::Binary {
            rule: RuleName::RAnd,
            left: Side { extra: None, succ: a },
            right: Side { extra: None, succ: b },
            required: q,
        }),
        Shape::Or(a, b) => {
            emit(Step::Unary(RuleName::ROr1, Goal { ant: q, succ: a }));
            emit(Step::Unary(RuleName::ROr2, Goal { ant: q, succ: b }));
        }
        Shape::Imp(a, b) => {
            if q & bit(a) == 0 {
                emit(Step::Unary(RuleName::RImpA, Goal { ant: q | bit(a), succ: ABSURD }));
                for ctx in [q, q | bit(a)] {
                    emit(Step::Unary(RuleName::RImpB, Goal { ant: ctx, succ: b }));
                }
            }
        }
    }
}

enum Table {
    Dense { slots: Vec<u32>, width: usize },
    Sparse(HashMap<Goal, u32>),
}

impl Table {
    fn new(n: usize) -> Table {
        if n <= DENSE_LIMIT {
            let width = n + 1;
            Table::Dense {
                slots: vec![UNKNOWN; (1usize << n) * width],
                width,
            }
        } else {
            Table::Sparse(HashMap::new())
        }
    }

    fn slot(width: usize, g: Goal) -> usize {
        let s = if g.succ == ABSURD { width - 1 } else { g.succ as usize };
        g.ant as usize * width + s
    }

    fn get(&self, g: Goal) -> Option<u32> {
        match self {
            Table::Dense { slots, width } => {
                let v = slots[Table::slot(*width, g)];
                (v != UNKNOWN).then_some(v)
            }
            Table::Sparse(map) => map.get(&g).copied(),
        }
    }

    fn insert(&mut self, g: Goal, id: u32) {
        match self {
            Table::Dense { slots, width } => slots[Table::slot(*width, g)] = id,
            Table::Sparse(map) => {
                map.insert(g, id);
            }
        }
    }
}

/// Counters describing one exhaustive search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Counters {
    pub goals_expanded: u64,
    pub distinct_goals: u64,
    pub max_weight_seen: usize,
}

pub(crate) struct Search<'u> {
    u: &'u Universe,
    mode: Mode,
    goals: Vec<Goal>,
    table: Table,
    height: Vec<u32>,
    /// Proved goals grouped by succedent slot (`n` is the empty succedent).
    proved: Vec<Vec<(u64, u32)>>,
    /// Trie id per side key `(extra, succ)`, `NO_KEY` if no step uses it.
    keys: Vec<u32>,
    /// Side keys per succedent slot.
    slot_keys: Vec<Vec<(Option<Idx>, u32)>>,
    /// For each side key, the proved antecedents minus the extra formula.
    tries: Vec<SubsetTrie>,
    counters: Counters,
}

const NO_KEY: u32 = u32::MAX;

/// A binary step resolved to side keys.
struct Pair {
    left: u32,
    right: u32,
    left_extra: u64,
    right_extra: u64,
    required: u64,
}

/// Flattened per-goal rule instances, indexed by goal id.
#[derive(Default)]
struct Plans {
    unary_start: Vec<u32>,
    unary: Vec<u32>,
    binary_start: Vec<u32>,
    binary: Vec<Pair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CapExceeded {
    pub distinct_goals: u64,
}

impl<'u> Search<'u> {
    /// Explores everything reachable from `root` and solves it.
    pub fn run(u: &'u Universe, mode: Mode, root: Goal, cap: usize) -> Result<Search<'u>, CapExceeded> {
        let mut s = Search {
            u,
            mode,
            goals: Vec::new(),
            table: Table::new(u.len()),
            height: Vec::new(),
            proved: vec![Vec::new(); u.len() + 1],
            keys: vec![NO_KEY; (u.len() + 1) * (u.len() + 1)],
            slot_keys: vec![Vec::new(); u.len() + 1],
            tries: Vec::new(),
            counters: Counters::default(),
        };
        s.explore(root, cap)?;
        s.solve();
        Ok(s)
    }

    fn succ_slot(&self, succ: Idx) -> usize {
        if succ == ABSURD {
            self.u.len()
        } else {
            succ as usize
        }
    }

    fn key_index(&self, side: Side) -> usize {
        let n = self.u.len() + 1;
        side.extra.map_or(0, |e| e as usize + 1) * n + self.succ_slot(side.succ)
    }

    fn key(&self, side: Side) -> usize {
        self.keys[self.key_index(side)] as usize
    }

    fn add_key(&mut self, side: Side) {
        let i = self.key_index(side);
        if self.keys[i] == NO_KEY {
            let id = self.tries.len() as u32;
            self.keys[i] = id;
            self.tries.push(SubsetTrie::default());
            let slot = self.succ_slot(side.succ);
            self.slot_keys[slot].push((side.extra, id));
        }
    }

    fn intern(&mut self, g: Goal) -> bool {
        self.counters.goals_expanded += 1;
        if self.table.get(g).is_some() {
            return false;
        }
        let id = self.goals.len() as u32;
        self.goals.push(g);
        self.height.push(UNKNOWN);
        self.table.insert(g, id);
        self.counters.max_weight_seen = self.counters.max_weight_seen.max(self.u.weight(g));
        true
    }

    fn explore(&mut self, root: Goal, cap: usize) -> Result<(), CapExceeded> {
        self.intern(root);
        // Antecedents whose submasks were already enumerated, per side.
        let mut covered: HashMap<(Option<Idx>, Idx), Vec<u64>> = HashMap::new();
        let mut next = 0;
        let mut pending = Vec::new();
        let mut sides = Vec::new();
        while next < self.goals.len() {
            let g = self.goals[next];
            next += 1;
            pending.clear();
            sides.clear();
            steps(self.u, self.mode, g, |step| match step {
                Step::Axiom => {}
                Step::Unary(_, premise) => pending.push(premise),
                Step::Binary { left, right, .. } => sides.extend([left, right]),
            });
            for &side in &sides {
                self.add_key(side);
                let masks = covered.entry((side.extra, side.succ)).or_default();
                if masks.iter().any(|&m| g.ant & !m == 0) {
                    continue;
                }
                masks.retain(|&m| m & !g.ant != 0);
                masks.push(g.ant);
                pending.extend(submasks(g.ant).map(|ctx| side.goal(ctx)));
            }
            for &premise in &pending {
                self.intern(premise);
            }
            if self.goals.len() > cap {
                return Err(CapExceeded {
                    distinct_goals: self.goals.len() as u64,
                });
            }
        }
        self.counters.distinct_goals = self.goals.len() as u64;
        Ok(())
    }

    fn height_of(&self, g: Goal) -> u32 {
        let id = self.table.get(g).expect("premise goals are explored");
        self.height[id as usize]
    }

    /// Contexts of proved goals usable on `side`, with their heights.
    fn side_candidates(&self, side: Side, within: u64) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.proved[self.succ_slot(side.succ)]
            .iter()
            .filter_map(move |&(ant, h)| {
                side.context_of(Goal { ant, succ: side.succ }, within)
                    .map(|ctx| (ctx, h))
            })
    }

    /// The rule instances of every explored goal, with premises resolved to
    /// goal ids and side keys.
    fn plans(&self) -> Plans {
        let mut plans = Plans {
            unary_start: vec![0],
            binary_start: vec![0],
            ..Plans::default()
        };
        for &g in &self.goals {
            steps(self.u, self.mode, g, |step| match step {
                Step::Axiom => {}
                Step::Unary(_, p) => plans.unary.push(self.table.get(p).expect("premise goals are explored")),
                Step::Binary {
                    left,
                    right,
                    required,
                    ..
                } => plans.binary.push(Pair {
                    left: self.key(left) as u32,
                    right: self.key(right) as u32,
                    left_extra: left.extra.map_or(0, bit),
                    right_extra: right.extra.map_or(0, bit),
                    required,
                }),
            });
            plans.unary_start.push(plans.unary.len() as u32);
            plans.binary_start.push(plans.binary.len() as u32);
        }
        plans
    }

    /// Whether goal `id` has an instance using a premise proved at `level - 1`
    /// whose premises all have height `< level`.
    fn derivable_at(&self, plans: &Plans, id: usize, level: u32, fresh: &[SubsetTrie]) -> bool {
        let q = self.goals[id].ant;
        let unary = &plans.unary[plans.unary_start[id] as usize..plans.unary_start[id + 1] as usize];
        if unary.iter().any(|&p| self.height[p as usize] < level) {
            return true;
        }
        let binary = &plans.binary[plans.binary_start[id] as usize..plans.binary_start[id + 1] as usize];
        binary.iter().any(|pair| {
            let (l, r) = (pair.left as usize, pair.right as usize);
            if !fresh[l].any_between(0, q) && !fresh[r].any_between(0, q) {
                return false;
            }
            let (mut small, mut small_extra, mut large, mut large_extra) = (l, pair.left_extra, r, pair.right_extra);
            if self.tries[large].len() < self.tries[small].len() {
                (small, small_extra, large, large_extra) = (large, large_extra, small, small_extra);
            }
            if !self.tries[large].any_between(0, q) {
                return false;
            }
            let mut seen = Vec::new();
            self.tries[small].any_subset_of(q, &mut |b| {
                let x = (b | small_extra) & pair.required;
                if seen.contains(&x) {
                    return false;
                }
                seen.push(x);
                self.tries[large].any_between(pair.required & !x & !large_extra, q)
            })
        })
    }

    fn solve(&mut self) {
        let plans = self.plans();
        let mut open: Vec<u32> = (0..self.goals.len() as u32).collect();
        let mut fresh: Vec<SubsetTrie> = vec![SubsetTrie::default(); self.tries.len()];
        let mut level = 0u32;
        loop {
            let mut done = Vec::new();
            open.retain(|&id| {
                let g = self.goals[id as usize];
                let hit = if level == 0 {
                    g.succ != ABSURD && g.ant == bit(g.succ)
                } else {
                    self.derivable_at(&plans, id as usize, level, &fresh)
                };
                if hit {
                    done.push(id);
                }
                !hit
            });
            if done.is_empty() {
                break;
            }
            fresh.iter_mut().for_each(SubsetTrie::clear);
            for id in done {
                let g = self.goals[id as usize];
                self.height[id as usize] = level;
                let slot = self.succ_slot(g.succ);
                self.proved[slot].push((g.ant, level));
                for &(extra, key) in &self.slot_keys[slot] {
                    let b = match extra {
                        None => g.ant,
                        Some(e) if g.ant & bit(e) != 0 => g.ant & !bit(e),
                        Some(_) => continue,
                    };
                    self.tries[key as usize].insert(b);
                    fresh[key as usize].insert(b);
                }
            }
            level += 1;
        }
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    pub fn min_height(&self, g: Goal) -> Option<u32> {
        self.table
            .get(g)
            .map(|id| self.height[id as usize])
            .filter(|&h| h != UNKNOWN)
    }

    /// A minimal-height derivation of a proved goal. Among the instances
    /// achieving the minimum, the one with the earliest rule name wins, then
    /// the one whose premises come first in canonical sequent order.
    pub fn derivation(&self, g: Goal) -> Option<Derivation> {
        let h = self.min_height(g)?;
        let conclusion = self.u.sequent_of(g);
        if h == 0 {
            return Some(Derivation::axiom(conclusion));
        }
        let mut best: Option<(RuleName, Vec<Sequent>, Vec<Goal>)> = None;
        let mut offer = |rule: RuleName, premises: Vec<Goal>| {
            let seqs: Vec<Sequent> = premises.iter().map(|&p| self.u.sequent_of(p)).collect();
            let better = match &best {
                None => true,
                Some((r, s, _)) => (rule, &seqs) < (*r, s),
            };
            if better {
                best = Some((rule, seqs, premises));
            }
        };
        steps(self.u, self.mode, g, |step| match step {
            Step::Axiom => {}
            Step::Unary(rule, p) => {
                if self.height_of(p) < h {
                    offer(rule, vec![p]);
                }
            }
            Step::Binary {
                rule,
                left,
                right,
                required,
            } => {
                let rights: Vec<(u64, u32)> = self.side_candidates(right, g.ant).filter(|&(_, x)| x < h).collect();
                let lefts: Vec<(u64, u32)> = self.side_candidates(left, g.ant).filter(|&(_, x)| x < h).collect();
                for &(x, _) in &lefts {
                    for &(y, _) in &rights {
                        if (x | y) & required == required {
                            offer(rule, vec![left.goal(x), right.goal(y)]);
                        }
                    }
                }
            }
        });
        let (rule, _, premises) = best.expect("a proved goal has a witnessing instance");
        let premises = premises
            .into_iter()
            .map(|p| self.derivation(p).expect("premises of a proved goal are proved"))
            .collect();
        Some(Derivation::new(conclusion, rule, premises))
    }
}
