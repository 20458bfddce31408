//! Indexing of a finite, subformula-closed set of formulas so that
//! antecedents become bitmasks.

use std::collections::{BTreeSet, HashMap};

use crate::syntax::{Formula, Sequent, Succedent};

/// Largest universe a bitmask antecedent can index.
pub const MAX_UNIVERSE: usize = 64;

/// Index of a formula inside a [`Universe`].
pub(crate) type Idx = u8;

/// Succedent code for the empty succedent.
pub(crate) const ABSURD: Idx = Idx::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    Atom,
    Neg(Idx),
    And(Idx, Idx),
    Or(Idx, Idx),
    Imp(Idx, Idx),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Goal {
    pub ant: u64,
    pub succ: Idx,
}

#[derive(Debug)]
pub(crate) struct Universe {
    formulas: Vec<Formula>,
    shapes: Vec<Shape>,
    weights: Vec<usize>,
    index: HashMap<Formula, Idx>,
}

impl Universe {
    /// Closes `roots` under subformulas and indexes the result in canonical
    /// order. `None` if more than [`MAX_UNIVERSE`] formulas result.
    pub fn new<'a>(roots: impl IntoIterator<Item = &'a Formula>) -> Option<Universe> {
        let mut all = BTreeSet::new();
        for f in roots {
            f.collect_subformulas(&mut all);
        }
        if all.len() > MAX_UNIVERSE {
            return None;
        }
        let formulas: Vec<Formula> = all.into_iter().collect();
        let index: HashMap<Formula, Idx> = formulas
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i as Idx))
            .collect();
        let shapes = formulas
            .iter()
            .map(|f| match f {
                Formula::Atom(_) => Shape::Atom,
                Formula::Neg(a) => Shape::Neg(index[a.as_ref()]),
                Formula::And(a, b) => Shape::And(index[a.as_ref()], index[b.as_ref()]),
                Formula::Or(a, b) => Shape::Or(index[a.as_ref()], index[b.as_ref()]),
                Formula::Imp(a, b) => Shape::Imp(index[a.as_ref()], index[b.as_ref()]),
            })
            .collect();
        let weights = formulas.iter().map(Formula::weight).collect();
        Some(Universe {
            formulas,
            shapes,
            weights,
            index,
        })
    }

    pub fn for_sequent(s: &Sequent) -> Option<Universe> {
        Universe::new(s.antecedent().iter().chain(s.succedent().formula()))
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn shape(&self, i: Idx) -> Shape {
        self.shapes[i as usize]
    }

    pub fn index_of(&self, f: &Formula) -> Option<Idx> {
        self.index.get(f).copied()
    }

    pub fn goal_of(&self, s: &Sequent) -> Option<Goal> {
        let mut ant = 0u64;
        for f in s.antecedent() {
            ant |= 1 << self.index_of(f)?;
        }
        let succ = match s.succedent() {
            Succedent::Absurd => ABSURD,
            Succedent::Conclusion(f) => self.index_of(f)?,
        };
        Some(Goal { ant, succ })
    }

    pub fn sequent_of(&self, g: Goal) -> Sequent {
        let ant = bits(g.ant).map(|i| self.formulas[i as usize].clone());
        let succ = if g.succ == ABSURD {
            Succedent::Absurd
        } else {
            Succedent::Conclusion(self.formulas[g.succ as usize].clone())
        };
        Sequent::new(ant, succ)
    }

    pub fn weight(&self, g: Goal) -> usize {
        let succ = if g.succ == ABSURD { 0 } else { self.weights[g.succ as usize] };
        bits(g.ant).map(|i| self.weights[i as usize]).sum::<usize>() + succ
    }
}

/// Indices of the set bits, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = Idx> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros();
            mask &= mask - 1;
            Some(i as Idx)
        }
    })
}

/// All submasks of `mask`, including `mask` itself and `0`.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

pub(crate) fn bit(i: Idx) -> u64 {
    1u64 << i
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    #[test]
    fn round_trips_sequents() {
        let s = parse_sequent("~A -> (A -> B), ~A, A |- B").unwrap();
        let u = Universe::for_sequent(&s).unwrap();
        assert_eq!(u.len(), 5);
        let g = u.goal_of(&s).unwrap();
        assert_eq!(u.sequent_of(g), s);
        assert_eq!(u.weight(g), s.weight());
    }

    #[test]
    fn submask_enumeration() {
        let all: Vec<u64> = submasks(0b101).collect();
        assert_eq!(all, vec![0b101, 0b100, 0b001, 0]);
        assert_eq!(submasks(0).count(), 1);
        assert_eq!(bits(0b1010).collect::<Vec<_>>(), vec![1, 3]);
    }
}
