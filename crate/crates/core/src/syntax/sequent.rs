use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use super::formula::Formula;

/// Right-hand side of a sequent: a formula, or nothing at all.
///
/// `Absurd` is the empty succedent. It registers that the antecedent is
/// contradictory and is never a subformula of anything.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Succedent {
    Absurd,
    Conclusion(Formula),
}

impl Succedent {
    pub fn formula(&self) -> Option<&Formula> {
        match self {
            Succedent::Conclusion(f) => Some(f),
            Succedent::Absurd => None,
        }
    }

    pub fn is_absurd(&self) -> bool {
        matches!(self, Succedent::Absurd)
    }

    pub fn weight(&self) -> usize {
        self.formula().map_or(0, Formula::weight)
    }
}

impl From<Formula> for Succedent {
    fn from(f: Formula) -> Self {
        Succedent::Conclusion(f)
    }
}

/// A judgment `Δ ⊢ S` with `Δ` a finite set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sequent {
    antecedent: BTreeSet<Formula>,
    succedent: Succedent,
}

impl Sequent {
    pub fn new(antecedent: impl IntoIterator<Item = Formula>, succedent: Succedent) -> Sequent {
        Sequent {
            antecedent: antecedent.into_iter().collect(),
            succedent,
        }
    }

    pub fn proves(antecedent: impl IntoIterator<Item = Formula>, conclusion: Formula) -> Sequent {
        Sequent::new(antecedent, Succedent::Conclusion(conclusion))
    }

    pub fn absurd(antecedent: impl IntoIterator<Item = Formula>) -> Sequent {
        Sequent::new(antecedent, Succedent::Absurd)
    }

    pub fn antecedent(&self) -> &BTreeSet<Formula> {
        &self.antecedent
    }

    pub fn succedent(&self) -> &Succedent {
        &self.succedent
    }

    /// `|-` with nothing on either side. Not a judgment of the calculus.
    pub fn is_empty_judgment(&self) -> bool {
        self.antecedent.is_empty() && self.succedent.is_absurd()
    }

    /// Same succedent, antecedent extended by `f`.
    pub fn with_antecedent(&self, f: Formula) -> Sequent {
        let mut out = self.clone();
        out.antecedent.insert(f);
        out
    }

    pub fn weight(&self) -> usize {
        self.antecedent.iter().map(Formula::weight).sum::<usize>() + self.succedent.weight()
    }

    /// Every subformula of every formula in the sequent.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        for f in self.antecedent.iter().chain(self.succedent.formula()) {
            f.collect_subformulas(&mut out);
        }
        out
    }

    pub fn print(&self) -> String {
        let mut out = String::new();
        for (i, f) in self.antecedent.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&f.print());
        }
        if !self.antecedent.is_empty() {
            out.push(' ');
        }
        out.push_str("|-");
        if let Succedent::Conclusion(f) = &self.succedent {
            out.push(' ');
            out.push_str(&f.print());
        }
        out
    }
}

pub fn print_sequent(s: &Sequent) -> String {
    s.print()
}

pub fn sequent_weight(s: &Sequent) -> usize {
    s.weight()
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

/// Lighter sequents first, then by printed form.
impl Ord for Sequent {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.print().cmp(&other.print()))
    }
}

impl PartialOrd for Sequent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
