//! Propositional formulas over atoms with `~`, `&`, `|` and `->`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A propositional formula.
///
/// Children are reference counted so formulas can be shared freely between
/// sequents and across threads.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Atom(Arc<str>),
    Neg(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
}

/// Binding strength used by the printer, loosest first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) enum Prec {
    Imp,
    Or,
    And,
    Neg,
    Atom,
}

impl Formula {
    pub fn atom(name: impl AsRef<str>) -> Formula {
        Formula::Atom(Arc::from(name.as_ref()))
    }

    pub fn neg(sub: Formula) -> Formula {
        Formula::Neg(Arc::new(sub))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Arc::new(left), Arc::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Arc::new(left), Arc::new(right))
    }

    pub fn imp(left: Formula, right: Formula) -> Formula {
        Formula::Imp(Arc::new(left), Arc::new(right))
    }

    /// Number of nodes in the syntax tree.
    pub fn weight(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(a) => 1 + a.weight(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.weight() + b.weight()
            }
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => vec![],
            Formula::Neg(a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => vec![a, b],
        }
    }

    /// All subformulas including `self`, deduplicated.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    pub(crate) fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.contains(self) {
            return;
        }
        for c in self.children() {
            c.collect_subformulas(out);
        }
        out.insert(self.clone());
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            _ => {
                for c in self.children() {
                    c.collect_atoms(out);
                }
            }
        }
    }

    pub(crate) fn prec(&self) -> Prec {
        match self {
            Formula::Atom(_) => Prec::Atom,
            Formula::Neg(_) => Prec::Neg,
            Formula::And(..) => Prec::And,
            Formula::Or(..) => Prec::Or,
            Formula::Imp(..) => Prec::Imp,
        }
    }

    fn write_at(&self, out: &mut String, min: Prec) {
        let parens = self.prec() < min;
        if parens {
            out.push('(');
        }
        match self {
            Formula::Atom(name) => out.push_str(name),
            Formula::Neg(a) => {
                out.push('~');
                a.write_at(out, Prec::Neg);
            }
            // `&` and `|` associate to the left, `->` to the right.
            Formula::And(a, b) => {
                a.write_at(out, Prec::And);
                out.push_str(" & ");
                b.write_at(out, Prec::Neg);
            }
            Formula::Or(a, b) => {
                a.write_at(out, Prec::Or);
                out.push_str(" | ");
                b.write_at(out, Prec::And);
            }
            Formula::Imp(a, b) => {
                a.write_at(out, Prec::Or);
                out.push_str(" -> ");
                b.write_at(out, Prec::Imp);
            }
        }
        if parens {
            out.push(')');
        }
    }

    /// Canonical ASCII rendering with minimal parentheses.
    pub fn print(&self) -> String {
        let mut out = String::new();
        self.write_at(&mut out, Prec::Imp);
        out
    }
}

pub fn print_formula(f: &Formula) -> String {
    f.print()
}

pub fn weight(f: &Formula) -> usize {
    f.weight()
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

/// Canonical order: lighter formulas first, then by printed form.
impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.print().cmp(&other.print()))
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn prints_with_minimal_parens() {
        assert_eq!(Formula::imp(Formula::neg(p()), q()).print(), "~p -> q");
        assert_eq!(Formula::and(p(), Formula::or(q(), r())).print(), "p & (q | r)");
        assert_eq!(
            Formula::imp(Formula::imp(p(), q()), r()).print(),
            "(p -> q) -> r"
        );
        assert_eq!(
            Formula::imp(p(), Formula::imp(q(), r())).print(),
            "p -> q -> r"
        );
        assert_eq!(Formula::neg(Formula::neg(p())).print(), "~~p");
        assert_eq!(Formula::neg(Formula::and(p(), q())).print(), "~(p & q)");
        assert_eq!(
            Formula::and(p(), Formula::and(q(), r())).print(),
            "p & (q & r)"
        );
        assert_eq!(Formula::and(Formula::and(p(), q()), r()).print(), "p & q & r");
    }

    #[test]
    fn weights() {
        assert_eq!(p().weight(), 1);
        let f = Formula::imp(Formula::neg(p()), Formula::imp(p(), q()));
        assert_eq!(f.weight(), 6);
    }

    #[test]
    fn canonical_order_is_weight_first() {
        let a = Formula::atom("A");
        let na = Formula::neg(a.clone());
        assert!(a < na);
        assert!(Formula::atom("a") > Formula::atom("B"));
        assert_eq!(p().cmp(&p()), Ordering::Equal);
    }

    #[test]
    fn subformulas_are_deduplicated() {
        let f = Formula::imp(p(), p());
        assert_eq!(f.subformulas().len(), 2);
        assert_eq!(f.atoms().len(), 1);
    }
}
