//! Contraction-free sequent calculus for intuitionistic propositional logic.
//!
//! Formulas are hash-consed into an arena with an explicit falsum, negation
//! is read as `A -> ⊥`, and antecedents are sorted sets of arena ids.

use std::collections::HashMap;

use crate::syntax::{Formula, Sequent, Succedent};

type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Bot,
    Atom(Id),
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
}

#[derive(Default)]
pub(crate) struct Prover {
    nodes: Vec<Node>,
    ids: HashMap<Node, Id>,
    atoms: HashMap<String, Id>,
    memo: HashMap<(Vec<Id>, Id), bool>,
}

impl Prover {
    fn intern(&mut self, n: Node) -> Id {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.ids.insert(n, id);
        id
    }

    fn bot(&mut self) -> Id {
        self.intern(Node::Bot)
    }

    fn lower(&mut self, f: &Formula) -> Id {
        match f {
            Formula::Atom(name) => {
                let next = self.atoms.len() as Id;
                let a = *self.atoms.entry(name.to_string()).or_insert(next);
                self.intern(Node::Atom(a))
            }
            Formula::Neg(a) => {
                let a = self.lower(a);
                let b = self.bot();
                self.intern(Node::Imp(a, b))
            }
            Formula::And(a, b) => {
                let (a, b) = (self.lower(a), self.lower(b));
                self.intern(Node::And(a, b))
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.lower(a), self.lower(b));
                self.intern(Node::Or(a, b))
            }
            Formula::Imp(a, b) => {
                let (a, b) = (self.lower(a), self.lower(b));
                self.intern(Node::Imp(a, b))
            }
        }
    }

    pub fn decide(&mut self, s: &Sequent) -> bool {
        let ant: Vec<Id> = s.antecedent().iter().map(|f| self.lower(f)).collect();
        let goal = match s.succedent() {
            Succedent::Absurd => self.bot(),
            Succedent::Conclusion(f) => self.lower(f),
        };
        self.prove(ant, goal)
    }

    fn prove(&mut self, mut ant: Vec<Id>, goal: Id) -> bool {
        ant.sort_unstable();
        ant.dedup();
        let key = (ant, goal);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = self.search(&key.0, goal);
        self.memo.insert(key, v);
        v
    }

    fn with(ant: &[Id], drop: usize, add: &[Id]) -> Vec<Id> {
        let mut out: Vec<Id> = ant
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, &x)| x)
            .collect();
        out.extend_from_slice(add);
        out
    }

    fn search(&mut self, ant: &[Id], goal: Id) -> bool {
        if ant.contains(&goal) {
            return true;
        }
        // Invertible left rules.
        for (i, &h) in ant.iter().enumerate() {
            match self.nodes[h as usize] {
                Node::Bot => return true,
                Node::And(a, b) => return self.prove(Self::with(ant, i, &[a, b]), goal),
                Node::Or(a, b) => {
                    return self.prove(Self::with(ant, i, &[a]), goal)
                        && self.prove(Self::with(ant, i, &[b]), goal)
                }
                Node::Imp(a, b) => match self.nodes[a as usize] {
                    Node::Bot => return self.prove(Self::with(ant, i, &[]), goal),
                    Node::Atom(_) if ant.contains(&a) => {
                        return self.prove(Self::with(ant, i, &[b]), goal)
                    }
                    Node::And(c, d) => {
                        let db = self.intern(Node::Imp(d, b));
                        let cdb = self.intern(Node::Imp(c, db));
                        return self.prove(Self::with(ant, i, &[cdb]), goal);
                    }
                    Node::Or(c, d) => {
                        let cb = self.intern(Node::Imp(c, b));
                        let db = self.intern(Node::Imp(d, b));
                        return self.prove(Self::with(ant, i, &[cb, db]), goal);
                    }
                    _ => {}
                },
                Node::Atom(_) => {}
            }
        }
        // Invertible right rules.
        match self.nodes[goal as usize] {
            Node::And(a, b) => return self.prove(ant.to_vec(), a) && self.prove(ant.to_vec(), b),
            Node::Imp(a, b) => return self.prove(Self::with(ant, usize::MAX, &[a]), b),
            _ => {}
        }
        // Remaining choices.
        if let Node::Or(a, b) = self.nodes[goal as usize] {
            if self.prove(ant.to_vec(), a) || self.prove(ant.to_vec(), b) {
                return true;
            }
        }
        for (i, &h) in ant.iter().enumerate() {
            if let Node::Imp(cd, b) = self.nodes[h as usize] {
                if let Node::Imp(_, d) = self.nodes[cd as usize] {
                    let db = self.intern(Node::Imp(d, b));
                    if self.prove(Self::with(ant, i, &[db]), cd) && self.prove(Self::with(ant, i, &[b]), goal) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Intuitionistic derivability of `s`; an empty succedent asks whether the
/// antecedent is inconsistent.
pub fn decide_int(s: &Sequent) -> bool {
    Prover::default().decide(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn int(s: &str) -> bool {
        decide_int(&parse_sequent(s).unwrap())
    }

    #[test]
    fn examples() {
        assert!(int("~A, A |- B"));
        assert!(int("|- ~A -> (A -> B)"));
        assert!(!int("|- p | ~p"));
        assert!(int("(p->p), q |- q"));
        assert!(int("~A, A |-"));
        assert!(!int("p |-"));
    }

    #[test]
    fn classical_principles() {
        assert!(!int("|- ~~p -> p"));
        assert!(!int("|- ((p -> q) -> p) -> p"));
        assert!(!int("|- (p -> q) | (q -> p)"));
        assert!(!int("|- ~p | ~~p"));
        assert!(int("|- ~~(p | ~p)"));
        assert!(int("|- ~~~p -> ~p"));
        assert!(int("|- (p -> q) -> ~q -> ~p"));
        assert!(int("p | q, p -> r, q -> r |- r"));
    }
}
