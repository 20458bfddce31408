//! The trusted checker. Every rule instance is matched against its schema
//! directly; nothing here calls into proof search.
//!
//! Antecedents are sets, so `A, Δ` is `{A} ∪ Δ` and `Δ` may already contain
//! `A`. For left rules this means the principal formula may also sit in a
//! premise context. The one-sided discharges (`RNeg`, `RImpA`, `RImpB`)
//! remove the discharged formula from the conclusion.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::derivation::Derivation;
use super::rules::{Mode, RuleLabel, RuleName};
use crate::syntax::{Formula, Sequent, Succedent};

/// Identifies which part of a schema an instance failed.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    UnknownRule,
    Arity,
    AxSingleton,
    AxMatch,
    SuccedentForm,
    PrincipalMissing,
    MinorMissing,
    Discharge,
    LAndSideCondition,
    LOrSuccedents,
    StrictTableAbsurd,
    ContextMismatch,
}

impl Clause {
    pub fn id(self) -> &'static str {
        match self {
            Clause::UnknownRule => "unknown-rule",
            Clause::Arity => "arity",
            Clause::AxSingleton => "ax-singleton",
            Clause::AxMatch => "ax-match",
            Clause::SuccedentForm => "succedent-form",
            Clause::PrincipalMissing => "principal-missing",
            Clause::MinorMissing => "minor-missing",
            Clause::Discharge => "discharge",
            Clause::LAndSideCondition => "land-side-condition",
            Clause::LOrSuccedents => "lor-succedents",
            Clause::StrictTableAbsurd => "strict-table-absurd",
            Clause::ContextMismatch => "context-mismatch",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub rule: String,
    pub clause: Clause,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.rule, self.clause.id(), self.detail)
    }
}

/// A violation located in a derivation tree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TreeViolation {
    /// Premise indices from the root; empty means the root itself.
    pub path: Vec<usize>,
    pub conclusion: String,
    pub violation: Violation,
}

impl TreeViolation {
    pub fn location(&self) -> String {
        if self.path.is_empty() {
            "root".to_string()
        } else {
            let parts: Vec<String> = self.path.iter().map(usize::to_string).collect();
            format!("path {}", parts.join("."))
        }
    }
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violation.clause == Clause::UnknownRule {
            write!(f, "unknown rule {} at {}", self.violation.rule, self.location())
        } else {
            write!(f, "{} at {} (`{}`)", self.violation, self.location(), self.conclusion)
        }
    }
}

type Ant = BTreeSet<Formula>;

fn union(a: &Ant, b: &Ant) -> Ant {
    a.union(b).cloned().collect()
}

fn insert(a: &Ant, f: &Formula) -> Ant {
    let mut out = a.clone();
    out.insert(f.clone());
    out
}

fn remove(a: &Ant, f: &Formula) -> Ant {
    let mut out = a.clone();
    out.remove(f);
    out
}

/// `a \ {f}` and, when `f ∈ a`, also `a` itself: the two contexts `Δ` with
/// `{f} ∪ Δ = a`.
fn contexts_without(a: &Ant, f: &Formula) -> Vec<Ant> {
    let mut out = vec![remove(a, f)];
    if a.contains(f) {
        out.push(a.clone());
    }
    out
}

fn print_set(a: &Ant) -> String {
    let parts: Vec<String> = a.iter().map(Formula::print).collect();
    format!("{{{}}}", parts.join(", "))
}

struct Ctx<'a> {
    rule: RuleName,
    conclusion: &'a Sequent,
    premises: &'a [&'a Sequent],
    mode: Mode,
}

impl Ctx<'_> {
    fn fail(&self, clause: Clause, detail: impl Into<String>) -> Violation {
        Violation {
            rule: self.rule.to_string(),
            clause,
            detail: detail.into(),
        }
    }

    fn ant(&self) -> &Ant {
        self.conclusion.antecedent()
    }

    fn succ(&self) -> &Succedent {
        self.conclusion.succedent()
    }

    fn expect_context(&self, expected: &Ant) -> Result<(), Violation> {
        if self.ant() == expected {
            Ok(())
        } else {
            Err(self.fail(
                Clause::ContextMismatch,
                format!(
                    "conclusion antecedent {} should be {}",
                    print_set(self.ant()),
                    print_set(expected)
                ),
            ))
        }
    }

    fn formula_succ(&self) -> Result<&Formula, Violation> {
        self.succ()
            .formula()
            .ok_or_else(|| self.fail(Clause::SuccedentForm, "conclusion needs a formula succedent"))
    }

    fn premise_formula<'b>(&self, p: &'b Sequent, which: &str) -> Result<&'b Formula, Violation> {
        p.succedent().formula().ok_or_else(|| {
            self.fail(
                Clause::SuccedentForm,
                format!("{which} premise needs a formula succedent"),
            )
        })
    }

    fn premise_absurd(&self, p: &Sequent) -> Result<(), Violation> {
        if p.succedent().is_absurd() {
            Ok(())
        } else {
            Err(self.fail(Clause::SuccedentForm, "premise needs an empty succedent"))
        }
    }

    fn no_strict_absurd(&self) -> Result<(), Violation> {
        if self.mode == Mode::StrictTable && self.succ().is_absurd() {
            Err(self.fail(
                Clause::StrictTableAbsurd,
                "strict-table mode: conclusion succedent must be a formula",
            ))
        } else {
            Ok(())
        }
    }

    /// Tries each candidate principal; succeeds if one fits, otherwise
    /// reports the first candidate's failure.
    fn any_principal<'f>(
        &self,
        candidates: impl Iterator<Item = &'f Formula>,
        missing: &str,
        mut attempt: impl FnMut(&'f Formula) -> Result<(), Violation>,
    ) -> Result<(), Violation> {
        let mut first = None;
        for p in candidates {
            match attempt(p) {
                Ok(()) => return Ok(()),
                Err(v) => {
                    first.get_or_insert(v);
                }
            }
        }
        Err(first.unwrap_or_else(|| self.fail(Clause::PrincipalMissing, missing.to_string())))
    }

    fn check(&self) -> Result<(), Violation> {
        let expected = self.rule.arity();
        if self.premises.len() != expected {
            return Err(self.fail(
                Clause::Arity,
                format!("expects {expected} premise(s), found {}", self.premises.len()),
            ));
        }
        match self.rule {
            RuleName::Ax => self.ax(),
            RuleName::LNeg => self.lneg(),
            RuleName::RNeg => self.rneg(),
            RuleName::LAnd => self.land(),
            RuleName::RAnd => self.rand(),
            RuleName::LOr => self.lor(),
            RuleName::ROr1 | RuleName::ROr2 => self.ror(),
            RuleName::LImp => self.limp(),
            RuleName::RImpA => self.rimpa(),
            RuleName::RImpB => self.rimpb(),
        }
    }

    fn ax(&self) -> Result<(), Violation> {
        if self.ant().len() != 1 {
            return Err(self.fail(Clause::AxSingleton, "Ax requires singleton antecedent"));
        }
        let only = self.ant().iter().next().expect("singleton");
        if self.succ().formula() != Some(only) {
            return Err(self.fail(
                Clause::AxMatch,
                "Ax requires the succedent to equal the antecedent formula",
            ));
        }
        Ok(())
    }

    fn lneg(&self) -> Result<(), Violation> {
        let p = self.premises[0];
        if !self.succ().is_absurd() {
            return Err(self.fail(Clause::SuccedentForm, "LNeg concludes an empty succedent"));
        }
        let a = self.premise_formula(p, "LNeg")?;
        let principal = Formula::neg(a.clone());
        if !self.ant().contains(&principal) {
            return Err(self.fail(
                Clause::PrincipalMissing,
                format!("conclusion must contain {principal}"),
            ));
        }
        self.expect_context(&insert(p.antecedent(), &principal))
    }

    fn rneg(&self) -> Result<(), Violation> {
        let p = self.premises[0];
        let Formula::Neg(a) = self.formula_succ()? else {
            return Err(self.fail(Clause::SuccedentForm, "RNeg concludes a negation"));
        };
        self.premise_absurd(p)?;
        if !p.antecedent().contains(a.as_ref()) {
            return Err(self.fail(Clause::Discharge, format!("premise must contain {a}")));
        }
        self.expect_context(&remove(p.antecedent(), a))
    }

    fn land(&self) -> Result<(), Violation> {
        let p = self.premises[0];
        self.no_strict_absurd()?;
        if p.succedent() != self.succ() {
            return Err(self.fail(Clause::SuccedentForm, "LAnd keeps the succedent unchanged"));
        }
        let candidates = self.ant().iter().filter(|f| matches!(f, Formula::And(..)));
        self.any_principal(candidates, "no conjunction in conclusion antecedent", |f| {
            let Formula::And(a, b) = f else { unreachable!() };
            let (a, b) = (a.as_ref(), b.as_ref());
            if !p.antecedent().contains(a) && !p.antecedent().contains(b) {
                return Err(self.fail(
                    Clause::LAndSideCondition,
                    format!("LAnd side condition Δ∩{{A,B}}≠∅ violated for {f}"),
                ));
            }
            let rest = remove(&remove(p.antecedent(), a), b);
            self.expect_context(&insert(&rest, f))
        })
    }

    fn rand(&self) -> Result<(), Violation> {
        let (p1, p2) = (self.premises[0], self.premises[1]);
        let Formula::And(a, b) = self.formula_succ()? else {
            return Err(self.fail(Clause::SuccedentForm, "RAnd concludes a conjunction"));
        };
        if p1.succedent().formula() != Some(a.as_ref()) || p2.succedent().formula() != Some(b.as_ref()) {
            return Err(self.fail(
                Clause::SuccedentForm,
                "RAnd premises must conclude the left and right conjuncts",
            ));
        }
        self.expect_context(&union(p1.antecedent(), p2.antecedent()))
    }

    fn lor_succedents(&self, s1: &Succedent, s2: &Succedent) -> bool {
        match self.succ() {
            Succedent::Absurd => s1.is_absurd() && s2.is_absurd(),
            c @ Succedent::Conclusion(_) => {
                let ok1 = s1 == c || s1.is_absurd();
                let ok2 = s2 == c || s2.is_absurd();
                ok1 && ok2 && (s1 == c || s2 == c)
            }
        }
    }

    fn lor(&self) -> Result<(), Violation> {
        let (p1, p2) = (self.premises[0], self.premises[1]);
        if !self.lor_succedents(p1.succedent(), p2.succedent()) {
            return Err(self.fail(
                Clause::LOrSuccedents,
                "LOr premises must end in the conclusion's formula or be empty, not both empty unless the conclusion is",
            ));
        }
        let candidates = self.ant().iter().filter(|f| matches!(f, Formula::Or(..)));
        self.any_principal(candidates, "no disjunction in conclusion antecedent", |f| {
            let Formula::Or(a, b) = f else { unreachable!() };
            if !p1.antecedent().contains(a.as_ref()) || !p2.antecedent().contains(b.as_ref()) {
                return Err(self.fail(
                    Clause::MinorMissing,
                    format!("premises must assume {a} and {b} respectively"),
                ));
            }
            let mut first = None;
            for delta in contexts_without(p1.antecedent(), a) {
                for gamma in contexts_without(p2.antecedent(), b) {
                    match self.expect_context(&insert(&union(&delta, &gamma), f)) {
                        Ok(()) => return Ok(()),
                        Err(v) => {
                            first.get_or_insert(v);
                        }
                    }
                }
            }
            Err(first.expect("at least one context split"))
        })
    }

    fn ror(&self) -> Result<(), Violation> {
        let p = self.premises[0];
        let Formula::Or(a, b) = self.formula_succ()? else {
            return Err(self.fail(Clause::SuccedentForm, "ROr concludes a disjunction"));
        };
        let disjunct = if self.rule == RuleName::ROr1 { a } else { b };
        if p.succedent().formula() != Some(disjunct.as_ref()) {
            return Err(self.fail(
                Clause::SuccedentForm,
                format!("premise must conclude {disjunct}"),
            ));
        }
        self.expect_context(p.antecedent())
    }

    fn limp(&self) -> Result<(), Violation> {
        let (p1, p2) = (self.premises[0], self.premises[1]);
        self.no_strict_absurd()?;
        let a = self.premise_formula(p1, "first LImp")?;
        if p2.succedent() != self.succ() {
            return Err(self.fail(
                Clause::SuccedentForm,
                "second LImp premise must share the conclusion's succedent",
            ));
        }
        let candidates = self
            .ant()
            .iter()
            .filter(|f| matches!(f, Formula::Imp(x, _) if x.as_ref() == a));
        self.any_principal(
            candidates,
            &format!("no implication with antecedent {a} in conclusion"),
            |f| {
                let Formula::Imp(_, b) = f else { unreachable!() };
                if !p2.antecedent().contains(b.as_ref()) {
                    return Err(self.fail(
                        Clause::MinorMissing,
                        format!("second premise must assume {b}"),
                    ));
                }
                let mut first = None;
                for gamma in contexts_without(p2.antecedent(), b) {
                    match self.expect_context(&insert(&union(p1.antecedent(), &gamma), f)) {
                        Ok(()) => return Ok(()),
                        Err(v) => {
                            first.get_or_insert(v);
                        }
                    }
                }
                Err(first.expect("at least one context split"))
            },
        )
    }

    fn rimpa(&self) -> Result<(), Violation> {
        let p = self.premises[0];
        let Formula::Imp(a, _) = self.formula_succ()? else {
            return Err(self.fail(Clause::SuccedentForm, "RImpA concludes an implication"));
        };
        self.premise_absurd(p)?;
        if !p.antecedent().contains(a.as_ref()) {
            return Err(self.fail(Clause::Discharge, format!("premise must contain {a}")));
        }
        self.expect_context(&remove(p.antecedent(), a))
    }

    fn rimpb(&self) -> Result<(), Violation> {
        let p = self.premises[0];
        let Formula::Imp(a, b) = self.formula_succ()? else {
            return Err(self.fail(Clause::SuccedentForm, "RImpB concludes an implication"));
        };
        if p.succedent().formula() != Some(b.as_ref()) {
            return Err(self.fail(Clause::SuccedentForm, format!("premise must conclude {b}")));
        }
        self.expect_context(&remove(p.antecedent(), a))
    }
}

/// Checks one inference: does `premises / conclusion` instantiate `rule`?
pub fn check_rule(
    conclusion: &Sequent,
    rule: &RuleLabel,
    premises: &[&Sequent],
    mode: Mode,
) -> Result<(), Violation> {
    let rule = match rule {
        RuleLabel::Known(r) => *r,
        RuleLabel::Unknown(name) => {
            return Err(Violation {
                rule: name.clone(),
                clause: Clause::UnknownRule,
                detail: format!("unknown rule {name}"),
            })
        }
    };
    Ctx {
        rule,
        conclusion,
        premises,
        mode,
    }
    .check()
}

/// Checks every node, root first, depth-first; reports the first failure.
pub fn check_derivation(d: &Derivation, mode: Mode) -> Result<(), TreeViolation> {
    fn go(d: &Derivation, mode: Mode, path: &mut Vec<usize>) -> Result<(), TreeViolation> {
        let premises: Vec<&Sequent> = d.premises.iter().map(|p| &p.conclusion).collect();
        check_rule(&d.conclusion, &d.rule, &premises, mode).map_err(|violation| TreeViolation {
            path: path.clone(),
            conclusion: d.conclusion.print(),
            violation,
        })?;
        for (i, p) in d.premises.iter().enumerate() {
            path.push(i);
            go(p, mode, path)?;
            path.pop();
        }
        Ok(())
    }
    go(d, mode, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn check(concl: &str, rule: RuleName, premises: &[&str]) -> Result<(), Violation> {
        check_mode(concl, rule, premises, Mode::Tennant)
    }

    fn check_mode(concl: &str, rule: RuleName, premises: &[&str], mode: Mode) -> Result<(), Violation> {
        let ps: Vec<Sequent> = premises.iter().map(|s| seq(s)).collect();
        let refs: Vec<&Sequent> = ps.iter().collect();
        check_rule(&seq(concl), &rule.into(), &refs, mode)
    }

    fn clause(r: Result<(), Violation>) -> Clause {
        r.unwrap_err().clause
    }

    #[test]
    fn axiom() {
        assert!(check("p |- p", RuleName::Ax, &[]).is_ok());
        assert_eq!(clause(check("p, q |- p", RuleName::Ax, &[])), Clause::AxSingleton);
        assert_eq!(clause(check("q |- p", RuleName::Ax, &[])), Clause::AxMatch);
        assert_eq!(clause(check("p |-", RuleName::Ax, &[])), Clause::AxMatch);
        assert_eq!(clause(check("p |- p", RuleName::Ax, &["p |- p"])), Clause::Arity);
    }

    #[test]
    fn negation_rules() {
        assert!(check("~A, A |-", RuleName::LNeg, &["A |- A"]).is_ok());
        assert!(check("~A |-", RuleName::LNeg, &["~A |- A"]).is_ok());
        assert_eq!(clause(check("~A, A |- B", RuleName::LNeg, &["A |- A"])), Clause::SuccedentForm);
        assert_eq!(clause(check("A |-", RuleName::LNeg, &["A |- A"])), Clause::PrincipalMissing);
        assert_eq!(clause(check("~A, A, B |-", RuleName::LNeg, &["A |- A"])), Clause::ContextMismatch);

        assert!(check("~A |- ~A", RuleName::RNeg, &["~A, A |-"]).is_ok());
        assert_eq!(clause(check("~A |- ~B", RuleName::RNeg, &["~A, A |-"])), Clause::Discharge);
        // The discharged formula may not survive into the conclusion.
        assert_eq!(clause(check("~A, A |- ~A", RuleName::RNeg, &["~A, A |-"])), Clause::ContextMismatch);
    }

    #[test]
    fn conjunction_rules() {
        assert!(check("(p -> p) & d |- d", RuleName::LAnd, &["d |- d"]).is_ok());
        assert!(check("p & q |- q & p", RuleName::LAnd, &["p, q |- q & p"]).is_ok());
        assert_eq!(
            clause(check("p & q |- r", RuleName::LAnd, &["r |- r"])),
            Clause::LAndSideCondition
        );
        let v = check("p & q |- r", RuleName::LAnd, &["r |- r"]).unwrap_err();
        assert!(v.detail.contains("LAnd side condition"));
        assert_eq!(clause(check("p & q, p |- p", RuleName::LAnd, &["p |- p"])), Clause::ContextMismatch);

        assert!(check("d |- (p -> p) & d", RuleName::RAnd, &["|- p -> p", "d |- d"]).is_ok());
        assert!(check("p |- p & p", RuleName::RAnd, &["p |- p", "p |- p"]).is_ok());
        assert_eq!(
            clause(check("d |- (p -> p) & d", RuleName::RAnd, &["d |- d", "|- p -> p"])),
            Clause::SuccedentForm
        );
    }

    #[test]
    fn land_and_limp_absurd_depends_on_mode() {
        let land = ("p & q, ~p |-", RuleName::LAnd, ["~p, p |-"]);
        assert!(check_mode(land.0, land.1, &land.2, Mode::Tennant).is_ok());
        assert_eq!(
            clause(check_mode(land.0, land.1, &land.2, Mode::StrictTable)),
            Clause::StrictTableAbsurd
        );
        let limp = ["A |- A", "~B, B |-"];
        assert!(check_mode("~B, A -> B, A |-", RuleName::LImp, &limp, Mode::Tennant).is_ok());
        assert_eq!(
            clause(check_mode("~B, A -> B, A |-", RuleName::LImp, &limp, Mode::StrictTable)),
            Clause::StrictTableAbsurd
        );
    }

    #[test]
    fn disjunction_rules() {
        assert!(check("p | q |- q | p", RuleName::LOr, &["p |- q | p", "q |- q | p"]).is_ok());
        assert!(check("p | q, ~p |- q", RuleName::LOr, &["p, ~p |-", "q |- q"]).is_ok());
        assert!(check("p | q, ~p, ~q |-", RuleName::LOr, &["p, ~p |-", "q, ~q |-"]).is_ok());
        assert_eq!(
            clause(check("p | q, ~p, ~q |- r", RuleName::LOr, &["p, ~p |-", "q, ~q |-"])),
            Clause::LOrSuccedents
        );
        assert_eq!(
            clause(check("p | q |- q", RuleName::LOr, &["p |- p", "q |- q"])),
            Clause::LOrSuccedents
        );
        // Minor formula kept in the context.
        assert!(check("p | q, p |- p", RuleName::LOr, &["p |- p", "q, p |- p"]).is_ok());

        assert!(check("p |- p | q", RuleName::ROr1, &["p |- p"]).is_ok());
        assert!(check("q |- p | q", RuleName::ROr2, &["q |- q"]).is_ok());
        assert_eq!(clause(check("q |- p | q", RuleName::ROr1, &["q |- q"])), Clause::SuccedentForm);
    }

    #[test]
    fn implication_rules() {
        assert!(check("A -> B, A |- B", RuleName::LImp, &["A |- A", "B |- B"]).is_ok());
        assert!(check(
            "~A -> (A -> B), ~A, A |- B",
            RuleName::LImp,
            &["~A |- ~A", "A -> B, A |- B"]
        )
        .is_ok());
        assert_eq!(
            clause(check("A -> B |- B", RuleName::LImp, &["A |- A", "B |- B"])),
            Clause::ContextMismatch
        );
        assert_eq!(
            clause(check("A -> B, A |- B", RuleName::LImp, &["A |- A", "C |- B"])),
            Clause::MinorMissing
        );

        assert!(check("~A |- A -> B", RuleName::RImpA, &["~A, A |-"]).is_ok());
        assert_eq!(clause(check("~A |- A -> B", RuleName::RImpA, &["~A |-"])), Clause::Discharge);

        assert!(check("|- ~A -> (A -> B)", RuleName::RImpB, &["~A |- A -> B"]).is_ok());
        assert!(check("|- p -> p", RuleName::RImpB, &["p |- p"]).is_ok());
        // Vacuous discharge.
        assert!(check("q |- p -> q", RuleName::RImpB, &["q |- q"]).is_ok());
        assert_eq!(
            clause(check("p |- p -> p", RuleName::RImpB, &["p |- p"])),
            Clause::ContextMismatch
        );
    }

    #[test]
    fn unknown_rules_are_rejected() {
        let c = seq("B, ~A, A |-");
        let p = seq("~A, A |-");
        let v = check_rule(&c, &RuleLabel::parse("Wk"), &[&p], Mode::Tennant).unwrap_err();
        assert_eq!(v.clause, Clause::UnknownRule);
        assert_eq!(v.detail, "unknown rule Wk");
    }

    #[test]
    fn weakening_step_fits_no_rule() {
        let c = seq("B, ~A, A |-");
        let p = seq("~A, A |-");
        for r in RuleName::ALL {
            for mode in Mode::ALL {
                assert!(check_rule(&c, &r.into(), &[&p], mode).is_err(), "{r} accepted weakening");
                assert!(check_rule(&c, &r.into(), &[&p, &p], mode).is_err());
            }
        }
    }

    #[test]
    fn tree_violation_path() {
        let ax = Derivation::axiom(seq("A |- A"));
        let bad = Derivation::axiom(seq("A, B |- A"));
        let d = Derivation::new(
            seq("A, B |- A & A"),
            RuleName::RAnd,
            vec![ax, bad],
        );
        let v = check_derivation(&d, Mode::Tennant).unwrap_err();
        assert_eq!(v.path, vec![1]);
        assert_eq!(v.violation.clause, Clause::AxSingleton);
        assert_eq!(v.location(), "path 1");
    }
}
