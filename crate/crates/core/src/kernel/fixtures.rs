//! The printed derivations, with the schematic context instantiated to the
//! atom `d` and the schematic theorem expanded to `p -> p` together with
//! its two-line proof.

use std::collections::BTreeMap;

use super::derivation::Derivation;
use super::rules::{RuleLabel, RuleName};
use crate::syntax::{parse_sequent, Sequent};

pub const LEMMA1_RIGHT: &str = "lemma1-right";
pub const LEMMA1_LEFT: &str = "lemma1-left";
pub const CONTRADICTION1: &str = "contradiction1";
pub const CONTRADICTION2: &str = "contradiction2";
pub const D1_UPPER: &str = "d1-upper";
pub const D2: &str = "d2";
pub const D1_FULL_WITH_LTOP: &str = "d1-full-with-ltop";

/// Fixtures that must pass the checker.
pub const VALID_FIXTURES: [&str; 6] = [LEMMA1_RIGHT, LEMMA1_LEFT, CONTRADICTION1, CONTRADICTION2, D1_UPPER, D2];

fn seq(s: &str) -> Sequent {
    parse_sequent(s).expect("fixture sequents are well formed")
}

fn ax(s: &str) -> Derivation {
    Derivation::axiom(seq(s))
}

fn node(s: &str, rule: RuleName, premises: Vec<Derivation>) -> Derivation {
    Derivation::new(seq(s), rule, premises)
}

/// `|- p -> p` from `p |- p`.
fn top_proof() -> Derivation {
    node("|- p -> p", RuleName::RImpB, vec![ax("p |- p")])
}

pub fn lemma1_right() -> Derivation {
    node("d |- (p -> p) & d", RuleName::RAnd, vec![top_proof(), ax("d |- d")])
}

pub fn lemma1_left() -> Derivation {
    node("(p -> p) & d |- d", RuleName::LAnd, vec![ax("d |- d")])
}

pub fn contradiction1() -> Derivation {
    let modus = node(
        "d, (p -> p) & d -> c |- c",
        RuleName::LImp,
        vec![lemma1_right(), ax("c |- c")],
    );
    let cond = node("(p -> p) & d -> c |- d -> c", RuleName::RImpB, vec![modus]);
    node("~(d -> c), (p -> p) & d -> c |-", RuleName::LNeg, vec![cond])
}

pub fn contradiction2() -> Derivation {
    let modus = node(
        "(p -> p) & d, d -> c |- c",
        RuleName::LImp,
        vec![lemma1_left(), ax("c |- c")],
    );
    let cond = node("d -> c |- (p -> p) & d -> c", RuleName::RImpB, vec![modus]);
    node("~((p -> p) & d -> c), d -> c |-", RuleName::LNeg, vec![cond])
}

pub fn d1_upper() -> Derivation {
    let neg = node("~A, A |-", RuleName::LNeg, vec![ax("A |- A")]);
    let inner = node("~A |- A -> B", RuleName::RImpA, vec![neg]);
    node("|- ~A -> (A -> B)", RuleName::RImpB, vec![inner])
}

pub fn d2() -> Derivation {
    let neg = node("~A, A |-", RuleName::LNeg, vec![ax("A |- A")]);
    let left = node("~A |- ~A", RuleName::RNeg, vec![neg]);
    let right = node("A -> B, A |- B", RuleName::LImp, vec![ax("A |- A"), ax("B |- B")]);
    node("~A -> (A -> B), ~A, A |- B", RuleName::LImp, vec![left, right])
}

/// The full first derivation of the inconsistency argument, ending in the
/// two-premise `LTop` step whose right premise is the non-derivability
/// claim `~A, A |- B` (recorded with the pseudo-rule `Unprovable`).
pub fn d1_full_with_ltop() -> Derivation {
    let claim = Derivation::new(
        seq("~A, A |- B"),
        RuleLabel::Unknown("Unprovable".into()),
        vec![],
    );
    Derivation::new(
        seq("~A -> (A -> B), ~A, A |- B"),
        RuleLabel::Unknown("LTop".into()),
        vec![d1_upper(), claim],
    )
}

pub fn paper_fixtures() -> BTreeMap<&'static str, Derivation> {
    BTreeMap::from([
        (LEMMA1_RIGHT, lemma1_right()),
        (LEMMA1_LEFT, lemma1_left()),
        (CONTRADICTION1, contradiction1()),
        (CONTRADICTION2, contradiction2()),
        (D1_UPPER, d1_upper()),
        (D2, d2()),
        (D1_FULL_WITH_LTOP, d1_full_with_ltop()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_derivation, Clause, Mode};

    #[test]
    fn valid_fixtures_check() {
        let all = paper_fixtures();
        for name in VALID_FIXTURES {
            for mode in Mode::ALL {
                if let Err(v) = check_derivation(&all[name], mode) {
                    panic!("{name} ({mode}): {v}");
                }
            }
        }
    }

    #[test]
    fn ltop_fixture_fails_at_root() {
        let v = check_derivation(&d1_full_with_ltop(), Mode::Tennant).unwrap_err();
        assert!(v.path.is_empty());
        assert_eq!(v.violation.clause, Clause::UnknownRule);
        assert_eq!(v.to_string(), "unknown rule LTop at root");
    }

    #[test]
    fn conclusions() {
        assert_eq!(lemma1_right().conclusion, seq("d |- (p->p) & d"));
        assert_eq!(contradiction1().conclusion, seq("~(d -> c), ((p->p) & d) -> c |-"));
        assert_eq!(contradiction2().conclusion, seq("~(((p->p) & d) -> c), d -> c |-"));
        assert_eq!(d1_upper().conclusion, seq("|- ~A -> (A -> B)"));
    }

    #[test]
    fn heights() {
        assert_eq!(d1_upper().height(), 3);
        assert_eq!(d2().height(), 3);
        assert_eq!(lemma1_right().height(), 2);
        assert_eq!(lemma1_left().height(), 1);
        assert_eq!(contradiction1().height(), 5);
        assert_eq!(contradiction2().height(), 4);
    }
}
