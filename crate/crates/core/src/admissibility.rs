//! Extensional admissibility tests for sequent transformations over finite
//! families of sequents.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{Engine, EngineError};
use crate::kernel::Mode;
use crate::syntax::{Formula, Sequent};

/// A map on sequents read as a one-premise rule `s / t(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleTransform {
    Identity,
    /// Adds a concrete theorem standing for `⊤` to the antecedent.
    LTop(Formula),
    /// Adds an arbitrary formula to the antecedent.
    Weaken(Formula),
}

impl RuleTransform {
    /// `LTop` with `p -> p`.
    pub fn ltop_default() -> RuleTransform {
        RuleTransform::LTop(Formula::imp(Formula::atom("p"), Formula::atom("p")))
    }

    pub fn name(&self) -> String {
        match self {
            RuleTransform::Identity => "identity".to_string(),
            RuleTransform::LTop(t) => format!("LTop[{}]", t.print()),
            RuleTransform::Weaken(f) => format!("Wk[{}]", f.print()),
        }
    }

    pub fn apply(&self, s: &Sequent) -> Sequent {
        match self {
            RuleTransform::Identity => s.clone(),
            RuleTransform::LTop(f) | RuleTransform::Weaken(f) => s.with_antecedent(f.clone()),
        }
    }
}

impl fmt::Display for RuleTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdmissibilityStatus {
    StronglyAdmissible,
    Admissible,
    NotAdmissible,
}

impl AdmissibilityStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AdmissibilityStatus::StronglyAdmissible => "strongly-admissible",
            AdmissibilityStatus::Admissible => "admissible",
            AdmissibilityStatus::NotAdmissible => "not-admissible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub premise: String,
    pub premise_height: usize,
    pub transformed: String,
    /// `None` when the transformed sequent is unprovable.
    pub transformed_height: Option<usize>,
    pub command: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    pub rule: String,
    pub universe: String,
    pub mode: Mode,
    pub status: AdmissibilityStatus,
    /// Provable sequents of the family the rule was applied to.
    pub premises_checked: usize,
    /// Counterexamples (for `NotAdmissible`) or height increases (for
    /// `Admissible`), lightest premise first.
    pub witnesses: Vec<Witness>,
}

impl AdmissibilityVerdict {
    pub fn first_witness(&self) -> Option<&Witness> {
        self.witnesses.first()
    }
}

/// Shell command reproducing the verdict on `s`.
pub fn decide_command(s: &Sequent, mode: Mode) -> String {
    let mut cmd = format!("coreseq decide \"{}\" --json", s.print());
    if mode != Mode::default() {
        cmd.push_str(" --mode ");
        cmd.push_str(mode.as_str());
    }
    cmd
}

/// Applies `t` to every provable member of `family` and compares heights.
pub fn test_admissibility(
    t: &RuleTransform,
    family: &[Sequent],
    description: &str,
    engine: &Engine,
) -> Result<AdmissibilityVerdict, EngineError> {
    let rows: Vec<Result<Option<(usize, Option<usize>)>, EngineError>> = family
        .par_iter()
        .map(|s| {
            let Some(n) = engine.min_height(s)? else {
                return Ok(None);
            };
            Ok(Some((n, engine.min_height(&t.apply(s))?)))
        })
        .collect();

    let mut lost = Vec::new();
    let mut taller = Vec::new();
    let mut checked = 0;
    for (s, row) in family.iter().zip(rows) {
        let Some((n, m)) = row? else { continue };
        checked += 1;
        let transformed = t.apply(s);
        let w = || Witness {
            premise: s.print(),
            premise_height: n,
            transformed: transformed.print(),
            transformed_height: m,
            command: decide_command(&transformed, engine.mode()),
        };
        match m {
            None => lost.push((s.clone(), w())),
            Some(m) if m > n => taller.push((s.clone(), w())),
            Some(_) => {}
        }
    }
    let (status, mut witnesses) = if !lost.is_empty() {
        (AdmissibilityStatus::NotAdmissible, lost)
    } else if !taller.is_empty() {
        (AdmissibilityStatus::Admissible, taller)
    } else {
        (AdmissibilityStatus::StronglyAdmissible, Vec::new())
    };
    witnesses.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(AdmissibilityVerdict {
        rule: t.name(),
        universe: description.to_string(),
        mode: engine.mode(),
        status,
        premises_checked: checked,
        witnesses: witnesses.into_iter().map(|(_, w)| w).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Query {
    pub sequent: String,
    pub provable: bool,
    pub min_height: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub delta: String,
    pub top: String,
    pub top_height: usize,
    /// `delta |- top & delta`
    pub introduce: Query,
    /// `top & delta |- delta`
    pub eliminate: Query,
    /// `top, delta |- delta`: the two-element antecedent, as opposed to
    /// the single conjunction above.
    pub as_set: Query,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Lemma1Error {
    #[error("precondition failed: `|- {0}` is not provable")]
    TopNotTheorem(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Decides the two directions of `delta -||- top & delta` and the set
/// variant `top, delta |- delta`.
pub fn lemma1_study(delta: &Formula, top: &Formula, engine: &Engine) -> Result<Lemma1Report, Lemma1Error> {
    let top_height = engine
        .min_height(&Sequent::proves([], top.clone()))?
        .ok_or_else(|| Lemma1Error::TopNotTheorem(top.print()))?;
    let conj = Formula::and(top.clone(), delta.clone());
    let query = |s: Sequent| -> Result<Query, EngineError> {
        let h = engine.min_height(&s)?;
        Ok(Query {
            sequent: s.print(),
            provable: h.is_some(),
            min_height: h,
        })
    };
    Ok(Lemma1Report {
        delta: delta.print(),
        top: top.print(),
        top_height,
        introduce: query(Sequent::proves([delta.clone()], conj.clone()))?,
        eliminate: query(Sequent::proves([conj], delta.clone()))?,
        as_set: query(Sequent::proves([top.clone(), delta.clone()], delta.clone()))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::SequentFamily;
    use crate::syntax::{parse_formula, parse_sequent};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn identity_is_strongly_admissible() {
        let fam = SequentFamily::new(2, 4);
        let v = test_admissibility(&RuleTransform::Identity, &fam.sequents(), &fam.describe(), &Engine::new(Mode::Tennant)).unwrap();
        assert_eq!(v.status, AdmissibilityStatus::StronglyAdmissible);
        assert!(v.witnesses.is_empty());
        assert!(v.premises_checked > 0);
    }

    #[test]
    fn weakening_loses_consistency_witness() {
        let fam = SequentFamily::with_atoms(&["A", "B"], 3);
        let t = RuleTransform::Weaken(f("B"));
        let v = test_admissibility(&t, &fam.sequents(), &fam.describe(), &Engine::new(Mode::Tennant)).unwrap();
        assert_eq!(v.status, AdmissibilityStatus::NotAdmissible);
        let w = v.witnesses.iter().find(|w| w.premise == "A, ~A |-").unwrap();
        assert_eq!(w.transformed, "A, B, ~A |-");
        assert_eq!(w.transformed_height, None);
    }

    #[test]
    fn lemma1_examples() {
        let e = Engine::new(Mode::Tennant);
        let r = lemma1_study(&f("q"), &f("p -> p"), &e).unwrap();
        assert!(r.introduce.provable && r.eliminate.provable);
        assert!(!r.as_set.provable);

        let r = lemma1_study(&f("p -> p"), &f("p -> p"), &e).unwrap();
        assert!(r.introduce.provable && r.eliminate.provable && r.as_set.provable);

        assert_eq!(
            lemma1_study(&f("q"), &f("q"), &e),
            Err(Lemma1Error::TopNotTheorem("q".into()))
        );
    }

    #[test]
    fn command_round_trips() {
        let s = parse_sequent("(p->p), q |- q").unwrap();
        let cmd = decide_command(&s, Mode::StrictTable);
        assert!(cmd.ends_with("--mode strict-table"));
        let quoted = cmd.split('"').nth(1).unwrap();
        assert_eq!(parse_sequent(quoted).unwrap(), s);
    }
}
