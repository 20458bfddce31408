//! Intuitionistic propositional logic: a decision procedure, Kripke
//! countermodels, and a comparison against Core provability.

mod g4ip;
mod kripke;

use rayon::prelude::*;
use serde::Serialize;

pub use g4ip::decide_int;
pub use kripke::{countermodel, KripkeModel, World, MAX_WORLDS};

use crate::engine::{Engine, EngineError};
use crate::syntax::Sequent;

/// Verdicts of both logics on one sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub core: Option<usize>,
    pub int: bool,
}

/// Outcome of comparing Core with intuitionistic logic over a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub family: String,
    pub total: usize,
    pub core_provable: usize,
    pub int_provable: usize,
    /// Intuitionistically provable but not Core provable.
    pub divergences: Vec<String>,
    /// Core provable but not intuitionistically provable. Must be empty.
    pub violations: Vec<String>,
    pub theorems_checked: usize,
    /// Empty-antecedent sequents on which the two logics disagree.
    pub theorem_disagreements: Vec<String>,
}

impl CrossCheckReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.theorem_disagreements.is_empty()
    }

    pub fn diverges_on(&self, s: &Sequent) -> bool {
        self.divergences.contains(&s.print())
    }
}

const CHUNK: usize = 256;

/// Both verdicts for every sequent, in input order.
pub fn verdicts(family: &[Sequent], engine: &Engine) -> Result<Vec<Verdicts>, EngineError> {
    let chunks: Vec<Result<Vec<Verdicts>, EngineError>> = family
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut prover = g4ip::Prover::default();
            chunk
                .iter()
                .map(|s| {
                    Ok(Verdicts {
                        core: engine.min_height(s)?,
                        int: prover.decide(s),
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(family.len());
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// Decides every sequent of `family` in both logics. `description` names
/// the family in the report.
pub fn cross_check(family: &[Sequent], description: &str, engine: &Engine) -> Result<CrossCheckReport, EngineError> {
    let vs = verdicts(family, engine)?;
    let mut report = CrossCheckReport {
        family: description.to_string(),
        total: family.len(),
        core_provable: 0,
        int_provable: 0,
        divergences: Vec::new(),
        violations: Vec::new(),
        theorems_checked: 0,
        theorem_disagreements: Vec::new(),
    };
    for (s, v) in family.iter().zip(vs) {
        let core = v.core.is_some();
        report.core_provable += core as usize;
        report.int_provable += v.int as usize;
        match (core, v.int) {
            (true, false) => report.violations.push(s.print()),
            (false, true) => report.divergences.push(s.print()),
            _ => {}
        }
        if s.antecedent().is_empty() {
            report.theorems_checked += 1;
            if core != v.int {
                report.theorem_disagreements.push(s.print());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::SequentFamily;
    use crate::kernel::Mode;
    use crate::syntax::parse_sequent;

    #[test]
    fn one_atom_family_has_no_divergence() {
        let fam = SequentFamily::with_atoms(&["p"], 2);
        let r = cross_check(&fam.sequents(), &fam.describe(), &Engine::new(Mode::Tennant)).unwrap();
        assert_eq!(r.total, 5);
        assert!(r.divergences.is_empty());
        assert!(r.is_clean());
    }

    #[test]
    fn two_atoms_show_ex_falso() {
        let fam = SequentFamily::new(2, 4);
        let r = cross_check(&fam.sequents(), &fam.describe(), &Engine::new(Mode::Tennant)).unwrap();
        assert!(r.is_clean());
        assert!(r.diverges_on(&parse_sequent("~p, p |- q").unwrap()));
    }
}
