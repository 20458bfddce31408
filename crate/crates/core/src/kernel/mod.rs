//! Derivations and the rule checker.

mod check;
mod derivation;
pub mod fixtures;
mod rules;

pub use check::{check_derivation, check_rule, Clause, TreeViolation, Violation};
pub use derivation::{height, Derivation, DerivationNode, LoadError};
pub use fixtures::paper_fixtures;
pub use rules::{Mode, RuleLabel, RuleName, UnknownRule};
