//! Concrete syntax: formulas, sequents, parsing and printing.

mod formula;
mod parser;
mod sequent;

pub use formula::{print_formula, weight, Formula};
pub use parser::{parse_formula, parse_sequent, ParseError};
pub use sequent::{print_sequent, sequent_weight, Sequent, Succedent};
