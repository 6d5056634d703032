//! First-order formulas over (ℕ, +, sequence lookups) and their
//! compilation to tuple automata.

mod ast;
mod compile;
mod parser;

pub use ast::{Formula, Rel, Summand, Term};
pub use compile::{compile, decide, SequenceBinding};
pub use parser::{parse_formula, rename_bound};
