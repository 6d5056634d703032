//! Unweighted automata: DFAOs for sequences and tuple automata for
//! formulas.

pub mod builtins;
mod dfao;
mod dot;
mod tuple;
mod walnut;

pub use dfao::Dfao;
pub use dot::{dfao_to_dot, tuple_dfa_to_dot};
pub use tuple::{decode_letter, encode_letter, letter_count, BoolOp, TupleDfa, TupleNfa};
pub use walnut::{format_dfao, parse_dfao};
