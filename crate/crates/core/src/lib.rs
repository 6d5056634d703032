//! Decision and counting engine for first-order statements about
//! k-automatic sequences.
//!
//! Formulas are compiled to tuple automata ([`logic`]), counting functions
//! are extracted as linear representations and minimized exactly
//! ([`linrep`]), and the resulting rational series are analysed through
//! minimal polynomials and closed forms ([`spectral`]). [`oracles`] holds
//! brute-force ground truth that shares no code with the automaton
//! pipeline.

pub mod automata;
pub mod error;
pub mod formulas;
pub mod linalg;
pub mod linrep;
pub mod logic;
pub mod numeration;
pub mod oracles;
pub mod pipelines;
pub mod spectral;

pub use error::{Error, Result};
