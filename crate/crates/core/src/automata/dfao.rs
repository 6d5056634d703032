use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::numeration::BaseKWord;

/// Deterministic finite automaton with output, read msd-first.
///
/// State 0 is the initial state. `labels` keeps the names the states had in
/// their source file so that the automaton can be written back unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    labels: Vec<i64>,
    outputs: Vec<i64>,
    // successor of state q on digit d at q * base + d
    delta: Vec<u32>,
}

impl Dfao {
    /// Builds a DFAO from per-state outputs and a row-major transition table.
    /// Unreachable states are dropped; the remaining ones keep their relative
    /// order.
    pub fn new(base: u32, outputs: Vec<i64>, delta: Vec<u32>) -> Result<Self> {
        let labels = (0..outputs.len() as i64).collect();
        Self::with_labels(base, labels, outputs, delta)
    }

    pub fn with_labels(base: u32, labels: Vec<i64>, outputs: Vec<i64>, delta: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        let n = outputs.len();
        if n == 0 {
            return Err(Error::Internal("a DFAO needs at least one state".into()));
        }
        if labels.len() != n || delta.len() != n * base as usize {
            return Err(Error::Internal("DFAO table sizes disagree".into()));
        }
        if let Some(&bad) = delta.iter().find(|&&q| q as usize >= n) {
            return Err(Error::Internal(format!("transition to undeclared state index {bad}")));
        }
        Ok(Dfao { base, labels, outputs, delta }.trim_unreachable())
    }

    fn trim_unreachable(self) -> Self {
        let k = self.base as usize;
        let n = self.outputs.len();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            for d in 0..k {
                let r = self.delta[q * k + d] as usize;
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            return self;
        }
        let mut index = vec![u32::MAX; n];
        let kept: Vec<usize> = (0..n).filter(|&q| seen[q]).collect();
        for (i, &q) in kept.iter().enumerate() {
            index[q] = i as u32;
        }
        let mut delta = Vec::with_capacity(kept.len() * k);
        for &q in &kept {
            for d in 0..k {
                delta.push(index[self.delta[q * k + d] as usize]);
            }
        }
        Dfao {
            base: self.base,
            labels: kept.iter().map(|&q| self.labels[q]).collect(),
            outputs: kept.iter().map(|&q| self.outputs[q]).collect(),
            delta,
        }
    }

    /// The Thue–Morse sequence: parity of the number of 1s.
    pub fn thue_morse() -> Self {
        Dfao::new(2, vec![0, 1], vec![0, 1, 1, 0]).expect("valid built-in")
    }

    /// The twisted Thue–Morse sequence (parity of the number of 0s, with
    /// value 1 at n = 0).
    pub fn twisted_thue_morse() -> Self {
        Dfao::new(2, vec![1, 0, 1], vec![0, 1, 2, 1, 1, 2]).expect("valid built-in")
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn state_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn output(&self, state: usize) -> i64 {
        self.outputs[state]
    }

    pub fn outputs(&self) -> &[i64] {
        &self.outputs
    }

    pub fn label(&self, state: usize) -> i64 {
        self.labels[state]
    }

    pub fn step(&self, state: usize, digit: u32) -> usize {
        self.delta[state * self.base as usize + digit as usize] as usize
    }

    /// State reached from the initial state on `digits` (msd-first).
    pub fn run(&self, digits: &[u32]) -> usize {
        digits.iter().fold(0, |q, &d| self.step(q, d))
    }

    /// The n-th term of the sequence computed by this automaton.
    pub fn value(&self, n: u64) -> i64 {
        let word = BaseKWord::canonical(self.base, n);
        self.outputs[self.run(word.digits())]
    }

    pub fn value_of_word(&self, word: &BaseKWord) -> i64 {
        self.outputs[self.run(word.digits())]
    }

    /// Distinct output symbols in increasing order.
    pub fn output_alphabet(&self) -> Vec<i64> {
        let mut out = self.outputs.clone();
        out.sort_unstable();
        out.dedup();
        out
    }
}
