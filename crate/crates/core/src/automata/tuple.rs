//! Automata over tuples of base-k digits.
//!
//! A letter is a tuple with one digit per track. Tracks are kept sorted by
//! name and letters are numbered lexicographically, first track most
//! significant, so letter order equals tuple order.
//!
//! Every automaton produced here recognizes a set of tuples through all of
//! their zero-padded encodings: a word is accepted iff the tuple it spells
//! belongs to the set, whatever the number of leading all-zero letters.
//! The empty word spells the all-zero tuple.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::numeration::{canonical_len, BaseKWord};

/// Boolean connective used by [`TupleDfa::product`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Implies,
    Iff,
}

impl BoolOp {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::Implies => !a || b,
            BoolOp::Iff => a == b,
        }
    }
}

/// Number of letters on `tracks` tracks.
pub fn letter_count(base: u32, tracks: usize) -> usize {
    (base as usize).pow(tracks as u32)
}

/// Digits of `letter`, one per track.
pub fn decode_letter(base: u32, tracks: usize, mut letter: usize) -> Vec<u32> {
    let mut digits = vec![0; tracks];
    for slot in digits.iter_mut().rev() {
        *slot = (letter % base as usize) as u32;
        letter /= base as usize;
    }
    digits
}

pub fn encode_letter(base: u32, digits: &[u32]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base as usize + d as usize)
}

/// For each letter over `target`, the letter over `source` obtained by
/// dropping the tracks `source` lacks. `source` must be a subset of `target`.
fn restriction_map(base: u32, target: &[String], source: &[String]) -> Vec<usize> {
    let positions: Vec<usize> =
        source.iter().map(|s| target.iter().position(|t| t == s).expect("source track missing from target")).collect();
    (0..letter_count(base, target.len()))
        .map(|l| {
            let digits = decode_letter(base, target.len(), l);
            positions.iter().fold(0, |acc, &p| acc * base as usize + digits[p] as usize)
        })
        .collect()
}

fn sorted_union(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b).cloned().collect();
    out.sort();
    out.dedup();
    out
}

/// Complete deterministic automaton over tuple-letters. State 0 is initial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleDfa {
    base: u32,
    tracks: Vec<String>,
    // successor of state s on letter l at s * letters + l
    delta: Vec<u32>,
    accepting: Vec<bool>,
}

/// Nondeterministic automaton over tuple-letters; the result of projecting a
/// track away.
#[derive(Debug, Clone)]
pub struct TupleNfa {
    base: u32,
    tracks: Vec<String>,
    initial: Vec<u32>,
    // successor sets of state s on letter l at s * letters + l, sorted
    succ: Vec<Vec<u32>>,
    accepting: Vec<bool>,
}

impl TupleDfa {
    /// Builds the automaton reachable from state 0 of a transition function
    /// given on digit tuples. `tracks` must be sorted and distinct.
    pub fn from_fn(
        base: u32,
        tracks: Vec<String>,
        accept: impl Fn(u32) -> bool,
        step: impl Fn(u32, &[u32]) -> u32,
    ) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        debug_assert!(tracks.windows(2).all(|w| w[0] < w[1]), "tracks must be sorted");
        let letters = letter_count(base, tracks.len());
        let decoded: Vec<Vec<u32>> = (0..letters).map(|l| decode_letter(base, tracks.len(), l)).collect();
        let mut index: HashMap<u32, u32> = HashMap::from([(0, 0)]);
        let mut order = vec![0u32];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for digits in &decoded {
                let t = step(s, digits);
                let next = index.len() as u32;
                let id = *index.entry(t).or_insert_with(|| {
                    order.push(t);
                    next
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting = order.iter().map(|&s| accept(s)).collect();
        Ok(TupleDfa { base, tracks, delta, accepting })
    }

    /// Accepts every tuple over `tracks`.
    pub fn universal(base: u32, tracks: Vec<String>) -> Self {
        let letters = letter_count(base, tracks.len());
        TupleDfa { base, tracks, delta: vec![0; letters], accepting: vec![true] }
    }

    /// Accepts nothing.
    pub fn empty(base: u32, tracks: Vec<String>) -> Self {
        let letters = letter_count(base, tracks.len());
        TupleDfa { base, tracks, delta: vec![0; letters], accepting: vec![false] }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn tracks(&self) -> &[String] {
        &self.tracks
    }

    pub fn letter_count(&self) -> usize {
        letter_count(self.base, self.tracks.len())
    }

    /// Number of states of the complete automaton, sink included.
    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.delta[state * self.letter_count() + letter] as usize
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let letters = self.letter_count();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for s in 0..n {
            for l in 0..letters {
                preds[self.delta[s * letters + l] as usize].push(s as u32);
            }
        }
        let mut live = self.accepting.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&s| live[s]).collect();
        while let Some(s) = queue.pop_front() {
            for &p in &preds[s] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    queue.push_back(p as usize);
                }
            }
        }
        live
    }

    /// Number of states that can still reach acceptance. For a minimal
    /// automaton this is the state count with the sink left out.
    pub fn live_state_count(&self) -> usize {
        self.live_states().iter().filter(|&&l| l).count()
    }

    pub fn accepts_word(&self, letters: &[usize]) -> bool {
        let end = letters.iter().fold(0, |s, &l| self.step(s, l));
        self.accepting[end]
    }

    /// Membership of the tuple `values`, encoded msd-first and padded to the
    /// longest canonical length.
    pub fn accepts(&self, values: &BTreeMap<String, u64>) -> Result<bool> {
        self.accepts_padded(values, 0)
    }

    /// Like [`accepts`](Self::accepts) with `extra` additional leading
    /// all-zero letters.
    pub fn accepts_padded(&self, values: &BTreeMap<String, u64>, extra: usize) -> Result<bool> {
        Ok(self.accepts_word(&self.encode(values, extra)?))
    }

    /// The letters spelling `values`, padded with `extra` leading zeros.
    pub fn encode(&self, values: &BTreeMap<String, u64>, extra: usize) -> Result<Vec<usize>> {
        let vals: Vec<u64> = self
            .tracks
            .iter()
            .map(|t| values.get(t).copied().ok_or_else(|| Error::MissingVariable(t.clone())))
            .collect::<Result<_>>()?;
        let len = vals.iter().map(|&v| canonical_len(self.base, v)).max().unwrap_or(0) + extra;
        let words: Vec<BaseKWord> = vals.iter().map(|&v| BaseKWord::padded(self.base, v, len)).collect();
        Ok((0..len).map(|i| words.iter().fold(0, |acc, w| acc * self.base as usize + w.digits()[i] as usize)).collect())
    }

    /// Re-expresses the automaton over a superset of its tracks; the new
    /// tracks are unconstrained.
    pub fn cylindrify(&self, tracks: &[String]) -> Result<TupleDfa> {
        if let Some(t) = self.tracks.iter().find(|t| !tracks.contains(t)) {
            return Err(Error::UnknownTrack(t.clone()));
        }
        let mut target = tracks.to_vec();
        target.sort();
        target.dedup();
        if target == self.tracks {
            return Ok(self.clone());
        }
        let map = restriction_map(self.base, &target, &self.tracks);
        let old_letters = self.letter_count();
        let mut delta = Vec::with_capacity(self.state_count() * map.len());
        for s in 0..self.state_count() {
            delta.extend(map.iter().map(|&l| self.delta[s * old_letters + l]));
        }
        Ok(TupleDfa { base: self.base, tracks: target, delta, accepting: self.accepting.clone() })
    }

    /// Synchronous product over the union of both track lists.
    pub fn product(&self, other: &TupleDfa, op: BoolOp) -> Result<TupleDfa> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base, other.base));
        }
        let tracks = sorted_union(&self.tracks, &other.tracks);
        let map_a = restriction_map(self.base, &tracks, &self.tracks);
        let map_b = restriction_map(self.base, &tracks, &other.tracks);
        let (la, lb) = (self.letter_count(), other.letter_count());
        let mut index: HashMap<(u32, u32), u32> = HashMap::from([((0, 0), 0)]);
        let mut order = vec![(0u32, 0u32)];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (p, q) = order[i];
            for (&a, &b) in map_a.iter().zip(&map_b) {
                let pair = (self.delta[p as usize * la + a], other.delta[q as usize * lb + b]);
                let next = index.len() as u32;
                let id = *index.entry(pair).or_insert_with(|| {
                    order.push(pair);
                    next
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting =
            order.iter().map(|&(p, q)| op.apply(self.accepting[p as usize], other.accepting[q as usize])).collect();
        Ok(TupleDfa { base: self.base, tracks, delta, accepting })
    }

    /// Accepts exactly the tuples this automaton rejects. Every word encodes
    /// some tuple, so flipping acceptance keeps the padding convention.
    pub fn complement(&self) -> TupleDfa {
        let mut out = self.clone();
        for a in &mut out.accepting {
            *a = !*a;
        }
        out
    }

    /// Existentially quantifies `var`: a tuple over the remaining tracks is
    /// accepted iff some value of `var` completes it to an accepted tuple.
    ///
    /// The witness may need more digits than the other values, so the
    /// initial set is closed under letters that are zero on the remaining
    /// tracks.
    pub fn project(&self, var: &str) -> Result<TupleNfa> {
        let pos = self.tracks.iter().position(|t| t == var).ok_or_else(|| Error::UnknownTrack(var.to_string()))?;
        let base = self.base;
        let k = base as usize;
        let d = self.tracks.len();
        let tracks: Vec<String> = self.tracks.iter().filter(|t| t.as_str() != var).cloned().collect();
        let new_letters = letter_count(base, d - 1);
        let old_letters = self.letter_count();
        // expand[l * k + y] = old letter with digit y inserted at `pos`
        let high = letter_count(base, d - 1 - pos);
        let mut expand = Vec::with_capacity(new_letters * k);
        for l in 0..new_letters {
            let (hi, lo) = (l / high, l % high);
            for y in 0..k {
                expand.push((hi * k + y) * high + lo);
            }
        }

        let n = self.state_count();
        let mut succ = Vec::with_capacity(n * new_letters);
        for s in 0..n {
            for l in 0..new_letters {
                let mut targets: Vec<u32> = (0..k).map(|y| self.delta[s * old_letters + expand[l * k + y]]).collect();
                targets.sort_unstable();
                targets.dedup();
                succ.push(targets);
            }
        }

        let mut seen = vec![false; n];
        seen[0] = true;
        let mut initial = vec![0u32];
        let mut i = 0;
        while i < initial.len() {
            let s = initial[i] as usize;
            for &t in &succ[s * new_letters] {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    initial.push(t);
                }
            }
            i += 1;
        }
        initial.sort_unstable();

        Ok(TupleNfa { base, tracks, initial, succ, accepting: self.accepting.clone() })
    }

    /// The unique minimal complete automaton for the same language, in
    /// canonical numbering (see [`canonical_numbering`](Self::canonical_numbering)).
    pub fn minimize(&self) -> TupleDfa {
        let n = self.state_count();
        let letters = self.letter_count();
        let mut class: Vec<u32> = self.accepting.iter().map(|&a| a as u32).collect();
        let mut classes = {
            let mut seen = [false; 2];
            for &c in &class {
                seen[c as usize] = true;
            }
            seen.iter().filter(|&&s| s).count()
        };
        // Moore refinement: split by (class, successor classes) until stable
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(n);
            let mut next = Vec::with_capacity(n);
            let mut sig = Vec::with_capacity(letters + 1);
            for s in 0..n {
                sig.clear();
                sig.push(class[s]);
                sig.extend(self.delta[s * letters..(s + 1) * letters].iter().map(|&t| class[t as usize]));
                let fresh = ids.len() as u32;
                let id = *ids.entry(sig.clone()).or_insert(fresh);
                next.push(id);
            }
            let count = ids.len();
            class = next;
            if count == classes {
                break;
            }
            classes = count;
        }

        let mut delta = vec![0u32; classes * letters];
        let mut accepting = vec![false; classes];
        for s in 0..n {
            let c = class[s] as usize;
            accepting[c] = self.accepting[s];
            for l in 0..letters {
                delta[c * letters + l] = class[self.delta[s * letters + l] as usize];
            }
        }
        // the initial state must be class 0 for canonical_numbering
        let init = class[0] as usize;
        let quotient = TupleDfa { base: self.base, tracks: self.tracks.clone(), delta, accepting };
        quotient.renumber_from(init)
    }

    /// Renumbers states in breadth-first order from the initial state,
    /// exploring letters in increasing order, and drops unreachable states.
    pub fn canonical_numbering(&self) -> TupleDfa {
        self.renumber_from(0)
    }

    fn renumber_from(&self, init: usize) -> TupleDfa {
        let letters = self.letter_count();
        let mut index = vec![u32::MAX; self.state_count()];
        index[init] = 0;
        let mut order = vec![init];
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for l in 0..letters {
                let t = self.delta[s * letters + l] as usize;
                if index[t] == u32::MAX {
                    index[t] = order.len() as u32;
                    order.push(t);
                }
            }
            i += 1;
        }
        let mut delta = Vec::with_capacity(order.len() * letters);
        for &s in &order {
            delta.extend(self.delta[s * letters..(s + 1) * letters].iter().map(|&t| index[t as usize]));
        }
        TupleDfa {
            base: self.base,
            tracks: self.tracks.clone(),
            delta,
            accepting: order.iter().map(|&s| self.accepting[s]).collect(),
        }
    }

    /// Language equality, decided on minimal automata.
    pub fn equivalent(&self, other: &TupleDfa) -> bool {
        self.tracks == other.tracks && self.minimize() == other.minimize()
    }
}

impl TupleNfa {
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn tracks(&self) -> &[String] {
        &self.tracks
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn letter_count(&self) -> usize {
        letter_count(self.base, self.tracks.len())
    }

    pub fn initial_states(&self) -> &[u32] {
        &self.initial
    }

    /// Direct simulation on a word, tracking the set of current states.
    pub fn accepts_word(&self, letters: &[usize]) -> bool {
        let width = self.letter_count();
        let mut current = self.initial.clone();
        for &l in letters {
            let mut next: Vec<u32> =
                current.iter().flat_map(|&s| self.succ[s as usize * width + l].iter().copied()).collect();
            next.sort_unstable();
            next.dedup();
            current = next;
        }
        current.iter().any(|&s| self.accepting[s as usize])
    }

    /// Subset construction. The result is complete; the empty subset becomes
    /// the sink.
    pub fn determinize(&self) -> TupleDfa {
        let width = self.letter_count();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(self.initial.clone(), 0)]);
        let mut order = vec![self.initial.clone()];
        let mut delta = Vec::new();
        let mut scratch: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            for l in 0..width {
                scratch.clear();
                for &s in &order[i] {
                    scratch.extend_from_slice(&self.succ[s as usize * width + l]);
                }
                scratch.sort_unstable();
                scratch.dedup();
                let id = match index.get(&scratch) {
                    Some(&id) => id,
                    None => {
                        let id = order.len() as u32;
                        index.insert(scratch.clone(), id);
                        order.push(scratch.clone());
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = order.iter().map(|set| set.iter().any(|&s| self.accepting[s as usize])).collect();
        TupleDfa { base: self.base, tracks: self.tracks.clone(), delta, accepting }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::builtins::{addition, comparison};
    use crate::logic::Rel;

    fn vals(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn letters_round_trip() {
        for l in 0..27 {
            assert_eq!(encode_letter(3, &decode_letter(3, 3, l)), l);
        }
        assert_eq!(decode_letter(2, 3, 6), vec![1, 1, 0]);
    }

    #[test]
    fn product_idempotent_and_contradiction() {
        let x = addition(2, "x", "y", "z").unwrap();
        assert!(x.product(&x, BoolOp::And).unwrap().equivalent(&x));
        let none = x.product(&x.complement(), BoolOp::And).unwrap().minimize();
        assert_eq!(none.state_count(), 1);
        assert!(!none.is_accepting(0));
    }

    #[test]
    fn product_of_sum_and_order() {
        let sum = addition(2, "x", "y", "n").unwrap();
        let lt = comparison(2, "x", Rel::Lt, "y").unwrap();
        let both = sum.product(&lt, BoolOp::And).unwrap();
        assert_eq!(both.tracks(), &["n".to_string(), "x".into(), "y".into()]);
        assert!(both.accepts(&vals(&[("x", 1), ("y", 2), ("n", 3)])).unwrap());
        assert!(!both.accepts(&vals(&[("x", 2), ("y", 1), ("n", 3)])).unwrap());
    }

    #[test]
    fn complement_involution() {
        let a = addition(2, "x", "y", "z").unwrap();
        assert_eq!(a.complement().complement().minimize(), a.minimize());
        let u = TupleDfa::universal(2, vec!["x".into()]);
        let c = u.complement().minimize();
        assert_eq!(c.state_count(), 1);
        assert_eq!(c.live_state_count(), 0);
    }

    #[test]
    fn projection_allows_longer_witnesses() {
        // E y: y = x + x ; x = 1 needs y = 2 which is longer than x
        let double = addition(2, "x", "x", "y").unwrap();
        let nfa = double.project("y").unwrap();
        let dfa = nfa.determinize().minimize();
        assert_eq!(dfa.tracks(), &["x".to_string()]);
        assert_eq!(dfa.state_count(), 1);
        assert!(dfa.accepts(&vals(&[("x", 1)])).unwrap());
        assert!(matches!(double.project("w"), Err(Error::UnknownTrack(_))));
    }

    #[test]
    fn minimize_empty_language() {
        let e = TupleDfa::empty(2, vec!["a".into(), "b".into()]);
        let m = e.minimize();
        assert_eq!(m.state_count(), 1);
        assert!(!m.is_accepting(0));
    }

    #[test]
    fn accepts_requires_all_tracks() {
        let a = addition(2, "x", "y", "z").unwrap();
        assert!(matches!(a.accepts(&vals(&[("x", 1)])), Err(Error::MissingVariable(_))));
        assert!(a.accepts(&vals(&[("x", 1), ("y", 1), ("z", 2)])).unwrap());
        assert!(!a.accepts(&vals(&[("x", 1), ("y", 1), ("z", 3)])).unwrap());
    }

    #[test]
    fn base_mismatch_is_reported() {
        let a = addition(2, "x", "y", "z").unwrap();
        let b = addition(3, "x", "y", "z").unwrap();
        assert_eq!(a.product(&b, BoolOp::And).unwrap_err(), Error::BaseMismatch(2, 3));
    }
}
