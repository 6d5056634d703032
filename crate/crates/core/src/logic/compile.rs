use std::collections::BTreeMap;

use super::ast::{Formula, Rel, Summand, Term};
use crate::automata::builtins::{addition, comparison, constant, sequence_preimage};
use crate::automata::{BoolOp, Dfao, TupleDfa};
use crate::error::{Error, Result};

/// Named automatic sequences available to formulas. All share one base.
#[derive(Debug, Clone)]
pub struct SequenceBinding {
    base: u32,
    seqs: BTreeMap<String, Dfao>,
}

impl SequenceBinding {
    pub fn new(base: u32) -> Self {
        SequenceBinding { base, seqs: BTreeMap::new() }
    }

    /// `T` (Thue–Morse) and `TT` (twisted Thue–Morse).
    pub fn builtin() -> Self {
        let mut env = SequenceBinding::new(2);
        env.seqs.insert("T".into(), Dfao::thue_morse());
        env.seqs.insert("TT".into(), Dfao::twisted_thue_morse());
        env
    }

    pub fn bind(&mut self, name: &str, dfao: Dfao) -> Result<()> {
        if dfao.base() != self.base {
            return Err(Error::BaseMismatch(self.base, dfao.base()));
        }
        self.seqs.insert(name.to_string(), dfao);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Dfao> {
        self.seqs.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.seqs.keys().map(String::as_str)
    }

    pub fn base(&self) -> u32 {
        self.base
    }
}

struct Compiler<'a> {
    env: &'a SequenceBinding,
    fresh: usize,
}

/// Compiles `f` to the minimal automaton over its free variables (sorted by
/// name) accepting exactly the satisfying assignments.
pub fn compile(f: &Formula, env: &SequenceBinding) -> Result<TupleDfa> {
    for name in f.sequences() {
        if env.get(&name).is_none() {
            return Err(Error::UnboundSequence(name));
        }
    }
    Compiler { env, fresh: 0 }.formula(f)
}

/// Truth value of a sentence.
pub fn decide(f: &Formula, env: &SequenceBinding) -> Result<bool> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(Error::NotASentence(free.into_iter().collect::<Vec<_>>().join(",")));
    }
    let a = compile(f, env)?;
    Ok(a.is_accepting(0))
}

fn eliminate(a: &TupleDfa, var: &str) -> Result<TupleDfa> {
    Ok(a.project(var)?.determinize().minimize())
}

impl Compiler<'_> {
    fn base(&self) -> u32 {
        self.env.base
    }

    fn fresh(&mut self) -> String {
        self.fresh += 1;
        // `$` cannot occur in a parsed variable name
        format!("${}", self.fresh)
    }

    fn formula(&mut self, f: &Formula) -> Result<TupleDfa> {
        Ok(match f {
            Formula::Linear { lhs, rel, rhs } => self.linear(lhs, *rel, rhs)?,
            Formula::Seq { name, index, value } => {
                let seq = self.env.get(name).ok_or_else(|| Error::UnboundSequence(name.clone()))?;
                sequence_preimage(seq, index, *value)?.minimize()
            }
            Formula::Not(a) => self.formula(a)?.complement().minimize(),
            Formula::And(a, b) => self.binary(a, b, BoolOp::And)?,
            Formula::Or(a, b) => self.binary(a, b, BoolOp::Or)?,
            Formula::Implies(a, b) => self.binary(a, b, BoolOp::Implies)?,
            Formula::Iff(a, b) => self.binary(a, b, BoolOp::Iff)?,
            Formula::Exists(vars, body) => {
                let mut a = self.formula(body)?;
                for v in vars.iter().rev() {
                    if a.tracks().contains(v) {
                        a = eliminate(&a, v)?;
                    }
                }
                a
            }
            Formula::ForAll(vars, body) => {
                let mut a = self.formula(body)?;
                for v in vars.iter().rev() {
                    if a.tracks().contains(v) {
                        a = eliminate(&a.complement(), v)?.complement().minimize();
                    }
                }
                a
            }
        })
    }

    fn binary(&mut self, a: &Formula, b: &Formula, op: BoolOp) -> Result<TupleDfa> {
        let a = self.formula(a)?;
        let b = self.formula(b)?;
        Ok(a.product(&b, op)?.minimize())
    }

    /// Reduces one side of a linear atom to a single track, appending the
    /// defining automata to `pieces`. With `target`, the sum is made equal
    /// to that variable instead of a fresh one.
    fn side(&mut self, term: &Term, target: Option<&str>, pieces: &mut Vec<TupleDfa>) -> Result<String> {
        let mut summands: Vec<String> = term.vars().map(str::to_string).collect();
        let c = term.constant();
        let has_const = term.0.iter().any(|s| matches!(s, Summand::Const(_)));
        if c > 0 || (summands.is_empty() && has_const) {
            let aux = self.fresh();
            pieces.push(constant(self.base(), &aux, c)?);
            summands.push(aux);
        }
        if summands.len() == 1 {
            let only = summands.pop().expect("one summand");
            return Ok(match target {
                Some(t) => {
                    pieces.push(comparison(self.base(), &only, Rel::Eq, t)?);
                    t.to_string()
                }
                None => only,
            });
        }
        let mut acc = summands[0].clone();
        for (i, next) in summands.iter().enumerate().skip(1) {
            let out = match target {
                Some(t) if i == summands.len() - 1 => t.to_string(),
                _ => self.fresh(),
            };
            pieces.push(addition(self.base(), &acc, next, &out)?);
            acc = out;
        }
        Ok(acc)
    }

    fn linear(&mut self, lhs: &Term, rel: Rel, rhs: &Term) -> Result<TupleDfa> {
        let single = |t: &Term| match t.0.as_slice() {
            [Summand::Var(v)] => Some(v.clone()),
            _ => None,
        };
        let mut pieces = Vec::new();
        if rel == Rel::Eq && single(lhs).is_some() {
            let v = single(lhs).expect("checked");
            self.side(rhs, Some(&v), &mut pieces)?;
        } else if rel == Rel::Eq && single(rhs).is_some() {
            let v = single(rhs).expect("checked");
            self.side(lhs, Some(&v), &mut pieces)?;
        } else {
            let l = self.side(lhs, None, &mut pieces)?;
            let r = self.side(rhs, None, &mut pieces)?;
            pieces.push(comparison(self.base(), &l, rel, &r)?);
        }

        let is_aux = |t: &str| t.starts_with('$');
        let mut acc: Option<TupleDfa> = None;
        for i in 0..pieces.len() {
            let mut a = match acc.take() {
                None => pieces[i].minimize(),
                Some(prev) => prev.product(&pieces[i], BoolOp::And)?.minimize(),
            };
            let done: Vec<String> = a
                .tracks()
                .iter()
                .filter(|t| is_aux(t) && !pieces[i + 1..].iter().any(|p| p.tracks().contains(t)))
                .cloned()
                .collect();
            for t in done {
                a = eliminate(&a, &t)?;
            }
            acc = Some(a);
        }
        Ok(acc.expect("a linear atom produces at least one piece"))
    }
}
