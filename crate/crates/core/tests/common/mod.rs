// Property checks shared by the `properties` and `acceptance` targets.
// Each returns Err with the first counterexample.
#![allow(dead_code)]

use std::collections::BTreeMap;

use autoseq::automata::{format_dfao, parse_dfao, TupleDfa};
use autoseq::formulas::{tuple_formula, R2A, R2B, R3C, R3C_SHIFTED, R3D, R3D_SHIFTED};
use autoseq::linalg::{rat, Matrix, Rational};
use autoseq::linrep::{
    canonical_form, deserialize, deserialize_series, extract, minimize_rep, serialize, serialize_series,
    LinearRepresentation, RationalSeries,
};
use autoseq::logic::{compile, parse_formula, Formula, SequenceBinding, Summand, Term};
use autoseq::oracles::{brute_r, rs_table, thue_morse, twisted_tm, AutomaticSet, PairOrder, TupleKind};
use autoseq::pipelines::TT_FILE;
use autoseq::spectral::{annihilates, char_poly, min_poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = std::result::Result<(), String>;

pub const ASSIGNMENTS: usize = 1000;

/// Formulas whose compiled automata are compared against direct evaluation.
/// The quantified ones only need witnesses below the search bound.
pub fn fixture_formulas() -> Vec<String> {
    let mut out: Vec<String> = [R2A, R2B, R3C_SHIFTED, R3D_SHIFTED, R3C, R3D].iter().map(|s| s.to_string()).collect();
    out.push(tuple_formula(3, TupleKind::R, 0));
    out.push(tuple_formula(3, TupleKind::S, 1));
    out.push("E x: n=x+x".into());
    out.push("E x,y: n=x+y & x<y & T[x]=@1 & T[y]=@1".into());
    out.push("A x: x<n => (T[x]=@0 | TT[x]=@0)".into());
    out.push("x<=y+3 & ~(x=y) | T[x]=@1 & TT[y]=@0".into());
    out.push("n=x+x+1 <=> T[n]=@0".into());
    out
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn term_value(t: &Term, asg: &BTreeMap<String, u64>) -> u64 {
    t.0.iter()
        .map(|s| match s {
            Summand::Var(v) => asg[v],
            Summand::Const(c) => *c,
        })
        .sum()
}

/// Reference semantics with quantifiers searched over 0..=bound.
pub fn eval_direct(f: &Formula, env: &SequenceBinding, asg: &mut BTreeMap<String, u64>, bound: u64) -> bool {
    match f {
        Formula::Linear { lhs, rel, rhs } => rel.holds(term_value(lhs, asg).cmp(&term_value(rhs, asg))),
        Formula::Seq { name, index, value } => env.get(name).expect("bound sequence").value(asg[index]) == *value,
        Formula::Not(a) => !eval_direct(a, env, asg, bound),
        Formula::And(a, b) => eval_direct(a, env, asg, bound) && eval_direct(b, env, asg, bound),
        Formula::Or(a, b) => eval_direct(a, env, asg, bound) || eval_direct(b, env, asg, bound),
        Formula::Implies(a, b) => !eval_direct(a, env, asg, bound) || eval_direct(b, env, asg, bound),
        Formula::Iff(a, b) => eval_direct(a, env, asg, bound) == eval_direct(b, env, asg, bound),
        Formula::Exists(vars, body) => quantify(vars, body, env, asg, bound, true),
        Formula::ForAll(vars, body) => quantify(vars, body, env, asg, bound, false),
    }
}

fn quantify(
    vars: &[String],
    body: &Formula,
    env: &SequenceBinding,
    asg: &mut BTreeMap<String, u64>,
    bound: u64,
    exists: bool,
) -> bool {
    let Some((first, rest)) = vars.split_first() else {
        return eval_direct(body, env, asg, bound);
    };
    let saved = asg.get(first).copied();
    let mut result = !exists;
    for x in 0..=bound {
        asg.insert(first.clone(), x);
        if quantify(rest, body, env, asg, bound, exists) == exists {
            result = exists;
            break;
        }
    }
    match saved {
        Some(x) => asg.insert(first.clone(), x),
        None => asg.remove(first),
    };
    result
}

/// Random values below 2^12; half the time the first track is pinned to the
/// sum of the others (plus -1, 0 or 1) so that equations are hit.
fn random_assignment(r: &mut ChaCha8Rng, tracks: &[String]) -> BTreeMap<String, u64> {
    let mut asg: BTreeMap<String, u64> = tracks.iter().map(|t| (t.clone(), r.gen_range(0..4096))).collect();
    if tracks.len() > 1 && r.gen_bool(0.5) {
        let sum: u64 = tracks[1..].iter().map(|t| asg[t]).sum();
        let v = (sum + 1).saturating_sub(r.gen_range(0..3));
        asg.insert(tracks[0].clone(), v);
    }
    asg
}

pub fn compile_matches_direct(formula: &str, seed: u64) -> Check {
    let env = SequenceBinding::builtin();
    let f = parse_formula(formula).map_err(|e| e.to_string())?;
    let a = compile(&f, &env).map_err(|e| e.to_string())?;
    let mut tracks: Vec<String> = a.tracks().to_vec();
    // pin `n` when present, since the fixtures all read n as a sum
    if let Some(i) = tracks.iter().position(|t| t == "n") {
        tracks.swap(0, i);
    }
    let mut r = rng(seed);
    for _ in 0..ASSIGNMENTS {
        let mut asg = random_assignment(&mut r, &tracks);
        let bound = asg.values().max().copied().unwrap_or(0) + 4;
        let want = eval_direct(&f, &env, &mut asg, bound);
        let got = a.accepts(&asg).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("{formula}: automaton says {got} at {asg:?}"));
        }
    }
    Ok(())
}

fn rep_of(formula: &str) -> LinearRepresentation {
    let a = compile(&parse_formula(formula).unwrap(), &SequenceBinding::builtin()).unwrap();
    extract(&a, "n").unwrap()
}

fn automaton_of(formula: &str) -> TupleDfa {
    compile(&parse_formula(formula).unwrap(), &SequenceBinding::builtin()).unwrap()
}

pub fn padding_invariance(seed: u64) -> Check {
    let mut r = rng(seed);
    for formula in [R2A, R3C_SHIFTED, R3D] {
        let a = automaton_of(formula);
        let rep = extract(&a, "n").unwrap();
        let tracks = a.tracks().to_vec();
        for _ in 0..200 {
            let asg = random_assignment(&mut r, &tracks);
            let extra = r.gen_range(1..6);
            if a.accepts(&asg).unwrap() != a.accepts_padded(&asg, extra).unwrap() {
                return Err(format!("{formula}: acceptance changes under {extra} leading zeros at {asg:?}"));
            }
            let n = r.gen_range(0..1u64 << 14);
            if rep.evaluate(n) != rep.evaluate_padded(n, extra) {
                return Err(format!("{formula}: value at n = {n} changes under {extra} leading zeros"));
            }
        }
    }
    Ok(())
}

pub fn minimization_preserves_values() -> Check {
    for formula in [R2A, R2B, R3C_SHIFTED, R3C, R3D] {
        let rep = rep_of(formula);
        let (min, canon) = (minimize_rep(&rep), canonical_form(&rep));
        let want = rep.evaluate_range(0, 2000);
        if min.evaluate_range(0, 2000) != want || canon.evaluate_range(0, 2000) != want {
            return Err(format!("{formula}: minimized values differ below 2001"));
        }
        if min.rank() > rep.rank() || canon.rank() != min.rank() {
            return Err(format!("{formula}: ranks {} -> {} / {}", rep.rank(), min.rank(), canon.rank()));
        }
    }
    Ok(())
}

pub fn random_matrix(r: &mut ChaCha8Rng, n: usize) -> Matrix {
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if r.gen_bool(0.4) {
                        Rational::new(r.gen_range(-4..5).into(), r.gen_range(1..4).into())
                    } else {
                        rat(0)
                    }
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows)
}

pub fn min_poly_properties(seed: u64) -> Check {
    let mut mats: Vec<Matrix> = Vec::new();
    for formula in [R2A, R3C_SHIFTED] {
        let rep = minimize_rep(&rep_of(formula));
        mats.extend(rep.gammas().iter().cloned());
    }
    let mut r = rng(seed);
    for _ in 0..40 {
        let n = r.gen_range(1..7);
        mats.push(random_matrix(&mut r, n));
    }
    // a derogatory case: repeated blocks
    mats.push(Matrix::identity(3).scale(&rat(2)));
    for m in &mats {
        let p = min_poly(m);
        let c = char_poly(m);
        if !p.is_monic() || !annihilates(&p, m) {
            return Err(format!("min_poly {p} does not annihilate"));
        }
        if !p.divides(&c) || c.degree() != m.rows() || !annihilates(&c, m) {
            return Err(format!("min_poly {p} vs char_poly {c}"));
        }
        // no proper monic divisor obtained by dropping a root annihilates
        for (root, _) in autoseq::spectral::rational_roots(&p).roots {
            let (q, rem) = p.div_rem(&autoseq::spectral::RationalPolynomial::linear(&root));
            if rem.is_zero() && annihilates(&q, m) {
                return Err(format!("{p} is not minimal"));
            }
        }
    }
    Ok(())
}

pub fn random_rep(r: &mut ChaCha8Rng) -> LinearRepresentation {
    let base = r.gen_range(2..4);
    let rank = r.gen_range(0..5);
    let vec = |r: &mut ChaCha8Rng| -> Vec<Rational> {
        (0..rank).map(|_| Rational::new(r.gen_range(-9..10).into(), r.gen_range(1..7).into())).collect()
    };
    let u = vec(r);
    let v = vec(r);
    let gamma = (0..base).map(|_| random_matrix(r, rank)).collect();
    LinearRepresentation::new(base, u, gamma, v).unwrap()
}

pub fn serialization_round_trips(seed: u64) -> Check {
    let mut r = rng(seed);
    for _ in 0..200 {
        let rep = random_rep(&mut r);
        let back = deserialize(&serialize(&rep)).map_err(|e| e.to_string())?;
        if back != rep {
            return Err(format!("round trip changed:\n{}", serialize(&rep)));
        }
        let series = RationalSeries::new(rep, "n=x+y\nsecond line");
        let back = deserialize_series(&serialize_series(&series)).map_err(|e| e.to_string())?;
        if back != series {
            return Err("series provenance lost".into());
        }
    }
    let tt = parse_dfao(TT_FILE).map_err(|e| e.to_string())?;
    if format_dfao(&tt) != TT_FILE {
        return Err("TT.txt does not re-serialize byte-identically".into());
    }
    if parse_dfao(&format_dfao(&tt)).map_err(|e| e.to_string())? != tt {
        return Err("DFAO round trip changed the automaton".into());
    }
    Ok(())
}

pub fn oracle_recurrences() -> Check {
    let limit = 1u64 << 15;
    let env = SequenceBinding::builtin();
    let (t, tt) = (env.get("T").unwrap(), env.get("TT").unwrap());
    for n in 0..limit {
        if thue_morse(2 * n) != thue_morse(n) || thue_morse(2 * n + 1) != 1 - thue_morse(n) {
            return Err(format!("Thue-Morse recurrence fails at n = {n}"));
        }
        if n >= 1 && (twisted_tm(2 * n) != 1 - twisted_tm(n) || twisted_tm(2 * n + 1) != twisted_tm(n)) {
            return Err(format!("twisted recurrence fails at n = {n}"));
        }
        if t.value(n) != thue_morse(n) as i64 || tt.value(n) != twisted_tm(n) as i64 {
            return Err(format!("automaton and recurrence disagree at n = {n}"));
        }
    }
    if (twisted_tm(0), twisted_tm(1)) != (1, 0) {
        return Err("twisted initial values".into());
    }
    // R1 = 2 R2 + [n/2 in set] and R3 = R2 + [n/2 in set] for even n
    for set in [AutomaticSet::A, AutomaticSet::B, AutomaticSet::C, AutomaticSet::D] {
        for n in 0..512u64 {
            let half = (n % 2 == 0 && set.contains(n / 2)) as u64;
            let (r1, r2, r3) =
                (brute_r(PairOrder::Any, set, n), brute_r(PairOrder::Less, set, n), brute_r(PairOrder::LessEq, set, n));
            if r1 != 2 * r2 + half || r3 != r2 + half {
                return Err(format!("pair counts inconsistent for {set:?} at n = {n}"));
            }
        }
    }
    // the convolution oracle agrees with direct pair counting
    let r2 = rs_table(2, TupleKind::R, 2048);
    for (n, &c) in r2.iter().enumerate() {
        if c != brute_r(PairOrder::Any, AutomaticSet::A, n as u64) as u128 {
            return Err(format!("rs_table(2) disagrees at n = {n}"));
        }
    }
    Ok(())
}
