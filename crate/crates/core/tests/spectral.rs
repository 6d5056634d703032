use autoseq::formulas::{tuple_formula, R2A};
use autoseq::linalg::{rat, Rational};
use autoseq::linrep::{canonical_form, deserialize, extract, LinearRepresentation};
use autoseq::logic::{compile, parse_formula, SequenceBinding};
use autoseq::oracles::{brute_r, rs_table, AutomaticSet, PairOrder, TupleKind};
use autoseq::pipelines::{r2_pattern_min_poly, r5_min_poly, R2_MINIMAL};
use autoseq::spectral::{dominant_ratio, fit_closed_form, min_poly, pattern_value, rational_roots, DigitPattern};
use num_traits::ToPrimitive;

fn rep_of(formula: &str) -> LinearRepresentation {
    let a = compile(&parse_formula(formula).unwrap(), &SequenceBinding::builtin()).unwrap();
    extract(&a, "n").unwrap()
}

fn oracle_r2a(n: u64) -> Rational {
    rat(brute_r(PairOrder::Less, AutomaticSet::A, n) as i64)
}

#[test]
fn r2a_min_poly_has_roots_0_1_2_minus_2() {
    let rep = deserialize(R2_MINIMAL).unwrap();
    for d in 0..2 {
        let p = min_poly(rep.gamma(d));
        assert_eq!(p, r2_pattern_min_poly());
        let f = rational_roots(&p);
        assert!(f.splits());
        assert_eq!(f.roots.iter().map(|(r, _)| r.clone()).collect::<Vec<_>>(), [-2, 0, 1, 2].map(rat));
    }
}

#[test]
fn all_ones_closed_form() {
    let rep = canonical_form(&rep_of(R2A));
    let pat: DigitPattern = "1^t".parse().unwrap();
    let form = fit_closed_form(&rep, &pat).unwrap();
    assert_eq!(form.coefficient(&rat(2)), Some(rat(1) / rat(8)));
    assert_eq!(form.coefficient(&rat(-2)), Some(rat(1) / rat(8)));
    assert_eq!(form.coefficient(&rat(1)), Some(rat(0)));
    for t in 1..=30u64 {
        let n = (1u64 << t) - 1;
        let want = (rat(2).pow(t as i32) + rat(-2).pow(t as i32)) / rat(8);
        assert_eq!(form.eval(t), Some(want.clone()), "t = {t}");
        if t <= 12 {
            assert_eq!(want, oracle_r2a(n), "t = {t}");
        }
    }
}

#[test]
fn one_zeros_one_closed_form() {
    let rep = canonical_form(&rep_of(R2A));
    let pat: DigitPattern = "1 0^(t-1) 1".parse().unwrap();
    let form = fit_closed_form(&rep, &pat).unwrap();
    for t in 1..=14u64 {
        let n = pat.value(2, t).unwrap().to_u64().unwrap();
        assert_eq!(n, (1 << t) + 1);
        assert_eq!(form.eval(t), Some(oracle_r2a(n)), "t = {t}");
    }
    for t in 2..=40u64 {
        let want = rat(2) / rat(3) + rat(2).pow(t as i32) / rat(8) - rat(-2).pow(t as i32) / rat(24);
        assert_eq!(form.eval(t), Some(want.clone()));
        assert_eq!(pattern_value(&rep, &pat, t).unwrap(), want);
    }
}

#[test]
fn fit_matches_values_on_other_patterns() {
    // every pattern over a finite representation has some recurrence
    let rep = deserialize(R2_MINIMAL).unwrap();
    for p in ["10^t", "1^t 0", "11 0^t", "0^t"] {
        let pat: DigitPattern = p.parse().unwrap();
        let form = fit_closed_form(&rep, &pat).unwrap();
        for t in pat.t_min()..=20 {
            assert_eq!(form.eval(t), Some(pattern_value(&rep, &pat, t).unwrap()), "{p} at t = {t}");
        }
    }
}

#[test]
fn r5_structure() {
    let rep = rep_of(&tuple_formula(5, TupleKind::R, 0));
    assert_eq!(rep.rank(), 160);
    let p = min_poly(rep.gamma(0));
    assert_eq!(p, r5_min_poly());
    let f = rational_roots(&p);
    assert_eq!(f.multiplicity(&rat(0)), 4);
    assert_eq!(f.remainder.degree(), 4);
    let table = rs_table(5, TupleKind::R, 1 << 10);
    for t in 0..=10u64 {
        let n = 1u64 << t;
        assert_eq!(rep.evaluate(n), rat(table[n as usize] as i64));
    }
}

#[test]
fn dominant_analysis_of_powers_of_two() {
    // number of pairs (x, y) with x + y = n is n + 1, so along 1 0^t it is 2^t + 1
    let rep = rep_of("n=x+y");
    let pat: DigitPattern = "1 0^t".parse().unwrap();
    let a = dominant_ratio(&rep, &pat, &rat(2), 30).unwrap();
    assert!(a.stabilized);
    assert_eq!(a.n0, Some(0));
    assert_eq!(a.coefficient, Some(rat(1)));
    assert_eq!(a.table[3].value, rat(9));
}
