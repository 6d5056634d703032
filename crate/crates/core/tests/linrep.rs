use autoseq::linalg::rat;
use autoseq::linrep::{canonical_form, deserialize, extract, minimize_rep, series_equal, LinearRepresentation};
use autoseq::logic::{compile, parse_formula, SequenceBinding};

fn rep_of(formula: &str) -> LinearRepresentation {
    let a = compile(&parse_formula(formula).unwrap(), &SequenceBinding::builtin()).unwrap();
    extract(&a, "n").unwrap()
}

fn fixture(name: &str) -> LinearRepresentation {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    deserialize(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn evil(n: u64) -> bool {
    n.count_ones().is_multiple_of(2)
}

#[test]
fn r2_both_forms_minimize_to_fixture() {
    let a = rep_of("n=x+y & x<y & T[x]=@0 & T[y]=@0");
    let b = rep_of("n=x+y & x<y & T[x]=@1 & T[y]=@1");
    assert_eq!((a.rank(), b.rank()), (12, 12));
    assert_eq!(minimize_rep(&a).rank(), 5);
    assert!(series_equal(&a, &b).unwrap());
    let fixed = fixture("r2_minimal.txt");
    assert_eq!(canonical_form(&a), fixed);
    assert_eq!(canonical_form(&b), fixed);
    for n in 0..300u64 {
        let direct = (0..=n).filter(|&x| x < n - x && evil(x) && evil(n - x)).count();
        assert_eq!(a.evaluate(n), rat(direct as i64), "n = {n}");
    }
}

#[test]
fn r3_shifted_forms_minimize_to_fixture() {
    let c = rep_of("n+1=x+y & x<=y & TT[x]=@0 & TT[y]=@0");
    let d = rep_of("n+1=x+y & x<=y & TT[x]=@1 & TT[y]=@1");
    assert_eq!((c.rank(), d.rank()), (20, 20));
    assert!(series_equal(&c, &d).unwrap());
    let fixed = fixture("r3_shifted_minimal.txt");
    assert_eq!(canonical_form(&c), fixed);
    assert_eq!(canonical_form(&d), fixed);
}

#[test]
fn unshifted_r3_forms_differ_at_zero() {
    // (0, 0) is the only way to write 0, and TT[0] = 1
    let c = rep_of("n=x+y & x<=y & TT[x]=@0 & TT[y]=@0");
    let d = rep_of("n=x+y & x<=y & TT[x]=@1 & TT[y]=@1");
    assert_eq!(c.evaluate(0), rat(0));
    assert_eq!(d.evaluate(0), rat(1));
    assert!(!series_equal(&c, &d).unwrap());
}
