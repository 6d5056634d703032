use std::fmt::Write as _;
use std::fs;

use autoseq::automata::{dfao_to_dot, tuple_dfa_to_dot};
use autoseq::linalg::Rational;
use autoseq::linrep::{canonical_form, extract, serialize_series, series_equal, RationalSeries};
use autoseq::logic::{compile, decide, parse_formula};
use autoseq::pipelines::{reproduce, within_tolerance, Target};
use autoseq::spectral::{
    dominant_ratio, fit_closed_form, min_poly, monotonicity_scan, pattern_values, rational_roots, DigitPattern,
    RootFactorization,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::oracle::Oracle;
use crate::session::{load_file, Loaded, Session};
use crate::{Command, Outcome};

const WITNESS_LIMIT: u64 = 10_000;
const PAD_CHECK_LIMIT: u64 = 1000;

pub fn dispatch(session: &mut Session, command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Def { name, path } => def(session, &name, &path),
        Command::Eval { formula, save } => eval(session, &formula, save.as_deref()),
        Command::Count { name, index, formula, minimize, save, pad } => {
            count(session, &name, &index, &formula, minimize, save.as_deref(), pad)
        }
        Command::Values { rep, from, to, oracle, pad } => values(session, &rep, from, to, oracle.as_deref(), pad),
        Command::Compare { a, b } => compare(session, &a, &b),
        Command::Minpoly { rep, digit, minimize } => minpoly(session, &rep, digit, minimize),
        Command::Closedform { rep, pattern, minimize, upto } => closedform(session, &rep, &pattern, minimize, upto),
        Command::Dominant { a, b, pattern, root, t_max, expect } => {
            dominant(session, &a, &b, &pattern, &root, t_max, expect.as_deref())
        }
        Command::ScanMonotone { rep, from, to } => scan(session, &rep, from, to),
        Command::Reproduce { target } => run_reproduce(&target),
        Command::ExportDot { what, sequence, output } => export_dot(session, &what, sequence, output.as_deref()),
    }
}

fn ok(text: String, json: Value) -> Outcome {
    Outcome { text, json, ok: true }
}

fn write_file(path: &str, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_string(), source })
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("`{s}` is not a rational number")))
}

fn prepare(series: RationalSeries, minimize: bool) -> RationalSeries {
    if minimize {
        RationalSeries::new(canonical_form(&series.rep), series.provenance)
    } else {
        series
    }
}

fn roots_text(f: &RootFactorization) -> String {
    if f.roots.is_empty() {
        return "none".into();
    }
    f.roots.iter().map(|(r, m)| format!("{r} (x{m})")).collect::<Vec<_>>().join(", ")
}

fn roots_json(f: &RootFactorization) -> Value {
    json!({
        "roots": f.roots.iter().map(|(r, m)| json!({ "root": r.to_string(), "multiplicity": m })).collect::<Vec<_>>(),
        "remainder": f.remainder.to_string(),
    })
}

fn def(session: &mut Session, name: &str, path: &str) -> Result<Outcome, CliError> {
    let Loaded::Sequence(dfao) = load_file(path)? else {
        return Err(CliError::Usage(format!("{path} holds a representation, not a DFAO")));
    };
    let (states, base, outputs) = (dfao.state_count(), dfao.base(), dfao.output_alphabet());
    session.bind_sequence(name, dfao)?;
    Ok(ok(
        format!("bound {name}: {states} states, base {base}, outputs {outputs:?}"),
        json!({ "name": name, "states": states, "base": base, "outputs": outputs }),
    ))
}

fn eval(session: &Session, formula: &str, save: Option<&str>) -> Result<Outcome, CliError> {
    let f = parse_formula(formula)?;
    let a = compile(&f, &session.env)?;
    let free: Vec<String> = a.tracks().to_vec();
    let states = a.live_state_count();
    let shown = if free.is_empty() { "(none)".to_string() } else { free.join(",") };
    let mut text = format!("{states} states, free variables {shown}\n");
    let truth = if free.is_empty() { Some(decide(&f, &session.env)?) } else { None };
    if let Some(t) = truth {
        writeln!(text, "{}", if t { "TRUE" } else { "FALSE" }).unwrap();
    }
    if let Some(path) = save {
        write_file(path, &tuple_dfa_to_dot(&a))?;
        writeln!(text, "wrote {path}").unwrap();
    }
    Ok(ok(text, json!({ "states": states, "free_variables": free, "value": truth })))
}

fn count(
    session: &mut Session,
    name: &str,
    index: &str,
    formula: &str,
    minimize: bool,
    save: Option<&str>,
    pad: Option<usize>,
) -> Result<Outcome, CliError> {
    let f = parse_formula(formula)?;
    if !f.free_vars().contains(index) {
        return Err(CliError::Usage(format!("index variable `{index}` is not free in the formula")));
    }
    let a = compile(&f, &session.env)?;
    let rep = extract(&a, index)?;
    let rank = rep.rank();
    let mut text = format!("{name}: automaton {} states, rank {rank}", a.live_state_count());
    let mut data = json!({ "name": name, "states": a.live_state_count(), "rank": rank });
    let stored = if minimize {
        let canon = canonical_form(&rep);
        write!(text, ", minimized rank {}", canon.rank()).unwrap();
        data["minimized_rank"] = json!(canon.rank());
        canon
    } else {
        rep
    };
    text.push('\n');
    let mut all_ok = true;
    if let Some(j) = pad {
        let stable = stored.is_padding_stable(PAD_CHECK_LIMIT, j);
        all_ok = stable;
        writeln!(
            text,
            "padding with {j} zeros, n <= {PAD_CHECK_LIMIT}: {}",
            if stable { "stable" } else { "CHANGES VALUES" }
        )
        .unwrap();
        data["padding_stable"] = json!(stable);
    }
    let series = RationalSeries::new(stored, formula);
    if let Some(path) = save {
        write_file(path, &serialize_series(&series))?;
        writeln!(text, "wrote {path}").unwrap();
    }
    session.bind_series(name, series)?;
    Ok(Outcome { text, json: data, ok: all_ok })
}

fn values(
    session: &Session,
    rep: &str,
    from: u64,
    to: u64,
    oracle: Option<&str>,
    pad: Option<usize>,
) -> Result<Outcome, CliError> {
    let series = session.series(rep)?;
    let oracle: Option<Oracle> = oracle.map(str::parse).transpose()?;
    let vals = series.rep.evaluate_range(from, to);
    let expected = oracle.as_ref().filter(|_| from <= to).map(|o| o.values(from, to));
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all_ok = true;
    for (i, (n, v)) in (from..=to).zip(&vals).enumerate() {
        write!(text, "{n} {v}").unwrap();
        let mut row = json!({ "n": n, "value": v.to_string() });
        if let Some(j) = pad {
            let p = series.rep.evaluate_padded(n, j);
            let same = &p == v;
            all_ok &= same;
            write!(text, " padded {p}{}", if same { "" } else { " CHANGED" }).unwrap();
            row["padded"] = json!(p.to_string());
        }
        if let Some(exp) = &expected {
            let e = exp[i];
            let m = *v == Rational::from_integer(e.into());
            all_ok &= m;
            write!(text, " {e} {}", if m { "MATCH" } else { "MISMATCH" }).unwrap();
            row["oracle"] = json!(e.to_string());
            row["match"] = json!(m);
        }
        text.push('\n');
        rows.push(row);
    }
    Ok(Outcome { text, json: json!({ "rows": rows }), ok: all_ok })
}

fn compare(session: &Session, a: &str, b: &str) -> Result<Outcome, CliError> {
    let (sa, sb) = (session.series(a)?, session.series(b)?);
    let equal = series_equal(&sa.rep, &sb.rep)?;
    if equal {
        return Ok(ok("EQUAL".into(), json!({ "equal": true })));
    }
    let (va, vb) = (sa.rep.evaluate_range(0, WITNESS_LIMIT), sb.rep.evaluate_range(0, WITNESS_LIMIT));
    let witness = va.iter().zip(&vb).position(|(x, y)| x != y);
    Ok(ok(
        match witness {
            Some(n) => format!("DIFFER at n = {n} ({} vs {})", va[n], vb[n]),
            None => format!("DIFFER (no witness n <= {WITNESS_LIMIT})"),
        },
        json!({ "equal": false, "witness": witness }),
    ))
}

fn minpoly(session: &Session, rep: &str, digit: u32, minimize: bool) -> Result<Outcome, CliError> {
    let series = prepare(session.series(rep)?, minimize);
    let base = series.rep.base();
    if digit >= base {
        return Err(autoseq::Error::DigitOutOfRange { digit, base }.into());
    }
    let p = min_poly(series.rep.gamma(digit));
    let f = rational_roots(&p);
    let text =
        format!("rank {}\nmin_poly: {p}\nroots: {}\nremainder: {}\n", series.rep.rank(), roots_text(&f), f.remainder);
    let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    Ok(ok(
        text,
        json!({ "rank": series.rep.rank(), "polynomial": p.to_string(), "coefficients": coeffs, "factorization": roots_json(&f) }),
    ))
}

fn closedform(session: &Session, rep: &str, pattern: &str, minimize: bool, upto: u64) -> Result<Outcome, CliError> {
    let series = prepare(session.series(rep)?, minimize);
    let pat: DigitPattern = pattern.parse()?;
    let form = fit_closed_form(&series.rep, &pat)?;
    let mut text = format!(
        "pattern: {pat}\nrecurrence: {}\nroots: {}\nremainder: {}\n",
        form.recurrence,
        roots_text(&form.roots),
        form.roots.remainder
    );
    match &form.terms {
        Some(_) => writeln!(text, "closed form: {form}").unwrap(),
        None => writeln!(text, "no closed form over the rationals; {form}").unwrap(),
    }
    let t_min = pat.t_min();
    let vals = if t_min <= upto { pattern_values(&series.rep, &pat, t_min, upto)? } else { Vec::new() };
    let mut rows = Vec::new();
    let mut all_ok = true;
    for (t, v) in (t_min..).zip(&vals) {
        let agrees = form.eval(t).as_ref() == Some(v);
        all_ok &= agrees;
        writeln!(text, "{t} {v}{}", if agrees { "" } else { " (closed form disagrees)" }).unwrap();
        rows.push(json!({ "t": t, "value": v.to_string() }));
    }
    let terms: Option<Vec<Value>> = form.terms.as_ref().map(|ts| {
        ts.iter()
            .map(|t| json!({ "coefficient": t.coeff.to_string(), "root": t.root.to_string(), "power": t.power }))
            .collect()
    });
    let exceptions: Vec<Value> =
        form.exceptions.iter().map(|(t, v)| json!({ "t": t, "value": v.to_string() })).collect();
    Ok(Outcome {
        text,
        json: json!({
            "pattern": pat.to_string(),
            "recurrence": form.recurrence.to_string(),
            "factorization": roots_json(&form.roots),
            "t0": form.t0,
            "terms": terms,
            "exceptions": exceptions,
            "values": rows,
        }),
        ok: all_ok,
    })
}

#[allow(clippy::too_many_arguments)]
fn dominant(
    session: &Session,
    a: &str,
    b: &str,
    pattern: &str,
    root: &str,
    t_max: u64,
    expect: Option<&str>,
) -> Result<Outcome, CliError> {
    let diff = session.series(a)?.rep.difference(&session.series(b)?.rep)?;
    let pat: DigitPattern = pattern.parse()?;
    let root = parse_rational(root)?;
    let analysis = dominant_ratio(&diff, &pat, &root, t_max)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for row in &analysis.table {
        writeln!(text, "{} {} {:.9e}", row.t, row.value, row.decimal()).unwrap();
        rows.push(json!({ "t": row.t, "value": row.value.to_string(), "ratio": row.ratio.to_string(), "decimal": row.decimal() }));
    }
    writeln!(text, "stabilized: {}", if analysis.stabilized { "yes" } else { "no" }).unwrap();
    match analysis.n0 {
        Some(n0) => writeln!(text, "positive for all sampled t >= {n0}").unwrap(),
        None => writeln!(text, "not positive at t = {t_max}").unwrap(),
    }
    let coef = analysis.coefficient.as_ref().map(ToString::to_string);
    writeln!(text, "exact coefficient of ({root})^t: {}", coef.as_deref().unwrap_or("undetermined (repeated root)"))
        .unwrap();
    let mut data = json!({
        "root": root.to_string(),
        "table": rows,
        "stabilized": analysis.stabilized,
        "n0": analysis.n0,
        "coefficient": coef,
    });
    let mut all_ok = true;
    if let Some(e) = expect {
        let expected = parse_rational(e)?;
        let last = analysis.last_ratio().cloned().unwrap_or_default();
        let matched = analysis.stabilized && within_tolerance(&last, &expected);
        all_ok = matched;
        writeln!(text, "expected {expected}: {}", if matched { "MATCH" } else { "DEVIATION" }).unwrap();
        data["expected"] = json!(expected.to_string());
        data["matches_expected"] = json!(matched);
    }
    Ok(Outcome { text, json: data, ok: all_ok })
}

fn scan(session: &Session, rep: &str, from: u64, to: u64) -> Result<Outcome, CliError> {
    if from > to {
        return Err(CliError::Usage(format!("empty range [{from}, {to}]")));
    }
    let series = session.series(rep)?;
    let violations = monotonicity_scan(&series.rep, from, to);
    let text = if violations.is_empty() {
        format!("no violations in [{from}, {to}]")
    } else {
        format!("{} violations in [{from}, {to}]: {violations:?}", violations.len())
    };
    Ok(ok(text, json!({ "from": from, "to": to, "violations": violations })))
}

fn run_reproduce(target: &str) -> Result<Outcome, CliError> {
    let targets: Vec<Target> = if target == "all" { Target::ALL.to_vec() } else { vec![target.parse()?] };
    let mut text = String::new();
    let mut reports = Vec::new();
    for t in targets {
        let report = reproduce(t)?;
        writeln!(text, "{report}").unwrap();
        reports.push(report);
    }
    let all_ok = reports.iter().all(|r| r.passed());
    let json = if reports.len() == 1 { serde_json::to_value(&reports[0]) } else { serde_json::to_value(&reports) }
        .expect("reports serialize");
    Ok(Outcome { text, json: json!({ "passed": all_ok, "report": json }), ok: all_ok })
}

fn export_dot(session: &Session, what: &str, sequence: bool, output: Option<&str>) -> Result<Outcome, CliError> {
    let dot = if sequence {
        let d = session.env.get(what).ok_or_else(|| autoseq::Error::UnboundSequence(what.to_string()))?;
        dfao_to_dot(d)
    } else {
        tuple_dfa_to_dot(&compile(&parse_formula(what)?, &session.env)?)
    };
    match output {
        Some(path) => {
            write_file(path, &dot)?;
            Ok(ok(format!("wrote {path}"), json!({ "path": path })))
        }
        None => Ok(ok(dot.clone(), json!({ "dot": dot }))),
    }
}
