//! Formula parser.
//!
//! ```text
//! var     = [a-z][a-z0-9]*
//! term    = (var | nat) ('+' (var | nat))*
//! atom    = term rel term | Name '[' var ']' '=' '@' nat
//! rel     = '=' | '!=' | '<' | '<=' | '>' | '>='
//! formula = atom | '~' formula | formula '&' formula | formula '|' formula
//!         | formula '=>' formula | formula '<=>' formula
//!         | 'E' vars ':' formula | 'A' vars ':' formula | '(' formula ')'
//! ```
//!
//! Precedence from tightest: `~`, `&`, `|`, `=>`, `<=>`. `&`, `|` and `<=>`
//! associate to the left, `=>` to the right. A quantifier body extends as
//! far right as possible.
//!
//! Bound variables are renamed after parsing so that every quantifier binds
//! a name used nowhere else; fresh names carry a `#n` suffix.

use std::collections::{BTreeSet, HashMap};

use super::ast::{Formula, Rel, Summand, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(String),
    Name(String),
    Nat(u64),
    Plus,
    Star,
    Rel(Rel),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    LBracket,
    RBracket,
    At,
    Colon,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, message: String| Error::Formula { pos, message };
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let rest = &text[i..];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = if c.is_ascii_lowercase() {
            let len = rest.find(|ch: char| !(ch.is_ascii_lowercase() || ch.is_ascii_digit())).unwrap_or(rest.len());
            (Tok::Var(rest[..len].to_string()), len)
        } else if c.is_ascii_uppercase() {
            let len = rest.find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_')).unwrap_or(rest.len());
            (Tok::Name(rest[..len].to_string()), len)
        } else if c.is_ascii_digit() {
            let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            let n = rest[..len]
                .parse::<u64>()
                .map_err(|_| err(start, format!("number `{}` is too large", &rest[..len])))?;
            (Tok::Nat(n), len)
        } else if rest.starts_with("<=>") {
            (Tok::Iff, 3)
        } else if rest.starts_with("=>") {
            (Tok::Implies, 2)
        } else if rest.starts_with("<=") {
            (Tok::Rel(Rel::Le), 2)
        } else if rest.starts_with(">=") {
            (Tok::Rel(Rel::Ge), 2)
        } else if rest.starts_with("!=") {
            (Tok::Rel(Rel::Ne), 2)
        } else {
            let tok = match c {
                '=' => Tok::Rel(Rel::Eq),
                '<' => Tok::Rel(Rel::Lt),
                '>' => Tok::Rel(Rel::Gt),
                '+' => Tok::Plus,
                '*' => Tok::Star,
                '~' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '@' => Tok::At,
                ':' => Tok::Colon,
                ',' => Tok::Comma,
                other => return Err(err(start, format!("unexpected character `{other}`"))),
            };
            (tok, 1)
        };
        out.push((start, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Formula { pos: self.offset(), message: message.into() })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implication()?;
            lhs = Formula::Iff(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        if let Some(Tok::Name(q)) = self.peek() {
            let is_quantifier = (q == "E" || q == "A") && matches!(self.peek_at(1), Some(Tok::Var(_)));
            if is_quantifier {
                let universal = q == "A";
                self.pos += 1;
                let vars = self.var_list()?;
                self.expect(Tok::Colon, "`:` after quantified variables")?;
                let body = Box::new(self.formula()?);
                return Ok(if universal { Formula::ForAll(vars, body) } else { Formula::Exists(vars, body) });
            }
        }
        if self.eat(&Tok::LParen) {
            let inner = self.formula()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(inner);
        }
        self.atom()
    }

    fn var_list(&mut self) -> Result<Vec<String>> {
        let mut vars = vec![self.var()?];
        while self.eat(&Tok::Comma) {
            vars.push(self.var()?);
        }
        Ok(vars)
    }

    fn var(&mut self) -> Result<String> {
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => self.error("expected a variable"),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        if let (Some(Tok::Name(name)), Some(Tok::LBracket)) = (self.peek().cloned(), self.peek_at(1)) {
            self.pos += 2;
            let index = match self.peek().cloned() {
                Some(Tok::Var(v)) => {
                    self.pos += 1;
                    v
                }
                _ => return self.error("sequence index must be a single variable"),
            };
            self.expect(Tok::RBracket, "`]`")?;
            self.expect(Tok::Rel(Rel::Eq), "`=` after sequence lookup")?;
            self.expect(Tok::At, "`@` before an output value")?;
            let value = match self.peek() {
                Some(Tok::Nat(n)) => *n as i64,
                _ => return self.error("expected an output value after `@`"),
            };
            self.pos += 1;
            return Ok(Formula::Seq { name, index, value });
        }
        let lhs = self.term()?;
        let rel = match self.peek() {
            Some(Tok::Rel(r)) => *r,
            _ => return self.error("expected a comparison"),
        };
        self.pos += 1;
        let rhs = self.term()?;
        Ok(Formula::Linear { lhs, rel, rhs })
    }

    fn term(&mut self) -> Result<Term> {
        let mut parts = vec![self.summand()?];
        loop {
            if self.eat(&Tok::Plus) {
                parts.push(self.summand()?);
            } else if self.peek() == Some(&Tok::Star) {
                return Err(Error::Unsupported(format!(
                    "multiplication at position {} is not in the supported theory",
                    self.offset()
                )));
            } else {
                return Ok(Term(parts));
            }
        }
    }

    fn summand(&mut self) -> Result<Summand> {
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Summand::Var(v))
            }
            Some(Tok::Nat(n)) => {
                self.pos += 1;
                Ok(Summand::Const(n))
            }
            _ => self.error("expected a variable or a natural number"),
        }
    }
}

/// Parses a formula and renames bound variables apart.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, end: text.len() };
    if parser.peek().is_none() {
        return parser.error("empty formula");
    }
    let f = parser.formula()?;
    if parser.peek().is_some() {
        return parser.error("unexpected trailing input");
    }
    Ok(rename_bound(&f))
}

/// Gives every quantifier a variable name that is bound nowhere else and
/// is not free anywhere in the formula.
pub fn rename_bound(f: &Formula) -> Formula {
    let mut used: BTreeSet<String> = f.free_vars();
    rename(f, &mut HashMap::new(), &mut used)
}

fn rename(f: &Formula, scope: &mut HashMap<String, Vec<String>>, used: &mut BTreeSet<String>) -> Formula {
    let lookup = |v: &str, scope: &HashMap<String, Vec<String>>| {
        scope.get(v).and_then(|s| s.last()).cloned().unwrap_or_else(|| v.to_string())
    };
    let term = |t: &Term, scope: &HashMap<String, Vec<String>>| {
        Term(
            t.0.iter()
                .map(|s| match s {
                    Summand::Var(v) => Summand::Var(lookup(v, scope)),
                    c => c.clone(),
                })
                .collect(),
        )
    };
    match f {
        Formula::Linear { lhs, rel, rhs } => {
            Formula::Linear { lhs: term(lhs, scope), rel: *rel, rhs: term(rhs, scope) }
        }
        Formula::Seq { name, index, value } => {
            Formula::Seq { name: name.clone(), index: lookup(index, scope), value: *value }
        }
        Formula::Not(a) => Formula::not(rename(a, scope, used)),
        Formula::And(a, b) => Formula::and(rename(a, scope, used), rename(b, scope, used)),
        Formula::Or(a, b) => Formula::or(rename(a, scope, used), rename(b, scope, used)),
        Formula::Implies(a, b) => Formula::Implies(Box::new(rename(a, scope, used)), Box::new(rename(b, scope, used))),
        Formula::Iff(a, b) => Formula::Iff(Box::new(rename(a, scope, used)), Box::new(rename(b, scope, used))),
        Formula::Exists(vars, body) | Formula::ForAll(vars, body) => {
            let mut fresh_vars = Vec::with_capacity(vars.len());
            for v in vars {
                let mut fresh = v.clone();
                let mut n = 1;
                while used.contains(&fresh) || fresh_vars.contains(&fresh) {
                    fresh = format!("{v}#{n}");
                    n += 1;
                }
                used.insert(fresh.clone());
                scope.entry(v.clone()).or_default().push(fresh.clone());
                fresh_vars.push(fresh);
            }
            let body = Box::new(rename(body, scope, used));
            for v in vars {
                scope.get_mut(v).map(|s| s.pop());
            }
            match f {
                Formula::Exists(..) => Formula::Exists(fresh_vars, body),
                _ => Formula::ForAll(fresh_vars, body),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(lhs: &[&str], rel: Rel, rhs: &[&str]) -> Formula {
        let term = |parts: &[&str]| {
            Term(
                parts
                    .iter()
                    .map(|p| match p.parse::<u64>() {
                        Ok(n) => Summand::Const(n),
                        Err(_) => Summand::Var(p.to_string()),
                    })
                    .collect(),
            )
        };
        Formula::Linear { lhs: term(lhs), rel, rhs: term(rhs) }
    }

    fn seq(name: &str, index: &str, value: i64) -> Formula {
        Formula::Seq { name: name.into(), index: index.into(), value }
    }

    #[test]
    fn r2a_formula_is_left_nested() {
        let f = parse_formula("n=x+y & x<y & T[x]=@0 & T[y]=@0").unwrap();
        let expected = Formula::and(
            Formula::and(
                Formula::and(lin(&["n"], Rel::Eq, &["x", "y"]), lin(&["x"], Rel::Lt, &["y"])),
                seq("T", "x", 0),
            ),
            seq("T", "y", 0),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn shifted_formula_has_constant() {
        let f = parse_formula("n+1=x+y & x<=y & TT[x]=@1 & TT[y]=@1").unwrap();
        let Formula::And(left, _) = f else { panic!() };
        let Formula::And(left, _) = *left else { panic!() };
        let Formula::And(atom, le) = *left else { panic!() };
        assert_eq!(*atom, lin(&["n", "1"], Rel::Eq, &["x", "y"]));
        assert_eq!(*le, lin(&["x"], Rel::Le, &["y"]));
    }

    #[test]
    fn nested_quantifiers() {
        let f = parse_formula("A x: E y: y=x+x").unwrap();
        assert_eq!(f, Formula::forall(&["x"], Formula::exists(&["y"], lin(&["y"], Rel::Eq, &["x", "x"]))));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("~a=b & c=d | e=f => g=h <=> i=j").unwrap();
        let expected = Formula::Iff(
            Box::new(Formula::Implies(
                Box::new(Formula::or(
                    Formula::and(Formula::not(lin(&["a"], Rel::Eq, &["b"])), lin(&["c"], Rel::Eq, &["d"])),
                    lin(&["e"], Rel::Eq, &["f"]),
                )),
                Box::new(lin(&["g"], Rel::Eq, &["h"])),
            )),
            Box::new(lin(&["i"], Rel::Eq, &["j"])),
        );
        assert_eq!(f, expected);
        // implication is right associative
        let g = parse_formula("a=a => b=b => c=c").unwrap();
        assert!(matches!(g, Formula::Implies(_, ref r) if matches!(**r, Formula::Implies(..))));
    }

    #[test]
    fn quantifier_body_extends_right() {
        let f = parse_formula("E x: x=y & y<z").unwrap();
        assert!(matches!(f, Formula::Exists(_, ref b) if matches!(**b, Formula::And(..))));
    }

    #[test]
    fn rebound_names_are_renamed() {
        let f = parse_formula("(E x: x=n) & (E x: x<n) & x=x").unwrap();
        let Formula::And(left, _) = &f else { panic!() };
        let Formula::And(a, b) = &**left else { panic!() };
        let (Formula::Exists(va, _), Formula::Exists(vb, _)) = (&**a, &**b) else { panic!() };
        assert_ne!(va, vb);
        assert_ne!(va[0], "x");
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["n", "x"]);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_formula("n=x+ & y") {
            Err(Error::Formula { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("T[x+1]=@0"), Err(Error::Formula { .. })));
        assert!(matches!(parse_formula("T[x]=0"), Err(Error::Formula { .. })));
        assert!(matches!(parse_formula("(x=y"), Err(Error::Formula { .. })));
        assert!(matches!(parse_formula(""), Err(Error::Formula { .. })));
        assert!(matches!(parse_formula("x=y $"), Err(Error::Formula { pos: 4, .. })));
        assert!(matches!(parse_formula("x*y=z"), Err(Error::Unsupported(_))));
    }

    #[test]
    fn multi_variable_quantifier() {
        let f = parse_formula("E x,y: n=x+y").unwrap();
        assert_eq!(f, Formula::exists(&["x", "y"], lin(&["n"], Rel::Eq, &["x", "y"])));
    }
}
