use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Comparison between two linear terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Rel {
    /// Whether `lhs rel rhs` holds given `lhs.cmp(rhs)`.
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            Rel::Eq => ord == Ordering::Equal,
            Rel::Ne => ord != Ordering::Equal,
            Rel::Lt => ord == Ordering::Less,
            Rel::Le => ord != Ordering::Greater,
            Rel::Gt => ord == Ordering::Greater,
            Rel::Ge => ord != Ordering::Less,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Summand {
    Var(String),
    Const(u64),
}

/// A sum of variables and natural constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term(pub Vec<Summand>);

impl Term {
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.0.iter().filter_map(|s| match s {
            Summand::Var(v) => Some(v.as_str()),
            Summand::Const(_) => None,
        })
    }

    pub fn constant(&self) -> u64 {
        self.0
            .iter()
            .map(|s| match s {
                Summand::Const(c) => *c,
                Summand::Var(_) => 0,
            })
            .sum()
    }
}

/// First-order formula over naturals with addition and sequence lookups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Linear {
        lhs: Term,
        rel: Rel,
        rhs: Term,
    },
    /// `name[index] = @value`
    Seq {
        name: String,
        index: String,
        value: i64,
    },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    ForAll(Vec<String>, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(vars: &[&str], body: Formula) -> Formula {
        Formula::Exists(vars.iter().map(|v| v.to_string()).collect(), Box::new(body))
    }

    pub fn forall(vars: &[&str], body: Formula) -> Formula {
        Formula::ForAll(vars.iter().map(|v| v.to_string()).collect(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut add = |v: &str, bound: &Vec<String>| {
            if !bound.iter().any(|b| b == v) {
                out.insert(v.to_string());
            }
        };
        match self {
            Formula::Linear { lhs, rhs, .. } => {
                for v in lhs.vars().chain(rhs.vars()) {
                    add(v, bound);
                }
            }
            Formula::Seq { index, .. } => add(index, bound),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(vars, body) | Formula::ForAll(vars, body) => {
                let depth = bound.len();
                bound.extend(vars.iter().cloned());
                body.collect_free(bound, out);
                bound.truncate(depth);
            }
        }
    }

    /// Names of all sequences the formula looks up.
    pub fn sequences(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Seq { name, .. } = f {
                out.insert(name.clone());
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Linear { .. } | Formula::Seq { .. } => {}
            Formula::Not(a) | Formula::Exists(_, a) | Formula::ForAll(_, a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| match s {
                Summand::Var(v) => v.clone(),
                Summand::Const(c) => c.to_string(),
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

impl fmt::Display for Formula {
    /// Fully parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Linear { lhs, rel, rhs } => write!(f, "{lhs}{}{rhs}", rel.symbol()),
            Formula::Seq { name, index, value } => write!(f, "{name}[{index}]=@{value}"),
            Formula::Not(a) => write!(f, "~({a})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} => {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <=> {b})"),
            Formula::Exists(vars, body) => write!(f, "(E {}: {body})", vars.join(",")),
            Formula::ForAll(vars, body) => write!(f, "(A {}: {body})", vars.join(",")),
        }
    }
}
