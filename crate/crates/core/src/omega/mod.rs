//! ω-terms, laws built from them, and exhaustive checking of laws on finite
//! semigroups.

mod catalog;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::semigroup::FiniteSemigroup;

pub use catalog::{catalog, catalog_names, knast};
pub use parse::{parse_law, parse_laws, parse_term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("inequality needs an ordered semigroup")]
    OrderMissing,
    #[error("{0} assignments exceed the budget of {1}")]
    BudgetExceeded(u128, u64),
    #[error("term uses 1 but the semigroup has no identity")]
    NoIdentity,
    #[error("term uses 0 but the semigroup has no zero")]
    NoZero,
    #[error("variable {0} is not assigned")]
    UnboundVariable(String),
    #[error("syntax error at position {0}: {1}")]
    SyntaxError(usize, String),
    #[error("unknown catalog entry: {0}")]
    UnknownLaw(String),
}

pub type Result<T> = std::result::Result<T, OmegaError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Concat(Vec<Term>),
    Omega(Box<Term>),
    One,
    Zero,
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    /// Product, flattening nested products; a single factor is returned as is.
    pub fn concat(parts: impl IntoIterator<Item = Term>) -> Term {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Term::Concat(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        assert!(!out.is_empty(), "empty product");
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Term::Concat(out)
        }
    }

    pub fn omega(t: Term) -> Term {
        Term::Omega(Box::new(t))
    }

    pub fn pow(t: Term, n: usize) -> Term {
        assert!(n >= 1, "powers are positive");
        Term::concat(std::iter::repeat_n(t, n))
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Concat(ts) => ts.iter().for_each(|t| t.collect_vars(out)),
            Term::Omega(t) => t.collect_vars(out),
            Term::One | Term::Zero => {}
        }
    }

    // Whether every occurrence of `v` is exactly `v^ω`.
    fn only_under_omega(&self, v: &str) -> bool {
        match self {
            Term::Var(w) => w != v,
            Term::Omega(t) => matches!(&**t, Term::Var(w) if w == v) || t.only_under_omega(v),
            Term::Concat(ts) => ts.iter().all(|t| t.only_under_omega(v)),
            Term::One | Term::Zero => true,
        }
    }
}

fn is_atomic(t: &Term) -> bool {
    matches!(t, Term::Var(_) | Term::One | Term::Zero)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::One => write!(f, "1"),
            Term::Zero => write!(f, "0"),
            Term::Omega(t) if is_atomic(t) => write!(f, "{t}^w"),
            Term::Omega(t) => write!(f, "({t})^w"),
            Term::Concat(ts) => {
                // Runs of equal atomic factors print as powers.
                let mut parts = Vec::new();
                let mut i = 0;
                while i < ts.len() {
                    let mut j = i + 1;
                    while j < ts.len() && ts[j] == ts[i] && is_atomic(&ts[i]) {
                        j += 1;
                    }
                    if j - i > 1 {
                        parts.push(format!("{}^{}", ts[i], j - i));
                    } else {
                        parts.push(ts[i].to_string());
                    }
                    i = j;
                }
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LawKind {
    Equality,
    /// `lhs <= rhs`.
    Inequality,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    pub lhs: Term,
    pub rhs: Term,
    pub kind: LawKind,
    pub variables: Vec<String>,
    /// Catalog name, when the law came from the catalog.
    pub name: Option<String>,
}

impl Law {
    pub fn new(lhs: Term, rhs: Term, kind: LawKind) -> Law {
        let mut variables = lhs.variables();
        for v in rhs.variables() {
            if !variables.contains(&v) {
                variables.push(v);
            }
        }
        Law { lhs, rhs, kind, variables, name: None }
    }

    pub fn eq(lhs: Term, rhs: Term) -> Law {
        Law::new(lhs, rhs, LawKind::Equality)
    }

    pub fn le(lhs: Term, rhs: Term) -> Law {
        Law::new(lhs, rhs, LawKind::Inequality)
    }

    pub fn named(mut self, name: &str) -> Law {
        self.name = Some(name.to_string());
        self
    }

    /// Variables that occur only as `v^ω`; these may range over idempotents.
    pub fn idempotent_variables(&self) -> Vec<String> {
        self.variables
            .iter()
            .filter(|v| self.lhs.only_under_omega(v) && self.rhs.only_under_omega(v))
            .cloned()
            .collect()
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            LawKind::Equality => "=",
            LawKind::Inequality => "<=",
        };
        write!(f, "{} {} {}", self.lhs, op, self.rhs)
    }
}

// Postfix code for fast repeated evaluation.
#[derive(Debug, Clone, Copy)]
enum Op {
    Var(usize),
    Const(usize),
    Mul(usize),
    Omega,
}

struct Compiled {
    ops: Vec<Op>,
}

fn compile(t: &Term, vars: &[String], s: &FiniteSemigroup) -> Result<Compiled> {
    fn go(t: &Term, vars: &[String], s: &FiniteSemigroup, ops: &mut Vec<Op>) -> Result<()> {
        match t {
            Term::Var(v) => {
                let i = vars.iter().position(|w| w == v).ok_or_else(|| OmegaError::UnboundVariable(v.clone()))?;
                ops.push(Op::Var(i));
            }
            Term::One => ops.push(Op::Const(identity_of(s).ok_or(OmegaError::NoIdentity)?)),
            Term::Zero => ops.push(Op::Const(s.zero().ok_or(OmegaError::NoZero)?)),
            Term::Concat(ts) => {
                for t in ts {
                    go(t, vars, s, ops)?;
                }
                ops.push(Op::Mul(ts.len()));
            }
            Term::Omega(t) => {
                go(t, vars, s, ops)?;
                ops.push(Op::Omega);
            }
        }
        Ok(())
    }
    let mut ops = Vec::new();
    go(t, vars, s, &mut ops)?;
    Ok(Compiled { ops })
}

fn identity_of(s: &FiniteSemigroup) -> Option<usize> {
    s.identity().or_else(|| s.find_identity())
}

impl Compiled {
    fn run(&self, s: &FiniteSemigroup, omega: &[usize], values: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Var(i) => stack.push(values[i]),
                Op::Const(c) => stack.push(c),
                Op::Omega => {
                    let x = stack.pop().unwrap();
                    stack.push(omega[x]);
                }
                Op::Mul(n) => {
                    let start = stack.len() - n;
                    let mut acc = stack[start];
                    for &y in &stack[start + 1..] {
                        acc = s.mul(acc, y);
                    }
                    stack.truncate(start);
                    stack.push(acc);
                }
            }
        }
        stack[0]
    }
}

/// Evaluates a term under an assignment of its variables.
pub fn eval(term: &Term, assignment: &[(String, usize)], s: &FiniteSemigroup) -> Result<usize> {
    let vars: Vec<String> = assignment.iter().map(|(v, _)| v.clone()).collect();
    let values: Vec<usize> = assignment.iter().map(|&(_, x)| x).collect();
    let code = compile(term, &vars, s)?;
    Ok(code.run(s, &s.omega_table(), &values, &mut Vec::new()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Strategy {
    /// Every variable ranges over the whole semigroup.
    #[default]
    Exhaustive,
    /// Variables occurring only as `v^ω` range over the idempotents.
    IdempotentVars,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub holds: bool,
    /// First violating assignment in lexicographic order of element indices.
    pub witness: Option<Vec<(String, usize)>>,
    pub assignments: u128,
}

impl LawCheck {
    pub fn render_witness(&self, s: &FiniteSemigroup) -> Option<String> {
        self.witness
            .as_ref()
            .map(|w| w.iter().map(|(v, x)| format!("{v}={}", s.name(*x))).collect::<Vec<_>>().join(", "))
    }
}

/// Default bound on the number of assignments a check may visit.
pub const DEFAULT_LAW_BUDGET: u64 = 2_000_000_000;

/// Checks a law on every assignment, reporting the first violation.
pub fn check_law(s: &FiniteSemigroup, law: &Law, strategy: Strategy, budget: u64) -> Result<LawCheck> {
    if law.kind == LawKind::Inequality && s.order().is_none() {
        return Err(OmegaError::OrderMissing);
    }
    let restricted: BTreeSet<String> = match strategy {
        Strategy::Exhaustive => BTreeSet::new(),
        Strategy::IdempotentVars => law.idempotent_variables().into_iter().collect(),
    };
    let all: Vec<usize> = (0..s.len()).collect();
    let idem = s.idempotents();
    let ranges: Vec<&[usize]> =
        law.variables.iter().map(|v| if restricted.contains(v) { &idem[..] } else { &all[..] }).collect();
    let total: u128 = ranges.iter().map(|r| r.len() as u128).product();

    // When the fast check fails, fall through to locate the first witness.
    if strategy == Strategy::IdempotentVars && law.name.as_deref() == Some("knast") && catalog::knast_holds(s) {
        return Ok(LawCheck { holds: true, witness: None, assignments: total });
    }
    if total > budget as u128 {
        return Err(OmegaError::BudgetExceeded(total, budget));
    }

    let lhs = compile(&law.lhs, &law.variables, s)?;
    let rhs = compile(&law.rhs, &law.variables, s)?;
    let omega = s.omega_table();
    let mut stack = Vec::new();
    let n = ranges.len();
    let mut idx = vec![0usize; n];
    let mut values: Vec<usize> = ranges.iter().map(|r| r[0]).collect();
    let mut visited: u128 = 0;
    if ranges.iter().any(|r| r.is_empty()) {
        return Ok(LawCheck { holds: true, witness: None, assignments: 0 });
    }
    loop {
        visited += 1;
        let l = lhs.run(s, &omega, &values, &mut stack);
        let r = rhs.run(s, &omega, &values, &mut stack);
        let ok = match law.kind {
            LawKind::Equality => l == r,
            LawKind::Inequality => s.leq(l, r).unwrap_or(false),
        };
        if !ok {
            let witness = law.variables.iter().cloned().zip(values.iter().copied()).collect();
            return Ok(LawCheck { holds: false, witness: Some(witness), assignments: visited });
        }
        // Odometer, last variable fastest.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(LawCheck { holds: true, witness: None, assignments: visited });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < ranges[pos].len() {
                values[pos] = ranges[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            values[pos] = ranges[pos][0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::sk::{build, Variant, Which};

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn eval_examples() {
        let c3 = families::cyclic_group(3);
        let t = Term::omega(x());
        assert_eq!(eval(&t, &[("x".into(), 1)], &c3).unwrap(), 0);
        let s2 = build(2, Variant::Sk, Which::S).unwrap();
        let a = s2.semigroup.index_of("a^1").unwrap();
        let a2 = s2.semigroup.index_of("a^2").unwrap();
        assert_eq!(eval(&t, &[("x".into(), a)], &s2.semigroup).unwrap(), a2);
        let lz = families::left_zero(2);
        let xy = Term::concat([x(), Term::var("y")]);
        assert_eq!(eval(&xy, &[("x".into(), 0), ("y".into(), 1)], &lz).unwrap(), 0);
        assert_eq!(eval(&xy, &[("x".into(), 0)], &lz), Err(OmegaError::UnboundVariable("y".into())));
        assert_eq!(eval(&Term::One, &[], &lz), Err(OmegaError::NoIdentity));
        assert_eq!(eval(&Term::Zero, &[], &c3), Err(OmegaError::NoZero));
    }

    #[test]
    fn commutativity_fails_on_left_zero() {
        let lz = families::left_zero(2);
        let law = parse_law("x y = y x").unwrap();
        let r = check_law(&lz, &law, Strategy::Exhaustive, DEFAULT_LAW_BUDGET).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![("x".into(), 0), ("y".into(), 1)]));
        assert_eq!(r.render_witness(&lz).unwrap(), "x=a, y=b");
    }

    #[test]
    fn inequality_needs_order() {
        let law = parse_law("x <= x x").unwrap();
        let c2 = families::cyclic_group(2);
        assert_eq!(check_law(&c2, &law, Strategy::Exhaustive, 100), Err(OmegaError::OrderMissing));
        let chain = families::chain_semilattice(3);
        let r = check_law(&chain, &parse_law("x y <= x").unwrap(), Strategy::Exhaustive, 100).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn budget_is_enforced() {
        let s = families::cyclic_group(5);
        let law = parse_law("x y z = z y x").unwrap();
        assert!(matches!(check_law(&s, &law, Strategy::Exhaustive, 10), Err(OmegaError::BudgetExceeded(125, 10))));
    }

    #[test]
    fn idempotent_variables_detected() {
        let k = knast();
        assert_eq!(k.idempotent_variables(), ["u", "v"]);
        let law = parse_law("x^w x = x^w").unwrap();
        assert!(law.idempotent_variables().is_empty());
    }

    #[test]
    fn omega_values_are_idempotent() {
        let s = build(2, Variant::Skp(2), Which::S).unwrap().semigroup;
        let t = parse_term("(x y)^w").unwrap();
        for a in 0..s.len() {
            for b in 0..s.len() {
                let e = eval(&t, &[("x".into(), a), ("y".into(), b)], &s).unwrap();
                assert!(s.is_idempotent(e));
            }
        }
    }
}
