//! Finite semigroups given by their multiplication tables.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("table is not square or names do not match: {0}")]
    Shape(String),
    #[error("table entry out of range at ({0}, {1})")]
    EntryOutOfRange(usize, usize),
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("the recorded generators do not generate the semigroup")]
    GeneratorsNotGenerating,
    #[error("element {0} is not a two-sided identity")]
    NotIdentity(usize),
    #[error("order is not a partial order: {0}")]
    OrderNotPartial(String),
    #[error("order is not stable under multiplication: {0} <= {1} but {2}*{0} / {0}*{2} breaks it")]
    OrderNotStable(usize, usize, usize),
    #[error("closure exceeded the element budget of {0}")]
    ClosureBudgetExceeded(usize),
    #[error("subset is not closed under multiplication: {0}*{1} leaves it")]
    NotClosed(usize, usize),
    #[error("subset is not a two-sided ideal: product with {0} leaves it via {1}")]
    NotIdeal(usize, usize),
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("element index {0} out of range")]
    NoSuchElement(usize),
    #[error("empty semigroup")]
    Empty,
}

pub type Result<T> = std::result::Result<T, SemigroupError>;

/// A finite semigroup stored as a dense multiplication table.
///
/// Elements are the indices `0..len()`. An optional generating set, two-sided
/// identity and stable partial order may be attached; the order is kept as a
/// set of strict pairs `(a, b)` meaning `a <= b`, reflexivity being implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    names: Vec<String>,
    table: Vec<u32>,
    generators: Option<Vec<usize>>,
    identity: Option<usize>,
    order: Option<BTreeSet<(usize, usize)>>,
}

impl FiniteSemigroup {
    /// Builds a semigroup from a row-major table. Only the shape and entry
    /// ranges are checked here; call [`validate`](Self::validate) for the rest.
    pub fn from_rows(names: Vec<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(SemigroupError::Empty);
        }
        if rows.len() != n {
            return Err(SemigroupError::Shape(format!("{} names but {} rows", n, rows.len())));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SemigroupError::Shape(format!("row {} has length {}", i, row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(SemigroupError::EntryOutOfRange(i, j));
                }
                table.push(v as u32);
            }
        }
        Ok(FiniteSemigroup { names, table, generators: None, identity: None, order: None })
    }

    /// Builds a semigroup from a multiplication function on `0..n`.
    pub fn from_fn(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = names.len();
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| mul(i, j)).collect()).collect();
        Self::from_rows(names, &rows)
    }

    pub(crate) fn from_flat(names: Vec<String>, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), names.len() * names.len());
        FiniteSemigroup { names, table, generators: None, identity: None, order: None }
    }

    pub fn with_generators(mut self, gens: Vec<usize>) -> Self {
        self.generators = Some(gens);
        self
    }

    pub fn with_identity(mut self, e: usize) -> Self {
        self.identity = Some(e);
        self
    }

    /// Attaches a partial order; reflexive pairs are dropped.
    pub fn with_order(mut self, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        self.order = Some(pairs.into_iter().filter(|(a, b)| a != b).collect());
        self
    }

    pub fn without_order(mut self) -> Self {
        self.order = None;
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.names.len());
        self.names = names;
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b] as usize
    }

    /// Product of a nonempty sequence of elements, left to right.
    pub fn product<I: IntoIterator<Item = usize>>(&self, elems: I) -> Option<usize> {
        let mut it = elems.into_iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, x| self.mul(acc, x)))
    }

    /// `a^n` for `n >= 1`.
    pub fn pow(&self, a: usize, n: usize) -> usize {
        assert!(n >= 1, "semigroup powers start at 1");
        let mut acc = a;
        for _ in 1..n {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn order(&self) -> Option<&BTreeSet<(usize, usize)>> {
        self.order.as_ref()
    }

    /// `a <= b` in the attached order, `None` when no order is attached.
    pub fn leq(&self, a: usize, b: usize) -> Option<bool> {
        self.order.as_ref().map(|o| a == b || o.contains(&(a, b)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.mul(i, j)).collect()).collect()
    }

    /// Checks associativity, the generator, identity and order invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if n == 0 {
            return Err(SemigroupError::Empty);
        }
        if let Some(e) = self.identity {
            if e >= n {
                return Err(SemigroupError::NoSuchElement(e));
            }
            if (0..n).any(|x| self.mul(e, x) != x || self.mul(x, e) != x) {
                return Err(SemigroupError::NotIdentity(e));
            }
        }
        match &self.generators {
            Some(gens) => {
                if let Some(&g) = gens.iter().find(|&&g| g >= n) {
                    return Err(SemigroupError::NoSuchElement(g));
                }
                if self.left_normed_closure(gens).len() != n {
                    return Err(SemigroupError::GeneratorsNotGenerating);
                }
                self.check_associative_light(gens)?;
            }
            None => self.check_associative_full()?,
        }
        if let Some(order) = &self.order {
            self.check_order(order)?;
        }
        Ok(())
    }

    /// Checks every triple, ignoring any recorded generators.
    pub fn check_associative_full(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(SemigroupError::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    // Light's test: the elements g with (xg)y = x(gy) for all x, y form a
    // subsemigroup, so checking the generators suffices once they generate.
    fn check_associative_light(&self, gens: &[usize]) -> Result<()> {
        let n = self.len();
        for &g in gens {
            for x in 0..n {
                let xg = self.mul(x, g);
                for y in 0..n {
                    if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                        return Err(SemigroupError::NonAssociative(x, g, y));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_order(&self, order: &BTreeSet<(usize, usize)>) -> Result<()> {
        let n = self.len();
        for &(a, b) in order {
            if a >= n || b >= n {
                return Err(SemigroupError::NoSuchElement(a.max(b)));
            }
            if order.contains(&(b, a)) {
                return Err(SemigroupError::OrderNotPartial(format!("{a} and {b} are mutually below")));
            }
        }
        for &(a, b) in order {
            for &(b2, c) in order.range((b, 0)..(b + 1, 0)) {
                debug_assert_eq!(b2, b);
                if a != c && !order.contains(&(a, c)) {
                    return Err(SemigroupError::OrderNotPartial(format!("{a}<={b}<={c} but not {a}<={c}")));
                }
            }
        }
        // With transitivity, stability reduces to compatibility with one-sided
        // multiplication by every element.
        let leq = |x: usize, y: usize| x == y || order.contains(&(x, y));
        for &(a, b) in order {
            for c in 0..n {
                if !leq(self.mul(c, a), self.mul(c, b)) || !leq(self.mul(a, c), self.mul(b, c)) {
                    return Err(SemigroupError::OrderNotStable(a, b, c));
                }
            }
        }
        Ok(())
    }

    /// Left-normed products of the given elements (the subsemigroup they
    /// generate when the table is associative), in discovery order.
    pub(crate) fn left_normed_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for &g in gens {
            if !seen[g] {
                seen[g] = true;
                out.push(g);
            }
        }
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Sorted subsemigroup generated by `subset`.
    pub fn generated_by(&self, subset: &[usize]) -> Vec<usize> {
        let mut v = self.left_normed_closure(subset);
        v.sort_unstable();
        v
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// `E(S)` in index order.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.is_idempotent(a)).collect()
    }

    /// Index and period of the cyclic subsemigroup of `a`: the least `i, p`
    /// with `a^(i+p) = a^i`.
    pub fn index_period(&self, a: usize) -> (usize, usize) {
        let mut first_seen = vec![usize::MAX; self.len()];
        let mut x = a;
        let mut k = 1;
        loop {
            if first_seen[x] != usize::MAX {
                let i = first_seen[x];
                return (i, k - i);
            }
            first_seen[x] = k;
            x = self.mul(x, a);
            k += 1;
        }
    }

    /// The unique idempotent power of `a`.
    pub fn omega_power(&self, a: usize) -> usize {
        let (index, period) = self.index_period(a);
        let m = index.div_ceil(period) * period;
        self.pow(a, m)
    }

    /// Table of `omega_power` for every element.
    pub fn omega_table(&self) -> Vec<usize> {
        (0..self.len()).map(|a| self.omega_power(a)).collect()
    }

    pub fn is_aperiodic(&self) -> bool {
        (0..self.len()).all(|a| self.index_period(a).1 == 1)
    }

    pub fn is_regular_element(&self, a: usize) -> bool {
        (0..self.len()).any(|y| self.mul(self.mul(a, y), a) == a)
    }

    /// Every element regular and idempotents commute.
    pub fn is_inverse(&self) -> bool {
        let es = self.idempotents();
        let commute = es.iter().all(|&e| es.iter().all(|&f| self.mul(e, f) == self.mul(f, e)));
        commute && (0..self.len()).all(|a| self.is_regular_element(a))
    }

    pub fn zero(&self) -> Option<usize> {
        (0..self.len()).find(|&z| (0..self.len()).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    pub fn has_zero(&self) -> bool {
        self.zero().is_some()
    }

    /// Two-sided identity, whether or not it was recorded.
    pub fn find_identity(&self) -> Option<usize> {
        (0..self.len()).find(|&e| (0..self.len()).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub fn is_group(&self) -> bool {
        let Some(e) = self.find_identity() else { return false };
        (0..self.len()).all(|a| (0..self.len()).any(|b| self.mul(a, b) == e && self.mul(b, a) == e))
    }

    /// Zero exists and every product of `|S|` factors is zero.
    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    /// Least `n` such that every product of `n` factors is zero.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let z = self.zero()?;
        let n = self.len();
        let mut level: HashSet<usize> = (0..n).collect();
        for k in 1..=n {
            if level.len() == 1 && level.contains(&z) {
                return Some(k);
            }
            let next: HashSet<usize> =
                level.iter().flat_map(|&x| (0..n).map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
            if next == level {
                return None;
            }
            level = next;
        }
        (level.len() == 1).then_some(n + 1)
    }

    pub fn predicates(&self) -> Predicates {
        Predicates {
            is_aperiodic: self.is_aperiodic(),
            is_inverse: self.is_inverse(),
            is_group: self.is_group(),
            idempotents: self.idempotents(),
            is_nilpotent: self.is_nilpotent(),
            has_zero: self.has_zero(),
        }
    }

    pub fn to_file(&self) -> SemigroupFile {
        SemigroupFile {
            elements: self.names.clone(),
            table: self.rows(),
            generators: self.generators.clone(),
            identity: self.identity,
            order: self.order.as_ref().map(|o| o.iter().map(|&(a, b)| [a, b]).collect()),
        }
    }

    /// Imports and validates.
    pub fn from_file(file: &SemigroupFile) -> Result<Self> {
        let mut s = Self::from_rows(file.elements.clone(), &file.table)?;
        s.generators = file.generators.clone();
        s.identity = file.identity;
        s.order = file.order.as_ref().map(|o| o.iter().filter(|p| p[0] != p[1]).map(|p| (p[0], p[1])).collect());
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("semigroup serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, LoadError> {
        let file: SemigroupFile = serde_json::from_str(text)?;
        Ok(Self::from_file(&file)?)
    }

    /// Tab-separated multiplication table with a header row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("*");
        for n in &self.names {
            out.push('\t');
            out.push_str(n);
        }
        out.push('\n');
        for i in 0..self.len() {
            out.push_str(&self.names[i]);
            for j in 0..self.len() {
                out.push('\t');
                out.push_str(&self.names[self.mul(i, j)]);
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed semigroup JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] SemigroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub is_aperiodic: bool,
    pub is_inverse: bool,
    pub is_group: bool,
    pub idempotents: Vec<usize>,
    pub is_nilpotent: bool,
    pub has_zero: bool,
}

/// On-disk semigroup format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupFile {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<[usize; 2]>>,
}
