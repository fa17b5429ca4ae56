//! Breadth-first closure of a set of seeds under an associative composition.

use std::collections::HashMap;
use std::hash::Hash;

use crate::semigroup::{FiniteSemigroup, Result, SemigroupError};

pub const DEFAULT_BUDGET: usize = 500_000;

/// Result of a closure: the table plus the concrete value and a shortest
/// seed word for every element.
#[derive(Debug, Clone)]
pub struct Closure<T> {
    pub semigroup: FiniteSemigroup,
    pub values: Vec<T>,
    /// Seed indices spelling a shortest word for each element.
    pub words: Vec<Vec<usize>>,
    /// Whether an identity was adjoined (monoid convention).
    pub monoid: bool,
}

impl<T: Eq + Hash> Closure<T> {
    pub fn index_of(&self, value: &T) -> Option<usize> {
        self.values.iter().position(|v| v == value)
    }
}

/// Computes the semigroup generated by `seeds`, or the monoid when `identity`
/// is given (then element 0 is the identity).
///
/// Elements are numbered in breadth-first discovery order over right
/// multiplication by seeds, so numbering is deterministic. `seed_names` label
/// the seeds when naming elements by their shortest words.
pub fn closure<T, F>(
    seeds: &[T],
    seed_names: &[String],
    compose: F,
    identity: Option<T>,
    budget: usize,
) -> Result<Closure<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    assert_eq!(seeds.len(), seed_names.len());
    if seeds.is_empty() && identity.is_none() {
        return Err(SemigroupError::Empty);
    }
    let monoid = identity.is_some();
    let mut values: Vec<T> = Vec::new();
    let mut index: HashMap<T, usize> = HashMap::new();
    // For each element: (parent, seed) with parent None meaning the seed itself.
    let mut origin: Vec<Option<(Option<usize>, usize)>> = Vec::new();
    let mut words: Vec<Vec<usize>> = Vec::new();

    if let Some(id) = identity {
        index.insert(id.clone(), 0);
        values.push(id);
        origin.push(None);
        words.push(Vec::new());
    }
    let mut seed_elem = Vec::with_capacity(seeds.len());
    for (g, s) in seeds.iter().enumerate() {
        let idx = match index.get(s) {
            Some(&i) => i,
            None => {
                let i = values.len();
                index.insert(s.clone(), i);
                values.push(s.clone());
                origin.push(Some((None, g)));
                words.push(vec![g]);
                i
            }
        };
        seed_elem.push(idx);
    }

    let ng = seeds.len();
    let mut right: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < values.len() {
        for (g, seed) in seeds.iter().enumerate() {
            let v = compose(&values[i], seed);
            let j = match index.get(&v) {
                Some(&j) => j,
                None => {
                    let j = values.len();
                    if j >= budget {
                        return Err(SemigroupError::ClosureBudgetExceeded(budget));
                    }
                    index.insert(v.clone(), j);
                    values.push(v);
                    origin.push(Some((Some(i), g)));
                    let mut w = words[i].clone();
                    w.push(g);
                    words.push(w);
                    j
                }
            };
            right.push(j);
        }
        i += 1;
    }
    drop(index);

    let n = values.len();
    // Columns in discovery order: x * (p g) = (x * p) g.
    let mut table = vec![0u32; n * n];
    for j in 0..n {
        for x in 0..n {
            let v = match origin[j] {
                None => x,
                Some((None, g)) => right[x * ng + g],
                Some((Some(p), g)) => right[table[x * n + p] as usize * ng + g],
            };
            table[x * n + j] = v as u32;
        }
    }

    let spaced = seed_names.iter().any(|s| s.chars().count() != 1);
    let names = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                let parts: Vec<&str> = w.iter().map(|&g| seed_names[g].as_str()).collect();
                parts.join(if spaced { " " } else { "" })
            }
        })
        .collect();

    let mut gens: Vec<usize> = Vec::new();
    if monoid {
        gens.push(0);
    }
    for &e in &seed_elem {
        if !gens.contains(&e) {
            gens.push(e);
        }
    }
    let mut semigroup = FiniteSemigroup::from_flat(names, table).with_generators(gens);
    if monoid {
        semigroup = semigroup.with_identity(0);
    }
    Ok(Closure { semigroup, values, words, monoid })
}
