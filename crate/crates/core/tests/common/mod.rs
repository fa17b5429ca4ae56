#![allow(dead_code)]

pub mod rewrite;

use finsemi::omega::Term;
use finsemi::{closure, FiniteSemigroup};
use rand::Rng;

/// The semigroup generated by `gens` random transformations of `points`
/// points, retried until it has at most `max_size` elements.
pub fn random_transformations(rng: &mut impl Rng, points: usize, gens: usize, max_size: usize) -> FiniteSemigroup {
    loop {
        let seeds: Vec<Vec<u8>> =
            (0..gens).map(|_| (0..points).map(|_| rng.gen_range(0..points as u8)).collect()).collect();
        let names: Vec<String> = (0..gens).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let compose = |f: &Vec<u8>, g: &Vec<u8>| f.iter().map(|&x| g[x as usize]).collect::<Vec<u8>>();
        let c = closure(&seeds, &names, compose, None, 10_000).expect("small closure");
        if c.semigroup.len() <= max_size {
            return c.semigroup;
        }
    }
}

/// A random small semigroup from one or two transformations on at most three points.
pub fn random_small(rng: &mut impl Rng) -> FiniteSemigroup {
    let points = rng.gen_range(1..=3);
    let gens = rng.gen_range(1..=2);
    random_transformations(rng, points, gens, 8)
}

/// A random ω-term over the given variables.
pub fn random_term(rng: &mut impl Rng, vars: &[&str], depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return Term::var(vars[rng.gen_range(0..vars.len())]);
    }
    if rng.gen_bool(0.3) {
        Term::omega(random_term(rng, vars, depth - 1))
    } else {
        let n = rng.gen_range(2..=3);
        Term::concat((0..n).map(|_| random_term(rng, vars, depth - 1)))
    }
}

/// Every associative table on `n` elements, up to nothing (brute force, n <= 3).
pub fn all_tables(n: usize) -> Vec<FiniteSemigroup> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut rows = vec![vec![0; n]; n];
        for cell in 0..cells {
            rows[cell / n][cell % n] = c % n;
            c /= n;
        }
        let s = FiniteSemigroup::from_rows(names.clone(), &rows).unwrap();
        if s.validate().is_ok() {
            out.push(s);
        }
    }
    out
}
