//! Small named semigroups used as building blocks and test fixtures.

use crate::semigroup::FiniteSemigroup;

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// The one-element semigroup, a monoid with its element as identity.
pub fn trivial() -> FiniteSemigroup {
    FiniteSemigroup::from_rows(vec!["1".into()], &[vec![0]]).unwrap().with_generators(vec![0]).with_identity(0)
}

/// Cyclic group `C_n` written additively on `0..n`; element `i` is `g^i`.
pub fn cyclic_group(n: usize) -> FiniteSemigroup {
    assert!(n >= 1);
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let s = FiniteSemigroup::from_fn(names, |a, b| (a + b) % n).unwrap().with_identity(0);
    if n == 1 {
        s.with_generators(vec![0])
    } else {
        s.with_generators(vec![1])
    }
}

/// `n`-element left-zero semigroup, `xy = x`.
pub fn left_zero(n: usize) -> FiniteSemigroup {
    let names =
        if n <= 26 { (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect() } else { numbered("l", n) };
    FiniteSemigroup::from_fn(names, |a, _| a).unwrap().with_generators((0..n).collect())
}

/// Monogenic semigroup `<a | a^(index+period) = a^index>`; element `i` is `a^(i+1)`.
pub fn monogenic(index: usize, period: usize) -> FiniteSemigroup {
    assert!(index >= 1 && period >= 1);
    let n = index + period - 1;
    let names = (1..=n).map(|i| if i == 1 { "a".to_string() } else { format!("a^{i}") }).collect();
    let reduce = |e: usize| if e <= n { e } else { index + (e - index) % period };
    FiniteSemigroup::from_fn(names, |x, y| reduce(x + y + 2) - 1).unwrap().with_generators(vec![0])
}

/// `{x, x^2, ..., x^(n-1), 0}` with `x^n = 0`.
pub fn nilpotent_monogenic(n: usize) -> FiniteSemigroup {
    assert!(n >= 2);
    let mut names: Vec<String> = (1..n).map(|i| if i == 1 { "x".to_string() } else { format!("x^{i}") }).collect();
    names.push("0".into());
    let zero = n - 1;
    FiniteSemigroup::from_fn(names, |a, b| if a == zero || b == zero { zero } else { (a + b + 1).min(zero) })
        .unwrap()
        .with_generators(vec![0])
}

/// Chain `0 < 1 < ... < n-1` under `min`, carrying its natural order.
pub fn chain_semilattice(n: usize) -> FiniteSemigroup {
    let names = (0..n).map(|i| i.to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    FiniteSemigroup::from_fn(names, |a, b| a.min(b)).unwrap().with_identity(n - 1).with_order(pairs)
}

/// `{0, 1, ..., m}` under addition capped at `m`.
pub fn capped_addition(m: usize) -> FiniteSemigroup {
    let names = (0..=m).map(|i| i.to_string()).collect();
    let s = FiniteSemigroup::from_fn(names, |a, b| (a + b).min(m)).unwrap().with_identity(0);
    if m == 0 {
        s.with_generators(vec![0])
    } else {
        s.with_generators(vec![0, 1])
    }
}
