//! Products, subsemigroups, Rees quotients, homomorphisms and isomorphisms.

use std::collections::BTreeSet;

use crate::semigroup::{FiniteSemigroup, Result, SemigroupError};

/// Direct product; `(s, t)` has index `s * |T| + t`. Identity and order are
/// carried over when both factors have them.
pub fn product(s: &FiniteSemigroup, t: &FiniteSemigroup) -> FiniteSemigroup {
    let m = t.len();
    let names = (0..s.len() * m).map(|i| format!("({},{})", s.name(i / m), t.name(i % m))).collect();
    let mut p = FiniteSemigroup::from_fn(names, |x, y| s.mul(x / m, y / m) * m + t.mul(x % m, y % m))
        .expect("product table has the right shape");
    if let (Some(e), Some(f)) = (s.identity(), t.identity()) {
        p = p.with_identity(e * m + f);
    }
    if s.order().is_some() && t.order().is_some() {
        let n = s.len() * m;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| s.leq(x / m, y / m) == Some(true) && t.leq(x % m, y % m) == Some(true))
            .collect();
        p = p.with_order(pairs);
    }
    p
}

/// Subsemigroup on a closed subset, with the sorted embedding into `s`.
pub fn subsemigroup(s: &FiniteSemigroup, subset: &[usize]) -> Result<(FiniteSemigroup, Vec<usize>)> {
    let elems: Vec<usize> = subset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if elems.is_empty() {
        return Err(SemigroupError::Empty);
    }
    let mut pos = vec![usize::MAX; s.len()];
    for (i, &e) in elems.iter().enumerate() {
        if e >= s.len() {
            return Err(SemigroupError::NoSuchElement(e));
        }
        pos[e] = i;
    }
    for &a in &elems {
        for &b in &elems {
            if pos[s.mul(a, b)] == usize::MAX {
                return Err(SemigroupError::NotClosed(a, b));
            }
        }
    }
    let names = elems.iter().map(|&e| s.name(e).to_string()).collect();
    let mut sub = FiniteSemigroup::from_fn(names, |x, y| pos[s.mul(elems[x], elems[y])])?;
    if let Some(e) = s.identity() {
        if pos[e] != usize::MAX {
            sub = sub.with_identity(pos[e]);
        }
    }
    if let Some(order) = s.order() {
        sub = sub.with_order(
            order
                .iter()
                .filter(|(a, b)| pos[*a] != usize::MAX && pos[*b] != usize::MAX)
                .map(|&(a, b)| (pos[a], pos[b])),
        );
    }
    Ok((sub, elems))
}

/// Checks that `ideal` is a nonempty two-sided ideal.
pub fn check_ideal(s: &FiniteSemigroup, ideal: &[usize]) -> Result<()> {
    if ideal.is_empty() {
        return Err(SemigroupError::Empty);
    }
    let mut member = vec![false; s.len()];
    for &i in ideal {
        if i >= s.len() {
            return Err(SemigroupError::NoSuchElement(i));
        }
        member[i] = true;
    }
    for &i in ideal {
        for x in 0..s.len() {
            if !member[s.mul(x, i)] || !member[s.mul(i, x)] {
                return Err(SemigroupError::NotIdeal(i, x));
            }
        }
    }
    Ok(())
}

/// Rees quotient `S/I`: the elements outside `I` in index order, then `0`.
/// Returns the quotient and the projection `S -> S/I`.
pub fn rees_quotient(s: &FiniteSemigroup, ideal: &[usize]) -> Result<(FiniteSemigroup, Vec<usize>)> {
    check_ideal(s, ideal)?;
    let mut member = vec![false; s.len()];
    for &i in ideal {
        member[i] = true;
    }
    let outside: Vec<usize> = (0..s.len()).filter(|&x| !member[x]).collect();
    let zero = outside.len();
    let mut proj = vec![zero; s.len()];
    for (i, &x) in outside.iter().enumerate() {
        proj[x] = i;
    }
    let mut names: Vec<String> = outside.iter().map(|&x| s.name(x).to_string()).collect();
    names.push("0".into());
    let q = FiniteSemigroup::from_fn(names, |x, y| {
        if x == zero || y == zero {
            zero
        } else {
            proj[s.mul(outside[x], outside[y])]
        }
    })?;
    let q = match s.identity() {
        Some(e) if !member[e] => q.with_identity(proj[e]),
        _ => q,
    };
    Ok((q, proj))
}

/// Verifies `f(ab) = f(a)f(b)` for all pairs, reporting the first failure.
pub fn hom_check(s: &FiniteSemigroup, t: &FiniteSemigroup, f: &[usize]) -> Result<()> {
    if f.len() != s.len() {
        return Err(SemigroupError::Shape(format!("map has {} entries for {} elements", f.len(), s.len())));
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= t.len()) {
        return Err(SemigroupError::NoSuchElement(bad));
    }
    for a in 0..s.len() {
        for b in 0..s.len() {
            if f[s.mul(a, b)] != t.mul(f[a], f[b]) {
                return Err(SemigroupError::NotHomomorphism(a, b));
            }
        }
    }
    Ok(())
}

pub fn is_hom(s: &FiniteSemigroup, t: &FiniteSemigroup, f: &[usize]) -> bool {
    hom_check(s, t, f).is_ok()
}

/// Sorted image of a map.
pub fn hom_image(f: &[usize]) -> Vec<usize> {
    f.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Sorted preimage of a subset of the codomain.
pub fn hom_preimage(f: &[usize], subset: &[usize]) -> Vec<usize> {
    let target: BTreeSet<usize> = subset.iter().copied().collect();
    (0..f.len()).filter(|x| target.contains(&f[*x])).collect()
}

/// Searches for an isomorphism `s -> t` by backtracking, pruning with the
/// index/period of every element. Intended for small semigroups.
pub fn find_isomorphism(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Option<Vec<usize>> {
    let n = s.len();
    if n != t.len() {
        return None;
    }
    let sig_s: Vec<_> = (0..n).map(|x| signature(s, x)).collect();
    let sig_t: Vec<_> = (0..n).map(|x| signature(t, x)).collect();
    let mut a = sig_s.clone();
    let mut b = sig_t.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    // Assign elements of s in closure order from a generating set so that most
    // images are forced by earlier choices.
    let gens: Vec<usize> = s.generators().map(|g| g.to_vec()).unwrap_or_else(|| (0..n).collect());
    let order = s.left_normed_closure(&gens);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(s, t, &order, 0, &sig_s, &sig_t, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn signature(s: &FiniteSemigroup, x: usize) -> (usize, usize, bool) {
    let (i, p) = s.index_period(x);
    let left_count = (0..s.len()).filter(|&y| s.mul(y, x) == x).count();
    (i, p, left_count == s.len())
}

#[allow(clippy::too_many_arguments)]
fn extend(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    order: &[usize],
    k: usize,
    sig_s: &[(usize, usize, bool)],
    sig_t: &[(usize, usize, bool)],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == order.len() {
        return is_hom(s, t, map);
    }
    let x = order[k];
    if map[x] != usize::MAX {
        return extend(s, t, order, k + 1, sig_s, sig_t, map, used);
    }
    for y in 0..t.len() {
        if used[y] || sig_s[x] != sig_t[y] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        let mut assigned = vec![x];
        if propagate(s, t, map, used, &mut assigned) && extend(s, t, order, k + 1, sig_s, sig_t, map, used) {
            return true;
        }
        for &z in &assigned {
            used[map[z]] = false;
            map[z] = usize::MAX;
        }
    }
    false
}

// Closes the partial map under products of assigned elements; fails on a clash.
fn propagate(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    map: &mut [usize],
    used: &mut [bool],
    assigned: &mut Vec<usize>,
) -> bool {
    let mut changed = true;
    while changed {
        changed = false;
        let known: Vec<usize> = (0..s.len()).filter(|&z| map[z] != usize::MAX).collect();
        for &a in &known {
            for &b in &known {
                let ab = s.mul(a, b);
                let img = t.mul(map[a], map[b]);
                if map[ab] == usize::MAX {
                    if used[img] {
                        return false;
                    }
                    map[ab] = img;
                    used[img] = true;
                    assigned.push(ab);
                    changed = true;
                } else if map[ab] != img {
                    return false;
                }
            }
        }
    }
    true
}
