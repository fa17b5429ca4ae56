use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Serialize, Serializer};

use super::{build, Result, Variant, Which};
use crate::words::{is_subword, Letter, Word};

/// A letter count, or the marker for "the reference letter does not occur".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => s.serialize_u64(*n as u64),
            Count::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordInvariants {
    /// `(x, y)` to the number of `y` before the first `x`, for distinct letters.
    pub flat: BTreeMap<(Letter, Letter), Count>,
    /// `(x, y)` to the number of `y` after the last `x`, for distinct letters.
    pub sharp: BTreeMap<(Letter, Letter), Count>,
    /// `(x, y)` to the subword-minimal `w` avoiding `x, y` with `xwy` a factor.
    pub minfactors: BTreeMap<(Letter, Letter), BTreeSet<Word>>,
}

/// Computes the invariants of `u` over letters `0..alphabet_size`.
pub fn invariants(u: &[Letter], alphabet_size: usize) -> WordInvariants {
    let letters = 0..alphabet_size as Letter;
    let mut flat = BTreeMap::new();
    let mut sharp = BTreeMap::new();
    let mut minfactors = BTreeMap::new();
    for x in letters.clone() {
        let first = u.iter().position(|&c| c == x);
        let last = u.iter().rposition(|&c| c == x);
        for y in letters.clone() {
            if x != y {
                let count = |part: &[Letter]| Count::Finite(part.iter().filter(|&&c| c == y).count());
                flat.insert((x, y), first.map_or(Count::Infinite, |i| count(&u[..i])));
                sharp.insert((x, y), last.map_or(Count::Infinite, |i| count(&u[i + 1..])));
            }
            minfactors.insert((x, y), min_factors(u, x, y));
        }
    }
    WordInvariants { flat, sharp, minfactors }
}

fn min_factors(u: &[Letter], x: Letter, y: Letter) -> BTreeSet<Word> {
    let mut found: BTreeSet<Word> = BTreeSet::new();
    for (i, _) in u.iter().enumerate().filter(|&(_, &c)| c == x) {
        if let Some(off) = u[i + 1..].iter().position(|&c| c == x || c == y) {
            let j = i + 1 + off;
            if u[j] == y {
                found.insert(u[i + 1..j].to_vec());
            }
        }
    }
    let all: Vec<Word> = found.into_iter().collect();
    all.iter().filter(|w| !all.iter().any(|v| v != *w && is_subword(v, w))).cloned().collect()
}

fn letters_of(u: &[Letter]) -> BTreeSet<Letter> {
    u.iter().copied().collect()
}

/// The finite-word form of the lemma hypotheses: both words contain `x^3`
/// as a subword for every letter `x` of either word, and the `flat`,
/// `sharp` and `minfactors` invariants coincide.
pub fn agree(u: &[Letter], v: &[Letter]) -> bool {
    let letters: BTreeSet<Letter> = letters_of(u).union(&letters_of(v)).copied().collect();
    let size = letters.iter().max().map_or(0, |&m| m as usize + 1);
    for &x in &letters {
        let cube = [x; 3];
        if !is_subword(&cube, u) || !is_subword(&cube, v) {
            return false;
        }
    }
    invariants(u, size) == invariants(v, size)
}

#[derive(Debug, Clone, Serialize)]
pub struct EvidenceReport {
    pub agree: bool,
    /// Per `k`: number of maps tried, whether that was every map, and the
    /// number of maps whose images differ.
    pub per_k: Vec<EvidenceRow>,
    /// Finite evidence only; this is not a proof of the identity.
    pub all_coincide: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvidenceRow {
    pub k: usize,
    pub t_size: usize,
    pub maps: usize,
    pub exhaustive: bool,
    pub differing: usize,
}

/// Maps beyond this count are sampled instead of enumerated.
const MAX_MAPS: usize = 200_000;

/// Evaluates `u` and `v` under maps from their letters into `T_k` for
/// `k = 2..=k_max`; nothing is evaluated when the words do not agree.
pub fn evidence_check(u: &[Letter], v: &[Letter], k_max: usize) -> Result<EvidenceReport> {
    let agree = agree(u, v);
    let mut per_k = Vec::new();
    if agree {
        let letters: Vec<Letter> = letters_of(u).union(&letters_of(v)).copied().collect();
        let slot = |l: Letter| letters.iter().position(|&c| c == l).expect("letter of u or v");
        let us: Vec<usize> = u.iter().map(|&l| slot(l)).collect();
        let vs: Vec<usize> = v.iter().map(|&l| slot(l)).collect();
        let mut rng = StdRng::seed_from_u64(k_max as u64);
        for k in 2..=k_max {
            let t = build(k, Variant::Sk, Which::T)?.semigroup;
            let n = t.len();
            let total = n.checked_pow(letters.len() as u32).filter(|&m| m <= MAX_MAPS);
            let eval = |w: &[usize], f: &[usize]| t.product(w.iter().map(|&i| f[i])).expect("nonempty word");
            let mut differing = 0;
            let maps = total.unwrap_or(MAX_MAPS);
            let mut f = vec![0usize; letters.len()];
            for idx in 0..maps {
                if total.is_some() {
                    let mut r = idx;
                    for slot in f.iter_mut() {
                        *slot = r % n;
                        r /= n;
                    }
                } else {
                    for slot in f.iter_mut() {
                        *slot = rng.gen_range(0..n);
                    }
                }
                if eval(&us, &f) != eval(&vs, &f) {
                    differing += 1;
                }
            }
            per_k.push(EvidenceRow { k, t_size: n, maps, exhaustive: total.is_some(), differing });
        }
    }
    let all_coincide = agree && per_k.iter().all(|r| r.differing == 0);
    Ok(EvidenceReport { agree, per_k, all_coincide })
}
