//! The presented semigroups `S_k` and `S_k(p)`: canonical forms, the
//! subsemigroups `T_k`, `T_k(p)`, the witnesses `R_k`, `R_k(p)`, separating
//! word sequences and finite-word invariants.

mod invariants;
mod separation;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::construct::{hom_check, product, subsemigroup};
use crate::families;
use crate::semigroup::{FiniteSemigroup, SemigroupError};
use crate::words::{Letter, Word};

pub use invariants::{agree, evidence_check, invariants, Count, EvidenceReport, WordInvariants};
pub use separation::{parse_sequence, separating_sequence, separation_check, Separation, Sequence};

const A: Letter = 0;
const B: Letter = 1;

#[derive(Debug, Error)]
pub enum SkError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("witness check failed at stage: {0}")]
    WitnessFailed(String),
    #[error("images did not stabilize within {0} terms")]
    NotStabilized(usize),
    #[error("sequences must differ and be strictly increasing and positive: {0}")]
    BadSequence(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

pub type Result<T> = std::result::Result<T, SkError>;

/// Which presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// `S_k`: `a^{k+1}=a^k, b^{k+1}=b^k, a^k b^k a^k=a^k, b^k a^k b^k=b^k, a^n b^n a=b^n a^n b=0 (n<k)`.
    Sk,
    /// `S_k(p)`: `a^2=0, b^{k+1}=b^k, b^k (a b^k)^p=b^k, b^n a b^n a=0 (n<k)`.
    Skp(usize),
}

/// Which semigroup of the family to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Which {
    S,
    T,
    R,
}

/// Normal form of an element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CanonicalWord {
    /// `a^{γ0} b^{γ1} ... a^{γ_{2l}} b^{γ_{2l+1}}`.
    Sk {
        gammas: Vec<usize>,
        k: usize,
    },
    /// `b^{β0} a b^{β1} a ... a b^{β_l}`.
    Skp {
        betas: Vec<usize>,
        k: usize,
        p: usize,
    },
    Zero,
}

fn check_params(k: usize, variant: Variant) -> Result<()> {
    match variant {
        Variant::Sk if k >= 1 => Ok(()),
        Variant::Skp(p) if k >= 2 && is_prime(p) => Ok(()),
        Variant::Sk => Err(SkError::Parameters(format!("S_k needs k >= 1, got {k}"))),
        Variant::Skp(p) => Err(SkError::Parameters(format!("S_k(p) needs k >= 2 and p prime, got k={k}, p={p}"))),
    }
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

// i ≺_k j
fn prec(i: usize, j: usize, k: usize) -> bool {
    i < j || (i == k && j == k)
}

fn blocks(w: &[Letter]) -> Vec<(Letter, usize)> {
    let mut out: Vec<(Letter, usize)> = Vec::new();
    for &l in w {
        match out.last_mut() {
            Some((c, e)) if *c == l => *e += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

// Shrinks every maximal run of consecutive exponents equal to k, of length
// m, to ((m - 1) mod period) + 1.
fn collapse_runs(exps: &mut Vec<usize>, k: usize, period: usize, lo: usize) {
    let mut out = Vec::with_capacity(exps.len());
    let mut i = 0;
    while i < exps.len() {
        if exps[i] == k && i >= lo {
            let start = i;
            while i < exps.len() && exps[i] == k {
                i += 1;
            }
            let m = i - start;
            out.extend(std::iter::repeat_n(k, (m - 1) % period + 1));
        } else {
            out.push(exps[i]);
            i += 1;
        }
    }
    *exps = out;
}

/// Rewrites a word over `{a, b}` to its canonical form.
pub fn normalize(w: &[Letter], k: usize, variant: Variant) -> CanonicalWord {
    assert!(!w.is_empty(), "semigroup words are nonempty");
    match variant {
        Variant::Sk => normalize_sk(w, k),
        Variant::Skp(p) => normalize_skp(w, k, p),
    }
}

fn normalize_sk(w: &[Letter], k: usize) -> CanonicalWord {
    let bl = blocks(w);
    let first = bl[0].0;
    let last = bl[bl.len() - 1].0;
    let mut exps: Vec<usize> = bl.iter().map(|&(_, e)| e.min(k)).collect();
    // a^n b^n a = b^n a^n b = 0: every adjacent pair followed by a further block.
    for i in 0..exps.len().saturating_sub(2) {
        if !prec(exps[i], exps[i + 1], k) {
            return CanonicalWord::Zero;
        }
    }
    // a^k b^k a^k = a^k and dually: runs of k-blocks shrink by two.
    collapse_runs(&mut exps, k, 2, 0);
    let mut gammas = Vec::with_capacity(exps.len() + 2);
    if first == B {
        gammas.push(0);
    }
    gammas.extend(exps);
    // Runs collapse by an even number of blocks, so the last letter is unchanged.
    if last == A {
        gammas.push(0);
    }
    CanonicalWord::Sk { gammas, k }
}

fn normalize_skp(w: &[Letter], k: usize, p: usize) -> CanonicalWord {
    // Split at the a's: b^{β0} a b^{β1} ... a b^{βl}.
    let mut betas = vec![0usize];
    for &l in w {
        if l == A {
            if betas.len() > 1 && *betas.last().unwrap() == 0 {
                return CanonicalWord::Zero;
            }
            betas.push(0);
        } else {
            *betas.last_mut().unwrap() += 1;
        }
    }
    for b in betas.iter_mut() {
        *b = (*b).min(k);
    }
    let l = betas.len() - 1;
    // b^n a b^n a = 0 for n < k: pairs (i, i+1) with i < l - 1.
    for i in 0..l.saturating_sub(1) {
        if !prec(betas[i], betas[i + 1], k) {
            return CanonicalWord::Zero;
        }
    }
    // b^k (a b^k)^p = b^k: runs of k-blocks shrink by p.
    collapse_runs(&mut betas, k, p, 0);
    CanonicalWord::Skp { betas, k, p }
}

impl CanonicalWord {
    /// A word spelling this element (`None` for zero).
    pub fn word(&self) -> Option<Word> {
        match self {
            CanonicalWord::Zero => None,
            CanonicalWord::Sk { gammas, .. } => {
                let mut w = Vec::new();
                for (i, &g) in gammas.iter().enumerate() {
                    w.extend(std::iter::repeat_n(if i % 2 == 0 { A } else { B }, g));
                }
                Some(w)
            }
            CanonicalWord::Skp { betas, .. } => {
                let mut w = Vec::new();
                for (i, &b) in betas.iter().enumerate() {
                    if i > 0 {
                        w.push(A);
                    }
                    w.extend(std::iter::repeat_n(B, b));
                }
                Some(w)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CanonicalWord::Zero)
    }

    /// Literal check of the canonical-form constraints; conditions whose
    /// indices fall outside the sequence are vacuous.
    pub fn is_canonical(&self) -> bool {
        match self {
            CanonicalWord::Zero => true,
            CanonicalWord::Sk { gammas, k } => {
                let k = *k;
                let n = gammas.len();
                if n < 2 || n % 2 != 0 || gammas.iter().any(|&g| g > k) {
                    return false;
                }
                if gammas[1..n - 1].contains(&0) || gammas.iter().all(|&g| g == 0) {
                    return false;
                }
                let l = (n - 2) / 2;
                let last_nonzero = gammas[n - 1] != 0;
                for i in 0..n - 1 {
                    let required = (i + 1 < 2 * l) || (i + 1 == 2 * l && last_nonzero);
                    if required && !prec(gammas[i], gammas[i + 1], k) {
                        return false;
                    }
                }
                gammas.iter().filter(|&&g| g == k).count() <= 2
            }
            CanonicalWord::Skp { betas, k, p } => {
                let (k, p) = (*k, *p);
                let l = betas.len() - 1;
                if betas.iter().any(|&b| b > k) || (l == 0 && betas[0] == 0) {
                    return false;
                }
                if l >= 1 && betas[1..l].contains(&0) {
                    return false;
                }
                for i in 0..l.saturating_sub(1) {
                    if !prec(betas[i], betas[i + 1], k) {
                        return false;
                    }
                }
                betas.iter().filter(|&&b| b == k).count() <= p && l <= k + p
            }
        }
    }

    /// Number of a's for `S_k(p)` elements.
    pub fn a_count(&self) -> Option<usize> {
        match self {
            CanonicalWord::Skp { betas, .. } => Some(betas.len() - 1),
            CanonicalWord::Sk { gammas, .. } => Some(gammas.iter().step_by(2).sum()),
            CanonicalWord::Zero => None,
        }
    }
}

impl fmt::Display for CanonicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalWord::Zero => write!(f, "0"),
            CanonicalWord::Sk { gammas, .. } => {
                let parts: Vec<String> = gammas
                    .iter()
                    .enumerate()
                    .filter(|(_, &g)| g > 0)
                    .map(|(i, g)| format!("{}^{}", if i % 2 == 0 { 'a' } else { 'b' }, g))
                    .collect();
                write!(f, "{}", parts.join(" "))
            }
            CanonicalWord::Skp { betas, .. } => {
                let mut parts = Vec::new();
                for (i, &b) in betas.iter().enumerate() {
                    if i > 0 {
                        parts.push("a".to_string());
                    }
                    if b > 0 {
                        parts.push(format!("b^{b}"));
                    }
                }
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

/// Product of two elements via normalization of the concatenation.
pub fn multiply(x: &CanonicalWord, y: &CanonicalWord, k: usize, variant: Variant) -> CanonicalWord {
    match (x.word(), y.word()) {
        (Some(mut u), Some(v)) => {
            u.extend(v);
            normalize(&u, k, variant)
        }
        _ => CanonicalWord::Zero,
    }
}

// Enumerates exponent sequences satisfying the canonical constraints by
// depth-first search; `valid` decides complete candidates.
fn enumerate_sequences(
    first: (usize, usize),
    inner_max_len: usize,
    k: usize,
    prune: &dyn Fn(&[usize]) -> bool,
    valid: &dyn Fn(&[usize]) -> bool,
    out: &mut Vec<Vec<usize>>,
) {
    fn rec(
        cur: &mut Vec<usize>,
        max_len: usize,
        k: usize,
        prune: &dyn Fn(&[usize]) -> bool,
        valid: &dyn Fn(&[usize]) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !prune(cur) {
            return;
        }
        // Close the sequence with every allowed last exponent.
        for last in 0..=k {
            cur.push(last);
            if valid(cur) {
                out.push(cur.clone());
            }
            cur.pop();
        }
        if cur.len() + 1 < max_len {
            for e in 1..=k {
                cur.push(e);
                rec(cur, max_len, k, prune, valid, out);
                cur.pop();
            }
        }
    }
    for e0 in first.0..=first.1 {
        let mut cur = vec![e0];
        rec(&mut cur, inner_max_len, k, prune, valid, out);
    }
}

/// All canonical words of `S_k` or `S_k(p)`, zero last.
pub fn canonical_words(k: usize, variant: Variant) -> Result<Vec<CanonicalWord>> {
    check_params(k, variant)?;
    let mut seqs = Vec::new();
    let mut words: Vec<CanonicalWord> = match variant {
        Variant::Sk => {
            let make = |s: &[usize]| CanonicalWord::Sk { gammas: s.to_vec(), k };
            // A prefix whose interior pairs already fail can be dropped; the
            // last pair of a prefix may still become unconstrained.
            let prune = |s: &[usize]| {
                let n = s.len();
                n < 3 || (prec(s[n - 3], s[n - 2], k) || s[n - 3] == 0) && s.iter().filter(|&&e| e == k).count() <= 2
            };
            let valid = |s: &[usize]| s.len().is_multiple_of(2) && make(s).is_canonical();
            enumerate_sequences((0, k), 2 * k + 6, k, &prune, &valid, &mut seqs);
            seqs.into_iter().map(|s| make(&s)).collect()
        }
        Variant::Skp(p) => {
            let make = |s: &[usize]| CanonicalWord::Skp { betas: s.to_vec(), k, p };
            let prune = |s: &[usize]| {
                let n = s.len();
                (n < 3 || prec(s[n - 3], s[n - 2], k)) && s.iter().filter(|&&e| e == k).count() <= p
            };
            let valid = |s: &[usize]| make(s).is_canonical();
            // l = 0 words are single exponents.
            for b0 in 1..=k {
                seqs.push(vec![b0]);
            }
            let mut longer = Vec::new();
            enumerate_sequences((0, k), k + p + 1, k, &prune, &valid, &mut longer);
            seqs.extend(longer.into_iter().filter(|s| s.len() >= 2));
            seqs.into_iter().map(|s| make(&s)).collect()
        }
    };
    words.sort_by_key(|w| (w.word().map_or(usize::MAX, |w| w.len()), w.word()));
    words.dedup();
    words.push(CanonicalWord::Zero);
    Ok(words)
}

/// A built member of the family with its elements and distinguished indices.
#[derive(Debug, Clone)]
pub struct SkSemigroup {
    pub k: usize,
    pub variant: Variant,
    pub which: Which,
    pub semigroup: FiniteSemigroup,
    /// Element labels: canonical words for `S` and `T`, pairs for `R`.
    pub elements: Vec<String>,
    pub canonical: Vec<CanonicalWord>,
    /// For `R`: the two coordinate projections into `S` and the second factor.
    pub projections: Option<(Vec<usize>, Vec<usize>)>,
}

impl SkSemigroup {
    pub fn index_of(&self, w: &CanonicalWord) -> Option<usize> {
        self.canonical.iter().position(|c| c == w)
    }

    pub fn zero(&self) -> Option<usize> {
        self.index_of(&CanonicalWord::Zero)
    }
}

fn table_of(words: &[CanonicalWord], k: usize, variant: Variant) -> FiniteSemigroup {
    let index: HashMap<&CanonicalWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let names: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    FiniteSemigroup::from_fn(names, |x, y| index[&multiply(&words[x], &words[y], k, variant)])
        .expect("canonical words are closed under multiplication")
}

/// Builds `S`, `T` or `R` for the given parameters.
pub fn build(k: usize, variant: Variant, which: Which) -> Result<SkSemigroup> {
    let words = canonical_words(k, variant)?;
    let s = table_of(&words, k, variant);
    let a = words.iter().position(|w| w.word().as_deref() == Some(&[A][..])).expect("a is canonical");
    let b = words.iter().position(|w| w.word().as_deref() == Some(&[B][..])).expect("b is canonical");
    let zero = words.len() - 1;
    let mut gens = vec![a, b];
    if s.generated_by(&gens).len() != s.len() {
        // Zero is not a product of generators (k = 1); record it as a generator.
        gens.push(zero);
    }
    let s = s.with_generators(gens);
    match which {
        Which::S => Ok(SkSemigroup {
            k,
            variant,
            which,
            elements: words.iter().map(|w| w.to_string()).collect(),
            semigroup: s,
            canonical: words,
            projections: None,
        }),
        Which::T => {
            let keep: Vec<usize> = (0..words.len()).filter(|&i| in_t(&words[i], variant)).collect();
            let (t, emb) = subsemigroup(&s, &keep)?;
            let canonical: Vec<CanonicalWord> = emb.iter().map(|&i| words[i].clone()).collect();
            Ok(SkSemigroup {
                k,
                variant,
                which,
                elements: canonical.iter().map(|w| w.to_string()).collect(),
                semigroup: t,
                canonical,
                projections: None,
            })
        }
        Which::R => build_r(k, variant, &s, &words, a, b, None),
    }
}

/// Membership in `T_k` (first exponent nonzero) or `T_k(p)` (a-count divisible by p).
pub fn in_t(w: &CanonicalWord, variant: Variant) -> bool {
    match (w, variant) {
        (CanonicalWord::Zero, _) => true,
        (CanonicalWord::Sk { gammas, .. }, Variant::Sk) => gammas[0] != 0,
        (CanonicalWord::Skp { betas, .. }, Variant::Skp(p)) => (betas.len() - 1) % p == 0,
        _ => false,
    }
}

fn second_factor(variant: Variant) -> FiniteSemigroup {
    match variant {
        Variant::Sk => families::left_zero(2),
        Variant::Skp(p) => families::cyclic_group(p),
    }
}

// Default generator pairs: (a,a), (b,b) in S_k x LZ_2; (a,g), (b,1) in S_k(p) x C_p.
fn default_pairs(variant: Variant) -> [(Letter, usize); 2] {
    match variant {
        Variant::Sk => [(A, 0), (B, 1)],
        Variant::Skp(p) => [(A, 1 % p), (B, 0)],
    }
}

fn build_r(
    k: usize,
    variant: Variant,
    s: &FiniteSemigroup,
    words: &[CanonicalWord],
    a: usize,
    b: usize,
    pairs: Option<[(Letter, usize); 2]>,
) -> Result<SkSemigroup> {
    let other = second_factor(variant);
    let m = other.len();
    let prod = product(s, &other);
    let pairs = pairs.unwrap_or_else(|| default_pairs(variant));
    let gens: Vec<usize> = pairs.iter().map(|&(l, g)| (if l == A { a } else { b }) * m + g).collect();
    let elems = prod.generated_by(&gens);
    let (r, emb) = subsemigroup(&prod, &elems)?;
    let local_gens: Vec<usize> = gens.iter().map(|g| emb.binary_search(g).expect("generator in R")).collect();
    let r = r.with_generators(local_gens);
    let pi1: Vec<usize> = emb.iter().map(|&x| x / m).collect();
    let pi2: Vec<usize> = emb.iter().map(|&x| x % m).collect();
    let canonical: Vec<CanonicalWord> = pi1.iter().map(|&i| words[i].clone()).collect();
    let elements = emb.iter().map(|&x| format!("({}, {})", words[x / m], other.name(x % m))).collect();
    Ok(SkSemigroup { k, variant, which: Which::R, semigroup: r, elements, canonical, projections: Some((pi1, pi2)) })
}

/// Outcome of the Mal'cev witness checks on `R`.
#[derive(Debug, Clone, Serialize)]
pub struct MalcevReport {
    pub k: usize,
    pub variant: Variant,
    pub r_size: usize,
    pub s_size: usize,
    pub t_size: usize,
    pub projections_onto: bool,
    pub projections_homomorphic: bool,
    /// Per idempotent `e` of the second factor: size of the preimage and the
    /// isomorphism used, if found.
    pub preimages: Vec<PreimageCheck>,
    pub s_is_image_of_r: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PreimageCheck {
    pub idempotent: String,
    pub size: usize,
    pub isomorphism: Option<String>,
}

/// Verifies the witness structure of `R`: both projections onto and
/// homomorphic, each idempotent preimage isomorphic to `T`, and `S` an image of `R`.
pub fn malcev_witness_check(k: usize, variant: Variant) -> Result<MalcevReport> {
    malcev_witness_check_with(k, variant, default_pairs(variant))
}

/// Same as [`malcev_witness_check`] with explicit generator pairs
/// `(letter, element of the second factor)`.
pub fn malcev_witness_check_with(k: usize, variant: Variant, pairs: [(Letter, usize); 2]) -> Result<MalcevReport> {
    let words = canonical_words(k, variant)?;
    let s = table_of(&words, k, variant);
    let a = words.iter().position(|w| w.word().as_deref() == Some(&[A][..])).expect("a");
    let b = words.iter().position(|w| w.word().as_deref() == Some(&[B][..])).expect("b");
    let r = build_r(k, variant, &s, &words, a, b, Some(pairs))?;
    let t = build(k, variant, Which::T)?;
    let other = second_factor(variant);
    let (pi1, pi2) = r.projections.clone().expect("R has projections");
    let rs = &r.semigroup;

    let onto = |f: &[usize], n: usize| {
        let mut hit = vec![false; n];
        for &x in f {
            hit[x] = true;
        }
        hit.iter().all(|&h| h)
    };
    let projections_onto = onto(&pi1, s.len()) && onto(&pi2, other.len());
    if !projections_onto {
        return Err(SkError::WitnessFailed("projections onto both factors".into()));
    }
    let projections_homomorphic = hom_check(rs, &s, &pi1).is_ok() && hom_check(rs, &other, &pi2).is_ok();
    if !projections_homomorphic {
        return Err(SkError::WitnessFailed("projections are homomorphisms".into()));
    }

    let t_index: HashMap<&CanonicalWord, usize> = t.canonical.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut preimages = Vec::new();
    for e in other.idempotents() {
        let members: Vec<usize> = (0..rs.len()).filter(|&x| pi2[x] == e).collect();
        let (sub, emb) = subsemigroup(rs, &members)?;
        let mut found = None;
        for (label, swap) in [("first projection", false), ("first projection then a<->b", true)] {
            let cand: Option<Vec<usize>> = emb
                .iter()
                .map(|&x| {
                    let w = if swap { swap_letters(&r.canonical[x], k, variant) } else { r.canonical[x].clone() };
                    t_index.get(&w).copied()
                })
                .collect();
            if let Some(f) = cand {
                let bijective = sub.len() == t.semigroup.len() && onto(&f, t.semigroup.len());
                if bijective && hom_check(&sub, &t.semigroup, &f).is_ok() {
                    found = Some(label.to_string());
                    break;
                }
            }
        }
        if found.is_none() {
            return Err(SkError::WitnessFailed(format!("preimage of {} is isomorphic to T", other.name(e))));
        }
        preimages.push(PreimageCheck { idempotent: other.name(e).to_string(), size: sub.len(), isomorphism: found });
    }
    // pi1 is an onto homomorphism, so S is an image of R.
    let s_is_image_of_r = projections_onto && projections_homomorphic;
    Ok(MalcevReport {
        k,
        variant,
        r_size: rs.len(),
        s_size: s.len(),
        t_size: t.semigroup.len(),
        projections_onto,
        projections_homomorphic,
        preimages,
        s_is_image_of_r,
    })
}

// The automorphism of S_k exchanging a and b.
fn swap_letters(w: &CanonicalWord, k: usize, variant: Variant) -> CanonicalWord {
    match w.word() {
        None => CanonicalWord::Zero,
        Some(word) => {
            let swapped: Word = word.iter().map(|&l| 1 - l).collect();
            normalize(&swapped, k, variant)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn w(s: &str) -> Word {
        Alphabet::ab().parse(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&w("aaa"), 2, Variant::Sk).to_string(), "a^2");
        assert_eq!(normalize(&w("aba"), 2, Variant::Sk), CanonicalWord::Zero);
        assert_eq!(normalize(&w("aabbaabbaa"), 2, Variant::Sk).to_string(), "a^2");
        assert_eq!(normalize(&w("aa"), 3, Variant::Skp(2)), CanonicalWord::Zero);
        assert_eq!(normalize(&w("aabba"), 2, Variant::Sk).to_string(), "a^2 b^2 a^1");
        assert_eq!(normalize(&w("bbabb"), 2, Variant::Skp(2)).to_string(), "b^2 a b^2");
    }

    #[test]
    fn canonical_words_are_canonical_and_fixed() {
        for (k, v) in [(1, Variant::Sk), (2, Variant::Sk), (3, Variant::Sk), (2, Variant::Skp(2)), (3, Variant::Skp(3))]
        {
            for c in canonical_words(k, v).unwrap() {
                assert!(c.is_canonical(), "{c}");
                if let Some(word) = c.word() {
                    assert_eq!(normalize(&word, k, v), c);
                }
            }
        }
    }

    #[test]
    fn built_tables_validate() {
        for (k, v) in [(1, Variant::Sk), (2, Variant::Sk), (2, Variant::Skp(2)), (3, Variant::Skp(2))] {
            for which in [Which::S, Which::T, Which::R] {
                let s = build(k, v, which).unwrap();
                s.semigroup.validate().unwrap();
            }
        }
    }

    #[test]
    fn t_membership() {
        let t = build(2, Variant::Sk, Which::T).unwrap();
        assert!(t.canonical.iter().all(|c| match c {
            CanonicalWord::Sk { gammas, .. } => gammas[0] != 0,
            CanonicalWord::Zero => true,
            _ => false,
        }));
        let tp = build(2, Variant::Skp(2), Which::T).unwrap();
        assert!(tp.canonical.iter().all(|c| c.a_count().is_none_or(|l| l % 2 == 0)));
    }

    #[test]
    fn malcev_witnesses() {
        let r = malcev_witness_check(2, Variant::Sk).unwrap();
        assert_eq!(r.preimages.len(), 2);
        let rp = malcev_witness_check(2, Variant::Skp(2)).unwrap();
        assert_eq!(rp.preimages.len(), 1);
        let planted = malcev_witness_check_with(2, Variant::Sk, [(A, 0), (A, 1)]);
        assert!(matches!(planted, Err(SkError::WitnessFailed(_))));
    }

    #[test]
    fn bad_parameters() {
        assert!(build(0, Variant::Sk, Which::S).is_err());
        assert!(build(2, Variant::Skp(4), Which::S).is_err());
        assert!(build(1, Variant::Skp(2), Which::S).is_err());
    }
}
