use serde::Serialize;

use super::{normalize, CanonicalWord, Result, SkError, Variant, A, B};
use crate::words::{Letter, Word};

/// An increasing sequence of positive integers given by a finite prefix;
/// past the prefix each term is one more than the previous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sequence {
    pub prefix: Vec<usize>,
}

impl Sequence {
    pub fn new(prefix: Vec<usize>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(SkError::BadSequence("empty prefix".into()));
        }
        if prefix[0] == 0 || prefix.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SkError::BadSequence(format!("{prefix:?}")));
        }
        Ok(Sequence { prefix })
    }

    /// The 1-based term `s_i`.
    pub fn term(&self, i: usize) -> usize {
        assert!(i >= 1);
        let n = self.prefix.len();
        if i <= n {
            self.prefix[i - 1]
        } else {
            self.prefix[n - 1] + (i - n)
        }
    }
}

/// Parses `1,2,3` or `1,2,3,...`.
pub fn parse_sequence(text: &str) -> Result<Sequence> {
    let mut terms = Vec::new();
    for part in text.split(',').map(str::trim) {
        if part.is_empty() || part == "..." || part == "…" {
            continue;
        }
        terms.push(part.parse::<usize>().map_err(|_| SkError::BadSequence(text.to_string()))?);
    }
    Sequence::new(terms)
}

fn push_pow(w: &mut Word, l: Letter, e: usize) {
    w.extend(std::iter::repeat_n(l, e));
}

/// The i-th word (1-based) built from `s`.
pub fn sequence_word(s: &Sequence, variant: Variant, i: usize) -> Word {
    let mut w = Vec::new();
    match variant {
        Variant::Sk => {
            for m in 1..=i {
                push_pow(&mut w, A, s.term(2 * m - 1));
                push_pow(&mut w, B, s.term(2 * m));
            }
        }
        Variant::Skp(p) => {
            for m in 1..=p * i {
                w.push(A);
                push_pow(&mut w, B, p * s.term(m));
            }
        }
    }
    w
}

/// The words `w_1, ..., w_m`.
pub fn separating_sequence(s: &Sequence, variant: Variant, m: usize) -> Vec<Word> {
    (1..=m).map(|i| sequence_word(s, variant, i)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Separation {
    /// First index where the sequences differ.
    pub j: usize,
    pub k: usize,
    /// True when `t_j < s_j` and the roles were exchanged.
    pub swapped: bool,
    pub stabilized_at: usize,
    pub image_s: String,
    pub image_t: String,
    pub expected_s: String,
    pub expected_t: String,
    pub matches_closed_form: bool,
    pub separated: bool,
}

/// Number of consecutive equal images required to call a sequence stable.
const WINDOW: usize = 6;

/// Evaluates both sequences in `S_k` (resp. `S_k(p)`) with `k` chosen from
/// the first disagreement and compares the stabilized images.
pub fn separation_check(s: &Sequence, t: &Sequence, variant: Variant, limit: usize) -> Result<Separation> {
    let horizon = s.prefix.len().max(t.prefix.len()) + 1;
    let j = (1..=horizon)
        .find(|&i| s.term(i) != t.term(i))
        .ok_or_else(|| SkError::BadSequence("sequences are equal".into()))?;
    let swapped = t.term(j) < s.term(j);
    let (s, t) = if swapped { (t, s) } else { (s, t) };
    let sj = s.term(j);
    let k = match variant {
        Variant::Sk => sj + 1,
        Variant::Skp(p) => p * (sj + 1),
    };
    let (at_s, image_s) = stabilize(s, variant, k, limit)?;
    let (at_t, image_t) = stabilize(t, variant, k, limit)?;
    let (expected_s, expected_t) = closed_forms(s, variant, j, k);
    let matches_closed_form = image_s == expected_s && image_t == expected_t;
    Ok(Separation {
        j,
        k,
        swapped,
        stabilized_at: at_s.max(at_t),
        separated: image_s != image_t,
        image_s: image_s.to_string(),
        image_t: image_t.to_string(),
        expected_s: expected_s.to_string(),
        expected_t: expected_t.to_string(),
        matches_closed_form,
    })
}

fn stabilize(s: &Sequence, variant: Variant, k: usize, limit: usize) -> Result<(usize, CanonicalWord)> {
    let images: Vec<CanonicalWord> =
        (1..=limit).map(|i| normalize(&sequence_word(s, variant, i), k, variant)).collect();
    for start in 0..images.len().saturating_sub(WINDOW - 1) {
        if images[start..start + WINDOW].iter().all(|c| *c == images[start]) {
            return Ok((start + 1, images[start].clone()));
        }
    }
    Err(SkError::NotStabilized(limit))
}

// The stabilized images predicted by the separation argument, with `s_j < t_j`.
fn closed_forms(s: &Sequence, variant: Variant, j: usize, k: usize) -> (CanonicalWord, CanonicalWord) {
    let mut ws = Vec::new();
    let wt = match variant {
        Variant::Sk => {
            let letter = |m: usize| if m % 2 == 1 { A } else { B };
            for m in 1..j {
                push_pow(&mut ws, letter(m), s.term(m));
            }
            let mut wt = ws.clone();
            push_pow(&mut ws, letter(j), s.term(j));
            if j.is_multiple_of(2) {
                push_pow(&mut ws, A, k);
                push_pow(&mut ws, B, k);
                push_pow(&mut wt, B, k);
            } else {
                push_pow(&mut ws, B, k);
                push_pow(&mut wt, A, k);
                push_pow(&mut wt, B, k);
            }
            wt
        }
        Variant::Skp(p) => {
            for m in 1..j {
                ws.push(A);
                push_pow(&mut ws, B, p * s.term(m));
            }
            let mut wt = ws.clone();
            ws.push(A);
            push_pow(&mut ws, B, p * s.term(j));
            let l = (p - (j + 1) % p) % p + 1;
            for _ in 0..l {
                ws.push(A);
                push_pow(&mut ws, B, k);
            }
            for _ in 0..(l % p) + 1 {
                wt.push(A);
                push_pow(&mut wt, B, k);
            }
            wt
        }
    };
    (normalize(&ws, k, variant), normalize(&wt, k, variant))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn render(w: &Word) -> String {
        Alphabet::ab().render(w)
    }

    #[test]
    fn sequence_words() {
        let s = Sequence::new(vec![1, 2, 3, 4]).unwrap();
        let ws = separating_sequence(&s, Variant::Sk, 2);
        assert_eq!(ws.iter().map(render).collect::<Vec<_>>(), ["abb", "abbaaabbbb"]);
        let s = Sequence::new(vec![1, 2]).unwrap();
        assert_eq!(render(&separating_sequence(&s, Variant::Skp(2), 1)[0]), "abbabbbb");
        assert!(separating_sequence(&s, Variant::Sk, 0).is_empty());
    }

    #[test]
    fn continuation() {
        let s = parse_sequence("1,2,5,...").unwrap();
        assert_eq!((1..=6).map(|i| s.term(i)).collect::<Vec<_>>(), [1, 2, 5, 6, 7, 8]);
        assert!(parse_sequence("2,2").is_err());
        assert!(parse_sequence("0,1").is_err());
    }

    #[test]
    fn separates_sk() {
        let s = parse_sequence("1,2,3").unwrap();
        let t = parse_sequence("1,2,4").unwrap();
        let r = separation_check(&s, &t, Variant::Sk, 64).unwrap();
        assert_eq!((r.j, r.k), (3, 4));
        assert!(r.separated && r.matches_closed_form);
        assert_eq!(r.image_s, "a^1 b^2 a^3 b^4");
        assert_eq!(r.image_t, "a^1 b^2 a^4 b^4");
        let back = separation_check(&t, &s, Variant::Sk, 64).unwrap();
        assert!(back.swapped && back.separated);
    }

    #[test]
    fn separates_even_index_and_skp() {
        let s = parse_sequence("1,2,4").unwrap();
        let t = parse_sequence("1,3,4").unwrap();
        let r = separation_check(&s, &t, Variant::Sk, 64).unwrap();
        assert!(r.separated && r.matches_closed_form && r.j == 2);
        for p in [2, 3] {
            let s = parse_sequence("1").unwrap();
            let t = parse_sequence("2").unwrap();
            let r = separation_check(&s, &t, Variant::Skp(p), 32).unwrap();
            assert!(r.separated && r.matches_closed_form, "{r:?}");
            assert_eq!(r.j, 1);
        }
    }

    #[test]
    fn equal_sequences_rejected() {
        let s = parse_sequence("1,2,3").unwrap();
        let t = parse_sequence("1,2").unwrap();
        assert!(matches!(separation_check(&s, &t, Variant::Sk, 64), Err(SkError::BadSequence(_))));
    }
}
