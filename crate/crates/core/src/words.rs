//! Words over small alphabets, substitutions and repetition tests.

use std::collections::BTreeSet;

use thiserror::Error;

pub type Letter = u8;
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("image of letter {0:?} is empty")]
    EmptyImage(char),
    #[error("substitution needs one image per letter, got {0}")]
    ImageCount(usize),
}

/// Letter codes `0..len` printed as the stored characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Self {
        Alphabet { letters: letters.into_iter().collect() }
    }

    pub fn ab() -> Self {
        Self::new(['a', 'b'])
    }

    pub fn abc() -> Self {
        Self::new(['a', 'b', 'c'])
    }

    /// Distinct characters of `text` in sorted order, whitespace skipped.
    pub fn infer(text: &str) -> Self {
        let set: BTreeSet<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        Self::new(set)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, c: char) -> Option<Letter> {
        self.letters.iter().position(|&x| x == c).map(|i| i as Letter)
    }

    pub fn char_of(&self, l: Letter) -> char {
        self.letters[l as usize]
    }

    /// Parses a word; whitespace is ignored.
    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        text.chars().filter(|c| !c.is_whitespace()).map(|c| self.letter(c).ok_or(WordError::UnknownLetter(c))).collect()
    }

    pub fn render(&self, w: &[Letter]) -> String {
        w.iter().map(|&l| self.char_of(l)).collect()
    }
}

/// A substitution (morphism of free monoids) with nonempty images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self, WordError> {
        if images.len() != alphabet.len() {
            return Err(WordError::ImageCount(images.len()));
        }
        if let Some(i) = images.iter().position(|w| w.is_empty()) {
            return Err(WordError::EmptyImage(alphabet.char_of(i as Letter)));
        }
        Ok(Substitution { alphabet, images })
    }

    /// Builds a substitution from textual images, one per alphabet letter.
    pub fn from_strs(alphabet: Alphabet, images: &[&str]) -> Result<Self, WordError> {
        let imgs = images.iter().map(|s| alphabet.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(alphabet, imgs)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, l: Letter) -> &[Letter] {
        &self.images[l as usize]
    }

    /// The image of `l` starts with `l`, so iterates of `l` are prefixes of each other.
    pub fn is_prolongable(&self, l: Letter) -> bool {
        self.images[l as usize][0] == l
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        w.iter().flat_map(|&l| self.images[l as usize].iter().copied()).collect()
    }

    pub fn iterate_word(&self, w: &[Letter], n: usize) -> Word {
        let mut cur = w.to_vec();
        for _ in 0..n {
            cur = self.apply(&cur);
        }
        cur
    }

    /// `n`-fold image of a letter.
    pub fn iterate(&self, l: Letter, n: usize) -> Word {
        self.iterate_word(&[l], n)
    }
}

/// The Prouhet–Thue–Morse substitution `a -> ab, b -> ba`.
pub fn thue_morse() -> Substitution {
    Substitution::from_strs(Alphabet::ab(), &["ab", "ba"]).unwrap()
}

/// The square-free substitution `a -> abc, b -> ac, c -> b`.
pub fn square_free_sub() -> Substitution {
    Substitution::from_strs(Alphabet::abc(), &["abc", "ac", "b"]).unwrap()
}

/// Longest run of positions `i` with `w[i] == w[i + p]`.
fn longest_period_run(w: &[Letter], p: usize) -> usize {
    let mut best = 0;
    let mut run = 0;
    for i in 0..w.len().saturating_sub(p) {
        if w[i] == w[i + p] {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

// A factor of length L with period p exists iff some run of matches at
// distance p has length at least L - p.
fn has_periodic_factor(w: &[Letter], extra: impl Fn(usize) -> usize) -> bool {
    (1..=w.len() / 2).any(|p| longest_period_run(w, p) >= extra(p))
}

/// No factor `uvuvu` with `u` nonempty.
pub fn is_overlap_free(w: &[Letter]) -> bool {
    !has_periodic_factor(w, |p| p + 1)
}

/// No factor `uuu` with `u` nonempty.
pub fn is_cube_free(w: &[Letter]) -> bool {
    !has_periodic_factor(w, |p| 2 * p)
}

/// No factor `uu` with `u` nonempty.
pub fn is_square_free(w: &[Letter]) -> bool {
    !has_periodic_factor(w, |p| p)
}

/// All nonempty factors of length at most `maxlen`.
pub fn factors(w: &[Letter], maxlen: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for i in 0..w.len() {
        for j in i + 1..=(i + maxlen).min(w.len()) {
            out.insert(w[i..j].to_vec());
        }
    }
    out
}

pub fn is_factor(u: &[Letter], w: &[Letter]) -> bool {
    u.is_empty() || w.windows(u.len()).any(|x| x == u)
}

/// Scattered subword (subsequence) test.
pub fn is_subword(u: &[Letter], w: &[Letter]) -> bool {
    let mut it = w.iter();
    u.iter().all(|c| it.any(|d| d == c))
}

/// All words of length `n` over `k` letters, lexicographic.
pub fn all_words(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k as Letter).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}
