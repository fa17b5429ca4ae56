//! Loading semigroups, digraphs and word lists from arguments.

use std::path::Path;

use anyhow::{anyhow, bail, Context};

use finsemi::graphs::{build_mn, gamma, transition_monoid, LabeledDigraph};
use finsemi::sk::{self, Variant, Which};
use finsemi::words::{Alphabet, Word};
use finsemi::{families, FiniteSemigroup};

/// A semigroup JSON file, or a built-in name such as `sk:2`, `skp:2:3`,
/// `t:2`, `r:2`, `mn:1`, `gamma:1`, `cyclic:3`, `nil:3`, `chain:3`,
/// `left-zero:2`, `capped:3` or `trivial`.
pub fn semigroup(arg: &str, budget: usize) -> anyhow::Result<FiniteSemigroup> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return FiniteSemigroup::from_json(&text).with_context(|| format!("loading {arg}"));
    }
    builtin(arg, budget)?.ok_or_else(|| anyhow!("{arg}: no such file or built-in semigroup"))
}

fn builtin(arg: &str, budget: usize) -> anyhow::Result<Option<FiniteSemigroup>> {
    let mut parts = arg.split(':');
    let head = parts.next().unwrap_or("");
    let args: Vec<usize> = match parts.map(str::parse).collect() {
        Ok(a) => a,
        Err(_) => return Ok(None),
    };
    let family = |k: usize, p: Option<usize>, which| -> anyhow::Result<FiniteSemigroup> {
        let v = p.map_or(Variant::Sk, Variant::Skp);
        Ok(sk::build(k, v, which)?.semigroup)
    };
    let s = match (head, args.as_slice()) {
        ("trivial", []) => families::trivial(),
        ("cyclic", [n]) if *n >= 1 => families::cyclic_group(*n),
        ("nil", [n]) if *n >= 2 => families::nilpotent_monogenic(*n),
        ("chain", [n]) if *n >= 1 => families::chain_semilattice(*n),
        ("left-zero", [n]) if *n >= 1 => families::left_zero(*n),
        ("capped", [m]) => families::capped_addition(*m),
        ("sk", [k]) => family(*k, None, Which::S)?,
        ("skp", [k, p]) => family(*k, Some(*p), Which::S)?,
        ("t", [k]) => family(*k, None, Which::T)?,
        ("tp", [k, p]) => family(*k, Some(*p), Which::T)?,
        ("r", [k]) => family(*k, None, Which::R)?,
        ("rp", [k, p]) => family(*k, Some(*p), Which::R)?,
        ("gamma", [n]) => transition_monoid(&gamma(*n), budget)?.closure.semigroup,
        ("mn", [n]) => build_mn(*n, budget)?.levels.pop().expect("tower has a top").closure.semigroup,
        _ => return Ok(None),
    };
    Ok(Some(s))
}

pub fn digraph(path: &Path) -> anyhow::Result<LabeledDigraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    LabeledDigraph::from_json(&text).with_context(|| format!("loading {}", path.display()))
}

/// Comma separated nonempty words over their inferred alphabet.
pub fn word_list(text: &str) -> anyhow::Result<(Vec<Word>, Alphabet)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        bail!("empty word in {text:?}");
    }
    let alphabet = Alphabet::infer(&parts.concat());
    let words = parts.iter().map(|p| alphabet.parse(p)).collect::<Result<_, _>>()?;
    Ok((words, alphabet))
}

/// `a=x,b=y`: letters and the names of their images.
pub fn letter_images(text: &str, s: &FiniteSemigroup) -> anyhow::Result<(Alphabet, Vec<usize>)> {
    let mut letters = Vec::new();
    let mut images = Vec::new();
    for item in text.split(',') {
        let (l, x) = item.split_once('=').ok_or_else(|| anyhow!("--images entry {item:?} is not letter=element"))?;
        let mut chars = l.trim().chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            bail!("--images: {l:?} is not a single letter");
        };
        if letters.contains(&c) {
            bail!("--images: letter {c:?} given twice");
        }
        letters.push(c);
        images.push(element(x.trim(), s)?);
    }
    Ok((Alphabet::new(letters), images))
}

/// Comma separated element names (or indices).
pub fn names(text: &str, s: &FiniteSemigroup) -> anyhow::Result<Vec<usize>> {
    text.split(',').map(|x| element(x.trim(), s)).collect()
}

fn element(name: &str, s: &FiniteSemigroup) -> anyhow::Result<usize> {
    if let Some(x) = s.index_of(name) {
        return Ok(x);
    }
    match name.parse::<usize>() {
        Ok(i) if i < s.len() => Ok(i),
        _ => bail!("no element named {name:?}"),
    }
}
