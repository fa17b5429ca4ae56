//! Edge-labeled digraphs, partial maps on their vertices and flower digraphs.

mod fold;
mod monoid;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::SemigroupError;
use crate::words::{thue_morse, Alphabet, Letter, Word};

pub use fold::{canonical_form, isomorphic, lambda, stallings_fold, stallings_fold_with};
pub use monoid::{
    act_union, build_mn, gamma_union, graph_hom_gamma, lifting_words, transition_monoid, tree_witness, GammaHom, Lift,
    MnTower, TransitionMonoid, TransitionReport, TreeWitness,
};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} has two outgoing edges labeled {1:?}")]
    NotDeterministic(String, char),
    #[error("{0} is not a prefix of the image of either letter")]
    NotAPrefix(String),
    #[error("construction check failed: {0}")]
    CheckFailed(String),
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("malformed digraph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// A partial function on `0..n`. Words act on the right, so composition
/// `f.then(g)` applies `f` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    image: Vec<Option<u32>>,
}

impl PartialMap {
    pub fn identity(n: usize) -> Self {
        PartialMap { image: (0..n as u32).map(Some).collect() }
    }

    pub fn empty(n: usize) -> Self {
        PartialMap { image: vec![None; n] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::empty(n);
        for (x, y) in pairs {
            m.image[x] = Some(y as u32);
        }
        m
    }

    pub fn universe(&self) -> usize {
        self.image.len()
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.image[x].map(|y| y as usize)
    }

    pub fn then(&self, g: &PartialMap) -> PartialMap {
        PartialMap { image: self.image.iter().map(|y| y.and_then(|y| g.image[y as usize])).collect() }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.image.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y as usize))).collect()
    }

    pub fn domain(&self) -> Vec<usize> {
        self.image.iter().enumerate().filter(|(_, y)| y.is_some()).map(|(x, _)| x).collect()
    }

    pub fn is_empty_map(&self) -> bool {
        self.image.iter().all(|y| y.is_none())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        for y in self.image.iter().flatten() {
            if std::mem::replace(&mut seen[*y as usize], true) {
                return false;
            }
        }
        true
    }

    /// Graph contained in the identity.
    pub fn is_partial_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, y)| y.is_none_or(|y| y as usize == x))
    }

    /// Graph of `other` is a subset of the graph of `self`.
    pub fn contains(&self, other: &PartialMap) -> bool {
        other.image.iter().zip(&self.image).all(|(o, s)| o.is_none() || o == s)
    }

    /// Restriction to the block `start..start + len`, renumbered from 0.
    /// Returns `None` when some point of the block leaves it.
    pub fn restrict(&self, start: usize, len: usize) -> Option<PartialMap> {
        let mut image = Vec::with_capacity(len);
        for x in start..start + len {
            match self.image[x] {
                None => image.push(None),
                Some(y) if (start..start + len).contains(&(y as usize)) => image.push(Some(y - start as u32)),
                Some(_) => return None,
            }
        }
        Some(PartialMap { image })
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.pairs().iter().map(|&(x, y)| format!("{}->{}", names[x], names[y])).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// A digraph with letter-labeled edges and named basepoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDigraph {
    alphabet: Alphabet,
    names: Vec<String>,
    edges: BTreeSet<(usize, Letter, usize)>,
    basepoints: BTreeMap<String, usize>,
}

impl LabeledDigraph {
    pub fn new(alphabet: Alphabet) -> Self {
        LabeledDigraph { alphabet, names: Vec::new(), edges: BTreeSet::new(), basepoints: BTreeMap::new() }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, src: usize, label: Letter, dst: usize) {
        assert!(src < self.names.len() && dst < self.names.len());
        self.edges.insert((src, label, dst));
    }

    pub fn set_basepoint(&mut self, name: impl Into<String>, v: usize) {
        self.basepoints.insert(name.into(), v);
    }

    pub fn basepoint(&self, name: &str) -> Option<usize> {
        self.basepoints.get(name).copied()
    }

    pub fn basepoints(&self) -> &BTreeMap<String, usize> {
        &self.basepoints
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> impl Iterator<Item = &(usize, Letter, usize)> {
        self.edges.iter()
    }

    pub fn is_deterministic(&self) -> bool {
        self.first_clash(false).is_none()
    }

    pub fn is_codeterministic(&self) -> bool {
        self.first_clash(true).is_none()
    }

    fn first_clash(&self, reverse: bool) -> Option<(usize, Letter)> {
        let mut seen = BTreeSet::new();
        for &(s, l, d) in &self.edges {
            let key = if reverse { (d, l) } else { (s, l) };
            if !seen.insert(key) {
                return Some(key);
            }
        }
        None
    }

    /// The partial map of each letter; fails unless the graph is deterministic.
    pub fn letter_maps(&self) -> Result<Vec<PartialMap>> {
        if let Some((v, l)) = self.first_clash(false) {
            return Err(GraphError::NotDeterministic(self.names[v].clone(), self.alphabet.char_of(l)));
        }
        let n = self.vertex_count();
        let mut maps = vec![PartialMap::empty(n); self.alphabet.len()];
        for &(s, l, d) in &self.edges {
            maps[l as usize].image[s] = Some(d as u32);
        }
        Ok(maps)
    }

    /// Disjoint union; vertex names get the prefix of their component's
    /// basepoint-free index only on collision. Returns the offsets.
    pub fn disjoint_union(parts: &[LabeledDigraph]) -> (LabeledDigraph, Vec<usize>) {
        let alphabet = parts.first().map(|g| g.alphabet.clone()).unwrap_or_else(Alphabet::ab);
        let mut out = LabeledDigraph::new(alphabet);
        let mut offsets = Vec::with_capacity(parts.len());
        let mut used: BTreeSet<String> = BTreeSet::new();
        for (i, g) in parts.iter().enumerate() {
            let off = out.vertex_count();
            offsets.push(off);
            for name in &g.names {
                let name = if used.contains(name) { format!("{i}:{name}") } else { name.clone() };
                used.insert(name.clone());
                out.add_vertex(name);
            }
            for &(s, l, d) in &g.edges {
                out.add_edge(s + off, l, d + off);
            }
            for (b, &v) in &g.basepoints {
                out.set_basepoint(b.clone(), v + off);
            }
        }
        (out, offsets)
    }

    pub fn to_file(&self) -> DigraphFile {
        DigraphFile {
            vertices: self.names.clone(),
            edges: self.edges.iter().map(|&(s, l, d)| (s, self.alphabet.char_of(l).to_string(), d)).collect(),
            basepoints: self.basepoints.clone(),
        }
    }

    pub fn from_file(file: &DigraphFile) -> Result<Self> {
        let mut labels: BTreeSet<char> = BTreeSet::new();
        for (_, l, _) in &file.edges {
            let mut it = l.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => {
                    labels.insert(c);
                }
                _ => return Err(GraphError::UnknownLabel(l.clone())),
            }
        }
        let alphabet = Alphabet::new(labels);
        let mut g = LabeledDigraph::new(alphabet);
        for n in &file.vertices {
            g.add_vertex(n.clone());
        }
        for (s, l, d) in &file.edges {
            let n = g.vertex_count();
            if *s >= n || *d >= n {
                return Err(GraphError::UnknownVertex((*s).max(*d)));
            }
            let c = l.chars().next().expect("checked above");
            let letter = g.alphabet.letter(c).expect("alphabet built from labels");
            g.add_edge(*s, letter, *d);
        }
        for (b, &v) in &file.basepoints {
            if v >= g.vertex_count() {
                return Err(GraphError::UnknownVertex(v));
            }
            g.set_basepoint(b.clone(), v);
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("digraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for (v, n) in self.names.iter().enumerate() {
            let shape = if self.basepoints.values().any(|&b| b == v) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {v} [label=\"{n}\", shape={shape}];");
        }
        for &(s, l, d) in &self.edges {
            let _ = writeln!(out, "  {s} -> {d} [label=\"{}\"];", self.alphabet.char_of(l));
        }
        out.push_str("}\n");
        out
    }
}

/// On-disk digraph format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, String, usize)>,
    #[serde(default)]
    pub basepoints: BTreeMap<String, usize>,
}

/// Flower digraph: one closed petal per word, all glued at vertex 0 (`q0`).
/// Inner vertices are named by the prefix read so far.
pub fn flower(words: &[Word], alphabet: &Alphabet) -> LabeledDigraph {
    assert!(!words.is_empty() && words.iter().all(|w| !w.is_empty()), "flower needs nonempty words");
    let mut g = LabeledDigraph::new(alphabet.clone());
    let q0 = g.add_vertex("q0");
    g.set_basepoint("q0", q0);
    let mut used: BTreeSet<String> = BTreeSet::new();
    for (i, w) in words.iter().enumerate() {
        let mut prev = q0;
        for k in 1..w.len() {
            let prefix = alphabet.render(&w[..k]);
            let name = if used.contains(&prefix) { format!("{prefix}#{i}") } else { prefix };
            used.insert(name.clone());
            let v = g.add_vertex(name);
            g.add_edge(prev, w[k - 1], v);
            prev = v;
        }
        g.add_edge(prev, w[w.len() - 1], q0);
    }
    g
}

/// `Γ_n`, the flower of `μ^n(a)` and `μ^n(b)`, with basepoint `0_n`.
pub fn gamma(n: usize) -> LabeledDigraph {
    let mu = thue_morse();
    let ab = Alphabet::ab();
    let mut g = flower(&[mu.iterate(0, n), mu.iterate(1, n)], &ab);
    let base = format!("0_{n}");
    g.names[0] = base.clone();
    g.basepoints.clear();
    g.set_basepoint(base, 0);
    // Inner names are prefixes; qualify them by level so unions stay readable.
    for name in g.names.iter_mut().skip(1) {
        *name = format!("0_{n}.{name}");
    }
    g
}

/// Action of a word: letter maps composed left to right; the empty word is
/// the identity.
pub fn act(g: &LabeledDigraph, w: &[Letter]) -> Result<PartialMap> {
    let maps = g.letter_maps()?;
    Ok(act_with(&maps, g.vertex_count(), w))
}

pub(crate) fn act_with(maps: &[PartialMap], n: usize, w: &[Letter]) -> PartialMap {
    let mut image: Vec<Option<u32>> = (0..n as u32).map(Some).collect();
    for &l in w {
        let m = &maps[l as usize];
        for y in image.iter_mut() {
            *y = y.and_then(|v| m.image[v as usize]);
        }
    }
    PartialMap { image }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_shapes() {
        let g0 = gamma(0);
        assert_eq!(g0.vertex_count(), 1);
        assert_eq!(g0.edge_count(), 2);
        let g1 = gamma(1);
        assert_eq!(g1.vertex_count(), 3);
        assert_eq!(g1.edge_count(), 4);
        for n in 0..=6 {
            let g = gamma(n);
            assert_eq!(g.vertex_count(), (1 << (n + 1)) - 1);
            assert!(g.is_deterministic() && g.is_codeterministic());
        }
    }

    #[test]
    fn gamma_one_action_of_ab() {
        let g1 = gamma(1);
        let ab = Alphabet::ab().parse("ab").unwrap();
        let m = act(&g1, &ab).unwrap();
        let a_vertex = g1.vertex("0_1.a").unwrap();
        let b_vertex = g1.vertex("0_1.b").unwrap();
        assert_eq!(m.pairs(), vec![(0, 0), (b_vertex, b_vertex)]);
        assert_eq!(m.get(a_vertex), None);
        assert_eq!(act(&g1, &[]).unwrap(), PartialMap::identity(3));
    }

    #[test]
    fn nondeterministic_graph_rejected() {
        let g = flower(&[vec![0, 1], vec![0, 0]], &Alphabet::ab());
        assert!(matches!(act(&g, &[0]), Err(GraphError::NotDeterministic(..))));
    }

    #[test]
    fn partial_map_helpers() {
        let f = PartialMap::from_pairs(3, [(0, 1), (1, 2)]);
        let g = PartialMap::from_pairs(3, [(1, 1), (2, 0)]);
        assert_eq!(f.then(&g).pairs(), vec![(0, 1), (1, 0)]);
        assert!(f.is_injective());
        assert!(PartialMap::identity(3).contains(&PartialMap::from_pairs(3, [(2, 2)])));
        assert!(PartialMap::from_pairs(3, [(2, 2)]).is_partial_identity());
        assert_eq!(f.restrict(0, 2), None);
        assert_eq!(g.restrict(0, 2).unwrap().pairs(), vec![(1, 1)]);
    }

    #[test]
    fn json_round_trip() {
        let g = gamma(2);
        let back = LabeledDigraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(g.to_dot().contains("doublecircle"));
    }
}
