use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::{act_with, gamma, GraphError, LabeledDigraph, PartialMap, Result};
use crate::closure::{closure, Closure};
use crate::construct::{hom_check, hom_image};
use crate::semigroup::FiniteSemigroup;
use crate::words::{thue_morse, Letter, Word};

/// Transition monoid of a deterministic digraph, with the closure data.
#[derive(Debug, Clone)]
pub struct TransitionMonoid {
    pub closure: Closure<PartialMap>,
    pub report: TransitionReport,
}

/// How the element count splits between the identity and the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionReport {
    pub size: usize,
    /// The identity is also the action of some nonempty word.
    pub identity_from_nonempty_word: bool,
    pub contains_empty_map: bool,
    /// Size of the semigroup of nonempty words.
    pub semigroup_size: usize,
    pub size_without_empty_map: usize,
    pub all_injective: bool,
    pub aperiodic: bool,
    pub inverse: bool,
}

impl TransitionMonoid {
    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.closure.semigroup
    }

    pub fn len(&self) -> usize {
        self.closure.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closure.values.is_empty()
    }

    pub fn element_of(&self, m: &PartialMap) -> Option<usize> {
        self.closure.index_of(m)
    }
}

/// Closure of the letter maps under composition with the identity adjoined,
/// ordered by reverse containment (`s <= t` iff `s ⊇ t`).
pub fn transition_monoid(g: &LabeledDigraph, budget: usize) -> Result<TransitionMonoid> {
    let maps = g.letter_maps()?;
    let n = g.vertex_count();
    let names: Vec<String> = (0..g.alphabet().len()).map(|l| g.alphabet().char_of(l as Letter).to_string()).collect();
    let mut c = closure(&maps, &names, |x, y| x.then(y), Some(PartialMap::identity(n)), budget)?;
    let values = &c.values;
    let mut pairs = Vec::new();
    for (i, s) in values.iter().enumerate() {
        for (j, t) in values.iter().enumerate() {
            if i != j && s.contains(t) {
                pairs.push((i, j));
            }
        }
    }
    c.semigroup = c.semigroup.clone().with_order(pairs);
    let s = &c.semigroup;
    let gens = &s.generators().expect("closure records generators")[1..];
    let identity_from_nonempty_word = maps.iter().any(|m| *m == PartialMap::identity(n))
        || (1..s.len()).any(|x| gens.iter().any(|&g| s.mul(x, g) == 0));
    let contains_empty_map = values.iter().any(|m| m.is_empty_map());
    let size = s.len();
    let report = TransitionReport {
        size,
        identity_from_nonempty_word,
        contains_empty_map,
        semigroup_size: if identity_from_nonempty_word { size } else { size - 1 },
        size_without_empty_map: size - contains_empty_map as usize,
        all_injective: values.iter().all(|m| m.is_injective()),
        aperiodic: s.is_aperiodic(),
        inverse: s.is_inverse(),
    };
    Ok(TransitionMonoid { closure: c, report })
}

/// `Γ̃_n`, the disjoint union of `Γ_0, ..., Γ_n` in that order, with offsets.
pub fn gamma_union(n: usize) -> (LabeledDigraph, Vec<usize>) {
    let parts: Vec<LabeledDigraph> = (0..=n).map(gamma).collect();
    LabeledDigraph::disjoint_union(&parts)
}

/// Action of a word on `Γ̃_n`.
pub fn act_union(n: usize, w: &[Letter]) -> PartialMap {
    let (g, _) = gamma_union(n);
    let maps = g.letter_maps().expect("flower digraphs of Γ_i are deterministic");
    act_with(&maps, g.vertex_count(), w)
}

/// The monoids `M_0, ..., M_n` with restriction homomorphisms.
#[derive(Debug, Clone)]
pub struct MnTower {
    pub levels: Vec<TransitionMonoid>,
    /// `restrictions[i]` maps `M_{i+1}` onto `M_i`.
    pub restrictions: Vec<Vec<usize>>,
    /// Sizes of `T(Γ_0), ..., T(Γ_n)`.
    pub component_sizes: Vec<usize>,
    /// `M_n` projects onto every `T(Γ_i)` by restriction.
    pub subdirect: bool,
}

impl MnTower {
    pub fn top(&self) -> &TransitionMonoid {
        self.levels.last().expect("tower has level 0")
    }
}

fn restriction_map(from: &TransitionMonoid, to: &TransitionMonoid, start: usize, len: usize) -> Result<Vec<usize>> {
    let index: HashMap<&PartialMap, usize> = to.closure.values.iter().enumerate().map(|(i, m)| (m, i)).collect();
    from.closure
        .values
        .iter()
        .map(|m| {
            let r = m
                .restrict(start, len)
                .ok_or_else(|| GraphError::CheckFailed("restriction leaves the subgraph".into()))?;
            index
                .get(&r)
                .copied()
                .ok_or_else(|| GraphError::CheckFailed("restriction is not an element of the smaller monoid".into()))
        })
        .collect()
}

/// Builds `M_0..M_n` as transition monoids of `Γ̃_i` and checks that each
/// restriction `M_{i+1} -> M_i` is an onto homomorphism.
pub fn build_mn(n: usize, budget: usize) -> Result<MnTower> {
    let mut levels = Vec::with_capacity(n + 1);
    let mut offsets = Vec::new();
    let mut widths = Vec::new();
    for i in 0..=n {
        let (g, off) = gamma_union(i);
        widths.push(g.vertex_count());
        levels.push(transition_monoid(&g, budget)?);
        offsets = off;
    }
    let mut restrictions = Vec::with_capacity(n);
    for i in 0..n {
        let map = restriction_map(&levels[i + 1], &levels[i], 0, widths[i])?;
        hom_check(levels[i + 1].semigroup(), levels[i].semigroup(), &map)?;
        if hom_image(&map).len() != levels[i].len() {
            return Err(GraphError::CheckFailed(format!("restriction M_{} -> M_{} is not onto", i + 1, i)));
        }
        restrictions.push(map);
    }
    let mut component_sizes = Vec::with_capacity(n + 1);
    let mut subdirect = true;
    let top = &levels[n];
    for (i, &start) in offsets.iter().enumerate().take(n + 1) {
        let t = transition_monoid(&gamma(i), budget)?;
        component_sizes.push(t.len());
        let len = (1usize << (i + 1)) - 1;
        let proj = restriction_map(top, &t, start, len)?;
        subdirect &= hom_check(top.semigroup(), t.semigroup(), &proj).is_ok() && hom_image(&proj).len() == t.len();
    }
    Ok(MnTower { levels, restrictions, component_sizes, subdirect })
}

/// The label-respecting map `γ_n: Γ_{n+1} -> Γ_n`.
#[derive(Debug, Clone, Serialize)]
pub struct GammaHom {
    pub map: Vec<usize>,
    pub edges_respected: bool,
    pub preimage_of_base: Vec<usize>,
    /// Preimage of `0_n` is exactly `{0_{n+1}, 0_{n+1}·μ^n(a), 0_{n+1}·μ^n(b)}`.
    pub preimage_matches: bool,
}

pub fn graph_hom_gamma(n: usize) -> Result<GammaHom> {
    let big = gamma(n + 1);
    let small = gamma(n);
    let big_maps = big.letter_maps()?;
    let small_maps = small.letter_maps()?;
    // Shortest words from the basepoint to every vertex of Γ_{n+1}.
    let mut word: Vec<Option<Word>> = vec![None; big.vertex_count()];
    word[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (l, m) in big_maps.iter().enumerate() {
            if let Some(u) = m.get(v) {
                if word[u].is_none() {
                    let mut w = word[v].clone().expect("queued vertices have words");
                    w.push(l as Letter);
                    word[u] = Some(w);
                    queue.push_back(u);
                }
            }
        }
    }
    let mut map = Vec::with_capacity(big.vertex_count());
    for (v, w) in word.iter().enumerate() {
        let w = w.as_ref().ok_or_else(|| GraphError::CheckFailed(format!("vertex {v} unreachable")))?;
        let image = act_with(&small_maps, small.vertex_count(), w)
            .get(0)
            .ok_or_else(|| GraphError::CheckFailed(format!("0_{n} cannot read the path to vertex {v}")))?;
        map.push(image);
    }
    let edges_respected = big.edges().all(|&(s, l, d)| small_maps[l as usize].get(map[s]) == Some(map[d]));
    let preimage_of_base: Vec<usize> = (0..map.len()).filter(|&v| map[v] == 0).collect();
    let mu = thue_morse();
    let expected: BTreeSet<usize> =
        [Some(0), big_maps_action(&big_maps, &mu.iterate(0, n)), big_maps_action(&big_maps, &mu.iterate(1, n))]
            .into_iter()
            .flatten()
            .collect();
    let preimage_matches = preimage_of_base.len() == 3 && expected == preimage_of_base.iter().copied().collect();
    Ok(GammaHom { map, edges_respected, preimage_of_base, preimage_matches })
}

fn big_maps_action(maps: &[PartialMap], w: &[Letter]) -> Option<usize> {
    let mut v = 0usize;
    for &l in w {
        v = maps[l as usize].get(v)?;
    }
    Some(v)
}

/// The pair of words lifting the transformation `0_n -> 0_n·w`.
#[derive(Debug, Clone, Serialize)]
pub struct Lift {
    pub u: Word,
    pub v: Word,
    /// `c` with `w` a prefix of `μ^n(c)`.
    pub c: Letter,
}

/// `u = μ^{n+2}(a) w` and `v = μ^{n+2}(a) μ^n(d) w`, verified to act alike on
/// `Γ_n` as `{0_n -> 0_n·w}` and as distinct maps of domain `{0_{n+1}}` on `Γ_{n+1}`.
pub fn lifting_words(n: usize, w: &[Letter]) -> Result<Lift> {
    let mu = thue_morse();
    let c = if mu.iterate(0, n).starts_with(w) {
        0
    } else if mu.iterate(1, n).starts_with(w) {
        1
    } else {
        return Err(GraphError::NotAPrefix(mu.alphabet().render(w)));
    };
    let d = 1 - c;
    let head = mu.iterate(0, n + 2);
    let mut u = head.clone();
    u.extend_from_slice(w);
    let mut v = head;
    v.extend(mu.iterate(d, n));
    v.extend_from_slice(w);

    let low = gamma(n);
    let high = gamma(n + 1);
    let (ul, vl) = (super::act(&low, &u)?, super::act(&low, &v)?);
    let p = big_maps_action(&low.letter_maps()?, w).ok_or_else(|| GraphError::NotAPrefix(mu.alphabet().render(w)))?;
    let expected = PartialMap::from_pairs(low.vertex_count(), [(0, p)]);
    if ul != expected || vl != expected {
        return Err(GraphError::CheckFailed(format!("lifted words do not act as 0_{n} -> {}", low.name(p))));
    }
    let (uh, vh) = (super::act(&high, &u)?, super::act(&high, &v)?);
    if uh.domain() != [0] || vh.domain() != [0] || uh == vh {
        return Err(GraphError::CheckFailed(format!("lifted words are not distinct with domain 0_{}", n + 1)));
    }
    Ok(Lift { u, v, c })
}

/// Level-wise counts of distinct lifted elements.
#[derive(Debug, Clone, Serialize)]
pub struct TreeWitness {
    pub base: usize,
    /// `counts[d]` distinct elements of `M_{base+d}` at depth `d`.
    pub counts: Vec<usize>,
    /// Every child restricts to its parent on `Γ̃` of the previous level.
    pub restrictions_agree: bool,
}

/// Starting from the word `μ^{base+1}(a)`, which acts as the identity at
/// `0_base` only, lifts every element twice per level and counts the
/// distinct actions on `Γ̃_{base+d}`.
pub fn tree_witness(base: usize, depth: usize) -> Result<TreeWitness> {
    let mu = thue_morse();
    let mut level: Vec<Word> = vec![mu.iterate(0, base + 1)];
    let mut counts = vec![1];
    let mut restrictions_agree = true;
    for d in 1..=depth {
        let n = base + d - 1;
        let (low_union, _) = gamma_union(n);
        let (high_union, high_off) = gamma_union(n + 1);
        let low_maps = low_union.letter_maps()?;
        let high_maps = high_union.letter_maps()?;
        let low_gamma = gamma(n);
        let low_gamma_maps = low_gamma.letter_maps()?;
        let mut next = Vec::with_capacity(level.len() * 2);
        let mut seen: BTreeSet<PartialMap> = BTreeSet::new();
        for parent in &level {
            let target = big_maps_action(&low_gamma_maps, parent)
                .ok_or_else(|| GraphError::CheckFailed("parent does not act at the basepoint".into()))?;
            let w = shortest_word(&low_gamma_maps, target);
            let lift = lifting_words(n, &w)?;
            let parent_action = act_with(&low_maps, low_union.vertex_count(), parent);
            for child in [lift.u, lift.v] {
                let action = act_with(&high_maps, high_union.vertex_count(), &child);
                let restricted = action.restrict(0, low_union.vertex_count());
                restrictions_agree &= restricted.as_ref() == Some(&parent_action);
                let top = action.restrict(high_off[n + 1], high_union.vertex_count() - high_off[n + 1]);
                restrictions_agree &= top.is_some_and(|t| t.domain() == [0]);
                seen.insert(action);
                next.push(child);
            }
        }
        counts.push(seen.len());
        level = next;
    }
    Ok(TreeWitness { base, counts, restrictions_agree })
}

fn shortest_word(maps: &[PartialMap], target: usize) -> Word {
    let n = maps[0].universe();
    let mut word: Vec<Option<Word>> = vec![None; n];
    word[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if v == target {
            break;
        }
        for (l, m) in maps.iter().enumerate() {
            if let Some(u) = m.get(v) {
                if word[u].is_none() {
                    let mut w = word[v].clone().expect("queued");
                    w.push(l as Letter);
                    word[u] = Some(w);
                    queue.push_back(u);
                }
            }
        }
    }
    word[target].clone().expect("flower digraphs are strongly connected")
}
