//! Ramseyan factorization forests, plus the finite generation checks that
//! rest on them.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::construct::hom_check;
use crate::green::{green, GreenData};
use crate::semigroup::{FiniteSemigroup, Result};
use crate::words::{Alphabet, Letter};

/// A node covers `word[start..end]`; leaves have no children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub start: usize,
    pub end: usize,
    pub image: usize,
    pub children: Vec<usize>,
}

/// A factorization forest for one word, stored extensionally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    pub word: Vec<Letter>,
    pub nodes: Vec<Node>,
    pub root: usize,
}

impl Forest {
    pub fn height(&self) -> usize {
        self.height_of(self.root)
    }

    pub fn height_of(&self, node: usize) -> usize {
        let n = &self.nodes[node];
        n.children.iter().map(|&c| 1 + self.height_of(c)).max().unwrap_or(0)
    }

    /// Nested `{word, image, children}` objects.
    pub fn to_json(&self, s: &FiniteSemigroup, alphabet: &Alphabet) -> serde_json::Value {
        self.node_json(self.root, s, alphabet)
    }

    fn node_json(&self, node: usize, s: &FiniteSemigroup, alphabet: &Alphabet) -> serde_json::Value {
        let n = &self.nodes[node];
        serde_json::json!({
            "word": alphabet.render(&self.word[n.start..n.end]),
            "image": s.name(n.image),
            "children": n.children.iter().map(|&c| self.node_json(c, s, alphabet)).collect::<Vec<_>>(),
        })
    }
}

struct Builder<'a> {
    s: &'a FiniteSemigroup,
    g: GreenData,
    images: &'a [usize],
    word: &'a [Letter],
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn image(&self, node: usize) -> usize {
        self.nodes[node].image
    }

    fn leaf(&mut self, pos: usize) -> usize {
        let image = self.images[self.word[pos] as usize];
        self.nodes.push(Node { start: pos, end: pos + 1, image, children: Vec::new() });
        self.nodes.len() - 1
    }

    fn join(&mut self, children: Vec<usize>) -> usize {
        assert!(!children.is_empty());
        if children.len() == 1 {
            return children[0];
        }
        let image = self.s.product(children.iter().map(|&c| self.nodes[c].image)).expect("nonempty");
        let start = self.nodes[children[0]].start;
        let end = self.nodes[*children.last().unwrap()].end;
        debug_assert!(children.windows(2).all(|w| self.nodes[w[0]].end == self.nodes[w[1]].start));
        self.nodes.push(Node { start, end, image, children });
        self.nodes.len() - 1
    }

    // Left-nested binary products of the parts present.
    fn chain(&mut self, parts: &[Option<usize>]) -> usize {
        let mut acc: Option<usize> = None;
        for &p in parts.iter().flatten() {
            acc = Some(match acc {
                None => p,
                Some(a) => self.join(vec![a, p]),
            });
        }
        acc.expect("at least one part")
    }

    fn same_idempotent(&self, items: &[usize]) -> bool {
        let e = self.image(items[0]);
        self.s.is_idempotent(e) && items.iter().all(|&i| self.image(i) == e)
    }

    /// Forest for `word[lo..hi]`, by induction on the J-class of its image:
    /// cut into blocks whose images first reach that J-class, then treat the
    /// block sequence as a word inside one J-class.
    fn general(&mut self, lo: usize, hi: usize) -> usize {
        if hi - lo == 1 {
            return self.leaf(lo);
        }
        let letters: Vec<usize> = (lo..hi).map(|p| self.leaf(p)).collect();
        if self.same_idempotent(&letters) {
            return self.join(letters);
        }
        let total = self.s.product(letters.iter().map(|&l| self.image(l))).expect("nonempty");
        let k = self.g.j.class_of[total];
        let mut blocks = Vec::new();
        let mut start = lo;
        let mut value: Option<usize> = None;
        for p in lo..hi {
            let img = self.image(letters[p - lo]);
            let v = value.map_or(img, |v| self.s.mul(v, img));
            if self.g.j.class_of[v] == k {
                let head = (start < p).then(|| self.general(start, p));
                let block = self.chain(&[head, Some(letters[p - lo])]);
                blocks.push(block);
                start = p + 1;
                value = None;
            } else {
                value = Some(v);
            }
        }
        let tail = (start < hi).then(|| self.general(start, hi));
        let body = self.smooth(&blocks);
        self.chain(&[Some(body), tail])
    }

    /// Items whose every infix product lies in one J-class. Induction on the
    /// number of L-classes among the items.
    fn smooth(&mut self, items: &[usize]) -> usize {
        if items.len() == 1 {
            return items[0];
        }
        if self.same_idempotent(items) {
            return self.join(items.to_vec());
        }
        let l_star = self.g.l.class_of[self.image(items[0])];
        // Pieces end at each item in L*; the remainder has no item in L*.
        let mut pieces = Vec::new();
        let mut pending: Vec<usize> = Vec::new();
        for &it in items {
            if self.g.l.class_of[self.image(it)] == l_star {
                let head = (!pending.is_empty()).then(|| self.smooth(&pending));
                pieces.push(self.chain(&[head, Some(it)]));
                pending.clear();
            } else {
                pending.push(it);
            }
        }
        let tail = (!pending.is_empty()).then(|| self.smooth(&pending));
        let first = pieces[0];
        let rest = (pieces.len() > 1).then(|| {
            // All later pieces lie in H-classes with idempotents inside L*;
            // left multiplication by one of them maps them into a group.
            let e0 = self.s.omega_power(self.image(pieces[1]));
            self.group(&pieces[1..], e0)
        });
        self.chain(&[Some(first), rest, tail])
    }

    /// Pieces ending in a common L-class, grouped through their images in
    /// the group `H(e0)`. Induction on the number of boundary states
    /// `(prefix value, R-class of the next piece)`.
    fn group(&mut self, z: &[usize], e0: usize) -> usize {
        if z.len() == 1 {
            return z[0];
        }
        if self.same_idempotent(z) {
            return self.join(z.to_vec());
        }
        let mut states = Vec::with_capacity(z.len() - 1);
        let mut prefix = self.s.mul(e0, self.image(z[0]));
        for j in 0..z.len() - 1 {
            let next = z[j + 1];
            states.push((prefix, self.g.r.class_of[self.image(next)]));
            prefix = self.s.mul(prefix, self.s.mul(e0, self.image(next)));
        }
        let q = states[0];
        let cuts: Vec<usize> = (0..states.len()).filter(|&j| states[j] == q).collect();
        let head = self.group(&z[..=cuts[0]], e0);
        let mut middle = Vec::new();
        for w in cuts.windows(2) {
            let seg = self.group(&z[w[0] + 1..=w[1]], e0);
            middle.push(seg);
        }
        let last = *cuts.last().unwrap();
        let tail = (last + 1 < z.len()).then(|| self.group(&z[last + 1..], e0));
        let mid = match middle.len() {
            0 => None,
            1 | 2 => Some(self.chain(&middle.iter().map(|&m| Some(m)).collect::<Vec<_>>())),
            _ => {
                debug_assert!(self.same_idempotent(&middle));
                Some(self.join(middle))
            }
        };
        self.chain(&[Some(head), mid, tail])
    }
}

/// Builds a Ramseyan factorization forest for `w` under the letter images
/// `gen_images` (indexed by letter).
pub fn build_forest(gen_images: &[usize], s: &FiniteSemigroup, w: &[Letter]) -> Forest {
    assert!(!w.is_empty(), "forests are built for nonempty words");
    let mut b = Builder { s, g: green(s), images: gen_images, word: w, nodes: Vec::new() };
    let root = b.general(0, w.len());
    // Keep only nodes reachable from the root (letters created by
    // shortcuts that were later regrouped stay reachable; others are dropped).
    compact(Forest { word: w.to_vec(), nodes: b.nodes, root })
}

fn compact(f: Forest) -> Forest {
    let mut keep = vec![usize::MAX; f.nodes.len()];
    let mut order = Vec::new();
    let mut stack = vec![f.root];
    while let Some(n) = stack.pop() {
        if keep[n] == usize::MAX {
            keep[n] = order.len();
            order.push(n);
            stack.extend(f.nodes[n].children.iter().copied());
        }
    }
    let nodes = order
        .iter()
        .map(|&n| {
            let old = &f.nodes[n];
            Node { children: old.children.iter().map(|&c| keep[c]).collect(), ..old.clone() }
        })
        .collect();
    Forest { word: f.word, nodes, root: 0 }
}

/// The first problem found by [`verify_ramseyan`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    RootDoesNotCover,
    Concatenation(usize),
    /// A leaf that is not a single letter, or a single letter with children.
    External(usize),
    WrongImage(usize),
    /// Degree at least 3 without a common idempotent image.
    NotRamseyan(usize),
    HeightBound {
        height: usize,
        bound: usize,
    },
}

/// Checks that the forest covers its word, that children concatenate to
/// their parent, that leaves are exactly the letters, the Ramseyan
/// condition and the height bound `9|S|`.
pub fn verify_ramseyan(
    forest: &Forest,
    gen_images: &[usize],
    s: &FiniteSemigroup,
) -> std::result::Result<(), Violation> {
    let root = &forest.nodes[forest.root];
    if root.start != 0 || root.end != forest.word.len() {
        return Err(Violation::RootDoesNotCover);
    }
    let mut stack = vec![forest.root];
    while let Some(i) = stack.pop() {
        let n = &forest.nodes[i];
        let expected = s
            .product(forest.word[n.start..n.end].iter().map(|&l| gen_images[l as usize]))
            .ok_or(Violation::Concatenation(i))?;
        if n.image != expected {
            return Err(Violation::WrongImage(i));
        }
        if n.children.is_empty() {
            if n.end != n.start + 1 {
                return Err(Violation::External(i));
            }
            continue;
        }
        if n.children.len() == 1 || n.end == n.start + 1 {
            return Err(Violation::External(i));
        }
        let mut at = n.start;
        for &c in &n.children {
            let cn = &forest.nodes[c];
            if cn.start != at || cn.end <= cn.start {
                return Err(Violation::Concatenation(i));
            }
            at = cn.end;
        }
        if at != n.end {
            return Err(Violation::Concatenation(i));
        }
        if n.children.len() >= 3
            && !(s.is_idempotent(n.image) && n.children.iter().all(|&c| forest.nodes[c].image == n.image))
        {
            return Err(Violation::NotRamseyan(i));
        }
        stack.extend(n.children.iter().copied());
    }
    let height = forest.height();
    let bound = 9 * s.len();
    if height > bound {
        return Err(Violation::HeightBound { height, bound });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    /// Size of the subsemigroup generated by `A` and the preimages of idempotents.
    pub generated: usize,
    pub size: usize,
    pub holds: bool,
}

/// Checks that `A` together with `φ^{-1}(E(T))` generates `S`.
pub fn idempotent_generation_check(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    phi: &[usize],
    a: &[usize],
) -> Result<GenerationReport> {
    hom_check(s, t, phi)?;
    let mut gens: BTreeSet<usize> = a.iter().copied().collect();
    gens.extend((0..s.len()).filter(|&x| t.is_idempotent(phi[x])));
    let generated = s.generated_by(&gens.into_iter().collect::<Vec<_>>()).len();
    Ok(GenerationReport { generated, size: s.len(), holds: generated == s.len() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReading {
    pub b: Vec<usize>,
    pub contained_in_kernel: bool,
    /// The subsemigroup generated by `b`.
    pub generated: Vec<usize>,
    pub generates_kernel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    /// Least `n` with `x_1...x_n = 0` in `N`.
    pub n: usize,
    pub kernel: Vec<usize>,
    /// Short products outside the kernel, as the set difference is written.
    pub literal: KernelReading,
    /// Short products inside the kernel.
    pub intersection: KernelReading,
}

/// The generating set `B` of `φ^{-1}(0)` for `φ: S -> N` with `N` nilpotent,
/// computed under both readings of the short-product term.
pub fn nilpotent_kernel_generators(
    s: &FiniteSemigroup,
    nil: &FiniteSemigroup,
    phi: &[usize],
    a: &[usize],
) -> Result<Option<KernelReport>> {
    hom_check(s, nil, phi)?;
    let (Some(zero), Some(n)) = (nil.zero(), nil.nilpotency_index()) else {
        return Ok(None);
    };
    let kernel: Vec<usize> = (0..s.len()).filter(|&x| phi[x] == zero).collect();
    let in_kernel = |x: usize| phi[x] == zero;
    // powers[k-1] = A^k as a set of values.
    let mut powers: Vec<BTreeSet<usize>> = vec![a.iter().copied().collect()];
    for _ in 1..2 * n - 1 {
        let prev = powers.last().unwrap();
        let next = prev.iter().flat_map(|&x| a.iter().map(move |&y| s.mul(x, y))).collect();
        powers.push(next);
    }
    let long: BTreeSet<usize> = powers[n - 1..].iter().flatten().copied().collect();
    let short: BTreeSet<usize> = powers[..n - 1].iter().flatten().copied().collect();
    let reading = |extra: BTreeSet<usize>| {
        let b: Vec<usize> = long.union(&extra).copied().collect();
        let generated = s.generated_by(&b);
        KernelReading {
            contained_in_kernel: b.iter().all(|&x| in_kernel(x)),
            generates_kernel: generated == kernel,
            generated,
            b,
        }
    };
    let literal = reading(short.iter().copied().filter(|&x| !in_kernel(x)).collect());
    let intersection = reading(short.iter().copied().filter(|&x| in_kernel(x)).collect());
    Ok(Some(KernelReport { n, kernel: kernel.clone(), literal, intersection }))
}
