//! Green's relations via strongly connected components of Cayley graphs.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::semigroup::FiniteSemigroup;

/// A partition of `0..n`, classes numbered by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl Partition {
    fn from_labels(labels: &[usize]) -> Self {
        let mut renumber = vec![usize::MAX; labels.iter().max().map_or(0, |m| m + 1)];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for (x, &l) in labels.iter().enumerate() {
            if renumber[l] == usize::MAX {
                renumber[l] = classes.len();
                classes.push(Vec::new());
            }
            class_of.push(renumber[l]);
            classes[renumber[l]].push(x);
        }
        Partition { class_of, classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// Quasi-order on the classes of a partition: `leq(c, d)` when class `c`
/// lies below class `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassOrder {
    words: usize,
    bits: Vec<u64>,
}

impl ClassOrder {
    fn new(classes: usize) -> Self {
        let words = classes.div_ceil(64).max(1);
        ClassOrder { words, bits: vec![0; words * classes] }
    }

    fn set(&mut self, below: usize, above: usize) {
        self.bits[above * self.words + below / 64] |= 1 << (below % 64);
    }

    pub fn leq(&self, c: usize, d: usize) -> bool {
        self.bits[d * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn or_into(&mut self, dst: usize, src: usize) {
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] |= v;
        }
    }
}

/// All five Green relations with the induced orders on classes.
#[derive(Debug, Clone)]
pub struct GreenData {
    pub r: Partition,
    pub l: Partition,
    pub j: Partition,
    pub h: Partition,
    pub d: Partition,
    pub r_order: ClassOrder,
    pub l_order: ClassOrder,
    pub j_order: ClassOrder,
    /// Indexed by D-class: does the class contain an idempotent.
    pub regular_d: Vec<bool>,
}

/// Strongly connected components of the graph with the given successor
/// lists, plus reachability between components.
fn components(n: usize, succ: impl Fn(usize, &mut Vec<usize>)) -> (Partition, ClassOrder) {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, n);
    for _ in 0..n {
        g.add_node(());
    }
    let mut buf = Vec::new();
    for x in 0..n {
        buf.clear();
        succ(x, &mut buf);
        for &y in &buf {
            if y != x {
                g.add_edge(NodeIndex::new(x), NodeIndex::new(y), ());
            }
        }
    }
    // Components arrive sinks first.
    let sccs = tarjan_scc(&g);
    let mut comp = vec![0usize; n];
    for (c, scc) in sccs.iter().enumerate() {
        for v in scc {
            comp[v.index()] = c;
        }
    }
    let part = Partition::from_labels(&comp);
    let k = sccs.len();
    let mut order = ClassOrder::new(k);
    let mut seen = vec![usize::MAX; k];
    for (c, scc) in sccs.iter().enumerate() {
        let me = part.class_of[scc[0].index()];
        order.set(me, me);
        for v in scc {
            for e in g.neighbors(*v) {
                let other = comp[e.index()];
                if other != c && seen[other] != c {
                    seen[other] = c;
                    let oc = part.class_of[e.index()];
                    order.or_into(me, oc);
                }
            }
        }
    }
    (part, order)
}

/// Computes Green's relations. Principal ideals are explored by multiplying
/// with the recorded generators (all elements when none are recorded).
pub fn green(s: &FiniteSemigroup) -> GreenData {
    let n = s.len();
    let all: Vec<usize>;
    let gens: &[usize] = match s.generators() {
        Some(g) => g,
        None => {
            all = (0..n).collect();
            &all
        }
    };
    let (r, r_order) = components(n, |x, out| out.extend(gens.iter().map(|&g| s.mul(x, g))));
    let (l, l_order) = components(n, |x, out| out.extend(gens.iter().map(|&g| s.mul(g, x))));
    let (j, j_order) = components(n, |x, out| {
        out.extend(gens.iter().map(|&g| s.mul(x, g)));
        out.extend(gens.iter().map(|&g| s.mul(g, x)));
    });

    let h = Partition::from_labels(&(0..n).map(|x| r.class_of[x] * l.len() + l.class_of[x]).collect::<Vec<_>>());

    let mut uf = UnionFind::new(n);
    for cl in r.classes.iter().chain(l.classes.iter()) {
        for &x in &cl[1..] {
            uf.union(cl[0], x);
        }
    }
    let d = Partition::from_labels(&(0..n).map(|x| uf.find(x)).collect::<Vec<_>>());
    let regular_d = d.classes.iter().map(|cl| cl.iter().any(|&x| s.is_idempotent(x))).collect();

    GreenData { r, l, j, h, d, r_order, l_order, j_order, regular_d }
}

impl GreenData {
    pub fn r_leq(&self, a: usize, b: usize) -> bool {
        self.r_order.leq(self.r.class_of[a], self.r.class_of[b])
    }

    pub fn l_leq(&self, a: usize, b: usize) -> bool {
        self.l_order.leq(self.l.class_of[a], self.l.class_of[b])
    }

    /// `a <=_H b`, the intersection of the R and L orders.
    pub fn h_leq(&self, a: usize, b: usize) -> bool {
        self.r_leq(a, b) && self.l_leq(a, b)
    }

    pub fn j_leq(&self, a: usize, b: usize) -> bool {
        self.j_order.leq(self.j.class_of[a], self.j.class_of[b])
    }

    pub fn d_equals_j(&self) -> bool {
        self.d == self.j
    }

    pub fn is_regular(&self, a: usize) -> bool {
        self.regular_d[self.d.class_of[a]]
    }

    pub fn counts(&self) -> GreenCounts {
        GreenCounts {
            r: self.r.len(),
            l: self.l.len(),
            j: self.j.len(),
            h: self.h.len(),
            d: self.d.len(),
            regular_d: self.regular_d.iter().filter(|&&b| b).count(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GreenCounts {
    pub r: usize,
    pub l: usize,
    pub j: usize,
    pub h: usize,
    pub d: usize,
    pub regular_d: usize,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges and returns whether the classes were distinct. The smaller root wins.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn left_zero_classes() {
        let g = green(&families::left_zero(2));
        assert_eq!(g.r.len(), 2);
        assert_eq!(g.l.len(), 1);
        assert_eq!(g.j.len(), 1);
        assert!(g.d_equals_j());
        assert_eq!(g.regular_d, vec![true]);
    }

    #[test]
    fn groups_are_one_class() {
        let g = green(&families::cyclic_group(4));
        assert_eq!(g.counts(), GreenCounts { r: 1, l: 1, j: 1, h: 1, d: 1, regular_d: 1 });
    }

    #[test]
    fn chain_order_is_recovered() {
        let s = families::chain_semilattice(3).without_order();
        let g = green(&s);
        assert_eq!(g.j.len(), 3);
        assert!(g.j_leq(0, 2));
        assert!(!g.j_leq(2, 0));
    }

    #[test]
    fn nilpotent_has_one_regular_class() {
        let s = families::nilpotent_monogenic(4);
        let g = green(&s);
        assert_eq!(g.counts().regular_d, 1);
        assert!(g.is_regular(3));
        assert!(!g.is_regular(0));
    }
}
