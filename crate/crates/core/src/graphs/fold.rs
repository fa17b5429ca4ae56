use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use super::{flower, LabeledDigraph};
use crate::green::UnionFind;
use crate::words::{square_free_sub, Letter};

fn conflicts(edges: &BTreeSet<(usize, Letter, usize)>) -> Vec<(usize, usize)> {
    let mut out_by: BTreeMap<(usize, Letter), usize> = BTreeMap::new();
    let mut in_by: BTreeMap<(usize, Letter), usize> = BTreeMap::new();
    let mut pairs = Vec::new();
    for &(s, l, d) in edges {
        match out_by.get(&(s, l)) {
            Some(&d0) if d0 != d => pairs.push((d0, d)),
            Some(_) => {}
            None => {
                out_by.insert((s, l), d);
            }
        }
        match in_by.get(&(d, l)) {
            Some(&s0) if s0 != s => pairs.push((s0, s)),
            Some(_) => {}
            None => {
                in_by.insert((d, l), s);
            }
        }
    }
    pairs
}

fn fold_by(g: &LabeledDigraph, mut pick: impl FnMut(&[(usize, usize)]) -> (usize, usize)) -> LabeledDigraph {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut edges: BTreeSet<(usize, Letter, usize)> = g.edges.clone();
    loop {
        let pairs = conflicts(&edges);
        if pairs.is_empty() {
            break;
        }
        let (u, v) = pick(&pairs);
        uf.union(u, v);
        edges = edges.iter().map(|&(s, l, d)| (uf.find(s), l, uf.find(d))).collect();
    }
    // Surviving roots are class minima; renumber them in index order.
    let roots: Vec<usize> = (0..n).filter(|&v| uf.find(v) == v).collect();
    let mut renumber = vec![usize::MAX; n];
    for (i, &r) in roots.iter().enumerate() {
        renumber[r] = i;
    }
    let mut out = LabeledDigraph::new(g.alphabet.clone());
    for &r in &roots {
        out.add_vertex(g.names[r].clone());
    }
    for &(s, l, d) in &edges {
        out.add_edge(renumber[s], l, renumber[d]);
    }
    for (b, &v) in &g.basepoints {
        out.set_basepoint(b.clone(), renumber[uf.find(v)]);
    }
    out
}

/// Merges vertices until every letter acts as a partial bijection, always
/// resolving the first conflict found.
pub fn stallings_fold(g: &LabeledDigraph) -> LabeledDigraph {
    fold_by(g, |pairs| pairs[0])
}

/// Folding with conflicts resolved in random order.
pub fn stallings_fold_with<R: Rng>(g: &LabeledDigraph, rng: &mut R) -> LabeledDigraph {
    fold_by(g, |pairs| *pairs.choose(rng).expect("nonempty conflict list"))
}

/// `Λ_n`: the fold of the flower of `φ^n(a), φ^n(b), φ^n(c)`.
pub fn lambda(n: usize) -> LabeledDigraph {
    let phi = square_free_sub();
    let words: Vec<_> = (0..3).map(|l| phi.iterate(l, n)).collect();
    stallings_fold(&flower(&words, phi.alphabet()))
}

/// Canonical numbering by breadth-first search from the first basepoint
/// (vertex 0 when there is none), visiting out-edges then in-edges in label
/// order. Complete for connected folded digraphs.
pub fn canonical_form(g: &LabeledDigraph) -> (usize, Vec<(usize, Letter, usize)>) {
    let n = g.vertex_count();
    if n == 0 {
        return (0, Vec::new());
    }
    let start = g.basepoints.values().next().copied().unwrap_or(0);
    let mut out_adj: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); n];
    let mut in_adj: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); n];
    for &(s, l, d) in &g.edges {
        out_adj[s].push((l, d));
        in_adj[d].push((l, s));
    }
    let mut number = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = VecDeque::new();
    let mut visit = |v: usize, number: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
        if number[v] == usize::MAX {
            number[v] = next;
            next += 1;
            queue.push_back(v);
        }
    };
    visit(start, &mut number, &mut queue);
    for root in 0..n {
        visit(root, &mut number, &mut queue);
        while let Some(v) = queue.pop_front() {
            let mut outs = out_adj[v].clone();
            outs.sort_unstable_by_key(|&(l, _)| l);
            let mut ins = in_adj[v].clone();
            ins.sort_unstable_by_key(|&(l, _)| l);
            for (_, u) in outs.into_iter().chain(ins) {
                visit(u, &mut number, &mut queue);
            }
        }
    }
    let mut edges: Vec<(usize, Letter, usize)> = g.edges.iter().map(|&(s, l, d)| (number[s], l, number[d])).collect();
    edges.sort_unstable();
    (n, edges)
}

pub fn isomorphic(g: &LabeledDigraph, h: &LabeledDigraph) -> bool {
    canonical_form(g) == canonical_form(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;
    use rand::SeedableRng;

    #[test]
    fn lambda_one_matches_figure() {
        let l1 = lambda(1);
        assert_eq!(l1.vertex_count(), 2);
        assert!(l1.is_deterministic() && l1.is_codeterministic());
        // 0 -a-> 1, 1 -b-> 1, 1 -c-> 0, 0 -b-> 0
        let mut expected = LabeledDigraph::new(Alphabet::abc());
        let v0 = expected.add_vertex("0");
        let v1 = expected.add_vertex("1");
        expected.set_basepoint("q0", v0);
        expected.add_edge(v0, 0, v1);
        expected.add_edge(v1, 1, v1);
        expected.add_edge(v1, 2, v0);
        expected.add_edge(v0, 1, v0);
        assert!(isomorphic(&l1, &expected));
    }

    #[test]
    fn lambda_sizes() {
        for (n, size) in [(1, 2), (2, 4), (3, 8)] {
            assert_eq!(lambda(n).vertex_count(), size);
        }
    }

    #[test]
    fn folded_graph_is_fixed() {
        let g = super::super::gamma(2);
        assert!(isomorphic(&stallings_fold(&g), &g));
    }

    #[test]
    fn equal_petals_fold_to_one_cycle() {
        let ab = Alphabet::ab();
        let w = ab.parse("abb").unwrap();
        let f = stallings_fold(&flower(&[w.clone(), w], &ab));
        assert_eq!(f.vertex_count(), 3);
        assert_eq!(f.edge_count(), 3);
    }

    #[test]
    fn random_orders_agree() {
        let phi = square_free_sub();
        let g = flower(&(0..3).map(|l| phi.iterate(l, 3)).collect::<Vec<_>>(), phi.alphabet());
        let reference = stallings_fold(&g);
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..10 {
            assert!(isomorphic(&stallings_fold_with(&g, &mut rng), &reference));
        }
    }
}
