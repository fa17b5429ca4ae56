//! The synthesis semigroup `U(S, T, f)` and the semilattice witness built
//! from it.

use serde::Serialize;
use thiserror::Error;

use crate::construct::{find_isomorphism, hom_check, subsemigroup};
use crate::families;
use crate::green::green;
use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("U would have {0} elements, over the budget of {1}")]
    Budget(usize, usize),
    #[error("f must give an element of T for each of the {0} elements of S")]
    BadMap(usize),
    #[error("witness failed: {0}")]
    WitnessFailed(String),
}

pub type Result<T> = std::result::Result<T, SynthesisError>;

/// `U(S, T, f)`: the elements of `S` first, then `(s1, t, s2)` at
/// `|S| + (s1 |T| + t) |S| + s2`.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub s_len: usize,
    pub t_len: usize,
    pub semigroup: FiniteSemigroup,
}

impl Synthesis {
    pub fn triple(&self, s1: usize, t: usize, s2: usize) -> usize {
        self.s_len + (s1 * self.t_len + t) * self.s_len + s2
    }

    pub fn decode(&self, x: usize) -> Option<(usize, usize, usize)> {
        let k = x.checked_sub(self.s_len)?;
        Some((k / (self.t_len * self.s_len), k / self.s_len % self.t_len, k % self.s_len))
    }

    /// Indices of `S x T x S`.
    pub fn kernel(&self) -> std::ops::Range<usize> {
        self.s_len..self.semigroup.len()
    }
}

/// Builds `U(S, T, f)` and checks every triple for associativity.
pub fn synthesis_u(s: &FiniteSemigroup, t: &FiniteSemigroup, f: &[usize], budget: usize) -> Result<Synthesis> {
    let (ns, nt) = (s.len(), t.len());
    if f.len() != ns || f.iter().any(|&x| x >= nt) {
        return Err(SynthesisError::BadMap(ns));
    }
    let size = ns * (1 + ns * nt);
    if size > budget {
        return Err(SynthesisError::Budget(size, budget));
    }
    let enc = |s1: usize, t: usize, s2: usize| ns + (s1 * nt + t) * ns + s2;
    let dec = |x: usize| {
        let k = x - ns;
        (k / (nt * ns), k / ns % nt, k % ns)
    };
    let mut names: Vec<String> = s.names().to_vec();
    for s1 in 0..ns {
        for tt in 0..nt {
            for s2 in 0..ns {
                names.push(format!("({},{},{})", s.name(s1), t.name(tt), s.name(s2)));
            }
        }
    }
    let u = FiniteSemigroup::from_fn(names, |x, y| match (x < ns, y < ns) {
        (true, true) => s.mul(x, y),
        (true, false) => {
            let (s1, tt, s2) = dec(y);
            enc(s.mul(x, s1), tt, s2)
        }
        (false, true) => {
            let (s1, tt, s2) = dec(x);
            enc(s1, tt, s.mul(s2, y))
        }
        (false, false) => {
            let (s1, t1, s2) = dec(x);
            let (s1b, t2, s2b) = dec(y);
            enc(s1, t.mul(t.mul(t1, f[s.mul(s2, s1b)]), t2), s2b)
        }
    })?;
    u.check_associative_full()?;
    Ok(Synthesis { s_len: ns, t_len: nt, semigroup: u })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlReport {
    pub m: usize,
    pub group_order: usize,
    pub u_size: usize,
    pub k_size: usize,
    pub idempotents: Vec<String>,
    pub phi_is_homomorphism: bool,
    pub fibers: [usize; 3],
    pub k_j_classes: usize,
    pub subgroups: usize,
    pub subgroups_isomorphic: bool,
    pub note: &'static str,
}

const NOTE: &str = "M is {0..m} under addition capped at m; the cap stands in for the point at infinity";

/// `φ: U(M_m, G, f) -> {0 < 1 < 2}` sending `0` to 2, the rest of `M_m` to 1
/// and the triples to 0.
pub fn sl_phi(m: usize, group_order: usize) -> Vec<usize> {
    let ns = m + 1;
    let mut phi = vec![1; ns];
    phi[0] = 2;
    phi.resize(ns + ns * ns * group_order, 0);
    phi
}

/// Checks the semilattice witness for `U(M_m, G, f)` with `f: {0..m} -> G`.
pub fn sl_witness(m: usize, g: &FiniteSemigroup, f: &[usize], budget: usize) -> Result<SlReport> {
    sl_witness_with(m, g, f, &sl_phi(m, g.len()), budget)
}

/// As [`sl_witness`] with a caller-supplied `φ`.
pub fn sl_witness_with(m: usize, g: &FiniteSemigroup, f: &[usize], phi: &[usize], budget: usize) -> Result<SlReport> {
    if !g.is_group() {
        return Err(SynthesisError::WitnessFailed("G is not a group".into()));
    }
    let mm = families::capped_addition(m);
    let syn = synthesis_u(&mm, g, f, budget)?;
    let u = &syn.semigroup;
    let chain = families::chain_semilattice(3);
    if phi.len() != u.len() || hom_check(u, &chain, phi).is_err() {
        return Err(SynthesisError::WitnessFailed("phi is not a homomorphism onto the 3-chain".into()));
    }
    let fiber = |v: usize| (0..u.len()).filter(|&x| phi[x] == v).collect::<Vec<_>>();
    let (f0, f1, f2) = (fiber(0), fiber(1), fiber(2));
    if f2 != [0] || f1 != (1..=m).collect::<Vec<_>>() || f0 != syn.kernel().collect::<Vec<_>>() {
        return Err(SynthesisError::WitnessFailed("fibers of phi are not {0}, M \\ {0}, K".into()));
    }
    let gd = green(u);
    let k_j_classes = f0.iter().map(|&x| gd.j.class_of[x]).collect::<std::collections::BTreeSet<_>>().len();
    if k_j_classes != 1 {
        return Err(SynthesisError::WitnessFailed(format!("K has {k_j_classes} J-classes")));
    }
    let idem: Vec<usize> = u.idempotents();
    let mut subgroups = 0;
    for &e in idem.iter().filter(|&&e| phi[e] == 0) {
        let h = &gd.h.classes[gd.h.class_of[e]];
        let (sub, _) = subsemigroup(u, h)?;
        if find_isomorphism(&sub, g).is_none() {
            return Err(SynthesisError::WitnessFailed(format!(
                "maximal subgroup at {} is not isomorphic to G",
                u.name(e)
            )));
        }
        subgroups += 1;
    }
    Ok(SlReport {
        m,
        group_order: g.len(),
        u_size: u.len(),
        k_size: f0.len(),
        idempotents: idem.iter().map(|&e| u.name(e).to_string()).collect(),
        phi_is_homomorphism: true,
        fibers: [f0.len(), f1.len(), f2.len()],
        k_j_classes,
        subgroups,
        subgroups_isomorphic: true,
        note: NOTE,
    })
}
