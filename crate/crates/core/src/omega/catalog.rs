use super::{Law, OmegaError, Result, Term};
use crate::semigroup::FiniteSemigroup;

fn v(name: &str) -> Term {
    Term::var(name)
}

fn cat<const N: usize>(parts: [Term; N]) -> Term {
    Term::concat(parts)
}

// (e x f y e)^ω and (e z f t e)^ω with e = u^ω, f = v^ω.
fn knast_sides() -> (Term, Term) {
    let e = || Term::omega(v("u"));
    let f = || Term::omega(v("v"));
    let left = Term::omega(cat([e(), v("x"), f(), v("y"), e()]));
    let right = Term::omega(cat([e(), v("z"), f(), v("t"), e()]));
    let lhs = cat([left.clone(), v("x"), f(), v("t"), right.clone()]);
    let rhs = cat([left, right]);
    (lhs, rhs)
}

/// `(exfye)^ω x f t (ezfte)^ω = (exfye)^ω (ezfte)^ω` with `e = u^ω`, `f = v^ω`.
pub fn knast() -> Law {
    let (lhs, rhs) = knast_sides();
    Law::eq(lhs, rhs).named("knast")
}

/// Patterns accepted by [`catalog`].
pub fn catalog_names() -> &'static [&'static str] {
    &[
        "knast",
        "knast-power:P",
        "power:M:N",
        "omega-plus:P",
        "sk-power:K:P",
        "bg:N",
        "one-le:N",
        "idempotent",
        "commutative",
        "nilpotent",
        "omega-left-zero",
    ]
}

/// Looks up a named law, e.g. `power:4:3` for `x^4 = x^3`.
pub fn catalog(name: &str) -> Result<Law> {
    let unknown = || OmegaError::UnknownLaw(name.to_string());
    let mut parts = name.split(':');
    let head = parts.next().unwrap_or("");
    let args: Vec<usize> = parts.map(|a| a.parse().map_err(|_| unknown())).collect::<Result<_>>()?;
    if args.contains(&0) {
        return Err(unknown());
    }
    let x = || v("x");
    let law = match (head, args.as_slice()) {
        ("knast", []) => return Ok(knast()),
        ("knast-power", [p]) => {
            let (lhs, rhs) = knast_sides();
            Law::eq(Term::pow(lhs, *p), Term::pow(rhs, *p))
        }
        ("power", [m, n]) => Law::eq(Term::pow(x(), *m), Term::pow(x(), *n)),
        ("omega-plus", [p]) => Law::eq(cat([Term::omega(x()), Term::pow(x(), *p)]), Term::omega(x())),
        ("sk-power", [k, p]) => {
            let base = (*k).max(3);
            Law::eq(Term::pow(x(), base + p), Term::pow(x(), base))
        }
        ("bg", [n]) => {
            Law::eq(Term::omega(cat([x(), Term::pow(v("y"), *n)])), Term::omega(cat([Term::pow(v("y"), *n), x()])))
        }
        ("one-le", [n]) => Law::le(Term::One, Term::pow(x(), *n)),
        ("idempotent", []) => Law::eq(Term::pow(x(), 2), x()),
        ("commutative", []) => Law::eq(cat([x(), v("y")]), cat([v("y"), x()])),
        ("nilpotent", []) => Law::eq(Term::omega(x()), Term::Zero),
        ("omega-left-zero", []) => Law::eq(cat([Term::omega(x()), v("y")]), Term::omega(x())),
        _ => return Err(unknown()),
    };
    Ok(law.named(head))
}

/// Knast's identity with `e, f` ranging over idempotents, checked by
/// collecting the distinct values of the two halves.
pub(super) fn knast_holds(s: &FiniteSemigroup) -> bool {
    let omega = s.omega_table();
    let idem = s.idempotents();
    let n = s.len();
    let mut halves_l: Vec<(usize, usize)> = Vec::new();
    let mut halves_r: Vec<(usize, usize)> = Vec::new();
    for &e in &idem {
        for &f in &idem {
            halves_l.clear();
            halves_r.clear();
            for a in 0..n {
                let ea = s.mul(e, a);
                let eaf = s.mul(ea, f);
                for b in 0..n {
                    // Both halves are (e a f b e)^ω: x = a, y = b on the left, z = a, t = b on the right.
                    let w = omega[s.mul(s.mul(eaf, b), e)];
                    halves_l.push((w, s.mul(s.mul(w, a), f)));
                    halves_r.push((w, s.mul(b, w)));
                }
            }
            halves_l.sort_unstable();
            halves_l.dedup();
            halves_r.sort_unstable();
            halves_r.dedup();
            for &(l_omega, l) in &halves_l {
                for &(r_omega, r) in &halves_r {
                    if s.mul(l, r) != s.mul(l_omega, r_omega) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
