mod common;

use finsemi::graphs::build_mn;
use finsemi::omega::{catalog, check_law, eval, knast, parse_law, Law, Strategy, DEFAULT_LAW_BUDGET};
use finsemi::sk::{build, Variant, Which};
use finsemi::{families, product, rees_quotient, FiniteSemigroup, DEFAULT_BUDGET};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn holds(s: &FiniteSemigroup, law: &Law, strategy: Strategy) -> bool {
    check_law(s, law, strategy, DEFAULT_LAW_BUDGET).unwrap().holds
}

#[test]
fn mn_laws() {
    let tower = build_mn(2, DEFAULT_BUDGET).unwrap();
    for m in &tower.levels {
        let s = m.semigroup();
        assert!(holds(s, &catalog("power:4:3").unwrap(), Strategy::Exhaustive));
        assert!(holds(s, &catalog("one-le:3").unwrap(), Strategy::Exhaustive));
        // The same inequality read element-wise: x^3 is a partial identity.
        for i in 0..m.len() {
            let cube = &m.closure.values[s.pow(i, 3)];
            assert!(cube.is_partial_identity(), "element {i}");
        }
    }
    // 1 <= x fails once there are non-identity elements.
    let m1 = &tower.levels[1];
    assert!(!holds(m1.semigroup(), &catalog("one-le:1").unwrap(), Strategy::Exhaustive));
}

#[test]
fn knast_on_sk() {
    for k in 1..=3 {
        let s = build(k, Variant::Sk, Which::S).unwrap().semigroup;
        assert!(holds(&s, &knast(), Strategy::IdempotentVars), "k={k}");
    }
}

#[test]
fn knast_fails_on_a_group_with_first_witness() {
    let c2 = families::cyclic_group(2);
    let fast = check_law(&c2, &knast(), Strategy::IdempotentVars, DEFAULT_LAW_BUDGET).unwrap();
    let full = check_law(&c2, &knast(), Strategy::Exhaustive, DEFAULT_LAW_BUDGET).unwrap();
    assert!(!fast.holds && !full.holds);
    assert_eq!(fast.witness, full.witness);
}

#[test]
fn knast_restriction_is_sound() {
    // Same verdict from the fast path, the restricted search without the
    // fast path, and the unrestricted six-variable search.
    let mut unnamed = knast();
    unnamed.name = None;
    let t1 = build(1, Variant::Sk, Which::T).unwrap().semigroup;
    let s2 = build(2, Variant::Sk, Which::S).unwrap().semigroup;
    for s in [&t1, &s2] {
        let fast = holds(s, &knast(), Strategy::IdempotentVars);
        let restricted = holds(s, &unnamed, Strategy::IdempotentVars);
        let full = holds(s, &unnamed, Strategy::Exhaustive);
        assert!(fast && restricted && full);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let s = common::random_small(&mut rng);
        let fast = check_law(&s, &knast(), Strategy::IdempotentVars, DEFAULT_LAW_BUDGET).unwrap();
        let restricted = check_law(&s, &unnamed, Strategy::IdempotentVars, DEFAULT_LAW_BUDGET).unwrap();
        assert_eq!(fast.holds, restricted.holds);
        assert_eq!(fast.witness, restricted.witness);
    }
}

#[test]
fn skp_identities() {
    for k in [2, 3] {
        for p in [2, 3] {
            let s = build(k, Variant::Skp(p), Which::S).unwrap().semigroup;
            assert!(holds(&s, &catalog(&format!("sk-power:{k}:{p}")).unwrap(), Strategy::Exhaustive));
            assert!(holds(&s, &catalog(&format!("omega-plus:{p}")).unwrap(), Strategy::Exhaustive));
        }
    }
    let s = build(2, Variant::Skp(2), Which::S).unwrap().semigroup;
    assert!(holds(&s, &catalog("knast-power:2").unwrap(), Strategy::IdempotentVars));
    assert!(!holds(&s, &knast(), Strategy::IdempotentVars));
}

#[test]
fn cyclic_conjugation_on_all_small_semigroups() {
    let law = parse_law("(x y)^w x = x (y x)^w").unwrap();
    for n in 1..=3 {
        for s in common::all_tables(n) {
            assert!(holds(&s, &law, Strategy::Exhaustive));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let s = common::random_small(&mut rng);
        assert!(holds(&s, &law, Strategy::Exhaustive));
        assert!(holds(&s, &parse_law("x^w x = x^w x").unwrap(), Strategy::Exhaustive));
    }
}

#[test]
fn laws_pass_to_products_quotients_and_subsemigroups() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let laws: Vec<Law> = ["x^2 = x", "x y = y x", "x^w y = x^w", "x^3 = x^2", "x y x = x", "(x y)^w = (y x)^w"]
        .iter()
        .map(|t| parse_law(t).unwrap())
        .collect();
    for _ in 0..60 {
        let s = common::random_small(&mut rng);
        let t = common::random_small(&mut rng);
        let st = product(&s, &t);
        for law in &laws {
            let (hs, ht) = (holds(&s, law, Strategy::Exhaustive), holds(&t, law, Strategy::Exhaustive));
            if hs && ht {
                assert!(holds(&st, law, Strategy::Exhaustive), "{law}");
            }
            if hs {
                let x = rng.gen_range(0..s.len());
                let (sub, _) = finsemi::subsemigroup(&s, &s.generated_by(&[x])).unwrap();
                assert!(holds(&sub, law, Strategy::Exhaustive));
                // Ideal generated by x, collapsed.
                let mut ideal: Vec<usize> = (0..s.len())
                    .flat_map(|a| (0..s.len()).map(move |b| (a, b)))
                    .map(|(a, b)| s.mul(s.mul(a, x), b))
                    .chain((0..s.len()).flat_map(|a| [s.mul(a, x), s.mul(x, a)]))
                    .chain([x])
                    .collect();
                ideal.sort_unstable();
                ideal.dedup();
                let (q, _) = rees_quotient(&s, &ideal).unwrap();
                assert!(holds(&q, law, Strategy::Exhaustive));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn eval_commutes_with_homomorphisms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_small(&mut rng);
        let t = common::random_small(&mut rng);
        let st = product(&s, &t);
        let m = t.len();
        let term = common::random_term(&mut rng, &["x", "y", "z"], 3);
        let vars = term.variables();
        let sigma: Vec<(String, usize)> = vars.iter().map(|v| (v.clone(), rng.gen_range(0..st.len()))).collect();
        let value = eval(&term, &sigma, &st).unwrap();
        let first: Vec<(String, usize)> = sigma.iter().map(|(v, a)| (v.clone(), a / m)).collect();
        let second: Vec<(String, usize)> = sigma.iter().map(|(v, a)| (v.clone(), a % m)).collect();
        prop_assert_eq!(value / m, eval(&term, &first, &s).unwrap());
        prop_assert_eq!(value % m, eval(&term, &second, &t).unwrap());
        // Rees quotient by the minimal ideal.
        let kernel: Vec<usize> = {
            let g = finsemi::green(&s);
            let x = (0..s.len()).find(|&x| (0..s.len()).all(|y| g.j_leq(x, y))).unwrap();
            (0..s.len()).filter(|&y| g.j.same(x, y)).collect()
        };
        let (q, proj) = rees_quotient(&s, &kernel).unwrap();
        let tau: Vec<(String, usize)> = vars.iter().map(|v| (v.clone(), rng.gen_range(0..s.len()))).collect();
        let mapped: Vec<(String, usize)> = tau.iter().map(|(v, a)| (v.clone(), proj[*a])).collect();
        prop_assert_eq!(proj[eval(&term, &tau, &s).unwrap()], eval(&term, &mapped, &q).unwrap());
    }

    #[test]
    fn omega_is_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_small(&mut rng);
        let term = finsemi::omega::Term::omega(common::random_term(&mut rng, &["x", "y"], 3));
        let sigma: Vec<(String, usize)> = term.variables().iter().map(|v| (v.clone(), rng.gen_range(0..s.len()))).collect();
        prop_assert!(s.is_idempotent(eval(&term, &sigma, &s).unwrap()));
    }

    #[test]
    fn printer_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lhs = common::random_term(&mut rng, &["x", "y", "z1"], 4);
        let rhs = common::random_term(&mut rng, &["x", "y'"], 4);
        let law = Law::eq(lhs, rhs);
        prop_assert_eq!(parse_law(&law.to_string()).unwrap(), law);
    }
}
