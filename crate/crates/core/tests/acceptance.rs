//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use finsemi::forest::{build_forest, verify_ramseyan};
use finsemi::graphs::{act, build_mn, gamma, lambda, transition_monoid, tree_witness};
use finsemi::omega::{catalog, check_law, eval, knast, Strategy, DEFAULT_LAW_BUDGET};
use finsemi::sk::{self, build, canonical_words, normalize, Variant, Which};
use finsemi::synthesis::{sl_witness, synthesis_u};
use finsemi::words::{self, thue_morse, Word};
use finsemi::{construct, families, green, FiniteSemigroup, DEFAULT_BUDGET};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn holds(s: &FiniteSemigroup, law: &finsemi::omega::Law, strategy: Strategy) -> Result<bool, String> {
    check_law(s, law, strategy, DEFAULT_LAW_BUDGET).map(|r| r.holds).map_err(|e| e.to_string())
}

fn t1_fact() -> Outcome {
    let tm = transition_monoid(&gamma(1), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let r = &tm.report;
    ensure!(r.size == 15, "size {}", r.size);
    ensure!(r.aperiodic && r.inverse, "aperiodic={} inverse={}", r.aperiodic, r.inverse);
    Ok(format!(
        "size 15 counts the adjoined identity and the empty map (identity from a nonempty word: {}; without the empty map: {})",
        r.identity_from_nonempty_word, r.size_without_empty_map
    ))
}

fn mn_power_law() -> Outcome {
    let tower = build_mn(2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for (n, m) in tower.levels.iter().enumerate() {
        let s = m.semigroup();
        for x in 0..s.len() {
            ensure!(s.pow(x, 4) == s.pow(x, 3), "M_{n}: x^4 != x^3 at {}", s.name(x));
        }
        sizes.push(s.len());
    }
    Ok(format!("|M_0..M_2| = {sizes:?}"))
}

fn mn_inequality() -> Outcome {
    let tower = build_mn(2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    for (n, m) in tower.levels.iter().enumerate() {
        let s = m.semigroup();
        for x in 0..s.len() {
            ensure!(
                m.closure.values[s.pow(x, 3)].is_partial_identity(),
                "M_{n}: x^3 not a partial identity at {}",
                s.name(x)
            );
        }
        ensure!(holds(s, &catalog("one-le:3").unwrap(), Strategy::Exhaustive)?, "ordered check disagrees on M_{n}");
    }
    Ok("x^3 is a partial identity for every element".into())
}

fn knast_sk() -> Outcome {
    for k in 1..=3 {
        let s = build(k, Variant::Sk, Which::S).map_err(|e| e.to_string())?.semigroup;
        ensure!(holds(&s, &knast(), Strategy::IdempotentVars)?, "fails on S_{k}");
    }
    Ok("S_1, S_2, S_3".into())
}

fn skp_identity() -> Outcome {
    for k in 2..=3 {
        for p in 2..=3 {
            let s = build(k, Variant::Skp(p), Which::S).map_err(|e| e.to_string())?.semigroup;
            let law = catalog(&format!("sk-power:{k}:{p}")).unwrap();
            ensure!(holds(&s, &law, Strategy::Exhaustive)?, "fails on S_{k}({p})");
        }
    }
    Ok("(k, p) in {2,3}x{2,3}".into())
}

fn mu_acts_at_base() -> Outcome {
    let mu = thue_morse();
    for n in 0..=4 {
        let g = gamma(n);
        for letter in 0..2 {
            let m = act(&g, &mu.iterate(letter, n + 1)).map_err(|e| e.to_string())?;
            ensure!(m.pairs() == [(0, 0)], "n={n} letter={letter}: {:?}", m.pairs());
        }
    }
    Ok("n = 0..4".into())
}

fn binary_tree() -> Outcome {
    let r = tree_witness(0, 4).map_err(|e| e.to_string())?;
    for (d, &c) in r.counts.iter().enumerate() {
        ensure!(c >= 1 << d, "depth {d}: {c} distinct");
    }
    ensure!(r.restrictions_agree, "lifts do not restrict to their parents");
    Ok(format!("counts {:?}", r.counts))
}

fn folding_counts() -> Outcome {
    let counts: Vec<usize> = (1..=5).map(|n| lambda(n).vertex_count()).collect();
    ensure!(counts == [2, 4, 8, 16, 32], "{counts:?}");
    Ok(format!("{counts:?}"))
}

fn forests() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = (0, 1);
    for i in 0..500 {
        let s = common::random_small(&mut rng);
        let letters = rng.gen_range(1..=3);
        let images: Vec<usize> = (0..letters).map(|_| rng.gen_range(0..s.len())).collect();
        let len = rng.gen_range(1..=200);
        let w: Word = (0..len).map(|_| rng.gen_range(0..letters as u8)).collect();
        let f = build_forest(&images, &s, &w);
        verify_ramseyan(&f, &images, &s).map_err(|v| format!("instance {i}: {v:?}"))?;
        if f.height() * worst.1 > worst.0 * s.len() {
            worst = (f.height(), s.len());
        }
    }
    Ok(format!("500 instances, worst height {} for |S| = {}", worst.0, worst.1))
}

fn ptm_facts() -> Outcome {
    let mu = thue_morse();
    for n in 0..=10 {
        let w = mu.iterate(0, n);
        ensure!(w.len() == 1 << n, "length of mu^{n}(a) is {}", w.len());
        ensure!(words::is_overlap_free(&w), "mu^{n}(a) has an overlap");
    }
    let w = mu.iterate(0, 10);
    let present = words::factors(&w, 3);
    let missing: BTreeSet<String> = (1..=3)
        .flat_map(|l| words::all_words(2, l))
        .filter(|u| !present.contains(u))
        .map(|u| mu.alphabet().render(&u))
        .collect();
    ensure!(missing == BTreeSet::from(["aaa".to_string(), "bbb".to_string()]), "missing {missing:?}");
    Ok("overlap-free to n = 10, missing {aaa, bbb}".into())
}

fn separation() -> Outcome {
    let s = sk::parse_sequence("1,2,3,4,5,...").map_err(|e| e.to_string())?;
    let t = sk::parse_sequence("1,2,4,5,6,...").map_err(|e| e.to_string())?;
    let r = sk::separation_check(&s, &t, Variant::Sk, 60).map_err(|e| e.to_string())?;
    ensure!(r.k == 4, "separated in S_{}", r.k);
    ensure!(r.separated && r.matches_closed_form, "{} vs {}", r.image_s, r.image_t);
    Ok(format!("S_4: {} vs {}", r.image_s, r.image_t))
}

fn malcev() -> Outcome {
    for variant in [Variant::Sk, Variant::Skp(2)] {
        let r = sk::malcev_witness_check(2, variant).map_err(|e| e.to_string())?;
        ensure!(r.projections_onto && r.projections_homomorphic, "{variant:?}: projections");
        ensure!(r.preimages.iter().all(|p| p.isomorphism.is_some()), "{variant:?}: preimage not isomorphic to T");
        ensure!(r.s_is_image_of_r, "{variant:?}: S not an image of R");
    }
    Ok("k = 2 for S_k and S_k(2)".into())
}

fn synthesis() -> Outcome {
    let g = families::cyclic_group(2);
    let f: Vec<usize> = (0..=3).map(|i| i % 2).collect();
    let r = sl_witness(3, &g, &f, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    Ok(format!("|U| = {}, {} maximal subgroups in K all isomorphic to C_2", r.u_size, r.subgroups))
}

fn params() -> Vec<(usize, Variant)> {
    let mut v: Vec<(usize, Variant)> = (1..=4).map(|k| (k, Variant::Sk)).collect();
    v.extend([(2, Variant::Skp(2)), (3, Variant::Skp(2)), (2, Variant::Skp(3)), (3, Variant::Skp(3))]);
    v
}

/// Every table built by the library, for the associativity and D = J sweeps.
fn built_tables(rng: &mut impl Rng) -> Result<Vec<(String, FiniteSemigroup)>, String> {
    let mut out = Vec::new();
    for (k, v) in params() {
        for which in [Which::S, Which::T, Which::R] {
            out.push((format!("{which:?}_{k} {v:?}"), build(k, v, which).map_err(|e| e.to_string())?.semigroup));
        }
    }
    let tower = build_mn(2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    for (n, m) in tower.levels.into_iter().enumerate() {
        out.push((format!("M_{n}"), m.closure.semigroup));
    }
    for n in 0..=3 {
        let tm = transition_monoid(&gamma(n), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        out.push((format!("T_{n}"), tm.closure.semigroup));
    }
    let f: Vec<usize> = (0..=3).map(|i| i % 2).collect();
    let u = synthesis_u(&families::capped_addition(3), &families::cyclic_group(2), &f, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?;
    out.push(("U(M_3, C_2)".into(), u.semigroup));
    for i in 0..40 {
        let a = common::random_small(rng);
        let b = common::random_small(rng);
        out.push((format!("product {i}"), construct::product(&a, &b)));
        out.push((format!("random {i}"), a));
    }
    Ok(out)
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let tables = built_tables(&mut rng)?;
    for (name, s) in &tables {
        s.check_associative_full().map_err(|e| format!("{name}: {e}"))?;
        ensure!(green(s).d_equals_j(), "{name}: D != J");
    }

    for (k, v) in params() {
        let rs = common::rewrite::rules(k, v);
        for _ in 0..20 {
            let len = rng.gen_range(1..=30);
            let w: Word = (0..len).map(|_| rng.gen_range(0..2u8)).collect();
            let expected = normalize(&w, k, v).word();
            for _ in 0..100 {
                ensure!(common::rewrite::rewrite(&w, &rs, &mut rng) == expected, "confluence: k={k} {v:?} {w:?}");
            }
        }
    }

    for (k, v) in params().into_iter().filter(|&(k, _)| k <= 3) {
        let words = canonical_words(k, v).map_err(|e| e.to_string())?;
        for x in words.iter().filter_map(|c| c.word()) {
            for y in words.iter().filter_map(|c| c.word()) {
                let direct = normalize(&[x.clone(), y.clone()].concat(), k, v);
                let nx = normalize(&x, k, v).word().unwrap();
                let ny = normalize(&y, k, v).word().unwrap();
                ensure!(direct == normalize(&[nx, ny].concat(), k, v), "multiplicativity: k={k} {v:?}");
            }
        }
    }

    // Random homomorphisms: the projections of a subsemigroup of S x T
    // generated by random pairs.
    for i in 0..100 {
        let s = common::random_small(&mut rng);
        let t = common::random_small(&mut rng);
        let st = construct::product(&s, &t);
        let gens: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..st.len())).collect();
        let (sub, emb) = construct::subsemigroup(&st, &st.generated_by(&gens)).map_err(|e| e.to_string())?;
        let m = t.len();
        let p1: Vec<usize> = emb.iter().map(|&x| x / m).collect();
        let p2: Vec<usize> = emb.iter().map(|&x| x % m).collect();
        construct::hom_check(&sub, &s, &p1).map_err(|e| format!("hom {i}: {e}"))?;
        construct::hom_check(&sub, &t, &p2).map_err(|e| format!("hom {i}: {e}"))?;
        let term = common::random_term(&mut rng, &["x", "y", "z"], 3);
        let sigma: Vec<(String, usize)> =
            term.variables().into_iter().map(|v| (v, rng.gen_range(0..sub.len()))).collect();
        let value = eval(&term, &sigma, &sub).map_err(|e| e.to_string())?;
        for (target, proj) in [(&s, &p1), (&t, &p2)] {
            let mapped: Vec<(String, usize)> = sigma.iter().map(|(v, a)| (v.clone(), proj[*a])).collect();
            ensure!(proj[value] == eval(&term, &mapped, target).map_err(|e| e.to_string())?, "eval/hom {i}: {term}");
        }
    }
    Ok(format!("{} tables, 100 homomorphisms", tables.len()))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("1 T_1 has 15 elements, aperiodic, inverse", t1_fact, Duration::from_secs(1)),
        ("2 x^4 = x^3 in M_0..M_2", mn_power_law, Duration::from_secs(60)),
        ("3 1 <= x^3 in M_0..M_2", mn_inequality, Duration::from_secs(60)),
        ("4 Knast's identity in S_1..S_3", knast_sk, Duration::from_secs(300)),
        ("5 S_k(p) power identity", skp_identity, Duration::from_secs(300)),
        ("6 mu^(n+1) acts on Gamma_n only at the base", mu_acts_at_base, Duration::from_secs(60)),
        ("7 binary tree witness to depth 4", binary_tree, Duration::from_secs(300)),
        ("8 folding vertex counts 2..32", folding_counts, Duration::from_secs(60)),
        ("9 500 random Ramseyan forests", forests, Duration::from_secs(120)),
        ("10 Thue-Morse facts", ptm_facts, Duration::from_secs(60)),
        ("11 separation in S_4", separation, Duration::from_secs(60)),
        ("12 Mal'cev witnesses", malcev, Duration::from_secs(60)),
        ("13 semilattice synthesis witness", synthesis, Duration::from_secs(60)),
        ("14 property suites", properties, Duration::from_secs(600)),
    ];
    let mut failures = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took longer than {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    println!("acceptance: {} of 14 criteria passed", 14 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
