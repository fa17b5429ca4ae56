mod common;

use finsemi::forest::{build_forest, verify_ramseyan, Forest};
use finsemi::{families, FiniteSemigroup};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(rng: &mut impl Rng) -> (FiniteSemigroup, Vec<usize>, Vec<u8>) {
    let s = common::random_small(rng);
    let letters = rng.gen_range(1..=3);
    let images: Vec<usize> = (0..letters).map(|_| rng.gen_range(0..s.len())).collect();
    let len = rng.gen_range(1..=200);
    let w = (0..len).map(|_| rng.gen_range(0..letters as u8)).collect();
    (s, images, w)
}

fn children_are_lower(f: &Forest) -> bool {
    (0..f.nodes.len()).all(|i| f.nodes[i].children.iter().all(|&c| f.height_of(c) < f.height_of(i)))
}

#[test]
fn random_instances_are_ramseyan() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let (s, images, w) = instance(&mut rng);
        let f = build_forest(&images, &s, &w);
        verify_ramseyan(&f, &images, &s).unwrap_or_else(|v| panic!("{v:?} on {:?} {w:?}", s.rows()));
        assert!(children_are_lower(&f));
        worst = worst.max(f.height() as f64 / s.len() as f64);
    }
    assert!(worst <= 9.0);
}

#[test]
fn deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (s, images, w) = instance(&mut rng);
    assert_eq!(build_forest(&images, &s, &w), build_forest(&images, &s, &w));
}

#[test]
fn groups_and_long_words() {
    for n in 1..=6 {
        let g = families::cyclic_group(n);
        let images: Vec<usize> = (0..g.len()).collect();
        let w: Vec<u8> = (0..1000).map(|i| ((i * 7 + i / 3) % n) as u8).collect();
        let f = build_forest(&images, &g, &w);
        verify_ramseyan(&f, &images, &g).unwrap();
    }
}

#[test]
fn constant_idempotent_image_gives_height_one() {
    let s = families::chain_semilattice(4);
    for len in 2..40 {
        let f = build_forest(&[2, 2], &s, &vec![0; len].iter().chain(&vec![1; len]).copied().collect::<Vec<u8>>());
        assert_eq!(f.height(), 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn forests_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, images, w) = instance(&mut rng);
        let f = build_forest(&images, &s, &w);
        prop_assert_eq!(verify_ramseyan(&f, &images, &s), Ok(()));
        prop_assert!(children_are_lower(&f));
    }
}

#[test]
fn larger_semigroups_stay_within_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut family = vec![
        finsemi::sk::build(2, finsemi::sk::Variant::Sk, finsemi::sk::Which::S).unwrap().semigroup,
        finsemi::sk::build(2, finsemi::sk::Variant::Skp(3), finsemi::sk::Which::R).unwrap().semigroup,
        families::cyclic_group(5),
    ];
    for _ in 0..20 {
        family.push(common::random_transformations(&mut rng, 4, 3, 60));
    }
    for s in &family {
        for _ in 0..20 {
            let letters = rng.gen_range(1..=4);
            let images: Vec<usize> = (0..letters).map(|_| rng.gen_range(0..s.len())).collect();
            let w: Vec<u8> = (0..rng.gen_range(1..=400)).map(|_| rng.gen_range(0..letters as u8)).collect();
            let f = build_forest(&images, s, &w);
            verify_ramseyan(&f, &images, s).unwrap();
        }
    }
}
