use flipclass_core::classify::census;
use flipclass_core::invariants::all_paths_effective;
use flipclass_core::reduction::{essential_letters, restrict, shuffle_product};
use flipclass_core::reforder::random_ordering;
use flipclass_core::{
    flipclass_of, invariant_equivalent, BruhatPath, Flipclass, IotaPolynomial, Permutation, ReflectionOrdering,
    TimeSupportGraph,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_path(n: usize, h: usize, rng: &mut ChaCha8Rng) -> BruhatPath {
    loop {
        let mut w: Vec<u8> = (1..=n as u8).collect();
        w.shuffle(rng);
        let start = Permutation::from_window(&w).unwrap();
        let mut x = start;
        let mut labels = Vec::new();
        while labels.len() < h {
            let up = x.edges_up();
            let Some(e) = up.choose(rng) else { break };
            labels.push(e.label);
            x = e.target;
        }
        if labels.len() == h {
            return BruhatPath::from_labels(start, &labels).unwrap();
        }
    }
}

fn lex_c(f: &Flipclass) -> usize {
    ReflectionOrdering::lex(f.degree()).unwrap().count_increasing(f).unwrap()
}

fn all_flipclasses(n: usize, h: usize) -> Vec<Flipclass> {
    let mut out = Vec::new();
    census(n, h, |f| out.push(f)).unwrap();
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn c_is_independent_of_the_ordering(seed in any::<u64>(), n in 6usize..=7, h in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = flipclass_of(&random_path(n, h, &mut rng));
        let c = lex_c(&f);
        for _ in 0..10 {
            prop_assert_eq!(random_ordering(n, &mut rng).count_increasing(&f).unwrap(), c);
        }
    }

    #[test]
    fn time_support_graph_properties(seed in any::<u64>(), h in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = flipclass_of(&random_path(6, h, &mut rng));
        let ts = TimeSupportGraph::of(&f);
        let maximal = ts.count_maximal_paths();
        prop_assert!(maximal >= f.len() as u64);
        prop_assert_eq!(maximal == f.len() as u64, all_paths_effective(&f));
        for i in 0..=h - 2 {
            for a in ts.rank(i) {
                for b in ts.rank(i + 2) {
                    prop_assert!(ts.two_step_paths(a, b) <= 2);
                }
            }
        }
        let s = ts.project();
        let mut perms: Vec<Permutation> = ts.vertices().iter().map(|v| v.perm).collect();
        perms.sort();
        perms.dedup();
        prop_assert_eq!(s.vertices(), &perms[..]);
        for e in ts.edges() {
            let edge = (ts.vertices()[e.source].perm, ts.vertices()[e.target].perm, e.label);
            prop_assert!(s.edges().contains(&edge));
        }
    }

    #[test]
    fn restriction_preserves_invariants(seed in any::<u64>(), h in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(5..=7);
        let f = flipclass_of(&random_path(n, h, &mut rng));
        let letters = essential_letters(&f);
        prop_assert!(letters.len() <= 2 * h);
        let r = restrict(&f).unwrap();
        prop_assert_eq!(r.degree(), letters.len());
        prop_assert_eq!(r.len(), f.len());
        prop_assert!(invariant_equivalent(&f, &r));
        prop_assert_eq!(lex_c(&r), lex_c(&f));
    }
}

#[test]
fn shuffle_products_multiply_iota() {
    let small: Vec<Flipclass> = (1..=3).flat_map(|h| all_flipclasses(3, h)).chain(all_flipclasses(4, 2)).collect();
    for f in &small {
        for g in &small {
            let p = shuffle_product(f, g).unwrap();
            assert_eq!(IotaPolynomial::of(&p), &IotaPolynomial::of(f) * &IotaPolynomial::of(g));
            assert_eq!(lex_c(&p), lex_c(f) * lex_c(g));
        }
    }
}

#[test]
fn lex_first_and_colex_last_paths_are_increasing() {
    for h in 1..=5 {
        let ord = ReflectionOrdering::lex(4).unwrap();
        for f in all_flipclasses(4, h) {
            assert!(ord.lex_first_path(&f).unwrap().is_increasing(&ord));
            assert!(ord.colex_last_path(&f).unwrap().is_increasing(&ord));
        }
    }
}

#[test]
fn invariant_equivalence_is_not_identity() {
    let e = Permutation::identity(4);
    let classes: Vec<Flipclass> = flipclass_core::flipclasses(e, "4231".parse().unwrap(), 3).unwrap();
    assert_eq!(classes.len(), 2);
    assert_ne!(classes[0], classes[1]);
    assert!(invariant_equivalent(&classes[0], &classes[1]));
}
