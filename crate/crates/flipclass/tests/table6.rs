use std::path::Path;

use flipclass::format::load_coefficient_table;
use flipclass_core::rtilde::CbarRecipe;
use flipclass_core::{Permutation, RTildeOracle};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../tables"))
}

#[test]
fn sixth_coefficient_from_the_shipped_table() {
    let table = load_coefficient_table(table_dir(), 6).unwrap().expect("tables/ac6.tsv");
    assert_eq!(table.len(), 4515);
    let recipe = CbarRecipe::new(Some(&table));
    let mut oracle = RTildeOracle::new();
    let mut checked = 0;
    let all5 = Permutation::all(5);
    for &u in &all5 {
        for &v in &all5 {
            if u.bruhat_leq(&v).unwrap() && v.length() - u.length() >= 6 {
                assert_eq!(recipe.coefficient(u, v, 6).unwrap(), oracle.coefficient(u, v, 6).unwrap(), "[{u},{v}]");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let all6 = Permutation::all(6);
    let mut sampled = 0;
    while sampled < 150 {
        let (u, v) = (*all6.choose(&mut rng).unwrap(), *all6.choose(&mut rng).unwrap());
        let gap = v.length() as isize - u.length() as isize;
        if gap < 6 || gap % 2 != 0 || !u.bruhat_leq(&v).unwrap() {
            continue;
        }
        assert_eq!(recipe.coefficient(u, v, 6).unwrap(), oracle.coefficient(u, v, 6).unwrap(), "[{u},{v}]");
        sampled += 1;
    }
}
