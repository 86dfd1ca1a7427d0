//! Enumerate non-isomorphic trees and check the oracles against each other.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treelike::enumerate::{canonical_form, free_trees, is_isomorphic, random_tree};
use treelike::random_walk::ordered_fpt_total;
use treelike::{wiener_edge_cut, wiener_oracle};

fn main() -> treelike::Result<()> {
    println!("{:>3} {:>6} {:>8} {:>8}", "n", "trees", "min S", "max S");
    for n in 1..=12 {
        let trees = free_trees(n);
        let mut range = (u64::MAX, 0u64);
        for t in &trees {
            let s = wiener_oracle(t);
            assert_eq!(s, wiener_edge_cut(t));
            let s: u64 = s.try_into().expect("small");
            range = (range.0.min(s), range.1.max(s));
        }
        println!("{n:>3} {:>6} {:>8} {:>8}", trees.len(), range.0, range.1);
    }

    // first-passage totals over ordered pairs are always 2(n-1)S
    for t in free_trees(7) {
        let total = ordered_fpt_total(&t)?;
        let s = wiener_oracle(&t);
        assert_eq!(total, num_rational::BigRational::from_integer(2 * 6 * s));
    }
    println!("\nsum of ordered first-passage times = 12 S on all 11 trees with 7 vertices");

    // random Prüfer trees land in the enumerated classes
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let classes = free_trees(8);
    let mut hits: BTreeMap<usize, usize> = BTreeMap::new();
    for _ in 0..2000 {
        let t = random_tree(8, &mut rng);
        let class = classes
            .iter()
            .position(|c| is_isomorphic(c, &t))
            .expect("enumeration is complete");
        *hits.entry(class).or_default() += 1;
    }
    println!("\n2000 uniform labelled trees on 8 vertices by isomorphism class: {hits:?}");
    let code = canonical_form(&treelike::Tree::star(4)?);
    println!(
        "canonical form of the star K1,4: {}",
        String::from_utf8_lossy(&code)
    );
    Ok(())
}
