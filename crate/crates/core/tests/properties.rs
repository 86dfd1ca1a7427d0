//! Property tests against the brute-force oracles on random trees.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treelike::closed_forms::{
    step_exponential, step_star_fractal, step_subdivision, wiener_sequence, CayleyState,
};
use treelike::enumerate::{canonical_form, is_isomorphic, random_tree};
use treelike::growth::{grow, predicted_counts, Family, ModelSpec, Seed};
use treelike::random_walk::{fpt_exact, ordered_fpt_total};
use treelike::{diameter, wiener_edge_cut, wiener_oracle, Tree};

fn tree(n: usize, seed: u64) -> Tree {
    random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracles_agree(n in 1usize..80, seed in any::<u64>()) {
        let t = tree(n, seed);
        prop_assert_eq!(wiener_oracle(&t), wiener_edge_cut(&t));
    }

    #[test]
    fn relabelling_preserves_everything(n in 2usize..40, seed in any::<u64>()) {
        let t = tree(n, seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 1));
        let r = t.relabeled(&perm).unwrap();
        prop_assert_eq!(wiener_oracle(&t), wiener_oracle(&r));
        prop_assert_eq!(diameter(&t), diameter(&r));
        prop_assert_eq!(canonical_form(&t), canonical_form(&r));
        prop_assert!(is_isomorphic(&t, &r));
        prop_assert_eq!(ordered_fpt_total(&t).unwrap(), ordered_fpt_total(&r).unwrap());
    }

    #[test]
    fn one_step_forms_match_oracle(n in 2usize..25, seed in any::<u64>(), w in 1u64..5, m in 0u64..5) {
        let t = tree(n, seed);
        let s = wiener_oracle(&t);
        let spec = if m == 0 {
            ModelSpec::new(Family::MthSubdivision { m: w as usize }, Seed::Explicit(t), 1)
        } else {
            ModelSpec::new(Family::StarFractalWm { w: w as usize, m: m as usize }, Seed::Explicit(t), 1)
        };
        let grown = grow(&spec).unwrap();
        let (s1, n1) = if m == 0 {
            step_subdivision(&s, &big(n), w).unwrap()
        } else {
            step_star_fractal(&s, &big(n), w, m).unwrap()
        };
        prop_assert_eq!(n1, big(grown.len()));
        prop_assert_eq!(s1, wiener_edge_cut(&grown));
    }

    #[test]
    fn exponential_step_matches_oracle(n in 1usize..30, seed in any::<u64>(), m in 1u64..5) {
        let t = tree(n, seed);
        let (s1, n1) = step_exponential(&wiener_oracle(&t), &big(n), m);
        let grown = grow(&ModelSpec::new(Family::Exponential { m: m as usize }, Seed::Explicit(t), 1)).unwrap();
        prop_assert_eq!(n1, big(grown.len()));
        prop_assert_eq!(s1, wiener_oracle(&grown));
    }

    #[test]
    fn counts_match_generated_trees(n in 2usize..12, seed in any::<u64>(), w in 1usize..4, m in 1usize..4, t in 0u32..3) {
        let base = tree(n, seed);
        for family in [
            Family::FirstOrderSubdivision,
            Family::MthSubdivision { m },
            Family::StarFractal1m { m },
            Family::StarFractalWm { w, m },
            Family::Exponential { m },
        ] {
            let spec = ModelSpec::new(family, Seed::Explicit(base.clone()), t);
            let grown = grow(&spec).unwrap();
            let last = predicted_counts(&spec).unwrap().corrected.steps.pop().unwrap();
            prop_assert_eq!(last.vertices, big(grown.len()));
            prop_assert_eq!(last.edges, big(grown.edge_count()));
        }
    }

    #[test]
    fn first_passage_sum_is_twice_edges_times_wiener(n in 2usize..30, seed in any::<u64>()) {
        let t = tree(n, seed);
        let total = ordered_fpt_total(&t).unwrap();
        let expected = BigInt::from(2 * (n - 1)) * wiener_oracle(&t);
        prop_assert_eq!(total, BigRational::from_integer(expected));
    }

    #[test]
    fn commute_time_is_resistance_times_edges(n in 2usize..25, seed in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let t = tree(n, seed);
        let (u, v) = (a % n, b % n);
        let commute = &fpt_exact(&t, v).unwrap()[u] + &fpt_exact(&t, u).unwrap()[v];
        let d = t.bfs_distances(u).unwrap().dist[v] as usize;
        prop_assert_eq!(commute, BigRational::from_integer(big(2 * (n - 1) * d)));
    }

    #[test]
    fn spec_text_round_trips(n in 2usize..10, seed in any::<u64>(), w in 1usize..6, m in 1usize..6, t in 0u32..9) {
        let specs = [
            ModelSpec::new(Family::StarFractalWm { w, m }, Seed::Explicit(tree(n, seed)), t),
            ModelSpec::new(Family::MthSubdivision { m }, Seed::Star(w), t),
            ModelSpec::standard(Family::Cayley { n: w + 2 }, t + 1),
            ModelSpec::standard(Family::Exponential { m }, t),
        ];
        for spec in specs {
            let back: ModelSpec = spec.to_string().parse().unwrap();
            prop_assert_eq!(back, spec);
        }
    }
}

/// Cayley growth on seeds built by growing random trees whose internal
/// degrees were forced to `n`.
#[test]
fn cayley_recurrence_on_grown_seeds() {
    for n in 3..=5usize {
        for t0 in 1..=2 {
            let seed = grow(&ModelSpec::standard(Family::Cayley { n }, t0)).unwrap();
            // drop the leaves under one parent so the seed is no longer symmetric
            let leaf = seed.leaves()[0];
            let parent = seed.neighbors(leaf)[0] as usize;
            let trimmed = seed
                .retain(|v| v == parent || !seed.neighbors(parent).contains(&(v as u32)) || !seed.is_leaf(v))
                .unwrap();
            let seed_tree = if CayleyState::from_seed(&trimmed, n as u64).is_ok() {
                trimmed
            } else {
                seed
            };
            let spec = ModelSpec::new(Family::Cayley { n }, Seed::Explicit(seed_tree.clone()), 3);
            let seq = wiener_sequence(&spec).unwrap();
            let mut grown = seed_tree;
            for p in &seq[1..] {
                grown = treelike::growth::grow_cayley(n, 1, &Seed::Explicit(grown)).unwrap();
                assert_eq!(p.wiener, wiener_oracle(&grown));
                assert_eq!(p.vertices, big(grown.len()));
            }
        }
    }
}
