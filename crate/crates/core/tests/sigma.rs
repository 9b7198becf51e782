//! Cayley balls and nonnegative-character components.

use std::collections::HashSet;

use proptest::prelude::*;
use rinfty_core::case_studies::FreeWord;
use rinfty_core::case_studies::{GwElement, GwGroup};
use rinfty_core::lodha_moore::Variant;
use rinfty_core::sigma::{ball, nonneg_components, Crystallographic, GroupOracle, Lattice, LodhaMoore, ThompsonPl, ThompsonTreePairs};

/// Every reduced word of length at most `radius` over `±1..=±rank`.
fn words(rank: i32, radius: usize) -> Vec<FreeWord> {
    let letters: Vec<i32> = (1..=rank).flat_map(|g| [g, -g]).collect();
    let mut layer = vec![Vec::<i32>::new()];
    let mut out = vec![FreeWord::identity()];
    for _ in 0..radius {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().filter(move |&&l| w.last() != Some(&-l)).map(move |&l| [w.clone(), vec![l]].concat()))
            .collect();
        out.extend(layer.iter().map(|w| FreeWord::from_letters(w.iter().copied())));
    }
    out
}

fn check_components<O: GroupOracle>(oracle: &O, radius: usize) {
    let b = ball(oracle, radius).unwrap();
    for label in oracle.character_labels() {
        let mut previous = 0;
        for within in 0..=radius {
            let c = nonneg_components(oracle, &b, &label, within).unwrap();
            assert_eq!(c.sizes.iter().sum::<usize>(), c.nonnegative_vertices, "{label}");
            assert!(c.count >= 1, "the identity has χ = 0");
            assert!(c.nonnegative_vertices >= previous, "{label} at {within}");
            assert!(c.nonnegative_vertices <= b.sizes()[within]);
            // The same vertices inside the smaller ball: more edges can only merge.
            let small = nonneg_components(oracle, &ball(oracle, within).unwrap(), &label, within).unwrap();
            assert_eq!(small.nonnegative_vertices, c.nonnegative_vertices);
            assert!(c.count <= small.count, "{label} at {within}");
            previous = c.nonnegative_vertices;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_balls_count_l1_points(n in 1usize..=3, radius in 0usize..=5) {
        let sizes = ball(&Lattice(n), radius).unwrap().sizes();
        for (r, &size) in sizes.iter().enumerate() {
            let r = r as i64;
            let brute = (0..(2 * r + 1).pow(n as u32))
                .filter(|&k| {
                    let coords = (0..n).map(|i| (k / (2 * r + 1).pow(i as u32)) % (2 * r + 1) - r);
                    coords.map(i64::abs).sum::<i64>() <= r
                })
                .count();
            prop_assert_eq!(size, brute);
        }
    }

    #[test]
    fn lattice_halfspaces_are_connected(n in 1usize..=3, radius in 1usize..=5) {
        let b = ball(&Lattice(n), radius).unwrap();
        for label in Lattice(n).character_labels() {
            prop_assert_eq!(nonneg_components(&Lattice(n), &b, &label, radius).unwrap().count, 1);
        }
    }
}

#[test]
fn gw_ball_matches_word_enumeration() {
    for b in [2, 3] {
        let group = GwGroup::new(b);
        let balls = ball(&Crystallographic(group), 4).unwrap();
        let mut reached: HashSet<GwElement> = HashSet::new();
        let all = words(3, 4);
        for r in 0..=4 {
            reached.extend(all.iter().filter(|w| w.len() <= r).map(|w| group.evaluate(w)));
            assert_eq!(balls.sizes()[r], reached.len(), "b = {b}, r = {r}");
        }
        let layers = group.ball_layers(4);
        let by_layer: Vec<usize> = layers.iter().scan(0, |acc, l| {
            *acc += l.len();
            Some(*acc)
        }).collect();
        assert_eq!(balls.sizes(), by_layer);
    }
}

#[test]
fn thompson_growth_agrees_between_models() {
    // Spheres of F in {x0, x1} have 1, 4, 12, 36, 108 elements.
    let trees = ball(&ThompsonTreePairs, 4).unwrap();
    assert_eq!(trees.sizes(), vec![1, 5, 17, 53, 161]);
    assert_eq!(ball(&ThompsonPl, 4).unwrap().sizes(), trees.sizes());
    assert!(trees.exact);
}

#[test]
fn balls_grow_and_components_are_consistent() {
    check_components(&Lattice(2), 5);
    check_components(&ThompsonTreePairs, 3);
    check_components(&Crystallographic(GwGroup::new(2)), 4);
    let lm = LodhaMoore::new(Variant::G, 8);
    check_components(&lm, 2);
    let b = ball(&lm, 2).unwrap();
    assert!(!b.exact);
    assert!(b.sizes().windows(2).all(|w| w[0] < w[1]));
}
