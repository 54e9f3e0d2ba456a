//! Agreement between the recognizer and a brute-force oracle that
//! enumerates weighted trees straight from the definition.

mod common;

use common::{
    brute_force_masks, graph_from_mask, is_bull_dart_gem_free, is_union_of_cliques, ORACLE_K,
};
use leafpower::chordal::is_chordal;
use leafpower::{recognize, DistanceConstraintSet, Graph, RecognizeOptions};

fn is_power(g: &Graph, k: u64) -> bool {
    let c = DistanceConstraintSet::new();
    recognize(g, k, &c, &RecognizeOptions::default())
        .expect("unconstrained recognition cannot fail")
        .is_root()
}

fn assert_agreement(n: usize) {
    let oracle = brute_force_masks(n);
    for (ki, &k) in ORACLE_K.iter().enumerate() {
        for mask in 0..(1u32 << (n * (n - 1) / 2)) {
            let g = graph_from_mask(n, mask);
            let got = is_power(&g, k);
            let want = oracle.contains(ki, mask);
            assert_eq!(
                got, want,
                "disagreement at n={n} k={k} mask={mask:#012b}: recognizer {got}, oracle {want}"
            );
        }
    }
}

#[test]
fn recognizer_matches_brute_force_on_up_to_four_vertices() {
    for n in 2..=4 {
        assert_agreement(n);
    }
}

#[test]
fn recognizer_matches_brute_force_on_five_vertices() {
    assert_agreement(5);
}

#[test]
fn trivial_sizes_are_always_powers() {
    let empty = Graph::new(0, vec![], &[]).unwrap();
    let single = Graph::new(1, vec!["v1".into()], &[]).unwrap();
    for k in ORACLE_K {
        assert!(is_power(&empty, k));
        assert!(is_power(&single, k));
    }
}

/// Cross-validates the oracle itself against the two classical
/// characterizations: threshold 2 keeps exactly the disjoint unions of
/// cliques, threshold 3 exactly the chordal graphs with no induced bull,
/// dart, or gem.
#[test]
fn oracle_reproduces_known_characterizations() {
    for n in 2..=5 {
        let oracle = brute_force_masks(n);
        for mask in 0..(1u32 << (n * (n - 1) / 2)) {
            let g = graph_from_mask(n, mask);
            assert_eq!(
                oracle.contains(0, mask),
                is_union_of_cliques(&g),
                "threshold 2, n={n} mask={mask:#012b}"
            );
            assert_eq!(
                oracle.contains(1, mask),
                is_chordal(&g).0 && is_bull_dart_gem_free(&g),
                "threshold 3, n={n} mask={mask:#012b}"
            );
        }
    }
}
