//! Randomized and exhaustive property suites: tree-metric laws on seeded
//! random trees, file-format round-trips, chordality inclusions, witness
//! invariants of the recognizer, and constraint monotonicity.

mod common;

use common::{fuzz_rng, graph_from_mask, mask_of_graph, random_tree};
use leafpower::chordal::{is_chordal, is_strongly_chordal};
use leafpower::gadgets::{
    assemble_hn, bot_gadget, bot_root, interior_gadget, interior_root_r, interior_root_t,
    linear_top_gadget, linear_top_root, top_gadget, top_root,
};
use leafpower::io::{read_dot, read_graph, read_tree, write_dot, write_graph, write_tree};
use leafpower::tree::{check_four_point, check_parity};
use leafpower::{
    recognize, verify_leaf_root, DistanceConstraintSet, Graph, LeafTree, RecognizeOptions,
};
use rand::Rng;

const FUZZ_TREES: usize = 1000;

#[test]
fn random_tree_metrics_pass_four_point_and_parity() {
    let mut rng = fuzz_rng(0);
    for i in 0..FUZZ_TREES {
        let t = random_tree(&mut rng);
        let dm = t.distance_matrix();
        let fp = check_four_point(&dm).expect("matrix is well-formed");
        assert!(fp.ok, "tree #{i} violates the four-point condition: {fp:?}");
        let par = check_parity(&dm).expect("matrix is well-formed");
        assert!(par.ok, "tree #{i} has an odd triple perimeter: {par:?}");
    }
}

#[test]
fn random_trees_canonicalize_subdivide_and_round_trip() {
    let mut rng = fuzz_rng(0xffff);
    for i in 0..FUZZ_TREES {
        let t = random_tree(&mut rng);

        let canon = t.canonicalize();
        assert_eq!(canon, t, "tree #{i}: canonicalization changed the metric");
        let twice = canon.canonicalize();
        assert_eq!(
            twice.node_count(),
            canon.node_count(),
            "tree #{i}: canonicalization is not idempotent"
        );

        let unit = t.subdivide_to_unit();
        assert_eq!(
            unit.distance_matrix(),
            t.distance_matrix(),
            "tree #{i}: subdivision changed the metric"
        );

        let text = write_tree(&t).expect("≥ 3 leaves are always writable");
        let back = read_tree(&text).expect("own emission parses");
        assert_eq!(back, t, "tree #{i}: parse(emit(t)) differs from t");
        let again = write_tree(&back).expect("parsed tree re-emits");
        assert_eq!(again, text, "tree #{i}: emission is not byte-stable");
    }
}

#[test]
fn graph_formats_round_trip() {
    let mut graphs: Vec<Graph> = vec![
        bot_gadget().graph,
        Graph::new(0, vec![], &[]).unwrap(),
        Graph::new(1, vec!["only".into()], &[]).unwrap(),
    ];
    for k in 5..=7 {
        graphs.push(top_gadget(k).unwrap().graph);
        graphs.push(interior_gadget(k).unwrap().graph);
        graphs.push(linear_top_gadget(k).unwrap().graph);
    }
    for n in 0..=2 {
        graphs.push(assemble_hn(5, n).unwrap().graph);
    }
    let mut rng = fuzz_rng(0xaaaa);
    for _ in 0..200 {
        let n = rng.gen_range(1usize..=7);
        let bits = n * n.saturating_sub(1) / 2;
        let mask = rng.gen_range(0..(1u32 << bits));
        graphs.push(graph_from_mask(n, mask));
    }

    for (i, g) in graphs.iter().enumerate() {
        let text = write_graph(g).expect("labels are format-safe");
        let back = read_graph(&text).expect("own emission parses");
        assert_eq!(back.labels(), g.labels(), "graph #{i}: labels changed");
        assert_eq!(back.edges(), g.edges(), "graph #{i}: edges changed");
        assert_eq!(
            write_graph(&back).unwrap(),
            text,
            "graph #{i}: emission is not byte-stable"
        );

        let dot = write_dot(g).expect("labels are format-safe");
        let back = read_dot(&dot).expect("own DOT parses");
        assert_eq!(back.labels(), g.labels(), "graph #{i}: DOT labels changed");
        assert_eq!(back.edges(), g.edges(), "graph #{i}: DOT edges changed");
        assert_eq!(
            write_dot(&back).unwrap(),
            dot,
            "graph #{i}: DOT emission is not byte-stable"
        );
    }
}

#[test]
fn strong_chordality_implies_chordality_up_to_six_vertices() {
    let mut chordal_count = 0usize;
    let mut strong_count = 0usize;
    for n in 0..=6usize {
        let bits = n * n.saturating_sub(1) / 2;
        for mask in 0..(1u32 << bits) {
            let g = graph_from_mask(n, mask);
            let (strong, strong_ord) = is_strongly_chordal(&g);
            let (chordal, chordal_ord) = is_chordal(&g);
            if strong {
                assert!(chordal, "n={n} mask={mask:#b}: strongly chordal but not chordal");
                assert!(strong_ord.is_some());
                strong_count += 1;
            }
            if chordal {
                assert!(chordal_ord.is_some());
                chordal_count += 1;
            }
        }
    }
    // the 3-sun and its kin separate the two classes at six vertices
    assert!(
        strong_count < chordal_count,
        "expected chordal graphs that are not strongly chordal"
    );
}

#[test]
fn the_three_sun_separates_chordal_from_strongly_chordal() {
    let labels: Vec<String> = ["u1", "u2", "u3", "w1", "w2", "w3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let g = Graph::new(
        6,
        labels,
        &[
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 0),
            (3, 1),
            (4, 1),
            (4, 2),
            (5, 2),
            (5, 0),
        ],
    )
    .unwrap();
    assert!(is_chordal(&g).0);
    assert!(!is_strongly_chordal(&g).0);
}

fn plain(g: &Graph, k: u64) -> leafpower::RecognitionResult {
    recognize(g, k, &DistanceConstraintSet::new(), &RecognizeOptions::default()).unwrap()
}

/// In any witness, two leaves at tree distance 2 share a parent at unit
/// distance each, so their closed graph neighborhoods coincide.
#[test]
fn witness_leaves_at_distance_two_are_true_twins() {
    let mut witnesses = 0usize;
    for k in [2u64, 3, 4, 5] {
        for mask in 0..(1u32 << 6) {
            let g = graph_from_mask(4, mask);
            let res = plain(&g, k);
            let Some(t) = res.root() else { continue };
            witnesses += 1;
            let report = verify_leaf_root(t, &g, k);
            assert!(report.ok, "witness fails re-verification: {report:?}");
            let labels = g.labels();
            for i in 0..labels.len() {
                for j in (i + 1)..labels.len() {
                    if t.leaf_distance(&labels[i], &labels[j]).unwrap() == 2 {
                        assert!(
                            g.are_true_twins(i, j).unwrap(),
                            "k={k} mask={mask:#b}: {} and {} sit at distance 2 \
                             but are not true twins",
                            labels[i],
                            labels[j]
                        );
                    }
                }
            }
        }
    }
    assert!(witnesses > 100, "sweep produced too few witnesses to be meaningful");
}

#[test]
fn leaf_powers_are_closed_under_vertex_deletion() {
    for k in [2u64, 3, 4, 5] {
        // verdicts for every labeled graph on 2..=4 vertices
        let mut verdict: Vec<Vec<bool>> = Vec::new();
        for n in 0..=4usize {
            let bits = n * n.saturating_sub(1) / 2;
            verdict.push(
                (0..(1u32 << bits))
                    .map(|mask| plain(&graph_from_mask(n, mask), k).is_root())
                    .collect(),
            );
        }
        for n in 1..=4usize {
            let bits = n * n.saturating_sub(1) / 2;
            for mask in 0..(1u32 << bits) {
                if !verdict[n][mask as usize] {
                    continue;
                }
                let g = graph_from_mask(n, mask);
                for drop in 0..n {
                    let keep: Vec<usize> = (0..n).filter(|&v| v != drop).collect();
                    let sub = g
                        .induced_subgraph(&leafpower::VertexSet::new(keep))
                        .unwrap();
                    let sub_mask = mask_of_graph(&sub);
                    assert!(
                        verdict[n - 1][sub_mask as usize],
                        "k={k}: mask {mask:#b} is a power but deleting vertex {drop} is not"
                    );
                }
            }
        }
    }
}

#[test]
fn tightening_constraints_is_monotone_on_the_diamond() {
    let g = bot_gadget().graph;
    let k = 5;

    // raising a minimum-distance floor can only destroy roots
    let mut last = true;
    for d in 2..=8u64 {
        let mut c = DistanceConstraintSet::new();
        c.min_distance("b", d).unwrap();
        let now = recognize(&g, k, &c, &RecognizeOptions::default())
            .unwrap()
            .is_root();
        assert!(
            now <= last,
            "min-dist b ≥ {d} found a root after b ≥ {} had none",
            d - 1
        );
        last = now;
    }

    // narrowing a pair window can only destroy roots
    let mut last = true;
    for lo in 3..=5u64 {
        let mut c = DistanceConstraintSet::new();
        c.bound("b", "v2", lo, 5).unwrap();
        let now = recognize(&g, k, &c, &RecognizeOptions::default())
            .unwrap()
            .is_root();
        assert!(now <= last, "window [{lo},5] on (b,v2) resurrected a root");
        last = now;
    }

    // a pin is the tightest window: pinned roots imply open roots
    let open = recognize(&g, k, &DistanceConstraintSet::new(), &RecognizeOptions::default())
        .unwrap()
        .is_root();
    for d in 2..=5u64 {
        let mut c = DistanceConstraintSet::new();
        c.pin("b", "v2", d).unwrap();
        let pinned = recognize(&g, k, &c, &RecognizeOptions::default())
            .unwrap()
            .is_root();
        assert!(pinned <= open);
    }
}

#[test]
fn tightening_constraints_is_monotone_on_the_interior_gadget() {
    let g = interior_gadget(5).unwrap().graph;
    let verdict = |dt: u64, db: u64| {
        let mut c = DistanceConstraintSet::new();
        c.min_distance("t", dt).unwrap();
        c.min_distance("b", db).unwrap();
        recognize(&g, 5, &c, &RecognizeOptions::default())
            .unwrap()
            .is_root()
    };
    let dts: Vec<u64> = (2..=6).collect();
    let dbs: Vec<u64> = (2..=5).collect();
    let grid: Vec<Vec<bool>> = dts
        .iter()
        .map(|&dt| dbs.iter().map(|&db| verdict(dt, db)).collect())
        .collect();
    for (i, row) in grid.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if i > 0 {
                assert!(
                    v <= grid[i - 1][j],
                    "raising t-floor {}→{} resurrected a root at b ≥ {}",
                    dts[i - 1],
                    dts[i],
                    dbs[j]
                );
            }
            if j > 0 {
                assert!(
                    v <= row[j - 1],
                    "raising b-floor {}→{} resurrected a root at t ≥ {}",
                    dbs[j - 1],
                    dbs[j],
                    dts[i]
                );
            }
        }
    }
}

fn twin_pairs(g: &Graph) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if g.are_true_twins(u, v).unwrap() {
                out.push((g.label(u).to_string(), g.label(v).to_string()));
            }
        }
    }
    out
}

/// The twin structure the length solver leans on: the diamond carries
/// exactly two true-twin pairs; the top and linear-top blocks have none;
/// the interior block has none for odd k, and exactly {t,x1} and {z1,z2}
/// for even k (the even construction doubles those positions).
#[test]
fn gadget_twin_structure_is_as_documented() {
    let pairs = twin_pairs(&bot_gadget().graph);
    assert_eq!(
        pairs,
        vec![
            ("b".to_string(), "v2".to_string()),
            ("v1".to_string(), "v3".to_string())
        ]
    );
    for k in 5..=8u64 {
        assert!(twin_pairs(&top_gadget(k).unwrap().graph).is_empty(), "top({k})");
        assert!(
            twin_pairs(&linear_top_gadget(k).unwrap().graph).is_empty(),
            "linear_top({k})"
        );
        let interior = twin_pairs(&interior_gadget(k).unwrap().graph);
        if k % 2 == 1 {
            assert!(interior.is_empty(), "interior({k})");
        } else {
            assert_eq!(
                interior,
                vec![
                    ("t".to_string(), "x1".to_string()),
                    ("z1".to_string(), "z2".to_string())
                ],
                "interior({k})"
            );
        }
    }
}

#[test]
fn linear_mode_witnesses_are_caterpillars_and_imply_plain_roots() {
    let linear_opts = RecognizeOptions {
        linear_only: true,
        ..Default::default()
    };
    let none = DistanceConstraintSet::new();
    for mask in 0..(1u32 << 6) {
        let g = graph_from_mask(4, mask);
        let lin = recognize(&g, 3, &none, &linear_opts).unwrap();
        if let Some(t) = lin.root() {
            assert!(
                t.is_caterpillar_subdivision().unwrap().is_some(),
                "mask {mask:#b}: linear witness is not a caterpillar"
            );
            assert!(verify_leaf_root(t, &g, 3).ok);
            assert!(
                plain(&g, 3).is_root(),
                "mask {mask:#b}: linear root exists but unrestricted search found none"
            );
        }
    }
}

/// Constructed roots of every block stay verifiable after a full
/// write/parse cycle; parsing loses nothing the verifier needs.
#[test]
fn constructed_roots_survive_serialization() {
    for k in 5..=7u64 {
        let cases: Vec<(LeafTree, Graph)> = vec![
            (top_root(k).unwrap(), top_gadget(k).unwrap().graph),
            (bot_root(k).unwrap(), bot_gadget().graph),
            (interior_root_t(k).unwrap(), interior_gadget(k).unwrap().graph),
            (interior_root_r(k).unwrap(), interior_gadget(k).unwrap().graph),
            (
                linear_top_root(k).unwrap(),
                linear_top_gadget(k).unwrap().graph,
            ),
        ];
        for (t, g) in cases {
            assert!(verify_leaf_root(&t, &g, k).ok, "k={k}: constructed root fails");
            let back = read_tree(&write_tree(&t).unwrap()).unwrap();
            assert!(
                verify_leaf_root(&back, &g, k).ok,
                "k={k}: parsed root fails verification"
            );
        }
    }
}
