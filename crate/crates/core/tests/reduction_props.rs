mod common;

use moy_core::coloring::{coloring_degree, enumerate_colorings, is_valid_coloring, HalfInt};
use moy_core::reduction::{
    cycle_collections_brute_force, enumerate_cycle_collections, induced_coloring,
    is_cycle_collection, reduce_cycles, top_color_edges, verify_reduction, CycleCollection,
};
use moy_core::web::{
    circle, circle_cw, params, random_closed_moy, standard_web, theta, Relation, Side,
};
use moy_core::{evaluate_closed, WebDiagram};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_closed_moy() -> Vec<(String, WebDiagram)> {
    common::closed_corpus()
        .into_iter()
        .filter(|(_, w)| w.is_moy() && w.topology().num_edges() <= 16)
        .collect()
}

/// The general square with its boundary closed off by nested cups and caps.
fn closed_square() -> WebDiagram {
    let p = params(&[("m", 1), ("n", 1), ("k", 1), ("l", 1)]);
    let open = standard_web(Relation::Square, &p, Side::Lhs, 4).unwrap();
    // Bottom and top are both [u1 u2]; the cups leave [u1 u2 d2 d1] and the caps take it back.
    let body: Vec<String> = open
        .to_string()
        .lines()
        .skip(2)
        .map(str::to_string)
        .collect();
    let text = format!(
        "web N=4\ncup 0 1 leftward\ncup 1 2 leftward\n{}\ncap 1 rightward\ncap 0 rightward",
        body.join("\n")
    );
    moy_core::parse(&text).unwrap()
}

#[test]
fn backtracking_matches_brute_force() {
    for (name, w) in small_closed_moy() {
        assert_eq!(
            enumerate_cycle_collections(&w),
            cycle_collections_brute_force(&w),
            "{name}"
        );
    }
}

#[test]
fn collections_of_named_webs() {
    assert_eq!(enumerate_cycle_collections(&circle(3, 2)).len(), 2);
    // The empty collection and the two cycles through the thick edge; the thin edges point the same way.
    assert_eq!(enumerate_cycle_collections(&theta(3, 1, 1)).len(), 3);
    let topo = circle(3, 1).topology();
    assert!(CycleCollection::new(&topo, [0].into()).is_ok());
    assert!(matches!(
        CycleCollection::new(&theta(3, 1, 1).topology(), [1].into()),
        Err(moy_core::Error::InvalidCycles(_))
    ));
}

#[test]
fn top_color_edges_form_a_collection() {
    for (name, w) in small_closed_moy() {
        let topo = w.topology();
        for c in enumerate_colorings(&w) {
            assert!(
                is_cycle_collection(&topo, &top_color_edges(&c, w.n())),
                "{name}"
            );
        }
    }
}

#[test]
fn degrees_drop_by_the_writhe() {
    for (name, w) in small_closed_moy() {
        let n = w.n();
        if n < 2 {
            continue;
        }
        let topo = w.topology();
        for c in enumerate_colorings(&w) {
            let a = CycleCollection::new(&topo, top_color_edges(&c, n)).unwrap();
            let reduced = reduce_cycles(&w, &a, n).unwrap();
            let lower = reduced.with_rank(n - 1);
            let ltopo = lower.topology();
            let c2 = induced_coloring(&c, &a, n);
            assert!(is_valid_coloring(&lower, &ltopo, &c2), "{name}");
            let expect = HalfInt::from_half_units(
                coloring_degree(&lower, &ltopo, &c2).half_units() - 2 * reduced.writhe().unwrap(),
            );
            assert_eq!(coloring_degree(&w, &topo, &c), expect, "{name}");
        }
    }
}

#[test]
fn reduction_holds_on_circles_thetas_and_a_square() {
    for n in 2..=5u32 {
        for k in 0..=n as i64 {
            assert!(verify_reduction(&circle(n, k), n).unwrap().passed());
            assert!(verify_reduction(&circle_cw(n, k), n).unwrap().passed());
        }
    }
    for n in 2..=4u32 {
        for m in 0..=n as i64 {
            for b in 0..=n as i64 - m {
                assert!(
                    verify_reduction(&theta(n, m, b), n).unwrap().passed(),
                    "theta {n} {m} {b}"
                );
            }
        }
    }
    let sq = closed_square();
    assert!(sq.is_closed() && sq.is_moy());
    let r = verify_reduction(&sq, 4).unwrap();
    assert!(r.passed(), "{:?} vs {:?}", r.lhs, r.minus_form);
    assert_eq!(r.lhs, evaluate_closed(&sq).unwrap().value);
}

#[test]
fn reduction_holds_on_the_corpus() {
    for (name, w) in small_closed_moy() {
        let top = w
            .topology()
            .edges
            .iter()
            .map(|e| e.label)
            .max()
            .unwrap_or(0)
            .max(2) as u32;
        for n in top..=4 {
            let r = verify_reduction(&w, n).unwrap();
            assert!(r.passed(), "{name} at N={n}");
        }
    }
}

#[test]
fn reduction_rejects_bad_input() {
    assert!(verify_reduction(&circle(1, 1), 1).is_err());
    let open = moy_core::parse("web N=3\nbottom [u1]").unwrap();
    assert!(matches!(
        verify_reduction(&open, 3),
        Err(moy_core::Error::NotClosed)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_on_random_webs(seed in any::<u64>(), n in 2u32..=4) {
        let w = random_closed_moy(&mut ChaCha8Rng::seed_from_u64(seed), n, 7);
        prop_assert_eq!(enumerate_cycle_collections(&w), cycle_collections_brute_force(&w));
        prop_assert!(verify_reduction(&w, n).unwrap().passed());
    }
}
