//! The shipped set of example diagrams, as `(file stem, diagram)` pairs.
//!
//! The `.web` files under `corpus/` are exactly the serializations of this list;
//! a test keeps them in sync.

use std::collections::BTreeSet;

use crate::web::{
    circle, circle_cw, ladder, params, random_corpus, standard_web, theta, Relation, Side,
    WebDiagram,
};

/// Seed of the random part of the corpus.
pub const RANDOM_SEED: u64 = 20_240_601;
pub const RANDOM_COUNT: usize = 50;

pub fn builtin_corpus() -> Vec<(String, WebDiagram)> {
    let mut out = Vec::new();
    for n in 1..=6u32 {
        for k in 1..=n as i64 {
            out.push((format!("circle-N{n}-k{k}"), circle(n, k)));
        }
    }
    for k in 1..=3 {
        out.push((format!("circle-cw-N3-k{k}"), circle_cw(3, k)));
    }
    for n in 2..=4u32 {
        for m in 0..=n as i64 {
            for b in 0..=n as i64 - m {
                if m + b >= 1 {
                    out.push((format!("theta-N{n}-m{m}-n{b}"), theta(n, m, b)));
                }
            }
        }
    }
    // A theta with its (1, 1+2) cycle reversed: mixed-orientation vertices.
    let t = theta(4, 1, 2);
    out.push((
        "theta-reversed-N4".into(),
        t.reverse_edges(&BTreeSet::from([0, 1])).unwrap(),
    ));
    out.push(("theta-mirror-N4-m1-n2".into(), t.mirror()));
    out.push((
        "two-circles-N3".into(),
        circle(3, 1).disjoint_union(&circle_cw(3, 2)).unwrap(),
    ));
    out.push(("ladder-N3-w2-h2".into(), ladder(3, 2, 2)));
    out.push(("ladder-N3-w3-h3".into(), ladder(3, 3, 3)));

    let mut relation = |name: &str, rel: Relation, p: &[(&str, i64)], n: u32| {
        let ps = params(p);
        out.push((
            format!("{name}-lhs"),
            standard_web(rel, &ps, Side::Lhs, n).unwrap(),
        ));
        for (j, (_, w)) in rel.rhs_terms(&ps, n).unwrap().into_iter().enumerate() {
            out.push((format!("{name}-rhs{j}"), w));
        }
    };
    relation(
        "assoc-N3-i1-j1-k1",
        Relation::Assoc,
        &[("i", 1), ("j", 1), ("k", 1)],
        3,
    );
    relation(
        "assoc-N4-i1-j2-k1",
        Relation::Assoc,
        &[("i", 1), ("j", 2), ("k", 1)],
        4,
    );
    relation("digon-N3-m1-n1", Relation::Digon, &[("m", 1), ("n", 1)], 3);
    relation(
        "opposite-digon-N3-m1-n1",
        Relation::OppositeDigon,
        &[("m", 1), ("n", 1)],
        3,
    );
    relation(
        "square-opposite-N3-m1",
        Relation::SquareOpposite,
        &[("m", 1)],
        3,
    );
    relation(
        "square-opposite-N4-m2",
        Relation::SquareOpposite,
        &[("m", 2)],
        4,
    );
    relation(
        "square-thin-N4-m2-l1-n1",
        Relation::SquareThin,
        &[("m", 2), ("l", 1), ("n", 1)],
        4,
    );
    relation(
        "square-N4-m1-n1-k1-l1",
        Relation::Square,
        &[("m", 1), ("n", 1), ("k", 1), ("l", 1)],
        4,
    );
    relation(
        "square-N4-m1-n2-k1-l1",
        Relation::Square,
        &[("m", 1), ("n", 2), ("k", 1), ("l", 1)],
        4,
    );

    for (i, w) in random_corpus(RANDOM_SEED, RANDOM_COUNT)
        .into_iter()
        .enumerate()
    {
        out.push((format!("random-{i:02}"), w));
    }
    out
}
