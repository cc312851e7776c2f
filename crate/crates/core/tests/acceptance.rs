//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use moy_core::coloring::state::oracle_degree;
use moy_core::coloring::{coloring_degree, enumerate_colorings, HalfInt};
use moy_core::corpus::{RANDOM_COUNT, RANDOM_SEED};
use moy_core::eval::{verify_relation, verify_trivial_edge_removal};
use moy_core::laurent::{is_palindromic, qbinom, qfact};
use moy_core::partitions::{key_identity_sides, partition_sum, split_degree_check, IntSet};
use moy_core::reduction::{
    induced_coloring, reduce_cycles, top_color_edges, verify_reduction, CycleCollection,
};
use moy_core::web::{
    circle, circle_cw, ladder, params, random_corpus, standard_web, theta, Relation, Side,
};
use moy_core::{evaluate_closed, evaluate_dp, parse, WebDiagram};
use num_bigint::BigInt;

const MAX_RANK: u32 = 4;

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<(), String>,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn circle_law() -> Result<(), String> {
    for n in 1..=6u32 {
        for k in 1..=n as i64 {
            let v = evaluate_closed(&circle(n, k))
                .map_err(|e| e.to_string())?
                .value;
            ensure(v == qbinom(n as i64, k), || {
                format!("circle N={n} k={k} gave {v}")
            })?;
        }
    }
    Ok(())
}

fn relations(rels: &[Relation]) -> Result<(), String> {
    for &rel in rels {
        for n in 1..=MAX_RANK {
            for p in rel.grid(n) {
                let r = verify_relation(rel, &p, n).map_err(|e| e.to_string())?;
                ensure(r.passed(), || {
                    format!(
                        "relation {rel} {p:?} N={n}: {} mismatches",
                        r.failures.len()
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn associativity() -> Result<(), String> {
    relations(&[Relation::Assoc])
}

fn digons() -> Result<(), String> {
    // The coefficients are the stated binomials.
    for n in 1..=MAX_RANK {
        for p in Relation::Digon.grid(n) {
            let c = &Relation::Digon
                .rhs_terms(&p, n)
                .map_err(|e| e.to_string())?[0]
                .0;
            ensure(*c == qbinom(p["m"] + p["n"], p["m"]), || {
                format!("digon coefficient {p:?}")
            })?;
        }
        for p in Relation::OppositeDigon.grid(n) {
            let c = &Relation::OppositeDigon
                .rhs_terms(&p, n)
                .map_err(|e| e.to_string())?[0]
                .0;
            ensure(*c == qbinom(n as i64 - p["m"], p["n"]), || {
                format!("opposite digon coefficient {p:?}")
            })?;
        }
    }
    relations(&[Relation::Digon, Relation::OppositeDigon])
}

fn squares() -> Result<(), String> {
    relations(&[
        Relation::SquareOpposite,
        Relation::SquareThin,
        Relation::Square,
    ])
}

fn ordered_set_identities() -> Result<(), String> {
    for total in 1..=10i64 {
        for m in 0..=total {
            let n = total - m;
            let rec = qbinom(total - 1, m).shift(m) + qbinom(total - 1, m - 1).shift(-n);
            ensure(qbinom(total, m) == rec, || {
                format!("recursion at m={m} n={n}")
            })?;
            let fact = qbinom(total, m) * qfact(m).unwrap() * qfact(n).unwrap();
            ensure(fact == qfact(total).unwrap(), || {
                format!("factorial ratio at m={m} n={n}")
            })?;
            let x: IntSet = (1..=total).collect();
            ensure(partition_sum(&x, m, n).unwrap() == qbinom(total, m), || {
                format!("partition sum m={m} n={n}")
            })?;
        }
    }
    for (x, y) in disjoint_pairs(6) {
        for k in 1..=5 {
            ensure(split_degree_check(&x, &y, 6, k).unwrap(), || {
                format!("splitting {x:?} {y:?} k={k}")
            })?;
        }
    }
    for (x, y) in disjoint_pairs(7) {
        if x.len() < y.len() {
            continue;
        }
        for k1 in 0..=x.len() as i64 {
            let (l, r) = key_identity_sides(&x, &y, k1).unwrap();
            ensure(l == r, || format!("key identity {x:?} {y:?} k1={k1}"))?;
        }
    }
    Ok(())
}

fn disjoint_pairs(m: i64) -> Vec<(IntSet, IntSet)> {
    (0..3u32.pow(m as u32))
        .map(|code| {
            let (mut x, mut y) = (BTreeSet::new(), BTreeSet::new());
            let mut c = code;
            for v in 1..=m {
                match c % 3 {
                    1 => x.insert(v),
                    2 => y.insert(v),
                    _ => false,
                };
                c /= 3;
            }
            (x, y)
        })
        .collect()
}

fn dual_path() -> Result<(), String> {
    let mut checked = 0;
    for (name, w) in common::load_corpus() {
        let topo = w.topology();
        for c in enumerate_colorings(&w) {
            let (fast, slow) = (coloring_degree(&w, &topo, &c), oracle_degree(&w, &topo, &c));
            ensure(fast == slow, || format!("{name}: {fast} vs {slow}"))?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no colorings checked".into())
}

fn trivial_edges() -> Result<(), String> {
    let webs: Vec<_> = common::closed_corpus()
        .into_iter()
        .filter(|(_, w)| {
            w.topology()
                .edges
                .iter()
                .any(|e| e.label == 0 || e.label == w.n() as i64)
        })
        .collect();
    ensure(webs.len() >= 5, || {
        format!("only {} webs with 0- or N-edges", webs.len())
    })?;
    for (name, w) in webs {
        ensure(
            verify_trivial_edge_removal(&w).map_err(|e| e.to_string())?,
            || name.clone(),
        )?;
    }
    Ok(())
}

/// The general square with its boundary closed by nested cups and caps.
fn closed_square() -> WebDiagram {
    let p = params(&[("m", 1), ("n", 1), ("k", 1), ("l", 1)]);
    let open = standard_web(Relation::Square, &p, Side::Lhs, 4).unwrap();
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
    parse(&text).unwrap()
}

fn reduction() -> Result<(), String> {
    let mut webs: Vec<(String, WebDiagram, u32)> = Vec::new();
    for n in 2..=5u32 {
        for k in 0..=n as i64 {
            webs.push((format!("circle N={n} k={k}"), circle(n, k), n));
            webs.push((format!("clockwise circle N={n} k={k}"), circle_cw(n, k), n));
        }
    }
    for n in 2..=MAX_RANK {
        for m in 0..=n as i64 {
            for b in 0..=n as i64 - m {
                webs.push((format!("theta N={n} m={m} n={b}"), theta(n, m, b), n));
            }
        }
    }
    webs.push(("closed square N=4".into(), closed_square(), 4));
    for (name, w, n) in &webs {
        let r = verify_reduction(w, *n).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.passed(), || {
            format!("{name}: {} vs {} / {}", r.lhs, r.minus_form, r.plus_form)
        })?;
        let topo = w.topology();
        for c in enumerate_colorings(w) {
            let a =
                CycleCollection::new(&topo, top_color_edges(&c, *n)).map_err(|e| e.to_string())?;
            let reduced = reduce_cycles(w, &a, *n).map_err(|e| e.to_string())?;
            let lower = reduced.with_rank(n - 1);
            let lower_deg =
                coloring_degree(&lower, &lower.topology(), &induced_coloring(&c, &a, *n));
            let writhe = reduced.writhe().map_err(|e| e.to_string())?;
            let expect = HalfInt::from_half_units(lower_deg.half_units() - 2 * writhe);
            ensure(coloring_degree(w, &topo, &c) == expect, || {
                format!("{name}: degree identity")
            })?;
        }
    }
    Ok(())
}

fn structural() -> Result<(), String> {
    let closed: Vec<(String, WebDiagram)> = common::closed_corpus();
    let mut values = Vec::new();
    for (name, w) in &closed {
        let e = evaluate_closed(w).map_err(|e| e.to_string())?;
        ensure(is_palindromic(&e.value), || {
            format!("{name} not palindromic: {}", e.value)
        })?;
        ensure(
            e.value.eval_at_one() == BigInt::from(e.coloring_count),
            || format!("{name}: q=1 vs count"),
        )?;
        let edges = w.topology().num_edges();
        for pick in [0b01usize, 0b10, 0b101, (1 << edges) - 1] {
            let set: BTreeSet<usize> = (0..edges).filter(|e| pick >> e & 1 == 1).collect();
            let r = w.reverse_edges(&set).map_err(|e| e.to_string())?;
            let v = evaluate_closed(&r).map_err(|e| e.to_string())?.value;
            ensure(v == e.value, || {
                format!("{name}: reversal of {set:?} changed the value")
            })?;
        }
        values.push((name, w, e.value));
    }
    let same_rank: Vec<_> = values
        .iter()
        .filter(|(_, w, _)| w.n() == 3)
        .take(10)
        .collect();
    for (a, wa, va) in &same_rank {
        for (b, wb, vb) in &same_rank {
            let u = wa.disjoint_union(wb).map_err(|e| e.to_string())?;
            let vu = evaluate_closed(&u).map_err(|e| e.to_string())?.value;
            ensure(vu == va.clone() * vb.clone(), || {
                format!("{a} + {b} not multiplicative")
            })?;
        }
    }
    Ok(())
}

fn time<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn engines() -> Result<(), String> {
    let random = random_corpus(RANDOM_SEED, RANDOM_COUNT);
    ensure(random.len() == 50, || "expected 50 random webs".into())?;
    for (i, w) in random.iter().enumerate() {
        ensure(w.slices().len() <= 6 && w.n() <= MAX_RANK, || {
            format!("random web {i} is out of range")
        })?;
        let (dp, naive) = (
            evaluate_dp(w).map_err(|e| e.to_string())?,
            evaluate_closed(w).map_err(|e| e.to_string())?,
        );
        ensure(dp == naive, || {
            format!("random web {i}: {} vs {}", dp.value, naive.value)
        })?;
    }
    for height in [8, 10] {
        let w = ladder(4, 3, height);
        let (dp, t_dp) = time(|| evaluate_dp(&w).unwrap());
        let (naive, t_naive) = time(|| evaluate_closed(&w).unwrap());
        ensure(dp == naive, || {
            format!("ladder height {height}: engines disagree")
        })?;
        ensure(t_dp < t_naive, || {
            format!("ladder height {height}: dp {t_dp:?} not faster than {t_naive:?}")
        })?;
        println!("     ladder N=4 width 3 height {height}: dp {t_dp:.2?}, naive {t_naive:.2?}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "circle law, N <= 6",
            limit: Duration::from_secs(10),
            run: circle_law,
        },
        Criterion {
            name: "associativity, N <= 4",
            limit: Duration::from_secs(60),
            run: associativity,
        },
        Criterion {
            name: "digon relations, N <= 4",
            limit: Duration::from_secs(60),
            run: digons,
        },
        Criterion {
            name: "square relations, N <= 4",
            limit: Duration::from_secs(600),
            run: squares,
        },
        Criterion {
            name: "ordered set identities",
            limit: Duration::from_secs(60),
            run: ordered_set_identities,
        },
        Criterion {
            name: "slice-local degree = state degree",
            limit: Duration::from_secs(60),
            run: dual_path,
        },
        Criterion {
            name: "0/N edge removal",
            limit: Duration::from_secs(60),
            run: trivial_edges,
        },
        Criterion {
            name: "rank reduction",
            limit: Duration::from_secs(120),
            run: reduction,
        },
        Criterion {
            name: "structural properties",
            limit: Duration::from_secs(120),
            run: structural,
        },
        Criterion {
            name: "engine equivalence and speed",
            limit: Duration::from_secs(120),
            run: engines,
        },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let (result, elapsed) = time(c.run);
        let result = result.and_then(|()| {
            ensure(elapsed <= c.limit, || {
                format!("took {elapsed:.2?}, limit {:?}", c.limit)
            })
        });
        match result {
            Ok(()) => println!("PASS {:>2} {} ({elapsed:.2?})", i + 1, c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {} ({elapsed:.2?}): {msg}", i + 1, c.name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
