//! Reduction of sl_N evaluations to sl_{N-1} by reversing collections of cycles.
//!
//! For a closed MOY web, the edges whose colors contain the top color `N` form a
//! set of disjoint directed cycles. Reversing such a set `A` (labels `i ↦ N − i`)
//! gives a web whose colorings avoiding `N` are counted at rank `N − 1`, which yields
//! `⟨w⟩_N = Σ_A q^{−writhe(w_A)} ⟨w_A⟩_{N−1}`.

use std::collections::BTreeSet;

use crate::coloring::{ColorSet, Coloring};
use crate::error::{Error, Result};
use crate::eval::evaluate_closed;
use crate::laurent::LaurentPoly;
use crate::web::{EdgeId, Topology, WebDiagram};

/// Edge set in which every vertex has as many incoming as outgoing edges, at most one of each.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycleCollection {
    pub edges: BTreeSet<EdgeId>,
}

impl CycleCollection {
    pub fn new(topo: &Topology, edges: BTreeSet<EdgeId>) -> Result<Self> {
        if let Some(&e) = edges.iter().find(|&&e| e >= topo.num_edges()) {
            return Err(Error::UnknownEdge(e));
        }
        if !is_cycle_collection(topo, &edges) {
            return Err(Error::InvalidCycles(format!(
                "{edges:?} is not a union of disjoint directed cycles"
            )));
        }
        Ok(Self { edges })
    }
}

pub fn is_cycle_collection(topo: &Topology, edges: &BTreeSet<EdgeId>) -> bool {
    topo.vertices.iter().all(|v| {
        let (mut inc, mut out) = (0, 0);
        for l in v.legs.iter().filter(|l| edges.contains(&l.edge)) {
            if l.incoming() {
                inc += 1;
            } else {
                out += 1;
            }
        }
        inc == out && inc <= 1
    })
}

/// All cycle collections, sorted by edge list. Backtracks over edges in id order and
/// checks each vertex once its last edge is decided.
pub fn enumerate_cycle_collections(w: &WebDiagram) -> Vec<CycleCollection> {
    let topo = w.topology();
    let num = topo.num_edges();
    // Per edge: (vertex, incoming) for each leg it contributes.
    let mut legs_of: Vec<Vec<(usize, bool)>> = vec![Vec::new(); num];
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); num];
    for (i, v) in topo.vertices.iter().enumerate() {
        for l in &v.legs {
            legs_of[l.edge].push((i, l.incoming()));
        }
        closes[v.legs.iter().map(|l| l.edge).max().unwrap()].push(i);
    }
    let mut counts = vec![(0u8, 0u8); topo.vertices.len()];
    let mut chosen = Vec::new();
    let mut out = Vec::new();

    struct Search<'a> {
        legs_of: &'a [Vec<(usize, bool)>],
        closes: &'a [Vec<usize>],
        out: &'a mut Vec<CycleCollection>,
    }
    fn go(s: &mut Search, e: usize, counts: &mut [(u8, u8)], chosen: &mut Vec<EdgeId>) {
        if e == s.legs_of.len() {
            s.out.push(CycleCollection {
                edges: chosen.iter().copied().collect(),
            });
            return;
        }
        for take in [false, true] {
            if take {
                for &(v, inc) in &s.legs_of[e] {
                    if inc {
                        counts[v].0 += 1;
                    } else {
                        counts[v].1 += 1;
                    }
                }
                chosen.push(e);
            }
            let ok = s.legs_of[e]
                .iter()
                .all(|&(v, _)| counts[v].0 <= 1 && counts[v].1 <= 1)
                && s.closes[e].iter().all(|&v| counts[v].0 == counts[v].1);
            if ok {
                go(s, e + 1, counts, chosen);
            }
            if take {
                for &(v, inc) in &s.legs_of[e] {
                    if inc {
                        counts[v].0 -= 1;
                    } else {
                        counts[v].1 -= 1;
                    }
                }
                chosen.pop();
            }
        }
    }
    let mut search = Search {
        legs_of: &legs_of,
        closes: &closes,
        out: &mut out,
    };
    go(&mut search, 0, &mut counts, &mut chosen);
    out.sort();
    out
}

/// Same result as [`enumerate_cycle_collections`] by filtering all edge subsets.
pub fn cycle_collections_brute_force(w: &WebDiagram) -> Vec<CycleCollection> {
    let topo = w.topology();
    let num = topo.num_edges();
    assert!(num < 24, "brute force over 2^{num} subsets");
    let mut out: Vec<CycleCollection> = (0u32..1 << num)
        .map(|mask| {
            (0..num)
                .filter(|&e| mask >> e & 1 == 1)
                .collect::<BTreeSet<_>>()
        })
        .filter(|s| is_cycle_collection(&topo, s))
        .map(|edges| CycleCollection { edges })
        .collect();
    out.sort();
    out
}

/// The web with every edge of `a` reversed and relabeled `i ↦ N − i`, keeping rank `n`.
pub fn reduce_cycles(w: &WebDiagram, a: &CycleCollection, n: u32) -> Result<WebDiagram> {
    let w = w.with_rank(n);
    let topo = w.topology();
    CycleCollection::new(&topo, a.edges.clone())?;
    w.reverse_edges(&a.edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTerm {
    pub collection: CycleCollection,
    pub reduced: WebDiagram,
    pub writhe: i64,
    /// Evaluation of the reduced web at rank `N − 1`.
    pub value: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub n: u32,
    pub lhs: LaurentPoly,
    pub terms: Vec<ReductionTerm>,
    /// `Σ q^{−writhe} · value`.
    pub minus_form: LaurentPoly,
    /// `Σ q^{+writhe} · value`.
    pub plus_form: LaurentPoly,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.lhs == self.minus_form && self.lhs == self.plus_form
    }
}

/// Compares `⟨w⟩_N` with both forms of the sum over cycle collections.
pub fn verify_reduction(w: &WebDiagram, n: u32) -> Result<ReductionReport> {
    if n < 2 {
        return Err(Error::Domain(format!("reduction needs N >= 2, got {n}")));
    }
    let w = w.with_rank(n);
    if !w.is_closed() {
        return Err(Error::NotClosed);
    }
    if !w.is_moy() {
        return Err(Error::NotMoy);
    }
    let lhs = evaluate_closed(&w)?.value;
    let mut terms = Vec::new();
    let (mut minus_form, mut plus_form) = (LaurentPoly::zero(), LaurentPoly::zero());
    for a in enumerate_cycle_collections(&w) {
        let reduced = reduce_cycles(&w, &a, n)?;
        let writhe = reduced.writhe()?;
        let value = evaluate_closed(&reduced.with_rank(n - 1))?.value;
        minus_form += value.shift(-writhe);
        plus_form += value.shift(writhe);
        terms.push(ReductionTerm {
            collection: a,
            reduced,
            writhe,
            value,
        });
    }
    Ok(ReductionReport {
        n,
        lhs,
        terms,
        minus_form,
        plus_form,
    })
}

/// Edges whose color set contains `n`.
pub fn top_color_edges(c: &Coloring, n: u32) -> BTreeSet<EdgeId> {
    c.edges()
        .filter(|(_, s)| s.contains(n))
        .map(|(e, _)| e)
        .collect()
}

/// The coloring carried over to the reduced web: reversed edges take the complement,
/// so no edge keeps the top color.
pub fn induced_coloring(c: &Coloring, a: &CycleCollection, n: u32) -> Coloring {
    Coloring(
        c.edges()
            .map(|(e, s)| {
                if a.edges.contains(&e) {
                    s.complement(n)
                } else {
                    s
                }
            })
            .inspect(|s: &ColorSet| debug_assert!(!s.contains(n)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{coloring_degree, enumerate_colorings};
    use crate::laurent::qbinom;
    use crate::web::{circle, circle_cw, theta};

    #[test]
    fn collections_of_small_webs() {
        assert_eq!(enumerate_cycle_collections(&circle(3, 1)).len(), 2);
        let t = theta(3, 1, 1);
        assert_eq!(
            enumerate_cycle_collections(&t),
            cycle_collections_brute_force(&t)
        );
        assert_eq!(enumerate_cycle_collections(&t).len(), 3);
        let two = circle(3, 1).disjoint_union(&circle(3, 2)).unwrap();
        assert_eq!(enumerate_cycle_collections(&two).len(), 4);
    }

    #[test]
    fn reducing_a_circle() {
        let c = circle(3, 1);
        let all = CycleCollection {
            edges: BTreeSet::from([0]),
        };
        assert_eq!(
            reduce_cycles(&c, &CycleCollection::default(), 3).unwrap(),
            c
        );
        assert_eq!(reduce_cycles(&c, &all, 3).unwrap(), circle_cw(3, 2));
    }

    #[test]
    fn invalid_collection_is_rejected() {
        let t = theta(3, 1, 1);
        let topo = t.topology();
        assert!(CycleCollection::new(&topo, BTreeSet::from([0])).is_err());
        assert!(CycleCollection::new(&topo, BTreeSet::from([9])).is_err());
    }

    #[test]
    fn circle_expansions() {
        let r = verify_reduction(&circle(3, 1), 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, qbinom(3, 1));
        let r = verify_reduction(&circle(4, 2), 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, &qbinom(3, 2).shift(-2) + &qbinom(3, 1).shift(2));
    }

    #[test]
    fn theta_expansion() {
        let r = verify_reduction(&theta(3, 1, 1), 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, &qbinom(2, 1) * &qbinom(3, 2));
    }

    #[test]
    fn per_coloring_identity_on_theta() {
        let n = 4;
        let w = theta(n, 1, 2);
        let topo = w.topology();
        for c in enumerate_colorings(&w) {
            let a = CycleCollection::new(&topo, top_color_edges(&c, n)).unwrap();
            let reduced = reduce_cycles(&w, &a, n).unwrap();
            let lower = reduced.with_rank(n - 1);
            let c2 = induced_coloring(&c, &a, n);
            let d_n = coloring_degree(&w, &topo, &c).to_integer().unwrap();
            let d_lower = coloring_degree(&lower, &lower.topology(), &c2)
                .to_integer()
                .unwrap();
            assert_eq!(d_n, d_lower - reduced.writhe().unwrap());
        }
    }
}
