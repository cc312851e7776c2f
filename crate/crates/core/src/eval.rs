//! Evaluation of closed and open webs, and verification of the skein relations.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::coloring::{
    boundary_coloring, coloring_degree, for_each_coloring, local_degree, subsets, vertex_condition,
    BoundaryColoring, ColorSet,
};
use crate::error::{Error, Result};
use crate::laurent::{HalfLaurent, LaurentPoly};
use crate::web::{Params, Relation, Slice, Strand, WebDiagram};

/// Value of a closed web together with the number of colorings it sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: LaurentPoly,
    pub coloring_count: u64,
}

/// `Σ_c q^{deg c}` over all colorings, by explicit enumeration.
pub fn evaluate_closed(w: &WebDiagram) -> Result<Evaluation> {
    w.ensure_valid()?;
    if !w.is_closed() {
        return Err(Error::NotClosed);
    }
    let topo = w.topology();
    let mut value = LaurentPoly::zero();
    let mut count = 0u64;
    for_each_coloring(w, &topo, |c| {
        let d = coloring_degree(w, &topo, c);
        let k = d.to_integer().expect("closed webs have integral degrees");
        value.add_term(k, BigInt::from(1));
        count += 1;
    });
    Ok(Evaluation {
        value,
        coloring_count: count,
    })
}

/// Values of an open web for every boundary coloring that extends to the interior.
pub fn evaluate_open_all(w: &WebDiagram) -> Result<BTreeMap<BoundaryColoring, HalfLaurent>> {
    w.ensure_valid()?;
    let topo = w.topology();
    let mut out: BTreeMap<BoundaryColoring, HalfLaurent> = BTreeMap::new();
    for_each_coloring(w, &topo, |c| {
        let d = coloring_degree(w, &topo, c);
        out.entry(boundary_coloring(&topo, c))
            .or_insert_with(HalfLaurent::zero)
            .add_term_half(d.half_units(), BigInt::from(1));
    });
    Ok(out)
}

fn check_boundary(word: &[Strand], colors: &[ColorSet], n: u32, side: &str) -> Result<()> {
    if word.len() != colors.len() {
        return Err(Error::Boundary(format!(
            "{side} has {} strands but {} color sets were given",
            word.len(),
            colors.len()
        )));
    }
    for (i, (s, c)) in word.iter().zip(colors).enumerate() {
        if c.len() as i64 != s.label || c.0 & !ColorSet::full(n).0 != 0 {
            return Err(Error::Boundary(format!(
                "{side} strand {i} is labeled {} but colored {c}",
                s.label
            )));
        }
    }
    Ok(())
}

/// `Σ q^{deg c}` over colorings restricting to `boundary`; zero when none does.
pub fn evaluate_open(w: &WebDiagram, boundary: &BoundaryColoring) -> Result<HalfLaurent> {
    w.ensure_valid()?;
    check_boundary(w.bottom(), &boundary.bottom, w.n(), "bottom")?;
    check_boundary(&w.top(), &boundary.top, w.n(), "top")?;
    Ok(evaluate_open_all(w)?
        .remove(boundary)
        .unwrap_or_else(HalfLaurent::zero))
}

/// Every boundary coloring with the right cardinalities, extendable or not.
pub fn all_boundary_colorings(w: &WebDiagram) -> Vec<BoundaryColoring> {
    let n = w.n();
    let bottom_choices: Vec<Vec<ColorSet>> =
        w.bottom().iter().map(|s| subsets(n, s.label)).collect();
    let top_choices: Vec<Vec<ColorSet>> = w.top().iter().map(|s| subsets(n, s.label)).collect();
    let nb = bottom_choices.len();
    let all: Vec<Vec<ColorSet>> = bottom_choices.into_iter().chain(top_choices).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(all.len());
    fn go(
        all: &[Vec<ColorSet>],
        cur: &mut Vec<ColorSet>,
        nb: usize,
        out: &mut Vec<BoundaryColoring>,
    ) {
        if cur.len() == all.len() {
            out.push(BoundaryColoring {
                bottom: cur[..nb].to_vec(),
                top: cur[nb..].to_vec(),
            });
            return;
        }
        for &c in &all[cur.len()] {
            cur.push(c);
            go(all, cur, nb, out);
            cur.pop();
        }
    }
    go(&all, &mut cur, nb, &mut out);
    out
}

/// Transfer-matrix evaluation: sweeps the slices keeping, for every coloring of
/// the current word, the generating polynomial of partial degrees (in half-units).
pub fn evaluate_dp(w: &WebDiagram) -> Result<Evaluation> {
    w.ensure_valid()?;
    if !w.is_closed() {
        return Err(Error::NotClosed);
    }
    let n = w.n();
    let words = w.words();
    let mut layer: HashMap<Vec<ColorSet>, LaurentPoly> =
        HashMap::from([(Vec::new(), LaurentPoly::one())]);
    let mut counts: HashMap<Vec<ColorSet>, u64> = HashMap::from([(Vec::new(), 1)]);
    for (t, s) in w.slices().iter().enumerate() {
        let below = &words[t];
        let above = &words[t + 1];
        let mut next: HashMap<Vec<ColorSet>, LaurentPoly> = HashMap::new();
        let mut next_counts: HashMap<Vec<ColorSet>, u64> = HashMap::new();
        for (key, poly) in &layer {
            let count = counts[key];
            let mut push = |new_key: Vec<ColorSet>, deg: i64| {
                *next
                    .entry(new_key.clone())
                    .or_insert_with(LaurentPoly::zero) += poly.shift(deg);
                *next_counts.entry(new_key).or_insert(0) += count;
            };
            match *s {
                Slice::Cup { pos, label, .. } => {
                    for c in subsets(n, label) {
                        let mut k = key.clone();
                        k.splice(pos..pos, [c, c]);
                        push(k, local_degree(s, &[(above[pos], c)], n).half_units());
                    }
                }
                Slice::Cap { pos, .. } => {
                    let c = key[pos];
                    if key[pos + 1] != c {
                        continue;
                    }
                    let mut k = key.clone();
                    k.drain(pos..pos + 2);
                    push(k, local_degree(s, &[(below[pos], c)], n).half_units());
                }
                Slice::Merge {
                    pos,
                    inputs,
                    output,
                } => {
                    let (a, b) = (key[pos], key[pos + 1]);
                    for c in subsets(n, output.label) {
                        let legs = [(inputs[0], a), (inputs[1], b), (output, c)];
                        let flags = [
                            (incoming(inputs[0], false), a),
                            (incoming(inputs[1], false), b),
                            (incoming(output, true), c),
                        ];
                        if !vertex_condition(n, &flags) {
                            continue;
                        }
                        let mut k = key.clone();
                        k.splice(pos..pos + 2, [c]);
                        push(k, local_degree(s, &legs, n).half_units());
                    }
                }
                Slice::Split {
                    pos,
                    input,
                    outputs,
                } => {
                    let a = key[pos];
                    for l in subsets(n, outputs[0].label) {
                        for r in subsets(n, outputs[1].label) {
                            let legs = [(input, a), (outputs[0], l), (outputs[1], r)];
                            let flags = [
                                (incoming(input, false), a),
                                (incoming(outputs[0], true), l),
                                (incoming(outputs[1], true), r),
                            ];
                            if !vertex_condition(n, &flags) {
                                continue;
                            }
                            let mut k = key.clone();
                            k.splice(pos..pos + 1, [l, r]);
                            push(k, local_degree(s, &legs, n).half_units());
                        }
                    }
                }
            }
        }
        layer = next;
        counts = next_counts;
    }
    let half = layer.remove(&Vec::new()).unwrap_or_else(LaurentPoly::zero);
    let value = HalfLaurent::from_half_units(half)
        .to_integral()
        .expect("closed webs have integral degrees");
    Ok(Evaluation {
        value,
        coloring_count: counts.get(&Vec::new()).copied().unwrap_or(0),
    })
}

fn incoming(s: Strand, above: bool) -> bool {
    use crate::web::Dir;
    matches!((above, s.dir), (false, Dir::Up) | (true, Dir::Down))
}

/// A boundary coloring on which the two sides of a relation differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub boundary: BoundaryColoring,
    pub lhs: HalfLaurent,
    pub rhs: HalfLaurent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub relation: Relation,
    pub params: Params,
    pub n: u32,
    /// Right-hand coefficients in order.
    pub coefficients: Vec<LaurentPoly>,
    pub boundaries_checked: usize,
    pub failures: Vec<Mismatch>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `LHS = Σ_j coeff_j · RHS_j` on every boundary coloring of the common boundary.
pub fn verify_relation(rel: Relation, params: &Params, n: u32) -> Result<RelationReport> {
    let lhs_web = crate::web::standard_web(rel, params, crate::web::Side::Lhs, n)?;
    let terms = rel.rhs_terms(params, n)?;
    let lhs = evaluate_open_all(&lhs_web)?;
    let rhs_values: Vec<_> = terms
        .iter()
        .map(|(_, w)| evaluate_open_all(w))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let boundaries = all_boundary_colorings(&lhs_web);
    for b in &boundaries {
        let l = lhs.get(b).cloned().unwrap_or_else(HalfLaurent::zero);
        let mut r = HalfLaurent::zero();
        for ((coeff, _), vals) in terms.iter().zip(&rhs_values) {
            if let Some(v) = vals.get(b) {
                r += &(coeff * v);
            }
        }
        if l != r {
            failures.push(Mismatch {
                boundary: b.clone(),
                lhs: l,
                rhs: r,
            });
        }
    }
    Ok(RelationReport {
        relation: rel,
        params: params.clone(),
        n,
        coefficients: terms.into_iter().map(|(c, _)| c).collect(),
        boundaries_checked: boundaries.len(),
        failures,
    })
}

/// True iff deleting the 0- and N-labeled edges leaves the value unchanged.
pub fn verify_trivial_edge_removal(w: &WebDiagram) -> Result<bool> {
    let before = evaluate_closed(w)?;
    let after = evaluate_closed(&w.remove_trivial_edges()?)?;
    Ok(before.value == after.value)
}
