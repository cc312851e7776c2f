//! Colorings of webs and their degrees.
//!
//! A coloring gives each edge labeled `k` a `k`-element subset of `{1..N}` such that
//! at every vertex each color is used the same number of times once incoming edges
//! are replaced by their complements. The degree of a coloring is a sum over
//! bicolors `{lo < hi}` of the turning of the state curves.
//!
//! This module computes the degree slice by slice. Every U-turn of a state, whether
//! at a cup, a cap or between two legs on the same side of a vertex, contributes
//! ±½; summing over bicolors gives closed forms per slice. [`state`] rebuilds the
//! state curves explicitly and serves as the oracle for this computation.

pub mod state;

use std::fmt;
use std::ops::{Add, AddAssign, Neg};

use crate::web::{Dir, EdgeId, Leg, Slice, Strand, Topology, Turn, Vertex, WebDiagram};

/// A subset of `{1..N}` as a bit mask (bit `i - 1` for color `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(pub u32);

impl ColorSet {
    pub fn from_colors(colors: impl IntoIterator<Item = u32>) -> Self {
        Self(colors.into_iter().fold(0, |m, c| m | 1 << (c - 1)))
    }

    pub fn full(n: u32) -> Self {
        Self(if n >= 32 { u32::MAX } else { (1 << n) - 1 })
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, color: u32) -> bool {
        self.0 >> (color - 1) & 1 == 1
    }

    pub fn complement(self, n: u32) -> Self {
        Self(!self.0 & Self::full(n).0)
    }

    pub fn colors(self) -> impl Iterator<Item = u32> {
        (1..=32).filter(move |&c| self.contains(c))
    }

    /// Color set of the edge as seen by an upward traveller: the set itself on an
    /// upward strand, its complement on a downward one.
    pub fn seen_upward(self, dir: Dir, n: u32) -> Self {
        match dir {
            Dir::Up => self,
            Dir::Down => self.complement(n),
        }
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.colors().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// All `k`-subsets of `{1..N}` in increasing mask order. Empty when `k ∉ [0, N]`.
pub fn subsets(n: u32, k: i64) -> Vec<ColorSet> {
    if k < 0 || k > n as i64 {
        return Vec::new();
    }
    if k == 0 {
        return vec![ColorSet(0)];
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut m: u64 = (1 << k) - 1;
    while m < limit {
        out.push(ColorSet(m as u32));
        // Next mask with the same popcount.
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

/// A two-element subset `{lo < hi}` of `{1..N}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bicolor {
    pub lo: u32,
    pub hi: u32,
}

impl Bicolor {
    pub fn new(lo: u32, hi: u32) -> Option<Self> {
        (1 <= lo && lo < hi).then_some(Self { lo, hi })
    }

    /// Number of the two colors lying in `s`.
    pub fn meet(self, s: ColorSet) -> u32 {
        s.contains(self.lo) as u32 + s.contains(self.hi) as u32
    }
}

pub fn bicolors(n: u32) -> impl Iterator<Item = Bicolor> {
    (1..=n).flat_map(move |lo| (lo + 1..=n).map(move |hi| Bicolor { lo, hi }))
}

/// An integer or half-integer, stored in half-units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_half_units(h: i64) -> Self {
        Self(h)
    }

    pub fn from_int(k: i64) -> Self {
        Self(2 * k)
    }

    pub fn half_units(self) -> i64 {
        self.0
    }

    pub fn to_integer(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.0 += rhs.0;
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> Self {
        HalfInt(iter.map(|h| h.0).sum())
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

/// Color sets indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(pub Vec<ColorSet>);

impl Coloring {
    pub fn get(&self, e: EdgeId) -> ColorSet {
        self.0[e]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, ColorSet)> + '_ {
        self.0.iter().copied().enumerate()
    }
}

/// Colors of the boundary strands, bottom word then top word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BoundaryColoring {
    pub bottom: Vec<ColorSet>,
    pub top: Vec<ColorSet>,
}

/// The flow condition at a vertex: every color is seen the same number of times,
/// counting outgoing edges containing it and incoming edges missing it.
pub fn vertex_condition(n: u32, legs: &[(bool, ColorSet)]) -> bool {
    let full = ColorSet::full(n);
    let mut target = None;
    for color in 1..=n {
        let mut count = 0;
        for &(incoming, c) in legs {
            let s = if incoming { c.complement(n) } else { c };
            count += s.contains(color) as u32;
        }
        debug_assert!(full.contains(color));
        match target {
            None => target = Some(count),
            Some(t) if t != count => return false,
            _ => {}
        }
    }
    true
}

fn vertex_ok(n: u32, v: &Vertex, colors: &[ColorSet]) -> bool {
    let legs: Vec<(bool, ColorSet)> = v
        .legs
        .iter()
        .map(|l| (l.incoming(), colors[l.edge]))
        .collect();
    vertex_condition(n, &legs)
}

/// Every coloring, in lexicographic order of `(edge 0 mask, edge 1 mask, ...)`.
/// Empty when some edge label lies outside `[0, N]`.
pub fn enumerate_colorings(w: &WebDiagram) -> Vec<Coloring> {
    let mut out = Vec::new();
    for_each_coloring(w, &w.topology(), |c| out.push(c.clone()));
    out
}

/// Depth-first search over edges in order of first appearance from the bottom,
/// checking each vertex as soon as its last leg is colored.
pub fn for_each_coloring(w: &WebDiagram, topo: &Topology, mut visit: impl FnMut(&Coloring)) {
    let n = w.n();
    let num = topo.num_edges();
    let choices: Vec<Vec<ColorSet>> = topo.edges.iter().map(|e| subsets(n, e.label)).collect();
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); num];
    for (i, v) in topo.vertices.iter().enumerate() {
        let last = v.legs.iter().map(|l| l.edge).max().unwrap();
        checks[last].push(i);
    }
    let mut coloring = Coloring(vec![ColorSet(0); num]);
    fn go(
        e: usize,
        n: u32,
        topo: &Topology,
        choices: &[Vec<ColorSet>],
        checks: &[Vec<usize>],
        coloring: &mut Coloring,
        visit: &mut dyn FnMut(&Coloring),
    ) {
        if e == choices.len() {
            visit(coloring);
            return;
        }
        for &s in &choices[e] {
            coloring.0[e] = s;
            if checks[e]
                .iter()
                .all(|&v| vertex_ok(n, &topo.vertices[v], &coloring.0))
            {
                go(e + 1, n, topo, choices, checks, coloring, visit);
            }
        }
    }
    go(0, n, topo, &choices, &checks, &mut coloring, &mut visit);
}

/// True iff `c` satisfies the cardinality and vertex conditions.
pub fn is_valid_coloring(w: &WebDiagram, topo: &Topology, c: &Coloring) -> bool {
    c.0.len() == topo.num_edges()
        && topo
            .edges
            .iter()
            .zip(&c.0)
            .all(|(e, s)| s.len() as i64 == e.label && s.0 & !ColorSet::full(w.n()).0 == 0)
        && topo.vertices.iter().all(|v| vertex_ok(w.n(), v, &c.0))
}

pub fn boundary_coloring(topo: &Topology, c: &Coloring) -> BoundaryColoring {
    let last = topo.words.len() - 1;
    BoundaryColoring {
        bottom: topo.seg_edge[0].iter().map(|&e| c.get(e)).collect(),
        top: topo.seg_edge[last].iter().map(|&e| c.get(e)).collect(),
    }
}

/// `Σ_{a∈Y, b∈Z} sign(b - a)` on masks.
fn mask_degree(y: ColorSet, z: ColorSet) -> i64 {
    let mut d = 0;
    for a in y.colors() {
        let below = z.0 & ((1u32 << (a - 1)) - 1);
        let above = z.0 & !((1u64 << a) - 1) as u32;
        d += above.count_ones() as i64 - below.count_ones() as i64;
    }
    d
}

/// Total turning of a U-turn over all bicolors, in half-units. `up` is the color
/// set seen upward along the left leg. A bicolor survives when it meets `up` once;
/// the state then runs up the left leg (clockwise, −½) iff `hi ∈ up`.
pub fn uturn_degree(up: ColorSet, n: u32) -> HalfInt {
    HalfInt(mask_degree(up, up.complement(n)))
}

/// Turning at a vertex, in half-units: bicolors kept on both legs of the same-side
/// pair but not on the third leg make the state U-turn between the pair.
pub fn vertex_degree(
    left: (Strand, ColorSet),
    right: (Strand, ColorSet),
    third: ColorSet,
    n: u32,
) -> HalfInt {
    let up_left = left.1.seen_upward(left.0.dir, n);
    let mut h = 0;
    for b in bicolors(n) {
        if b.meet(left.1) == 1 && b.meet(right.1) == 1 && b.meet(third) != 1 {
            h += if up_left.contains(b.hi) { -1 } else { 1 };
        }
    }
    HalfInt(h)
}

/// Degree contribution of one slice. `legs` lists the strands touching the slice
/// with their color sets: cup `[left, right]` (new strands), cap `[left, right]`,
/// merge `[left, right, output]`, split `[input, left, right]`.
pub fn local_degree(slice: &Slice, legs: &[(Strand, ColorSet)], n: u32) -> HalfInt {
    match *slice {
        Slice::Cup { .. } | Slice::Cap { .. } => {
            let (s, c) = legs[0];
            uturn_degree(c.seen_upward(s.dir, n), n)
        }
        Slice::Merge { .. } => vertex_degree(legs[0], legs[1], legs[2].1, n),
        Slice::Split { .. } => vertex_degree(legs[1], legs[2], legs[0].1, n),
    }
}

/// Closed form for a cup or cap of color set `s`: `σ · d(complement ⊔ s)` half-units,
/// with `σ = +1` for rightward cups and leftward caps.
pub fn extremum_degree(is_cup: bool, turn: Turn, s: ColorSet, n: u32) -> HalfInt {
    let sigma = match (is_cup, turn) {
        (true, Turn::Rightward) | (false, Turn::Leftward) => 1,
        _ => -1,
    };
    HalfInt(sigma * mask_degree(s.complement(n), s))
}

fn leg_pair(l: &Leg, c: &Coloring) -> (Strand, ColorSet) {
    (l.strand, c.get(l.edge))
}

/// Degree of `c` summed slice by slice.
pub fn coloring_degree(w: &WebDiagram, topo: &Topology, c: &Coloring) -> HalfInt {
    let n = w.n();
    w.slices()
        .iter()
        .enumerate()
        .map(|(t, s)| match *s {
            Slice::Cup { pos, .. } => {
                let seg = (topo.words[t + 1][pos], c.get(topo.seg_edge[t + 1][pos]));
                local_degree(s, &[seg], n)
            }
            Slice::Cap { pos, .. } => {
                let seg = (topo.words[t][pos], c.get(topo.seg_edge[t][pos]));
                local_degree(s, &[seg], n)
            }
            _ => {
                let v = &topo.vertices[topo.slice_vertex[t].unwrap()];
                let legs: Vec<_> = v.legs.iter().map(|l| leg_pair(l, c)).collect();
                local_degree(s, &legs, n)
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partition_degree;
    use crate::web::{circle, theta, Strand};

    fn set(v: &[u32]) -> ColorSet {
        ColorSet::from_colors(v.iter().copied())
    }

    #[test]
    fn subsets_in_mask_order() {
        assert_eq!(
            subsets(3, 2),
            vec![ColorSet(0b011), ColorSet(0b101), ColorSet(0b110)]
        );
        assert_eq!(subsets(3, 0), vec![ColorSet(0)]);
        assert!(subsets(3, 4).is_empty());
        assert!(subsets(3, -1).is_empty());
        assert_eq!(subsets(6, 3).len(), 20);
    }

    #[test]
    fn mask_degree_matches_partition_degree() {
        for y in 0u32..64 {
            for z in 0u32..64 {
                if y & z != 0 {
                    continue;
                }
                let ys = ColorSet(y).colors().map(i64::from).collect();
                let zs = ColorSet(z).colors().map(i64::from).collect();
                assert_eq!(
                    mask_degree(ColorSet(y), ColorSet(z)),
                    partition_degree(&ys, &zs).unwrap()
                );
            }
        }
    }

    #[test]
    fn extremum_examples() {
        assert_eq!(
            extremum_degree(true, Turn::Rightward, set(&[2]), 2),
            HalfInt(1)
        );
        assert_eq!(
            extremum_degree(true, Turn::Rightward, set(&[1, 2, 3]), 3),
            HalfInt(0)
        );
        assert_eq!(
            extremum_degree(false, Turn::Leftward, set(&[1]), 3),
            HalfInt::from_int(-1)
        );
    }

    #[test]
    fn uturn_agrees_with_extremum_closed_form() {
        for n in 1..=5 {
            for k in 0..=n as i64 {
                for s in subsets(n, k) {
                    for turn in [Turn::Rightward, Turn::Leftward] {
                        let cup = Slice::Cup {
                            pos: 0,
                            label: k,
                            turn,
                        };
                        let left = Strand::new(turn.cup_dirs().0, k);
                        assert_eq!(
                            local_degree(&cup, &[(left, s)], n),
                            extremum_degree(true, turn, s, n)
                        );
                        let cap = Slice::Cap { pos: 0, turn };
                        let left = Strand::new(turn.cap_dirs().0, k);
                        assert_eq!(
                            local_degree(&cap, &[(left, s)], n),
                            extremum_degree(false, turn, s, n)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn circle_colorings() {
        assert_eq!(enumerate_colorings(&circle(2, 1)).len(), 2);
        assert!(enumerate_colorings(&circle(3, 4)).is_empty());
        assert_eq!(enumerate_colorings(&theta(3, 1, 1)).len(), 6);
        let w = circle(2, 1);
        let topo = w.topology();
        let degs: Vec<_> = enumerate_colorings(&w)
            .iter()
            .map(|c| coloring_degree(&w, &topo, c))
            .collect();
        assert_eq!(degs, vec![HalfInt::from_int(-1), HalfInt::from_int(1)]);
    }

    #[test]
    fn moy_vertex_condition_is_disjoint_union() {
        // Merge of two upward edges: the condition says out = in1 ⊔ in2.
        for n in 1..=4 {
            for a in 0..=n {
                for b in 0..=n - a {
                    for x in subsets(n, a as i64) {
                        for y in subsets(n, b as i64) {
                            for z in subsets(n, (a + b) as i64) {
                                let ok = vertex_condition(n, &[(true, x), (true, y), (false, z)]);
                                let union = x.0 & y.0 == 0 && x.0 | y.0 == z.0;
                                assert_eq!(ok, union);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_of_a_strand() {
        let w = WebDiagram::new(3, vec![Strand::up(1)], vec![]).unwrap();
        let topo = w.topology();
        let cs = enumerate_colorings(&w);
        assert_eq!(cs.len(), 3);
        let b = boundary_coloring(&topo, &cs[1]);
        assert_eq!(b.bottom, vec![set(&[2])]);
        assert_eq!(b.top, vec![set(&[2])]);
    }

    #[test]
    fn halfint_display() {
        assert_eq!(HalfInt::from_half_units(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_half_units(-4).to_string(), "-2");
        assert_eq!(HalfInt::from_half_units(-1).to_f64(), -0.5);
    }
}
