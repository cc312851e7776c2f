//! Slice presentations of sl_N webs.
//!
//! A [`WebDiagram`] is a bottom boundary word followed by a list of elementary
//! slices (cups, caps, merges and splits). Each slice acts on the running word of
//! oriented labeled strands; the word left after the last slice is the top boundary.
//! Edges are maximal chains of strand segments not interrupted by a vertex, so cups
//! and caps bend an edge without cutting it.

mod dsl;
mod random;
mod standard;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

pub use dsl::{parse, serialize};
pub use random::{ladder, random_closed_moy, random_corpus};
pub use standard::{params, standard_web, Params, Relation, Side};

use crate::error::{Error, Result};

pub type EdgeId = usize;

/// Vertical direction of a strand where it crosses a slice line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn flip(self) -> Self {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }
}

/// Direction of travel at a cup or cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    Rightward,
    Leftward,
}

impl Turn {
    pub fn flip(self) -> Self {
        match self {
            Turn::Rightward => Turn::Leftward,
            Turn::Leftward => Turn::Rightward,
        }
    }

    /// Strands `(left, right)` inserted by a cup with this turn.
    pub fn cup_dirs(self) -> (Dir, Dir) {
        match self {
            Turn::Rightward => (Dir::Down, Dir::Up),
            Turn::Leftward => (Dir::Up, Dir::Down),
        }
    }

    /// Strands `(left, right)` consumed by a cap with this turn.
    pub fn cap_dirs(self) -> (Dir, Dir) {
        match self {
            Turn::Rightward => (Dir::Up, Dir::Down),
            Turn::Leftward => (Dir::Down, Dir::Up),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Strand {
    pub label: i64,
    pub dir: Dir,
}

impl Strand {
    pub fn new(dir: Dir, label: i64) -> Self {
        Self { label, dir }
    }

    pub fn up(label: i64) -> Self {
        Self::new(Dir::Up, label)
    }

    pub fn down(label: i64) -> Self {
        Self::new(Dir::Down, label)
    }

    /// The same edge seen with reversed orientation: direction flipped, label `N - label`.
    pub fn reversed(self, n: u32) -> Self {
        Self::new(self.dir.flip(), n as i64 - self.label)
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dir {
            Dir::Up => 'u',
            Dir::Down => 'd',
        };
        write!(f, "{d}{}", self.label)
    }
}

/// One elementary slice of a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slice {
    /// Inserts two strands before index `pos`.
    Cup { pos: usize, label: i64, turn: Turn },
    /// Consumes the strands at `pos` and `pos + 1`.
    Cap { pos: usize, turn: Turn },
    /// Consumes the strands at `pos`, `pos + 1` and emits one.
    Merge {
        pos: usize,
        inputs: [Strand; 2],
        output: Strand,
    },
    /// Consumes the strand at `pos` and emits two.
    Split {
        pos: usize,
        input: Strand,
        outputs: [Strand; 2],
    },
}

impl Slice {
    pub fn pos(&self) -> usize {
        match *self {
            Slice::Cup { pos, .. }
            | Slice::Cap { pos, .. }
            | Slice::Merge { pos, .. }
            | Slice::Split { pos, .. } => pos,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Slice::Cup { .. } => "cup",
            Slice::Cap { .. } => "cap",
            Slice::Merge { .. } => "merge",
            Slice::Split { .. } => "split",
        }
    }

    fn with_pos(self, new_pos: usize) -> Self {
        match self {
            Slice::Cup { label, turn, .. } => Slice::Cup {
                pos: new_pos,
                label,
                turn,
            },
            Slice::Cap { turn, .. } => Slice::Cap { pos: new_pos, turn },
            Slice::Merge { inputs, output, .. } => Slice::Merge {
                pos: new_pos,
                inputs,
                output,
            },
            Slice::Split { input, outputs, .. } => Slice::Split {
                pos: new_pos,
                input,
                outputs,
            },
        }
    }
}

/// A problem found while running the slices over the boundary word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Index of the offending slice (0-based).
    pub slice: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "slice {}: {}", self.slice, self.message)
    }
}

/// A web in Morse position: bottom word plus slices; the top word is derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WebDiagram {
    n: u32,
    bottom: Vec<Strand>,
    slices: Vec<Slice>,
}

/// Whether a leg sits below or above its vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegSide {
    Below,
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leg {
    pub edge: EdgeId,
    pub strand: Strand,
    pub side: LegSide,
}

impl Leg {
    /// True when the edge points into the vertex.
    pub fn incoming(&self) -> bool {
        matches!(
            (self.side, self.strand.dir),
            (LegSide::Below, Dir::Up) | (LegSide::Above, Dir::Down)
        )
    }
}

/// A trivalent vertex. For a merge the legs are `[left, right, top]`,
/// for a split `[bottom, left, right]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Vertex {
    pub slice: usize,
    pub legs: [Leg; 3],
}

impl Vertex {
    /// The two legs on the same side of the slice line, left first.
    pub fn paired_legs(&self) -> (Leg, Leg, Leg) {
        if self.legs[0].side == self.legs[1].side {
            (self.legs[0], self.legs[1], self.legs[2])
        } else {
            (self.legs[1], self.legs[2], self.legs[0])
        }
    }

    /// For a MOY vertex, the index of the leg whose label is the sum of the other two.
    pub fn big_leg(&self) -> Option<usize> {
        let inc: Vec<bool> = self.legs.iter().map(Leg::incoming).collect();
        (0..3).find(|&i| inc[(i + 1) % 3] == inc[(i + 2) % 3] && inc[i] != inc[(i + 1) % 3])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeInfo {
    pub label: i64,
}

/// Derived combinatorics of a valid diagram.
#[derive(Debug, Clone)]
pub struct Topology {
    /// `words[t]` is the boundary word after `t` slices.
    pub words: Vec<Vec<Strand>>,
    /// Edge of each strand segment, indexed like `words`.
    pub seg_edge: Vec<Vec<EdgeId>>,
    pub edges: Vec<EdgeInfo>,
    pub vertices: Vec<Vertex>,
    /// Vertex index of each slice, if it is a merge or split.
    pub slice_vertex: Vec<Option<usize>>,
}

impl Topology {
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edge of a cup (new segments) or cap (consumed segments) slice.
    pub fn extremum_edge(&self, slice: usize, s: &Slice) -> Option<EdgeId> {
        match *s {
            Slice::Cup { pos, .. } => Some(self.seg_edge[slice + 1][pos]),
            Slice::Cap { pos, .. } => Some(self.seg_edge[slice][pos]),
            _ => None,
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

fn vertex_flow_ok(n: u32, legs: &[(Strand, LegSide)]) -> bool {
    let mut balance = 0i64;
    for (s, side) in legs {
        let leg = Leg {
            edge: 0,
            strand: *s,
            side: *side,
        };
        if leg.incoming() {
            balance += s.label;
        } else {
            balance -= s.label;
        }
    }
    balance.rem_euclid(n as i64) == 0
}

impl WebDiagram {
    /// Builds a diagram without checking it; see [`WebDiagram::validate`].
    pub fn from_parts(n: u32, bottom: Vec<Strand>, slices: Vec<Slice>) -> Self {
        Self { n, bottom, slices }
    }

    /// Builds and validates a diagram.
    pub fn new(n: u32, bottom: Vec<Strand>, slices: Vec<Slice>) -> Result<Self> {
        let w = Self::from_parts(n, bottom, slices);
        w.ensure_valid()?;
        Ok(w)
    }

    pub fn empty(n: u32) -> Self {
        Self::from_parts(n, Vec::new(), Vec::new())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bottom(&self) -> &[Strand] {
        &self.bottom
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    /// Same diagram read with a different rank parameter.
    pub fn with_rank(&self, n: u32) -> Self {
        Self { n, ..self.clone() }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Every way the slices fail to compose with the running word, plus every
    /// vertex violating the mod-N flow condition. Stops at the first word mismatch.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(Violation {
                slice: 0,
                message: "rank N must be positive".into(),
            });
            return out;
        }
        let mut word = self.bottom.clone();
        for (i, s) in self.slices.iter().enumerate() {
            let mut fail = |msg: String| {
                out.push(Violation {
                    slice: i,
                    message: msg,
                })
            };
            match *s {
                Slice::Cup { pos, label, turn } => {
                    if pos > word.len() {
                        fail(format!(
                            "cup position {pos} beyond word of width {}",
                            word.len()
                        ));
                        return out;
                    }
                    let (l, r) = turn.cup_dirs();
                    word.splice(pos..pos, [Strand::new(l, label), Strand::new(r, label)]);
                }
                Slice::Cap { pos, turn } => {
                    if pos + 1 >= word.len() {
                        fail(format!(
                            "cap position {pos} needs two strands, width is {}",
                            word.len()
                        ));
                        return out;
                    }
                    let (a, b) = (word[pos], word[pos + 1]);
                    let (l, r) = turn.cap_dirs();
                    if a.label != b.label || a.dir != l || b.dir != r {
                        fail(format!(
                            "cap {} expects ({}, {}) with equal labels, found ({a}, {b})",
                            if turn == Turn::Rightward {
                                "rightward"
                            } else {
                                "leftward"
                            },
                            if l == Dir::Up { "u" } else { "d" },
                            if r == Dir::Up { "u" } else { "d" },
                        ));
                        return out;
                    }
                    word.drain(pos..pos + 2);
                }
                Slice::Merge {
                    pos,
                    inputs,
                    output,
                } => {
                    if pos + 1 >= word.len() || word[pos..pos + 2] != inputs {
                        let found = word
                            .get(pos..pos + 2)
                            .map(|w| format!("({}, {})", w[0], w[1]));
                        fail(format!(
                            "merge expects ({}, {}) at {pos}, found {}",
                            inputs[0],
                            inputs[1],
                            found.unwrap_or_else(|| "nothing".into())
                        ));
                        return out;
                    }
                    let legs = [
                        (inputs[0], LegSide::Below),
                        (inputs[1], LegSide::Below),
                        (output, LegSide::Above),
                    ];
                    if !vertex_flow_ok(self.n, &legs) {
                        fail(format!(
                            "merge ({}, {}) -> ({output}) violates the flow condition mod {}",
                            inputs[0], inputs[1], self.n
                        ));
                    }
                    word.splice(pos..pos + 2, [output]);
                }
                Slice::Split {
                    pos,
                    input,
                    outputs,
                } => {
                    if pos >= word.len() || word[pos] != input {
                        let found = word.get(pos).map(ToString::to_string);
                        fail(format!(
                            "split expects ({input}) at {pos}, found {}",
                            found.unwrap_or_else(|| "nothing".into())
                        ));
                        return out;
                    }
                    let legs = [
                        (input, LegSide::Below),
                        (outputs[0], LegSide::Above),
                        (outputs[1], LegSide::Above),
                    ];
                    if !vertex_flow_ok(self.n, &legs) {
                        fail(format!(
                            "split ({input}) -> ({}, {}) violates the flow condition mod {}",
                            outputs[0], outputs[1], self.n
                        ));
                    }
                    word.splice(pos..pos + 1, outputs);
                }
            }
        }
        out
    }

    /// Running words `words[0] = bottom`, …, `words[len] = top`. Requires a valid diagram.
    pub fn words(&self) -> Vec<Vec<Strand>> {
        let mut words = Vec::with_capacity(self.slices.len() + 1);
        let mut word = self.bottom.clone();
        words.push(word.clone());
        for s in &self.slices {
            apply_slice(&mut word, s);
            words.push(word.clone());
        }
        words
    }

    pub fn top(&self) -> Vec<Strand> {
        let mut word = self.bottom.clone();
        for s in &self.slices {
            apply_slice(&mut word, s);
        }
        word
    }

    pub fn is_closed(&self) -> bool {
        self.bottom.is_empty() && self.top().is_empty()
    }

    /// Edge and vertex structure. Panics on an invalid diagram.
    pub fn topology(&self) -> Topology {
        assert!(self.validate().is_empty(), "topology of an invalid diagram");
        let words = self.words();
        let mut offset = Vec::with_capacity(words.len());
        let mut total = 0;
        for w in &words {
            offset.push(total);
            total += w.len();
        }
        let node = |t: usize, p: usize| offset[t] + p;
        let mut parent: Vec<usize> = (0..total).collect();

        for (t, s) in self.slices.iter().enumerate() {
            let below = words[t].len();
            let (lo, hi_below, shift): (usize, usize, isize) = match *s {
                Slice::Cup { pos, .. } => {
                    union(&mut parent, node(t + 1, pos), node(t + 1, pos + 1));
                    (pos, pos, 2)
                }
                Slice::Cap { pos, .. } => {
                    union(&mut parent, node(t, pos), node(t, pos + 1));
                    (pos, pos + 2, -2)
                }
                Slice::Merge { pos, .. } => (pos, pos + 2, -1),
                Slice::Split { pos, .. } => (pos, pos + 1, 1),
            };
            for p in (0..lo).chain(hi_below..below) {
                let q = if p < lo {
                    p
                } else {
                    (p as isize + shift) as usize
                };
                union(&mut parent, node(t, p), node(t + 1, q));
            }
        }

        let mut root_edge = vec![usize::MAX; total];
        let mut edges = Vec::new();
        let mut seg_edge = Vec::with_capacity(words.len());
        for (t, w) in words.iter().enumerate() {
            let mut row = Vec::with_capacity(w.len());
            for (p, strand) in w.iter().enumerate() {
                let r = find(&mut parent, node(t, p));
                if root_edge[r] == usize::MAX {
                    root_edge[r] = edges.len();
                    edges.push(EdgeInfo {
                        label: strand.label,
                    });
                }
                row.push(root_edge[r]);
            }
            seg_edge.push(row);
        }

        let mut vertices = Vec::new();
        let mut slice_vertex = vec![None; self.slices.len()];
        for (t, s) in self.slices.iter().enumerate() {
            let below = |p: usize| Leg {
                edge: seg_edge[t][p],
                strand: words[t][p],
                side: LegSide::Below,
            };
            let above = |p: usize| Leg {
                edge: seg_edge[t + 1][p],
                strand: words[t + 1][p],
                side: LegSide::Above,
            };
            let legs = match *s {
                Slice::Merge { pos, .. } => [below(pos), below(pos + 1), above(pos)],
                Slice::Split { pos, .. } => [below(pos), above(pos), above(pos + 1)],
                _ => continue,
            };
            slice_vertex[t] = Some(vertices.len());
            vertices.push(Vertex { slice: t, legs });
        }

        Topology {
            words,
            seg_edge,
            edges,
            vertices,
            slice_vertex,
        }
    }

    /// True iff all labels are non-negative and every vertex is an exact
    /// merge `a, b → a+b` or split `a+b → a, b` of oriented edges.
    pub fn is_moy(&self) -> bool {
        if !self.validate().is_empty() {
            return false;
        }
        let topo = self.topology();
        if topo.edges.iter().any(|e| e.label < 0) {
            return false;
        }
        topo.vertices.iter().all(|v| match v.big_leg() {
            Some(b) => {
                let small: i64 = (0..3)
                    .filter(|&i| i != b)
                    .map(|i| v.legs[i].strand.label)
                    .sum();
                small == v.legs[b].strand.label
            }
            None => false,
        })
    }

    /// Algebraic number of circles after cabling every edge labeled `i` into `i`
    /// parallel copies; counterclockwise circles count `+1`.
    pub fn writhe(&self) -> Result<i64> {
        if !self.is_closed() {
            return Err(Error::NotClosed);
        }
        if !self.is_moy() {
            return Err(Error::NotMoy);
        }
        let topo = self.topology();
        let mut half = 0i64;
        for (t, s) in self.slices.iter().enumerate() {
            half += match *s {
                Slice::Cup { label, turn, .. } => uturn_weight(turn.cup_dirs().0) * label,
                Slice::Cap { pos, turn } => {
                    uturn_weight(turn.cap_dirs().0) * topo.words[t][pos].label
                }
                Slice::Merge { .. } | Slice::Split { .. } => {
                    let v = &topo.vertices[topo.slice_vertex[t].expect("vertex slice")];
                    cabled_vertex_turn(v)
                }
            };
        }
        debug_assert!(half % 2 == 0, "closed diagram with half-integral writhe");
        Ok(half / 2)
    }

    /// Reverses every edge in `edges` (orientation flipped, label `N - label`).
    pub fn reverse_edges(&self, edges: &BTreeSet<EdgeId>) -> Result<Self> {
        self.ensure_valid()?;
        let topo = self.topology();
        if let Some(&bad) = edges.iter().find(|&&e| e >= topo.num_edges()) {
            return Err(Error::UnknownEdge(bad));
        }
        let n = self.n;
        let flip = |t: usize, p: usize| edges.contains(&topo.seg_edge[t][p]);
        let fix = |t: usize, p: usize| {
            let s = topo.words[t][p];
            if flip(t, p) {
                s.reversed(n)
            } else {
                s
            }
        };
        let bottom = (0..self.bottom.len()).map(|p| fix(0, p)).collect();
        let slices = self
            .slices
            .iter()
            .enumerate()
            .map(|(t, s)| match *s {
                Slice::Cup { pos, label, turn } if flip(t + 1, pos) => Slice::Cup {
                    pos,
                    label: n as i64 - label,
                    turn: turn.flip(),
                },
                Slice::Cap { pos, turn } if flip(t, pos) => Slice::Cap {
                    pos,
                    turn: turn.flip(),
                },
                Slice::Merge { pos, .. } => Slice::Merge {
                    pos,
                    inputs: [fix(t, pos), fix(t, pos + 1)],
                    output: fix(t + 1, pos),
                },
                Slice::Split { pos, .. } => Slice::Split {
                    pos,
                    input: fix(t, pos),
                    outputs: [fix(t + 1, pos), fix(t + 1, pos + 1)],
                },
                other => other,
            })
            .collect();
        let out = Self::from_parts(n, bottom, slices);
        out.ensure_valid()?;
        Ok(out)
    }

    /// Deletes every edge labeled `0` or `N`, dissolving the vertices left with two legs.
    ///
    /// When a dissolved vertex joins two edges whose orientations disagree, one side of
    /// the chain is first reversed (an equivalence of webs), so the result is a genuine
    /// diagram with the same colorings.
    pub fn remove_trivial_edges(&self) -> Result<Self> {
        self.ensure_valid()?;
        let topo = self.topology();
        let n = self.n as i64;
        let trivial = |e: EdgeId| topo.edges[e].label == 0 || topo.edges[e].label == n;

        // Parity constraints: flip[a] xor flip[b] == need, for each dissolved vertex.
        let mut adj: Vec<Vec<(EdgeId, bool)>> = vec![Vec::new(); topo.num_edges()];
        for v in &topo.vertices {
            let kept: Vec<Leg> = v
                .legs
                .iter()
                .copied()
                .filter(|l| !trivial(l.edge))
                .collect();
            match kept.len() {
                0 | 3 => {}
                2 => {
                    let need = kept[0].incoming() == kept[1].incoming();
                    if kept[0].edge == kept[1].edge {
                        if need {
                            return Err(Error::TrivialEdges(format!(
                                "edge {} meets itself inconsistently at slice {}",
                                kept[0].edge, v.slice
                            )));
                        }
                        continue;
                    }
                    adj[kept[0].edge].push((kept[1].edge, need));
                    adj[kept[1].edge].push((kept[0].edge, need));
                }
                _ => {
                    return Err(Error::TrivialEdges(format!(
                        "vertex at slice {} keeps a single non-trivial leg",
                        v.slice
                    )))
                }
            }
        }
        let mut flip: Vec<Option<bool>> = vec![None; topo.num_edges()];
        for start in 0..topo.num_edges() {
            if flip[start].is_some() || trivial(start) {
                continue;
            }
            flip[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(e) = queue.pop_front() {
                let fe = flip[e].unwrap();
                for &(f, need) in &adj[e] {
                    let want = fe ^ need;
                    match flip[f] {
                        None => {
                            flip[f] = Some(want);
                            queue.push_back(f);
                        }
                        Some(have) if have != want => {
                            return Err(Error::TrivialEdges(
                                "no consistent orientation after deleting edges".into(),
                            ))
                        }
                        _ => {}
                    }
                }
            }
        }
        let to_flip: BTreeSet<EdgeId> = (0..topo.num_edges())
            .filter(|&e| flip[e] == Some(true))
            .collect();
        let oriented = self.reverse_edges(&to_flip)?;
        let topo = oriented.topology();
        let keep = |t: usize, p: usize| !trivial(topo.seg_edge[t][p]);
        let new_pos = |t: usize, p: usize| (0..p).filter(|&i| keep(t, i)).count();

        let bottom = (0..oriented.bottom.len())
            .filter(|&p| keep(0, p))
            .map(|p| topo.words[0][p])
            .collect();
        let mut slices = Vec::new();
        for (t, s) in oriented.slices.iter().enumerate() {
            match *s {
                Slice::Cup { pos, .. } => {
                    if keep(t + 1, pos) {
                        slices.push(s.with_pos(new_pos(t, pos)));
                    }
                }
                Slice::Cap { pos, .. } => {
                    if keep(t, pos) {
                        slices.push(s.with_pos(new_pos(t, pos)));
                    }
                }
                Slice::Merge {
                    pos,
                    inputs,
                    output,
                } => match (keep(t, pos), keep(t, pos + 1), keep(t + 1, pos)) {
                    (true, true, true) => slices.push(s.with_pos(new_pos(t, pos))),
                    (true, true, false) => {
                        if inputs[0].label != inputs[1].label {
                            return Err(Error::TrivialEdges(format!(
                                "slice {t}: joined legs carry labels {} and {}",
                                inputs[0].label, inputs[1].label
                            )));
                        }
                        let turn = match inputs[0].dir {
                            Dir::Up => Turn::Rightward,
                            Dir::Down => Turn::Leftward,
                        };
                        slices.push(Slice::Cap {
                            pos: new_pos(t, pos),
                            turn,
                        });
                    }
                    (a, b, true) if a != b => {
                        let through = if a { inputs[0] } else { inputs[1] };
                        if through != output {
                            return Err(Error::TrivialEdges(format!(
                                "slice {t}: cannot join {through} to {output}"
                            )));
                        }
                    }
                    _ => {}
                },
                Slice::Split {
                    pos,
                    input,
                    outputs,
                } => match (keep(t, pos), keep(t + 1, pos), keep(t + 1, pos + 1)) {
                    (true, true, true) => slices.push(s.with_pos(new_pos(t, pos))),
                    (false, true, true) => {
                        if outputs[0].label != outputs[1].label {
                            return Err(Error::TrivialEdges(format!(
                                "slice {t}: joined legs carry labels {} and {}",
                                outputs[0].label, outputs[1].label
                            )));
                        }
                        let turn = match outputs[0].dir {
                            Dir::Down => Turn::Rightward,
                            Dir::Up => Turn::Leftward,
                        };
                        slices.push(Slice::Cup {
                            pos: new_pos(t, pos),
                            label: outputs[0].label,
                            turn,
                        });
                    }
                    (true, a, b) if a != b => {
                        let through = if a { outputs[0] } else { outputs[1] };
                        if through != input {
                            return Err(Error::TrivialEdges(format!(
                                "slice {t}: cannot join {input} to {through}"
                            )));
                        }
                    }
                    _ => {}
                },
            }
        }
        let out = Self::from_parts(self.n, bottom, slices);
        out.ensure_valid()?;
        Ok(out)
    }

    /// Places `other` beside `self`. Both diagrams must be closed and share the rank.
    pub fn disjoint_union(&self, other: &WebDiagram) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        if !self.is_closed() || !other.is_closed() {
            return Err(Error::NotClosed);
        }
        let mut slices = self.slices.clone();
        slices.extend_from_slice(&other.slices);
        Ok(Self::from_parts(self.n, Vec::new(), slices))
    }

    /// Left-right mirror image.
    pub fn mirror(&self) -> Self {
        let words = self.words();
        let rev = |s: &[Strand; 2]| [s[1], s[0]];
        let slices = self
            .slices
            .iter()
            .enumerate()
            .map(|(t, s)| {
                let width = words[t].len();
                match *s {
                    Slice::Cup { pos, label, turn } => Slice::Cup {
                        pos: width - pos,
                        label,
                        turn: turn.flip(),
                    },
                    Slice::Cap { pos, turn } => Slice::Cap {
                        pos: width - pos - 2,
                        turn: turn.flip(),
                    },
                    Slice::Merge {
                        pos,
                        inputs,
                        output,
                    } => Slice::Merge {
                        pos: width - pos - 2,
                        inputs: rev(&inputs),
                        output,
                    },
                    Slice::Split {
                        pos,
                        input,
                        outputs,
                    } => Slice::Split {
                        pos: width - pos - 1,
                        input,
                        outputs: rev(&outputs),
                    },
                }
            })
            .collect();
        Self::from_parts(self.n, self.bottom.iter().rev().copied().collect(), slices)
    }
}

/// Turning of a U-turn in half-units, from the direction of its left leg:
/// a U-turn whose left leg runs up is clockwise (−½), otherwise counterclockwise (+½).
pub fn uturn_weight(left_dir: Dir) -> i64 {
    match left_dir {
        Dir::Up => -1,
        Dir::Down => 1,
    }
}

/// Turning (half-units) picked up at a MOY vertex by the cabled copies of the small
/// leg that sits on the same side of the slice line as the big leg.
fn cabled_vertex_turn(v: &Vertex) -> i64 {
    let big = v.big_leg().expect("MOY vertex");
    let (left, right, _) = v.paired_legs();
    let big_leg = v.legs[big];
    if big_leg == left {
        uturn_weight(left.strand.dir) * right.strand.label
    } else if big_leg == right {
        uturn_weight(left.strand.dir) * left.strand.label
    } else {
        0
    }
}

pub(crate) fn apply_slice(word: &mut Vec<Strand>, s: &Slice) {
    match *s {
        Slice::Cup { pos, label, turn } => {
            let (l, r) = turn.cup_dirs();
            word.splice(pos..pos, [Strand::new(l, label), Strand::new(r, label)]);
        }
        Slice::Cap { pos, .. } => {
            word.drain(pos..pos + 2);
        }
        Slice::Merge { pos, output, .. } => {
            word.splice(pos..pos + 2, [output]);
        }
        Slice::Split { pos, outputs, .. } => {
            word.splice(pos..pos + 1, outputs);
        }
    }
}

/// Counterclockwise circle with the given label.
pub fn circle(n: u32, label: i64) -> WebDiagram {
    WebDiagram::from_parts(
        n,
        Vec::new(),
        vec![
            Slice::Cup {
                pos: 0,
                label,
                turn: Turn::Rightward,
            },
            Slice::Cap {
                pos: 0,
                turn: Turn::Leftward,
            },
        ],
    )
}

/// Clockwise circle with the given label.
pub fn circle_cw(n: u32, label: i64) -> WebDiagram {
    WebDiagram::from_parts(
        n,
        Vec::new(),
        vec![
            Slice::Cup {
                pos: 0,
                label,
                turn: Turn::Leftward,
            },
            Slice::Cap {
                pos: 0,
                turn: Turn::Rightward,
            },
        ],
    )
}

/// Closed theta web: an edge `m+n` closing a digon with sides `m` (left) and `n` (right).
pub fn theta(n_rank: u32, m: i64, n: i64) -> WebDiagram {
    WebDiagram::from_parts(
        n_rank,
        Vec::new(),
        vec![
            Slice::Cup {
                pos: 0,
                label: m + n,
                turn: Turn::Rightward,
            },
            Slice::Split {
                pos: 1,
                input: Strand::up(m + n),
                outputs: [Strand::up(m), Strand::up(n)],
            },
            Slice::Merge {
                pos: 1,
                inputs: [Strand::up(m), Strand::up(n)],
                output: Strand::up(m + n),
            },
            Slice::Cap {
                pos: 0,
                turn: Turn::Leftward,
            },
        ],
    )
}
