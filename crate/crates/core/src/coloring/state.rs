//! Explicit state curves, used to check the slice-local degree.
//!
//! The diagram is drawn on a grid: the strand at index `p` of the word after `t`
//! slices sits at `(2p, 2t)` and the cup, cap or vertex of slice `t` at
//! `(2·pos + 1, 2t + 1)`. For a bicolor the kept strands are traced into oriented
//! polylines. Circle orientation comes from the signed area, so nothing here relies
//! on the local turning weights.

use super::{bicolors, Bicolor, Coloring, HalfInt};
use crate::web::{Dir, Slice, Topology, WebDiagram};

type Point = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    pub path: Vec<(i64, i64)>,
    pub counterclockwise: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Bottom,
    Top,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub path: Vec<(i64, i64)>,
    /// Boundary side and index of the starting and ending strand.
    pub start: (Boundary, usize),
    pub end: (Boundary, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct State {
    pub circles: Vec<Circle>,
    pub arcs: Vec<Arc>,
}

#[derive(Clone, Copy)]
struct Link {
    to: Point,
    via: Option<(i64, i64)>,
}

fn coords((t, p): Point) -> (i64, i64) {
    (2 * p as i64, 2 * t as i64)
}

/// Builds the state of `c` for bicolor `b`: strands meeting `b` once are kept and
/// oriented along the edge when they contain `b.hi`, against it otherwise.
pub fn state(w: &WebDiagram, topo: &Topology, c: &Coloring, b: Bicolor) -> State {
    let levels = topo.words.len();
    let kept = |(t, p): Point| b.meet(c.get(topo.seg_edge[t][p])) == 1;
    let dir_of = |(t, p): Point| {
        let s = topo.words[t][p];
        if c.get(topo.seg_edge[t][p]).contains(b.hi) {
            s.dir
        } else {
            s.dir.flip()
        }
    };

    let mut above: Vec<Vec<Option<Link>>> =
        topo.words.iter().map(|w| vec![None; w.len()]).collect();
    let mut below = above.clone();
    let mut connect = |a: Point, b: Point, via: Option<(i64, i64)>| {
        for (x, y) in [(a, b), (b, a)] {
            // A point's link lies above it when the link reaches a higher level or
            // passes through the slice above it.
            let up = y.0 > x.0 || via.is_some_and(|v| v.1 > coords(x).1);
            let slot = if up {
                &mut above[x.0][x.1]
            } else {
                &mut below[x.0][x.1]
            };
            assert!(slot.is_none(), "state point linked twice");
            *slot = Some(Link { to: y, via });
        }
    };

    for (t, s) in w.slices().iter().enumerate() {
        let width = topo.words[t].len();
        let center = (2 * s.pos() as i64 + 1, 2 * t as i64 + 1);
        let (lo, hi, shift): (usize, usize, isize) = match *s {
            Slice::Cup { pos, .. } => (pos, pos, 2),
            Slice::Cap { pos, .. } => (pos, pos + 2, -2),
            Slice::Merge { pos, .. } => (pos, pos + 2, -1),
            Slice::Split { pos, .. } => (pos, pos + 1, 1),
        };
        for p in (0..lo).chain(hi..width) {
            let q = if p < lo {
                p
            } else {
                (p as isize + shift) as usize
            };
            if kept((t, p)) {
                connect((t, p), (t + 1, q), None);
            }
        }
        let legs: Vec<Point> = match *s {
            Slice::Cup { pos, .. } => vec![(t + 1, pos), (t + 1, pos + 1)],
            Slice::Cap { pos, .. } => vec![(t, pos), (t, pos + 1)],
            Slice::Merge { pos, .. } => vec![(t, pos), (t, pos + 1), (t + 1, pos)],
            Slice::Split { pos, .. } => vec![(t, pos), (t + 1, pos), (t + 1, pos + 1)],
        };
        let live: Vec<Point> = legs.into_iter().filter(|&x| kept(x)).collect();
        match live.len() {
            0 => {}
            2 => connect(live[0], live[1], Some(center)),
            k => panic!("slice {t}: {k} state legs meet at one point"),
        }
    }

    let mut seen: Vec<Vec<bool>> = topo.words.iter().map(|w| vec![false; w.len()]).collect();
    let mut out = State::default();
    let last = levels - 1;

    // Walks forward from `start` until it returns or leaves through the boundary.
    let walk = |start: Point, seen: &mut Vec<Vec<bool>>| -> (Vec<(i64, i64)>, Point, bool) {
        let mut path = vec![coords(start)];
        let mut cur = start;
        seen[cur.0][cur.1] = true;
        loop {
            let d = dir_of(cur);
            let link = if d == Dir::Up {
                above[cur.0][cur.1]
            } else {
                below[cur.0][cur.1]
            };
            let Some(link) = link else {
                return (path, cur, false);
            };
            if let Some(v) = link.via {
                path.push(v);
            }
            let next = link.to;
            // Arriving from below the next point must keep travelling up, and vice versa.
            let arrived_from_below = link.via.map_or(next.0 > cur.0, |v| v.1 < coords(next).1);
            let expect = if arrived_from_below {
                Dir::Up
            } else {
                Dir::Down
            };
            assert_eq!(dir_of(next), expect, "state orientation is inconsistent");
            if next == start {
                return (path, next, true);
            }
            path.push(coords(next));
            seen[next.0][next.1] = true;
            cur = next;
        }
    };

    // With no slices the single word is both boundaries, so the side comes from
    // the direction of travel: a curve enters upward through the bottom and
    // leaves upward through the top.
    let side = |(t, p): Point, up: bool| {
        debug_assert!(t == if up { last } else { 0 });
        (if up { Boundary::Top } else { Boundary::Bottom }, p)
    };

    // Arcs start where a kept boundary strand points into the diagram.
    let mut starts = Vec::new();
    for p in 0..topo.words[0].len() {
        if kept((0, p)) && dir_of((0, p)) == Dir::Up {
            starts.push((0, p));
        }
    }
    for p in 0..topo.words[last].len() {
        if kept((last, p)) && dir_of((last, p)) == Dir::Down {
            starts.push((last, p));
        }
    }
    for s in starts {
        if seen[s.0][s.1] {
            continue;
        }
        let (path, end, closed) = walk(s, &mut seen);
        assert!(!closed);
        let start = side(s, dir_of(s) == Dir::Down);
        out.arcs.push(Arc {
            path,
            start,
            end: side(end, dir_of(end) == Dir::Up),
        });
    }
    for t in 0..levels {
        for p in 0..topo.words[t].len() {
            if kept((t, p)) && !seen[t][p] {
                let (path, _, closed) = walk((t, p), &mut seen);
                assert!(closed, "open state curve away from the boundary");
                let area2: i64 = (0..path.len())
                    .map(|i| {
                        let (x0, y0) = path[i];
                        let (x1, y1) = path[(i + 1) % path.len()];
                        x0 * y1 - x1 * y0
                    })
                    .sum();
                assert_ne!(area2, 0, "degenerate state circle");
                out.circles.push(Circle {
                    path,
                    counterclockwise: area2 > 0,
                });
            }
        }
    }
    out
}

/// `C₊ − C₋ + ½(TR − TL − BR + BL)`: circles count ±1 by orientation, arcs with both
/// ends on the same boundary count ±½ by the side they run towards.
pub fn state_degree(s: &State) -> HalfInt {
    let mut h = 0;
    for c in &s.circles {
        h += if c.counterclockwise { 2 } else { -2 };
    }
    for a in &s.arcs {
        let rightward = a.end.1 > a.start.1;
        h += match (a.start.0, a.end.0) {
            (Boundary::Top, Boundary::Top) => {
                if rightward {
                    1
                } else {
                    -1
                }
            }
            (Boundary::Bottom, Boundary::Bottom) => {
                if rightward {
                    -1
                } else {
                    1
                }
            }
            _ => 0,
        };
    }
    HalfInt::from_half_units(h)
}

/// Degree of `c` as the sum of explicit state degrees over all bicolors.
pub fn oracle_degree(w: &WebDiagram, topo: &Topology, c: &Coloring) -> HalfInt {
    bicolors(w.n())
        .map(|b| state_degree(&state(w, topo, c, b)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{coloring_degree, enumerate_colorings, ColorSet};
    use crate::web::{circle, parse, theta};

    fn b12() -> Bicolor {
        Bicolor::new(1, 2).unwrap()
    }

    #[test]
    fn circle_states() {
        let w = circle(2, 1);
        let topo = w.topology();
        let s = state(
            &w,
            &topo,
            &Coloring(vec![ColorSet::from_colors([2])]),
            b12(),
        );
        assert_eq!(s.circles.len(), 1);
        assert!(s.circles[0].counterclockwise);
        let s = state(
            &w,
            &topo,
            &Coloring(vec![ColorSet::from_colors([1])]),
            b12(),
        );
        assert!(!s.circles[0].counterclockwise);
        let w = circle(2, 2);
        let s = state(
            &w,
            &w.topology(),
            &Coloring(vec![ColorSet::from_colors([1, 2])]),
            b12(),
        );
        assert_eq!(s, State::default());
        assert_eq!(state_degree(&s), HalfInt::ZERO);
    }

    #[test]
    fn top_to_top_rightward_arc() {
        let w = parse("web N=2\ncup 0 1 rightward").unwrap();
        let topo = w.topology();
        let s = state(
            &w,
            &topo,
            &Coloring(vec![ColorSet::from_colors([2])]),
            b12(),
        );
        assert_eq!(s.arcs.len(), 1);
        assert_eq!(
            (s.arcs[0].start, s.arcs[0].end),
            ((Boundary::Top, 0), (Boundary::Top, 1))
        );
        assert_eq!(state_degree(&s), HalfInt::from_half_units(1));
    }

    #[test]
    fn both_paths_agree_on_small_webs() {
        for w in [
            circle(3, 1),
            circle(3, 2),
            theta(3, 1, 1),
            theta(4, 1, 2),
            theta(4, 2, 2),
        ] {
            let topo = w.topology();
            for c in enumerate_colorings(&w) {
                assert_eq!(
                    coloring_degree(&w, &topo, &c),
                    oracle_degree(&w, &topo, &c),
                    "{w}"
                );
            }
        }
    }
}
