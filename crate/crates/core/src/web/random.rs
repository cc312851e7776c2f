//! Generators of closed MOY diagrams: seeded random ones for oracle testing and
//! ladders for benchmarking.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_slice, Dir, Slice, Strand, Turn, WebDiagram};

/// Moves that keep every vertex an exact MOY vertex.
fn candidate_moves(word: &[Strand], n: i64) -> Vec<Slice> {
    let mut out = Vec::new();
    for pos in 0..=word.len() {
        for label in 1..=n {
            out.push(Slice::Cup {
                pos,
                label,
                turn: Turn::Rightward,
            });
            out.push(Slice::Cup {
                pos,
                label,
                turn: Turn::Leftward,
            });
        }
    }
    for pos in 0..word.len().saturating_sub(1) {
        let (a, b) = (word[pos], word[pos + 1]);
        if a.label == b.label && a.dir != b.dir {
            let turn = if a.dir == Dir::Up {
                Turn::Rightward
            } else {
                Turn::Leftward
            };
            out.push(Slice::Cap { pos, turn });
        }
        let output = if a.dir == b.dir {
            Some(Strand::new(a.dir, a.label + b.label))
        } else {
            // The upward leg carries the sum on the incoming side; the result keeps the larger side.
            let (up, down) = if a.dir == Dir::Up {
                (a.label, b.label)
            } else {
                (b.label, a.label)
            };
            match up - down {
                0 => None,
                diff if diff > 0 => Some(Strand::up(diff)),
                diff => Some(Strand::down(-diff)),
            }
        };
        if let Some(o) = output.filter(|o| o.label <= n) {
            out.push(Slice::Merge {
                pos,
                inputs: [a, b],
                output: o,
            });
        }
    }
    for (pos, &s) in word.iter().enumerate() {
        for a in 0..=s.label {
            let outputs = [Strand::new(s.dir, a), Strand::new(s.dir, s.label - a)];
            out.push(Slice::Split {
                pos,
                input: s,
                outputs,
            });
        }
    }
    out
}

fn width_change(s: &Slice) -> isize {
    match s {
        Slice::Cup { .. } => 2,
        Slice::Cap { .. } => -2,
        Slice::Merge { .. } => -1,
        Slice::Split { .. } => 1,
    }
}

/// A random closed MOY diagram with between `min(4, max_slices)` and `max_slices` slices
/// and labels in `[0, N]`. Cups carry positive labels; splits may create 0-labeled edges.
pub fn random_closed_moy<R: Rng + ?Sized>(rng: &mut R, n: u32, max_slices: usize) -> WebDiagram {
    assert!(max_slices >= 2, "a closed diagram needs a cup and a cap");
    loop {
        let len = rng.gen_range(max_slices.min(4)..=max_slices);
        let mut word = Vec::new();
        let mut slices = Vec::new();
        let mut stuck = false;
        for step in 0..len {
            let remaining = (len - step - 1) as isize;
            let moves: Vec<Slice> = candidate_moves(&word, n as i64)
                .into_iter()
                .filter(|m| {
                    let w = word.len() as isize + width_change(m);
                    w <= 2 * remaining && (w > 0 || remaining == 0)
                })
                .collect();
            // Pick the kind of slice first so that vertices are not swamped by the many cups.
            let kinds: Vec<&str> = {
                let mut k: Vec<&str> = moves.iter().map(Slice::kind).collect();
                k.dedup();
                k
            };
            let Some(&kind) = kinds.choose(rng) else {
                stuck = true;
                break;
            };
            let of_kind: Vec<&Slice> = moves.iter().filter(|m| m.kind() == kind).collect();
            let m = *of_kind.choose(rng).expect("kind was drawn from the moves");
            apply_slice(&mut word, m);
            slices.push(*m);
        }
        if stuck || !word.is_empty() {
            continue;
        }
        let w = WebDiagram::from_parts(n, Vec::new(), slices);
        if w.is_moy() {
            return w;
        }
    }
}

/// `count` random closed MOY diagrams with four to six slices and ranks `2..=4`,
/// reproducible from `seed`.
pub fn random_corpus(seed: u64, count: usize) -> Vec<WebDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            random_closed_moy(&mut rng, n, 6)
        })
        .collect()
}

/// A ladder of `width` upward 1-strands with `height` layers of rungs.
///
/// A single `width`-labeled circle is split into 1-strands; each layer merges
/// alternate neighbouring pairs into a 2-strand and splits it again, like bricks.
/// Requires `N >= width >= 2`.
pub fn ladder(n: u32, width: usize, height: usize) -> WebDiagram {
    assert!(
        width >= 2 && width as u32 <= n,
        "ladder needs 2 <= width <= N"
    );
    let w = width as i64;
    let mut slices = vec![Slice::Cup {
        pos: 0,
        label: w,
        turn: Turn::Rightward,
    }];
    // Word is [d w, u w]; peel 1-strands off the left of the upward strand.
    for k in (2..=w).rev() {
        let pos = 1 + (w - k) as usize;
        slices.push(Slice::Split {
            pos,
            input: Strand::up(k),
            outputs: [Strand::up(1), Strand::up(k - 1)],
        });
    }
    for layer in 0..height {
        let mut i = layer % 2;
        let mut pairs = Vec::new();
        while i + 1 < width {
            pairs.push(i);
            i += 2;
        }
        if pairs.is_empty() {
            pairs.push(0);
        }
        for &p in pairs.iter().rev() {
            let pos = 1 + p;
            slices.push(Slice::Merge {
                pos,
                inputs: [Strand::up(1); 2],
                output: Strand::up(2),
            });
            slices.push(Slice::Split {
                pos,
                input: Strand::up(2),
                outputs: [Strand::up(1); 2],
            });
        }
    }
    for k in 2..=w {
        let pos = 1 + (w - k) as usize;
        slices.push(Slice::Merge {
            pos,
            inputs: [Strand::up(1), Strand::up(k - 1)],
            output: Strand::up(k),
        });
    }
    slices.push(Slice::Cap {
        pos: 0,
        turn: Turn::Leftward,
    });
    WebDiagram::from_parts(n, Vec::new(), slices)
}
