//! Builders for the diagrams of the defining skein relations.
//!
//! Every relation reads `LHS = Σ_j coefficient_j · RHS_j`. Open relations share a
//! single boundary word across all their diagrams.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Slice, Strand, Turn, WebDiagram};
use crate::error::{Error, Result};
use crate::laurent::{qbinom, qint, LaurentPoly};

pub type Params = BTreeMap<String, i64>;

/// The seven local relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// A circle labeled `k` evaluates to `[N, k]`.
    Circle,
    /// The two ways of splitting `i+j+k` into three agree.
    Assoc,
    /// A digon `m+n → (m, n) → m+n` is `[m+n, m]` times a strand.
    Digon,
    /// A digon with an opposite `n` edge on a strand `m` is `[N-m, n]` times a strand.
    OppositeDigon,
    /// Square on `(1, m)` strands of opposite direction.
    SquareOpposite,
    /// Square on `(1, m+l-1)` upward strands.
    SquareThin,
    /// General square on `(n, m+l)` upward strands with a rung `k`.
    Square,
}

/// Which diagram of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs(usize),
}

impl Relation {
    pub const ALL: [Relation; 7] = [
        Relation::Circle,
        Relation::Assoc,
        Relation::Digon,
        Relation::OppositeDigon,
        Relation::SquareOpposite,
        Relation::SquareThin,
        Relation::Square,
    ];

    /// Number used on the command line, `1..=7`.
    pub fn number(self) -> u8 {
        Self::ALL.iter().position(|&r| r == self).unwrap() as u8 + 1
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Relation::Circle => &["k"],
            Relation::Assoc => &["i", "j", "k"],
            Relation::Digon | Relation::OppositeDigon => &["m", "n"],
            Relation::SquareOpposite => &["m"],
            Relation::SquareThin => &["m", "l", "n"],
            Relation::Square => &["m", "n", "k", "l"],
        }
    }

    fn read(self, params: &Params) -> Result<Vec<i64>> {
        if let Some(extra) = params
            .keys()
            .find(|k| !self.param_names().contains(&k.as_str()))
        {
            return Err(Error::Inadmissible(format!(
                "relation {self} has no parameter `{extra}`"
            )));
        }
        self.param_names()
            .iter()
            .map(|&name| match params.get(name) {
                Some(&v) if v >= 0 => Ok(v),
                Some(&v) => Err(Error::Inadmissible(format!(
                    "{name}={v} must be non-negative"
                ))),
                None => Err(Error::Inadmissible(format!(
                    "relation {self} needs `{name}`"
                ))),
            })
            .collect::<Result<Vec<i64>>>()
            .and_then(|p| {
                // The thin square peels a 1-strand off the `m` side, so that side must be nonempty.
                if self == Relation::SquareThin && p[0] == 0 {
                    return Err(Error::Inadmissible("the thin square needs m >= 1".into()));
                }
                Ok(p)
            })
    }

    /// Right-hand terms `(coefficient, diagram)`.
    pub fn rhs_terms(self, params: &Params, n: u32) -> Result<Vec<(LaurentPoly, WebDiagram)>> {
        let p = self.read(params)?;
        let big_n = n as i64;
        let coeffs: Vec<LaurentPoly> = match self {
            Relation::Circle => vec![qbinom(big_n, p[0])],
            Relation::Assoc => vec![LaurentPoly::one()],
            Relation::Digon => vec![qbinom(p[0] + p[1], p[0])],
            Relation::OppositeDigon => vec![qbinom(big_n - p[0], p[1])],
            Relation::SquareOpposite => {
                let rung = big_n - p[0] - 1;
                let c = if rung >= 0 {
                    qint(rung)?
                } else {
                    LaurentPoly::zero()
                };
                vec![LaurentPoly::one(), c]
            }
            Relation::SquareThin => vec![qbinom(p[0] - 1, p[2]), qbinom(p[0] - 1, p[2] - 1)],
            Relation::Square => {
                let (k, l) = (p[2], p[3]);
                (0..=k).map(|j| qbinom(l, k - j)).collect()
            }
        };
        coeffs
            .into_iter()
            .enumerate()
            .map(|(j, c)| Ok((c, standard_web(self, params, Side::Rhs(j), n)?)))
            .collect()
    }

    /// Parameter tuples whose left-hand labels all lie in `[0, N]`.
    pub fn grid(self, n: u32) -> Vec<Params> {
        let names = self.param_names();
        let big_n = n as i64;
        let mut out = Vec::new();
        let mut values = vec![0i64; names.len()];
        loop {
            let params: Params = names
                .iter()
                .map(|s| s.to_string())
                .zip(values.iter().copied())
                .collect();
            if let Ok(w) = standard_web(self, &params, Side::Lhs, n) {
                if labels(&w).iter().all(|&x| (0..=big_n).contains(&x)) {
                    out.push(params);
                }
            }
            let mut i = 0;
            loop {
                if i == values.len() {
                    return out;
                }
                values[i] += 1;
                if values[i] <= big_n {
                    break;
                }
                values[i] = 0;
                i += 1;
            }
        }
    }
}

fn labels(w: &WebDiagram) -> Vec<i64> {
    w.topology().edges.iter().map(|e| e.label).collect()
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let by_name = match s {
            "circle" => Some(Relation::Circle),
            "assoc" => Some(Relation::Assoc),
            "digon" => Some(Relation::Digon),
            "opposite-digon" => Some(Relation::OppositeDigon),
            "square-opposite" => Some(Relation::SquareOpposite),
            "square-thin" => Some(Relation::SquareThin),
            "square" => Some(Relation::Square),
            _ => None,
        };
        by_name
            .or_else(|| {
                s.parse::<usize>()
                    .ok()
                    .filter(|k| (1..=7).contains(k))
                    .map(|k| Self::ALL[k - 1])
            })
            .ok_or_else(|| Error::Inadmissible(format!("unknown relation `{s}`")))
    }
}

fn u(l: i64) -> Strand {
    Strand::up(l)
}

fn d(l: i64) -> Strand {
    Strand::down(l)
}

fn cup(pos: usize, label: i64, turn: Turn) -> Slice {
    Slice::Cup { pos, label, turn }
}

fn cap(pos: usize, turn: Turn) -> Slice {
    Slice::Cap { pos, turn }
}

fn merge(pos: usize, a: Strand, b: Strand, out: Strand) -> Slice {
    Slice::Merge {
        pos,
        inputs: [a, b],
        output: out,
    }
}

fn split(pos: usize, input: Strand, a: Strand, b: Strand) -> Slice {
    Slice::Split {
        pos,
        input,
        outputs: [a, b],
    }
}

use Turn::{Leftward as L, Rightward as R};

/// One diagram of a relation. Labels may leave `[0, N]`; such diagrams are valid but uncolorable.
pub fn standard_web(rel: Relation, params: &Params, side: Side, n: u32) -> Result<WebDiagram> {
    let p = rel.read(params)?;
    let terms = match rel {
        Relation::SquareOpposite | Relation::SquareThin => 2,
        Relation::Square => p[2] as usize + 1,
        _ => 1,
    };
    if let Side::Rhs(j) = side {
        if j >= terms {
            return Err(Error::Inadmissible(format!(
                "relation {rel} has no right-hand term {j}"
            )));
        }
    }
    let (bottom, slices) = match (rel, side) {
        (Relation::Circle, Side::Lhs) => (vec![], vec![cup(0, p[0], R), cap(0, L)]),
        (Relation::Circle, Side::Rhs(_)) => (vec![], vec![]),
        (Relation::Assoc, _) => {
            let (i, j, k) = (p[0], p[1], p[2]);
            let slices = if side == Side::Lhs {
                vec![
                    split(0, u(i + j + k), u(i), u(j + k)),
                    split(1, u(j + k), u(j), u(k)),
                ]
            } else {
                vec![
                    split(0, u(i + j + k), u(i + j), u(k)),
                    split(0, u(i + j), u(i), u(j)),
                ]
            };
            (vec![u(i + j + k)], slices)
        }
        (Relation::Digon, Side::Lhs) => {
            let (m, n) = (p[0], p[1]);
            (
                vec![u(m + n)],
                vec![
                    split(0, u(m + n), u(m), u(n)),
                    merge(0, u(m), u(n), u(m + n)),
                ],
            )
        }
        (Relation::Digon, Side::Rhs(_)) => (vec![u(p[0] + p[1])], vec![]),
        (Relation::OppositeDigon, Side::Lhs) => {
            let (m, n) = (p[0], p[1]);
            (
                vec![u(m)],
                vec![
                    split(0, u(m), u(m + n), d(n)),
                    merge(0, u(m + n), d(n), u(m)),
                ],
            )
        }
        (Relation::OppositeDigon, Side::Rhs(_)) => (vec![u(p[0])], vec![]),
        (Relation::SquareOpposite, _) => {
            let m = p[0];
            let slices = match side {
                Side::Lhs => vec![
                    cup(1, m + 1, R),
                    merge(0, u(1), d(m + 1), d(m)),
                    merge(1, u(m + 1), d(m), u(1)),
                    split(0, d(m), u(1), d(m + 1)),
                    split(2, u(1), u(m + 1), d(m)),
                    cap(1, L),
                ],
                Side::Rhs(0) => vec![],
                Side::Rhs(_) => vec![
                    merge(0, u(1), d(m), d(m - 1)),
                    split(0, d(m - 1), u(1), d(m)),
                ],
            };
            (vec![u(1), d(m)], slices)
        }
        (Relation::SquareThin, _) => {
            let (m, l, n) = (p[0], p[1], p[2]);
            let slices = match side {
                Side::Lhs => vec![
                    cup(1, l + n - 1, L),
                    merge(0, u(1), u(l + n - 1), u(l + n)),
                    merge(1, d(l + n - 1), u(m + l - 1), u(m - n)),
                    split(0, u(l + n), u(l), u(n)),
                    split(2, u(m - n), d(n), u(m)),
                    cap(1, R),
                ],
                Side::Rhs(0) => vec![
                    split(1, u(m + l - 1), u(l - 1), u(m)),
                    split(0, u(1), u(l), d(l - 1)),
                    cap(1, L),
                ],
                Side::Rhs(_) => vec![
                    merge(0, u(1), u(m + l - 1), u(l + m)),
                    split(0, u(l + m), u(l), u(m)),
                ],
            };
            (vec![u(1), u(m + l - 1)], slices)
        }
        (Relation::Square, _) => {
            let (m, n, k, l) = (p[0], p[1], p[2], p[3]);
            let slices = match side {
                Side::Lhs => vec![
                    cup(1, k, L),
                    merge(0, u(n), u(k), u(n + k)),
                    merge(1, d(k), u(m + l), u(m + l - k)),
                    split(0, u(n + k), u(m), u(n + k - m)),
                    split(2, u(m + l - k), d(n + k - m), u(n + l)),
                    cap(1, R),
                ],
                Side::Rhs(j) => {
                    let j = j as i64;
                    vec![
                        cup(1, n + j - m, R),
                        merge(0, u(n), d(n + j - m), u(m - j)),
                        merge(1, u(n + j - m), u(m + l), u(n + l + j)),
                        split(0, u(m - j), u(m), d(j)),
                        split(2, u(n + l + j), u(j), u(n + l)),
                        cap(1, L),
                    ]
                }
            };
            (vec![u(n), u(m + l)], slices)
        }
    };
    WebDiagram::new(n, bottom, slices)
}

/// Builds a parameter map from `(name, value)` pairs.
pub fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}
