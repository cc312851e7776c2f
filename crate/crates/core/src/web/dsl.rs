//! Line-oriented text format for diagrams.
//!
//! ```text
//! web N=3
//! bottom [u1 d2]
//! cup 0 1 rightward
//! cap 0 leftward
//! merge 0 (u1,u1) -> (u2)
//! split 0 (u2) -> (u1,u1)
//! ```
//!
//! `#` starts a comment. The `bottom` line is optional and its brackets may be omitted.

use std::fmt::Write as _;

use super::{Dir, Slice, Strand, Turn, WebDiagram};
use crate::error::{Error, Result};

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.text[..self.at].chars().count() + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.at..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.at += c.len_utf8();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.at == self.text.len()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.text[self.at..].starts_with(tok) {
            self.at += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.at..];
        let len = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '-' || c == '_'))
            .unwrap_or(rest.len());
        self.at += len;
        &rest[..len]
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.at;
        let w = self.word();
        match w.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.at = start;
                self.err(format!("expected an integer, found `{w}`"))
            }
        }
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.at;
        let v = self.int()?;
        usize::try_from(v).or_else(|_| {
            self.at = start;
            self.skip_ws();
            self.err("position must be non-negative")
        })
    }

    fn strand(&mut self) -> Result<Strand> {
        self.skip_ws();
        let start = self.at;
        let w = self.word();
        let dir = match w.chars().next() {
            Some('u') => Dir::Up,
            Some('d') => Dir::Down,
            _ => {
                self.at = start;
                return self.err(format!("expected a strand like `u2` or `d1`, found `{w}`"));
            }
        };
        match w[1..].parse() {
            Ok(label) => Ok(Strand::new(dir, label)),
            Err(_) => {
                self.at = start;
                self.err(format!("bad strand label in `{w}`"))
            }
        }
    }

    fn turn(&mut self) -> Result<Turn> {
        self.skip_ws();
        let start = self.at;
        match self.word() {
            "rightward" => Ok(Turn::Rightward),
            "leftward" => Ok(Turn::Leftward),
            w => {
                self.at = start;
                self.err(format!("expected `rightward` or `leftward`, found `{w}`"))
            }
        }
    }

    fn strand_tuple<const K: usize>(&mut self) -> Result<[Strand; K]> {
        self.expect("(")?;
        let mut out = [Strand::up(0); K];
        for (i, slot) in out.iter_mut().enumerate() {
            if i > 0 {
                self.expect(",")?;
            }
            *slot = self.strand()?;
        }
        self.expect(")")?;
        Ok(out)
    }
}

/// Parses and validates a diagram.
pub fn parse(text: &str) -> Result<WebDiagram> {
    let mut n = None;
    let mut bottom = None;
    let mut slices = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor {
            line: i + 1,
            text: content,
            at: 0,
        };
        if cur.at_end() {
            continue;
        }
        let kw_start = cur.at;
        let kw = cur.word();
        if n.is_none() && kw != "web" {
            cur.at = kw_start;
            return cur.err("the first line must be `web N=<int>`");
        }
        match kw {
            "web" => {
                if n.is_some() {
                    cur.at = kw_start;
                    return cur.err("duplicate `web` header");
                }
                cur.expect("N")?;
                cur.expect("=")?;
                let at = cur.at;
                let v = cur.int()?;
                if v <= 0 || v > 32 {
                    cur.at = at;
                    cur.skip_ws();
                    return cur.err("N must be between 1 and 32");
                }
                n = Some(v as u32);
            }
            "bottom" => {
                if bottom.is_some() || !slices.is_empty() {
                    cur.at = kw_start;
                    return cur.err("`bottom` must appear once, before any slice");
                }
                let bracketed = cur.eat("[");
                let mut word = Vec::new();
                loop {
                    if bracketed && cur.eat("]") {
                        break;
                    }
                    if !bracketed && cur.at_end() {
                        break;
                    }
                    if bracketed && cur.at_end() {
                        return cur.err("missing `]`");
                    }
                    word.push(cur.strand()?);
                }
                bottom = Some(word);
            }
            "cup" => {
                let pos = cur.index()?;
                let label = cur.int()?;
                let turn = cur.turn()?;
                slices.push(Slice::Cup { pos, label, turn });
            }
            "cap" => {
                let pos = cur.index()?;
                let turn = cur.turn()?;
                slices.push(Slice::Cap { pos, turn });
            }
            "merge" => {
                let pos = cur.index()?;
                let inputs = cur.strand_tuple::<2>()?;
                cur.expect("->")?;
                let [output] = cur.strand_tuple::<1>()?;
                slices.push(Slice::Merge {
                    pos,
                    inputs,
                    output,
                });
            }
            "split" => {
                let pos = cur.index()?;
                let [input] = cur.strand_tuple::<1>()?;
                cur.expect("->")?;
                let outputs = cur.strand_tuple::<2>()?;
                slices.push(Slice::Split {
                    pos,
                    input,
                    outputs,
                });
            }
            other => {
                cur.at = kw_start;
                return cur.err(format!("unknown keyword `{other}`"));
            }
        }
        if !cur.at_end() {
            return cur.err("unexpected trailing text");
        }
    }
    let Some(n) = n else {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "missing `web N=<int>` header".into(),
        });
    };
    WebDiagram::new(n, bottom.unwrap_or_default(), slices)
}

fn turn_name(t: Turn) -> &'static str {
    match t {
        Turn::Rightward => "rightward",
        Turn::Leftward => "leftward",
    }
}

/// Canonical text: header, optional bottom line, one slice per line, single spaces.
pub fn serialize(w: &WebDiagram) -> String {
    let mut out = format!("web N={}\n", w.n());
    if !w.bottom().is_empty() {
        let word: Vec<String> = w.bottom().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "bottom [{}]", word.join(" "));
    }
    for s in w.slices() {
        let _ = match *s {
            Slice::Cup { pos, label, turn } => {
                writeln!(out, "cup {pos} {label} {}", turn_name(turn))
            }
            Slice::Cap { pos, turn } => writeln!(out, "cap {pos} {}", turn_name(turn)),
            Slice::Merge {
                pos,
                inputs,
                output,
            } => {
                writeln!(
                    out,
                    "merge {pos} ({},{}) -> ({output})",
                    inputs[0], inputs[1]
                )
            }
            Slice::Split {
                pos,
                input,
                outputs,
            } => {
                writeln!(
                    out,
                    "split {pos} ({input}) -> ({},{})",
                    outputs[0], outputs[1]
                )
            }
        };
    }
    out
}

impl std::fmt::Display for WebDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&serialize(self))
    }
}

impl std::str::FromStr for WebDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::circle;

    #[test]
    fn parses_the_smallest_closed_web() {
        let w = parse("web N=2\ncup 0 1 rightward\ncap 0 leftward").unwrap();
        assert_eq!(w, circle(2, 1));
        assert!(w.is_closed());
    }

    #[test]
    fn cap_turn_must_match_the_strands() {
        // A rightward cup leaves (d1, u1), which only a leftward cap consumes.
        let err = parse("web N=2\ncup 0 1 rightward\ncap 0 rightward").unwrap_err();
        assert!(
            matches!(err, Error::Invalid(ref v) if v[0].slice == 1),
            "{err}"
        );
    }

    #[test]
    fn mismatched_cap_labels_are_rejected() {
        let err = parse("web N=3\nbottom [u1 d2]\ncap 0 rightward").unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("web N=2\ncup 0 1 sideways") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 9)),
            other => panic!("{other:?}"),
        }
        match parse("cup 0 1 rightward") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 1)),
            other => panic!("{other:?}"),
        }
        match parse("web N=2\nmerge 0 (u1 u1) -> (u2)") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 13)),
            other => panic!("{other:?}"),
        }
        assert!(parse("").is_err());
    }

    #[test]
    fn comments_blank_lines_and_bare_bottom() {
        let text = "# theta\nweb N=3   # rank\n\nbottom u2\nsplit 0 (u2) -> (u1,u1)\nmerge 0 (u1,u1) -> (u2)\n";
        let w = parse(text).unwrap();
        assert_eq!(w.bottom(), &[Strand::up(2)]);
        assert_eq!(
            serialize(&w),
            "web N=3\nbottom [u2]\nsplit 0 (u2) -> (u1,u1)\nmerge 0 (u1,u1) -> (u2)\n"
        );
    }

    #[test]
    fn round_trip() {
        let text = "web N=4\nbottom [u1 d3]\ncup 1 2 leftward\nmerge 0 (u1,u2) -> (u3)\nsplit 1 (d2) -> (d1,d1)\n";
        let w = parse(text).unwrap();
        assert_eq!(serialize(&w), text);
        assert_eq!(parse(&serialize(&w)).unwrap(), w);
    }
}
