//! Word specifications: whitespace-separated tokens
//!
//! ```text
//! word   := item*
//! item   := atom | "(" word ")" ("^" int)?
//! atom   := "G:" lit | "H:" lit | "A:" idx | "B:" idx | "t" | "t^" int
//! ```
//!
//! `lit` is an element literal of the factor (index, name, integer, tuple
//! like `(1,0)` or letter list like `[1,-2]`). `A:i` is the i-th listed
//! element, or i-th generator, of the amalgamated subgroup (of `A` in an
//! HNN extension); `B:i` refers to `B`. A negative repetition count
//! repeats the inverse.

use crate::amalgam::{AmalgamGroup, Side};
use crate::error::{Error, Result};
use crate::factors::{FactorElement, FactorGroup, SubgroupKind, SubgroupOracle};
use crate::hnn::{HnnGroup, HnnLetter};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Atom {
    G(String),
    H(String),
    A(usize),
    B(usize),
    T(i32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Atom(Atom, usize),
    Repeat(Vec<Node>, i64),
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::WordParse {
        position,
        message: message.into(),
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.text.len(), |c| c.0)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.i += 1;
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.i;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.i += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        let s: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
        s.parse().map_err(|_| {
            err(
                self.chars.get(start).map_or(self.text.len(), |c| c.0),
                "expected an integer",
            )
        })
    }

    fn seq(&mut self, nested: bool) -> Result<Vec<Node>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None if nested => return Err(err(self.pos(), "unclosed '('")),
                None => return Ok(out),
                Some(')') if nested => {
                    self.i += 1;
                    let k = if self.peek() == Some('^') {
                        self.i += 1;
                        self.int()?
                    } else {
                        1
                    };
                    return Ok(vec![Node::Repeat(out, k)]);
                }
                Some(')') => return Err(err(self.pos(), "unmatched ')'")),
                Some('(') => {
                    self.i += 1;
                    out.extend(self.seq(true)?);
                }
                Some(_) => out.push(self.atom()?),
            }
        }
    }

    fn atom(&mut self) -> Result<Node> {
        let start = self.pos();
        let mut s = String::new();
        let mut depth = 0usize;
        while let Some(c) = self.peek() {
            if depth == 0 && (c.is_whitespace() || c == ')') {
                break;
            }
            if c == '(' || c == '[' {
                if s.is_empty() {
                    break;
                }
                depth += 1;
            } else if (c == ')' || c == ']') && depth > 0 {
                depth -= 1;
            }
            s.push(c);
            self.i += 1;
        }
        let atom = if s == "t" {
            Atom::T(1)
        } else if let Some(k) = s.strip_prefix("t^") {
            let k: i32 = k.parse().map_err(|_| err(start, format!("bad exponent in '{s}'")))?;
            Atom::T(k)
        } else if let Some((tag, rest)) = s.split_once(':') {
            let index = |r: &str| {
                r.parse::<usize>()
                    .map_err(|_| err(start, format!("expected an index in '{s}'")))
            };
            match tag {
                "G" => Atom::G(rest.to_string()),
                "H" => Atom::H(rest.to_string()),
                "A" => Atom::A(index(rest)?),
                "B" => Atom::B(index(rest)?),
                _ => return Err(err(start, format!("unknown prefix '{tag}:'"))),
            }
        } else {
            return Err(err(start, format!("unrecognised token '{s}'")));
        };
        Ok(Node::Atom(atom, start))
    }
}

fn parse(text: &str) -> Result<Vec<Node>> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        i: 0,
        text,
    };
    p.seq(false)
}

fn subgroup_element(
    group: &FactorGroup,
    sub: &SubgroupOracle,
    i: usize,
    pos: usize,
    name: &str,
) -> Result<FactorElement> {
    let out_of_range = || err(pos, format!("{name}:{i} is out of range"));
    match sub.kind() {
        SubgroupKind::Trivial if i == 0 => Ok(group.identity()),
        SubgroupKind::Trivial => Err(out_of_range()),
        SubgroupKind::Finite(list) => list.get(i).cloned().ok_or_else(out_of_range),
        SubgroupKind::Lattice(gens) => {
            let v = gens.get(i).ok_or_else(out_of_range)?;
            let FactorGroup::Abelian(ab) = group else {
                unreachable!("lattice subgroups live in abelian groups")
            };
            Ok(ab.element(v.clone()))
        }
    }
}

fn expand<L: Clone>(
    nodes: &[Node],
    atom: &dyn Fn(&Atom, usize) -> Result<L>,
    invert: &dyn Fn(&L) -> L,
    out: &mut Vec<L>,
) -> Result<()> {
    for n in nodes {
        match n {
            Node::Atom(a, pos) => out.push(atom(a, *pos)?),
            Node::Repeat(inner, k) => {
                let mut body = Vec::new();
                expand(inner, atom, invert, &mut body)?;
                if *k < 0 {
                    body = body.iter().rev().map(invert).collect();
                }
                for _ in 0..k.unsigned_abs() {
                    out.extend(body.iter().cloned());
                }
            }
        }
    }
    Ok(())
}

fn with_position(pos: usize, e: Error) -> Error {
    match e {
        Error::WordParse { .. } => e,
        other => err(pos, other.to_string()),
    }
}

/// Factor-tagged letters for [`AmalgamGroup::reduce`].
pub fn parse_amalgam_word(p: &AmalgamGroup, text: &str) -> Result<Vec<(Side, FactorElement)>> {
    let nodes = parse(text)?;
    let atom = |a: &Atom, pos: usize| -> Result<(Side, FactorElement)> {
        match a {
            Atom::G(lit) => Ok((
                Side::G,
                p.factor(Side::G)
                    .parse_element(lit)
                    .map_err(|e| with_position(pos, e))?,
            )),
            Atom::H(lit) => Ok((
                Side::H,
                p.factor(Side::H)
                    .parse_element(lit)
                    .map_err(|e| with_position(pos, e))?,
            )),
            Atom::A(i) => Ok((
                Side::G,
                subgroup_element(p.factor(Side::G), p.subgroup(Side::G), *i, pos, "A")?,
            )),
            Atom::B(_) => Err(err(pos, "B: is only meaningful in HNN extensions")),
            Atom::T(_) => Err(err(pos, "t is only meaningful in HNN extensions")),
        }
    };
    let invert = |(s, x): &(Side, FactorElement)| (*s, p.factor(*s).inv(x));
    let mut out = Vec::new();
    expand(&nodes, &atom, &invert, &mut out)?;
    Ok(out)
}

/// Raw letters for [`HnnGroup::reduce`].
pub fn parse_hnn_word(g: &HnnGroup, text: &str) -> Result<Vec<HnnLetter>> {
    let nodes = parse(text)?;
    let base = g.base();
    let atom = |a: &Atom, pos: usize| -> Result<HnnLetter> {
        match a {
            Atom::G(lit) => Ok(HnnLetter::G(
                base.parse_element(lit).map_err(|e| with_position(pos, e))?,
            )),
            Atom::A(i) => Ok(HnnLetter::G(subgroup_element(base, g.a(), *i, pos, "A")?)),
            Atom::B(i) => Ok(HnnLetter::G(subgroup_element(base, g.b(), *i, pos, "B")?)),
            Atom::T(k) => Ok(HnnLetter::T(*k)),
            Atom::H(_) => Err(err(pos, "H: is only meaningful in amalgams")),
        }
    };
    let invert = |l: &HnnLetter| match l {
        HnnLetter::G(x) => HnnLetter::G(base.inv(x)),
        HnnLetter::T(k) => HnnLetter::T(-k),
    };
    let mut out = Vec::new();
    expand(&nodes, &atom, &invert, &mut out)?;
    Ok(out)
}
