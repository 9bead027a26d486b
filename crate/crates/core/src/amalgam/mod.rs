//! Free products with amalgamation `P = G *_A H`.
//!
//! Elements are kept in normal form: an element of `A` (stored in `G`'s
//! copy) on the left, followed by an alternating sequence of canonical
//! right-coset representatives of `A`, none of them trivial. Left
//! multiplication by a factor element only touches the first syllable, so
//! every product is computed by prepending letters from the right.

mod conjugacy;
mod roots;

pub use conjugacy::CyclicForm;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{
    nondegenerate_witnesses, FactorElement, FactorGroup, Identification, NondegenerateTriple, SubgroupKind,
    SubgroupOracle,
};
use crate::witness::Exponents;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    G,
    H,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::G => Side::H,
            Side::H => Side::G,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::G => "G",
            Side::H => "H",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub side: Side,
    pub elem: FactorElement,
}

/// An element of `G *_A H` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmalgamWord {
    prefix: FactorElement,
    syllables: Vec<Syllable>,
}

impl AmalgamWord {
    pub fn prefix(&self) -> &FactorElement {
        &self.prefix
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Number of syllables; zero exactly for elements of `A`.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    fn first_side(&self) -> Option<Side> {
        self.syllables.first().map(|s| s.side)
    }

    fn last_side(&self) -> Option<Side> {
        self.syllables.last().map(|s| s.side)
    }
}

impl Ord for AmalgamWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| {
                self.syllables
                    .iter()
                    .map(|s| s.side)
                    .cmp(other.syllables.iter().map(|s| s.side))
            })
            .then_with(|| {
                self.syllables
                    .iter()
                    .map(|s| &s.elem)
                    .cmp(other.syllables.iter().map(|s| &s.elem))
            })
            .then_with(|| self.prefix.cmp(&other.prefix))
    }
}

impl PartialOrd for AmalgamWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Normal form under construction, syllables stored last-to-first so that
/// left multiplication works at the end of the vector.
struct Reversed {
    prefix: FactorElement,
    rev: Vec<Syllable>,
}

impl Reversed {
    fn finish(mut self) -> AmalgamWord {
        self.rev.reverse();
        AmalgamWord {
            prefix: self.prefix,
            syllables: self.rev,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AmalgamGroup {
    g: FactorGroup,
    h: FactorGroup,
    a_g: SubgroupOracle,
    a_h: SubgroupOracle,
    to_h: Identification,
    to_g: Identification,
    window: u32,
}

impl AmalgamGroup {
    /// Builds `G *_A H` where the i-th element (or generator) of `a_g` is
    /// identified with the i-th of `a_h`. `window` bounds searches in
    /// infinite factors.
    pub fn new(g: FactorGroup, a_g: SubgroupKind, h: FactorGroup, a_h: SubgroupKind, window: u32) -> Result<Self> {
        let a_g = SubgroupOracle::new(&g, a_g)?;
        let a_h = SubgroupOracle::new(&h, a_h)?;
        let (to_h, to_g) = Identification::from_parallel(&g, &a_g, &h, &a_h)?;
        Ok(AmalgamGroup {
            g,
            h,
            a_g,
            a_h,
            to_h,
            to_g,
            window,
        })
    }

    pub fn factor(&self, side: Side) -> &FactorGroup {
        match side {
            Side::G => &self.g,
            Side::H => &self.h,
        }
    }

    pub fn subgroup(&self, side: Side) -> &SubgroupOracle {
        match side {
            Side::G => &self.a_g,
            Side::H => &self.a_h,
        }
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    /// `A` proper in both factors.
    pub fn is_nontrivial(&self) -> bool {
        self.a_g.is_proper(&self.g) && self.a_h.is_proper(&self.h)
    }

    /// Strict non-degeneracy witnesses: `g` outside `A` in one factor and
    /// `h`, `h'` outside `A` in the other with `A h A != A h' A`.
    pub fn nondegenerate_witnesses(&self) -> Option<NondegenerateTriple> {
        nondegenerate_witnesses(&self.g, &self.a_g, &self.h, &self.a_h, self.window)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.is_nontrivial() && self.nondegenerate_witnesses().is_some()
    }

    /// Both factors of order two over a trivial `A`.
    pub fn is_dihedral(&self) -> bool {
        self.a_g.is_trivial() && self.g.order() == Some(2) && self.h.order() == Some(2)
    }

    /// An element of `A`, given in `G`'s copy, moved to `side`'s copy.
    fn a_to(&self, a: &FactorElement, side: Side) -> FactorElement {
        match side {
            Side::G => a.clone(),
            Side::H => self.to_h.map(a),
        }
    }

    fn a_from(&self, a: &FactorElement, side: Side) -> FactorElement {
        match side {
            Side::G => a.clone(),
            Side::H => self.to_g.map(a),
        }
    }

    pub fn identity(&self) -> AmalgamWord {
        AmalgamWord {
            prefix: self.g.identity(),
            syllables: Vec::new(),
        }
    }

    pub fn is_identity(&self, x: &AmalgamWord) -> bool {
        x.syllables.is_empty() && self.g.is_identity(&x.prefix)
    }

    fn lmul(&self, w: &mut Reversed, side: Side, y: &FactorElement) {
        let f = self.factor(side);
        let a = self.subgroup(side);
        let z = f.mul(y, &self.a_to(&w.prefix, side));
        match w.rev.last_mut() {
            Some(first) if first.side == side => {
                let (pre, r) = a.coset_rep(f, &f.mul(&z, &first.elem));
                w.prefix = self.a_from(&pre, side);
                if f.is_identity(&r) {
                    w.rev.pop();
                } else {
                    first.elem = r;
                }
            }
            _ => {
                let (pre, r) = a.coset_rep(f, &z);
                w.prefix = self.a_from(&pre, side);
                if !f.is_identity(&r) {
                    w.rev.push(Syllable { side, elem: r });
                }
            }
        }
    }

    fn reversed(x: &AmalgamWord) -> Reversed {
        Reversed {
            prefix: x.prefix.clone(),
            rev: x.syllables.iter().rev().cloned().collect(),
        }
    }

    /// Normal form of a single factor element.
    pub fn letter(&self, side: Side, x: &FactorElement) -> AmalgamWord {
        let mut w = Self::reversed(&self.identity());
        self.lmul(&mut w, side, x);
        w.finish()
    }

    /// Normal form of the product of factor-tagged letters.
    pub fn reduce(&self, raw: &[(Side, FactorElement)]) -> Result<AmalgamWord> {
        for (side, x) in raw {
            self.factor(*side).validate(x)?;
        }
        let mut w = Self::reversed(&self.identity());
        for (side, x) in raw.iter().rev() {
            self.lmul(&mut w, *side, x);
        }
        Ok(w.finish())
    }

    /// Rebuilds a word from raw parts, validating each piece.
    pub fn from_parts(&self, prefix: FactorElement, syllables: Vec<Syllable>) -> Result<AmalgamWord> {
        self.g.validate(&prefix)?;
        if !self.a_g.is_member(&self.g, &prefix) {
            return Err(Error::MalformedElement(
                "prefix outside the amalgamated subgroup".into(),
            ));
        }
        let mut raw = vec![(Side::G, prefix)];
        raw.extend(syllables.into_iter().map(|s| (s.side, s.elem)));
        self.reduce(&raw)
    }

    pub fn mul(&self, x: &AmalgamWord, y: &AmalgamWord) -> AmalgamWord {
        let mut w = Self::reversed(y);
        for s in x.syllables.iter().rev() {
            self.lmul(&mut w, s.side, &s.elem);
        }
        self.lmul(&mut w, Side::G, &x.prefix);
        w.finish()
    }

    pub fn invert(&self, x: &AmalgamWord) -> AmalgamWord {
        let mut w = Reversed {
            prefix: self.g.inv(&x.prefix),
            rev: Vec::new(),
        };
        for s in &x.syllables {
            self.lmul(&mut w, s.side, &self.factor(s.side).inv(&s.elem));
        }
        w.finish()
    }

    /// `c x c^-1`.
    pub fn conjugate(&self, c: &AmalgamWord, x: &AmalgamWord) -> AmalgamWord {
        self.mul(&self.mul(c, x), &self.invert(c))
    }

    pub fn length(&self, x: &AmalgamWord) -> usize {
        x.len()
    }

    /// `x^d`; negative exponents go through the inverse.
    pub fn power(&self, x: &AmalgamWord, d: i64) -> AmalgamWord {
        let mut base = if d < 0 { self.invert(x) } else { x.clone() };
        let mut e = d.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The element `A`-prefix times the first `m` syllables.
    fn initial_segment(&self, x: &AmalgamWord, m: usize) -> AmalgamWord {
        AmalgamWord {
            prefix: x.prefix.clone(),
            syllables: x.syllables[..m].to_vec(),
        }
    }

    fn a_letter(&self, a: &FactorElement) -> AmalgamWord {
        AmalgamWord {
            prefix: a.clone(),
            syllables: Vec::new(),
        }
    }

    /// Elements of `A` (in `G`'s copy) when `A` is finite.
    pub fn a_elements(&self) -> Option<Vec<FactorElement>> {
        self.a_g.elements(&self.g)
    }

    /// `A` central in both factors, hence in `P`.
    pub fn a_is_central(&self) -> bool {
        self.a_g.is_central(&self.g) && self.a_h.is_central(&self.h)
    }

    /// The witness `(g h)^alpha (g h' g h'^-1)^beta`, using `g` from one
    /// factor and `h`, `h'` from the other.
    pub fn witness_word(&self, triple: &NondegenerateTriple, e: Exponents) -> AmalgamWord {
        let (gs, hs) = if triple.swapped {
            (Side::H, Side::G)
        } else {
            (Side::G, Side::H)
        };
        let g = self.letter(gs, &triple.g);
        let h = self.letter(hs, &triple.h);
        let hp = self.letter(hs, &triple.h_prime);
        let hp_inv = self.invert(&hp);
        let gh = self.mul(&g, &h);
        let tail = self.mul(&self.mul(&self.mul(&g, &hp), &g), &hp_inv);
        self.mul(&self.power(&gh, e.alpha as i64), &self.power(&tail, e.beta as i64))
    }

    /// The letters used to build witnesses: strict non-degeneracy witnesses
    /// when they exist, otherwise `h`, `h'` in distinct right cosets of `A`.
    pub fn witness_triple(&self) -> Result<NondegenerateTriple> {
        if !self.is_nontrivial() {
            return Err(Error::Degenerate(
                "the amalgamated subgroup is not proper in both factors".into(),
            ));
        }
        crate::factors::witness_triple(&self.g, &self.a_g, &self.h, &self.a_h, self.window).ok_or_else(|| {
            if self.is_dihedral() {
                Error::Degenerate("dihedral case Z/2 * Z/2".into())
            } else {
                Error::Degenerate("no factor has two elements outside A in distinct cosets".into())
            }
        })
    }

    /// Candidate witness for the given verification round: the exponent
    /// schedule `alpha = d(n+4)`, `beta = d(3n+4)(n+1)`, doubled per level.
    pub fn witness_alpha(&self, d: u32, n: u32, level: usize) -> Result<(AmalgamWord, Exponents)> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("d must exceed 1, got {d}")));
        }
        let triple = self.witness_triple()?;
        let e = Exponents::escalating(d, n, level);
        Ok((self.witness_word(&triple, e), e))
    }

    fn format_factor(&self, side: Side, x: &FactorElement) -> String {
        let f = self.factor(side);
        match f {
            FactorGroup::Table(t) if t.names().is_some() => f.format(x),
            _ => format!("{side}:{}", f.format(x)),
        }
    }

    pub fn format(&self, x: &AmalgamWord) -> String {
        if self.is_identity(x) {
            return "identity".into();
        }
        let mut parts = Vec::new();
        if !self.g.is_identity(&x.prefix) {
            parts.push(self.format_factor(Side::G, &x.prefix));
        }
        for s in &x.syllables {
            parts.push(self.format_factor(s.side, &s.elem));
        }
        parts.join(" ")
    }

    /// Canonically sorted list of all elements of length at most `n`, with
    /// infinite factors (and an infinite `A`) cut down to the window.
    /// Returns the list and whether it is exact.
    pub fn ball(&self, n: usize, cap: usize) -> Result<(Vec<AmalgamWord>, bool)> {
        let prefixes = self.a_g.window_elements(&self.g, self.window);
        let reps = |side: Side| -> Vec<FactorElement> {
            let f = self.factor(side);
            let a = self.subgroup(side);
            let mut r: Vec<FactorElement> = f
                .window(self.window)
                .iter()
                .map(|x| a.coset_rep(f, x).1)
                .filter(|r| !f.is_identity(r))
                .collect();
            r.sort();
            r.dedup();
            r
        };
        let (rg, rh) = (reps(Side::G), reps(Side::H));
        let exact = self.g.is_finite() && self.h.is_finite() && self.a_g.is_finite();

        let mut projected = 1usize;
        let (mut from_g, mut from_h) = (1usize, 1usize);
        for l in 1..=n {
            let (ng, nh) = if l % 2 == 1 {
                (from_g.saturating_mul(rg.len()), from_h.saturating_mul(rh.len()))
            } else {
                (from_g.saturating_mul(rh.len()), from_h.saturating_mul(rg.len()))
            };
            from_g = ng;
            from_h = nh;
            projected = projected.saturating_add(ng).saturating_add(nh);
        }
        let projected = projected.saturating_mul(prefixes.len());
        if projected > cap {
            return Err(Error::CapExceeded(format!(
                "ball of radius {n} would hold {projected} elements (cap {cap})"
            )));
        }

        let mut seqs: Vec<Vec<Syllable>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<Syllable>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for seq in &frontier {
                let sides: &[Side] = match seq.last() {
                    None => &[Side::G, Side::H],
                    Some(s) if s.side == Side::G => &[Side::H],
                    Some(_) => &[Side::G],
                };
                for &side in sides {
                    let pool = if side == Side::G { &rg } else { &rh };
                    for r in pool {
                        let mut s = seq.clone();
                        s.push(Syllable { side, elem: r.clone() });
                        next.push(s);
                    }
                }
            }
            seqs.extend(next.iter().cloned());
            frontier = next;
        }
        let mut out = Vec::with_capacity(projected);
        for seq in &seqs {
            for p in &prefixes {
                out.push(AmalgamWord {
                    prefix: p.clone(),
                    syllables: seq.clone(),
                });
            }
        }
        out.sort();
        Ok((out, exact))
    }
}
