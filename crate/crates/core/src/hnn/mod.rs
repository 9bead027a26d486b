//! HNN extensions `G* = <G, t | t^-1 a t = phi(a), a in A>` with
//! `phi: A -> B`.
//!
//! Normal form `g0 t^e1 g1 ... t^en gn`: after `t` the next element is a
//! canonical right-coset representative of `B`, after `t^-1` one of `A`,
//! and no pinch `t^-1 a t` (a in A) or `t b t^-1` (b in B) occurs. Coset
//! parts travel left through `t b = phi^-1(b) t` and `t^-1 a = phi(a) t^-1`.

mod conjugacy;
mod roots;

pub use conjugacy::HnnCyclicForm;

use std::cmp::Ordering;

use crate::construction::check_degree;
use crate::error::{Error, Result};
use crate::factors::{simplicity_key, FactorElement, FactorGroup, Identification, SubgroupKind, SubgroupOracle};
use crate::witness::Exponents;

/// A raw letter: a base-group element or a power of the stable letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HnnLetter {
    G(FactorElement),
    T(i32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TLetter {
    /// `+1` or `-1`.
    pub exp: i8,
    pub elem: FactorElement,
}

/// An element of an HNN extension in Britton normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HnnWord {
    head: FactorElement,
    tail: Vec<TLetter>,
}

impl HnnWord {
    pub fn head(&self) -> &FactorElement {
        &self.head
    }

    pub fn tail(&self) -> &[TLetter] {
        &self.tail
    }

    pub fn t_length(&self) -> usize {
        self.tail.len()
    }

    pub fn exponents(&self) -> Vec<i8> {
        self.tail.iter().map(|l| l.exp).collect()
    }
}

impl Ord for HnnWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.t_length()
            .cmp(&other.t_length())
            .then_with(|| self.tail.iter().map(|l| l.exp).cmp(other.tail.iter().map(|l| l.exp)))
            .then_with(|| {
                self.tail
                    .iter()
                    .map(|l| &l.elem)
                    .cmp(other.tail.iter().map(|l| &l.elem))
            })
            .then_with(|| self.head.cmp(&other.head))
    }
}

impl PartialOrd for HnnWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Reversed {
    head: FactorElement,
    rev: Vec<TLetter>,
}

impl Reversed {
    fn finish(mut self) -> HnnWord {
        self.rev.reverse();
        HnnWord {
            head: self.head,
            tail: self.rev,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HnnGroup {
    base: FactorGroup,
    a: SubgroupOracle,
    b: SubgroupOracle,
    phi: Identification,
    phi_inv: Identification,
    window: u32,
}

impl HnnGroup {
    /// The i-th element (or generator) of `a` is sent to the i-th of `b`.
    pub fn new(base: FactorGroup, a: SubgroupKind, b: SubgroupKind, window: u32) -> Result<Self> {
        let a = SubgroupOracle::new(&base, a)?;
        let b = SubgroupOracle::new(&base, b)?;
        let (phi, phi_inv) = Identification::from_parallel(&base, &a, &base, &b)?;
        Ok(HnnGroup {
            base,
            a,
            b,
            phi,
            phi_inv,
            window,
        })
    }

    pub fn base(&self) -> &FactorGroup {
        &self.base
    }

    pub fn a(&self) -> &SubgroupOracle {
        &self.a
    }

    pub fn b(&self) -> &SubgroupOracle {
        &self.b
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn phi(&self, a: &FactorElement) -> Option<FactorElement> {
        self.phi.apply(a)
    }

    pub fn phi_inv(&self, b: &FactorElement) -> Option<FactorElement> {
        self.phi_inv.apply(b)
    }

    /// Both associated subgroups proper.
    pub fn is_nonascending(&self) -> bool {
        self.a.is_proper(&self.base) && self.b.is_proper(&self.base)
    }

    /// The simplest `g` outside `A` and `B` inside the window.
    pub fn nonascending_witness(&self) -> Result<FactorElement> {
        if !self.is_nonascending() {
            return Err(Error::Degenerate(
                "ascending extension: A or B is all of the base group".into(),
            ));
        }
        let mut cands = self.base.window(self.window);
        cands.sort_by_key(simplicity_key);
        cands
            .into_iter()
            .find(|g| !self.a.is_member(&self.base, g) && !self.b.is_member(&self.base, g))
            .ok_or_else(|| Error::Degenerate(format!("no element outside A and B within window {}", self.window)))
    }

    pub fn identity(&self) -> HnnWord {
        HnnWord {
            head: self.base.identity(),
            tail: Vec::new(),
        }
    }

    pub fn is_identity(&self, x: &HnnWord) -> bool {
        x.tail.is_empty() && self.base.is_identity(&x.head)
    }

    fn reversed(x: &HnnWord) -> Reversed {
        Reversed {
            head: x.head.clone(),
            rev: x.tail.iter().rev().cloned().collect(),
        }
    }

    fn lmul_g(&self, w: &mut Reversed, y: &FactorElement) {
        w.head = self.base.mul(y, &w.head);
    }

    fn lmul_t(&self, w: &mut Reversed, e: i8) {
        let (sub, through) = if e > 0 {
            (&self.b, &self.phi_inv)
        } else {
            (&self.a, &self.phi)
        };
        let (c, r) = sub.coset_rep(&self.base, &w.head);
        let moved = through.map(&c);
        let pinch = self.base.is_identity(&r) && w.rev.last().is_some_and(|l| l.exp == -e);
        if pinch {
            let next = w.rev.pop().expect("pinch partner");
            w.head = self.base.mul(&moved, &next.elem);
        } else {
            w.rev.push(TLetter { exp: e, elem: r });
            w.head = moved;
        }
    }

    pub fn g_letter(&self, g: &FactorElement) -> HnnWord {
        HnnWord {
            head: g.clone(),
            tail: Vec::new(),
        }
    }

    pub fn t_letter(&self, e: i8) -> HnnWord {
        let mut w = Self::reversed(&self.identity());
        self.lmul_t(&mut w, e);
        w.finish()
    }

    /// Britton normal form of a product of raw letters. `T(k)` stands for
    /// `t^k`.
    pub fn reduce(&self, raw: &[HnnLetter]) -> Result<HnnWord> {
        for l in raw {
            if let HnnLetter::G(g) = l {
                self.base.validate(g)?;
            }
        }
        let mut w = Self::reversed(&self.identity());
        for l in raw.iter().rev() {
            match l {
                HnnLetter::G(g) => self.lmul_g(&mut w, g),
                HnnLetter::T(k) => {
                    let e = if *k > 0 { 1 } else { -1 };
                    for _ in 0..k.unsigned_abs() {
                        self.lmul_t(&mut w, e);
                    }
                }
            }
        }
        Ok(w.finish())
    }

    pub fn mul(&self, x: &HnnWord, y: &HnnWord) -> HnnWord {
        let mut w = Self::reversed(y);
        for l in x.tail.iter().rev() {
            self.lmul_g(&mut w, &l.elem);
            self.lmul_t(&mut w, l.exp);
        }
        self.lmul_g(&mut w, &x.head);
        w.finish()
    }

    pub fn invert(&self, x: &HnnWord) -> HnnWord {
        let mut w = Reversed {
            head: self.base.inv(&x.head),
            rev: Vec::new(),
        };
        for l in &x.tail {
            self.lmul_t(&mut w, -l.exp);
            self.lmul_g(&mut w, &self.base.inv(&l.elem));
        }
        w.finish()
    }

    pub fn conjugate(&self, c: &HnnWord, x: &HnnWord) -> HnnWord {
        self.mul(&self.mul(c, x), &self.invert(c))
    }

    pub fn power(&self, x: &HnnWord, d: i64) -> HnnWord {
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

    /// `g0 t^e1 g1 ... t^ek`, stopping right after the k-th stable letter.
    fn prefix_through_t(&self, x: &HnnWord, k: usize) -> HnnWord {
        let mut tail: Vec<TLetter> = x.tail[..k].to_vec();
        if let Some(last) = tail.last_mut() {
            last.elem = self.base.identity();
        }
        HnnWord {
            head: x.head.clone(),
            tail,
        }
    }

    /// `(g t)^alpha (g t g t^-1)^beta`.
    pub fn witness_word(&self, g: &FactorElement, e: Exponents) -> HnnWord {
        let gl = self.g_letter(g);
        let gt = self.mul(&gl, &self.t_letter(1));
        let tail = self.mul(&self.mul(&gt, &gl), &self.t_letter(-1));
        self.mul(&self.power(&gt, e.alpha as i64), &self.power(&tail, e.beta as i64))
    }

    pub fn witness_alpha(&self, d: u32, n: u32, level: usize) -> Result<(HnnWord, Exponents)> {
        check_degree(d)?;
        let g = self.nonascending_witness()?;
        let e = Exponents::escalating(d, n, level);
        Ok((self.witness_word(&g, e), e))
    }

    pub fn format(&self, x: &HnnWord) -> String {
        if self.is_identity(x) {
            return "identity".into();
        }
        let mut parts = Vec::new();
        if !self.base.is_identity(&x.head) {
            parts.push(self.base.format(&x.head));
        }
        for l in &x.tail {
            parts.push(if l.exp > 0 { "t".into() } else { "t^-1".into() });
            if !self.base.is_identity(&l.elem) {
                parts.push(self.base.format(&l.elem));
            }
        }
        parts.join(" ")
    }

    /// All normal forms of t-length at most `n`, base elements drawn from
    /// the window when the base group is infinite.
    pub fn ball(&self, n: usize, cap: usize) -> Result<(Vec<HnnWord>, bool)> {
        let heads = self.base.window(self.window);
        let reps = |sub: &SubgroupOracle| -> Vec<FactorElement> {
            let mut r: Vec<FactorElement> = heads.iter().map(|x| sub.coset_rep(&self.base, x).1).collect();
            r.sort();
            r.dedup();
            r
        };
        let (after_plus, after_minus) = (reps(&self.b), reps(&self.a));
        let exact = self.base.is_finite();

        let too_big = |count: usize| -> Result<()> {
            if count.saturating_mul(heads.len()) > cap {
                return Err(Error::CapExceeded(format!(
                    "ball of t-length {n} exceeds the cap of {cap} elements"
                )));
            }
            Ok(())
        };
        let mut seqs: Vec<Vec<TLetter>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<TLetter>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for seq in &frontier {
                for exp in [1i8, -1] {
                    if let Some(prev) = seq.last() {
                        if prev.exp == -exp && self.base.is_identity(&prev.elem) {
                            continue;
                        }
                    }
                    let pool = if exp > 0 { &after_plus } else { &after_minus };
                    for r in pool {
                        let mut s = seq.clone();
                        s.push(TLetter { exp, elem: r.clone() });
                        next.push(s);
                    }
                }
                too_big(seqs.len() + next.len())?;
            }
            seqs.extend(next.iter().cloned());
            frontier = next;
        }
        let mut out = Vec::with_capacity(seqs.len() * heads.len());
        for seq in &seqs {
            for h in &heads {
                out.push(HnnWord {
                    head: h.clone(),
                    tail: seq.clone(),
                });
            }
        }
        out.sort();
        Ok((out, exact))
    }
}
