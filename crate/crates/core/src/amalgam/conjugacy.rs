use std::collections::{HashMap, HashSet, VecDeque};

use super::{AmalgamGroup, AmalgamWord, Side};
use crate::error::{Error, Result};
use crate::factors::FactorElement;

/// Cap on the number of `A`-elements visited while deciding elliptic
/// conjugacy.
const ELLIPTIC_SEARCH_CAP: usize = 1 << 16;

/// `x = conjugator * core * conjugator^-1` with `core` cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicForm {
    pub conjugator: AmalgamWord,
    pub core: AmalgamWord,
}

impl AmalgamGroup {
    /// Conjugates away matching end syllables, stripping the leftmost
    /// syllable first, until the first and last syllables lie in different
    /// factors or at most one syllable remains.
    pub fn cyclically_reduce(&self, x: &AmalgamWord) -> CyclicForm {
        let mut conjugator = self.identity();
        let mut core = x.clone();
        while core.len() >= 2 && core.first_side() == core.last_side() {
            let head = self.initial_segment(&core, 1);
            core = self.mul(&self.mul(&self.invert(&head), &core), &head);
            conjugator = self.mul(&conjugator, &head);
        }
        CyclicForm { conjugator, core }
    }

    /// Conjugate into a factor, i.e. cyclically reduced length at most one.
    pub fn is_elliptic(&self, x: &AmalgamWord) -> bool {
        self.cyclically_reduce(x).core.len() <= 1
    }

    pub fn is_hyperbolic(&self, x: &AmalgamWord) -> bool {
        !self.is_elliptic(x)
    }

    /// Some `c` with `c x c^-1 = y`, or `None` when `x` and `y` are not
    /// conjugate.
    pub fn are_conjugate(&self, x: &AmalgamWord, y: &AmalgamWord) -> Result<Option<AmalgamWord>> {
        let cx = self.cyclically_reduce(x);
        let cy = self.cyclically_reduce(y);
        let (lx, ly) = (cx.core.len(), cy.core.len());
        let inner = if lx <= 1 && ly <= 1 {
            self.elliptic_conjugator(&cx.core, &cy.core)?
        } else if lx != ly {
            None
        } else {
            self.hyperbolic_conjugator(&cx.core, &cy.core)?
        };
        Ok(inner.map(|c| self.mul(&self.mul(&cy.conjugator, &c), &self.invert(&cx.conjugator))))
    }

    /// Elements `a` of `A` (in `G`'s copy) such that conjugating by `a`
    /// and cyclic permutations generate all cyclically reduced conjugates.
    pub(super) fn twists(&self) -> Result<Vec<FactorElement>> {
        if self.a_is_central() {
            return Ok(vec![self.g.identity()]);
        }
        self.a_elements()
            .ok_or_else(|| Error::Unsupported("infinite amalgamated subgroup that is not central".into()))
    }

    fn hyperbolic_conjugator(&self, x: &AmalgamWord, y: &AmalgamWord) -> Result<Option<AmalgamWord>> {
        let mut twisted: HashMap<AmalgamWord, FactorElement> = HashMap::new();
        for a in self.twists()? {
            twisted.entry(self.conjugate(&self.a_letter(&a), x)).or_insert(a);
        }
        for k in 0..y.len() {
            let p = self.initial_segment(y, k);
            let rotated = self.conjugate(&self.invert(&p), y);
            if let Some(a) = twisted.get(&rotated) {
                return Ok(Some(self.mul(&p, &self.a_letter(a))));
            }
        }
        Ok(None)
    }

    /// The factor elements an element of length at most one equals, one per
    /// factor that contains it.
    fn elliptic_pieces(&self, x: &AmalgamWord) -> Vec<(Side, FactorElement)> {
        match x.syllables.first() {
            None => vec![(Side::G, x.prefix.clone()), (Side::H, self.a_to(&x.prefix, Side::H))],
            Some(s) => {
                let f = self.factor(s.side);
                vec![(s.side, f.mul(&self.a_to(&x.prefix, s.side), &s.elem))]
            }
        }
    }

    /// Pairs `(c, a)` with `c u c^-1 = a` in `A`, one per reachable `a`.
    fn conjugates_into_a(&self, side: Side, u: &FactorElement) -> Vec<(FactorElement, FactorElement)> {
        let f = self.factor(side);
        let a = self.subgroup(side);
        match f.elements() {
            Some(all) => {
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                for c in all {
                    let v = f.mul(&f.mul(&c, u), &f.inv(&c));
                    if a.is_member(f, &v) && seen.insert(v.clone()) {
                        out.push((c, v));
                    }
                }
                out
            }
            // Infinite factors are abelian or free with trivial `A`: the
            // conjugacy class meets `A` at most in `u` itself.
            None if a.is_member(f, u) => vec![(f.identity(), u.clone())],
            None => Vec::new(),
        }
    }

    fn elliptic_conjugator(&self, x: &AmalgamWord, y: &AmalgamWord) -> Result<Option<AmalgamWord>> {
        let targets = self.elliptic_pieces(y);
        let direct = |side: Side, u: &FactorElement| -> Option<AmalgamWord> {
            targets
                .iter()
                .filter(|(s, _)| *s == side)
                .find_map(|(_, v)| self.factor(side).conjugator(u, v))
                .map(|c| self.letter(side, &c))
        };
        for (side, u) in self.elliptic_pieces(x) {
            if let Some(c) = direct(side, &u) {
                return Ok(Some(c));
            }
        }

        let mut seen: HashSet<FactorElement> = HashSet::new();
        let mut queue: VecDeque<(FactorElement, AmalgamWord)> = VecDeque::new();
        for (side, u) in self.elliptic_pieces(x) {
            for (c, a) in self.conjugates_into_a(side, &u) {
                let a = self.a_from(&a, side);
                if seen.insert(a.clone()) {
                    queue.push_back((a, self.letter(side, &c)));
                }
            }
        }
        while let Some((a, w)) = queue.pop_front() {
            for side in [Side::G, Side::H] {
                if let Some(c) = direct(side, &self.a_to(&a, side)) {
                    return Ok(Some(self.mul(&c, &w)));
                }
            }
            for side in [Side::G, Side::H] {
                for (c, next) in self.conjugates_into_a(side, &self.a_to(&a, side)) {
                    let next = self.a_from(&next, side);
                    if seen.insert(next.clone()) {
                        queue.push_back((next, self.mul(&self.letter(side, &c), &w)));
                    }
                }
            }
            if seen.len() > ELLIPTIC_SEARCH_CAP {
                return Err(Error::CapExceeded(format!(
                    "elliptic conjugacy search visited more than {ELLIPTIC_SEARCH_CAP} elements of A"
                )));
            }
        }
        Ok(None)
    }
}
