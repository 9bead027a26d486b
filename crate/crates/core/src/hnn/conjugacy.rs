use std::collections::{HashMap, HashSet, VecDeque};

use super::{HnnGroup, HnnWord, TLetter};
use crate::error::{Error, Result};
use crate::factors::FactorElement;

const ELLIPTIC_SEARCH_CAP: usize = 1 << 16;

/// `x = conjugator * core * conjugator^-1` with `core` cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnCyclicForm {
    pub conjugator: HnnWord,
    pub core: HnnWord,
}

/// True iff some rotation of `b` equals `a`.
fn is_rotation(a: &[i8], b: &[i8]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..b.len()).any(|k| b[k..].iter().chain(&b[..k]).eq(a.iter())))
}

impl HnnGroup {
    /// True iff the last and first stable letters form a pinch around the
    /// seam `g_n g_0`.
    fn seam_pinch(&self, x: &HnnWord) -> bool {
        let n = x.tail.len();
        if n < 2 {
            return false;
        }
        let last = &x.tail[n - 1];
        if last.exp != -x.tail[0].exp {
            return false;
        }
        let seam = self.base.mul(&last.elem, &x.head);
        let sub = if last.exp < 0 { &self.a } else { &self.b };
        sub.is_member(&self.base, &seam)
    }

    /// Removes seam pinches by conjugating with the last stable syllable.
    pub fn cyclically_reduce(&self, x: &HnnWord) -> HnnCyclicForm {
        let mut conjugator = self.identity();
        let mut core = x.clone();
        while self.seam_pinch(&core) {
            let last = core.tail.last().expect("seam pinch needs letters").clone();
            let u = HnnWord {
                head: self.base.identity(),
                tail: vec![TLetter {
                    exp: last.exp,
                    elem: last.elem,
                }],
            };
            core = self.conjugate(&u, &core);
            conjugator = self.mul(&conjugator, &self.invert(&u));
        }
        HnnCyclicForm { conjugator, core }
    }

    /// Conjugate into the base group.
    pub fn is_elliptic(&self, x: &HnnWord) -> bool {
        self.cyclically_reduce(x).core.t_length() == 0
    }

    pub fn is_hyperbolic(&self, x: &HnnWord) -> bool {
        !self.is_elliptic(x)
    }

    /// Elements of `A` and `B` usable as twists, and whether the list is
    /// complete.
    fn associated_elements(&self) -> (Vec<FactorElement>, bool) {
        let mut out = self.a.window_elements(&self.base, self.window);
        out.extend(self.b.window_elements(&self.base, self.window));
        out.sort();
        out.dedup();
        (out, self.a.is_finite() && self.b.is_finite())
    }

    /// Some `c` with `c x c^-1 = y`. For infinite `A`, `B` the twists are
    /// drawn from the window, so a `None` is only certain when the
    /// stable-letter patterns already differ.
    pub fn are_conjugate(&self, x: &HnnWord, y: &HnnWord) -> Result<Option<HnnWord>> {
        let cx = self.cyclically_reduce(x);
        let cy = self.cyclically_reduce(y);
        let (lx, ly) = (cx.core.t_length(), cy.core.t_length());
        let inner = if lx == 0 && ly == 0 {
            self.elliptic_conjugator(&cx.core.head, &cy.core.head)?
        } else if lx != ly || !is_rotation(&cx.core.exponents(), &cy.core.exponents()) {
            None
        } else {
            self.hyperbolic_conjugator(&cx.core, &cy.core)
        };
        Ok(inner.map(|c| self.mul(&self.mul(&cy.conjugator, &c), &self.invert(&cx.conjugator))))
    }

    fn hyperbolic_conjugator(&self, x: &HnnWord, y: &HnnWord) -> Option<HnnWord> {
        let (twists, _) = self.associated_elements();
        let mut twisted: HashMap<HnnWord, FactorElement> = HashMap::new();
        for z in twists {
            twisted.entry(self.conjugate(&self.g_letter(&z), x)).or_insert(z);
        }
        let m = y.t_length();
        let mut prefixes = Vec::with_capacity(2 * m + 1);
        for k in 0..=m {
            prefixes.push(self.prefix_through_t(y, k));
            if k > 0 {
                prefixes.push(HnnWord {
                    head: y.head.clone(),
                    tail: y.tail[..k].to_vec(),
                });
            }
        }
        for q in prefixes {
            let rotated = self.conjugate(&self.invert(&q), y);
            if let Some(z) = twisted.get(&rotated) {
                return Some(self.mul(&q, &self.g_letter(z)));
            }
        }
        None
    }

    /// Pairs `(c, v)` with `c u c^-1 = v` and `v` in `A` or `B`.
    fn conjugates_into_associated(&self, u: &FactorElement) -> Vec<(FactorElement, FactorElement)> {
        let g = &self.base;
        let hit = |v: &FactorElement| self.a.is_member(g, v) || self.b.is_member(g, v);
        match g.elements() {
            Some(all) => {
                let mut seen = HashSet::new();
                all.into_iter()
                    .filter_map(|c| {
                        let v = g.mul(&g.mul(&c, u), &g.inv(&c));
                        (hit(&v) && seen.insert(v.clone())).then_some((c, v))
                    })
                    .collect()
            }
            // Infinite bases are abelian, or free with trivial A and B.
            None if hit(u) => vec![(g.identity(), u.clone())],
            None => Vec::new(),
        }
    }

    /// Conjugacy of base elements inside `G*`: base-group conjugation and
    /// the moves `a -> phi(a)`, `b -> phi^-1(b)` explored breadth first.
    fn elliptic_conjugator(&self, u: &FactorElement, v: &FactorElement) -> Result<Option<HnnWord>> {
        let direct = |w: &FactorElement| self.base.conjugator(w, v).map(|c| self.g_letter(&c));
        if let Some(c) = direct(u) {
            return Ok(Some(c));
        }
        let mut seen: HashSet<FactorElement> = HashSet::new();
        let mut queue: VecDeque<(FactorElement, HnnWord)> = VecDeque::new();
        for (c, w) in self.conjugates_into_associated(u) {
            if seen.insert(w.clone()) {
                queue.push_back((w, self.g_letter(&c)));
            }
        }
        while let Some((w, word)) = queue.pop_front() {
            let mut moves = Vec::new();
            if let Some(img) = self.phi.apply(&w).filter(|_| self.a.is_member(&self.base, &w)) {
                moves.push((img, self.mul(&self.t_letter(-1), &word)));
            }
            if let Some(img) = self.phi_inv.apply(&w).filter(|_| self.b.is_member(&self.base, &w)) {
                moves.push((img, self.mul(&self.t_letter(1), &word)));
            }
            for (img, next) in moves {
                if let Some(c) = direct(&img) {
                    return Ok(Some(self.mul(&c, &next)));
                }
                for (c, z) in self.conjugates_into_associated(&img) {
                    if seen.insert(z.clone()) {
                        queue.push_back((z, self.mul(&self.g_letter(&c), &next)));
                    }
                }
            }
            if seen.len() > ELLIPTIC_SEARCH_CAP {
                return Err(Error::CapExceeded(format!(
                    "elliptic conjugacy search visited more than {ELLIPTIC_SEARCH_CAP} elements"
                )));
            }
        }
        Ok(None)
    }
}
