use super::{AmalgamGroup, AmalgamWord, Side};
use crate::construction::{check_degree, PowerTest, RootSet};
use crate::error::{Error, Result};
use crate::factors::{FactorElement, FactorGroup, IntegerLattice, SubgroupKind};

impl AmalgamGroup {
    /// Elements of a factor to try as elliptic roots, and whether that list
    /// is the whole factor.
    fn factor_candidates(&self, side: Side) -> (Vec<FactorElement>, bool) {
        let f = self.factor(side);
        match f.elements() {
            Some(all) => (all, true),
            None => (f.window(self.window), false),
        }
    }

    /// True iff the `A`-element `z` (in `G`'s copy) is `a^d` for some `a`
    /// in `A`; only called when `A` is an infinite central lattice.
    fn lattice_has_dth_root(&self, z: &FactorElement, d: u32) -> Result<bool> {
        let (SubgroupKind::Lattice(gens), FactorGroup::Abelian(ab), FactorElement::Vector(v)) =
            (self.a_g.kind(), &self.g, z)
        else {
            return Err(Error::Unsupported(
                "infinite amalgamated subgroup that is not a lattice".into(),
            ));
        };
        let scaled: Vec<Vec<i64>> = gens.iter().map(|g| g.iter().map(|c| c * d as i64).collect()).collect();
        Ok(IntegerLattice::new(&scaled, ab.moduli())?.contains(v))
    }

    /// Roots of a cyclically reduced hyperbolic element. Every root is
    /// cyclically reduced of length `len / d` and equals the initial segment
    /// of that length times an element of `A`.
    fn hyperbolic_core_roots(&self, core: &AmalgamWord, d: u32) -> Result<RootSet<AmalgamWord>> {
        let (len, d) = (core.len(), d as usize);
        if len % d != 0 || (len / d) % 2 != 0 {
            return Ok(RootSet {
                roots: Vec::new(),
                exact: true,
            });
        }
        let head = self.initial_segment(core, len / d);
        let (twists, exact) = match self.a_elements() {
            Some(all) => (all, true),
            None => (self.a_g.window_elements(&self.g, self.window), false),
        };
        let mut roots: Vec<AmalgamWord> = twists
            .iter()
            .map(|a| self.mul(&head, &self.a_letter(a)))
            .filter(|v| self.power(v, d as i64) == *core)
            .collect();
        roots.sort();
        roots.dedup();
        Ok(RootSet { roots, exact })
    }

    /// Exact for hyperbolic elements and for elliptic elements when both
    /// factors are finite.
    pub fn is_dth_power(&self, x: &AmalgamWord, d: u32) -> Result<PowerTest> {
        check_degree(d)?;
        let cf = self.cyclically_reduce(x);
        if cf.core.len() >= 2 {
            if self.a_elements().is_none() && self.a_is_central() {
                let (len, du) = (cf.core.len(), d as usize);
                if len % du != 0 || (len / du) % 2 != 0 {
                    return Ok(PowerTest {
                        is_power: false,
                        exact: true,
                    });
                }
                // With A central, (P a)^d = P^d a^d.
                let head = self.initial_segment(&cf.core, len / du);
                let z = self.mul(&self.power(&head, -(d as i64)), &cf.core);
                let is_power = z.is_empty() && self.lattice_has_dth_root(&z.prefix, d)?;
                return Ok(PowerTest { is_power, exact: true });
            }
            let set = self.hyperbolic_core_roots(&cf.core, d)?;
            return Ok(PowerTest {
                is_power: !set.roots.is_empty(),
                exact: set.exact || !set.roots.is_empty(),
            });
        }
        // An elliptic x is a d-th power iff some factor element f has f^d
        // conjugate to x.
        let mut exact = true;
        for side in [Side::G, Side::H] {
            let (cands, complete) = self.factor_candidates(side);
            exact &= complete;
            let f = self.factor(side);
            for c in cands {
                let p = self.letter(side, &f.pow(&c, d as i64));
                if self.are_conjugate(&p, &cf.core)?.is_some() {
                    return Ok(PowerTest {
                        is_power: true,
                        exact: true,
                    });
                }
            }
        }
        Ok(PowerTest { is_power: false, exact })
    }

    /// All `v` with `v^d = x`. Complete for hyperbolic `x` when `A` is
    /// finite. Roots of elliptic elements are searched as `w f w^-1` with
    /// `w` of length at most `search_bound`, which is never complete.
    pub fn dth_roots(&self, x: &AmalgamWord, d: u32, search_bound: usize) -> Result<RootSet<AmalgamWord>> {
        check_degree(d)?;
        let cf = self.cyclically_reduce(x);
        if cf.core.len() >= 2 {
            let set = self.hyperbolic_core_roots(&cf.core, d)?;
            let mut roots: Vec<AmalgamWord> = set.roots.iter().map(|v| self.conjugate(&cf.conjugator, v)).collect();
            roots.sort();
            return Ok(RootSet {
                roots,
                exact: set.exact,
            });
        }
        let (ball, _) = self.ball(search_bound, crate::genericity::BALL_CAP)?;
        let mut roots = Vec::new();
        for side in [Side::G, Side::H] {
            let (cands, _) = self.factor_candidates(side);
            let f = self.factor(side);
            for c in &cands {
                let fd = self.letter(side, &f.pow(c, d as i64));
                let Some(w) = self.are_conjugate(&fd, x)? else {
                    continue;
                };
                let base = self.letter(side, c);
                roots.push(self.conjugate(&w, &base));
                for z in &ball {
                    let v = self.conjugate(&self.mul(z, &w), &base);
                    if self.power(&v, d as i64) == *x {
                        roots.push(v);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(RootSet { roots, exact: false })
    }

    /// Elements of `A` (in `G`'s copy) commuting with `x`.
    pub fn centralizer_in_a(&self, x: &AmalgamWord) -> Result<Vec<FactorElement>> {
        match self.a_elements() {
            Some(all) => Ok(all
                .into_iter()
                .filter(|a| {
                    let a = self.a_letter(a);
                    self.mul(&a, x) == self.mul(x, &a)
                })
                .collect()),
            None => Err(Error::Unsupported(if self.a_is_central() {
                "A is central and infinite, so the centralizer is all of A".into()
            } else {
                "infinite amalgamated subgroup".into()
            })),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{el, s3_c2_s3, z2_z3};
    use super::*;

    fn word(p: &AmalgamGroup, letters: &[(Side, &str)]) -> AmalgamWord {
        let raw: Vec<_> = letters.iter().map(|(s, n)| (*s, el(p, *s, n))).collect();
        p.reduce(&raw).unwrap()
    }

    #[test]
    fn square_of_ab_has_one_root() {
        let p = z2_z3();
        let ab = word(&p, &[(Side::G, "a"), (Side::H, "b")]);
        let x = p.power(&ab, 2);
        let set = p.dth_roots(&x, 2, 0).unwrap();
        assert!(set.exact);
        assert_eq!(set.roots, vec![ab]);
        assert!(p.is_dth_power(&x, 2).unwrap().is_power);
        assert!(!p.is_dth_power(&x, 3).unwrap().is_power);
    }

    #[test]
    fn odd_length_quotient_has_no_root() {
        let p = z2_z3();
        let ab = word(&p, &[(Side::G, "a"), (Side::H, "b")]);
        let x = p.power(&ab, 3);
        assert!(p.dth_roots(&x, 3, 0).unwrap().roots.contains(&ab));
        // length 6 is not 2 * even
        assert!(p.dth_roots(&x, 2, 0).unwrap().roots.is_empty());
    }

    #[test]
    fn roots_of_conjugated_power() {
        let p = s3_c2_s3();
        let v = word(&p, &[(Side::G, "(13)"), (Side::H, "(123)")]);
        let c = word(&p, &[(Side::H, "(23)"), (Side::G, "(132)")]);
        let x = p.conjugate(&c, &p.power(&v, 3));
        let set = p.dth_roots(&x, 3, 0).unwrap();
        assert!(set.exact);
        assert!(set.roots.contains(&p.conjugate(&c, &v)));
        for r in &set.roots {
            assert_eq!(p.power(r, 3), x);
        }
    }

    #[test]
    fn elliptic_power_test() {
        let p = z2_z3();
        let b = word(&p, &[(Side::H, "b")]);
        // b = (B)^2
        let t = p.is_dth_power(&b, 2).unwrap();
        assert!(t.is_power && t.exact);
        let a = word(&p, &[(Side::G, "a")]);
        let t = p.is_dth_power(&a, 2).unwrap();
        assert!(!t.is_power && t.exact);
        let set = p.dth_roots(&b, 2, 2).unwrap();
        assert!(set.roots.contains(&word(&p, &[(Side::H, "B")])));
        for r in &set.roots {
            assert_eq!(p.power(r, 2), b);
        }
    }

    #[test]
    fn degree_must_exceed_one() {
        let p = z2_z3();
        assert!(matches!(
            p.dth_roots(&p.identity(), 1, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn centralizer_of_hyperbolic() {
        let p = s3_c2_s3();
        let x = word(&p, &[(Side::G, "(13)"), (Side::H, "(123)")]);
        assert_eq!(p.centralizer_in_a(&x).unwrap().len(), 1);
        assert_eq!(p.centralizer_in_a(&p.identity()).unwrap().len(), 2);
    }
}
