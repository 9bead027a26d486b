use super::{HnnGroup, HnnWord};
use crate::construction::{check_degree, PowerTest, RootSet};
use crate::error::Result;
use crate::factors::FactorElement;

impl HnnGroup {
    /// Base elements to try, and whether that is the whole base group.
    fn base_candidates(&self) -> (Vec<FactorElement>, bool) {
        match self.base.elements() {
            Some(all) => (all, true),
            None => (self.base.window(self.window), false),
        }
    }

    /// Roots of a cyclically reduced hyperbolic core. A root has t-length
    /// `len / d`, its exponent pattern repeats `d` times along the core, and
    /// it equals the core's prefix through the `len / d`-th stable letter
    /// times a base element.
    fn hyperbolic_core_roots(&self, core: &HnnWord, d: u32) -> RootSet<HnnWord> {
        let (len, du) = (core.t_length(), d as usize);
        let exps = core.exponents();
        if len % du != 0 {
            return RootSet {
                roots: Vec::new(),
                exact: true,
            };
        }
        let m = len / du;
        if (0..len).any(|i| exps[i] != exps[i % m]) {
            return RootSet {
                roots: Vec::new(),
                exact: true,
            };
        }
        let prefix = self.prefix_through_t(core, m);
        let (cands, exact) = self.base_candidates();
        let mut roots: Vec<HnnWord> = cands
            .iter()
            .map(|u| self.mul(&prefix, &self.g_letter(u)))
            .filter(|v| self.power(v, d as i64) == *core)
            .collect();
        roots.sort();
        roots.dedup();
        RootSet { roots, exact }
    }

    /// Exact whenever the exponent pattern rules roots out or the base group
    /// is finite; otherwise a negative answer is relative to the window.
    pub fn is_dth_power(&self, x: &HnnWord, d: u32) -> Result<PowerTest> {
        check_degree(d)?;
        let cf = self.cyclically_reduce(x);
        if cf.core.t_length() > 0 {
            let set = self.hyperbolic_core_roots(&cf.core, d);
            let is_power = !set.roots.is_empty();
            return Ok(PowerTest {
                is_power,
                exact: set.exact || is_power,
            });
        }
        let (cands, exact) = self.base_candidates();
        for c in &cands {
            let p = self.g_letter(&self.base.pow(c, d as i64));
            if self.are_conjugate(&p, &cf.core)?.is_some() {
                return Ok(PowerTest {
                    is_power: true,
                    exact: true,
                });
            }
        }
        Ok(PowerTest { is_power: false, exact })
    }

    /// All `v` with `v^d = x` among the candidates described above; roots
    /// of elliptic elements are searched as `w f w^-1` with `w` in the ball
    /// of radius `search_bound`.
    pub fn dth_roots(&self, x: &HnnWord, d: u32, search_bound: usize) -> Result<RootSet<HnnWord>> {
        check_degree(d)?;
        let cf = self.cyclically_reduce(x);
        if cf.core.t_length() > 0 {
            let set = self.hyperbolic_core_roots(&cf.core, d);
            let mut roots: Vec<HnnWord> = set.roots.iter().map(|v| self.conjugate(&cf.conjugator, v)).collect();
            roots.sort();
            return Ok(RootSet {
                roots,
                exact: set.exact,
            });
        }
        let (ball, _) = self.ball(search_bound, crate::genericity::BALL_CAP)?;
        let (cands, _) = self.base_candidates();
        let mut roots = Vec::new();
        for c in &cands {
            let fd = self.g_letter(&self.base.pow(c, d as i64));
            let Some(w) = self.are_conjugate(&fd, x)? else {
                continue;
            };
            let f = self.g_letter(c);
            roots.push(self.conjugate(&w, &f));
            for z in &ball {
                let v = self.conjugate(&self.mul(z, &w), &f);
                if self.power(&v, d as i64) == *x {
                    roots.push(v);
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(RootSet { roots, exact: false })
    }
}
