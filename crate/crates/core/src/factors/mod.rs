//! Concrete factor groups and the subgroup oracles built on them.
//!
//! Three kinds of factor are supported: finite groups given by a
//! multiplication table, finitely generated abelian groups `Z/m1 x ... x Z/mr`
//! (a modulus of 0 meaning an infinite cyclic coordinate), and free groups of
//! finite rank. Elements are plain values ([`FactorElement`]); the owning
//! [`FactorGroup`] interprets them.

mod lattice;
mod subgroup;

pub use lattice::{IntegerLattice, LatticeMap};
pub(crate) use subgroup::witness_triple;
pub use subgroup::{nondegenerate_witnesses, Identification, NondegenerateTriple, SubgroupKind, SubgroupOracle};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest finite-table group accepted.
pub const MAX_TABLE_ORDER: usize = 1024;
/// Largest rank accepted for finitely generated abelian factors.
pub const MAX_ABELIAN_RANK: usize = 8;

/// An element of some factor group, in the canonical form of its kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorElement {
    /// Index into a multiplication table.
    Table(u32),
    /// Integer coordinates, reduced modulo the finite moduli.
    Vector(Vec<i64>),
    /// Freely reduced word; letter `k` is generator `k` and `-k` its inverse.
    Word(Vec<i32>),
}

impl FactorElement {
    fn kind_name(&self) -> &'static str {
        match self {
            FactorElement::Table(_) => "table index",
            FactorElement::Vector(_) => "integer vector",
            FactorElement::Word(_) => "free word",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableGroup {
    order: usize,
    table: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
    names: Option<Vec<String>>,
}

impl TableGroup {
    /// Builds a group from its row-major multiplication table,
    /// `rows[i][j] = e_i * e_j`.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {n} exceeds the cap of {MAX_TABLE_ORDER}"
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &v in row {
                if v as usize >= n {
                    return Err(Error::InvalidGroup(format!("row {i}: entry {v} out of range")));
                }
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::InvalidGroup(format!("row {i}: entry {v} repeated")));
                }
            }
            table.extend_from_slice(row);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e * n + j] as usize == j && table[j * n + e] as usize == j))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))? as u32;
        let mut inverse = vec![0u32; n];
        for (i, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&j| table[i * n + j] == identity && table[j * n + i] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {i} has no inverse")))? as u32;
        }
        let group = TableGroup {
            order: n,
            table,
            identity,
            inverse,
            names: None,
        };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        // Exhaustive up to order 24, otherwise all (i, j) against a strided set of k.
        let ks: Vec<usize> = if n <= 24 {
            (0..n).collect()
        } else {
            (0..n).step_by((n / 16).max(1)).collect()
        };
        for i in 0..n {
            for j in 0..n {
                let ij = self.table[i * n + j] as usize;
                for &k in &ks {
                    let jk = self.table[j * n + k] as usize;
                    if self.table[ij * n + k] != self.table[i * n + jk] {
                        return Err(Error::InvalidGroup(format!("not associative at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::InvalidGroup(format!(
                "{} names given for a group of order {}",
                names.len(),
                self.order
            )));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::InvalidGroup("element names are not distinct".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Cyclic group of order `n`, element `k` standing for the `k`-th power.
    pub fn cyclic(n: usize) -> Result<Self> {
        let rows = (0..n).map(|i| (0..n).map(|j| ((i + j) % n) as u32).collect()).collect();
        TableGroup::new(rows)
    }

    /// Closure of a set of permutations of `0..degree`, identity first and
    /// the rest in breadth-first discovery order. Products compose right to
    /// left: `(p * q)(x) = p(q(x))`.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.first().map_or(0, Vec::len);
        for g in generators {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if g.len() != degree || sorted != (0..degree).collect::<Vec<_>>() {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let (perms, _) = permutation_closure(generators, degree)?;
        let index: HashMap<&Vec<usize>, u32> = perms.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let rows = perms
            .iter()
            .map(|p| perms.iter().map(|q| index[&compose(p, q)]).collect())
            .collect();
        TableGroup::new(rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

type Closure = (Vec<Vec<usize>>, HashMap<Vec<usize>, usize>);

fn permutation_closure(generators: &[Vec<usize>], degree: usize) -> Result<Closure> {
    let id: Vec<usize> = (0..degree).collect();
    let mut perms = vec![id.clone()];
    let mut seen = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let next = compose(&perms[i], g);
            if !seen.contains_key(&next) {
                if perms.len() >= MAX_TABLE_ORDER {
                    return Err(Error::InvalidGroup(format!(
                        "permutation group exceeds order {MAX_TABLE_ORDER}"
                    )));
                }
                seen.insert(next.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(next);
            }
        }
    }
    Ok((perms, seen))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    moduli: Vec<i64>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<i64>) -> Result<Self> {
        if moduli.is_empty() || moduli.len() > MAX_ABELIAN_RANK {
            return Err(Error::InvalidGroup(format!(
                "abelian rank must be between 1 and {MAX_ABELIAN_RANK}, got {}",
                moduli.len()
            )));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 0 || m == 1) {
            return Err(Error::InvalidGroup(format!(
                "modulus {m} not allowed (use 0 for Z, >= 2 for Z/m)"
            )));
        }
        Ok(AbelianGroup { moduli })
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn normalize(&self, v: &mut [i64]) {
        for (x, &m) in v.iter_mut().zip(&self.moduli) {
            if m > 0 {
                *x = x.rem_euclid(m);
            }
        }
    }

    pub fn element(&self, mut v: Vec<i64>) -> FactorElement {
        self.normalize(&mut v);
        FactorElement::Vector(v)
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|&m| m > 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    rank: u32,
}

impl FreeGroup {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidGroup("free group of rank 0".into()));
        }
        Ok(FreeGroup { rank })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Freely reduces a letter sequence.
    pub fn word(&self, letters: &[i32]) -> FactorElement {
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FactorElement::Word(out)
    }
}

/// Sort key preferring short elements, positive before negative
/// coordinates, then index order.
pub fn simplicity_key(x: &FactorElement) -> (u64, Vec<u64>) {
    let signed = |c: i64| c.unsigned_abs() * 2 + u64::from(c < 0);
    match x {
        FactorElement::Table(i) => (*i as u64, Vec::new()),
        FactorElement::Vector(v) => (
            v.iter().map(|c| c.unsigned_abs()).sum(),
            v.iter().map(|&c| signed(c)).collect(),
        ),
        FactorElement::Word(w) => (w.len() as u64, w.iter().map(|&l| signed(l as i64)).collect()),
    }
}

/// Splits a reduced word as `p core p^-1` with `core` cyclically reduced.
fn free_cyclic_core(w: &[i32]) -> (&[i32], &[i32]) {
    let n = w.len();
    let mut i = 0;
    while i + 1 < n - i && w[i] == -w[n - 1 - i] {
        i += 1;
    }
    (&w[..i], &w[i..n - i])
}

/// A concrete group serving as a factor (or HNN base).
#[derive(Clone, Debug)]
pub enum FactorGroup {
    Table(TableGroup),
    Abelian(AbelianGroup),
    Free(FreeGroup),
}

impl FactorGroup {
    pub fn kind_name(&self) -> &'static str {
        match self {
            FactorGroup::Table(_) => "finite-table",
            FactorGroup::Abelian(_) => "fg-abelian",
            FactorGroup::Free(_) => "free",
        }
    }

    pub fn identity(&self) -> FactorElement {
        match self {
            FactorGroup::Table(t) => FactorElement::Table(t.identity),
            FactorGroup::Abelian(a) => FactorElement::Vector(vec![0; a.rank()]),
            FactorGroup::Free(_) => FactorElement::Word(Vec::new()),
        }
    }

    pub fn is_identity(&self, x: &FactorElement) -> bool {
        match (self, x) {
            (FactorGroup::Table(t), FactorElement::Table(i)) => *i == t.identity,
            (FactorGroup::Abelian(_), FactorElement::Vector(v)) => v.iter().all(|&c| c == 0),
            (FactorGroup::Free(_), FactorElement::Word(w)) => w.is_empty(),
            _ => false,
        }
    }

    /// Checks that `x` is a canonical element of this group.
    pub fn validate(&self, x: &FactorElement) -> Result<()> {
        match (self, x) {
            (FactorGroup::Table(t), FactorElement::Table(i)) => {
                if (*i as usize) < t.order {
                    Ok(())
                } else {
                    Err(Error::MalformedElement(format!(
                        "index {i} out of range for a group of order {}",
                        t.order
                    )))
                }
            }
            (FactorGroup::Abelian(a), FactorElement::Vector(v)) => {
                if v.len() != a.rank() {
                    return Err(Error::MalformedElement(format!(
                        "vector of length {} in a group of rank {}",
                        v.len(),
                        a.rank()
                    )));
                }
                for (c, &m) in v.iter().zip(&a.moduli) {
                    if m > 0 && !(0..m).contains(c) {
                        return Err(Error::MalformedElement(format!(
                            "coordinate {c} not reduced modulo {m}"
                        )));
                    }
                }
                Ok(())
            }
            (FactorGroup::Free(f), FactorElement::Word(w)) => {
                for (i, &l) in w.iter().enumerate() {
                    if l == 0 || l.unsigned_abs() > f.rank {
                        return Err(Error::MalformedElement(format!("letter {l} out of range")));
                    }
                    if i > 0 && w[i - 1] == -l {
                        return Err(Error::MalformedElement("word is not freely reduced".into()));
                    }
                }
                Ok(())
            }
            _ => Err(Error::MixedGroups(format!(
                "{} element in a {} group",
                x.kind_name(),
                self.kind_name()
            ))),
        }
    }

    /// Checked product.
    pub fn multiply(&self, x: &FactorElement, y: &FactorElement) -> Result<FactorElement> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.mul(x, y))
    }

    /// Product of two elements already known to belong to this group.
    pub fn mul(&self, x: &FactorElement, y: &FactorElement) -> FactorElement {
        match (self, x, y) {
            (FactorGroup::Table(t), FactorElement::Table(a), FactorElement::Table(b)) => {
                FactorElement::Table(t.mul(*a, *b))
            }
            (FactorGroup::Abelian(g), FactorElement::Vector(a), FactorElement::Vector(b)) => {
                let mut v: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                g.normalize(&mut v);
                FactorElement::Vector(v)
            }
            (FactorGroup::Free(f), FactorElement::Word(a), FactorElement::Word(b)) => {
                let mut w = a.clone();
                w.extend_from_slice(b);
                f.word(&w)
            }
            _ => panic!(
                "mul: operands of kinds {} and {} in a {} group",
                x.kind_name(),
                y.kind_name(),
                self.kind_name()
            ),
        }
    }

    pub fn inv(&self, x: &FactorElement) -> FactorElement {
        match (self, x) {
            (FactorGroup::Table(t), FactorElement::Table(a)) => FactorElement::Table(t.inv(*a)),
            (FactorGroup::Abelian(g), FactorElement::Vector(a)) => g.element(a.iter().map(|c| -c).collect()),
            (FactorGroup::Free(_), FactorElement::Word(w)) => FactorElement::Word(w.iter().rev().map(|l| -l).collect()),
            _ => panic!("inv: {} element in a {} group", x.kind_name(), self.kind_name()),
        }
    }

    /// Some `c` with `c u c^-1 = v`, if one exists.
    pub fn conjugator(&self, u: &FactorElement, v: &FactorElement) -> Option<FactorElement> {
        match (self, u, v) {
            (FactorGroup::Table(t), FactorElement::Table(a), FactorElement::Table(b)) => (0..t.order() as u32)
                .find(|&c| t.mul(t.mul(c, *a), t.inv(c)) == *b)
                .map(FactorElement::Table),
            (FactorGroup::Abelian(_), _, _) => (u == v).then(|| self.identity()),
            (FactorGroup::Free(f), FactorElement::Word(a), FactorElement::Word(b)) => {
                let (p, uc) = free_cyclic_core(a);
                let (q, vc) = free_cyclic_core(b);
                if uc.len() != vc.len() {
                    return None;
                }
                let k = (0..uc.len().max(1))
                    .find(|&k| uc[k.min(uc.len())..].iter().chain(&uc[..k.min(uc.len())]).eq(vc.iter()))?;
                let mut c: Vec<i32> = q.to_vec();
                c.extend(uc[..k.min(uc.len())].iter().rev().map(|l| -l));
                c.extend(p.iter().rev().map(|l| -l));
                Some(f.word(&c))
            }
            _ => panic!("conjugator: operands do not belong to a {} group", self.kind_name()),
        }
    }

    pub fn pow(&self, x: &FactorElement, k: i64) -> FactorElement {
        let base = if k < 0 { self.inv(x) } else { x.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            FactorGroup::Table(t) => {
                let n = t.order;
                (0..n).all(|i| (0..n).all(|j| t.table[i * n + j] == t.table[j * n + i]))
            }
            FactorGroup::Abelian(_) => true,
            FactorGroup::Free(f) => f.rank == 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            FactorGroup::Table(_) => true,
            FactorGroup::Abelian(a) => a.is_finite(),
            FactorGroup::Free(_) => false,
        }
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<usize> {
        match self {
            FactorGroup::Table(t) => Some(t.order),
            FactorGroup::Abelian(a) if a.is_finite() => Some(a.moduli.iter().map(|&m| m as usize).product()),
            _ => None,
        }
    }

    /// Every element, in canonical order, when the group is finite.
    pub fn elements(&self) -> Option<Vec<FactorElement>> {
        if !self.is_finite() {
            return None;
        }
        Some(self.window(0))
    }

    /// The elements inside the search window of radius `w`: everything for a
    /// finite group, coordinates in `[-w, w]` on infinite abelian coordinates,
    /// and reduced words of length at most `w` in a free group. Sorted.
    pub fn window(&self, w: u32) -> Vec<FactorElement> {
        match self {
            FactorGroup::Table(t) => (0..t.order as u32).map(FactorElement::Table).collect(),
            FactorGroup::Abelian(a) => {
                let w = w as i64;
                let ranges: Vec<(i64, i64)> = a
                    .moduli
                    .iter()
                    .map(|&m| if m > 0 { (0, m - 1) } else { (-w, w) })
                    .collect();
                let mut out = Vec::new();
                let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
                loop {
                    out.push(FactorElement::Vector(cur.clone()));
                    let mut i = cur.len();
                    loop {
                        if i == 0 {
                            out.sort();
                            return out;
                        }
                        i -= 1;
                        if cur[i] < ranges[i].1 {
                            cur[i] += 1;
                            break;
                        }
                        cur[i] = ranges[i].0;
                    }
                }
            }
            FactorGroup::Free(f) => {
                let r = f.rank as i32;
                let letters: Vec<i32> = (1..=r).flat_map(|k| [k, -k]).collect();
                let mut out = vec![Vec::new()];
                let mut frontier = vec![Vec::<i32>::new()];
                for _ in 0..w {
                    let mut next = Vec::new();
                    for word in &frontier {
                        for &l in &letters {
                            if word.last() != Some(&-l) {
                                let mut nw = word.clone();
                                nw.push(l);
                                next.push(nw);
                            }
                        }
                    }
                    out.extend(next.iter().cloned());
                    frontier = next;
                }
                let mut out: Vec<FactorElement> = out.into_iter().map(FactorElement::Word).collect();
                out.sort();
                out
            }
        }
    }

    pub fn format(&self, x: &FactorElement) -> String {
        match (self, x) {
            (FactorGroup::Table(t), FactorElement::Table(i)) => match &t.names {
                Some(names) => names[*i as usize].clone(),
                None => i.to_string(),
            },
            (_, FactorElement::Vector(v)) if v.len() == 1 => v[0].to_string(),
            (_, FactorElement::Vector(v)) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                format!("({})", parts.join(","))
            }
            (_, FactorElement::Word(w)) if w.is_empty() => "1".into(),
            (_, FactorElement::Word(w)) => {
                let mut s = String::new();
                for (i, l) in w.iter().enumerate() {
                    if i > 0 {
                        s.push('.');
                    }
                    let _ = write!(s, "x{}", l.unsigned_abs());
                    if *l < 0 {
                        s.push_str("^-1");
                    }
                }
                s
            }
            (_, FactorElement::Table(i)) => i.to_string(),
        }
    }

    /// Parses an element literal: a table index or element name, an integer
    /// or parenthesised integer tuple, or a bracketed signed letter list.
    pub fn parse_element(&self, text: &str) -> Result<FactorElement> {
        let text = text.trim();
        let bad = |why: &str| Error::MalformedElement(format!("'{text}': {why}"));
        let x = match self {
            FactorGroup::Table(t) => {
                if let Some(i) = t.names.as_ref().and_then(|n| n.iter().position(|s| s == text)) {
                    FactorElement::Table(i as u32)
                } else {
                    FactorElement::Table(text.parse().map_err(|_| bad("expected an index or element name"))?)
                }
            }
            FactorGroup::Abelian(a) => {
                let inner = text.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(text);
                let v: Vec<i64> = inner
                    .split(',')
                    .map(|s| s.trim().parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad("expected integer coordinates"))?;
                if v.len() != a.rank() {
                    return Err(bad(&format!("expected {} coordinates", a.rank())));
                }
                a.element(v)
            }
            FactorGroup::Free(f) => {
                let inner = text
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| bad("expected a letter list like [1,-2]"))?;
                let letters: Vec<i32> = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner
                        .split(',')
                        .map(|s| s.trim().parse::<i32>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad("expected signed letters"))?
                };
                if letters.iter().any(|&l| l == 0 || l.unsigned_abs() > f.rank) {
                    return Err(bad("letter out of range"));
                }
                f.word(&letters)
            }
        };
        self.validate(&x)?;
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s3() -> FactorGroup {
        FactorGroup::Table(TableGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap())
    }

    #[test]
    fn z2_square_is_identity() {
        let g = FactorGroup::Table(TableGroup::cyclic(2).unwrap());
        let a = FactorElement::Table(1);
        assert_eq!(g.multiply(&a, &a).unwrap(), g.identity());
    }

    #[test]
    fn abelian_componentwise_with_modulus() {
        let g = FactorGroup::Abelian(AbelianGroup::new(vec![0, 2]).unwrap());
        let x = g.parse_element("(3,1)").unwrap();
        let y = g.parse_element("(2,1)").unwrap();
        assert_eq!(g.multiply(&x, &y).unwrap(), FactorElement::Vector(vec![5, 0]));
    }

    #[test]
    fn free_cancellation() {
        let g = FactorGroup::Free(FreeGroup::new(2).unwrap());
        let x = FactorElement::Word(vec![1, 2]);
        let y = FactorElement::Word(vec![-2, 1]);
        assert_eq!(g.multiply(&x, &y).unwrap(), FactorElement::Word(vec![1, 1]));
    }

    #[test]
    fn mixed_operands_rejected() {
        let g = FactorGroup::Table(TableGroup::cyclic(3).unwrap());
        let err = g
            .multiply(&FactorElement::Table(1), &FactorElement::Vector(vec![1]))
            .unwrap_err();
        assert!(matches!(err, Error::MixedGroups(_)));
    }

    #[test]
    fn table_validation_catches_non_groups() {
        assert!(TableGroup::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(TableGroup::new(vec![vec![0, 1, 2], vec![1, 2, 0]]).is_err());
        // Latin square without associativity (loop of order 5).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(TableGroup::new(loop5).is_err());
    }

    #[test]
    fn permutation_groups_have_expected_orders() {
        assert_eq!(s3().order(), Some(6));
        let s4 = TableGroup::from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(s4.order(), 24);
        assert!(!s3().is_abelian());
    }

    #[test]
    fn tables_satisfy_identity_and_inverse_laws() {
        for g in [s3(), FactorGroup::Table(TableGroup::cyclic(7).unwrap())] {
            let FactorGroup::Table(t) = &g else { unreachable!() };
            for i in 0..t.order() as u32 {
                assert_eq!(t.mul(i, t.identity()), i);
                assert_eq!(t.mul(i, t.inv(i)), t.identity());
                assert_eq!(t.mul(t.inv(i), i), t.identity());
            }
        }
    }

    #[test]
    fn window_enumeration() {
        let z = FactorGroup::Abelian(AbelianGroup::new(vec![0, 2]).unwrap());
        assert_eq!(z.window(2).len(), 10);
        let f = FactorGroup::Free(FreeGroup::new(2).unwrap());
        // 1 + 4 + 12 reduced words of length <= 2.
        assert_eq!(f.window(2).len(), 17);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let g = FactorGroup::Table(
            TableGroup::cyclic(2)
                .unwrap()
                .with_names(vec!["e".into(), "a".into()])
                .unwrap(),
        );
        assert_eq!(g.parse_element("a").unwrap(), FactorElement::Table(1));
        assert_eq!(g.format(&FactorElement::Table(1)), "a");
        let f = FactorGroup::Free(FreeGroup::new(2).unwrap());
        let w = f.parse_element("[1,-2,2]").unwrap();
        assert_eq!(w, FactorElement::Word(vec![1]));
        assert_eq!(f.format(&FactorElement::Word(vec![1, -2])), "x1.x2^-1");
    }
}
