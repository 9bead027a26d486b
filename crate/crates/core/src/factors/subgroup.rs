use std::collections::{HashMap, HashSet, VecDeque};

use super::lattice::{IntegerLattice, LatticeMap};
use super::{FactorElement, FactorGroup};
use crate::error::{Error, Result};

/// Cap on the size of a lattice subgroup enumerated element by element.
const ENUMERATION_CAP: usize = 1 << 16;

/// How a subgroup is presented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupKind {
    Trivial,
    /// Explicit list of all elements; the order is meaningful for
    /// identification maps given by parallel lists.
    Finite(Vec<FactorElement>),
    /// Integer generator vectors inside a finitely generated abelian group.
    Lattice(Vec<Vec<i64>>),
}

/// Membership, right-coset representatives and double cosets for a fixed
/// subgroup of a factor group.
#[derive(Clone, Debug)]
pub struct SubgroupOracle {
    kind: SubgroupKind,
    members: HashSet<FactorElement>,
    /// For table groups: element index -> (a, r) with g = a r.
    table_split: Option<Vec<(u32, u32)>>,
    lattice: Option<IntegerLattice>,
    finite_coords: Vec<bool>,
    ambient_abelian: bool,
}

impl SubgroupOracle {
    pub fn trivial() -> Self {
        SubgroupOracle {
            kind: SubgroupKind::Trivial,
            members: HashSet::new(),
            table_split: None,
            lattice: None,
            finite_coords: Vec::new(),
            ambient_abelian: true,
        }
    }

    pub fn new(group: &FactorGroup, kind: SubgroupKind) -> Result<Self> {
        match kind {
            SubgroupKind::Trivial => Ok(Self::trivial()),
            SubgroupKind::Finite(list) => Self::finite(group, list),
            SubgroupKind::Lattice(gens) => {
                let FactorGroup::Abelian(ab) = group else {
                    return Err(Error::Unsupported(format!(
                        "lattice subgroups need an fg-abelian ambient group, not {}",
                        group.kind_name()
                    )));
                };
                let lattice = IntegerLattice::new(&gens, ab.moduli())?;
                Ok(SubgroupOracle {
                    kind: SubgroupKind::Lattice(gens),
                    members: HashSet::new(),
                    table_split: None,
                    lattice: Some(lattice),
                    finite_coords: ab.moduli().iter().map(|&m| m > 0).collect(),
                    ambient_abelian: true,
                })
            }
        }
    }

    fn finite(group: &FactorGroup, list: Vec<FactorElement>) -> Result<Self> {
        for x in &list {
            group.validate(x)?;
        }
        let members: HashSet<FactorElement> = list.iter().cloned().collect();
        if members.len() != list.len() {
            return Err(Error::InvalidSubgroup("repeated element in subgroup listing".into()));
        }
        if !members.contains(&group.identity()) {
            return Err(Error::InvalidSubgroup("subgroup listing lacks the identity".into()));
        }
        for x in &list {
            if !members.contains(&group.inv(x)) {
                return Err(Error::InvalidSubgroup("subgroup not closed under inversion".into()));
            }
            for y in &list {
                if !members.contains(&group.mul(x, y)) {
                    return Err(Error::InvalidSubgroup(
                        "subgroup not closed under multiplication".into(),
                    ));
                }
            }
        }
        if list.len() == 1 {
            return Ok(Self::trivial());
        }
        if let FactorGroup::Free(_) = group {
            return Err(Error::Unsupported(
                "free factors only support the trivial subgroup".into(),
            ));
        }
        let table_split = match group {
            FactorGroup::Table(t) => {
                let n = t.order() as u32;
                let elems: Vec<u32> = list
                    .iter()
                    .map(|x| match x {
                        FactorElement::Table(i) => *i,
                        _ => unreachable!("validated"),
                    })
                    .collect();
                let mut split = vec![(0u32, 0u32); n as usize];
                for g in 0..n {
                    let r = elems.iter().map(|&a| t.mul(a, g)).min().expect("nonempty");
                    split[g as usize] = (t.mul(g, t.inv(r)), r);
                }
                Some(split)
            }
            _ => None,
        };
        Ok(SubgroupOracle {
            kind: SubgroupKind::Finite(list),
            members,
            table_split,
            lattice: None,
            finite_coords: Vec::new(),
            ambient_abelian: group.is_abelian(),
        })
    }

    pub fn kind(&self) -> &SubgroupKind {
        &self.kind
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.kind, SubgroupKind::Trivial)
    }

    pub fn is_member(&self, group: &FactorGroup, x: &FactorElement) -> bool {
        match (&self.kind, x) {
            (SubgroupKind::Trivial, _) => group.is_identity(x),
            (SubgroupKind::Finite(_), _) => self.members.contains(x),
            (SubgroupKind::Lattice(_), FactorElement::Vector(v)) => {
                self.lattice.as_ref().expect("lattice oracle").contains(v)
            }
            _ => false,
        }
    }

    /// Splits `x = a * r` with `a` in the subgroup and `r` the canonical
    /// representative of the right coset `A x`.
    pub fn coset_rep(&self, group: &FactorGroup, x: &FactorElement) -> (FactorElement, FactorElement) {
        match &self.kind {
            SubgroupKind::Trivial => (group.identity(), x.clone()),
            SubgroupKind::Finite(list) => match (&self.table_split, x) {
                (Some(split), FactorElement::Table(i)) => {
                    let (a, r) = split[*i as usize];
                    (FactorElement::Table(a), FactorElement::Table(r))
                }
                _ => {
                    let r = list.iter().map(|a| group.mul(a, x)).min().expect("nonempty subgroup");
                    (group.mul(x, &group.inv(&r)), r)
                }
            },
            SubgroupKind::Lattice(_) => {
                let FactorElement::Vector(v) = x else {
                    panic!("coset_rep: non-vector element in an abelian group")
                };
                let r = self.lattice.as_ref().expect("lattice oracle").residue(v);
                let r = FactorElement::Vector(r);
                (group.mul(x, &group.inv(&r)), r)
            }
        }
    }

    /// Checked variant of [`coset_rep`](Self::coset_rep).
    pub fn split(&self, group: &FactorGroup, x: &FactorElement) -> Result<(FactorElement, FactorElement)> {
        group.validate(x)?;
        Ok(self.coset_rep(group, x))
    }

    /// `A x A == A y A`.
    pub fn double_coset_equal(&self, group: &FactorGroup, x: &FactorElement, y: &FactorElement) -> bool {
        match &self.kind {
            SubgroupKind::Trivial => x == y,
            SubgroupKind::Finite(list) if !self.ambient_abelian => list.iter().any(|a| {
                let ax = group.mul(a, x);
                list.iter().any(|b| &group.mul(&ax, b) == y)
            }),
            _ => self.is_member(group, &group.mul(&group.inv(x), y)),
        }
    }

    pub fn is_finite(&self) -> bool {
        match &self.kind {
            SubgroupKind::Trivial | SubgroupKind::Finite(_) => true,
            // Finite iff every generator vanishes on the infinite coordinates.
            SubgroupKind::Lattice(gens) => gens
                .iter()
                .all(|g| g.iter().zip(&self.finite_coords).all(|(&c, &finite)| finite || c == 0)),
        }
    }

    /// All elements, sorted, when the subgroup is finite and small enough.
    pub fn elements(&self, group: &FactorGroup) -> Option<Vec<FactorElement>> {
        match &self.kind {
            SubgroupKind::Trivial => Some(vec![group.identity()]),
            SubgroupKind::Finite(list) => {
                let mut v = list.clone();
                v.sort();
                Some(v)
            }
            SubgroupKind::Lattice(gens) => {
                if !self.is_finite() {
                    return None;
                }
                let gens: Vec<FactorElement> = gens
                    .iter()
                    .map(|g| {
                        let FactorGroup::Abelian(ab) = group else {
                            unreachable!()
                        };
                        ab.element(g.clone())
                    })
                    .collect();
                let mut seen: HashSet<FactorElement> = HashSet::from([group.identity()]);
                let mut queue = VecDeque::from([group.identity()]);
                while let Some(x) = queue.pop_front() {
                    for g in &gens {
                        let y = group.mul(&x, g);
                        if seen.insert(y.clone()) {
                            if seen.len() > ENUMERATION_CAP {
                                return None;
                            }
                            queue.push_back(y);
                        }
                    }
                }
                let mut v: Vec<FactorElement> = seen.into_iter().collect();
                v.sort();
                Some(v)
            }
        }
    }

    /// Subgroup members inside the factor's search window, sorted. Exact
    /// (the full subgroup) whenever the subgroup is finite.
    pub fn window_elements(&self, group: &FactorGroup, window: u32) -> Vec<FactorElement> {
        if let Some(all) = self.elements(group) {
            return all;
        }
        group
            .window(window)
            .into_iter()
            .filter(|x| self.is_member(group, x))
            .collect()
    }

    /// True iff the subgroup is a proper subgroup of `group`.
    pub fn is_proper(&self, group: &FactorGroup) -> bool {
        match &self.kind {
            SubgroupKind::Trivial => group.order() != Some(1),
            SubgroupKind::Finite(list) => group.order().is_none_or(|n| list.len() < n),
            SubgroupKind::Lattice(_) => !self.lattice.as_ref().expect("lattice oracle").is_full(),
        }
    }

    /// True iff every subgroup element commutes with all of `group`.
    pub fn is_central(&self, group: &FactorGroup) -> bool {
        if self.is_trivial() || self.ambient_abelian {
            return true;
        }
        match (&self.kind, group.elements()) {
            (SubgroupKind::Finite(list), Some(all)) => list
                .iter()
                .all(|a| all.iter().all(|g| group.mul(a, g) == group.mul(g, a))),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
enum IdMap {
    Trivial,
    Pairs(HashMap<FactorElement, FactorElement>),
    Lattice(LatticeMap),
}

/// An isomorphism between a subgroup of one factor and a subgroup of
/// another (or of the same, for HNN extensions).
#[derive(Clone, Debug)]
pub struct Identification {
    map: IdMap,
    target_identity: FactorElement,
}

impl Identification {
    /// Builds the isomorphism `source -> target` and its inverse from
    /// parallel presentations: the i-th listed element (finite) or i-th
    /// generator (lattice) of `source` goes to the i-th of `target`.
    pub fn from_parallel(
        source_group: &FactorGroup,
        source: &SubgroupOracle,
        target_group: &FactorGroup,
        target: &SubgroupOracle,
    ) -> Result<(Identification, Identification)> {
        match (&source.kind, &target.kind) {
            (SubgroupKind::Trivial, SubgroupKind::Trivial) => Ok((
                Identification {
                    map: IdMap::Trivial,
                    target_identity: target_group.identity(),
                },
                Identification {
                    map: IdMap::Trivial,
                    target_identity: source_group.identity(),
                },
            )),
            (SubgroupKind::Finite(xs), SubgroupKind::Finite(ys)) => {
                if xs.len() != ys.len() {
                    return Err(Error::InvalidIdentification(format!(
                        "subgroups of orders {} and {}",
                        xs.len(),
                        ys.len()
                    )));
                }
                let forward: HashMap<FactorElement, FactorElement> =
                    xs.iter().cloned().zip(ys.iter().cloned()).collect();
                for (x1, y1) in xs.iter().zip(ys) {
                    for (x2, y2) in xs.iter().zip(ys) {
                        if forward[&source_group.mul(x1, x2)] != target_group.mul(y1, y2) {
                            return Err(Error::InvalidIdentification(
                                "parallel listings do not define a homomorphism".into(),
                            ));
                        }
                    }
                }
                let backward = ys.iter().cloned().zip(xs.iter().cloned()).collect();
                Ok((
                    Identification {
                        map: IdMap::Pairs(forward),
                        target_identity: target_group.identity(),
                    },
                    Identification {
                        map: IdMap::Pairs(backward),
                        target_identity: source_group.identity(),
                    },
                ))
            }
            (SubgroupKind::Lattice(xs), SubgroupKind::Lattice(ys)) => {
                let (FactorGroup::Abelian(sa), FactorGroup::Abelian(ta)) = (source_group, target_group) else {
                    unreachable!("lattice oracles live in abelian groups")
                };
                let forward = LatticeMap::new(sa.moduli(), ta.moduli(), xs, ys)?;
                let backward = LatticeMap::new(ta.moduli(), sa.moduli(), ys, xs)?;
                Ok((
                    Identification {
                        map: IdMap::Lattice(forward),
                        target_identity: target_group.identity(),
                    },
                    Identification {
                        map: IdMap::Lattice(backward),
                        target_identity: source_group.identity(),
                    },
                ))
            }
            _ => Err(Error::Unsupported(
                "identified subgroups must be presented the same way (trivial, finite or lattice)".into(),
            )),
        }
    }

    /// Image of a subgroup element; `None` for anything outside the source.
    pub fn apply(&self, x: &FactorElement) -> Option<FactorElement> {
        match (&self.map, x) {
            (IdMap::Trivial, _) => Some(self.target_identity.clone()),
            (IdMap::Pairs(m), _) => m.get(x).cloned(),
            (IdMap::Lattice(m), FactorElement::Vector(v)) => m.apply(v).map(FactorElement::Vector),
            _ => None,
        }
    }

    /// Image of an element known to lie in the source subgroup.
    pub fn map(&self, x: &FactorElement) -> FactorElement {
        self.apply(x).expect("identification applied outside its domain")
    }
}

/// Elements `g` of one factor and `h`, `h'` of the other, all outside the
/// amalgamated subgroup. `swapped` means `g` comes from `H` and `h`, `h'`
/// from `G`. `strict` records whether `A h A != A h' A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegenerateTriple {
    pub swapped: bool,
    pub g: FactorElement,
    pub h: FactorElement,
    pub h_prime: FactorElement,
    pub strict: bool,
}

fn non_members(group: &FactorGroup, a: &SubgroupOracle, window: u32) -> Vec<FactorElement> {
    group
        .window(window)
        .into_iter()
        .filter(|x| !a.is_member(group, x))
        .collect()
}

fn strict_pair(group: &FactorGroup, a: &SubgroupOracle, window: u32) -> Option<(FactorElement, FactorElement)> {
    let outside = non_members(group, a, window);
    let h = outside.first()?.clone();
    let h_prime = outside.iter().find(|y| !a.double_coset_equal(group, &h, y))?.clone();
    Some((h, h_prime))
}

fn coset_distinct_pair(group: &FactorGroup, a: &SubgroupOracle, window: u32) -> Option<(FactorElement, FactorElement)> {
    let outside = non_members(group, a, window);
    let h = outside.first()?.clone();
    let h_coset = a.coset_rep(group, &h).1;
    let h_prime = outside.iter().find(|y| a.coset_rep(group, y).1 != h_coset)?.clone();
    Some((h, h_prime))
}

/// Searches (inside the factors' windows) for `g` outside `A` in one factor
/// and `h`, `h'` outside `A` in the other with `A h A != A h' A`, preferring
/// `h`, `h'` in `H`. Absent when no such triple exists in range.
pub fn nondegenerate_witnesses(
    g_group: &FactorGroup,
    a_g: &SubgroupOracle,
    h_group: &FactorGroup,
    a_h: &SubgroupOracle,
    window: u32,
) -> Option<NondegenerateTriple> {
    triple_with(g_group, a_g, h_group, a_h, window, strict_pair, true)
}

/// Like [`nondegenerate_witnesses`], but falling back to `h`, `h'` in
/// distinct right cosets when no two double cosets outside `A` exist.
pub(crate) fn witness_triple(
    g_group: &FactorGroup,
    a_g: &SubgroupOracle,
    h_group: &FactorGroup,
    a_h: &SubgroupOracle,
    window: u32,
) -> Option<NondegenerateTriple> {
    nondegenerate_witnesses(g_group, a_g, h_group, a_h, window)
        .or_else(|| triple_with(g_group, a_g, h_group, a_h, window, coset_distinct_pair, false))
}

fn triple_with(
    g_group: &FactorGroup,
    a_g: &SubgroupOracle,
    h_group: &FactorGroup,
    a_h: &SubgroupOracle,
    window: u32,
    pair: fn(&FactorGroup, &SubgroupOracle, u32) -> Option<(FactorElement, FactorElement)>,
    strict: bool,
) -> Option<NondegenerateTriple> {
    if !a_g.is_proper(g_group) || !a_h.is_proper(h_group) {
        return None;
    }
    for swapped in [false, true] {
        let (lone, lone_a, paired, paired_a) = if swapped {
            (h_group, a_h, g_group, a_g)
        } else {
            (g_group, a_g, h_group, a_h)
        };
        let Some(g) = non_members(lone, lone_a, window).into_iter().next() else {
            continue;
        };
        if let Some((h, h_prime)) = pair(paired, paired_a, window) {
            return Some(NondegenerateTriple {
                swapped,
                g,
                h,
                h_prime,
                strict,
            });
        }
    }
    None
}
