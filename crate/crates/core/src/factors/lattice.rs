//! Integer row echelon forms for subgroups of `Z^r / (moduli)`.

use crate::error::{Error, Result};

type Echelon = (Vec<(usize, Vec<i64>)>, Vec<Vec<i64>>);

/// Row-reduces `rows` over the integers on the columns `0..ncols`, using only
/// unimodular row operations. Returns the pivot rows (pivot column, row) in
/// increasing column order with positive pivots, and the remaining rows,
/// which vanish on those columns.
fn echelon(mut rows: Vec<Vec<i64>>, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    for col in 0..ncols {
        loop {
            let mut nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&i) = nonzero.first() {
                    let mut row = rows.swap_remove(i);
                    if row[col] < 0 {
                        row.iter_mut().for_each(|x| *x = -*x);
                    }
                    pivots.push((col, row));
                }
                break;
            }
            nonzero.sort_by_key(|&i| (rows[i][col].abs(), i));
            let p = nonzero[0];
            let prow = rows[p].clone();
            for &i in &nonzero[1..] {
                let q = rows[i][col] / prow[col];
                for (x, y) in rows[i].iter_mut().zip(&prow) {
                    *x -= q * y;
                }
            }
        }
    }
    (pivots, rows)
}

fn reduce_with(pivots: &[(usize, Vec<i64>)], v: &mut [i64]) {
    for (col, row) in pivots {
        let q = v[*col].div_euclid(row[*col]);
        if q != 0 {
            for (x, y) in v.iter_mut().zip(row) {
                *x -= q * y;
            }
        }
    }
}

/// The subgroup of `Z^r` spanned by some generators together with the
/// relations `m_i e_i` of the ambient moduli, kept in echelon form.
#[derive(Clone, Debug)]
pub struct IntegerLattice {
    dim: usize,
    moduli: Vec<i64>,
    pivots: Vec<(usize, Vec<i64>)>,
}

impl IntegerLattice {
    pub fn new(generators: &[Vec<i64>], moduli: &[i64]) -> Result<Self> {
        let dim = moduli.len();
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(Error::InvalidSubgroup(format!(
                "generator of length {} in an ambient group of rank {dim}",
                g.len()
            )));
        }
        let mut rows: Vec<Vec<i64>> = generators.to_vec();
        for (i, &m) in moduli.iter().enumerate() {
            if m > 0 {
                let mut e = vec![0; dim];
                e[i] = m;
                rows.push(e);
            }
        }
        let (pivots, _) = echelon(rows, dim);
        Ok(IntegerLattice {
            dim,
            moduli: moduli.to_vec(),
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical representative of `v` modulo the lattice: pivot coordinates
    /// land in `[0, pivot)`, other coordinates are untouched.
    pub fn residue(&self, v: &[i64]) -> Vec<i64> {
        let mut r = v.to_vec();
        reduce_with(&self.pivots, &mut r);
        for (x, &m) in r.iter_mut().zip(&self.moduli) {
            if m > 0 {
                *x = x.rem_euclid(m);
            }
        }
        r
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.residue(v).iter().all(|&x| x == 0)
    }

    /// True iff the lattice is all of `Z^r`.
    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.dim && self.pivots.iter().all(|(c, row)| row[*c] == 1)
    }

    /// Pivot values, e.g. `[2]` for `2Z` inside `Z`.
    pub fn pivot_values(&self) -> Vec<(usize, i64)> {
        self.pivots.iter().map(|(c, row)| (*c, row[*c])).collect()
    }
}

/// A homomorphism from a lattice-presented subgroup of one abelian group to
/// another, given by the images of the generators.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    source_dim: usize,
    target_moduli: Vec<i64>,
    pivots: Vec<(usize, Vec<i64>)>,
}

impl LatticeMap {
    /// Fails unless `generators[i] -> images[i]` extends to a well-defined
    /// homomorphism on the subgroup they generate.
    pub fn new(
        source_moduli: &[i64],
        target_moduli: &[i64],
        generators: &[Vec<i64>],
        images: &[Vec<i64>],
    ) -> Result<Self> {
        let (r, s) = (source_moduli.len(), target_moduli.len());
        if generators.len() != images.len() {
            return Err(Error::InvalidIdentification(format!(
                "{} generators but {} images",
                generators.len(),
                images.len()
            )));
        }
        if generators.iter().any(|g| g.len() != r) || images.iter().any(|g| g.len() != s) {
            return Err(Error::InvalidIdentification(
                "generator or image has the wrong rank".into(),
            ));
        }
        let mut rows: Vec<Vec<i64>> = generators
            .iter()
            .zip(images)
            .map(|(g, h)| g.iter().chain(h).copied().collect())
            .collect();
        for (i, &m) in source_moduli.iter().enumerate() {
            if m > 0 {
                let mut e = vec![0; r + s];
                e[i] = m;
                rows.push(e);
            }
        }
        let (pivots, kernel) = echelon(rows, r);
        for row in kernel {
            let image_is_zero =
                row[r..]
                    .iter()
                    .zip(target_moduli)
                    .all(|(&x, &m)| if m > 0 { x.rem_euclid(m) == 0 } else { x == 0 });
            if !image_is_zero {
                return Err(Error::InvalidIdentification(
                    "a relation among the generators is not preserved".into(),
                ));
            }
        }
        Ok(LatticeMap {
            source_dim: r,
            target_moduli: target_moduli.to_vec(),
            pivots,
        })
    }

    /// Image of `v`, or `None` when `v` is outside the source subgroup.
    pub fn apply(&self, v: &[i64]) -> Option<Vec<i64>> {
        let r = self.source_dim;
        let mut w: Vec<i64> = v
            .iter()
            .copied()
            .chain(std::iter::repeat_n(0, self.target_moduli.len()))
            .collect();
        reduce_with(&self.pivots, &mut w);
        if w[..r].iter().any(|&x| x != 0) {
            return None;
        }
        Some(
            w[r..]
                .iter()
                .zip(&self.target_moduli)
                .map(|(&x, &m)| if m > 0 { (-x).rem_euclid(m) } else { -x })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_integers() {
        let l = IntegerLattice::new(&[vec![2]], &[0]).unwrap();
        assert!(l.contains(&[4]));
        assert!(!l.contains(&[1]));
        assert_eq!(l.residue(&[-3]), vec![1]);
        assert!(!l.is_full());
    }

    #[test]
    fn gcd_of_generators() {
        let l = IntegerLattice::new(&[vec![6], vec![10]], &[0]).unwrap();
        assert_eq!(l.pivot_values(), vec![(0, 2)]);
        assert!(IntegerLattice::new(&[vec![2], vec![3]], &[0]).unwrap().is_full());
    }

    #[test]
    fn split_coordinates() {
        // {0} x Z/2 inside Z x Z/2.
        let l = IntegerLattice::new(&[vec![0, 1]], &[0, 2]).unwrap();
        assert_eq!(l.residue(&[5, 1]), vec![5, 0]);
        assert!(l.contains(&[0, 1]));
        assert!(!l.contains(&[1, 0]));
    }

    #[test]
    fn moduli_fold_into_membership() {
        // <3> in Z/6 is {0, 3}; 9 == 3 mod 6.
        let l = IntegerLattice::new(&[vec![3]], &[6]).unwrap();
        assert!(l.contains(&[9]));
        assert!(!l.contains(&[2]));
    }

    #[test]
    fn residue_is_constant_on_cosets() {
        let l = IntegerLattice::new(&[vec![2, 1], vec![0, 3]], &[0, 0]).unwrap();
        for x in -5..5 {
            for y in -5..5 {
                let r = l.residue(&[x, y]);
                for (a, b) in [(2, 1), (0, 3), (-4, 1)] {
                    assert_eq!(l.residue(&[x + a, y + b]), r);
                }
            }
        }
    }

    #[test]
    fn stretch_map_on_even_integers() {
        // 2k -> 3k
        let m = LatticeMap::new(&[0], &[0], &[vec![2]], &[vec![3]]).unwrap();
        assert_eq!(m.apply(&[2]), Some(vec![3]));
        assert_eq!(m.apply(&[-6]), Some(vec![-9]));
        assert_eq!(m.apply(&[1]), None);
    }

    #[test]
    fn ill_defined_map_rejected() {
        // Z/2 -> Z with 1 -> 1 is not a homomorphism.
        assert!(LatticeMap::new(&[2], &[0], &[vec![1]], &[vec![1]]).is_err());
        // Z/2 -> Z/4 with 1 -> 2 is fine.
        let m = LatticeMap::new(&[2], &[4], &[vec![1]], &[vec![2]]).unwrap();
        assert_eq!(m.apply(&[1]), Some(vec![2]));
    }
}
