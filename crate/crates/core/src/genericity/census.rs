use std::collections::BTreeMap;

use serde::Serialize;

use super::{enumerate_ball, sweep, BALL_CAP};
use crate::construction::{check_degree, FreeConstruction};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub element: String,
    /// Number of d-th roots of `element^d`.
    pub roots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub group_id: String,
    pub config_digest: Option<String>,
    pub construction: String,
    pub d: u32,
    pub radius: usize,
    pub window: u32,
    pub ball_size: usize,
    /// Hyperbolic ball elements that are not d-th powers, in ball order.
    pub entries: Vec<CensusEntry>,
    pub s_observed: usize,
    /// Root count to number of entries with that count.
    pub histogram: BTreeMap<usize, usize>,
    pub exact: bool,
    pub elapsed_ms: Option<u64>,
}

/// For every hyperbolic `x` in the ball that is not itself a d-th power,
/// counts the d-th roots of `x^d`.
pub fn fs_type_census<C: FreeConstruction>(
    group: &C,
    group_id: &str,
    window: u32,
    d: u32,
    radius: usize,
) -> Result<CensusReport> {
    fs_type_census_capped(group, group_id, window, d, radius, BALL_CAP)
}

/// As [`fs_type_census`], refusing balls larger than `cap`.
pub fn fs_type_census_capped<C: FreeConstruction>(
    group: &C,
    group_id: &str,
    window: u32,
    d: u32,
    radius: usize,
    cap: usize,
) -> Result<CensusReport> {
    check_degree(d)?;
    let ball = enumerate_ball(group, radius, window, cap)?;
    let rows = sweep(&ball.elements, |x| -> Result<Option<(CensusEntry, bool)>> {
        if group.is_elliptic(x) {
            return Ok(None);
        }
        let test = group.is_dth_power(x, d)?;
        if test.is_power {
            return Ok(None);
        }
        let set = group.dth_roots(&group.power(x, d as i64), d, 0)?;
        Ok(Some((
            CensusEntry {
                element: group.format(x),
                roots: set.roots.len(),
            },
            test.exact && set.exact,
        )))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut exact = ball.exact;
    let mut entries = Vec::new();
    let mut histogram = BTreeMap::new();
    for (entry, entry_exact) in rows.into_iter().flatten() {
        exact &= entry_exact;
        *histogram.entry(entry.roots).or_insert(0) += 1;
        entries.push(entry);
    }
    Ok(CensusReport {
        group_id: group_id.to_string(),
        config_digest: None,
        construction: group.kind().to_string(),
        d,
        radius,
        window,
        ball_size: ball.elements.len(),
        s_observed: entries.iter().map(|e| e.roots).max().unwrap_or(0),
        entries,
        histogram,
        exact,
        elapsed_ms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::tests::{s3_c2_s3, z2_z3};

    #[test]
    fn free_product_roots_are_unique() {
        let r = fs_type_census(&z2_z3(), "z2_z3", 2, 2, 4).unwrap();
        assert_eq!(r.s_observed, 1);
        assert!(r.exact);
        assert_eq!(r.histogram.values().sum::<usize>(), r.entries.len());
    }

    #[test]
    fn malnormal_amalgam() {
        let r = fs_type_census(&s3_c2_s3(), "s3", 2, 2, 4).unwrap();
        assert_eq!(r.s_observed, 1);
        assert!(!r.entries.is_empty());
    }
}
