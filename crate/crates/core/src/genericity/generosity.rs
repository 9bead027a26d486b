use serde::Serialize;

use super::{enumerate_ball, sweep, BALL_CAP};
use crate::construction::FreeConstruction;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EscapeeReport {
    pub group_id: String,
    pub config_digest: Option<String>,
    pub construction: String,
    pub translate_radius: usize,
    pub target_radius: usize,
    pub window: u32,
    pub searched: usize,
    /// First element `z` of the target ball, in canonical order, such that
    /// `g z` is hyperbolic for every `g` in the translate ball.
    pub escapee: Option<String>,
    pub exact: bool,
    pub elapsed_ms: Option<u64>,
}

/// Searches the ball of radius `target_radius` for an element outside
/// every left translate `g E`, `|g| <= translate_radius`, of the elliptic
/// set `E`.
pub fn generosity_escapee<C: FreeConstruction>(
    group: &C,
    group_id: &str,
    window: u32,
    translate_radius: usize,
    target_radius: usize,
) -> Result<EscapeeReport> {
    generosity_escapee_capped(group, group_id, window, translate_radius, target_radius, BALL_CAP)
}

/// As [`generosity_escapee`], refusing balls larger than `cap`.
pub fn generosity_escapee_capped<C: FreeConstruction>(
    group: &C,
    group_id: &str,
    window: u32,
    translate_radius: usize,
    target_radius: usize,
    cap: usize,
) -> Result<EscapeeReport> {
    let translates = enumerate_ball(group, translate_radius, window, cap)?;
    let targets = enumerate_ball(group, target_radius, window, cap)?;
    let escapes = sweep(&targets.elements, |z| {
        translates.elements.iter().all(|g| !group.is_elliptic(&group.mul(g, z)))
    });
    let escapee = escapes
        .iter()
        .position(|&e| e)
        .map(|i| group.format(&targets.elements[i]));
    Ok(EscapeeReport {
        group_id: group_id.to_string(),
        config_digest: None,
        construction: group.kind().to_string(),
        translate_radius,
        target_radius,
        window,
        searched: targets.elements.len(),
        escapee,
        exact: translates.exact && targets.exact,
        elapsed_ms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::tests::{named_cyclic, z2_z3};
    use crate::amalgam::AmalgamGroup;
    use crate::factors::SubgroupKind;

    #[test]
    fn no_translate_means_any_hyperbolic() {
        let r = generosity_escapee(&z2_z3(), "z2_z3", 2, 0, 2).unwrap();
        assert_eq!(r.escapee.as_deref(), Some("a b"));
    }

    #[test]
    fn z2_z3_needs_length_five() {
        // Exhaustive: nothing of length at most 4 survives all of 1, a, b, b^2.
        let p = z2_z3();
        assert_eq!(generosity_escapee(&p, "z2_z3", 2, 1, 4).unwrap().escapee, None);
        let r = generosity_escapee(&p, "z2_z3", 2, 1, 5).unwrap();
        assert_eq!(r.escapee.as_deref(), Some("a b a b a"));
        assert!(r.exact);
    }

    #[test]
    fn dihedral_has_no_escapee() {
        let z2 = named_cyclic(2, &["e", "a"]);
        let z2b = named_cyclic(2, &["e", "b"]);
        let d = AmalgamGroup::new(z2, SubgroupKind::Trivial, z2b, SubgroupKind::Trivial, 2).unwrap();
        for m in 1..=2 {
            assert_eq!(generosity_escapee(&d, "dihedral", 2, m, 6).unwrap().escapee, None);
        }
    }
}
