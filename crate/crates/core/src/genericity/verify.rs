use serde::Serialize;

use super::{enumerate_ball, sweep, BALL_CAP};
use crate::construction::FreeConstruction;
use crate::error::Result;
use crate::witness::{Exponents, Schedule, MAX_ESCALATIONS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub element: String,
    pub hyperbolic: bool,
    /// Not a d-th power. Only evaluated for hyperbolic products.
    pub root_free: bool,
    pub exact: bool,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.hyperbolic && self.root_free
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub group_id: String,
    pub config_digest: Option<String>,
    pub construction: String,
    pub d: u32,
    pub n: u32,
    pub window: u32,
    pub schedule: String,
    pub ball_size: usize,
    pub witness: String,
    pub witness_length: usize,
    pub exponents: Exponents,
    /// One per ball element `x`, for the product `x * witness`.
    pub verdicts: Vec<Verdict>,
    pub escalations: usize,
    pub exact: bool,
    pub pass: bool,
    /// Filled in only when timing is requested, so reports stay
    /// reproducible byte for byte.
    pub elapsed_ms: Option<u64>,
}

/// Checks that `x * alpha` is hyperbolic and not a d-th power for every `x`
/// of length at most `n`. With [`Schedule::Escalating`] a failed candidate
/// is replaced by one with doubled exponents, at most
/// [`MAX_ESCALATIONS`] times; the last attempt is reported either way.
pub fn verify_lemma1<C: FreeConstruction>(
    group: &C,
    group_id: &str,
    window: u32,
    d: u32,
    n: u32,
    schedule: Schedule,
) -> Result<WitnessReport> {
    verify_lemma1_capped(group, group_id, window, d, n, schedule, BALL_CAP)
}

/// As [`verify_lemma1`], refusing balls larger than `cap`.
pub fn verify_lemma1_capped<C: FreeConstruction>(
    group: &C,
    group_id: &str,
    window: u32,
    d: u32,
    n: u32,
    schedule: Schedule,
    cap: usize,
) -> Result<WitnessReport> {
    crate::construction::check_degree(d)?;
    let ball = enumerate_ball(group, n as usize, window, cap)?;
    let levels = match schedule {
        Schedule::Escalating => MAX_ESCALATIONS + 1,
        Schedule::Fixed(_) => 1,
    };
    let mut last = None;
    for level in 0..levels {
        let (alpha, exponents) = match schedule {
            Schedule::Escalating => group.witness(d, n, level)?,
            Schedule::Fixed(e) => (group.witness_with(e)?, e),
        };
        let verdicts = sweep(&ball.elements, |x| -> Result<Verdict> {
            let y = group.mul(x, &alpha);
            let hyperbolic = !group.is_elliptic(&y);
            let (root_free, exact) = if hyperbolic {
                let t = group.is_dth_power(&y, d)?;
                (!t.is_power, t.exact)
            } else {
                (false, true)
            };
            Ok(Verdict {
                element: group.format(x),
                hyperbolic,
                root_free,
                exact,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let pass = verdicts.iter().all(Verdict::pass);
        let exact = ball.exact && verdicts.iter().all(|v| v.exact);
        let report = WitnessReport {
            group_id: group_id.to_string(),
            config_digest: None,
            construction: group.kind().to_string(),
            d,
            n,
            window,
            schedule: match schedule {
                Schedule::Escalating => "escalating".into(),
                Schedule::Fixed(_) => "fixed".into(),
            },
            ball_size: ball.elements.len(),
            witness: group.format(&alpha),
            witness_length: group.length(&alpha),
            exponents,
            verdicts,
            escalations: level,
            exact,
            pass,
            elapsed_ms: None,
        };
        if pass {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::tests::{s3_c2_s3, z2_z3};
    use crate::error::Error;
    use crate::hnn::tests::bs23;

    #[test]
    fn z2_z3_square_free_witness() {
        let r = verify_lemma1(&z2_z3(), "z2_z3", 2, 2, 1, Schedule::Escalating).unwrap();
        assert!(r.pass && r.exact);
        assert_eq!(r.escalations, 0);
        assert_eq!(r.verdicts.len(), 4);
    }

    #[test]
    fn classical_exponents() {
        for n in 0..3 {
            let r = verify_lemma1(&z2_z3(), "z2_z3", 2, 2, n, Schedule::Fixed(Exponents::classical(n))).unwrap();
            assert!(r.pass, "n = {n}");
        }
    }

    #[test]
    fn amalgamated_s3() {
        for d in [2, 3] {
            let r = verify_lemma1(&s3_c2_s3(), "s3", 2, d, 1, Schedule::Escalating).unwrap();
            assert!(r.pass && r.exact, "d = {d}");
        }
    }

    #[test]
    fn baumslag_solitar() {
        let r = verify_lemma1(&bs23(), "bs", 9, 2, 1, Schedule::Escalating).unwrap();
        assert!(r.pass);
        assert!(!r.exact || r.verdicts.iter().all(|v| v.exact));
    }

    #[test]
    fn degree_one_rejected() {
        assert!(matches!(
            verify_lemma1(&z2_z3(), "z2_z3", 2, 1, 0, Schedule::Escalating),
            Err(Error::InvalidArgument(_))
        ));
    }
}
