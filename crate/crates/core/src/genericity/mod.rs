//! Ball enumeration, witness verification and root censuses shared by both
//! constructions.

mod census;
mod generosity;
mod verify;

pub use census::{fs_type_census, fs_type_census_capped, CensusEntry, CensusReport};
pub use generosity::{generosity_escapee, generosity_escapee_capped, EscapeeReport};
pub use verify::{verify_lemma1, verify_lemma1_capped, Verdict, WitnessReport};

use serde::Serialize;

use crate::construction::FreeConstruction;
use crate::error::Result;

/// Largest ball enumerated before giving up with `CapExceeded`.
pub const BALL_CAP: usize = 2_000_000;

/// The elements of length at most `radius`, in canonical order.
#[derive(Clone, Debug)]
pub struct Ball<W> {
    pub radius: usize,
    pub window: u32,
    pub elements: Vec<W>,
    /// False when infinite factors were cut down to the window.
    pub exact: bool,
}

pub fn enumerate_ball<C: FreeConstruction>(group: &C, radius: usize, window: u32, cap: usize) -> Result<Ball<C::Word>> {
    let (elements, exact) = group.ball(radius, cap)?;
    Ok(Ball {
        radius,
        window,
        elements,
        exact,
    })
}

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
/// The output order is the input order either way.
pub(crate) fn sweep<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Pretty JSON with a trailing newline; field order follows the struct.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::tests::{s3_c2_s3, z2_z3};

    #[test]
    fn ball_sizes() {
        let p = z2_z3();
        let b: Vec<usize> = (0..4)
            .map(|n| enumerate_ball(&p, n, 2, BALL_CAP).unwrap().elements.len())
            .collect();
        assert_eq!(b, vec![1, 4, 8, 14]);
        assert_eq!(enumerate_ball(&s3_c2_s3(), 0, 2, BALL_CAP).unwrap().elements.len(), 2);
    }

    #[test]
    fn balls_are_nested() {
        let p = s3_c2_s3();
        let small = enumerate_ball(&p, 2, 2, BALL_CAP).unwrap().elements;
        let big = enumerate_ball(&p, 3, 2, BALL_CAP).unwrap().elements;
        assert!(small.iter().all(|x| big.binary_search(x).is_ok()));
    }
}
