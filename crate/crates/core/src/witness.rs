//! Exponent schedules for the `(g h)^alpha (g h' g h'^-1)^beta` style witnesses.

use serde::{Deserialize, Serialize};

/// Maximum number of exponent doublings after the first attempt.
pub const MAX_ESCALATIONS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponents {
    pub alpha: u64,
    pub beta: u64,
}

impl Exponents {
    /// Starting point of the escalating schedule: `alpha = d (n + 4)`,
    /// `beta = d (3n + 4)(n + 1)`, doubled once per escalation level.
    pub fn escalating(d: u32, n: u32, level: usize) -> Exponents {
        let (d, n) = (d as u64, n as u64);
        let scale = 1u64 << level;
        Exponents {
            alpha: d * (n + 4) * scale,
            beta: d * (3 * n + 4) * (n + 1) * scale,
        }
    }

    /// The classical choice for `d = 2` over a trivial amalgam:
    /// `(g h)^(n+4) (g h' g h'^-1)^(3n+3)`.
    pub fn classical(n: u32) -> Exponents {
        let n = n as u64;
        Exponents {
            alpha: n + 4,
            beta: 3 * n + 3,
        }
    }
}

/// How verification picks witness exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Start from [`Exponents::escalating`] and double on failure, at most
    /// [`MAX_ESCALATIONS`] times.
    Escalating,
    /// A single attempt with the given exponents.
    Fixed(Exponents),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_values() {
        assert_eq!(Exponents::escalating(2, 0, 0), Exponents { alpha: 8, beta: 8 });
        assert_eq!(Exponents::escalating(2, 1, 0), Exponents { alpha: 10, beta: 28 });
        assert_eq!(Exponents::escalating(3, 1, 2), Exponents { alpha: 60, beta: 168 });
        assert_eq!(Exponents::classical(1), Exponents { alpha: 5, beta: 6 });
    }
}
