//! Rigorous enclosures of transcendental quantities by rational intervals.
//!
//! Precision is expressed in bits: an enclosure requested at `bits` has width
//! at most `2^-bits` (plus propagated input width for interval arguments).
//! Comparisons only report an ordering when the two enclosures are disjoint.

mod interval;
mod transcendental;

pub use interval::RationalInterval;
pub use transcendental::{
    cos_turns, cot_enclosure, cot_turns, pi_enclosure, pi_squared_enclosure, sin_turns,
    sqrt_enclosure, trig_enclosure, TrigFn,
};

use serde::Serialize;
use thiserror::Error;

/// Precision used when a caller has no opinion.
pub const DEFAULT_BITS: u32 = 64;
/// Upper limit for automatic precision doubling.
pub const MAX_BITS: u32 = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnclosureError {
    #[error("sine enclosure contains zero; cotangent is unbounded here")]
    PoleProximity,
    #[error("square root of a negative value")]
    NegativeRadicand,
    #[error("interval division by an interval containing zero")]
    DivisionByZero,
    #[error("precision must be at least 8 bits, got {0}")]
    PrecisionTooLow(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Less,
    Greater,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComparisonOutcome {
    pub verdict: Verdict,
    pub precision_used: u32,
}

/// Less iff `lhs.hi < rhs.lo`, Greater iff `lhs.lo > rhs.hi`.
pub fn compare(lhs: &RationalInterval, rhs: &RationalInterval) -> Verdict {
    if lhs.hi() < rhs.lo() {
        Verdict::Less
    } else if lhs.lo() > rhs.hi() {
        Verdict::Greater
    } else {
        Verdict::Undecided
    }
}

/// Re-evaluates both sides at doubling precision from `start_bits` until the
/// enclosures separate or `MAX_BITS` is exhausted.
pub fn compare_adaptive<F>(
    start_bits: u32,
    mut sides: F,
) -> Result<ComparisonOutcome, EnclosureError>
where
    F: FnMut(u32) -> Result<(RationalInterval, RationalInterval), EnclosureError>,
{
    let mut bits = start_bits.max(8);
    loop {
        let (lhs, rhs) = sides(bits)?;
        let verdict = compare(&lhs, &rhs);
        if verdict != Verdict::Undecided || bits >= MAX_BITS {
            return Ok(ComparisonOutcome {
                verdict,
                precision_used: bits,
            });
        }
        bits = (bits * 2).min(MAX_BITS);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn compare_examples() {
        let iv = |a, b| RationalInterval::new(rat(a, 1), rat(b, 1));
        assert_eq!(compare(&iv(1, 2), &iv(3, 4)), Verdict::Less);
        assert_eq!(compare(&iv(1, 3), &iv(2, 4)), Verdict::Undecided);
        assert_eq!(compare(&iv(5, 6), &iv(3, 4)), Verdict::Greater);
        let pi = pi_enclosure(32).unwrap();
        let bound = RationalInterval::point(rat(355, 113));
        assert_eq!(compare(&pi, &bound), Verdict::Less);
    }

    #[test]
    fn adaptive_escalates_until_separated() {
        // pi vs 355/113 differ by ~2.7e-7, which 16 bits cannot resolve
        let out = compare_adaptive(16, |bits| {
            Ok((pi_enclosure(bits)?, RationalInterval::point(rat(355, 113))))
        })
        .unwrap();
        assert_eq!(out.verdict, Verdict::Less);
        assert!(out.precision_used > 16);
    }

    #[test]
    fn adaptive_reports_undecided_for_equal_values() {
        let out = compare_adaptive(64, |_| {
            Ok((
                RationalInterval::point(rat(1, 3)),
                RationalInterval::point(rat(1, 3)),
            ))
        })
        .unwrap();
        assert_eq!(out.verdict, Verdict::Undecided);
        assert_eq!(out.precision_used, MAX_BITS);
    }
}
