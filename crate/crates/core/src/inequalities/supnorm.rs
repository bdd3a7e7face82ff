use crate::bernoulli::{bernoulli_number, bernoulli_polynomial};
use crate::enclosure::{EnclosureError, RationalInterval};
use crate::exact::{half, pow2_inv, Poly, Rational};
use crate::roots::{isolate_roots, RootsError};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupnormKind {
    /// `sup |B_{2n+1}(t)|` over `[0, 1]`.
    OddPoly,
    /// `sup |B_{2n}(t) - B_{2n}|` over `[0, 1]`.
    EvenDiff,
}

impl SupnormKind {
    pub fn polynomial(self, n: u32) -> Poly {
        match self {
            SupnormKind::OddPoly => bernoulli_polynomial(2 * n + 1),
            SupnormKind::EvenDiff => {
                &bernoulli_polynomial(2 * n) - &Poly::constant(bernoulli_number(2 * n))
            }
        }
    }
}

/// Enclosure of the supremum of `|p|` over `[0, 1]` for the polynomial
/// selected by `kind`.
///
/// Candidates are the endpoints, any rational critical point among `0`,
/// `1/2`, `1`, and isolating intervals of width `2^-bits` around the
/// remaining real roots of `p'` in `(0, 1)`. The result is a point when every
/// critical point is rational.
pub fn supnorm_bound(n: u32, kind: SupnormKind, bits: u32) -> Result<RationalInterval, RootsError> {
    if n == 0 {
        return Err(RootsError::InvalidArgument(
            "index n must be at least 1".into(),
        ));
    }
    if bits < 8 {
        return Err(EnclosureError::PrecisionTooLow(bits).into());
    }
    let p = kind.polynomial(n);
    let mut dp = p.derivative();
    let mut candidates = vec![RationalInterval::point(p.eval(&Rational::zero()))];
    candidates.push(RationalInterval::point(p.eval(&Rational::one())));
    for r in [Rational::zero(), half(), Rational::one()] {
        let (reduced, mult) = dp.deflate_root(&r);
        if mult > 0 {
            candidates.push(RationalInterval::point(p.eval(&r)));
            dp = reduced;
        }
    }
    if dp.degree().is_some_and(|d| d > 0) {
        let width = pow2_inv(bits);
        for iv in isolate_roots(&dp, &Rational::zero(), &Rational::one(), &width)? {
            candidates.push(iv.as_interval().eval_poly(&p));
        }
    }
    let mut best = candidates[0].abs();
    for c in &candidates[1..] {
        let a = c.abs();
        let lo = best.lo().max(a.lo()).clone();
        let hi = best.hi().max(a.hi()).clone();
        best = RationalInterval::new(lo, hi);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enclosure::sqrt_enclosure;
    use crate::exact::rat;

    #[test]
    fn even_difference_is_exact() {
        let s = supnorm_bound(1, SupnormKind::EvenDiff, 64).unwrap();
        assert_eq!(s, RationalInterval::point(rat(1, 4)));
        for n in 2..=6 {
            let s = supnorm_bound(n, SupnormKind::EvenDiff, 64).unwrap();
            assert!(s.is_point(), "n={n}");
        }
    }

    #[test]
    fn odd_cubic_maximum() {
        let s = supnorm_bound(1, SupnormKind::OddPoly, 64).unwrap();
        let root3 = sqrt_enclosure(&rat(3, 1), 80).unwrap().scale(&rat(1, 36));
        assert!(s.intersect(&root3).is_some());
        assert!(s.width() < pow2_inv(60));
        assert!(s.lo() > &rat(481, 10000) && s.hi() < &rat(482, 10000));
    }

    #[test]
    fn rejects_index_zero() {
        assert!(supnorm_bound(0, SupnormKind::OddPoly, 64).is_err());
    }
}
