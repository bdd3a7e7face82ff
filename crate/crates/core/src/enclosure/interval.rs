use crate::exact::{ceil_dyadic, floor_dyadic, to_decimal_string, Poly, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::EnclosureError;

/// Closed interval `[lo, hi]` with exact rational endpoints.
///
/// Every operation returns an interval containing the exact image of its
/// operands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "crate::exact::serde_str")]
    lo: Rational,
    #[serde(with = "crate::exact::serde_str")]
    hi: Rational,
}

impl RationalInterval {
    /// Panics when `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        RationalInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RationalInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    /// Half-width.
    pub fn radius(&self) -> Rational {
        self.width() / Rational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Sign when the interval excludes zero.
    pub fn strict_sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            RationalInterval { lo: b, hi: a }
        } else {
            RationalInterval { lo: a, hi: b }
        }
    }

    pub fn shift(&self, k: &Rational) -> Self {
        RationalInterval {
            lo: &self.lo + k,
            hi: &self.hi + k,
        }
    }

    pub fn abs(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            let hi = self.hi.clone().max(-&self.lo);
            RationalInterval {
                lo: Rational::zero(),
                hi,
            }
        } else if self.hi.is_positive() || self.hi.is_zero() && !self.lo.is_negative() {
            self.clone()
        } else {
            -self
        }
    }

    pub fn recip(&self) -> Result<Self, EnclosureError> {
        if self.contains_zero() {
            return Err(EnclosureError::DivisionByZero);
        }
        Ok(RationalInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, rhs: &RationalInterval) -> Result<Self, EnclosureError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = RationalInterval::point(Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        // even powers of a sign-straddling interval are nonnegative
        if k.is_multiple_of(2) && acc.lo.is_negative() {
            acc.lo = Rational::zero();
        }
        acc
    }

    /// Intersection; `None` when disjoint.
    pub fn intersect(&self, other: &RationalInterval) -> Option<Self> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(RationalInterval { lo, hi })
    }

    pub fn hull(&self, other: &RationalInterval) -> Self {
        RationalInterval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    /// Snaps the endpoints outward onto the grid `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Self {
        RationalInterval {
            lo: floor_dyadic(&self.lo, bits),
            hi: ceil_dyadic(&self.hi, bits),
        }
    }

    pub fn inflate(&self, r: &Rational) -> Self {
        RationalInterval {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }

    /// Horner evaluation of `p` over the interval; contains `p(x)` for every
    /// `x` in `self`.
    pub fn eval_poly(&self, p: &Poly) -> Self {
        let mut acc = RationalInterval::point(Rational::zero());
        for c in p.coeffs().iter().rev() {
            acc = (&acc * self).shift(c);
        }
        acc
    }

    /// Decimal rendering of the midpoint.
    pub fn approx(&self, sig: usize) -> String {
        to_decimal_string(&self.midpoint(), sig)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl From<Rational> for RationalInterval {
    fn from(v: Rational) -> Self {
        RationalInterval::point(v)
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        if self.is_point() {
            return rhs.scale(&self.lo);
        }
        if rhs.is_point() {
            return self.scale(&rhs.lo);
        }
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().expect("four products").clone();
        let hi = products.iter().max().expect("four products").clone();
        RationalInterval { lo, hi }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn iv(a: i64, b: i64, d: i64) -> RationalInterval {
        RationalInterval::new(rat(a, d), rat(b, d))
    }

    #[test]
    fn arithmetic_is_outward() {
        let a = iv(-1, 2, 1);
        let b = iv(3, 5, 1);
        assert_eq!(&a * &b, iv(-5, 10, 1));
        assert_eq!(&a - &b, iv(-6, -1, 1));
        assert_eq!(a.div(&b).unwrap(), iv(-5, 10, 15));
        assert!(b.div(&a).is_err());
        assert_eq!(a.abs(), iv(0, 2, 1));
        assert_eq!(iv(-3, -1, 1).abs(), iv(1, 3, 1));
        assert_eq!(a.powi(2), iv(0, 4, 1));
    }

    #[test]
    fn poly_enclosure_contains_values() {
        let p = Poly::from_ints(&[1, -6, 6]);
        let x = iv(1, 3, 4);
        let y = x.eval_poly(&p);
        for k in 1..=3 {
            assert!(y.contains(&p.eval(&rat(k, 4))));
        }
        assert_eq!(
            RationalInterval::point(rat(1, 2)).eval_poly(&p),
            RationalInterval::point(rat(-1, 2))
        );
    }

    #[test]
    fn rounding_contains_original() {
        let a = iv(1, 2, 3);
        let r = a.round_outward(8);
        assert!(a.is_subset_of(&r));
        assert!(r.width() <= a.width() + rat(2, 256));
    }
}
