//! Bernoulli numbers and polynomials, Euler numbers and the rational
//! coefficients of the even zeta values.
//!
//! Everything is exact. Values are memoized in an append-only cache shared by
//! all threads; the free functions go through the process-wide cache.

use crate::exact::{binomial, from_int, pow2, pow2_inv, rat, Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::{OnceLock, RwLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BernoulliError {
    #[error("index must be at least {min}, got {n}")]
    IndexTooSmall { n: u32, min: u32 },
}

/// Append-only tables of `B_n`, `B_n(t)` and `E_n`.
#[derive(Default)]
pub struct BernoulliCache {
    numbers: RwLock<Vec<Rational>>,
    polynomials: RwLock<Vec<Poly>>,
    euler: RwLock<Vec<BigInt>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `B_n` from `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
    pub fn number(&self, n: u32) -> Rational {
        let n = n as usize;
        if let Some(v) = self.numbers.read().expect("cache poisoned").get(n) {
            return v.clone();
        }
        let mut table = self.numbers.write().expect("cache poisoned");
        while table.len() <= n {
            let m = table.len();
            let value = if m == 0 {
                Rational::one()
            } else if m > 1 && m % 2 == 1 {
                Rational::zero()
            } else {
                let mut acc = Rational::zero();
                for (k, bk) in table.iter().enumerate() {
                    if !bk.is_zero() {
                        acc += bk * Rational::from_integer(binomial(m + 1, k));
                    }
                }
                -acc / from_int(m as u64 + 1)
            };
            table.push(value);
        }
        table[n].clone()
    }

    /// `B_n(t) = sum_k C(n, k) B_k t^{n-k}`.
    pub fn polynomial(&self, n: u32) -> Poly {
        let idx = n as usize;
        if let Some(p) = self.polynomials.read().expect("cache poisoned").get(idx) {
            return p.clone();
        }
        // fill the number table before taking the polynomial lock
        self.number(n);
        let mut table = self.polynomials.write().expect("cache poisoned");
        while table.len() <= idx {
            let m = table.len();
            let coeffs = (0..=m)
                .map(|power| {
                    let k = m - power;
                    self.number(k as u32) * Rational::from_integer(binomial(m, k))
                })
                .collect();
            table.push(Poly::new(coeffs));
        }
        table[idx].clone()
    }

    /// `E_n` with `sum_{k=0}^{m} C(2m, 2k) E_{2k} = 0` for `m >= 1`.
    pub fn euler(&self, n: u32) -> BigInt {
        if n % 2 == 1 {
            return BigInt::zero();
        }
        let half = (n / 2) as usize;
        if let Some(v) = self.euler.read().expect("cache poisoned").get(half) {
            return v.clone();
        }
        let mut table = self.euler.write().expect("cache poisoned");
        while table.len() <= half {
            let m = table.len();
            let value = if m == 0 {
                BigInt::one()
            } else {
                let mut acc = BigInt::zero();
                for (k, e) in table.iter().enumerate() {
                    acc += binomial(2 * m, 2 * k) * e;
                }
                -acc
            };
            table.push(value);
        }
        table[half].clone()
    }
}

fn global() -> &'static BernoulliCache {
    static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
    CACHE.get_or_init(BernoulliCache::new)
}

pub fn bernoulli_number(n: u32) -> Rational {
    global().number(n)
}

pub fn bernoulli_polynomial(n: u32) -> Poly {
    global().polynomial(n)
}

pub fn euler_number(n: u32) -> BigInt {
    global().euler(n)
}

/// `B_n(t)` at a rational point.
pub fn bernoulli_value(n: u32, t: &Rational) -> Rational {
    bernoulli_polynomial(n).eval(t)
}

/// `B_n(1/2) = -(1 - 2^{1-n}) B_n`.
pub fn bernoulli_at_half(n: u32) -> Rational {
    // 1 - 2^{1-n}, with n = 0 giving 1 - 2 = -1
    let factor = if n == 0 {
        rat(-1, 1)
    } else {
        Rational::one() - pow2_inv(n - 1)
    };
    -(factor * bernoulli_number(n))
}

/// `B_n(1/4) = -(1 - 2^{1-n}) / 2^n * B_n - n / 4^n * E_{n-1}` for `n >= 1`.
pub fn bernoulli_at_quarter(n: u32) -> Result<Rational, BernoulliError> {
    if n == 0 {
        return Err(BernoulliError::IndexTooSmall { n, min: 1 });
    }
    let factor = Rational::one() - pow2_inv(n - 1);
    let first = factor * pow2_inv(n) * bernoulli_number(n);
    let second = from_int(n) * pow2_inv(2 * n) * Rational::from_integer(euler_number(n - 1));
    Ok(-first - second)
}

/// `c_n` with `zeta(2n) = c_n * pi^{2n}`, i.e.
/// `c_n = (-1)^{n+1} 2^{2n-1} B_{2n} / (2n)!`.
pub fn zeta_even_coefficient(n: u32) -> Result<Rational, BernoulliError> {
    if n == 0 {
        return Err(BernoulliError::IndexTooSmall { n, min: 1 });
    }
    let mut fact = BigInt::one();
    for k in 2..=(2 * n as u64) {
        fact *= k;
    }
    let sign = if n % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok(sign * pow2(2 * n - 1) * bernoulli_number(2 * n) / Rational::from_integer(fact))
}

/// `(-1)^k` as a rational.
pub(crate) fn parity_sign(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `n!` as a rational.
pub(crate) fn factorial(n: u32) -> Rational {
    let mut f = BigInt::one();
    for k in 2..=n as u64 {
        f *= k;
    }
    Rational::from_integer(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn number_examples() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(7), rat(0, 1));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(
            bernoulli_polynomial(3),
            Poly::new(vec![rat(0, 1), rat(1, 2), rat(-3, 2), rat(1, 1)])
        );
        assert_eq!(bernoulli_polynomial(0), Poly::constant(rat(1, 1)));
        let b4 = bernoulli_polynomial(4);
        let shifted = &b4 - &Poly::constant(bernoulli_number(4));
        assert_eq!(shifted, Poly::from_ints(&[0, 0, 1, -2, 1]));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_number(0), BigInt::from(1));
        assert_eq!(euler_number(3), BigInt::from(0));
        assert_eq!(euler_number(4), BigInt::from(5));
        assert_eq!(euler_number(2), BigInt::from(-1));
    }

    #[test]
    fn half_point_examples() {
        assert_eq!(bernoulli_at_half(2), rat(-1, 12));
        assert_eq!(bernoulli_at_half(3), rat(0, 1));
        assert_eq!(bernoulli_at_half(0), rat(1, 1));
    }

    #[test]
    fn quarter_point_examples() {
        assert_eq!(bernoulli_at_quarter(2).unwrap(), rat(-1, 48));
        assert_eq!(bernoulli_at_quarter(3).unwrap(), rat(3, 64));
        assert_eq!(bernoulli_at_quarter(1).unwrap(), rat(-1, 4));
        assert!(bernoulli_at_quarter(0).is_err());
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta_even_coefficient(1).unwrap(), rat(1, 6));
        assert_eq!(zeta_even_coefficient(2).unwrap(), rat(1, 90));
        assert_eq!(zeta_even_coefficient(3).unwrap(), rat(1, 945));
        assert!(zeta_even_coefficient(0).is_err());
        for n in 1..=50 {
            assert!(zeta_even_coefficient(n).unwrap().is_positive(), "n={n}");
        }
    }

    #[test]
    fn cache_invariants() {
        for n in 1..=40u32 {
            let b2n = bernoulli_number(2 * n);
            let expected = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(
                crate::exact::rat(expected, 1).signum(),
                b2n.signum(),
                "n={n}"
            );
            assert!(bernoulli_number(2 * n + 1).is_zero());
        }
        for n in 0..=40u32 {
            let p = bernoulli_polynomial(n);
            assert_eq!(p.degree(), Some(n as usize));
            assert_eq!(p.leading(), Some(&rat(1, 1)));
            assert_eq!(p.coeff(0), bernoulli_number(n));
        }
    }

    #[test]
    fn independent_caches_agree() {
        let c = BernoulliCache::new();
        // populate out of order
        assert_eq!(c.polynomial(9), bernoulli_polynomial(9));
        assert_eq!(c.number(30), bernoulli_number(30));
        assert_eq!(c.euler(12), euler_number(12));
    }
}
