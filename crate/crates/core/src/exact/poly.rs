use super::rational::{sign_of, Rational};
use super::ExactError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[i]` is the coefficient of `t^i`; the last stored coefficient is
/// nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// `t - r`
    pub fn linear_root(r: &Rational) -> Self {
        Poly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn sign_at(&self, t: &Rational) -> i8 {
        sign_of(&self.eval(t))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `p(alpha * t + beta)`
    pub fn compose_affine(&self, alpha: &Rational, beta: &Rational) -> Poly {
        let inner = Poly::new(vec![beta.clone(), alpha.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Result<Rational, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        Ok(Rational::new(num, den))
    }

    /// Divides out the positive content, leaving integer coefficients with
    /// gcd 1 and the original leading sign.
    pub fn primitive_part(&self) -> Result<Poly, ExactError> {
        let content = self.content()?;
        Ok(self.scale(&content.recip()))
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), ExactError> {
        let dd = divisor.degree().ok_or(ExactError::DivisionByZero)?;
        let lead = divisor.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly, ExactError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ExactError::InexactDivision)
        }
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("b is nonzero").1;
            a = b;
            b = if r.is_zero() {
                r
            } else {
                r.primitive_part().expect("nonzero")
            };
        }
        match a.leading() {
            Some(l) => {
                let l = l.clone();
                a.scale(&l.recip())
            }
            None => a,
        }
    }

    /// Removes every factor `(t - r)` and returns the reduced polynomial with
    /// the multiplicity that was stripped.
    pub fn deflate_root(&self, r: &Rational) -> (Poly, usize) {
        let mut p = self.clone();
        let mut k = 0;
        if p.is_zero() {
            return (p, 0);
        }
        let lin = Poly::linear_root(r);
        while p.eval(r).is_zero() {
            p = p.div_exact(&lin).expect("r is a root");
            k += 1;
        }
        (p, k)
    }

    /// Integer coefficient vector of the primitive part (ascending powers).
    pub fn primitive_integer_coeffs(&self) -> Result<Vec<BigInt>, ExactError> {
        Ok(self
            .primitive_part()?
            .coeffs
            .into_iter()
            .map(|c| c.to_integer())
            .collect())
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "({mag})t")?,
                _ if unit => write!(f, "t^{i}")?,
                _ => write!(f, "({mag})t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as the ascending coefficient list of `p/q` strings.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Coeffs(#[serde(with = "super::serde_str::vec")] Vec<Rational>);
        Ok(Poly::new(Coeffs::deserialize(d)?.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn b2() -> Poly {
        Poly::new(vec![rat(1, 6), rat(-1, 1), rat(1, 1)])
    }

    fn b3() -> Poly {
        Poly::new(vec![rat(0, 1), rat(1, 2), rat(-3, 2), rat(1, 1)])
    }

    #[test]
    fn eval_examples() {
        assert_eq!(b3().eval(&rat(1, 4)), rat(3, 64));
        assert_eq!(Poly::zero().eval(&rat(7, 3)), rat(0, 1));
        assert_eq!(b2().eval(&rat(1, 2)), rat(-1, 12));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(b3().derivative(), b2().scale(&rat(3, 1)));
        assert!(Poly::constant(rat(5, 2)).derivative().is_zero());
        assert_eq!(b2().derivative(), Poly::from_ints(&[-1, 2]));
    }

    #[test]
    fn arith_examples() {
        let reflected = b3().compose_affine(&rat(-1, 1), &rat(1, 1));
        assert_eq!(reflected, -&b3());
        assert!((&b2() * &Poly::zero()).is_zero());
        let diff = &b2() - &Poly::constant(rat(1, 6));
        assert_eq!(diff, Poly::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn primitive_part_examples() {
        let p = Poly::from_ints(&[1, -6, 6]);
        let scaled = p.scale(&rat(1, 3));
        assert_eq!(scaled.primitive_part().unwrap(), p);
        assert_eq!(scaled.content().unwrap(), rat(1, 3));
        let q = Poly::new(vec![rat(-1, 4), rat(1, 2)]);
        assert_eq!(q.primitive_part().unwrap(), Poly::from_ints(&[-1, 2]));
        let r = Poly::from_ints(&[4, -2]);
        assert_eq!(r.primitive_part().unwrap(), Poly::from_ints(&[2, -1]));
        assert_eq!(
            Poly::zero().primitive_part(),
            Err(ExactError::ZeroPolynomial)
        );
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = Poly::from_ints(&[1, 1]); // t + 1
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = a.gcd(&Poly::from_ints(&[1, 2, 1]));
        assert_eq!(g, b);
        assert_eq!(a.div_rem(&Poly::zero()), Err(ExactError::DivisionByZero));
        let (d, k) = (&a * &a).deflate_root(&rat(1, 1));
        assert_eq!(k, 2);
        assert_eq!(d, Poly::from_ints(&[1, 2, 1]));
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(b3().to_string(), "t^3 - (3/2)t^2 + (1/2)t");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
