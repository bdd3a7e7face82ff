use super::{EnclosureError, RationalInterval};
use crate::exact::{from_int, pow2_inv, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

const GUARD_BITS: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigFn {
    Sin,
    Cos,
}

/// `arctan(1/x)` by its alternating series, each term rounded outward on the
/// `2^-work` grid; the truncation error is bounded by the first omitted term.
fn arctan_recip(x: u64, work: u32) -> RationalInterval {
    let x = from_int(x);
    let x2 = &x * &x;
    let eps = pow2_inv(work);
    let mut acc = RationalInterval::point(Rational::zero());
    let mut power = x.clone(); // x^{2k+1}
    let mut k: u64 = 0;
    loop {
        let term = (from_int(2 * k + 1) * &power).recip();
        let term_iv = RationalInterval::point(term.clone()).round_outward(work);
        if term < eps {
            // remainder lies between 0 and the signed first omitted term
            let tail = if k.is_multiple_of(2) {
                RationalInterval::new(Rational::zero(), term_iv.hi().clone())
            } else {
                RationalInterval::new(-term_iv.hi().clone(), Rational::zero())
            };
            return &acc + &tail;
        }
        acc = if k.is_multiple_of(2) {
            &acc + &term_iv
        } else {
            &acc - &term_iv
        };
        power *= &x2;
        k += 1;
    }
}

fn pi_cache() -> &'static Mutex<HashMap<u32, RationalInterval>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, RationalInterval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Enclosure of pi of width at most `2^-bits`, from
/// `pi = 16 arctan(1/5) - 4 arctan(1/239)`.
pub fn pi_enclosure(bits: u32) -> Result<RationalInterval, EnclosureError> {
    if bits < 8 {
        return Err(EnclosureError::PrecisionTooLow(bits));
    }
    if let Some(v) = pi_cache().lock().expect("pi cache poisoned").get(&bits) {
        return Ok(v.clone());
    }
    let work = bits + GUARD_BITS;
    let a = arctan_recip(5, work).scale(&from_int(16));
    let b = arctan_recip(239, work).scale(&from_int(4));
    let pi = (&a - &b).round_outward(bits + 2);
    debug_assert!(pi.width() <= pow2_inv(bits));
    pi_cache()
        .lock()
        .expect("pi cache poisoned")
        .insert(bits, pi.clone());
    Ok(pi)
}

pub fn pi_squared_enclosure(bits: u32) -> Result<RationalInterval, EnclosureError> {
    let pi = pi_enclosure(bits + 4)?;
    Ok(pi.powi(2).round_outward(bits + 2))
}

/// Taylor enclosure of sin or cos at an exact point.
///
/// Terms are carried as integer intervals on the grid `2^-w`, each step
/// rounded outward, so the work stays in plain integer products and shifts.
fn taylor_at_point(f: TrigFn, x: &Rational, work: u32) -> RationalInterval {
    if x.is_zero() {
        return RationalInterval::point(match f {
            TrigFn::Sin => Rational::zero(),
            TrigFn::Cos => Rational::one(),
        });
    }
    let w = work + 16;
    let unit = BigInt::one() << w as usize;
    let scaled = x.abs() * Rational::from_integer(unit.clone());
    let (x_lo, x_hi) = (scaled.floor().to_integer(), scaled.ceil().to_integer());
    let x2_lo = (&x_lo * &x_lo) >> w as usize;
    let x2_hi = ceil_shift(&x_hi * &x_hi, w);
    let (mut t_lo, mut t_hi, mut k) = match f {
        TrigFn::Sin => (x_lo, x_hi, 1u64),
        TrigFn::Cos => (unit.clone(), unit, 0u64),
    };
    let eps = BigInt::one() << 16;
    let (mut acc_lo, mut acc_hi) = (BigInt::zero(), BigInt::zero());
    let mut positive = true;
    loop {
        if positive {
            acc_lo += &t_lo;
            acc_hi += &t_hi;
        } else {
            acc_lo -= &t_hi;
            acc_hi -= &t_lo;
        }
        positive = !positive;
        let d = BigInt::from((k + 1) * (k + 2));
        t_lo = ((&t_lo * &x2_lo) >> w as usize) / &d;
        t_hi = ceil_div(ceil_shift(&t_hi * &x2_hi, w), &d);
        k += 2;
        // alternating tail once terms decrease: bounded by the next term
        if t_hi < eps && k >= 4 {
            acc_lo -= &t_hi;
            acc_hi += &t_hi;
            break;
        }
    }
    let den = BigInt::one() << w as usize;
    let iv = RationalInterval::new(
        Rational::new(acc_lo, den.clone()),
        Rational::new(acc_hi, den),
    );
    if f == TrigFn::Sin && x.is_negative() {
        -&iv
    } else {
        iv
    }
}

fn ceil_shift(v: BigInt, bits: u32) -> BigInt {
    let floor = &v >> bits as usize;
    if (&floor << bits as usize) == v {
        floor
    } else {
        floor + 1
    }
}

fn ceil_div(v: BigInt, d: &BigInt) -> BigInt {
    let (q, r) = v.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Enclosure of sin or cos over the interval `x`.
///
/// The argument is reduced by a multiple of `2*pi` taken from the pi
/// enclosure, then the function is evaluated at the reduced midpoint and
/// widened by the reduced radius (both functions are 1-Lipschitz).
pub fn trig_enclosure(
    f: TrigFn,
    x: &RationalInterval,
    bits: u32,
) -> Result<RationalInterval, EnclosureError> {
    if bits < 8 {
        return Err(EnclosureError::PrecisionTooLow(bits));
    }
    let work = bits + GUARD_BITS;
    let mut reduced = x.clone();
    let mid = x.midpoint();
    if mid.abs() > from_int(3) {
        let pi = pi_enclosure(work)?;
        let two_pi = pi.scale(&from_int(2));
        let k = (&mid / two_pi.midpoint()).round();
        reduced = &reduced - &two_pi.scale(&k);
    }
    let center = crate::exact::floor_dyadic(&reduced.midpoint(), work + 8);
    let spread = (&reduced.midpoint() - &center).abs() + reduced.radius();
    let value = taylor_at_point(f, &center, work).inflate(&spread);
    let unit = RationalInterval::new(-Rational::one(), Rational::one());
    let clipped = value.intersect(&unit).unwrap_or(unit);
    Ok(clipped.round_outward(bits + 2))
}

/// `2*pi*t` with `t` first reduced modulo 1 into `(-1/2, 1/2]`.
fn turns_to_radians(t: &Rational, work: u32) -> Result<RationalInterval, EnclosureError> {
    let mut r = t - t.floor();
    if r > Rational::new(1.into(), 2.into()) {
        r -= Rational::one();
    }
    let pi = pi_enclosure(work)?;
    Ok(pi.scale(&(r * from_int(2))))
}

/// `sin(2*pi*t)` for rational `t`.
pub fn sin_turns(t: &Rational, bits: u32) -> Result<RationalInterval, EnclosureError> {
    let x = turns_to_radians(t, bits + GUARD_BITS)?;
    trig_enclosure(TrigFn::Sin, &x, bits)
}

/// `cos(2*pi*t)` for rational `t`.
pub fn cos_turns(t: &Rational, bits: u32) -> Result<RationalInterval, EnclosureError> {
    let x = turns_to_radians(t, bits + GUARD_BITS)?;
    trig_enclosure(TrigFn::Cos, &x, bits)
}

pub fn cot_enclosure(x: &RationalInterval, bits: u32) -> Result<RationalInterval, EnclosureError> {
    let s = trig_enclosure(TrigFn::Sin, x, bits + 8)?;
    if s.contains_zero() {
        return Err(EnclosureError::PoleProximity);
    }
    let c = trig_enclosure(TrigFn::Cos, x, bits + 8)?;
    Ok(c.div(&s)?.round_outward(bits + 2))
}

/// `cot(2*pi*t)` for rational `t`.
pub fn cot_turns(t: &Rational, bits: u32) -> Result<RationalInterval, EnclosureError> {
    let x = turns_to_radians(t, bits + 8 + GUARD_BITS)?;
    cot_enclosure(&x, bits)
}

/// Enclosure of `sqrt(v)` of width at most `2^-bits`, from an integer square
/// root of `p * q * 4^bits` for `v = p/q`.
pub fn sqrt_enclosure(v: &Rational, bits: u32) -> Result<RationalInterval, EnclosureError> {
    if v.is_negative() {
        return Err(EnclosureError::NegativeRadicand);
    }
    if v.is_zero() {
        return Ok(RationalInterval::point(Rational::zero()));
    }
    let scale = BigInt::one() << (2 * bits as usize);
    let radicand: BigInt = v.numer() * v.denom() * scale;
    let root = radicand.sqrt();
    let den = v.denom() * (BigInt::one() << bits as usize);
    let lo = Rational::new(root.clone(), den.clone());
    let hi = if &root * &root == radicand {
        lo.clone()
    } else {
        Rational::new(root + 1, den)
    };
    Ok(RationalInterval::new(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, rat};

    fn dec(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    // 50 digits of pi, sqrt(2)/2 and sqrt(3), used as reference points
    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";
    const HALF_SQRT2_50: &str = "0.70710678118654752440084436210484903928483593768847";
    const SQRT3_50: &str = "1.73205080756887729352744634150587236694280525381038";
    const ULP_50: &str = "1e-50";

    fn reference(s: &str) -> RationalInterval {
        RationalInterval::point(dec(s)).inflate(&dec(ULP_50))
    }

    #[test]
    fn pi_examples() {
        let p16 = pi_enclosure(16).unwrap();
        assert!(p16.is_subset_of(&RationalInterval::new(dec("3.14157"), dec("3.14161"))));
        assert!(p16.width() <= pow2_inv(16));
        let p20 = pi_enclosure(20).unwrap();
        assert!(p20.lo() > &rat(333, 106));
        assert!(p20.hi() < &rat(355, 113));
        let p32 = pi_enclosure(32).unwrap();
        assert!(p32.width() < p16.width());
        assert!(pi_enclosure(4).is_err());
    }

    #[test]
    fn pi_contains_reference() {
        for bits in [8, 16, 64, 128, 160] {
            let p = pi_enclosure(bits).unwrap();
            assert!(p.intersect(&reference(PI_50)).is_some(), "bits={bits}");
            assert!(p.width() <= pow2_inv(bits));
        }
    }

    #[test]
    fn trig_examples() {
        let zero = RationalInterval::point(rat(0, 1));
        assert_eq!(
            trig_enclosure(TrigFn::Cos, &zero, 64).unwrap(),
            RationalInterval::point(rat(1, 1))
        );
        let s = sin_turns(&rat(1, 4), 64).unwrap();
        assert!(s.contains(&rat(1, 1)));
        assert!(s.width() <= pow2_inv(60));
        let c = cos_turns(&rat(1, 8), 64).unwrap();
        assert!(c.intersect(&reference(HALF_SQRT2_50)).is_some());
        assert!(c.width() <= pow2_inv(60));
    }

    #[test]
    fn trig_large_argument_reduction() {
        // sin(10*pi + pi/6) = 1/2
        let pi = pi_enclosure(96).unwrap();
        let x = pi.scale(&rat(61, 6));
        let s = trig_enclosure(TrigFn::Sin, &x, 64).unwrap();
        assert!(s.contains(&rat(1, 2)));
        assert!(s.width() < pow2_inv(50));
    }

    #[test]
    fn cot_examples() {
        assert!(cot_turns(&rat(1, 8), 64).unwrap().contains(&rat(1, 1)));
        assert!(cot_turns(&rat(3, 8), 64).unwrap().contains(&rat(-1, 1)));
        assert_eq!(
            cot_turns(&rat(1, 2), 64),
            Err(EnclosureError::PoleProximity)
        );
        let pi = pi_enclosure(64).unwrap();
        assert_eq!(cot_enclosure(&pi, 64), Err(EnclosureError::PoleProximity));
    }

    #[test]
    fn sqrt_examples() {
        let four = sqrt_enclosure(&rat(4, 1), 40).unwrap();
        assert!(four.contains(&rat(2, 1)));
        assert!(four.width() <= pow2_inv(40));
        let three = sqrt_enclosure(&rat(3, 1), 100).unwrap();
        assert!(three.intersect(&reference(SQRT3_50)).is_some());
        assert_eq!(
            sqrt_enclosure(&rat(0, 1), 8).unwrap(),
            RationalInterval::point(rat(0, 1))
        );
        assert_eq!(
            sqrt_enclosure(&rat(-1, 1), 8),
            Err(EnclosureError::NegativeRadicand)
        );
        let q = sqrt_enclosure(&rat(9, 16), 20).unwrap();
        assert_eq!(q, RationalInterval::point(rat(3, 4)));
    }

    #[test]
    fn pythagorean_identity() {
        for k in 1..32 {
            let t = rat(k, 33);
            let s = sin_turns(&t, 64).unwrap();
            let c = cos_turns(&t, 64).unwrap();
            let sum = &s.powi(2) + &c.powi(2);
            assert!(sum.contains(&rat(1, 1)), "t={t}");
        }
    }

    #[test]
    fn cot_times_tan_contains_one() {
        let t = rat(1, 8);
        let s = sin_turns(&t, 64).unwrap();
        let c = cos_turns(&t, 64).unwrap();
        let tan = s.div(&c).unwrap();
        let cot = cot_turns(&t, 64).unwrap();
        assert!((&cot * &tan).contains(&rat(1, 1)));
    }

    #[test]
    fn refinement_is_nested_for_pi() {
        let lo = pi_enclosure(32).unwrap();
        let hi = pi_enclosure(64).unwrap();
        assert!(hi.is_subset_of(&lo));
    }
}
