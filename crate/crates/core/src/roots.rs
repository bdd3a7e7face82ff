//! Real-root counting by Sturm sequences and exact bisection.
//!
//! Sign evaluations at `a/b` are done on integer coefficient vectors with the
//! homogeneous form `sum c_i a^i b^(d-i)`, which has the sign of `p(a/b)` for
//! `b > 0` and never builds a fraction.

use crate::bernoulli::bernoulli_polynomial;
use crate::enclosure::{pi_enclosure, EnclosureError, RationalInterval};
use crate::exact::{half, pow2, rat, Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Bisection budget per root before giving up.
pub const MAX_BISECTIONS: u32 = 256;

/// `10^-9`, used to turn open intervals into closed brackets.
pub fn endpoint_margin() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64.pow(9)))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootsError {
    #[error("the zero polynomial has no Sturm sequence")]
    ZeroPolynomial,
    #[error("empty interval ({lo}, {hi})")]
    EmptyInterval {
        lo: Box<Rational>,
        hi: Box<Rational>,
    },
    #[error("polynomial vanishes at the endpoint {0}; perturb it by a small rational")]
    EndpointRoot(Box<Rational>),
    #[error("{target}: expected {expected} root(s), found {found}")]
    UnexpectedRootCount {
        target: String,
        expected: usize,
        found: usize,
    },
    #[error("{target}: not resolved within {MAX_BISECTIONS} bisections")]
    DepthExceeded { target: String },
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Enclosure(#[from] EnclosureError),
}

/// Interval `(lo, hi)` containing exactly one root of its target polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "crate::exact::serde_str")]
    pub lo: Rational,
    #[serde(with = "crate::exact::serde_str")]
    pub hi: Rational,
    pub target: String,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn as_interval(&self) -> RationalInterval {
        RationalInterval::new(self.lo.clone(), self.hi.clone())
    }
}

/// `p_0 = p`, `p_1 = p'`, `p_{i+1} = -rem(p_{i-1}, p_i)` scaled to its
/// primitive part. When `p` has repeated roots the chain ends at their gcd.
pub fn sturm_sequence(p: &Poly) -> Result<Vec<Poly>, RootsError> {
    if p.is_zero() {
        return Err(RootsError::ZeroPolynomial);
    }
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(chain);
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2]
            .div_rem(&chain[n - 1])
            .expect("chain entries are nonzero");
        if r.is_zero() {
            return Ok(chain);
        }
        chain.push(-&r.primitive_part().expect("nonzero remainder"));
    }
}

/// `p / gcd(p, p')`: same distinct roots, all simple.
pub fn square_free_part(p: &Poly) -> Result<Poly, RootsError> {
    if p.is_zero() {
        return Err(RootsError::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return Ok(p.clone());
    }
    Ok(p.div_exact(&g).expect("gcd divides p"))
}

/// Sign of `sum c_i x^i` at `x = num/den`, `den > 0`.
fn homogeneous_sign(coeffs: &[BigInt], num: &BigInt, den: &BigInt) -> i8 {
    let Some((last, rest)) = coeffs.split_last() else {
        return 0;
    };
    let mut acc = last.clone();
    let mut den_pow = BigInt::one();
    for c in rest.iter().rev() {
        den_pow *= den;
        acc = acc * num + c * &den_pow;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

/// Precomputed Sturm chain of the square-free part of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    square_free: Poly,
    integer_chain: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Result<Self, RootsError> {
        let square_free = square_free_part(p)?;
        let integer_chain = sturm_sequence(&square_free)?
            .iter()
            .map(|q| {
                q.primitive_integer_coeffs()
                    .expect("chain entries are nonzero")
            })
            .collect();
        Ok(SturmChain {
            square_free,
            integer_chain,
        })
    }

    pub fn square_free(&self) -> &Poly {
        &self.square_free
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        homogeneous_sign(&self.integer_chain[0], x.numer(), x.denom())
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut prev = 0i8;
        for q in &self.integer_chain {
            let s = homogeneous_sign(q, x.numer(), x.denom());
            if s != 0 {
                if prev != 0 && s != prev {
                    count += 1;
                }
                prev = s;
            }
        }
        count
    }

    /// Distinct roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> Result<usize, RootsError> {
        if lo >= hi {
            return Err(RootsError::EmptyInterval {
                lo: Box::new(lo.clone()),
                hi: Box::new(hi.clone()),
            });
        }
        for x in [lo, hi] {
            if self.sign_at(x) == 0 {
                return Err(RootsError::EndpointRoot(Box::new(x.clone())));
            }
        }
        Ok(self.variations(lo) - self.variations(hi))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi)`.
pub fn count_roots(p: &Poly, lo: &Rational, hi: &Rational) -> Result<usize, RootsError> {
    if p.is_zero() {
        return Err(RootsError::ZeroPolynomial);
    }
    SturmChain::new(p)?.count(lo, hi)
}

/// Shrinks a bracket around a root sitting exactly at `x` until it holds no
/// other root and is at most `max_width` wide.
fn bracket_exact_root(
    chain: &SturmChain,
    x: &Rational,
    room: &Rational,
    max_width: &Rational,
    target: &str,
) -> Result<IsolatingInterval, RootsError> {
    let mut delta = room
        .clone()
        .min(max_width / Rational::from_integer(2.into()));
    for _ in 0..MAX_BISECTIONS {
        let (lo, hi) = (x - &delta, x + &delta);
        if chain.sign_at(&lo) != 0 && chain.sign_at(&hi) != 0 && chain.count(&lo, &hi)? == 1 {
            return Ok(IsolatingInterval {
                lo,
                hi,
                target: target.to_string(),
            });
        }
        delta /= Rational::from_integer(2.into());
    }
    Err(RootsError::DepthExceeded {
        target: target.to_string(),
    })
}

/// Bisects a bracket known to hold exactly one simple root until its width
/// is at most `max_width`. Endpoint signs must be nonzero and opposite.
fn bisect_single(
    chain: &SturmChain,
    mut lo: Rational,
    mut hi: Rational,
    max_width: &Rational,
    target: &str,
) -> Result<IsolatingInterval, RootsError> {
    let lo_sign = chain.sign_at(&lo);
    let mut depth = 0;
    while &(&hi - &lo) > max_width {
        if depth == MAX_BISECTIONS {
            return Err(RootsError::DepthExceeded {
                target: target.to_string(),
            });
        }
        depth += 1;
        let mid = (&lo + &hi) * half();
        match chain.sign_at(&mid) {
            0 => {
                let room = (&hi - &mid).min(&mid - &lo);
                return bracket_exact_root(chain, &mid, &room, max_width, target);
            }
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(IsolatingInterval {
        lo,
        hi,
        target: target.to_string(),
    })
}

enum Work {
    Range(Rational, Rational, usize, u32),
    Ready(IsolatingInterval),
}

/// Isolating intervals, in increasing order, for every distinct root of `p`
/// in `(lo, hi)`, each of width at most `max_width`.
pub fn isolate_roots(
    p: &Poly,
    lo: &Rational,
    hi: &Rational,
    max_width: &Rational,
) -> Result<Vec<IsolatingInterval>, RootsError> {
    check_width(max_width)?;
    let chain = SturmChain::new(p)?;
    let total = chain.count(lo, hi)?;
    let mut out = Vec::with_capacity(total);
    // depth-first with the left half on top, so roots come out sorted
    let mut stack = vec![Work::Range(lo.clone(), hi.clone(), total, 0)];
    while let Some(item) = stack.pop() {
        let (a, b, count, depth) = match item {
            Work::Ready(iv) => {
                out.push(iv);
                continue;
            }
            Work::Range(a, b, count, depth) => (a, b, count, depth),
        };
        let target = format!("root {} of {}", out.len() + 1, p);
        if count == 0 {
            continue;
        }
        if count == 1 && chain.sign_at(&a) != chain.sign_at(&b) {
            out.push(bisect_single(&chain, a, b, max_width, &target)?);
            continue;
        }
        if depth == MAX_BISECTIONS {
            return Err(RootsError::DepthExceeded { target });
        }
        let mid = (&a + &b) * half();
        if chain.sign_at(&mid) == 0 {
            let room = (&b - &mid) * half();
            let iv = bracket_exact_root(&chain, &mid, &room, max_width, &target)?;
            let left = chain.count(&a, &iv.lo)?;
            let right = chain.count(&iv.hi, &b)?;
            stack.push(Work::Range(iv.hi.clone(), b, right, depth + 1));
            let left_hi = iv.lo.clone();
            stack.push(Work::Ready(iv));
            stack.push(Work::Range(a, left_hi, left, depth + 1));
            continue;
        }
        let left = chain.count(&a, &mid)?;
        stack.push(Work::Range(mid.clone(), b, count - left, depth + 1));
        stack.push(Work::Range(a, mid, left, depth + 1));
    }
    Ok(out)
}

fn check_width(w: &Rational) -> Result<(), RootsError> {
    if w.is_positive() {
        Ok(())
    } else {
        Err(RootsError::InvalidArgument(format!(
            "width must be positive, got {w}"
        )))
    }
}

fn r2n_label(n: u32) -> String {
    format!("zero of B_{} in (0, 1/2)", 2 * n)
}

fn r2n_chain(n: u32) -> Result<SturmChain, RootsError> {
    if n == 0 {
        return Err(RootsError::InvalidArgument(
            "index n must be at least 1".into(),
        ));
    }
    SturmChain::new(&bernoulli_polynomial(2 * n))
}

/// Brackets the unique zero of `B_2n` in `(0, 1/2)` to width `max_width`.
/// The root count on `(0, 1/2)` is checked to be exactly one first.
pub fn isolate_r2n(n: u32, max_width: &Rational) -> Result<IsolatingInterval, RootsError> {
    check_width(max_width)?;
    let chain = r2n_chain(n)?;
    let (lo, hi) = (Rational::zero(), half());
    let found = chain.count(&lo, &hi)?;
    if found != 1 {
        return Err(RootsError::UnexpectedRootCount {
            target: r2n_label(n),
            expected: 1,
            found,
        });
    }
    bisect_single(&chain, lo, hi, max_width, &r2n_label(n))
}

/// Narrows an interval returned by [`isolate_r2n`].
fn refine_r2n(chain: &SturmChain, iv: &IsolatingInterval) -> Result<IsolatingInterval, RootsError> {
    let target = iv.width() * half();
    if target < pow2(MAX_BISECTIONS).recip() {
        return Err(RootsError::DepthExceeded {
            target: iv.target.clone(),
        });
    }
    bisect_single(chain, iv.lo.clone(), iv.hi.clone(), &target, &iv.target)
}

/// Certifies that the zeros of `B_2n` in `(0, 1/2)` increase strictly for
/// `n = 1..=n_max`, refining neighbouring brackets until they separate.
///
/// Returns `Ok(false)` only if some pair separates in the wrong order.
pub fn verify_r2n_monotone(n_max: u32, width: &Rational) -> Result<bool, RootsError> {
    if n_max < 2 {
        return Err(RootsError::InvalidArgument(
            "n_max must be at least 2".into(),
        ));
    }
    check_width(width)?;
    let chains: Vec<SturmChain> = crate::par::map((1..=n_max).collect(), r2n_chain)
        .into_iter()
        .collect::<Result<_, _>>()?;
    let mut brackets: Vec<IsolatingInterval> =
        crate::par::map((1..=n_max).collect(), |n| isolate_r2n(n, width))
            .into_iter()
            .collect::<Result<_, _>>()?;
    for i in 0..brackets.len() - 1 {
        loop {
            let (a, b) = (&brackets[i], &brackets[i + 1]);
            if a.hi <= b.lo {
                break;
            }
            if b.hi <= a.lo {
                return Ok(false);
            }
            brackets[i] = refine_r2n(&chains[i], &brackets[i])?;
            brackets[i + 1] = refine_r2n(&chains[i + 1], &brackets[i + 1])?;
        }
    }
    Ok(true)
}

/// `1/4 - 1 / (2^(2n+1) pi)` enclosed at `bits` of precision for pi.
pub fn lehmer_lower_bound(n: u32, bits: u32) -> Result<RationalInterval, RootsError> {
    let denom = pi_enclosure(bits)?.scale(&pow2(2 * n + 1));
    let quarter = rat(1, 4);
    Ok((-&denom.recip()?).shift(&quarter))
}

/// Outcome of checking the zero of `B_2n` against `1/6`, `1/4` and the
/// lower bound `1/4 - 1/(2^(2n+1) pi)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct R2nBounds {
    pub n: u32,
    pub bracket: IsolatingInterval,
    pub above_sixth: bool,
    pub below_quarter: bool,
    pub above_lehmer: bool,
    pub lehmer_lower: RationalInterval,
    /// Upper bound for `1/4 - r`, i.e. `1/4 - bracket.lo`.
    #[serde(with = "crate::exact::serde_str")]
    pub quarter_gap_upper: Rational,
    pub precision_bits: u32,
}

impl R2nBounds {
    pub fn holds(&self) -> bool {
        self.above_sixth && self.below_quarter && self.above_lehmer
    }
}

fn bits_for_width(w: &Rational) -> u32 {
    let inv = w.recip().ceil().to_integer();
    (inv.bits() as u32 + 4).max(64)
}

/// Isolates the zero of `B_2n` and refines until each bound is decided.
/// A bound is decided true when the open bracket sits on the correct side
/// (the root is interior, so touching the bound is enough) and false when
/// the bracket sits strictly on the wrong side.
pub fn check_r2n_bounds(n: u32, width: &Rational) -> Result<R2nBounds, RootsError> {
    let chain = r2n_chain(n)?;
    let mut bracket = isolate_r2n(n, width)?;
    let sixth = rat(1, 6);
    let quarter = rat(1, 4);
    loop {
        let bits = bits_for_width(&bracket.width());
        let lehmer = lehmer_lower_bound(n, bits)?;
        let sixth_state = decide_lower(&bracket, &sixth, &sixth);
        let lehmer_state = decide_lower(&bracket, lehmer.hi(), lehmer.lo());
        let quarter_state = if bracket.hi <= quarter {
            Some(true)
        } else if bracket.lo >= quarter {
            Some(false)
        } else {
            None
        };
        if let (Some(above_sixth), Some(above_lehmer), Some(below_quarter)) =
            (sixth_state, lehmer_state, quarter_state)
        {
            return Ok(R2nBounds {
                n,
                quarter_gap_upper: &quarter - &bracket.lo,
                bracket,
                above_sixth,
                below_quarter,
                above_lehmer,
                lehmer_lower: lehmer,
                precision_bits: bits,
            });
        }
        bracket = refine_r2n(&chain, &bracket)?;
    }
}

/// `Some(true)` once `lo >= certain`, `Some(false)` once `hi <= refuted`.
fn decide_lower(b: &IsolatingInterval, certain: &Rational, refuted: &Rational) -> Option<bool> {
    if &b.lo >= certain {
        Some(true)
    } else if &b.hi <= refuted {
        Some(false)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn b2() -> Poly {
        Poly::new(vec![rat(1, 6), rat(-1, 1), rat(1, 1)])
    }

    #[test]
    fn sturm_examples() {
        let chain = sturm_sequence(&b2()).unwrap();
        assert_eq!(chain.len(), 3);
        let last = chain.last().unwrap();
        assert_eq!(last.degree(), Some(0));
        assert!(last.coeff(0).is_positive());

        let lin = Poly::from_ints(&[-1, 2]);
        assert_eq!(
            sturm_sequence(&lin).unwrap(),
            vec![lin.clone(), Poly::from_ints(&[2])]
        );

        let sq = &Poly::linear_root(&rat(1, 3)) * &Poly::linear_root(&rat(1, 3));
        let chain = sturm_sequence(&sq).unwrap();
        assert_eq!(chain.last().unwrap().degree(), Some(1));
        assert_eq!(
            square_free_part(&sq).unwrap(),
            Poly::linear_root(&rat(1, 3))
        );
        assert_eq!(
            sturm_sequence(&Poly::zero()),
            Err(RootsError::ZeroPolynomial)
        );
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_roots(&b2(), &rat(0, 1), &rat(1, 2)).unwrap(), 1);
        assert_eq!(count_roots(&b2(), &rat(0, 1), &rat(1, 10)).unwrap(), 0);
        assert_eq!(
            count_roots(&Poly::constant(rat(1, 1)), &rat(0, 1), &rat(1, 1)).unwrap(),
            0
        );
        let lin = Poly::from_ints(&[-1, 2]);
        assert_eq!(
            count_roots(&lin, &rat(0, 1), &rat(1, 2)),
            Err(RootsError::EndpointRoot(Box::new(rat(1, 2))))
        );
        let sq = &Poly::linear_root(&rat(1, 3)) * &Poly::linear_root(&rat(1, 3));
        assert_eq!(count_roots(&sq, &rat(0, 1), &rat(1, 1)).unwrap(), 1);
    }

    #[test]
    fn isolate_handles_exact_rational_roots() {
        // (t - 1/2)(t - 1/4)(t^2 - 2) on (0, 2)
        let p = &(&Poly::linear_root(&rat(1, 2)) * &Poly::linear_root(&rat(1, 4)))
            * &Poly::from_ints(&[-2, 0, 1]);
        let w = rat(1, 1000);
        let roots = isolate_roots(&p, &rat(0, 1), &rat(2, 1), &w).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots[0].lo < rat(1, 4) && rat(1, 4) < roots[0].hi);
        assert!(roots[1].lo < rat(1, 2) && rat(1, 2) < roots[1].hi);
        assert!(roots[2].lo < rat(1415, 1000) && rat(1414, 1000) < roots[2].hi);
        for r in &roots {
            assert!(r.width() <= w);
            assert_eq!(p.sign_at(&r.lo), -p.sign_at(&r.hi));
        }
    }

    #[test]
    fn r2_matches_quadratic_formula() {
        let w = parse_rational("1e-6").unwrap();
        let iv = isolate_r2n(1, &w).unwrap();
        assert!(iv.width() <= w);
        // 1/2 - sqrt(3)/6 = 0.21132486540518711775...
        assert!(iv.lo < parse_rational("0.2113248654052").unwrap());
        assert!(iv.hi > parse_rational("0.2113248654051").unwrap());
        assert!(isolate_r2n(0, &w).is_err());
    }

    #[test]
    fn r2n_increases() {
        let w = parse_rational("1e-8").unwrap();
        assert!(verify_r2n_monotone(2, &rat(1, 4)).unwrap());
        assert!(verify_r2n_monotone(10, &w).unwrap());
        assert!(verify_r2n_monotone(1, &w).is_err());
    }

    #[test]
    fn r2n_bounds_small_n() {
        for n in 1..=8 {
            let b = check_r2n_bounds(n, &parse_rational("1e-6").unwrap()).unwrap();
            assert!(b.holds(), "n={n}");
        }
        let b8 = check_r2n_bounds(8, &parse_rational("1e-6").unwrap()).unwrap();
        assert!(b8.quarter_gap_upper < parse_rational("1e-4").unwrap());
    }
}
