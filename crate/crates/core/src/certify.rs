//! Monotonicity certificates for ratios of Bernoulli polynomials and exact
//! checks for sequences in the index.
//!
//! A ratio `f/g` is monotone on `(lo, hi)` away from the zeros of `g` when
//! the Wronskian `W = f'g - fg'` keeps one sign there, since
//! `(f/g)' = W / g^2`. Factors of `W` vanishing at `lo` or `hi` are divided
//! out first; `(t - lo)^k` is positive on the interval and `(t - hi)^k` has
//! constant sign, so what remains must have no root in the open interval.

use crate::bernoulli::{
    bernoulli_at_half, bernoulli_number, bernoulli_polynomial, factorial, parity_sign,
};
use crate::enclosure::{
    cos_turns, cot_turns, pi_enclosure, sin_turns, EnclosureError, RationalInterval, MAX_BITS,
};
use crate::exact::{from_int, half, rat, Poly, Rational};
use crate::roots::{isolate_roots, IsolatingInterval, RootsError, SturmChain};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("{0}")]
    InvalidArgument(String),
    #[error("certificate failed: {claim} {label}")]
    Failed { claim: String, label: String },
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    Enclosure(#[from] EnclosureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Increasing,
    Decreasing,
    Failed,
}

impl From<Direction> for Conclusion {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Increasing => Conclusion::Increasing,
            Direction::Decreasing => Conclusion::Decreasing,
        }
    }
}

/// Power of `(t - at)` divided out of the Wronskian before counting roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointFactor {
    #[serde(with = "crate::exact::serde_str")]
    pub at: Rational,
    pub multiplicity: usize,
}

/// Record that `f/g` is monotone on `(lo, hi)` minus the zeros of `g`.
///
/// It can be rechecked from its own fields: recompute `W`, divide out the
/// endpoint factors, confirm no root in `(lo, hi)` by Sturm's theorem and
/// read the direction off the sign of `W` at the witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityCertificate {
    pub claim: String,
    pub label: String,
    pub f: Poly,
    pub g: Poly,
    #[serde(with = "crate::exact::serde_str")]
    pub lo: Rational,
    #[serde(with = "crate::exact::serde_str")]
    pub hi: Rational,
    pub expected: Direction,
    pub wronskian: Poly,
    pub endpoint_factors: Vec<EndpointFactor>,
    pub interior_root_count: usize,
    #[serde(with = "crate::exact::serde_str")]
    pub witness_point: Rational,
    pub witness_sign: i8,
    pub denominator_zeros: Vec<IsolatingInterval>,
    pub conclusion: Conclusion,
}

impl MonotonicityCertificate {
    pub fn passed(&self) -> bool {
        self.conclusion == Conclusion::from(self.expected)
    }
}

/// First point of the form `lo + (hi - lo) * k / 2^j` where neither
/// polynomial vanishes.
fn witness(lo: &Rational, hi: &Rational, avoid: &[&Poly]) -> Rational {
    let width = hi - lo;
    let mut denom = 2i64;
    loop {
        for k in (1..denom).step_by(2) {
            let x = lo + &width * rat(k, denom);
            if avoid.iter().all(|p| !p.eval(&x).is_zero()) {
                return x;
            }
        }
        denom *= 2;
    }
}

/// Certifies the direction of `f/g` on `(lo, hi)`.
///
/// The conclusion is `Failed` whenever the reduced Wronskian has a root in
/// the open interval or vanishes identically; the result never passes
/// silently.
pub fn certify_ratio_monotone(
    f: &Poly,
    g: &Poly,
    lo: &Rational,
    hi: &Rational,
    expected: Direction,
) -> Result<MonotonicityCertificate, CertifyError> {
    certify_labeled("ratio", &format!("({f}) / ({g})"), f, g, lo, hi, expected)
}

fn certify_labeled(
    claim: &str,
    label: &str,
    f: &Poly,
    g: &Poly,
    lo: &Rational,
    hi: &Rational,
    expected: Direction,
) -> Result<MonotonicityCertificate, CertifyError> {
    if lo >= hi {
        return Err(CertifyError::InvalidArgument(format!(
            "empty interval ({lo}, {hi})"
        )));
    }
    if g.is_zero() {
        return Err(CertifyError::InvalidArgument(
            "denominator is identically zero".into(),
        ));
    }
    let wronskian = &(&f.derivative() * g) - &(f * &g.derivative());
    let mut reduced = wronskian.clone();
    let mut endpoint_factors = Vec::new();
    for at in [lo, hi] {
        let (next, multiplicity) = reduced.deflate_root(at);
        if multiplicity > 0 {
            endpoint_factors.push(EndpointFactor {
                at: at.clone(),
                multiplicity,
            });
        }
        reduced = next;
    }
    let (g_inner, _) = g.deflate_root(lo);
    let (g_inner, _) = g_inner.deflate_root(hi);
    let denominator_zeros = if g_inner.degree().unwrap_or(0) == 0 {
        Vec::new()
    } else {
        let mut zeros = isolate_roots(&g_inner, lo, hi, &(hi - lo).min(rat(1, 1 << 20)))?;
        for z in &mut zeros {
            z.target = format!("zero of the denominator in ({lo}, {hi})");
        }
        zeros
    };

    let base = MonotonicityCertificate {
        claim: claim.to_string(),
        label: label.to_string(),
        f: f.clone(),
        g: g.clone(),
        lo: lo.clone(),
        hi: hi.clone(),
        expected,
        wronskian: wronskian.clone(),
        endpoint_factors,
        interior_root_count: 0,
        witness_point: (lo + hi) * half(),
        witness_sign: 0,
        denominator_zeros,
        conclusion: Conclusion::Failed,
    };
    if wronskian.is_zero() {
        return Ok(base);
    }
    let interior_root_count = SturmChain::new(&reduced)?.count(lo, hi)?;
    let witness_point = witness(lo, hi, &[&wronskian, g]);
    let witness_sign = wronskian.sign_at(&witness_point);
    let conclusion = match (interior_root_count, witness_sign) {
        (0, 1) => Conclusion::Increasing,
        (0, -1) => Conclusion::Decreasing,
        _ => Conclusion::Failed,
    };
    Ok(MonotonicityCertificate {
        interior_root_count,
        witness_point,
        witness_sign,
        conclusion,
        ..base
    })
}

/// The theorem families covered by [`certify_theorem_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremClaim {
    /// `B_{2n-1}/B_{2n+1}` increasing on `(0,1/2)`, decreasing on `(1/2,1)`.
    OddRatio,
    /// `(-1)^{n-m} B_{2m-1}/B_{2n-1}`, `m < n`: decreasing then increasing.
    AlternatingOddRatio,
    /// Shifted even differences anchored at `0` and at `1/2`.
    ShiftedDifferenceRatio,
    /// `B_{2n}/B_{2n+1}` decreasing on both halves.
    EvenOverNextOdd,
    /// `(-1)^{n-m} B_{2m}/B_{2n}`, `m < n`: decreasing on both sides of the
    /// zero of `B_{2n}` in `(0,1/2)`, increasing on `(1/2,1)`.
    EvenRatio,
    /// `B_{2n}/B_{2n-1}` increasing on both halves.
    EvenOverPreviousOdd,
    /// `|B_{2n+1}|` log-concave: `(2n+1) B_{2n}/B_{2n+1}` decreasing.
    LogConcaveOdd,
    /// `|B_{2n+1}(t)| / (t (1/2 - t)(1 - t))` increasing on `(0,1/2)`,
    /// decreasing on `(1/2,1)`, `n >= 2`.
    OddOverCubic,
}

impl TheoremClaim {
    pub const ALL: [TheoremClaim; 8] = [
        TheoremClaim::OddRatio,
        TheoremClaim::AlternatingOddRatio,
        TheoremClaim::ShiftedDifferenceRatio,
        TheoremClaim::EvenOverNextOdd,
        TheoremClaim::EvenRatio,
        TheoremClaim::EvenOverPreviousOdd,
        TheoremClaim::LogConcaveOdd,
        TheoremClaim::OddOverCubic,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TheoremClaim::OddRatio => "thm-1.2",
            TheoremClaim::AlternatingOddRatio => "cor-3.1",
            TheoremClaim::ShiftedDifferenceRatio => "cor-3.2",
            TheoremClaim::EvenOverNextOdd => "thm-t5",
            TheoremClaim::EvenRatio => "thm-t3",
            TheoremClaim::EvenOverPreviousOdd => "thm-t6",
            TheoremClaim::LogConcaveOdd => "cor-logconcave",
            TheoremClaim::OddOverCubic => "prop-5.1",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.id() == id)
    }
}

impl fmt::Display for TheoremClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One certificate to compute: `f/g` on a half interval.
struct Job {
    claim: TheoremClaim,
    label: String,
    f: Poly,
    g: Poly,
    right_half: bool,
    expected: Direction,
}

fn halves() -> [(Rational, Rational); 2] {
    [(Rational::zero(), half()), (half(), Rational::one())]
}

fn jobs_for(claim: TheoremClaim, n_max: u32) -> Vec<Job> {
    use Direction::{Decreasing as Dec, Increasing as Inc};
    let b = bernoulli_polynomial;
    let mut jobs = Vec::new();
    let mut push = |label: String, f: Poly, g: Poly, left: Direction, right: Direction| {
        for (right_half, expected) in [(false, left), (true, right)] {
            let side = if right_half { "(1/2, 1)" } else { "(0, 1/2)" };
            jobs.push(Job {
                claim,
                label: format!("{label} on {side}"),
                f: f.clone(),
                g: g.clone(),
                right_half,
                expected,
            });
        }
    };
    let sign = |k: u32| parity_sign(k);
    match claim {
        TheoremClaim::OddRatio => {
            for n in 1..=n_max {
                push(format!("n={n}"), b(2 * n - 1), b(2 * n + 1), Inc, Dec);
            }
        }
        TheoremClaim::AlternatingOddRatio => {
            for n in 2..=n_max {
                for m in 1..n {
                    let f = b(2 * m - 1).scale(&sign(n - m));
                    push(format!("m={m} n={n}"), f, b(2 * n - 1), Dec, Inc);
                }
            }
        }
        TheoremClaim::ShiftedDifferenceRatio => {
            for n in 2..=n_max {
                for m in 1..n {
                    let at_zero = |k: u32| &b(2 * k) - &Poly::constant(bernoulli_number(2 * k));
                    let at_half = |k: u32| &b(2 * k) - &Poly::constant(bernoulli_at_half(2 * k));
                    let s = sign(n - m);
                    push(
                        format!("anchor 0, m={m} n={n}"),
                        at_zero(m).scale(&s),
                        at_zero(n),
                        Dec,
                        Inc,
                    );
                    push(
                        format!("anchor 1/2, m={m} n={n}"),
                        at_half(m).scale(&s),
                        at_half(n),
                        Dec,
                        Inc,
                    );
                }
            }
        }
        TheoremClaim::EvenOverNextOdd => {
            for n in 0..=n_max {
                push(format!("n={n}"), b(2 * n), b(2 * n + 1), Dec, Dec);
            }
        }
        TheoremClaim::EvenRatio => {
            for n in 1..=n_max {
                for m in 0..n {
                    let f = b(2 * m).scale(&sign(n - m));
                    push(format!("m={m} n={n}"), f, b(2 * n), Dec, Inc);
                }
            }
        }
        TheoremClaim::EvenOverPreviousOdd => {
            for n in 1..=n_max {
                push(format!("n={n}"), b(2 * n), b(2 * n - 1), Inc, Inc);
            }
        }
        TheoremClaim::LogConcaveOdd => {
            for n in 0..=n_max {
                let f = b(2 * n).scale(&from_int(2 * n + 1));
                push(format!("n={n}"), f, b(2 * n + 1), Dec, Dec);
            }
        }
        TheoremClaim::OddOverCubic => {
            // |B_{2n+1}| = (-1)^{n+1} B_{2n+1} and t(1/2-t)(1-t) = B_3 on (0, 1/2);
            // on (1/2, 1) both absolute values flip sign
            for n in 2..=n_max {
                let f = b(2 * n + 1).scale(&sign(n + 1));
                let g = b(3);
                jobs.push(Job {
                    claim,
                    label: format!("n={n} on (0, 1/2)"),
                    f: f.clone(),
                    g: g.clone(),
                    right_half: false,
                    expected: Inc,
                });
                jobs.push(Job {
                    claim,
                    label: format!("n={n} on (1/2, 1)"),
                    f: -&f,
                    g: -&g,
                    right_half: true,
                    expected: Dec,
                });
            }
        }
    }
    jobs
}

fn run_jobs(jobs: Vec<Job>) -> Result<Vec<MonotonicityCertificate>, CertifyError> {
    crate::par::map(jobs, |job| {
        let [left, right] = halves();
        let (lo, hi) = if job.right_half { right } else { left };
        certify_labeled(
            job.claim.id(),
            &job.label,
            &job.f,
            &job.g,
            &lo,
            &hi,
            job.expected,
        )
    })
    .into_iter()
    .collect()
}

/// Every certificate of one theorem family for indices up to `n_max`,
/// including failed ones.
pub fn certify_claim(
    claim: TheoremClaim,
    n_max: u32,
) -> Result<Vec<MonotonicityCertificate>, CertifyError> {
    run_jobs(jobs_for(claim, n_max))
}

/// All theorem families for `n, m <= n_max`; the first failed certificate
/// becomes an error naming the instance.
pub fn certify_theorem_suite(n_max: u32) -> Result<Vec<MonotonicityCertificate>, CertifyError> {
    if n_max < 2 {
        return Err(CertifyError::InvalidArgument(
            "n_max must be at least 2".into(),
        ));
    }
    let jobs = TheoremClaim::ALL
        .into_iter()
        .flat_map(|c| jobs_for(c, n_max))
        .collect();
    let certs = run_jobs(jobs)?;
    if let Some(bad) = certs.iter().find(|c| !c.passed()) {
        return Err(CertifyError::Failed {
            claim: bad.claim.clone(),
            label: bad.label.clone(),
        });
    }
    Ok(certs)
}

/// `(2n+1) B_{2n}(t) / B_{2n+1}(t)` is monotone in `t` on each half interval.
pub fn certify_logconcavity_odd(n_max: u32) -> Result<Vec<MonotonicityCertificate>, CertifyError> {
    certify_claim(TheoremClaim::LogConcaveOdd, n_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceShape {
    Increasing,
    Decreasing,
    LogConvex,
    LogConcave,
    Failed,
}

/// One exact comparison `lhs (<, <=, >=, >) rhs` at index `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceComparison {
    pub n: u32,
    #[serde(with = "crate::exact::serde_str")]
    pub lhs: Rational,
    #[serde(with = "crate::exact::serde_str")]
    pub rhs: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceCertificate {
    pub claim_id: String,
    pub description: String,
    #[serde(with = "crate::exact::serde_str::option")]
    pub t: Option<Rational>,
    pub index_range: (u32, u32),
    pub expected: SequenceShape,
    pub comparisons: Vec<SequenceComparison>,
    pub conclusion: SequenceShape,
}

impl SequenceCertificate {
    pub fn passed(&self) -> bool {
        self.conclusion == self.expected
    }

    fn finish(
        claim_id: &str,
        description: String,
        t: Option<Rational>,
        index_range: (u32, u32),
        expected: SequenceShape,
        comparisons: Vec<SequenceComparison>,
    ) -> Self {
        let conclusion = if comparisons.iter().all(|c| c.holds) {
            expected
        } else {
            SequenceShape::Failed
        };
        SequenceCertificate {
            claim_id: claim_id.to_string(),
            description,
            t,
            index_range,
            expected,
            comparisons,
            conclusion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SequenceClaim {
    /// `(2n+1) B_{2n}(t) / B_{2n+1}(t)`, `n >= 0`.
    EvenOverNextOdd,
    /// `B_{2n}(t) / (n B_{2n-1}(t))`, `n >= 1`.
    EvenOverPreviousOdd,
}

impl SequenceClaim {
    pub fn id(self) -> &'static str {
        match self {
            SequenceClaim::EvenOverNextOdd => "seq-t5",
            SequenceClaim::EvenOverPreviousOdd => "seq-t6",
        }
    }

    fn first_index(self) -> u32 {
        match self {
            SequenceClaim::EvenOverNextOdd => 0,
            SequenceClaim::EvenOverPreviousOdd => 1,
        }
    }

    fn term(self, n: u32, t: &Rational) -> Result<Rational, CertifyError> {
        let (num, den) = match self {
            SequenceClaim::EvenOverNextOdd => (
                bernoulli_polynomial(2 * n).eval(t) * from_int(2 * n + 1),
                bernoulli_polynomial(2 * n + 1).eval(t),
            ),
            SequenceClaim::EvenOverPreviousOdd => (
                bernoulli_polynomial(2 * n).eval(t),
                bernoulli_polynomial(2 * n - 1).eval(t) * from_int(n),
            ),
        };
        if den.is_zero() {
            return Err(CertifyError::InvalidArgument(format!(
                "denominator vanishes at t={t} for n={n}"
            )));
        }
        Ok(num / den)
    }

    /// Expected direction on `(0, 1/2)`; it flips on `(1/2, 1)`.
    fn left_shape(self) -> SequenceShape {
        match self {
            SequenceClaim::EvenOverNextOdd => SequenceShape::Increasing,
            SequenceClaim::EvenOverPreviousOdd => SequenceShape::Decreasing,
        }
    }
}

/// Exact comparison of consecutive terms of a sequence in `n` at fixed `t`.
pub fn certify_sequence_in_n(
    t: &Rational,
    claim: SequenceClaim,
    n_max: u32,
) -> Result<SequenceCertificate, CertifyError> {
    if !(t.is_positive() && t < &Rational::one() && t != &half()) {
        return Err(CertifyError::InvalidArgument(format!(
            "t must lie in (0, 1/2) or (1/2, 1), got {t}"
        )));
    }
    let n0 = claim.first_index();
    if n_max <= n0 {
        return Err(CertifyError::InvalidArgument(format!(
            "n_max must exceed {n0}"
        )));
    }
    let terms = (n0..=n_max)
        .map(|n| claim.term(n, t))
        .collect::<Result<Vec<_>, _>>()?;
    let left = t < &half();
    let expected = match (claim.left_shape(), left) {
        (s, true) => s,
        (SequenceShape::Increasing, false) => SequenceShape::Decreasing,
        (_, false) => SequenceShape::Increasing,
    };
    let comparisons = terms
        .windows(2)
        .zip(n0 + 1..)
        .map(|(w, n)| SequenceComparison {
            n,
            lhs: w[0].clone(),
            rhs: w[1].clone(),
            holds: match expected {
                SequenceShape::Increasing => w[0] < w[1],
                _ => w[0] > w[1],
            },
        })
        .collect();
    Ok(SequenceCertificate::finish(
        claim.id(),
        format!("consecutive terms at t={t}"),
        Some(t.clone()),
        (n0, n_max),
        expected,
        comparisons,
    ))
}

/// `a_n^2` against `a_{n-1} a_{n+1}` for centres `n = 2..=n_max`, given
/// `a` indexed from 1.
fn log_shape_check(
    description: &str,
    n_max: u32,
    expected: SequenceShape,
    a: impl Fn(u32) -> Rational,
) -> SequenceCertificate {
    let values: Vec<Rational> = (1..=n_max + 1).map(&a).collect();
    let comparisons = (2..=n_max)
        .map(|n| {
            let i = (n - 1) as usize;
            let lhs = &values[i] * &values[i];
            let rhs = &values[i - 1] * &values[i + 1];
            let holds = match expected {
                SequenceShape::LogConvex => lhs <= rhs,
                _ => lhs >= rhs,
            };
            SequenceComparison { n, lhs, rhs, holds }
        })
        .collect();
    SequenceCertificate::finish(
        "prop-5.7",
        description.to_string(),
        None,
        (1, n_max + 1),
        expected,
        comparisons,
    )
}

/// Exact log-convexity and log-concavity checks for `|B_2n|/(2n)!`,
/// `|B_2n(1/2)|/(2n)!`, the even zeta coefficients, and the monotonicity of
/// `|B_{2n+2}/B_{2n}|`.
///
/// The zeta checks compare `c_n = zeta(2n) / pi^{2n}`; the powers of pi
/// cancel in `c_n^2` against `c_{n-1} c_{n+1}`.
pub fn certify_logconvexity_sequences(
    n_max: u32,
) -> Result<Vec<SequenceCertificate>, CertifyError> {
    if n_max < 3 {
        return Err(CertifyError::InvalidArgument(
            "n_max must be at least 3".into(),
        ));
    }
    let scaled = |n: u32| bernoulli_number(2 * n).abs() / factorial(2 * n);
    let scaled_half = |n: u32| bernoulli_at_half(2 * n).abs() / factorial(2 * n);
    let zeta = |n: u32| crate::bernoulli::zeta_even_coefficient(n).expect("n >= 1");
    let eta = |n: u32| zeta(n) * (Rational::one() - crate::exact::pow2_inv(2 * n - 1));
    let mut out = vec![
        log_shape_check("|B_2n|/(2n)!", n_max, SequenceShape::LogConvex, scaled),
        log_shape_check(
            "|B_2n(1/2)|/(2n)!",
            n_max,
            SequenceShape::LogConcave,
            scaled_half,
        ),
        log_shape_check("zeta(2n)/pi^2n", n_max, SequenceShape::LogConvex, zeta),
        log_shape_check(
            "(1 - 2^(1-2n)) zeta(2n)/pi^2n",
            n_max,
            SequenceShape::LogConcave,
            eta,
        ),
    ];
    let ratio = |n: u32| (bernoulli_number(2 * n + 2) / bernoulli_number(2 * n)).abs();
    let comparisons = (1..=n_max)
        .map(|n| {
            let (lhs, rhs) = (ratio(n - 1), ratio(n));
            SequenceComparison {
                n,
                holds: lhs < rhs,
                lhs,
                rhs,
            }
        })
        .collect();
    out.push(SequenceCertificate::finish(
        "prop-5.7",
        "|B_{2n+2}/B_2n|".into(),
        None,
        (0, n_max),
        SequenceShape::Increasing,
        comparisons,
    ));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitClaim {
    /// `(2n+1) B_{2n}(t) / B_{2n+1}(t) -> 2 pi cot(2 pi t)`.
    EvenOverNextOdd,
    /// `B_{2n}(t) / (n B_{2n-1}(t)) -> -cot(2 pi t) / pi`.
    EvenOverPreviousOdd,
    /// `(-1)^{n/2-1} (2 pi)^n / (2 n!) B_n(t) -> cos(2 pi t)` over even `n`,
    /// reported as a relative gap.
    ScaledEven,
    /// The same scaling over odd `n`, `-> sin(2 pi t)`.
    ScaledOdd,
}

impl LimitClaim {
    pub const ALL: [LimitClaim; 4] = [
        LimitClaim::EvenOverNextOdd,
        LimitClaim::EvenOverPreviousOdd,
        LimitClaim::ScaledEven,
        LimitClaim::ScaledOdd,
    ];

    pub fn id(self) -> &'static str {
        match self {
            LimitClaim::EvenOverNextOdd => "ratio-2n-2n1",
            LimitClaim::EvenOverPreviousOdd => "ratio-2n-2nm1",
            LimitClaim::ScaledEven => "scaled-even",
            LimitClaim::ScaledOdd => "scaled-odd",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitPoint {
    pub n: u32,
    pub term: RationalInterval,
    pub gap: RationalInterval,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    pub claim: LimitClaim,
    #[serde(with = "crate::exact::serde_str")]
    pub t: Rational,
    pub limit: RationalInterval,
    pub points: Vec<LimitPoint>,
    /// Smallest index from which every later gap is certified smaller than
    /// the one before it.
    pub decreasing_from: Option<u32>,
    #[serde(with = "crate::exact::serde_str")]
    pub tol: Rational,
    pub within_tol: bool,
    pub precision_bits: u32,
}

impl LimitReport {
    /// True when the gaps are certified to shrink at every step from `n`.
    pub fn decreasing_from_index(&self, n: u32) -> bool {
        self.decreasing_from.is_some_and(|d| d <= n)
    }
}

fn limit_value(
    claim: LimitClaim,
    t: &Rational,
    bits: u32,
) -> Result<RationalInterval, CertifyError> {
    Ok(match claim {
        LimitClaim::EvenOverNextOdd => {
            &cot_turns(t, bits)?.scale(&from_int(2)) * &pi_enclosure(bits)?
        }
        LimitClaim::EvenOverPreviousOdd => (-&cot_turns(t, bits)?).div(&pi_enclosure(bits)?)?,
        LimitClaim::ScaledEven => cos_turns(t, bits)?,
        LimitClaim::ScaledOdd => sin_turns(t, bits)?,
    })
}

fn limit_term(
    claim: LimitClaim,
    n: u32,
    t: &Rational,
    bits: u32,
) -> Result<RationalInterval, CertifyError> {
    match claim {
        LimitClaim::EvenOverNextOdd => Ok(SequenceClaim::EvenOverNextOdd.term(n, t)?.into()),
        LimitClaim::EvenOverPreviousOdd => {
            Ok(SequenceClaim::EvenOverPreviousOdd.term(n, t)?.into())
        }
        LimitClaim::ScaledEven | LimitClaim::ScaledOdd => {
            let two_pi = pi_enclosure(bits + 2 * n)?.scale(&from_int(2));
            let sign = parity_sign(n / 2 + 1);
            let exact = bernoulli_polynomial(n).eval(t) * sign / (factorial(n) * from_int(2));
            Ok(two_pi.powi(n).scale(&exact))
        }
    }
}

fn limit_indices(claim: LimitClaim, n_min: u32, n_max: u32) -> Vec<u32> {
    let keep = |n: &u32| match claim {
        LimitClaim::EvenOverNextOdd => true,
        LimitClaim::EvenOverPreviousOdd => *n >= 1,
        LimitClaim::ScaledEven => n.is_multiple_of(2) && *n >= 2,
        LimitClaim::ScaledOdd => n % 2 == 1,
    };
    (n_min..=n_max).filter(keep).collect()
}

/// Gap between the sequence terms for `n` in `n_min..=n_max` and the
/// enclosed limit, at fixed rational `t`.
///
/// Precision doubles from `bits` until every consecutive pair of gaps is
/// ordered or `MAX_BITS` is reached.
pub fn check_limit(
    claim: LimitClaim,
    t: &Rational,
    n_min: u32,
    n_max: u32,
    tol: &Rational,
    bits: u32,
) -> Result<LimitReport, CertifyError> {
    if !(t.is_positive() && t < &Rational::one() && t != &half()) {
        return Err(CertifyError::InvalidArgument(format!(
            "t must lie in (0, 1/2) or (1/2, 1), got {t}"
        )));
    }
    let indices = limit_indices(claim, n_min, n_max);
    if indices.is_empty() {
        return Err(CertifyError::InvalidArgument("no indices in range".into()));
    }
    let mut bits = bits.max(8);
    loop {
        let limit = limit_value(claim, t, bits)?;
        let mut points = Vec::with_capacity(indices.len());
        for &n in &indices {
            let term = limit_term(claim, n, t, bits)?;
            let mut gap = (&term - &limit).abs();
            if matches!(claim, LimitClaim::ScaledEven | LimitClaim::ScaledOdd) {
                gap = gap.div(&limit.abs())?;
            }
            points.push(LimitPoint { n, term, gap });
        }
        let steps: Vec<Option<bool>> = points
            .windows(2)
            .map(|w| {
                if w[1].gap.hi() < w[0].gap.lo() {
                    Some(true)
                } else if w[1].gap.lo() >= w[0].gap.hi() {
                    Some(false)
                } else {
                    None
                }
            })
            .collect();
        if steps.iter().any(Option::is_none) && bits < MAX_BITS {
            bits = (bits * 2).min(MAX_BITS);
            continue;
        }
        let tail = steps.iter().rev().take_while(|s| **s == Some(true)).count();
        let decreasing_from = (tail > 0).then(|| points[points.len() - 1 - tail].n);
        let last = &points[points.len() - 1];
        let within_tol = last.gap.hi() < tol;
        return Ok(LimitReport {
            claim,
            t: t.clone(),
            limit,
            points,
            decreasing_from,
            tol: tol.clone(),
            within_tol,
            precision_bits: bits,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn margin_interval(right: bool) -> (Rational, Rational) {
        let m = crate::roots::endpoint_margin();
        if right {
            (half() + &m, Rational::one() - &m)
        } else {
            (m.clone(), half() - &m)
        }
    }

    #[test]
    fn ratio_examples() {
        let b = bernoulli_polynomial;
        let (lo, hi) = margin_interval(false);
        let c = certify_ratio_monotone(&b(1), &b(3), &lo, &hi, Direction::Increasing).unwrap();
        assert!(c.passed());
        let c = certify_ratio_monotone(&b(0), &b(1), &lo, &hi, Direction::Decreasing).unwrap();
        assert!(c.passed());
        let (lo, hi) = margin_interval(true);
        let c = certify_ratio_monotone(&b(3), &b(5), &lo, &hi, Direction::Decreasing).unwrap();
        assert!(c.passed());
        // exact half intervals need the endpoint factors divided out
        let c = certify_ratio_monotone(&b(3), &b(5), &half(), &rat(1, 1), Direction::Decreasing)
            .unwrap();
        assert!(c.passed());
        assert!(!c.endpoint_factors.is_empty());
    }

    #[test]
    fn wrong_direction_is_reported() {
        let b = bernoulli_polynomial;
        let c = certify_ratio_monotone(&b(1), &b(3), &rat(0, 1), &half(), Direction::Decreasing)
            .unwrap();
        assert_eq!(c.conclusion, Conclusion::Increasing);
        assert!(!c.passed());
        // t^2 / 1 on (-1, 1): W = 2t changes sign at 0
        let sq = Poly::from_ints(&[0, 0, 1]);
        let one = Poly::from_ints(&[1]);
        let c = certify_ratio_monotone(&sq, &one, &rat(-1, 1), &rat(1, 1), Direction::Increasing)
            .unwrap();
        assert_eq!(c.conclusion, Conclusion::Failed);
        assert!(c.interior_root_count > 0);
    }

    #[test]
    fn even_ratio_records_denominator_zero() {
        let certs = certify_claim(TheoremClaim::EvenRatio, 2).unwrap();
        let c = certs
            .iter()
            .find(|c| c.label == "m=1 n=2 on (0, 1/2)")
            .unwrap();
        assert!(c.passed());
        assert_eq!(c.denominator_zeros.len(), 1);
        let r4 = crate::roots::isolate_r2n(2, &rat(1, 1 << 20)).unwrap();
        let z = &c.denominator_zeros[0];
        assert!(z.lo < r4.hi && r4.lo < z.hi);
    }

    #[test]
    fn suite_counts() {
        assert_eq!(certify_claim(TheoremClaim::OddRatio, 8).unwrap().len(), 16);
        let certs = certify_theorem_suite(4).unwrap();
        assert!(certs.iter().all(|c| c.passed()));
        let alt = certify_claim(TheoremClaim::AlternatingOddRatio, 2).unwrap();
        assert_eq!(alt[0].label, "m=1 n=2 on (0, 1/2)");
        assert_eq!(alt[0].f, -&bernoulli_polynomial(1));
    }

    #[test]
    fn logconcavity_small_n() {
        let certs = certify_logconcavity_odd(1).unwrap();
        assert_eq!(certs.len(), 4);
        assert!(certs
            .iter()
            .all(|c| c.passed() && c.expected == Direction::Decreasing));
    }

    #[test]
    fn sequence_examples() {
        let c = certify_sequence_in_n(&rat(1, 8), SequenceClaim::EvenOverNextOdd, 12).unwrap();
        assert_eq!(c.conclusion, SequenceShape::Increasing);
        let c = certify_sequence_in_n(&rat(3, 4), SequenceClaim::EvenOverNextOdd, 12).unwrap();
        assert_eq!(c.conclusion, SequenceShape::Decreasing);
        let c = certify_sequence_in_n(&rat(1, 8), SequenceClaim::EvenOverPreviousOdd, 12).unwrap();
        assert_eq!(c.conclusion, SequenceShape::Decreasing);
        assert!(certify_sequence_in_n(&half(), SequenceClaim::EvenOverNextOdd, 12).is_err());
        assert!(certify_sequence_in_n(&rat(0, 1), SequenceClaim::EvenOverNextOdd, 12).is_err());
    }

    #[test]
    fn logconvexity_examples() {
        let certs = certify_logconvexity_sequences(10).unwrap();
        assert!(certs.iter().all(|c| c.passed()));
        // centre n=2: (1/720)^2 <= (1/12)(1/30240)
        let first = &certs[0].comparisons[0];
        assert_eq!(first.n, 2);
        assert_eq!(first.lhs, rat(1, 720 * 720));
        assert_eq!(first.rhs, rat(1, 12 * 30240));
        let zeta = &certs[2].comparisons[0];
        assert_eq!(zeta.lhs, rat(1, 8100));
        assert_eq!(zeta.rhs, rat(1, 6 * 945));
    }

    #[test]
    fn limit_examples() {
        let tol = parse_rational("1e-6").unwrap();
        let t = rat(1, 8);
        let r = check_limit(LimitClaim::EvenOverNextOdd, &t, 5, 15, &tol, 64).unwrap();
        assert!(r.within_tol);
        assert!(!r.limit.contains_zero());
        let r = check_limit(LimitClaim::EvenOverPreviousOdd, &t, 5, 15, &tol, 64).unwrap();
        assert!(r.within_tol);
        let r = check_limit(LimitClaim::ScaledEven, &t, 4, 20, &tol, 64).unwrap();
        assert_eq!(r.points.first().unwrap().n, 4);
        assert!(r.decreasing_from_index(4));
    }
}
