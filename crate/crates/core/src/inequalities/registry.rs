use super::supnorm::{supnorm_bound, SupnormKind};
use super::{
    Check, ClaimKind, ClaimRegistryEntry, InequalityError, Instance, Outcome, Quantity, Relation,
    SuiteConfig,
};
use crate::bernoulli::{
    bernoulli_at_half, bernoulli_at_quarter, bernoulli_number, bernoulli_polynomial, parity_sign,
};
use crate::certify::{certify_claim, TheoremClaim};
use crate::enclosure::{
    cos_turns, cot_turns, pi_enclosure, pi_squared_enclosure, sin_turns, sqrt_enclosure,
    RationalInterval,
};
use crate::exact::{from_int, half, pow2, pow2_inv, rat, Poly, Rational};
use crate::roots::count_roots;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

const GUARD_BITS: u32 = 16;

const REGISTRY: [ClaimRegistryEntry; 17] = [
    ClaimRegistryEntry {
        id: "R1",
        kind: ClaimKind::PointwiseDouble,
        n_lo: 2,
        n_hi: None,
        t_domain: "(0, 1/2) and (1/2, 1)",
        transcendental: false,
        reversal_cases: "the cubic t(1/2-t)(1-t) is negative on (1/2, 1); its absolute value is used there",
        statement: "2(2n+1)|B_2n| < |B_2n+1(t)| / |t(1/2-t)(1-t)| < 4(1-2^(1-2n))(2n+1)|B_2n|, and the middle term increases on (0, 1/2)",
    },
    ClaimRegistryEntry {
        id: "R2",
        kind: ClaimKind::PointwiseSingle,
        n_lo: 2,
        n_hi: None,
        t_domain: "(0, 1/2)",
        transcendental: true,
        reversal_cases: "none; both sides are symmetric about 1/2",
        statement: "|B_2n+1(t)| < sqrt(3)/9 (1-2^(1-2n))(2n+1)|B_2n|",
    },
    ClaimRegistryEntry {
        id: "R3",
        kind: ClaimKind::PointwiseDouble,
        n_lo: 0,
        n_hi: None,
        t_domain: "(0, 1/2) and (1/2, 1)",
        transcendental: true,
        reversal_cases: "both inequalities reverse on (1/2, 1)",
        statement: "(1-2^(1-2n))(2n+1)/(2 pi)|B_2n| sin(2 pi t) < (-1)^(n+1) B_2n+1(t) < (2n+1)/(2 pi)|B_2n| sin(2 pi t)",
    },
    ClaimRegistryEntry {
        id: "R4",
        kind: ClaimKind::PointwiseSingle,
        n_lo: 0,
        n_hi: None,
        t_domain: "(0, 1/4) and (1/4, 1/2)",
        transcendental: true,
        reversal_cases: "the factor (1-2^(1-2n)) applies on (1/4, 1/2)",
        statement: "(-1)^(n+1) B_2n(t) < |B_2n| cos(2 pi t) on (0, 1/4) and < (1-2^(1-2n))|B_2n| cos(2 pi t) on (1/4, 1/2)",
    },
    ClaimRegistryEntry {
        id: "R5",
        kind: ClaimKind::PointwiseDouble,
        n_lo: 2,
        n_hi: None,
        t_domain: "(0, 1/2) and (1/2, 1)",
        transcendental: false,
        reversal_cases: "none; the first double bound needs n >= 3",
        statement: "n(2n-1)|B_2n-2| < (-1)^n (B_2n(t)-B_2n)/(t^2(1-t)^2) < 32(1-4^-n)|B_2n| for n >= 3; 8(1-4^-n)|B_2n| < (-1)^(n+1)(B_2n(t)-B_2n(1/2))/(t-1/2)^2 < n(2n-1)(1-2^(3-2n))|B_2n-2| for n >= 2",
    },
    ClaimRegistryEntry {
        id: "R6",
        kind: ClaimKind::Supnorm,
        n_lo: 1,
        n_hi: None,
        t_domain: "[0, 1]",
        transcendental: false,
        reversal_cases: "none",
        statement: "|B_2n(t) - B_2n| <= (2-2^(1-2n))|B_2n|",
    },
    ClaimRegistryEntry {
        id: "R7",
        kind: ClaimKind::PointwiseSingle,
        n_lo: 1,
        n_hi: None,
        t_domain: "(0, 1/2) and (1/2, 1)",
        transcendental: false,
        reversal_cases: "first bound for n >= 3, second for n >= 2; their ordering is checked as formulas for n >= 1",
        statement: "(-1)^(n+1) B_2n(t) > [1-32(1-4^-n) t^2(1-t)^2]|B_2n| > [8(1-4^-n)(t-1/2)^2 - (1-2^(1-2n))]|B_2n|",
    },
    ClaimRegistryEntry {
        id: "R8",
        kind: ClaimKind::PointwiseDouble,
        n_lo: 1,
        n_hi: None,
        t_domain: "(0, 1/2) and (1/2, 1)",
        transcendental: true,
        reversal_cases: "the single bound is reversed for n = 1",
        statement: "n(2n-1)/(2 pi^2)(1-2^(3-2n))|B_2n-2|(1+cos 2 pi t) - (1-2^(1-2n))|B_2n| < (-1)^(n+1) B_2n(t) < (1+(4^n-1) cos 2 pi t)/4^n |B_2n|; (-1)^(n+1) B_2n(t) > |B_2n| - n(2n-1)/(2 pi^2)|B_2n-2|(1-cos 2 pi t) for n >= 2",
    },
    ClaimRegistryEntry {
        id: "R9",
        kind: ClaimKind::ScalarDouble,
        n_lo: 1,
        n_hi: None,
        t_domain: "none",
        transcendental: false,
        reversal_cases: "equality on the left at n = 1",
        statement: "4^(n+1)/(4^(n+1)-1) (n+1)(2n+1)/32 <= |B_2n+2/B_2n| <= (4^(n+1)-8)/(4^(n+1)-1) (n+1)(2n+1)/8",
    },
    ClaimRegistryEntry {
        id: "R10",
        kind: ClaimKind::ScalarDouble,
        n_lo: 1,
        n_hi: None,
        t_domain: "none",
        transcendental: true,
        reversal_cases: "none",
        statement: "(4^n-2)/(2 4^n-1) (n+1)(2n+1)/pi^2 < |B_2n+2/B_2n| < (2 4^n-2)/(4^(n+1)-1) (n+1)(2n+1)/pi^2",
    },
    ClaimRegistryEntry {
        id: "R11",
        kind: ClaimKind::ScalarSingle,
        n_lo: 1,
        n_hi: None,
        t_domain: "none",
        transcendental: true,
        reversal_cases: "none",
        statement: "|B_2n+2/B_2n| < 2 4^n/(4^(n+1)-1) (n+1)(2n+1)/pi^2",
    },
    ClaimRegistryEntry {
        id: "R12",
        kind: ClaimKind::ScalarDouble,
        n_lo: 1,
        n_hi: None,
        t_domain: "none",
        transcendental: true,
        reversal_cases: "none",
        statement: "(4^n-2)/(2 4^n-1) (n+1)(2n+1)/pi^2 < |B_2n+2/B_2n| < (n+1)(2n+1)/(2 pi^2)",
    },
    ClaimRegistryEntry {
        id: "R13",
        kind: ClaimKind::ScalarDouble,
        n_lo: 0,
        n_hi: None,
        t_domain: "none",
        transcendental: true,
        reversal_cases: "the lower side also holds at n = 0",
        statement: "4^(n+1)(4^n-2)/((4^(n+1)-1)(2 4^n-1)) (n+1)(2n+1)/pi^2 <= |B_2n+2/B_2n| <= 4^(2n+1)/((4^(n+1)-1)(2 4^n+1)) (n+1)(2n+1)/pi^2",
    },
    ClaimRegistryEntry {
        id: "R14",
        kind: ClaimKind::PointwiseDouble,
        n_lo: 1,
        n_hi: None,
        t_domain: "(0, 1/2) and (1/2, 1)",
        transcendental: true,
        reversal_cases: "both double bounds reverse on (1/2, 1)",
        statement: "(6t^2-6t+1)/(t(2t-1)(t-1)) <= (2n+1)B_2n(t)/B_2n+1(t) < 2 pi cot(2 pi t); (6t^2-6t+1)/(3(1-2t)) <= -B_2n(t)/(n B_2n-1(t)) < cot(2 pi t)/pi",
    },
    ClaimRegistryEntry {
        id: "R15",
        kind: ClaimKind::Supnorm,
        n_lo: 1,
        n_hi: None,
        t_domain: "[0, 1] and t = 1/4",
        transcendental: true,
        reversal_cases: "none",
        statement: "sup |B_2n+1(t)| < (2n+1)/(2 pi)|B_2n|; |B_2n+1(1/4)| >= (1-4/4^n)(2n+1)/(2 pi)|B_2n|, improved to (1-2/4^n)(2n+1)/(2 pi)|B_2n| < |B_2n+1(1/4)| < (2n+1)/(2 pi)|B_2n|",
    },
    ClaimRegistryEntry {
        id: "R16",
        kind: ClaimKind::Ordering,
        n_lo: 1,
        n_hi: None,
        t_domain: "none",
        transcendental: true,
        reversal_cases: "lower bounds from R10, R12 and R13 fall below the R9 lower bound at n = 1",
        statement: "ordering of the lower and upper bounds of R9 to R13",
    },
    ClaimRegistryEntry {
        id: "R17",
        kind: ClaimKind::ScalarDouble,
        n_lo: 1,
        n_hi: None,
        t_domain: "none",
        transcendental: true,
        reversal_cases: "the chain at t = 1/2 runs in the opposite direction",
        statement: "B_2n/(n(2n-1)B_2n-2) >= B_2n+2/((n+1)(2n+1)B_2n) >= -1/(2 pi^2) and the reversed chain for B_k(1/2) ending at <= -1/(2 pi^2)",
    },
];

pub fn registry() -> &'static [ClaimRegistryEntry] {
    &REGISTRY
}

/// A bound that is either rational or a rational multiple of `1/pi^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Rational(#[serde(with = "crate::exact::serde_str")] Rational),
    OverPiSquared(#[serde(with = "crate::exact::serde_str")] Rational),
}

impl Bound {
    pub fn enclose(&self, bits: u32) -> Result<RationalInterval, InequalityError> {
        Ok(match self {
            Bound::Rational(r) => RationalInterval::point(r.clone()),
            Bound::OverPiSquared(c) => over_pi_power(c, 2, bits)?,
        })
    }

    fn quantity(&self) -> Quantity {
        match self {
            Bound::Rational(r) => Quantity::Exact(r.clone()),
            Bound::OverPiSquared(c) => {
                let c = c.clone();
                Quantity::enclosed(move |bits| over_pi_power(&c, 2, bits))
            }
        }
    }
}

/// Lower and upper bounds on `|B_{2n+2}/B_{2n}|` from R9 to R13.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioBounds {
    pub n: u32,
    pub lower9: Bound,
    pub upper9: Bound,
    pub lower10: Bound,
    pub upper10: Bound,
    pub upper11: Bound,
    pub lower12: Bound,
    pub upper12: Bound,
    pub lower13: Bound,
    pub upper13: Bound,
}

/// `|B_{2n+2} / B_{2n}|`.
pub fn ratio_value(n: u32) -> Rational {
    (bernoulli_number(2 * n + 2) / bernoulli_number(2 * n)).abs()
}

fn lower13(n: u32) -> Bound {
    let (p, k) = (pow2(2 * n), from_int((n + 1) * (2 * n + 1)));
    let four_p = &p * from_int(4);
    let c =
        &four_p * (&p - from_int(2)) / ((&four_p - from_int(1)) * (&p * from_int(2) - from_int(1)));
    Bound::OverPiSquared(c * k)
}

/// All R9 to R13 bounds at index `n >= 1`.
pub fn ratio_bounds(n: u32) -> RatioBounds {
    assert!(n >= 1, "ratio bounds need n >= 1");
    let p = pow2(2 * n);
    let k = from_int((n + 1) * (2 * n + 1));
    let one = Rational::one;
    let four_p = &p * from_int(4);
    let two_p = &p * from_int(2);
    let lower10 = Bound::OverPiSquared((&p - from_int(2)) / (&two_p - one()) * &k);
    RatioBounds {
        n,
        lower9: Bound::Rational(&four_p / (&four_p - one()) * &k / from_int(32)),
        upper9: Bound::Rational((&four_p - from_int(8)) / (&four_p - one()) * &k / from_int(8)),
        upper10: Bound::OverPiSquared((&two_p - from_int(2)) / (&four_p - one()) * &k),
        upper11: Bound::OverPiSquared(&two_p / (&four_p - one()) * &k),
        lower12: lower10.clone(),
        lower10,
        upper12: Bound::OverPiSquared(&k / from_int(2)),
        lower13: lower13(n),
        upper13: Bound::OverPiSquared(&four_p * &p / ((&four_p - one()) * (&two_p + one())) * &k),
    }
}

/// `c / pi^k` enclosed to about `2^-bits`.
fn over_pi_power(c: &Rational, k: u32, bits: u32) -> Result<RationalInterval, InequalityError> {
    let work = bits + GUARD_BITS;
    let den = match k {
        1 => pi_enclosure(work)?,
        _ => pi_squared_enclosure(work)?,
    };
    Ok(RationalInterval::point(c.clone())
        .div(&den)?
        .round_outward(bits + 4))
}

/// `1 - 2^e` for any integer exponent.
fn one_minus_pow2(e: i64) -> Rational {
    let p = if e >= 0 {
        pow2(e as u32)
    } else {
        pow2_inv((-e) as u32)
    };
    Rational::one() - p
}

fn abs_b(k: u32) -> Rational {
    bernoulli_number(k).abs()
}

/// `(-1)^(n+1) B_2n(t)`, positive near 0 for every `n`.
fn signed_even(n: u32, t: &Rational) -> Rational {
    parity_sign(n + 1) * bernoulli_polynomial(2 * n).eval(t)
}

fn signed_odd(n: u32, t: &Rational) -> Rational {
    parity_sign(n + 1) * bernoulli_polynomial(2 * n + 1).eval(t)
}

/// Grid points in increasing order, with `(1/2, 1)` mirrors when `both`.
fn sample_points(config: &SuiteConfig, both: bool) -> Vec<Rational> {
    let mut pts = config.grid.clone();
    pts.sort();
    pts.dedup();
    if both {
        let right: Vec<Rational> = pts.iter().rev().map(|t| Rational::one() - t).collect();
        pts.extend(right);
    }
    pts
}

fn on_right(t: &Rational) -> bool {
    t > &half()
}

pub(crate) struct Plan {
    pub(crate) checks: Vec<Check>,
    pub(crate) extra: Vec<Outcome>,
    pub(crate) notes: Vec<String>,
}

struct Builder {
    checks: Vec<Check>,
    extra: Vec<Outcome>,
    notes: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            checks: Vec::new(),
            extra: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(
        &mut self,
        n: u32,
        t: Option<&Rational>,
        label: &str,
        lhs: Quantity,
        rel: Relation,
        rhs: Quantity,
    ) {
        self.checks.push(Check {
            instance: Instance {
                n,
                m: None,
                t: t.cloned(),
            },
            label: label.to_string(),
            lhs,
            rel,
            rhs,
            note: None,
        });
    }

    /// `lhs rel rhs`, reversed to `rhs rel lhs` when `flip`.
    #[allow(clippy::too_many_arguments)]
    fn push_oriented(
        &mut self,
        n: u32,
        t: &Rational,
        label: &str,
        lhs: Quantity,
        rel: Relation,
        rhs: Quantity,
        flip: bool,
    ) {
        if flip {
            self.push(n, Some(t), &format!("{label} (reversed)"), rhs, rel, lhs);
        } else {
            self.push(n, Some(t), label, lhs, rel, rhs);
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> Plan {
        Plan {
            checks: self.checks,
            extra: self.extra,
            notes: self.notes,
        }
    }
}

fn exact(r: Rational) -> Quantity {
    Quantity::Exact(r)
}

/// `a + b * trig(2 pi t)`, optionally followed by `/ pi^k`, enclosed.
fn trig_affine(
    a: Rational,
    b: Rational,
    trig: fn(&Rational, u32) -> Result<RationalInterval, crate::enclosure::EnclosureError>,
    t: &Rational,
) -> Quantity {
    let t = t.clone();
    Quantity::enclosed(move |bits| {
        let v = trig(&t, bits + GUARD_BITS)?.scale(&b).shift(&a);
        Ok(v.round_outward(bits + 4))
    })
}

fn trig_over_pi(c: Rational, t: &Rational) -> Quantity {
    let t = t.clone();
    Quantity::enclosed(move |bits| {
        let s = sin_turns(&t, bits + GUARD_BITS)?.scale(&c);
        let pi = pi_enclosure(bits + GUARD_BITS)?;
        Ok(s.div(&pi)?.round_outward(bits + 4))
    })
}

/// Sign certificate: `p > 0` on the open interval `(lo, hi)`, by Sturm
/// counting after dividing out roots at the endpoints.
fn positive_on_open(
    p: &Poly,
    lo: &Rational,
    hi: &Rational,
) -> Result<(bool, String), InequalityError> {
    let (q, at_lo) = p.deflate_root(lo);
    let (q, at_hi) = q.deflate_root(hi);
    let roots = count_roots(&q, lo, hi)?;
    let mid = (lo + hi) * half();
    let ok = roots == 0 && p.sign_at(&mid) > 0;
    Ok((
        ok,
        format!(
            "difference polynomial on ({lo}, {hi}): endpoint multiplicities {at_lo} and {at_hi}, {roots} interior root(s), sign {} at {mid}",
            p.sign_at(&mid)
        ),
    ))
}

fn polynomial_outcome(
    claim_id: &str,
    n: u32,
    label: String,
    p: &Poly,
    lo: &Rational,
    hi: &Rational,
) -> Result<Outcome, InequalityError> {
    let (ok, notes) = positive_on_open(p, lo, hi)?;
    Ok(Outcome::polynomial(claim_id, n, label, ok, notes))
}

pub(crate) fn plan(
    entry: &ClaimRegistryEntry,
    config: &SuiteConfig,
) -> Result<Plan, InequalityError> {
    let (n_lo, n_hi) = entry.n_range(config);
    let ns: Vec<u32> = (n_lo..=n_hi).collect();
    let mut b = Builder::new();
    match entry.id {
        "R1" => plan_r1(&mut b, &ns, config)?,
        "R2" => plan_r2(&mut b, &ns, config),
        "R3" => plan_r3(&mut b, &ns, config),
        "R4" => plan_r4(&mut b, &ns, config),
        "R5" => plan_r5(&mut b, &ns, config)?,
        "R6" => plan_r6(&mut b, &ns, config)?,
        "R7" => plan_r7(&mut b, &ns, config),
        "R8" => plan_r8(&mut b, &ns, config),
        "R9" | "R10" | "R11" | "R12" | "R13" => plan_ratio(&mut b, entry.id, &ns),
        "R14" => plan_r14(&mut b, &ns, config),
        "R15" => plan_r15(&mut b, &ns),
        "R16" => plan_r16(&mut b, &ns),
        "R17" => plan_r17(&mut b, &ns),
        other => return Err(InequalityError::UnknownClaim(other.to_string())),
    }
    if entry.kind.is_pointwise() && entry.id != "R15" {
        b.note(format!(
            "pointwise bounds sampled on {} grid point(s) per half interval",
            config.grid.len()
        ));
    }
    Ok(b.finish())
}

fn plan_r1(b: &mut Builder, ns: &[u32], config: &SuiteConfig) -> Result<(), InequalityError> {
    let cubic = bernoulli_polynomial(3);
    for &n in ns {
        let lower = from_int(2 * (2 * n + 1)) * abs_b(2 * n);
        let upper = from_int(4 * (2 * n + 1)) * one_minus_pow2(1 - 2 * n as i64) * abs_b(2 * n);
        for t in sample_points(config, true) {
            let q = (bernoulli_polynomial(2 * n + 1).eval(&t) / cubic.eval(&t)).abs();
            b.push(
                n,
                Some(&t),
                "lower",
                exact(lower.clone()),
                Relation::Lt,
                exact(q.clone()),
            );
            b.push(
                n,
                Some(&t),
                "upper",
                exact(q),
                Relation::Lt,
                exact(upper.clone()),
            );
        }
        if config.include_certificates {
            let odd = bernoulli_polynomial(2 * n + 1).scale(&parity_sign(n + 1));
            for (lo, hi, sigma) in [(Rational::zero(), half(), 1), (half(), Rational::one(), -1)] {
                let s = from_int(sigma);
                let above = (&odd - &cubic.scale(&lower)).scale(&s);
                let below = (&cubic.scale(&upper) - &odd).scale(&s);
                let side = format!("({lo}, {hi})");
                b.extra.push(polynomial_outcome(
                    "R1",
                    n,
                    format!("lower for all t in {side}"),
                    &above,
                    &lo,
                    &hi,
                )?);
                b.extra.push(polynomial_outcome(
                    "R1",
                    n,
                    format!("upper for all t in {side}"),
                    &below,
                    &lo,
                    &hi,
                )?);
            }
        }
    }
    if config.include_certificates {
        let n_max = ns.last().copied().unwrap_or(0);
        if n_max >= 2 {
            for cert in certify_claim(TheoremClaim::OddOverCubic, n_max)? {
                let (n, m) = super::label_indices(&cert.label);
                b.extra.push(Outcome::certificate("R1", &cert, n, m));
            }
        }
        b.note("all-t sign certificates and monotonicity certificates included");
    }
    Ok(())
}

fn plan_r2(b: &mut Builder, ns: &[u32], config: &SuiteConfig) {
    for &n in ns {
        let c = one_minus_pow2(1 - 2 * n as i64) * from_int(2 * n + 1) * abs_b(2 * n) / from_int(9);
        let rhs = Quantity::enclosed(move |bits| {
            Ok(sqrt_enclosure(&from_int(3), bits + GUARD_BITS)?.scale(&c))
        });
        for t in sample_points(config, false) {
            let lhs = bernoulli_polynomial(2 * n + 1).eval(&t).abs();
            b.push(n, Some(&t), "upper", exact(lhs), Relation::Lt, rhs.clone());
        }
    }
}

fn plan_r3(b: &mut Builder, ns: &[u32], config: &SuiteConfig) {
    for &n in ns {
        let k = from_int(2 * n + 1) * abs_b(2 * n) / from_int(2);
        let lower_c = one_minus_pow2(1 - 2 * n as i64) * &k;
        for t in sample_points(config, true) {
            let s = exact(signed_odd(n, &t));
            let flip = on_right(&t);
            b.push_oriented(
                n,
                &t,
                "lower",
                trig_over_pi(lower_c.clone(), &t),
                Relation::Lt,
                s.clone(),
                flip,
            );
            b.push_oriented(
                n,
                &t,
                "upper",
                s,
                Relation::Lt,
                trig_over_pi(k.clone(), &t),
                flip,
            );
        }
    }
    if ns.contains(&0) {
        b.note("n = 0 is included as stated; there B_1 gives 1/2 - t against sin(2 pi t)/(2 pi)");
    }
}

fn plan_r4(b: &mut Builder, ns: &[u32], config: &SuiteConfig) {
    let quarter = rat(1, 4);
    for &n in ns {
        for t in sample_points(config, false) {
            if t == quarter {
                continue;
            }
            let lhs = exact(signed_even(n, &t));
            let (label, c) = if t < quarter {
                ("upper on (0, 1/4)", abs_b(2 * n))
            } else {
                (
                    "upper on (1/4, 1/2)",
                    one_minus_pow2(1 - 2 * n as i64) * abs_b(2 * n),
                )
            };
            let rhs = trig_affine(Rational::zero(), c, cos_turns, &t);
            b.push(n, Some(&t), label, lhs, Relation::Lt, rhs);
        }
    }
    b.note("t = 1/4 separates the two pieces and is not sampled");
}

fn plan_r5(b: &mut Builder, ns: &[u32], config: &SuiteConfig) -> Result<(), InequalityError> {
    let t = Poly::t();
    let one_minus_t = &Poly::constant(Rational::one()) - &t;
    let quartic = &(&t * &t) * &(&one_minus_t * &one_minus_t);
    let centered = &t - &Poly::constant(half());
    let centered_sq = &centered * &centered;
    for &n in ns {
        let even = bernoulli_polynomial(2 * n);
        let tail = one_minus_pow2(-2 * n as i64);
        let a_lo = from_int(n * (2 * n - 1)) * abs_b(2 * n - 2);
        let a_hi = from_int(32) * &tail * abs_b(2 * n);
        let b_lo = from_int(8) * &tail * abs_b(2 * n);
        let b_hi = from_int(n * (2 * n - 1)) * one_minus_pow2(3 - 2 * n as i64) * abs_b(2 * n - 2);
        let h = bernoulli_at_half(2 * n);
        for x in sample_points(config, true) {
            if n >= 3 {
                let v =
                    parity_sign(n) * (even.eval(&x) - bernoulli_number(2 * n)) / quartic.eval(&x);
                b.push(
                    n,
                    Some(&x),
                    "first lower",
                    exact(a_lo.clone()),
                    Relation::Lt,
                    exact(v.clone()),
                );
                b.push(
                    n,
                    Some(&x),
                    "first upper",
                    exact(v),
                    Relation::Lt,
                    exact(a_hi.clone()),
                );
            }
            let w = parity_sign(n + 1) * (even.eval(&x) - &h) / centered_sq.eval(&x);
            b.push(
                n,
                Some(&x),
                "second lower",
                exact(b_lo.clone()),
                Relation::Lt,
                exact(w.clone()),
            );
            b.push(
                n,
                Some(&x),
                "second upper",
                exact(w),
                Relation::Lt,
                exact(b_hi.clone()),
            );
        }
        if config.include_certificates {
            let d0 = (&even - &Poly::constant(bernoulli_number(2 * n))).scale(&parity_sign(n));
            let dh = (&even - &Poly::constant(h.clone())).scale(&parity_sign(n + 1));
            for (lo, hi) in [(Rational::zero(), half()), (half(), Rational::one())] {
                let side = format!("({lo}, {hi})");
                if n >= 3 {
                    let p = &d0 - &quartic.scale(&a_lo);
                    b.extra.push(polynomial_outcome(
                        "R5",
                        n,
                        format!("first lower for all t in {side}"),
                        &p,
                        &lo,
                        &hi,
                    )?);
                    let p = &quartic.scale(&a_hi) - &d0;
                    b.extra.push(polynomial_outcome(
                        "R5",
                        n,
                        format!("first upper for all t in {side}"),
                        &p,
                        &lo,
                        &hi,
                    )?);
                }
                let p = &dh - &centered_sq.scale(&b_lo);
                b.extra.push(polynomial_outcome(
                    "R5",
                    n,
                    format!("second lower for all t in {side}"),
                    &p,
                    &lo,
                    &hi,
                )?);
                let p = &centered_sq.scale(&b_hi) - &dh;
                b.extra.push(polynomial_outcome(
                    "R5",
                    n,
                    format!("second upper for all t in {side}"),
                    &p,
                    &lo,
                    &hi,
                )?);
            }
        }
    }
    Ok(())
}

fn plan_r6(b: &mut Builder, ns: &[u32], config: &SuiteConfig) -> Result<(), InequalityError> {
    for &n in ns {
        let bound = (Rational::from_integer(2.into()) - pow2_inv(2 * n - 1)) * abs_b(2 * n);
        let sup = supnorm_bound(n, SupnormKind::EvenDiff, config.bits)?;
        let lhs = if sup.is_point() {
            exact(sup.lo().clone())
        } else {
            Quantity::enclosed(move |bits| Ok(supnorm_bound(n, SupnormKind::EvenDiff, bits)?))
        };
        b.push(
            n,
            None,
            "supremum over [0, 1]",
            lhs,
            Relation::Le,
            exact(bound.clone()),
        );
        for t in sample_points(config, true) {
            let v = (bernoulli_polynomial(2 * n).eval(&t) - bernoulli_number(2 * n)).abs();
            b.push(
                n,
                Some(&t),
                "pointwise",
                exact(v),
                Relation::Le,
                exact(bound.clone()),
            );
        }
    }
    b.note("critical points of B_2n(t) - B_2n are 0, 1/2 and 1, so the supremum is exact");
    Ok(())
}

fn r7_bounds(n: u32, t: &Rational) -> (Rational, Rational) {
    let tail = one_minus_pow2(-2 * n as i64);
    let u = t * (Rational::one() - t);
    let d = t - half();
    let l1 = (Rational::one() - from_int(32) * &tail * &u * &u) * abs_b(2 * n);
    let l2 = (from_int(8) * &tail * &d * &d - one_minus_pow2(1 - 2 * n as i64)) * abs_b(2 * n);
    (l1, l2)
}

fn plan_r7(b: &mut Builder, ns: &[u32], config: &SuiteConfig) {
    for &n in ns {
        for t in sample_points(config, true) {
            let v = signed_even(n, &t);
            let (l1, l2) = r7_bounds(n, &t);
            if n >= 3 {
                b.push(
                    n,
                    Some(&t),
                    "first lower",
                    exact(l1.clone()),
                    Relation::Lt,
                    exact(v.clone()),
                );
            }
            if n >= 2 {
                b.push(
                    n,
                    Some(&t),
                    "second lower",
                    exact(l2.clone()),
                    Relation::Lt,
                    exact(v),
                );
            }
            b.push(
                n,
                Some(&t),
                "first bound exceeds second",
                exact(l2),
                Relation::Lt,
                exact(l1),
            );
        }
    }
    b.note("the ordering of the two lower bounds is checked from n = 1; the bounds themselves on their own ranges");
}

fn plan_r8(b: &mut Builder, ns: &[u32], config: &SuiteConfig) {
    for &n in ns {
        let abs2n = abs_b(2 * n);
        let abs_prev = abs_b(2 * n - 2);
        let nn = from_int(n * (2 * n - 1));
        let p = pow2(2 * n);
        let lower_a = &nn / from_int(2) * one_minus_pow2(3 - 2 * n as i64) * &abs_prev;
        let lower_b = one_minus_pow2(1 - 2 * n as i64) * &abs2n;
        let single_c = &nn / from_int(2) * &abs_prev;
        for t in sample_points(config, true) {
            let v = exact(signed_even(n, &t));
            let tt = t.clone();
            let (la, lb) = (lower_a.clone(), lower_b.clone());
            let lower = Quantity::enclosed(move |bits| {
                let work = bits + GUARD_BITS;
                let c = cos_turns(&tt, work)?.shift(&Rational::one()).scale(&la);
                Ok(c.div(&pi_squared_enclosure(work)?)?
                    .shift(&-lb.clone())
                    .round_outward(bits + 4))
            });
            b.push(n, Some(&t), "double lower", lower, Relation::Lt, v.clone());
            let upper = trig_affine(
                abs2n.clone() / &p,
                (&p - from_int(1)) / &p * &abs2n,
                cos_turns,
                &t,
            );
            b.push(n, Some(&t), "double upper", v.clone(), Relation::Lt, upper);
            let (tt, sc, a2) = (t.clone(), single_c.clone(), abs2n.clone());
            let single = Quantity::enclosed(move |bits| {
                let work = bits + GUARD_BITS;
                let one_minus_cos = cos_turns(&tt, work)?
                    .scale(&-Rational::one())
                    .shift(&Rational::one());
                let sub = one_minus_cos.scale(&sc).div(&pi_squared_enclosure(work)?)?;
                Ok((-&sub).shift(&a2).round_outward(bits + 4))
            });
            if n >= 2 {
                b.push(n, Some(&t), "single lower", single, Relation::Lt, v);
            } else {
                b.push(
                    n,
                    Some(&t),
                    "single lower reversed at n = 1",
                    v,
                    Relation::Lt,
                    single,
                );
            }
        }
    }
}

fn ratio_check(b: &mut Builder, n: u32, label: &str, lhs: &Bound, rel: Relation, rhs: &Bound) {
    match (lhs, rhs) {
        (Bound::OverPiSquared(x), Bound::OverPiSquared(y)) => {
            b.checks.push(Check {
                instance: Instance {
                    n,
                    m: None,
                    t: None,
                },
                label: label.to_string(),
                lhs: exact(x.clone()),
                rel,
                rhs: exact(y.clone()),
                note: Some("both sides share the factor 1/pi^2; coefficients compared"),
            });
        }
        _ => b.push(n, None, label, lhs.quantity(), rel, rhs.quantity()),
    }
}

fn plan_ratio(b: &mut Builder, id: &str, ns: &[u32]) {
    use Relation::{Le, Lt};
    for &n in ns {
        let r = Bound::Rational(if n == 0 { rat(1, 6) } else { ratio_value(n) });
        if n == 0 {
            if id == "R13" {
                ratio_check(b, 0, "lower", &lower13(0), Le, &r);
            }
            continue;
        }
        let rb = ratio_bounds(n);
        let (lo, hi, rel) = match id {
            "R9" => (Some(rb.lower9), rb.upper9, Le),
            "R10" => (Some(rb.lower10), rb.upper10, Lt),
            "R11" => (None, rb.upper11, Lt),
            "R12" => (Some(rb.lower12), rb.upper12, Lt),
            _ => (Some(rb.lower13), rb.upper13, Le),
        };
        if let Some(lo) = lo {
            ratio_check(b, n, "lower", &lo, rel, &r);
        }
        ratio_check(b, n, "upper", &r, rel, &hi);
    }
    if id == "R13" && ns.contains(&0) {
        b.note("n = 0 checks only the lower side, against |B_2/B_0| = 1/6");
    }
}

fn plan_r14(b: &mut Builder, ns: &[u32], config: &SuiteConfig) {
    for &n in ns {
        for t in sample_points(config, true) {
            let flip = on_right(&t);
            let quad = from_int(6) * &t * &t - from_int(6) * &t + from_int(1);
            let two_t_minus_one = from_int(2) * &t - from_int(1);
            let first_lower = &quad / (&t * &two_t_minus_one * (&t - from_int(1)));
            let second_lower = &quad / (from_int(3) * (from_int(1) - from_int(2) * &t));
            let even = bernoulli_polynomial(2 * n).eval(&t);
            let first = from_int(2 * n + 1) * &even / bernoulli_polynomial(2 * n + 1).eval(&t);
            let second = -&even / (from_int(n) * bernoulli_polynomial(2 * n - 1).eval(&t));
            let tt = t.clone();
            let two_pi_cot = Quantity::enclosed(move |bits| {
                let work = bits + GUARD_BITS;
                let v = &cot_turns(&tt, work)? * &pi_enclosure(work)?;
                Ok(v.scale(&from_int(2)).round_outward(bits + 4))
            });
            let tt = t.clone();
            let cot_over_pi = Quantity::enclosed(move |bits| {
                let work = bits + GUARD_BITS;
                Ok(cot_turns(&tt, work)?
                    .div(&pi_enclosure(work)?)?
                    .round_outward(bits + 4))
            });
            b.push_oriented(
                n,
                &t,
                "first lower",
                exact(first_lower),
                Relation::Le,
                exact(first.clone()),
                flip,
            );
            b.push_oriented(
                n,
                &t,
                "first upper",
                exact(first),
                Relation::Lt,
                two_pi_cot,
                flip,
            );
            b.push_oriented(
                n,
                &t,
                "second lower",
                exact(second_lower),
                Relation::Le,
                exact(second.clone()),
                flip,
            );
            b.push_oriented(
                n,
                &t,
                "second upper",
                exact(second),
                Relation::Lt,
                cot_over_pi,
                flip,
            );
        }
    }
}

fn plan_r15(b: &mut Builder, ns: &[u32]) {
    let quarter = rat(1, 4);
    for &n in ns {
        let k = from_int(2 * n + 1) * abs_b(2 * n) / from_int(2);
        let bound = {
            let k = k.clone();
            Quantity::enclosed(move |bits| over_pi_power(&k, 1, bits))
        };
        let sup = Quantity::enclosed(move |bits| Ok(supnorm_bound(n, SupnormKind::OddPoly, bits)?));
        b.push(
            n,
            None,
            "supremum over [0, 1]",
            sup,
            Relation::Lt,
            bound.clone(),
        );
        let at_quarter = bernoulli_at_quarter(2 * n + 1)
            .expect("index is positive")
            .abs();
        let improved = {
            let c = one_minus_pow2(1 - 2 * n as i64) * &k;
            Quantity::enclosed(move |bits| over_pi_power(&c, 1, bits))
        };
        b.push(
            n,
            Some(&quarter),
            "lower at t = 1/4",
            improved,
            Relation::Lt,
            exact(at_quarter.clone()),
        );
        let earlier = {
            let c = (Rational::one() - from_int(4) * pow2_inv(2 * n)) * &k;
            Quantity::enclosed(move |bits| over_pi_power(&c, 1, bits))
        };
        b.push(
            n,
            Some(&quarter),
            "earlier lower at t = 1/4",
            earlier,
            Relation::Le,
            exact(at_quarter.clone()),
        );
        b.push(
            n,
            Some(&quarter),
            "upper at t = 1/4",
            exact(at_quarter),
            Relation::Lt,
            bound,
        );
    }
    b.note("the supremum is enclosed from isolated critical points, never from grid maxima");
}

fn plan_r16(b: &mut Builder, ns: &[u32]) {
    use Relation::{Eq, Le, Lt};
    let mut skipped = false;
    for &n in ns {
        let r = ratio_bounds(n);
        if n >= 2 {
            ratio_check(b, n, "lower10 >= lower9", &r.lower9, Le, &r.lower10);
            ratio_check(b, n, "lower12 >= lower9", &r.lower9, Le, &r.lower12);
            ratio_check(b, n, "lower13 >= lower9", &r.lower9, Le, &r.lower13);
        } else {
            skipped = true;
        }
        ratio_check(b, n, "lower12 = lower10", &r.lower12, Eq, &r.lower10);
        ratio_check(b, n, "lower13 > lower10", &r.lower10, Lt, &r.lower13);
        ratio_check(b, n, "lower13 > lower12", &r.lower12, Lt, &r.lower13);
        ratio_check(b, n, "upper10 < upper9", &r.upper10, Lt, &r.upper9);
        ratio_check(b, n, "upper11 > upper10", &r.upper10, Lt, &r.upper11);
        ratio_check(b, n, "upper11 < upper9", &r.upper11, Lt, &r.upper9);
        ratio_check(b, n, "upper12 < upper9", &r.upper12, Lt, &r.upper9);
        ratio_check(b, n, "upper12 < upper11", &r.upper12, Lt, &r.upper11);
        ratio_check(b, n, "upper12 > upper10", &r.upper10, Lt, &r.upper12);
        ratio_check(b, n, "upper13 < upper9", &r.upper13, Lt, &r.upper9);
        ratio_check(b, n, "upper13 < upper11", &r.upper13, Lt, &r.upper11);
        ratio_check(b, n, "upper13 < upper12", &r.upper13, Lt, &r.upper12);
        ratio_check(b, n, "upper13 > upper10", &r.upper10, Lt, &r.upper13);
    }
    if skipped {
        b.note("comparisons against lower9 start at n = 2; at n = 1 lower9 = 1/5 equals the ratio and exceeds the other lower bounds");
    }
}

fn plan_r17(b: &mut Builder, ns: &[u32]) {
    use Relation::Le;
    let floor = Bound::OverPiSquared(rat(-1, 2));
    let term =
        |n: u32, h: &dyn Fn(u32) -> Rational| h(2 * n) / (from_int(n * (2 * n - 1)) * h(2 * n - 2));
    let at_zero = |k: u32| bernoulli_number(k);
    let at_half = |k: u32| bernoulli_at_half(k);
    for &n in ns {
        let (a, a_next) = (term(n, &at_zero), term(n + 1, &at_zero));
        b.push(
            n,
            None,
            "chain at 0: step",
            exact(a_next.clone()),
            Le,
            exact(a),
        );
        ratio_check(
            b,
            n,
            "chain at 0: floor",
            &floor,
            Le,
            &Bound::Rational(a_next),
        );
        let (h, h_next) = (term(n, &at_half), term(n + 1, &at_half));
        b.push(
            n,
            None,
            "chain at 1/2: step",
            exact(h),
            Le,
            exact(h_next.clone()),
        );
        ratio_check(
            b,
            n,
            "chain at 1/2: ceiling",
            &Bound::Rational(h_next),
            Le,
            &floor,
        );
    }
    b.note("the chain at 1/2 uses B_2n(1/2) in both numerator and denominator");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_unique_and_ordered() {
        let ids: Vec<&str> = registry().iter().map(|e| e.id).collect();
        let expected: Vec<String> = (1..=17).map(|k| format!("R{k}")).collect();
        assert_eq!(ids, expected);
    }

    #[test]
    fn ratio_bounds_at_one() {
        let r = ratio_bounds(1);
        assert_eq!(r.lower9, Bound::Rational(rat(1, 5)));
        assert_eq!(r.upper9, Bound::Rational(rat(2, 5)));
        assert_eq!(r.lower10, Bound::OverPiSquared(rat(12, 7)));
        assert_eq!(r.upper12, Bound::OverPiSquared(rat(3, 1)));
        assert_eq!(ratio_value(1), rat(1, 5));
        assert_eq!(lower13(0), Bound::OverPiSquared(rat(-4, 3)));
    }

    #[test]
    fn quadratic_identity_at_quarter() {
        let t = rat(1, 4);
        let quad = from_int(6) * &t * &t - from_int(6) * &t + from_int(1);
        let lower = &quad / (&t * (from_int(2) * &t - from_int(1)) * (&t - from_int(1)));
        let ratio =
            from_int(3) * bernoulli_polynomial(2).eval(&t) / bernoulli_polynomial(3).eval(&t);
        assert_eq!(lower, rat(-4, 3));
        assert_eq!(ratio, rat(-4, 3));
    }

    #[test]
    fn one_minus_powers() {
        assert_eq!(one_minus_pow2(1), rat(-1, 1));
        assert_eq!(one_minus_pow2(-3), rat(7, 8));
    }
}
