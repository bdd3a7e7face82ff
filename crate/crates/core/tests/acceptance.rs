//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Tolerances are pinned below.

use bern_core::bernoulli::{
    bernoulli_at_half, bernoulli_at_quarter, bernoulli_number, bernoulli_polynomial, euler_number,
};
use bern_core::certify::{
    certify_logconvexity_sequences, certify_sequence_in_n, certify_theorem_suite, check_limit,
    LimitClaim, SequenceClaim,
};
use bern_core::enclosure::{pi_enclosure, RationalInterval};
use bern_core::exact::{from_int, half, parse_rational, pow2, rat, Rational};
use bern_core::inequalities::{verify_all, Status, SuiteConfig, VerificationReport};
use bern_core::roots::{
    check_r2n_bounds, count_roots, endpoint_margin, isolate_r2n, verify_r2n_monotone,
};
use num_traits::{One, Zero};
use std::process::Command;
use std::time::Instant;

/// Width of the zero brackets.
const ZERO_WIDTH: &str = "1e-12";
/// `1/4 - r_2n` must be below this from `QUARTER_GAP_FROM` on.
const QUARTER_GAP: &str = "1e-4";
const QUARTER_GAP_FROM: u32 = 8;
/// Distance of the ratio sequences from their limits at `n = LIMIT_N`.
const LIMIT_TOL: &str = "1e-6";
const LIMIT_N: u32 = 15;
const PI_BITS: u32 = 64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn q(s: &str) -> Rational {
    parse_rational(s).expect("pinned constant parses")
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * from_int(k as u64))
}

/// Coefficients of `1 / sum c_k z^k` up to `z^order`, with `c_0 = 1`.
fn invert_series(c: &[Rational], order: usize) -> Vec<Rational> {
    let mut a = vec![Rational::one()];
    for n in 1..=order {
        let mut s = Rational::zero();
        for k in 1..=n.min(c.len() - 1) {
            s += &c[k] * &a[n - k];
        }
        a.push(-s);
    }
    a
}

fn criterion_1() -> Outcome {
    let order = 24;
    // z / (e^z - 1) = 1 / sum z^k / (k+1)!
    let c: Vec<Rational> = (0..=order).map(|k| factorial(k + 1).recip()).collect();
    let a = invert_series(&c, order);
    let numbers_ok = (0..=order).all(|n| &a[n] * factorial(n) == bernoulli_number(n as u32));
    // 2 e^z / (e^{2z} + 1) = 1 / cosh z
    let order_e = 12;
    let c: Vec<Rational> = (0..=order_e)
        .map(|k| {
            if k % 2 == 0 {
                factorial(k).recip()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let e = invert_series(&c, order_e);
    let euler_ok = (0..=order_e)
        .all(|n| &e[n] * factorial(n) == Rational::from_integer(euler_number(n as u32)));
    let b12 = bernoulli_number(12) == rat(-691, 2730);
    outcome(
        numbers_ok && euler_ok && b12,
        format!("B_n n<=24 {numbers_ok}, E_n n<=12 {euler_ok}, B_12 = -691/2730 {b12}"),
    )
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    let mirror_arg = (-Rational::one(), Rational::one());
    for n in 0..=60u32 {
        let p = bernoulli_polynomial(n);
        if n > 0 && p.derivative() != bernoulli_polynomial(n - 1).scale(&from_int(n)) {
            bad.push(format!("derivative n={n}"));
        }
        let sign = if n % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        if p.compose_affine(&mirror_arg.0, &mirror_arg.1) != p.scale(&sign) {
            bad.push(format!("symmetry n={n}"));
        }
        if bernoulli_at_half(n) != p.eval(&half()) {
            bad.push(format!("value at 1/2 n={n}"));
        }
        if n > 0 && bernoulli_at_quarter(n).ok() != Some(p.eval(&rat(1, 4))) {
            bad.push(format!("value at 1/4 n={n}"));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "n = 0..60".into()
        } else {
            bad.join(", ")
        },
    )
}

fn criterion_3() -> Outcome {
    let width = q(ZERO_WIDTH);
    let pi = pi_enclosure(PI_BITS).expect("pi");
    let (sixth, quarter) = (rat(1, 6), rat(1, 4));
    let margin = endpoint_margin();
    let mut bad = Vec::new();
    let mut last_gap = Rational::zero();
    for n in 1..=25u32 {
        let p = bernoulli_polynomial(2 * n);
        match count_roots(&p, &margin, &(half() - &margin)) {
            Ok(1) => {}
            other => bad.push(format!("count n={n}: {other:?}")),
        }
        let bracket = match check_r2n_bounds(n, &width) {
            Ok(b) => b.bracket,
            Err(e) => {
                bad.push(format!("bounds n={n}: {e}"));
                continue;
            }
        };
        if bracket.width() > width
            || isolate_r2n(n, &width)
                .map(|b| b.width() > width)
                .unwrap_or(true)
        {
            bad.push(format!("width n={n}"));
        }
        // the root is interior to the bracket, so touching an endpoint is fine
        if bracket.lo < sixth || bracket.hi > quarter {
            bad.push(format!("(1/6, 1/4) n={n}"));
        }
        let scale = RationalInterval::point(pow2(2 * n + 1));
        let lower = (&scale * &pi).recip().expect("positive");
        let lower = (-&lower).shift(&quarter);
        if &bracket.lo < lower.hi() {
            bad.push(format!("lower bound with 64-bit pi n={n}"));
        }
        let gap = &quarter - &bracket.lo;
        if n >= QUARTER_GAP_FROM && gap >= q(QUARTER_GAP) {
            bad.push(format!("quarter gap n={n}"));
        }
        last_gap = gap;
    }
    match verify_r2n_monotone(25, &width) {
        Ok(true) => {}
        other => bad.push(format!("monotone: {other:?}")),
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "n = 1..25, 1/4 - r_50 <= {:.3e}",
                rational_to_f64(&last_gap)
            )
        } else {
            bad.join(", ")
        },
    )
}

fn rational_to_f64(r: &Rational) -> f64 {
    bern_core::exact::to_decimal_string(r, 17)
        .parse()
        .unwrap_or(f64::NAN)
}

fn criterion_4() -> Outcome {
    match certify_theorem_suite(12) {
        Ok(certs) => {
            let max_degree = certs
                .iter()
                .filter_map(|c| c.wronskian.degree())
                .max()
                .unwrap_or(0);
            let failed = certs.iter().filter(|c| !c.passed()).count();
            outcome(
                failed == 0,
                format!(
                    "{} certificates, {failed} failed, highest Wronskian degree {max_degree}",
                    certs.len()
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=16i64 {
        let t = rat(k, 17);
        for claim in [
            SequenceClaim::EvenOverNextOdd,
            SequenceClaim::EvenOverPreviousOdd,
        ] {
            match certify_sequence_in_n(&t, claim, 12) {
                Ok(c) if c.passed() => {}
                other => bad.push(format!(
                    "{} t={t}: {:?}",
                    claim.id(),
                    other.map(|c| c.conclusion)
                )),
            }
        }
    }
    let t = rat(1, 8);
    let tol = q(LIMIT_TOL);
    let mut gaps = Vec::new();
    for claim in [LimitClaim::EvenOverNextOdd, LimitClaim::EvenOverPreviousOdd] {
        match check_limit(claim, &t, 1, LIMIT_N, &tol, 64) {
            Ok(r) if r.within_tol => {
                gaps.push(rational_to_f64(r.points.last().expect("points").gap.hi()))
            }
            Ok(r) => bad.push(format!(
                "{} gap {}",
                claim.id(),
                r.points.last().expect("points").gap.approx(6)
            )),
            Err(e) => bad.push(format!("{}: {e}", claim.id())),
        }
    }
    for claim in [LimitClaim::ScaledEven, LimitClaim::ScaledOdd] {
        match check_limit(claim, &t, 4, 20, &tol, 64) {
            Ok(r) if r.decreasing_from_index(r.points[0].n) => {}
            Ok(r) => bad.push(format!(
                "{} decreasing from {:?}",
                claim.id(),
                r.decreasing_from
            )),
            Err(e) => bad.push(format!("{}: {e}", claim.id())),
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("16-point grid n<=12; gaps at n=15: {:.2e}, {:.2e}; scaled gaps decrease on n=4..20", gaps[0], gaps[1])
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_6() -> Outcome {
    let config = SuiteConfig::default();
    let reports = match verify_all(&config) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let find = |id: &str| {
        reports
            .iter()
            .find(|r| r.claim_id == id)
            .expect("report present")
    };
    let all_pass = |r: &VerificationReport,
                    f: &dyn Fn(&bern_core::inequalities::CheckRecord) -> bool| {
        let sel: Vec<_> = r.records.iter().filter(|x| f(x)).collect();
        !sel.is_empty() && sel.iter().all(|x| x.status == Status::Pass)
    };
    let r8_reversal = all_pass(find("R8"), &|x| {
        x.instance.n == 1 && x.label.contains("reversed")
    });
    let r13_zero = all_pass(find("R13"), &|x| x.instance.n == 0);
    let r15 = (1..=8).all(|n| {
        all_pass(find("R15"), &|x| {
            x.instance.n == n && x.label.starts_with("supremum")
        })
    }) && (1..=8).all(|n| {
        all_pass(find("R15"), &|x| {
            x.instance.n == n && x.instance.t.is_some()
        })
    });
    let r16 = (1..=50).all(|n| all_pass(find("R16"), &|x| x.instance.n == n));
    let undecided: usize = reports
        .iter()
        .flat_map(|r| &r.records)
        .filter(|x| x.status == Status::Undecided)
        .count();
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            let mut ns: Vec<u32> = r.failures.iter().map(|f| f.instance.n).collect();
            ns.dedup();
            format!(
                "{} ({} failures at n = {:?})",
                r.claim_id,
                r.failures.len(),
                ns
            )
        })
        .collect();
    let pass = failing.is_empty() && undecided == 0 && r8_reversal && r13_zero && r15 && r16;
    outcome(
        pass,
        format!(
            "{} reports; failing: [{}]; undecided {undecided}; R8 n=1 reversal {r8_reversal}; R13 n=0 {r13_zero}; R15 n=1..8 {r15}; R16 n=1..50 {r16}",
            reports.len(),
            failing.join(", ")
        ),
    )
}

fn criterion_7() -> Outcome {
    match certify_logconvexity_sequences(100) {
        Ok(certs) => {
            let failed: Vec<&str> = certs
                .iter()
                .filter(|c| !c.passed())
                .map(|c| c.description.as_str())
                .collect();
            outcome(
                failed.is_empty(),
                format!("{} sequences, failed: {failed:?}", certs.len()),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn criterion_8() -> Outcome {
    let dir = std::env::temp_dir().join(format!("bern-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let run = |name: &str| {
        let path = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_bern"))
            .args([
                "verify",
                "--n-max",
                "4",
                "--scalar-n-max",
                "20",
                "--grid",
                "16",
                "--format",
                "json",
                "--out",
            ])
            .arg(&path)
            .status()
            .expect("bern runs");
        (status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (code_a, a) = run("a.json");
    let (code_b, b) = run("b.json");
    let _ = std::fs::remove_dir_all(&dir);
    let identical = !a.is_empty() && a == b && code_a == code_b;
    let round_trip = serde_json::from_slice::<Vec<VerificationReport>>(&a)
        .map(|r| serde_json::to_string_pretty(&r).expect("serializes") + "\n")
        .map(|s| s.as_bytes() == a.as_slice())
        .unwrap_or(false);
    outcome(
        identical && round_trip,
        format!("{} bytes, identical {identical}, re-serialization identical {round_trip}, exit {code_a:?}", a.len()),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("exact core matches series oracles", criterion_1),
        ("identities for n <= 60", criterion_2),
        ("zeros of B_2n and their bounds", criterion_3),
        ("theorem certificates for n, m <= 12", criterion_4),
        ("sequences and limits", criterion_5),
        ("full inequality suite", criterion_6),
        ("log-convexity for n <= 100", criterion_7),
        ("deterministic verify reports", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {tag} {name} [{secs:.1}s] {}",
            i + 1,
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
