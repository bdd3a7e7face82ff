use super::output::{approx, approx_interval, to_json, Table};
use super::{Command, Format, RunConfig, SpecialPoint, TableKind};
use crate::bernoulli::{
    bernoulli_at_half, bernoulli_at_quarter, bernoulli_number, bernoulli_polynomial,
    zeta_even_coefficient,
};
use crate::certify::{
    certify_claim, certify_logconvexity_sequences, certify_sequence_in_n, check_limit, LimitClaim,
    LimitReport, MonotonicityCertificate, SequenceCertificate, SequenceClaim, TheoremClaim,
};
use crate::enclosure::RationalInterval;
use crate::exact::{parse_rational, pow2_inv, rat, Rational};
use crate::inequalities::{
    ratio_bounds, ratio_value, verify_all, verify_claim_id, Bound, CheckRecord, Value,
    VerificationReport,
};
use crate::roots::{check_r2n_bounds, isolate_r2n};
use serde::Serialize;
use std::fmt::Write as _;

pub(crate) enum CommandError {
    Usage(String),
    Failure(String),
}

pub(crate) struct Output {
    pub(crate) body: String,
    pub(crate) ok: bool,
    pub(crate) diagnostics: Vec<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            ok: true,
            diagnostics: Vec::new(),
        }
    }
}

fn failure(e: impl std::fmt::Display) -> CommandError {
    CommandError::Failure(e.to_string())
}

/// Sample points at which fixed-`t` sequences and limits are tabulated.
fn limit_points() -> [Rational; 2] {
    [rat(1, 8), rat(3, 8)]
}

pub(crate) fn execute(command: &Command, config: &RunConfig) -> Result<Output, CommandError> {
    match command {
        Command::Number { n } => Ok(scalar_value(config.format, *n, None, bernoulli_number(*n))),
        Command::Poly { n } => Ok(poly(config.format, *n)),
        Command::Value { n, t, at } => value(config.format, *n, t.as_deref(), *at),
        Command::Zero { n, width } => zero(config, *n, width),
        Command::Certify { claim } => certify(config, claim),
        Command::Verify { .. } => verify(config),
        Command::Table { kind } => {
            table(config, *kind).map(|t| Output::ok(t.render(config.format)))
        }
    }
}

#[derive(Serialize)]
struct ScalarValue {
    n: u32,
    #[serde(
        skip_serializing_if = "Option::is_none",
        with = "crate::exact::serde_str::option"
    )]
    t: Option<Rational>,
    #[serde(with = "crate::exact::serde_str")]
    value: Rational,
}

fn scalar_value(format: Format, n: u32, t: Option<Rational>, value: Rational) -> Output {
    let body = match format {
        Format::Text => format!("{value}\n"),
        Format::Json => to_json(&ScalarValue {
            n,
            t: t.clone(),
            value,
        }),
        Format::Csv => {
            let mut table = Table::new("value", &["n", "t", "value", "value_approx"]);
            let t = t.map(|t| t.to_string()).unwrap_or_default();
            table.push(vec![n.to_string(), t, value.to_string(), approx(&value)]);
            table.to_csv()
        }
    };
    Output::ok(body)
}

fn poly(format: Format, n: u32) -> Output {
    let p = bernoulli_polynomial(n);
    let body = match format {
        Format::Text => format!("{p}\n"),
        Format::Json => {
            #[derive(Serialize)]
            struct PolyOut<'a> {
                n: u32,
                coefficients: &'a crate::exact::Poly,
            }
            to_json(&PolyOut {
                n,
                coefficients: &p,
            })
        }
        Format::Csv => {
            let mut table = Table::new("poly", &["power", "coefficient", "coefficient_approx"]);
            for (k, c) in p.coeffs().iter().enumerate() {
                table.push(vec![k.to_string(), c.to_string(), approx(c)]);
            }
            table.to_csv()
        }
    };
    Output::ok(body)
}

fn value(
    format: Format,
    n: u32,
    t: Option<&str>,
    at: Option<SpecialPoint>,
) -> Result<Output, CommandError> {
    let (t, v) = match (t, at) {
        (_, Some(SpecialPoint::Half)) => (rat(1, 2), bernoulli_at_half(n)),
        (_, Some(SpecialPoint::Quarter)) => {
            let v = bernoulli_at_quarter(n).map_err(|e| CommandError::Usage(e.to_string()))?;
            (rat(1, 4), v)
        }
        (Some(s), None) => {
            let t = parse_rational(s).map_err(|e| CommandError::Usage(e.to_string()))?;
            let v = bernoulli_polynomial(n).eval(&t);
            (t, v)
        }
        (None, None) => {
            return Err(CommandError::Usage(
                "value needs a point t or --at half|quarter".into(),
            ))
        }
    };
    Ok(scalar_value(format, n, Some(t), v))
}

fn zero(config: &RunConfig, n: u32, width: &str) -> Result<Output, CommandError> {
    if n == 0 {
        return Err(CommandError::Usage("zero needs n >= 1".into()));
    }
    let width = parse_rational(width).map_err(|e| CommandError::Usage(e.to_string()))?;
    if width <= Rational::from_integer(0.into()) {
        return Err(CommandError::Usage("width must be positive".into()));
    }
    let bracket = isolate_r2n(n, &width).map_err(failure)?;
    let bounds = check_r2n_bounds(n, &width).map_err(failure)?;
    let ok = bounds.holds();
    let body = match config.format {
        Format::Json => {
            #[derive(Serialize)]
            struct ZeroOut<'a> {
                bracket: &'a crate::roots::IsolatingInterval,
                bounds: &'a crate::roots::R2nBounds,
                holds: bool,
            }
            to_json(&ZeroOut {
                bracket: &bracket,
                bounds: &bounds,
                holds: ok,
            })
        }
        Format::Csv => {
            let mut t = Table::new(
                "zero",
                &[
                    "n",
                    "lo",
                    "hi",
                    "lo_approx",
                    "hi_approx",
                    "above_sixth",
                    "below_quarter",
                    "above_lehmer",
                ],
            );
            t.push(vec![
                n.to_string(),
                bracket.lo.to_string(),
                bracket.hi.to_string(),
                approx(&bracket.lo),
                approx(&bracket.hi),
                bounds.above_sixth.to_string(),
                bounds.below_quarter.to_string(),
                bounds.above_lehmer.to_string(),
            ]);
            t.to_csv()
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "zero of B_{} in (0, 1/2)", 2 * n);
            let _ = writeln!(s, "  bracket  ({}, {})", bracket.lo, bracket.hi);
            let _ = writeln!(
                s,
                "  approx   {} .. {}",
                approx(&bracket.lo),
                approx(&bracket.hi)
            );
            let _ = writeln!(s, "  1/6 < r: {}", bounds.above_sixth);
            let _ = writeln!(s, "  r < 1/4: {}", bounds.below_quarter);
            let _ = writeln!(s, "  above Lehmer's lower bound: {}", bounds.above_lehmer);
            s
        }
    };
    let mut out = Output::ok(body);
    out.ok = ok;
    if !ok {
        out.diagnostics
            .push(format!("bounds on the zero of B_{} do not all hold", 2 * n));
    }
    Ok(out)
}

fn certify(config: &RunConfig, id: &str) -> Result<Output, CommandError> {
    match id {
        "limits" => certify_limits(config),
        "prop-5.7" => {
            let certs = certify_logconvexity_sequences(config.n_max.max(3)).map_err(failure)?;
            Ok(sequence_output(config.format, &certs))
        }
        "seq-t5" | "seq-t6" => {
            let claim = if id == "seq-t5" {
                SequenceClaim::EvenOverNextOdd
            } else {
                SequenceClaim::EvenOverPreviousOdd
            };
            let suite = config.suite_config();
            let mut points = suite.grid.clone();
            points.extend(
                suite
                    .grid
                    .iter()
                    .rev()
                    .map(|t| Rational::from_integer(1.into()) - t),
            );
            let certs = points
                .iter()
                .map(|t| certify_sequence_in_n(t, claim, config.n_max.max(2)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(failure)?;
            Ok(sequence_output(config.format, &certs))
        }
        other => {
            let claim = TheoremClaim::from_id(other)
                .ok_or_else(|| CommandError::Usage(format!("unknown claim id {other:?}")))?;
            let certs = certify_claim(claim, config.n_max).map_err(failure)?;
            Ok(monotonicity_output(config.format, other, &certs))
        }
    }
}

fn monotonicity_output(format: Format, id: &str, certs: &[MonotonicityCertificate]) -> Output {
    let failed: Vec<&MonotonicityCertificate> = certs.iter().filter(|c| !c.passed()).collect();
    let body = match format {
        Format::Json => to_json(certs),
        Format::Csv => {
            let mut t = Table::new(
                "certificates",
                &[
                    "claim",
                    "label",
                    "lo",
                    "hi",
                    "expected",
                    "conclusion",
                    "interior_roots",
                    "witness",
                    "witness_sign",
                    "passed",
                ],
            );
            for c in certs {
                t.push(vec![
                    c.claim.clone(),
                    c.label.clone(),
                    c.lo.to_string(),
                    c.hi.to_string(),
                    format!("{:?}", c.expected).to_lowercase(),
                    format!("{:?}", c.conclusion).to_lowercase(),
                    c.interior_root_count.to_string(),
                    c.witness_point.to_string(),
                    c.witness_sign.to_string(),
                    c.passed().to_string(),
                ]);
            }
            t.to_csv()
        }
        Format::Text => {
            let mut s = format!(
                "{id}: {} certificates, {} passed\n",
                certs.len(),
                certs.len() - failed.len()
            );
            for c in certs {
                let mark = if c.passed() { "ok  " } else { "FAIL" };
                let _ = writeln!(s, "  {mark} {} ({:?})", c.label, c.conclusion);
            }
            s
        }
    };
    Output {
        body,
        ok: failed.is_empty(),
        diagnostics: failed
            .iter()
            .map(|c| format!("certificate failed: {} {}", c.claim, c.label))
            .collect(),
    }
}

fn sequence_output(format: Format, certs: &[SequenceCertificate]) -> Output {
    let failed: Vec<&SequenceCertificate> = certs.iter().filter(|c| !c.passed()).collect();
    let t_of = |c: &SequenceCertificate| c.t.as_ref().map(|t| t.to_string()).unwrap_or_default();
    let body = match format {
        Format::Json => to_json(certs),
        Format::Csv => {
            let mut t = Table::new(
                "sequences",
                &[
                    "claim",
                    "description",
                    "t",
                    "n",
                    "lhs",
                    "rhs",
                    "lhs_approx",
                    "rhs_approx",
                    "holds",
                ],
            );
            for c in certs {
                for cmp in &c.comparisons {
                    t.push(vec![
                        c.claim_id.clone(),
                        c.description.clone(),
                        t_of(c),
                        cmp.n.to_string(),
                        cmp.lhs.to_string(),
                        cmp.rhs.to_string(),
                        approx(&cmp.lhs),
                        approx(&cmp.rhs),
                        cmp.holds.to_string(),
                    ]);
                }
            }
            t.to_csv()
        }
        Format::Text => {
            let mut s = String::new();
            for c in certs {
                let mark = if c.passed() { "ok  " } else { "FAIL" };
                let at =
                    c.t.as_ref()
                        .map(|t| format!(" at t = {t}"))
                        .unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{mark} {} {}{at}: {:?} over n = {}..{}",
                    c.claim_id, c.description, c.conclusion, c.index_range.0, c.index_range.1
                );
            }
            s
        }
    };
    Output {
        body,
        ok: failed.is_empty(),
        diagnostics: failed
            .iter()
            .map(|c| {
                format!(
                    "sequence check failed: {} {} {}",
                    c.claim_id,
                    c.description,
                    t_of(c)
                )
            })
            .collect(),
    }
}

fn limit_reports(config: &RunConfig) -> Result<Vec<LimitReport>, CommandError> {
    let tol = pow2_inv(10);
    let mut out = Vec::new();
    for claim in LimitClaim::ALL {
        for t in limit_points() {
            out.push(
                check_limit(claim, &t, 1, config.n_max.max(4), &tol, config.bits)
                    .map_err(failure)?,
            );
        }
    }
    Ok(out)
}

fn certify_limits(config: &RunConfig) -> Result<Output, CommandError> {
    let reports = limit_reports(config)?;
    let ok = reports.iter().all(|r| r.decreasing_from.is_some());
    let body = match config.format {
        Format::Json => to_json(&reports),
        Format::Csv => limits_table(&reports).to_csv(),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let last = r.points.last().expect("at least one index");
                let _ = writeln!(
                    s,
                    "{} at t = {}: gap at n = {} is {}, decreasing from n = {}",
                    r.claim.id(),
                    r.t,
                    last.n,
                    approx_interval(&last.gap),
                    r.decreasing_from.map_or("-".to_string(), |n| n.to_string())
                );
            }
            s
        }
    };
    let mut out = Output::ok(body);
    out.ok = ok;
    Ok(out)
}

fn limits_table(reports: &[LimitReport]) -> Table {
    let mut t = Table::new(
        "limits",
        &[
            "claim",
            "t",
            "n",
            "gap_lo",
            "gap_hi",
            "gap_approx",
            "precision_bits",
        ],
    );
    for r in reports {
        for p in &r.points {
            t.push(vec![
                r.claim.id().to_string(),
                r.t.to_string(),
                p.n.to_string(),
                p.gap.lo().to_string(),
                p.gap.hi().to_string(),
                approx_interval(&p.gap),
                r.precision_bits.to_string(),
            ]);
        }
    }
    t
}

fn verify(config: &RunConfig) -> Result<Output, CommandError> {
    let suite = config.suite_config();
    let reports = match &config.claims {
        Some(ids) => ids
            .iter()
            .map(|id| verify_claim_id(id, &suite))
            .collect::<Result<Vec<_>, _>>(),
        None => verify_all(&suite),
    }
    .map_err(failure)?;
    let ok = reports.iter().all(VerificationReport::passed);
    let body = match config.format {
        Format::Json => to_json(&reports),
        Format::Csv => records_table(&reports).to_csv(),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{:<26} {:<7} {:>6} checked  {:>4} failed  {:>4} escalations  {:>6} enclosures",
                    r.claim_id,
                    if r.passed() { "passed" } else { "FAILED" },
                    r.instances_checked,
                    r.failures.len(),
                    r.precision_escalations,
                    r.enclosure_evaluations
                );
                for f in r.failures.iter().take(10) {
                    let _ = writeln!(s, "    {}", describe_record(f));
                }
                for note in &r.wall_notes {
                    let _ = writeln!(s, "    note: {note}");
                }
            }
            s
        }
    };
    let diagnostics = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} failed at {} instance(s)", r.claim_id, r.failures.len()))
        .collect();
    Ok(Output {
        body,
        ok,
        diagnostics,
    })
}

fn describe_record(r: &CheckRecord) -> String {
    let t = r
        .instance
        .t
        .as_ref()
        .map(|t| format!(" t={t}"))
        .unwrap_or_default();
    let side = |v: &Option<Value>| match v {
        Some(Value::Exact(x)) => approx(x),
        Some(Value::Enclosure(iv)) => approx_interval(iv),
        None => "-".into(),
    };
    format!(
        "{:?} n={}{t} {}: {} vs {} {}",
        r.status,
        r.instance.n,
        r.label,
        side(&r.lhs),
        side(&r.rhs),
        r.notes
    )
}

fn value_cells(v: &Option<Value>) -> [String; 3] {
    match v {
        Some(Value::Exact(x)) => [x.to_string(), x.to_string(), approx(x)],
        Some(Value::Enclosure(iv)) => [
            iv.lo().to_string(),
            iv.hi().to_string(),
            approx_interval(iv),
        ],
        None => Default::default(),
    }
}

fn records_table(reports: &[VerificationReport]) -> Table {
    let mut t = Table::new(
        "records",
        &[
            "claim",
            "n",
            "m",
            "t",
            "label",
            "relation",
            "status",
            "lhs_lo",
            "lhs_hi",
            "lhs_approx",
            "rhs_lo",
            "rhs_hi",
            "rhs_approx",
            "precision_bits",
            "notes",
        ],
    );
    for rep in reports {
        for r in &rep.records {
            let [llo, lhi, lap] = value_cells(&r.lhs);
            let [rlo, rhi, rap] = value_cells(&r.rhs);
            let relation = match r.relation {
                Some(rel) => serde_json::to_value(rel)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                None => "certificate".into(),
            };
            t.push(vec![
                r.claim_id.clone(),
                r.instance.n.to_string(),
                r.instance.m.map(|m| m.to_string()).unwrap_or_default(),
                r.instance
                    .t
                    .as_ref()
                    .map(|t| t.to_string())
                    .unwrap_or_default(),
                r.label.clone(),
                relation,
                format!("{:?}", r.status).to_lowercase(),
                llo,
                lhi,
                lap,
                rlo,
                rhi,
                rap,
                r.precision_bits.to_string(),
                r.notes.clone(),
            ]);
        }
    }
    t
}

/// Midpoint, radius and approximation of a bound at `bits`.
fn bound_cells(b: &Bound, bits: u32) -> Result<[String; 3], CommandError> {
    let iv: RationalInterval = b.enclose(bits).map_err(failure)?;
    Ok([
        iv.midpoint().to_string(),
        iv.radius().to_string(),
        approx_interval(&iv),
    ])
}

pub(crate) fn table(config: &RunConfig, kind: TableKind) -> Result<Table, CommandError> {
    match kind {
        TableKind::RatioBounds => {
            let names = [
                "lower9", "upper9", "lower10", "upper10", "upper11", "lower12", "upper12",
                "lower13", "upper13",
            ];
            let mut columns = vec!["n".to_string(), "ratio".into(), "ratio_approx".into()];
            for name in names {
                columns.push(name.to_string());
                columns.push(format!("{name}_radius"));
                columns.push(format!("{name}_approx"));
            }
            let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
            let mut t = Table::new("ratio-bounds", &cols);
            for n in 1..=config.n_max {
                let r = ratio_value(n);
                let b = ratio_bounds(n);
                let mut row = vec![n.to_string(), r.to_string(), approx(&r)];
                for bound in [
                    &b.lower9, &b.upper9, &b.lower10, &b.upper10, &b.upper11, &b.lower12,
                    &b.upper12, &b.lower13, &b.upper13,
                ] {
                    row.extend(bound_cells(bound, config.bits)?);
                }
                t.push(row);
            }
            Ok(t)
        }
        TableKind::R2n => {
            let mut t = Table::new(
                "r2n",
                &[
                    "n",
                    "lo",
                    "hi",
                    "lo_approx",
                    "hi_approx",
                    "inside_sixth_quarter",
                ],
            );
            let width = pow2_inv(config.bits);
            for n in 1..=config.n_max {
                let b = check_r2n_bounds(n, &width).map_err(failure)?;
                let iv = isolate_r2n(n, &width).map_err(failure)?;
                t.push(vec![
                    n.to_string(),
                    iv.lo.to_string(),
                    iv.hi.to_string(),
                    approx(&iv.lo),
                    approx(&iv.hi),
                    (b.above_sixth && b.below_quarter).to_string(),
                ]);
            }
            Ok(t)
        }
        TableKind::Zeta => {
            let mut t = Table::new("zeta", &["n", "c_n", "c_n_approx"]);
            for n in 1..=config.n_max {
                let c = zeta_even_coefficient(n).map_err(failure)?;
                t.push(vec![n.to_string(), c.to_string(), approx(&c)]);
            }
            Ok(t)
        }
        TableKind::Limits => Ok(limits_table(&limit_reports(config)?)),
    }
}
