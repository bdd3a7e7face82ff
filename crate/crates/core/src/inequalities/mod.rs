//! Registry of bounds on Bernoulli polynomials, Bernoulli numbers and their
//! ratios, with a verifier that checks every instance over index ranges and
//! rational grids.
//!
//! Purely rational instances are compared exactly. Instances involving pi,
//! trigonometric values or square roots are compared through enclosures,
//! doubling the precision until the two sides separate; an instance that is
//! still undecided at the precision cap counts as a failure.

mod registry;
mod supnorm;

pub use registry::{ratio_bounds, ratio_value, registry, Bound, RatioBounds};
pub use supnorm::{supnorm_bound, SupnormKind};

use crate::certify::{
    certify_claim, certify_logconvexity_sequences, certify_sequence_in_n, CertifyError,
    MonotonicityCertificate, SequenceCertificate, SequenceClaim, TheoremClaim,
};
use crate::enclosure::{EnclosureError, RationalInterval, MAX_BITS};
use crate::exact::{half, rat, Rational};
use crate::roots::RootsError;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InequalityError {
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("grid point {0} is not in (0, 1/2)")]
    GridPoint(Rational),
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Enclosure(#[from] EnclosureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    PointwiseDouble,
    PointwiseSingle,
    ScalarDouble,
    ScalarSingle,
    Supnorm,
    Ordering,
}

impl ClaimKind {
    pub fn is_pointwise(self) -> bool {
        matches!(
            self,
            ClaimKind::PointwiseDouble | ClaimKind::PointwiseSingle | ClaimKind::Supnorm
        )
    }
}

/// One registered claim and the data the verifier needs to check it.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimRegistryEntry {
    pub id: &'static str,
    pub kind: ClaimKind,
    pub n_lo: u32,
    /// Fixed upper index; `None` means the configured maximum.
    pub n_hi: Option<u32>,
    pub t_domain: &'static str,
    pub transcendental: bool,
    pub reversal_cases: &'static str,
    pub statement: &'static str,
}

impl ClaimRegistryEntry {
    /// Inclusive index range for this entry under `config`.
    pub fn n_range(&self, config: &SuiteConfig) -> (u32, u32) {
        let cap = if self.kind.is_pointwise() {
            config.pointwise_n_max
        } else {
            config.scalar_n_max
        };
        (self.n_lo, self.n_hi.map_or(cap, |h| h.min(cap)))
    }
}

pub fn lookup(id: &str) -> Option<&'static ClaimRegistryEntry> {
    registry().iter().find(|e| e.id.eq_ignore_ascii_case(id))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub pointwise_n_max: u32,
    pub scalar_n_max: u32,
    /// Sample points in `(0, 1/2)`; entries valid on `(1/2, 1)` also use
    /// their mirror images `1 - t`.
    #[serde(with = "crate::exact::serde_str::vec")]
    pub grid: Vec<Rational>,
    pub bits: u32,
    pub include_certificates: bool,
}

pub const DEFAULT_POINTWISE_N_MAX: u32 = 10;
pub const DEFAULT_SCALAR_N_MAX: u32 = 50;
pub const DEFAULT_GRID_DENSITY: u32 = 64;

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            pointwise_n_max: DEFAULT_POINTWISE_N_MAX,
            scalar_n_max: DEFAULT_SCALAR_N_MAX,
            grid: default_grid(DEFAULT_GRID_DENSITY),
            bits: crate::enclosure::DEFAULT_BITS,
            include_certificates: true,
        }
    }
}

/// `k / (2 * density)` for `k = 1..density`, all inside `(0, 1/2)`.
pub fn default_grid(density: u32) -> Vec<Rational> {
    (1..density)
        .map(|k| rat(k as i64, 2 * density as i64))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

/// A side of a checked inequality as recorded in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Exact(#[serde(with = "crate::exact::serde_str")] Rational),
    Enclosure(RationalInterval),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        default,
        with = "crate::exact::serde_str::option"
    )]
    pub t: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub claim_id: String,
    pub instance: Instance,
    pub label: String,
    pub relation: Option<Relation>,
    pub status: Status,
    pub lhs: Option<Value>,
    pub rhs: Option<Value>,
    pub precision_bits: u32,
    pub notes: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Passed,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub status: ReportStatus,
    pub instances_checked: usize,
    pub failures: Vec<CheckRecord>,
    pub precision_escalations: usize,
    pub enclosure_evaluations: usize,
    pub wall_notes: Vec<String>,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == ReportStatus::Passed
    }

    fn assemble(claim_id: &str, outcomes: Vec<Outcome>, wall_notes: Vec<String>) -> Self {
        let mut records = Vec::with_capacity(outcomes.len());
        let (mut escalations, mut evaluations) = (0, 0);
        for o in outcomes {
            escalations += o.escalations;
            evaluations += o.evaluations;
            records.push(o.record);
        }
        let failures: Vec<CheckRecord> = records
            .iter()
            .filter(|r| r.status != Status::Pass)
            .cloned()
            .collect();
        VerificationReport {
            claim_id: claim_id.to_string(),
            status: if failures.is_empty() {
                ReportStatus::Passed
            } else {
                ReportStatus::Failed
            },
            instances_checked: records.len(),
            failures,
            precision_escalations: escalations,
            enclosure_evaluations: evaluations,
            wall_notes,
            records,
        }
    }
}

type EnclosureFn = Arc<dyn Fn(u32) -> Result<RationalInterval, InequalityError> + Send + Sync>;

/// A side of an inequality: an exact rational, or a quantity that can be
/// enclosed at any requested precision.
#[derive(Clone)]
pub(crate) enum Quantity {
    Exact(Rational),
    Enclosed(EnclosureFn),
}

impl Quantity {
    pub(crate) fn enclosed<F>(f: F) -> Self
    where
        F: Fn(u32) -> Result<RationalInterval, InequalityError> + Send + Sync + 'static,
    {
        Quantity::Enclosed(Arc::new(f))
    }
}

impl From<Rational> for Quantity {
    fn from(r: Rational) -> Self {
        Quantity::Exact(r)
    }
}

/// `lhs rel rhs` at one instance.
pub(crate) struct Check {
    pub(crate) instance: Instance,
    pub(crate) label: String,
    pub(crate) lhs: Quantity,
    pub(crate) rel: Relation,
    pub(crate) rhs: Quantity,
    pub(crate) note: Option<&'static str>,
}

pub(crate) struct Outcome {
    record: CheckRecord,
    escalations: usize,
    evaluations: usize,
}

impl Outcome {
    fn polynomial(claim_id: &str, n: u32, label: String, ok: bool, notes: String) -> Self {
        Outcome {
            record: CheckRecord {
                claim_id: claim_id.to_string(),
                instance: Instance {
                    n,
                    m: None,
                    t: None,
                },
                label,
                relation: None,
                status: if ok { Status::Pass } else { Status::Fail },
                lhs: None,
                rhs: None,
                precision_bits: 0,
                notes,
            },
            escalations: 0,
            evaluations: 0,
        }
    }

    fn certificate(claim_id: &str, cert: &MonotonicityCertificate, n: u32, m: Option<u32>) -> Self {
        let status = if cert.passed() {
            Status::Pass
        } else {
            Status::Fail
        };
        let notes = format!(
            "wronskian certificate on ({}, {}): {} interior root(s), witness sign {} at {}, expected {:?}, got {:?}",
            cert.lo,
            cert.hi,
            cert.interior_root_count,
            cert.witness_sign,
            cert.witness_point,
            cert.expected,
            cert.conclusion
        );
        Outcome {
            record: CheckRecord {
                claim_id: claim_id.to_string(),
                instance: Instance { n, m, t: None },
                label: cert.label.clone(),
                relation: None,
                status,
                lhs: None,
                rhs: None,
                precision_bits: 0,
                notes,
            },
            escalations: 0,
            evaluations: 0,
        }
    }
}

fn decide_exact(a: &Rational, rel: Relation, b: &Rational) -> bool {
    match rel {
        Relation::Lt => a < b,
        Relation::Le => a <= b,
        Relation::Eq => a == b,
    }
}

fn decide_intervals(a: &RationalInterval, rel: Relation, b: &RationalInterval) -> Option<bool> {
    match rel {
        Relation::Lt if a.hi() < b.lo() => Some(true),
        Relation::Lt if a.lo() >= b.hi() => Some(false),
        Relation::Le if a.hi() <= b.lo() => Some(true),
        Relation::Le if a.lo() > b.hi() => Some(false),
        Relation::Eq if a.is_point() && b.is_point() => Some(a == b),
        Relation::Eq if a.intersect(b).is_none() => Some(false),
        _ => None,
    }
}

fn evaluate(claim_id: &str, check: Check, start_bits: u32) -> Outcome {
    let mut record = CheckRecord {
        claim_id: claim_id.to_string(),
        instance: check.instance,
        label: check.label,
        relation: Some(check.rel),
        status: Status::Undecided,
        lhs: None,
        rhs: None,
        precision_bits: 0,
        notes: check.note.unwrap_or_default().to_string(),
    };
    if let (Quantity::Exact(a), Quantity::Exact(b)) = (&check.lhs, &check.rhs) {
        record.status = if decide_exact(a, check.rel, b) {
            Status::Pass
        } else {
            Status::Fail
        };
        record.lhs = Some(Value::Exact(a.clone()));
        record.rhs = Some(Value::Exact(b.clone()));
        return Outcome {
            record,
            escalations: 0,
            evaluations: 0,
        };
    }
    let mut bits = start_bits.max(8);
    let (mut escalations, mut evaluations) = (0, 0);
    let mut side = |q: &Quantity,
                    bits: u32|
     -> Result<(RationalInterval, Value), InequalityError> {
        match q {
            Quantity::Exact(r) => Ok((RationalInterval::point(r.clone()), Value::Exact(r.clone()))),
            Quantity::Enclosed(f) => {
                evaluations += 1;
                let iv = f(bits)?;
                Ok((iv.clone(), Value::Enclosure(iv)))
            }
        }
    };
    loop {
        let sides = side(&check.lhs, bits).and_then(|l| Ok((l, side(&check.rhs, bits)?)));
        let ((a, va), (b, vb)) = match sides {
            Ok(s) => s,
            Err(e) => {
                record.status = Status::Fail;
                record.notes = format!("enclosure error at {bits} bits: {e}");
                record.precision_bits = bits;
                break;
            }
        };
        record.lhs = Some(va);
        record.rhs = Some(vb);
        record.precision_bits = bits;
        match decide_intervals(&a, check.rel, &b) {
            Some(true) => {
                record.status = Status::Pass;
                break;
            }
            Some(false) => {
                record.status = Status::Fail;
                break;
            }
            None if bits >= MAX_BITS => {
                record.status = Status::Undecided;
                record.notes = format!("enclosures still overlap at {bits} bits");
                break;
            }
            None => {
                bits = (bits * 2).min(MAX_BITS);
                escalations += 1;
            }
        }
    }
    Outcome {
        record,
        escalations,
        evaluations,
    }
}

/// Checks one registry entry over its index range and the configured grid.
pub fn verify_claim(
    entry: &ClaimRegistryEntry,
    config: &SuiteConfig,
) -> Result<VerificationReport, InequalityError> {
    for t in &config.grid {
        if !(t > &Rational::from_integer(0.into()) && t < &half()) {
            return Err(InequalityError::GridPoint(t.clone()));
        }
    }
    let plan = registry::plan(entry, config)?;
    let claim_id = entry.id;
    let bits = config.bits;
    let mut outcomes = crate::par::map(plan.checks, |c| evaluate(claim_id, c, bits));
    outcomes.extend(plan.extra);
    Ok(VerificationReport::assemble(entry.id, outcomes, plan.notes))
}

/// Looks up `id` and verifies it.
pub fn verify_claim_id(
    id: &str,
    config: &SuiteConfig,
) -> Result<VerificationReport, InequalityError> {
    let entry = lookup(id).ok_or_else(|| InequalityError::UnknownClaim(id.to_string()))?;
    verify_claim(entry, config)
}

/// Every registry entry in order, followed, when certificates are enabled,
/// by one report for the ratio monotonicity certificates and one for the
/// sequence checks in `n`.
pub fn verify_all(config: &SuiteConfig) -> Result<Vec<VerificationReport>, InequalityError> {
    let mut reports: Vec<VerificationReport> = registry()
        .iter()
        .map(|e| verify_claim(e, config))
        .collect::<Result<_, _>>()?;
    if config.include_certificates {
        reports.push(monotonicity_report(config.pointwise_n_max)?);
        reports.push(sequence_report(config)?);
    }
    Ok(reports)
}

pub const MONOTONICITY_REPORT_ID: &str = "monotonicity-certificates";
pub const SEQUENCE_REPORT_ID: &str = "sequence-certificates";

/// Wronskian certificates for every ratio family up to `n_max`.
pub fn monotonicity_report(n_max: u32) -> Result<VerificationReport, InequalityError> {
    let mut outcomes = Vec::new();
    for claim in TheoremClaim::ALL {
        for cert in certify_claim(claim, n_max)? {
            let (n, m) = label_indices(&cert.label);
            outcomes.push(Outcome::certificate(claim.id(), &cert, n, m));
        }
    }
    Ok(VerificationReport::assemble(
        MONOTONICITY_REPORT_ID,
        outcomes,
        Vec::new(),
    ))
}

/// Exact monotonicity in `n` of the two ratio sequences at a few fixed `t`,
/// and the log-convexity checks up to the scalar index cap.
pub fn sequence_report(config: &SuiteConfig) -> Result<VerificationReport, InequalityError> {
    let mut outcomes = Vec::new();
    let mut push = |cert: SequenceCertificate| {
        for c in &cert.comparisons {
            outcomes.push(Outcome {
                record: CheckRecord {
                    claim_id: cert.claim_id.clone(),
                    instance: Instance {
                        n: c.n,
                        m: None,
                        t: cert.t.clone(),
                    },
                    label: format!("{} is {:?}", cert.description, cert.expected).to_lowercase(),
                    relation: None,
                    status: if c.holds { Status::Pass } else { Status::Fail },
                    lhs: Some(Value::Exact(c.lhs.clone())),
                    rhs: Some(Value::Exact(c.rhs.clone())),
                    precision_bits: 0,
                    notes: String::new(),
                },
                escalations: 0,
                evaluations: 0,
            });
        }
    };
    let n_max = config.pointwise_n_max.max(2);
    for t in [rat(1, 8), rat(1, 3), rat(5, 8), rat(7, 8)] {
        for claim in [
            SequenceClaim::EvenOverNextOdd,
            SequenceClaim::EvenOverPreviousOdd,
        ] {
            push(certify_sequence_in_n(&t, claim, n_max)?);
        }
    }
    for cert in certify_logconvexity_sequences(config.scalar_n_max.max(3))? {
        push(cert);
    }
    Ok(VerificationReport::assemble(
        SEQUENCE_REPORT_ID,
        outcomes,
        Vec::new(),
    ))
}

/// `n` and optional `m` from labels such as `m=1 n=3 on (0, 1/2)`.
fn label_indices(label: &str) -> (u32, Option<u32>) {
    let mut n = 0;
    let mut m = None;
    for word in label.split_whitespace() {
        if let Some(v) = word.strip_prefix("n=") {
            n = v.parse().unwrap_or(0);
        } else if let Some(v) = word.strip_prefix("m=") {
            m = v.parse().ok();
        }
    }
    (n, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SuiteConfig {
        SuiteConfig {
            pointwise_n_max: 4,
            scalar_n_max: 12,
            grid: default_grid(8),
            bits: 64,
            include_certificates: true,
        }
    }

    #[test]
    fn default_grid_shape() {
        let g = default_grid(4);
        assert_eq!(g, vec![rat(1, 8), rat(1, 4), rat(3, 8)]);
        assert!(default_grid(1).is_empty());
    }

    #[test]
    fn unknown_and_bad_grid_rejected() {
        assert!(matches!(
            verify_claim_id("R99", &small_config()),
            Err(InequalityError::UnknownClaim(_))
        ));
        let mut cfg = small_config();
        cfg.grid.push(rat(3, 4));
        assert!(matches!(
            verify_claim_id("R1", &cfg),
            Err(InequalityError::GridPoint(_))
        ));
    }

    #[test]
    fn equality_edge_cases_pass() {
        let cfg = small_config();
        let r9 = verify_claim_id("R9", &cfg).unwrap();
        assert!(r9.passed());
        let first = &r9.records[0];
        assert_eq!(first.instance.n, 1);
        assert_eq!(first.lhs, Some(Value::Exact(rat(1, 5))));
        assert_eq!(first.rhs, Some(Value::Exact(rat(1, 5))));
        assert!(verify_claim_id("R6", &cfg).unwrap().passed());
        assert!(verify_claim_id("R14", &cfg).unwrap().passed());
    }

    #[test]
    fn rational_entries_use_no_enclosures() {
        let cfg = small_config();
        for e in registry().iter().filter(|e| !e.transcendental) {
            let r = verify_claim(e, &cfg).unwrap();
            assert_eq!(r.enclosure_evaluations, 0, "{}", e.id);
            assert!(r.passed(), "{}", e.id);
        }
    }

    #[test]
    fn small_suite_passes_except_known_index_zero_case() {
        let cfg = small_config();
        for r in verify_all(&cfg).unwrap() {
            if r.claim_id == "R3" {
                assert!(
                    r.failures.iter().all(|f| f.instance.n == 0),
                    "{:?}",
                    r.failures
                );
            } else {
                assert!(r.passed(), "{} {:?}", r.claim_id, r.failures.first());
            }
        }
    }

    #[test]
    fn empty_grid_still_checks_scalars() {
        let mut cfg = small_config();
        cfg.grid.clear();
        let r = verify_claim_id("R4", &cfg).unwrap();
        assert_eq!(r.instances_checked, 0);
        let r = verify_claim_id("R13", &cfg).unwrap();
        assert!(r.instances_checked > 0 && r.passed());
    }

    #[test]
    fn report_round_trips() {
        let r = verify_claim_id("R12", &small_config()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
