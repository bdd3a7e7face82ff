//! Browser bindings for a few `bern-core` operations. Every export returns a
//! JSON string so the page needs nothing beyond `JSON.parse`.

use bern_core::bernoulli::bernoulli_polynomial;
use bern_core::certify::{certify_claim, TheoremClaim};
use bern_core::exact::{rat, to_decimal_string, Rational};
use bern_core::inequalities::ratio_bounds;
use bern_core::roots::check_r2n_bounds;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const BITS: u32 = 64;

fn approx(r: &Rational) -> f64 {
    to_decimal_string(r, 17).parse().unwrap_or(f64::NAN)
}

fn error(msg: impl ToString) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Samples of `B_n(t)` at `samples + 1` equally spaced points of `[0, 1]`,
/// the exact coefficients and, for even `n >= 2`, a certified bracket for the
/// zero in `(0, 1/2)`.
#[wasm_bindgen]
pub fn curve(n: u32, samples: u32) -> String {
    if n > 200 || !(2..=2000).contains(&samples) {
        return error("need n <= 200 and 2 <= samples <= 2000");
    }
    let p = bernoulli_polynomial(n);
    let points: Vec<[f64; 2]> = (0..=samples)
        .map(|k| {
            let t = rat(k as i64, samples as i64);
            [approx(&t), approx(&p.eval(&t))]
        })
        .collect();
    let zero = if n >= 2 && n.is_multiple_of(2) {
        match check_r2n_bounds(n / 2, &rat(1, 1 << 40)) {
            Ok(b) => json!({
                "lo": b.bracket.lo.to_string(),
                "hi": b.bracket.hi.to_string(),
                "approx": approx(&b.bracket.lo),
                "bounds_hold": b.holds(),
            }),
            Err(e) => json!({ "error": e.to_string() }),
        }
    } else {
        Value::Null
    };
    json!({ "n": n, "polynomial": p.to_string(), "points": points, "zero": zero }).to_string()
}

/// The ratio `|B_{2n+2}/B_{2n}|` next to its lower and upper bounds for
/// `n = 1..=n_max`.
#[wasm_bindgen]
pub fn ratio_table(n_max: u32) -> String {
    if !(1..=60).contains(&n_max) {
        return error("need 1 <= n_max <= 60");
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let b = ratio_bounds(n);
        let named = [
            ("lower9", &b.lower9),
            ("upper9", &b.upper9),
            ("lower10", &b.lower10),
            ("upper10", &b.upper10),
            ("upper11", &b.upper11),
            ("lower12", &b.lower12),
            ("upper12", &b.upper12),
            ("lower13", &b.lower13),
            ("upper13", &b.upper13),
        ];
        let mut row = serde_json::Map::new();
        row.insert("n".into(), json!(n));
        row.insert(
            "ratio".into(),
            json!(approx(&bern_core::inequalities::ratio_value(n))),
        );
        for (name, bound) in named {
            let v = bound
                .enclose(BITS)
                .map(|iv| approx(&iv.midpoint()))
                .unwrap_or(f64::NAN);
            row.insert(name.into(), json!(v));
        }
        rows.push(Value::Object(row));
    }
    Value::Array(rows).to_string()
}

/// Wronskian certificates for one theorem family up to `n_max`.
#[wasm_bindgen]
pub fn certify(claim: &str, n_max: u32) -> String {
    let Some(family) = TheoremClaim::from_id(claim) else {
        let ids: Vec<&str> = TheoremClaim::ALL.iter().map(|c| c.id()).collect();
        return error(format!("unknown family; valid ids: {}", ids.join(", ")));
    };
    if !(1..=8).contains(&n_max) {
        return error("need 1 <= n_max <= 8");
    }
    match certify_claim(family, n_max) {
        Ok(certs) => {
            let rows: Vec<Value> = certs
                .iter()
                .map(|c| {
                    json!({
                        "label": c.label,
                        "interval": format!("({}, {})", c.lo, c.hi),
                        "expected": c.expected,
                        "conclusion": c.conclusion,
                        "wronskian_degree": c.wronskian.degree(),
                        "interior_roots": c.interior_root_count,
                        "passed": c.passed(),
                    })
                })
                .collect();
            Value::Array(rows).to_string()
        }
        Err(e) => error(e),
    }
}
