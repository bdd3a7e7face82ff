use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::{OnceLock, RwLock};

// Pascal rows 0..len, append-only.
static PASCAL: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();

fn table() -> &'static RwLock<Vec<Vec<BigInt>>> {
    PASCAL.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    {
        let rows = table().read().expect("binomial table poisoned");
        if let Some(row) = rows.get(n) {
            return row[k].clone();
        }
    }
    let mut rows = table().write().expect("binomial table poisoned");
    while rows.len() <= n {
        let prev = rows.last().expect("row 0 is seeded");
        let mut row = Vec::with_capacity(prev.len() + 1);
        row.push(BigInt::one());
        for w in prev.windows(2) {
            row.push(&w[0] + &w[1]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows[n][k].clone()
}
