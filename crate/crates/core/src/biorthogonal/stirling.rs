use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest `n` for which every `|s(n, k)|` fits in a `u128` (row sum `34! < 2^128`).
pub const STIRLING_CAP: usize = 34;

/// Unsigned Stirling numbers of the first kind `|s(n, k)|`, `0 <= k <= n <= STIRLING_CAP`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<u128>>,
}

impl StirlingTable {
    /// Builds rows `0..=cap` from `|s(n,k)| = |s(n-1,k-1)| + (n-1) |s(n-1,k)|`.
    pub fn new(cap: usize) -> Result<Self> {
        let mut rows: Vec<Vec<u128>> = vec![vec![1]];
        for n in 1..=cap {
            let prev = &rows[n - 1];
            let mut row = vec![0u128; n + 1];
            for (k, slot) in row.iter_mut().enumerate().skip(1) {
                let left = prev[k - 1];
                let right = prev.get(k).copied().unwrap_or(0);
                *slot = (n as u128 - 1)
                    .checked_mul(right)
                    .and_then(|r| r.checked_add(left))
                    .ok_or_else(|| Error::Range(format!("|s({n},{k})| overflows 128 bits")))?;
            }
            rows.push(row);
        }
        Ok(Self { rows })
    }

    pub fn cap(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Result<u128> {
        let row = self
            .rows
            .get(n)
            .ok_or_else(|| Error::Range(format!("Stirling row {n} beyond cap {}", self.cap())))?;
        Ok(row.get(k).copied().unwrap_or(0))
    }
}

fn table() -> &'static StirlingTable {
    static TABLE: OnceLock<StirlingTable> = OnceLock::new();
    TABLE.get_or_init(|| StirlingTable::new(STIRLING_CAP).expect("cap chosen to fit"))
}

/// `|s(n, k)|`, the number of permutations of `n` elements with `k` cycles.
pub fn stirling_unsigned(n: usize, k: usize) -> Result<u128> {
    table().get(n, k)
}
