//! Eulerian numbers `A(n, m)`: the number of permutations of `{1..n}` with
//! exactly `m` ascents.
//!
//! Rows are produced by the recurrence
//! `A(n, m) = (m+1) A(n-1, m) + (n-m) A(n-1, m-1)`
//! and can be cross-checked entry by entry against the explicit alternating
//! sum `A(n, m) = sum_{k=0}^{m+1} (-1)^k C(n+1, k) (m+1-k)^n`.

use std::sync::{Arc, LazyLock, RwLock};

use num_traits::{One, Pow, Zero};

use crate::comb::binomial;
use crate::Int;

/// One fully materialized row of the Eulerian triangle.
///
/// Row `n >= 1` holds `A(n, 0) ..= A(n, n-1)`; row 0 is the single entry
/// `A(0, 0) = 1` (the empty permutation has no ascents).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianRow {
    n: usize,
    values: Vec<Int>,
}

impl EulerianRow {
    fn zeroth() -> Self {
        EulerianRow {
            n: 0,
            values: vec![Int::one()],
        }
    }

    fn next(&self) -> Self {
        let n = self.n + 1;
        let values = (0..n.max(1))
            .map(|m| {
                self.get(m as i64) * (m as u64 + 1) + self.get(m as i64 - 1) * (n - m) as u64
            })
            .collect();
        EulerianRow { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries `A(n, 0) ..= A(n, max(n,1)-1)` in order.
    pub fn values(&self) -> &[Int] {
        &self.values
    }

    /// `A(n, m)`, which is zero for `m` outside the row's support.
    pub fn get(&self, m: i64) -> Int {
        if m < 0 {
            return Int::zero();
        }
        self.values
            .get(m as usize)
            .cloned()
            .unwrap_or_else(Int::zero)
    }

    /// Row sum; equals `n!` since every permutation is counted once.
    pub fn sum(&self) -> Int {
        self.values.iter().sum()
    }
}

static ROWS: LazyLock<RwLock<Vec<Arc<EulerianRow>>>> =
    LazyLock::new(|| RwLock::new(vec![Arc::new(EulerianRow::zeroth())]));

/// Row `n` of the Eulerian triangle, memoized for the life of the process.
///
/// Rows are appended under a write lock; concurrent lookups of existing rows
/// share a read lock and never block each other.
pub fn eulerian_row(n: usize) -> Arc<EulerianRow> {
    {
        let rows = ROWS.read().unwrap();
        if let Some(row) = rows.get(n) {
            return Arc::clone(row);
        }
    }
    let mut rows = ROWS.write().unwrap();
    while rows.len() <= n {
        let next = rows.last().unwrap().next();
        rows.push(Arc::new(next));
    }
    Arc::clone(&rows[n])
}

/// `A(n, m)` via the memoized row table; zero outside the row's support.
pub fn eulerian_number(n: usize, m: i64) -> Int {
    eulerian_row(n).get(m)
}

/// `A(n, m)` via the explicit alternating sum, independent of the
/// recurrence; zero outside the row's support.
pub fn eulerian_explicit(n: usize, m: i64) -> Int {
    if m < 0 || m as usize >= n.max(1) {
        return Int::zero();
    }
    if n == 0 {
        // The k = 0 term degenerates to 0^0 here; the empty permutation
        // still counts once.
        return Int::one();
    }
    let m = m as u64;
    let mut acc = Int::zero();
    for k in 0..=m {
        let term = binomial(n as u64 + 1, k) * Int::from(m + 1 - k).pow(n as u32);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    // The k = m+1 term vanishes: (m+1-k)^n = 0^n = 0 for n >= 1.
    acc
}

/// Iterator yielding row 0, row 1, ... with only one row retained at a
/// time. Suitable for long sweeps (rows in the thousands) where the
/// memoized table in [`eulerian_row`] would hold gigabytes.
pub struct RowIter {
    next: Option<EulerianRow>,
}

impl RowIter {
    pub fn new() -> Self {
        RowIter {
            next: Some(EulerianRow::zeroth()),
        }
    }
}

impl Default for RowIter {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for RowIter {
    type Item = EulerianRow;

    fn next(&mut self) -> Option<EulerianRow> {
        let current = self.next.take()?;
        self.next = Some(current.next());
        Some(current)
    }
}
