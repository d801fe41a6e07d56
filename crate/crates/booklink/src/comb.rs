//! Exact factorials and binomial coefficients.

use crate::Int;
use num_traits::{One, Zero};

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    // Each partial product C(n-k+1..=n-k+j, j) is integral, so the division
    // below is exact at every step.
    for j in 1..=k {
        acc *= n - k + j;
        acc /= j;
    }
    acc
}
