//! Exact linking-number distributions, moments, and the two-component link
//! census of the six-vertex complete graph.
//!
//! For one disjoint monotonic pair whose components each contribute `i`
//! interior chords, `P(l) = A(2i-1, i+l-1) / (2i-1)!`. Over all disjoint
//! monotonic n-cycle pairs of the 2n-vertex complete graph the pair counts
//! weight these distributions; the total number of pairs is `C(2n-1, n-1)`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::{comb, eulerian, Int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistError {
    #[error("interior edge count must be at least 1, got {0}")]
    InteriorCount(usize),
    #[error("interior edge count {i} out of range 1..={max}")]
    InteriorOutOfRange { i: usize, max: usize },
    #[error("cycle length must be at least 3, got {0}")]
    CycleLength(usize),
    #[error("probability of {0} is negative")]
    NegativeProbability(i64),
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(String),
}

/// How a probability mass function was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Closed-form Eulerian-number computation.
    Exact,
    /// Exhaustive enumeration of all height orders.
    Oracle,
    /// Seeded random sampling.
    Empirical,
}

/// What a probability mass function ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmfScope {
    /// One monotonic cycle pair where each component has this many
    /// interior chords.
    InteriorEdges(usize),
    /// All disjoint monotonic n-cycle pairs of the 2n-vertex complete
    /// graph, pairs weighted uniformly.
    Overall(usize),
    /// One explicit cycle pair, keyed by its total number of ranked chords.
    Pair(usize),
}

/// An exact probability mass function over linking numbers. Only strictly
/// positive masses are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingPmf {
    probs: BTreeMap<i64, Rational>,
    scope: PmfScope,
    provenance: Provenance,
}

impl LinkingPmf {
    /// Validating constructor: masses must be nonnegative and sum to one.
    pub fn from_probs(
        probs: BTreeMap<i64, Rational>,
        scope: PmfScope,
        provenance: Provenance,
    ) -> Result<Self, DistError> {
        let mut clean = BTreeMap::new();
        let mut total = Rational::zero();
        for (l, p) in probs {
            if p.is_negative() {
                return Err(DistError::NegativeProbability(l));
            }
            if p.is_zero() {
                continue;
            }
            total += &p;
            clean.insert(l, p);
        }
        if !total.is_one() {
            return Err(DistError::NotNormalized(total.to_string()));
        }
        Ok(LinkingPmf {
            probs: clean,
            scope,
            provenance,
        })
    }

    /// Constructor for masses already proven normalized by integer
    /// bookkeeping; skips the rational re-summation.
    pub(crate) fn from_parts(
        probs: BTreeMap<i64, Rational>,
        scope: PmfScope,
        provenance: Provenance,
    ) -> Self {
        LinkingPmf {
            probs,
            scope,
            provenance,
        }
    }

    /// Mass at `l` (zero off the support).
    pub fn prob(&self, l: i64) -> Rational {
        self.probs.get(&l).cloned().unwrap_or_else(Rational::zero)
    }

    /// Support points with their masses, ascending in `l`.
    pub fn support(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.probs.iter().map(|(&l, p)| (l, p))
    }

    pub fn probs(&self) -> &BTreeMap<i64, Rational> {
        &self.probs
    }

    /// Smallest and largest linking numbers carrying mass.
    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        let min = self.probs.keys().next()?;
        let max = self.probs.keys().next_back()?;
        Some((*min, *max))
    }

    pub fn total(&self) -> Rational {
        self.probs.values().sum()
    }

    /// Exact `E[l^2]`.
    pub fn second_moment(&self) -> Rational {
        let mut acc = Rational::zero();
        for (&l, p) in &self.probs {
            acc += Rational::from_integer(Int::from(l * l)) * p;
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.probs
            .iter()
            .all(|(&l, p)| self.probs.get(&-l) == Some(p))
    }

    pub fn scope(&self) -> PmfScope {
        self.scope
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

/// Linking-number distribution of one disjoint monotonic pair whose
/// components each have `i` interior chords:
/// `P(l) = A(2i-1, i+l-1) / (2i-1)!` on `-(i-1) ..= i-1`.
///
/// `i = 1` is the crossing-free family: the point mass at 0, which the
/// formula also yields (`A(1, 0) / 1! = 1`).
pub fn linking_pmf(i: usize) -> Result<LinkingPmf, DistError> {
    if i == 0 {
        return Err(DistError::InteriorCount(0));
    }
    let row = eulerian::eulerian_row(2 * i - 1);
    let den = comb::factorial(2 * i as u64 - 1);
    let mut probs = BTreeMap::new();
    let bound = i as i64 - 1;
    for l in -bound..=bound {
        let num = row.get(l + i as i64 - 1);
        if !num.is_zero() {
            probs.insert(l, Rational::new(num, den.clone()));
        }
    }
    LinkingPmf::from_probs(probs, PmfScope::InteriorEdges(i), Provenance::Exact)
}

/// Number of unordered disjoint monotonic cycle pairs with component sizes
/// `m` and `n` spanning the `(m+n)`-vertex complete graph, where each
/// component has exactly `i` interior chords.
pub fn pair_count(m: usize, n: usize, i: usize) -> Result<Int, DistError> {
    if m < 3 {
        return Err(DistError::CycleLength(m));
    }
    if n < 3 {
        return Err(DistError::CycleLength(n));
    }
    let max = m.min(n);
    if i < 1 || i > max {
        return Err(DistError::InteriorOutOfRange { i, max });
    }
    let (m, n, i) = (m as u64, n as u64, i as u64);
    Ok(if m == n {
        comb::binomial(n, n - i) * comb::binomial(n - 1, n - i)
    } else {
        comb::binomial(m, m - i) * comb::binomial(n - 1, n - i)
            + comb::binomial(n, n - i) * comb::binomial(m - 1, m - i)
    })
}

/// Total number of unordered disjoint n-cycle pairs spanning the 2n-vertex
/// complete graph: `C(2n-1, n-1)`.
pub fn total_pairs(n: usize) -> Result<Int, DistError> {
    if n < 3 {
        return Err(DistError::CycleLength(n));
    }
    Ok(comb::binomial(2 * n as u64 - 1, n as u64 - 1))
}

/// Linking-number distribution of a uniformly random disjoint monotonic
/// n-cycle pair of the 2n-vertex complete graph with uniformly random chord
/// heights: the interior-count distributions weighted by pair counts.
pub fn overall_pmf(n: usize) -> Result<LinkingPmf, DistError> {
    if n < 3 {
        return Err(DistError::CycleLength(n));
    }
    // weights[i-1] = pair_count(n,n,i) * (2n-1)!/(2i-1)!, so each term
    // A(2i-1, i+l-1) * weight sits over the shared denominator
    // (2n-1)! * C(2n-1, n-1).
    let mut weights = vec![Int::zero(); n];
    let mut tail = Int::one();
    for i in (1..=n).rev() {
        weights[i - 1] = pair_count(n, n, i)? * &tail;
        if i > 1 {
            tail *= ((2 * i - 1) * (2 * i - 2)) as u64;
        }
    }
    let mut nums = vec![Int::zero(); 2 * n - 1];
    let mut rows = eulerian::RowIter::new();
    for i in 1..=n {
        let row = loop {
            let r = rows.next().unwrap();
            if r.n() == 2 * i - 1 {
                break r;
            }
        };
        let w = &weights[i - 1];
        for (m, v) in row.values().iter().enumerate() {
            let l = m as i64 - (i as i64 - 1);
            nums[(l + n as i64 - 1) as usize] += v * w;
        }
    }
    let den = comb::factorial(2 * n as u64 - 1) * total_pairs(n)?;
    let check: Int = nums.iter().sum();
    assert_eq!(check, den, "overall pmf must be normalized");
    let mut probs = BTreeMap::new();
    for (idx, num) in nums.into_iter().enumerate() {
        if num.is_zero() {
            continue;
        }
        let l = idx as i64 - (n as i64 - 1);
        probs.insert(l, Rational::new(num, den.clone()));
    }
    Ok(LinkingPmf::from_parts(
        probs,
        PmfScope::Overall(n),
        Provenance::Exact,
    ))
}

/// The overall distribution on the normalized axis: `(l/n, P(l))` pairs,
/// ascending.
pub fn normalized_pmf(n: usize) -> Result<Vec<(Rational, Rational)>, DistError> {
    let pmf = overall_pmf(n)?;
    Ok(pmf
        .support()
        .map(|(l, p)| (Rational::new(Int::from(l), Int::from(n)), p.clone()))
        .collect())
}

/// The overall distribution as a density on the normalized axis:
/// `(l/n, n * P(l))` pairs, so that the points integrate like a density
/// against the `1/n` grid spacing.
pub fn density_pmf(n: usize) -> Result<Vec<(Rational, Rational)>, DistError> {
    let scale = Rational::from_integer(Int::from(n));
    let pmf = overall_pmf(n)?;
    Ok(pmf
        .support()
        .map(|(l, p)| (Rational::new(Int::from(l), Int::from(n)), p * &scale))
        .collect())
}

/// Exact `E[l^2]` for one pair with `i` interior chords per component,
/// computed from the distribution and asserted against the closed form:
/// `i/6` for `i >= 2`, zero for the crossing-free `i = 1` family.
pub fn mean_squared_linking(i: usize) -> Result<Rational, DistError> {
    let moment = linking_pmf(i)?.second_moment();
    let closed = if i >= 2 {
        Rational::new(Int::from(i), Int::from(6))
    } else {
        Rational::zero()
    };
    assert_eq!(moment, closed, "pmf moment must match the closed form");
    Ok(moment)
}

/// `E[l^2]` over all pairs, as the pair-count weighted sum of per-count
/// moments (`i/6` each; the `i = 1` family contributes zero).
pub fn mean_squared_overall_summation(n: usize) -> Result<Rational, DistError> {
    if n < 3 {
        return Err(DistError::CycleLength(n));
    }
    let mut num = Int::zero();
    for i in 2..=n {
        num += pair_count(n, n, i)? * i as u64;
    }
    Ok(Rational::new(num, Int::from(6) * total_pairs(n)?))
}

/// `E[l^2]` over all pairs, closed form:
/// `(n/6) * (n/(2n-1) - 1/C(2n-1, n-1))`.
pub fn mean_squared_overall_closed(n: usize) -> Result<Rational, DistError> {
    if n < 3 {
        return Err(DistError::CycleLength(n));
    }
    let inner = Rational::new(Int::from(n), Int::from(2 * n - 1))
        - Rational::new(Int::one(), total_pairs(n)?);
    Ok(Rational::new(Int::from(n), Int::from(6)) * inner)
}

/// `E[l^2]` over all disjoint monotonic n-cycle pairs; the summation and
/// closed forms are both evaluated and must agree.
pub fn mean_squared_overall(n: usize) -> Result<Rational, DistError> {
    let by_sum = mean_squared_overall_summation(n)?;
    let closed = mean_squared_overall_closed(n)?;
    assert_eq!(by_sum, closed, "summation and closed form must agree");
    Ok(closed)
}

/// Asymptotic squeeze for the overall second moment: it lies strictly
/// between `n/12` and `n/6`, so it grows linearly in `n`.
pub fn theta_bounds(n: usize) -> Result<(Rational, Rational), DistError> {
    if n < 3 {
        return Err(DistError::CycleLength(n));
    }
    Ok((
        Rational::new(Int::from(n), Int::from(12)),
        Rational::new(Int::from(n), Int::from(6)),
    ))
}

/// Exact two-component link census of the six-vertex complete graph with
/// uniformly random chord heights: probabilities by link type for a
/// uniformly random disjoint pair of monotonic triangles, and expected
/// counts over all ten pairs of one embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub trivial: Rational,
    pub hopf: Rational,
    pub solomon: Rational,
    pub expected_trivial: Rational,
    pub expected_hopf: Rational,
    pub expected_solomon: Rational,
    pub expected_nontrivial: Rational,
}

impl CensusReport {
    /// Probability that a uniform pair is non-trivially linked.
    pub fn nontrivial(&self) -> Rational {
        &self.hopf + &self.solomon
    }

    pub fn probability_sum(&self) -> Rational {
        &self.trivial + &self.hopf + &self.solomon
    }
}

/// The census itself. Hard-wired to the six-vertex diagram: two disjoint
/// triangles satisfy `|l| <= 2`, where `|l|` classifies the pair completely
/// (0 unlink, 1 Hopf link, 2 Solomon link). Larger diagrams admit linking
/// numbers this classification does not cover.
pub fn k6_census() -> CensusReport {
    let total = total_pairs(3).unwrap();
    let mut by_abs = [Rational::zero(), Rational::zero(), Rational::zero()];
    for i in 1..=3usize {
        let weight = Rational::new(pair_count(3, 3, i).unwrap(), total.clone());
        let pmf = linking_pmf(i).unwrap();
        by_abs[0] += &weight * pmf.prob(0);
        by_abs[1] += &weight * (pmf.prob(1) + pmf.prob(-1));
        by_abs[2] += &weight * (pmf.prob(2) + pmf.prob(-2));
    }
    let [trivial, hopf, solomon] = by_abs;
    let pairs = Rational::from_integer(total);
    CensusReport {
        expected_trivial: &trivial * &pairs,
        expected_hopf: &hopf * &pairs,
        expected_solomon: &solomon * &pairs,
        expected_nontrivial: (&hopf + &solomon) * &pairs,
        trivial,
        hopf,
        solomon,
    }
}

fn pow10(k: u64) -> Int {
    Int::from(10u32).pow(u32::try_from(k).expect("decimal shift fits u32"))
}

/// `a >= 10^k` for positive `a`.
fn at_least_pow10(a: &Rational, k: i64) -> bool {
    if k >= 0 {
        *a.numer() >= a.denom() * pow10(k as u64)
    } else {
        a.numer() * pow10((-k) as u64) >= *a.denom()
    }
}

/// Renders an exact rational as a plain decimal (never scientific
/// notation) rounded half-up to `sig_digits` significant digits, with
/// trailing fractional zeros trimmed.
pub fn to_decimal_string(r: &Rational, sig_digits: usize) -> String {
    assert!(sig_digits >= 1, "need at least one significant digit");
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Decimal exponent e with 10^e <= a < 10^(e+1), seeded from the digit
    // lengths and corrected by at most a step in each direction.
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while !at_least_pow10(&a, e) {
        e -= 1;
    }
    while at_least_pow10(&a, e + 1) {
        e += 1;
    }
    let shift = sig_digits as i64 - 1 - e;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (a.numer() * pow10(shift as u64), a.denom().clone())
    } else {
        (a.numer().clone(), a.denom() * pow10((-shift) as u64))
    };
    let (mut q, rem) = scaled_num.div_rem(&scaled_den);
    if &rem * 2u32 >= scaled_den {
        q += 1;
    }
    let mut digits = q.to_string();
    if digits.len() > sig_digits {
        // Rounding carried into the next power of ten (e.g. 9.97 -> 10);
        // the dropped digit is always the trailing zero.
        digits.truncate(sig_digits);
        e += 1;
    }
    let mut s = if e >= digits.len() as i64 - 1 {
        let zeros = (e + 1 - digits.len() as i64) as usize;
        format!("{digits}{}", "0".repeat(zeros))
    } else if e >= 0 {
        let point = (e + 1) as usize;
        format!("{}.{}", &digits[..point], &digits[point..])
    } else {
        format!("0.{}{digits}", "0".repeat((-e - 1) as usize))
    };
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if neg {
        s.insert(0, '-');
    }
    s
}
