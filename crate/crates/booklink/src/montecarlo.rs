//! Brute-force enumeration and seeded sampling counterparts to the exact
//! distributions.
//!
//! Sampling is reproducible by construction: the generator is SplitMix64
//! (a fixed, fully specified algorithm), samples are tallied in fixed-size
//! chunks whose seeds derive only from the master seed and the chunk
//! index, and chunk tallies merge commutatively. Identical `(seed,
//! samples)` therefore produce identical results for any worker count.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use thiserror::Error;

use crate::diagram::{Cycle, Diagram, DiagramError, HeightAssignment};
use crate::dist::{DistError, LinkingPmf, PmfScope, Provenance};
use crate::{comb, Int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SampleError {
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("empty edge set")]
    EmptyEdgeSet,
    #[error("instance too large: {size} exceeds enumeration limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Dist(#[from] DistError),
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64: a tiny, fully specified 64-bit generator (state walks by
/// the golden-ratio increment, outputs pass through a 3-round finalizer).
/// Pinned in-repo so seeded runs stay bit-identical across platforms and
/// releases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform draw from `0..bound`, bias-free: the partial block of size
    /// `2^64 mod bound` at the bottom of the range is rejected.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let r = self.next_u64();
            if r >= threshold {
                return r % bound;
            }
        }
    }

    /// Unbiased in-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for j in (1..xs.len()).rev() {
            let k = self.next_below(j as u64 + 1) as usize;
            xs.swap(j, k);
        }
    }
}

/// Samples are tallied in fixed chunks of this many draws.
const CHUNK: u64 = 8192;

/// Seed of chunk `c`: the `(c+1)`-th output of a SplitMix64 stream over
/// the master seed.
fn chunk_seed(master: u64, chunk: u64) -> u64 {
    mix(master.wrapping_add(chunk.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Seeded sampling run description.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
}

impl SamplerConfig {
    pub fn new(seed: u64, samples: u64, workers: usize) -> Result<Self, SampleError> {
        let cfg = SamplerConfig {
            seed,
            samples,
            workers,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SampleError> {
        if self.samples == 0 {
            return Err(SampleError::NoSamples);
        }
        if self.workers == 0 {
            return Err(SampleError::NoWorkers);
        }
        Ok(())
    }
}

/// Tallied linking numbers from a sampling run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalPmf {
    counts: BTreeMap<i64, u64>,
    total: u64,
}

impl EmpiricalPmf {
    fn from_counts(counts: BTreeMap<i64, u64>) -> Self {
        let total = counts.values().sum();
        EmpiricalPmf { counts, total }
    }

    pub fn counts(&self) -> &BTreeMap<i64, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, l: i64) -> u64 {
        self.counts.get(&l).copied().unwrap_or(0)
    }

    /// Observed proportion of `l`, as an exact rational.
    pub fn proportion(&self, l: i64) -> Rational {
        Rational::new(Int::from(self.count(l)), Int::from(self.total))
    }

    /// Exact `E[l^2]` of the observed tallies.
    pub fn second_moment(&self) -> Rational {
        let mut num = Int::from(0);
        for (&l, &c) in &self.counts {
            num += Int::from(l * l) * c;
        }
        Rational::new(num, Int::from(self.total))
    }

    /// The tallies as a probability mass function with empirical
    /// provenance.
    pub fn to_pmf(&self, scope: PmfScope) -> LinkingPmf {
        let probs: BTreeMap<i64, Rational> = self
            .counts
            .iter()
            .map(|(&l, &c)| (l, Rational::new(Int::from(c), Int::from(self.total))))
            .collect();
        LinkingPmf::from_probs(probs, scope, Provenance::Empirical)
            .expect("count proportions normalize exactly")
    }
}

fn canon((a, b): (usize, usize)) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Interior chords of both cycles, canonicalized, sorted, deduplicated.
fn pair_interior_edges(
    d: &Diagram,
    p: &Cycle,
    q: &Cycle,
) -> Result<Vec<(usize, usize)>, DiagramError> {
    let mut edges: Vec<(usize, usize)> = d
        .interior_edges_of(p)?
        .into_iter()
        .chain(d.interior_edges_of(q)?)
        .map(canon)
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(edges)
}

/// Uniformly random distinct heights on an edge set: ranks `1..=K`
/// assigned by a Fisher-Yates shuffle. The edges are canonicalized and
/// sorted first, so the result depends only on the edge set and the
/// generator state.
pub fn sample_heights(
    d: &Diagram,
    edges: &[(usize, usize)],
    rng: &mut SplitMix64,
) -> Result<HeightAssignment, SampleError> {
    let mut sorted: Vec<(usize, usize)> = edges.iter().copied().map(canon).collect();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() {
        return Err(SampleError::EmptyEdgeSet);
    }
    let mut ranks: Vec<usize> = (1..=sorted.len()).collect();
    rng.shuffle(&mut ranks);
    Ok(HeightAssignment::new(d, sorted.into_iter().zip(ranks))?)
}

/// Runs `cfg.samples` draws of `per_sample` chunk by chunk and merges the
/// tallies. The outcome is a pure function of `(cfg.seed, cfg.samples)`.
fn run_chunks<F>(cfg: &SamplerConfig, per_sample: F) -> BTreeMap<i64, u64>
where
    F: Fn(&mut SplitMix64) -> i64 + Sync,
{
    let chunks = cfg.samples.div_ceil(CHUNK);
    let workers = cfg.workers.min(usize::try_from(chunks).unwrap_or(usize::MAX));
    let next = AtomicU64::new(0);
    let merged: Mutex<BTreeMap<i64, u64>> = Mutex::new(BTreeMap::new());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut local: BTreeMap<i64, u64> = BTreeMap::new();
                loop {
                    let chunk = next.fetch_add(1, Ordering::Relaxed);
                    if chunk >= chunks {
                        break;
                    }
                    let mut rng = SplitMix64::new(chunk_seed(cfg.seed, chunk));
                    let len = CHUNK.min(cfg.samples - chunk * CHUNK);
                    for _ in 0..len {
                        *local.entry(per_sample(&mut rng)).or_insert(0) += 1;
                    }
                }
                let mut m = merged.lock().unwrap();
                for (l, c) in local {
                    *m.entry(l).or_insert(0) += c;
                }
            });
        }
    });
    merged.into_inner().unwrap()
}

/// Tallies linking numbers of one fixed cycle pair under `cfg.samples`
/// uniformly random height orders of the pair's interior chords.
pub fn empirical_pmf_for_pair(
    d: &Diagram,
    p: &Cycle,
    q: &Cycle,
    cfg: &SamplerConfig,
) -> Result<EmpiricalPmf, SampleError> {
    cfg.validate()?;
    let edges = pair_interior_edges(d, p, q)?;
    if edges.is_empty() {
        return Err(SampleError::EmptyEdgeSet);
    }
    // Validate the whole pipeline once so the sampling loop cannot fail.
    let identity = HeightAssignment::new(d, edges.iter().copied().zip(1..))?;
    d.linking_number(p, q, &identity)?;
    let counts = run_chunks(cfg, |rng| {
        let mut ranks: Vec<usize> = (1..=edges.len()).collect();
        rng.shuffle(&mut ranks);
        let h = HeightAssignment::new(d, edges.iter().copied().zip(ranks))
            .expect("edge set was validated");
        d.linking_number(p, q, &h).expect("cycle pair was validated")
    });
    Ok(EmpiricalPmf::from_counts(counts))
}

/// Tallies linking numbers of uniformly random disjoint monotonic n-cycle
/// pairs of the 2n-vertex complete graph under uniformly random heights.
/// Each sample fixes vertex 1 in the first component and draws its
/// remaining vertices as a uniform subset, which is uniform over
/// unordered pairs.
pub fn empirical_overall(n: usize, cfg: &SamplerConfig) -> Result<EmpiricalPmf, SampleError> {
    if n < 3 {
        return Err(SampleError::Dist(DistError::CycleLength(n)));
    }
    cfg.validate()?;
    let d = Diagram::new(2 * n)?;
    let pool_proto: Vec<usize> = (2..=2 * n).collect();
    let counts = run_chunks(cfg, |rng| {
        let mut pool = pool_proto.clone();
        for j in 0..n - 1 {
            let k = j + rng.next_below((pool.len() - j) as u64) as usize;
            pool.swap(j, k);
        }
        let mut pv: Vec<usize> = pool[..n - 1].to_vec();
        pv.push(1);
        pv.sort_unstable();
        let mut qv: Vec<usize> = pool[n - 1..].to_vec();
        qv.sort_unstable();
        let p = Cycle::new(pv).expect("labels are distinct");
        let q = Cycle::new(qv).expect("labels are distinct");
        let edges = pair_interior_edges(&d, &p, &q).expect("cycles are in range");
        let mut ranks: Vec<usize> = (1..=edges.len()).collect();
        rng.shuffle(&mut ranks);
        let h = HeightAssignment::new(&d, edges.into_iter().zip(ranks))
            .expect("edges are interior chords");
        d.linking_number(&p, &q, &h).expect("pair is disjoint")
    });
    Ok(EmpiricalPmf::from_counts(counts))
}

/// Largest ranked-chord count the exhaustive oracle will enumerate (K!
/// height orders).
pub const ORACLE_EDGE_LIMIT: usize = 10;

/// Heap's algorithm: visits every permutation of `xs` exactly once.
fn for_each_permutation<T>(xs: &mut [T], mut f: impl FnMut(&[T])) {
    let n = xs.len();
    let mut c = vec![0usize; n];
    f(xs);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                xs.swap(0, i);
            } else {
                xs.swap(c[i], i);
            }
            f(xs);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Ground-truth distribution of one cycle pair by exhaustive enumeration
/// of all height orders of its interior chords. Independent of the
/// Eulerian formulas: every order's linking number comes from geometric
/// crossing signs.
pub fn oracle_pmf_for_pair(
    d: &Diagram,
    p: &Cycle,
    q: &Cycle,
) -> Result<LinkingPmf, SampleError> {
    let edges = pair_interior_edges(d, p, q)?;
    let k = edges.len();
    if k > ORACLE_EDGE_LIMIT {
        return Err(SampleError::TooLarge {
            size: k,
            limit: ORACLE_EDGE_LIMIT,
        });
    }
    // Resolve the crossing set once; each height order then only decides
    // which chord of every crossing is on top. Swapping over and under
    // negates a crossing's sign.
    d.inter_component_crossing_count(p, q)?;
    let index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut crossings = Vec::new();
    for &ep in &d.interior_edges_of(p)? {
        for &eq in &d.interior_edges_of(q)? {
            if d.chords_interleave(ep, eq)? {
                let sign_p_over = d.crossing_sign(ep, eq)? as i64;
                crossings.push((index[&canon(ep)], index[&canon(eq)], sign_p_over));
            }
        }
    }
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    let mut ranks: Vec<usize> = (0..k).collect();
    for_each_permutation(&mut ranks, |r| {
        let mut sum = 0i64;
        for &(ip, iq, s) in &crossings {
            sum += if r[ip] > r[iq] { s } else { -s };
        }
        debug_assert!(sum % 2 == 0);
        *counts.entry(sum / 2).or_insert(0) += 1;
    });
    let den = comb::factorial(k as u64);
    let probs: BTreeMap<i64, Rational> = counts
        .into_iter()
        .map(|(l, c)| (l, Rational::new(Int::from(c), den.clone())))
        .collect();
    Ok(LinkingPmf::from_probs(
        probs,
        PmfScope::Pair(k),
        Provenance::Oracle,
    )?)
}

fn for_each_combination(
    start: usize,
    end: usize,
    k: usize,
    prefix: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if k == 0 {
        f(prefix);
        return;
    }
    if end < start || end - start + 1 < k {
        return;
    }
    for v in start..=(end - k + 1) {
        prefix.push(v);
        for_each_combination(v + 1, end, k - 1, prefix, f);
        prefix.pop();
    }
}

/// Counts all unordered disjoint monotonic cycle pairs with component
/// sizes `m` and `n` spanning the `(m+n)`-vertex complete graph, grouped
/// by each component's interior-chord count. Every vertex split is one
/// pair (a vertex set has exactly one monotonic cycle up to orientation
/// and starting point).
pub fn enumerate_monotonic_pairs(
    m: usize,
    n: usize,
) -> Result<BTreeMap<usize, u64>, SampleError> {
    if m < 3 {
        return Err(SampleError::Dist(DistError::CycleLength(m)));
    }
    if n < 3 {
        return Err(SampleError::Dist(DistError::CycleLength(n)));
    }
    let vertices = m + n;
    if vertices > 16 {
        return Err(SampleError::TooLarge {
            size: vertices,
            limit: 16,
        });
    }
    let d = Diagram::new(vertices)?;
    let mut by_i: BTreeMap<usize, u64> = BTreeMap::new();
    let mut handle = |subset: &[usize]| {
        let complement: Vec<usize> = (1..=vertices).filter(|v| !subset.contains(v)).collect();
        let p = Cycle::new(subset.to_vec()).expect("subset is sorted and distinct");
        let q = Cycle::new(complement).expect("complement is sorted and distinct");
        let ip = d.interior_edges_of(&p).expect("in range").len();
        let iq = d.interior_edges_of(&q).expect("in range").len();
        debug_assert_eq!(ip, iq, "spanning monotonic pairs share one crossing pattern");
        *by_i.entry(ip).or_insert(0) += 1;
    };
    if m == n {
        // Fix vertex 1 in the first component so each unordered split is
        // visited exactly once.
        let mut prefix = vec![1];
        for_each_combination(2, vertices, m - 1, &mut prefix, &mut handle);
    } else {
        let mut prefix = Vec::new();
        for_each_combination(1, vertices, m, &mut prefix, &mut handle);
    }
    Ok(by_i)
}

/// Total variation distance between two distributions: half the absolute
/// mass difference over the union of supports.
pub fn tv_distance(a: &LinkingPmf, b: &LinkingPmf) -> Rational {
    use num_traits::Signed;
    let keys: BTreeSet<i64> = a.probs().keys().chain(b.probs().keys()).copied().collect();
    let mut acc = Rational::new(Int::from(0), Int::from(1));
    for l in keys {
        acc += (a.prob(l) - b.prob(l)).abs();
    }
    acc / Rational::new(Int::from(2), Int::from(1))
}
