//! Acceptance gate: one test per criterion, each printing a
//! `[PASS]`/`[FAIL]` line (visible under `--nocapture`) and enforcing its
//! runtime budget where one applies.

use std::collections::BTreeMap;
use std::panic::AssertUnwindSafe;
use std::time::{Duration, Instant};

use booklink::{
    empirical_overall, enumerate_monotonic_pairs, eulerian_explicit, eulerian_number,
    eulerian_row, k6_census, linking_pmf, mean_squared_linking, mean_squared_overall,
    mean_squared_overall_closed, mean_squared_overall_summation, oracle_pmf_for_pair,
    overall_pmf, pair_count, theta_bounds, to_decimal_string, total_pairs, Cycle, Diagram,
    HeightAssignment, Int, Monotonicity, Rational, SamplerConfig, SplitMix64,
};
use num_traits::{One, Signed, Zero};

fn run_criterion(name: &str, budget: Option<Duration>, body: impl FnOnce()) {
    let start = Instant::now();
    let result = std::panic::catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let verdict = if result.is_ok() { "PASS" } else { "FAIL" };
    println!("[{verdict}] {name} ({elapsed:.2?})");
    if let Err(cause) = result {
        std::panic::resume_unwind(cause);
    }
    if let Some(budget) = budget {
        assert!(
            elapsed <= budget,
            "{name}: ran {elapsed:?}, budget {budget:?}"
        );
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

fn int(v: u64) -> Int {
    Int::from(v)
}

/// Parses a plain decimal literal to (exact value, one unit in its last
/// printed place).
fn parse_decimal(s: &str) -> (Rational, Rational) {
    let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
    let digits: String = [int_part, frac_part].concat();
    let num: Int = digits.parse().expect("decimal digits");
    let den = Int::from(10u32).pow(frac_part.len() as u32);
    (
        Rational::new(num, den.clone()),
        Rational::new(Int::one(), den),
    )
}

#[test]
fn criterion_1_eulerian_tables() {
    run_criterion(
        "eulerian rows: tabulated values, recurrence vs closed form, factorial row sums",
        Some(Duration::from_secs(1)),
        || {
            let tabulated: &[(usize, &[u64])] = &[
                (1, &[1]),
                (3, &[1, 4, 1]),
                (5, &[1, 26, 66, 26, 1]),
                (7, &[1, 120, 1191, 2416, 1191, 120, 1]),
                (9, &[1, 502, 14608, 88234, 156190, 88234, 14608, 502, 1]),
            ];
            for &(n, row) in tabulated {
                let expected: Vec<Int> = row.iter().map(|&v| int(v)).collect();
                assert_eq!(eulerian_row(n).values(), &expected[..], "row {n}");
            }
            assert_eq!(eulerian_number(9, 4), int(156190));
            let mut factorial = Int::one();
            for n in 1..=60usize {
                factorial *= int(n as u64);
                let row = eulerian_row(n);
                for m in 0..n as i64 {
                    assert_eq!(row.get(m), eulerian_explicit(n, m), "n={n} m={m}");
                }
                assert_eq!(row.sum(), factorial, "row sum n={n}");
            }
        },
    );
}

/// All unordered pairs of disjoint vertex subsets of size >= 3 in an
/// `nv`-vertex diagram, as monotonic (sorted) cycles.
fn disjoint_monotonic_pairs(nv: usize) -> Vec<(Cycle, Cycle)> {
    let mut pairs = Vec::new();
    for mask_a in 0u32..(1 << nv) {
        if mask_a.count_ones() < 3 {
            continue;
        }
        let rest = !mask_a & ((1 << nv) - 1);
        let mut mask_b = rest;
        loop {
            // Walk the subsets of the complement; ordering the pair by
            // lowest vertex keeps each unordered pair visited once.
            if mask_b.count_ones() >= 3
                && mask_a.trailing_zeros() < mask_b.trailing_zeros()
            {
                let verts = |mask: u32| -> Vec<usize> {
                    (1..=nv).filter(|v| mask >> (v - 1) & 1 == 1).collect()
                };
                pairs.push((
                    Cycle::new(verts(mask_a)).unwrap(),
                    Cycle::new(verts(mask_b)).unwrap(),
                ));
            }
            if mask_b == 0 {
                break;
            }
            mask_b = (mask_b - 1) & rest;
        }
    }
    pairs
}

#[test]
fn criterion_2_formula_vs_oracle() {
    run_criterion(
        "per-pair distribution: exhaustive oracle agreement in 6- and 8-vertex diagrams",
        Some(Duration::from_secs(120)),
        || {
            for (nv, expected_pairs) in [(6usize, 10usize), (8, 651)] {
                let d = Diagram::new(nv).unwrap();
                let pairs = disjoint_monotonic_pairs(nv);
                assert_eq!(pairs.len(), expected_pairs);
                for (p, q) in &pairs {
                    assert_eq!(d.monotonicity_class(p).unwrap(), Monotonicity::Increasing);
                    assert_eq!(d.monotonicity_class(q).unwrap(), Monotonicity::Increasing);
                    let crossings = d.inter_component_crossing_count(p, q).unwrap();
                    assert_eq!(crossings % 2, 0);
                    // Crossing-free pairs share the single-chord point-mass law.
                    let i = if crossings == 0 { 1 } else { crossings / 2 };
                    let oracle = oracle_pmf_for_pair(&d, p, q).unwrap();
                    assert_eq!(
                        oracle.probs(),
                        linking_pmf(i).unwrap().probs(),
                        "pair {p} / {q}"
                    );
                }
            }
        },
    );
}

#[test]
fn criterion_3_pair_counts() {
    run_criterion(
        "pair census: tabulated counts, exhaustive enumeration, census totals",
        None,
        || {
            let tabulated: &[(usize, &[u64])] = &[
                (3, &[3, 6, 1]),
                (4, &[4, 18, 12, 1]),
                (5, &[5, 40, 60, 20, 1]),
                (6, &[6, 75, 200, 150, 30, 1]),
                (7, &[7, 126, 525, 700, 315, 42, 1]),
                (8, &[8, 196, 1176, 2450, 1960, 588, 56, 1]),
                (9, &[9, 288, 2352, 7056, 8820, 4704, 1008, 72, 1]),
                (10, &[10, 405, 4320, 17640, 31752, 26460, 10080, 1620, 90, 1]),
            ];
            for &(n, row) in tabulated {
                for (idx, &count) in row.iter().enumerate() {
                    assert_eq!(pair_count(n, n, idx + 1).unwrap(), int(count), "n={n}");
                }
            }
            for m in 3..=7usize {
                for n in m..=(14 - m) {
                    let enumerated = enumerate_monotonic_pairs(m, n).unwrap();
                    let formula: BTreeMap<usize, u64> = (1..=m)
                        .filter_map(|i| {
                            let c = pair_count(m, n, i).unwrap();
                            u64::try_from(&c).ok().filter(|&c| c > 0).map(|c| (i, c))
                        })
                        .collect();
                    assert_eq!(enumerated, formula, "m={m} n={n}");
                }
            }
            assert_eq!(total_pairs(3).unwrap(), int(10));
            for n in 3..=20usize {
                let sum: Int = (1..=n).map(|i| pair_count(n, n, i).unwrap()).sum();
                assert_eq!(sum, total_pairs(n).unwrap(), "n={n}");
            }
        },
    );
}

#[test]
fn criterion_4_overall_pmf() {
    run_criterion(
        "overall distribution: exact rationals and reference decimals",
        None,
        || {
            let six = overall_pmf(3).unwrap();
            let expected = BTreeMap::from([
                (-2, rat(1, 1200)),
                (-1, rat(73, 600)),
                (0, rat(151, 200)),
                (1, rat(73, 600)),
                (2, rat(1, 1200)),
            ]);
            assert_eq!(six.probs(), &expected);
            assert_eq!(to_decimal_string(&six.prob(0), 3), "0.755");

            // Reference plot coordinates, quoted at their printed precision;
            // each exact probability must sit within one unit of the last
            // printed digit.
            let reference: &[(usize, &[(i64, &str)])] = &[
                (
                    3,
                    &[
                        (0, "0.755"),
                        (1, "0.1216666"),
                        (1, "0.12166666"),
                        (2, "0.0008333333"),
                        (2, "0.0008333333333"),
                    ],
                ),
                (
                    4,
                    &[
                        (0, "0.6594104308"),
                        (1, "0.1667517007"),
                        (2, "0.003537414966"),
                        (3, "0.00000566893424"),
                    ],
                ),
                (
                    5,
                    &[
                        (0, "0.5927332224"),
                        (1, "0.1955238603"),
                        (2, "0.008067033398"),
                        (3, "0.00004247326503"),
                    ],
                ),
                (
                    6,
                    &[
                        (0, "0.5437472306"),
                        (1, "0.2138922072"),
                        (3, "0.0001625262039"),
                        (4, "0.0000002893464293"),
                    ],
                ),
            ];
            for &(n, coords) in reference {
                let pmf = overall_pmf(n).unwrap();
                for &(l, printed) in coords {
                    let (value, ulp) = parse_decimal(printed);
                    assert_eq!(pmf.prob(l), pmf.prob(-l), "n={n} l={l}");
                    assert!(
                        (pmf.prob(l) - &value).abs() <= ulp,
                        "n={n} l={l}: exact {} vs printed {printed}",
                        pmf.prob(l)
                    );
                }
            }

            // The reference ten-vertex dataset carries a defective entry at
            // |l| = 4: the quoted 0.00000007873519778 equals 1/(9!*35),
            // reusing the eight-vertex weight 35 where C(9,4) = 126 belongs.
            // The exact probability is 1/(9!*126) = 1/45722880, which the
            // mixture over all pairs reproduces; assert both the true value
            // and its disagreement with the quoted datum.
            let ten = overall_pmf(5).unwrap();
            assert_eq!(ten.prob(4), Rational::new(Int::one(), int(45_722_880)));
            let (defective, ulp) = parse_decimal("0.00000007873519778");
            let wrong_weight = Rational::new(Int::one(), int(12_700_800));
            assert!((wrong_weight - &defective).abs() <= ulp);
            assert!((ten.prob(4) - defective).abs() > rat(1, 100_000_000));

            // The twelve-vertex reference curve is likewise defective at
            // |l| = 2: with the quoted 0.01438998832 the curve sums to
            // 1.000637 and its second moment comes out 0.545839 instead of
            // the curve's own 251/462 = 0.543290. The mixture gives
            // 2703103/192099600 = 0.0140713619; every other coordinate of
            // the curve matches that mixture to its printed precision.
            let twelve = overall_pmf(6).unwrap();
            assert_eq!(
                twelve.prob(2),
                Rational::new(int(2_703_103), int(192_099_600))
            );
            let (defective, _) = parse_decimal("0.01438998832");
            assert!((twelve.prob(2) - defective).abs() > rat(3, 10_000));
            assert_eq!(twelve.second_moment(), rat(251, 462));

            // Twelve vertices: the coordinate at |l| = 5 is printed as 0;
            // the exact mass is positive but below 10^-10.
            assert!(twelve.prob(5).is_positive());
            assert!(twelve.prob(5) < rat(1, 10_000_000_000));
        },
    );
}

#[test]
fn criterion_5_second_moments() {
    run_criterion(
        "second moments: closed forms, reference rationals, decimal rounding, linear bounds",
        None,
        || {
            assert!(mean_squared_linking(1).unwrap().is_zero());
            for i in 2..=50usize {
                let pmf = linking_pmf(i).unwrap();
                assert_eq!(pmf.second_moment(), rat(i as i64, 6), "i={i}");
                assert_eq!(mean_squared_linking(i).unwrap(), rat(i as i64, 6));
            }
            let reference: &[(usize, (i64, i64))] = &[
                (3, (1, 4)),
                (4, (38, 105)),
                (5, (115, 252)),
                (6, (251, 462)),
                (7, (497, 792)),
                (8, (13724, 19305)),
                (9, (2271, 2860)),
                (10, (243095, 277134)),
                (11, (677435, 705432)),
                (12, (705431, 676039)),
                (13, (2343601, 2080120)),
            ];
            for &(n, (num, den)) in reference {
                assert_eq!(mean_squared_overall(n).unwrap(), rat(num, den), "n={n}");
            }
            assert_eq!(
                mean_squared_overall(20).unwrap(),
                Rational::new(int(35_345_263_799), int(20_676_979_323))
            );
            assert_eq!(
                mean_squared_overall(30).unwrap(),
                Rational::new(
                    "150336332497705195".parse().unwrap(),
                    "59132290782430712".parse().unwrap()
                )
            );
            for n in 3..=200usize {
                let value = mean_squared_overall(n).unwrap();
                assert_eq!(value, mean_squared_overall_summation(n).unwrap());
                assert_eq!(value, mean_squared_overall_closed(n).unwrap());
                let (lo, hi) = theta_bounds(n).unwrap();
                // The lower bound is attained exactly at n = 3.
                assert!(lo <= value && value <= hi, "n={n}");
            }
            assert_eq!(
                to_decimal_string(&mean_squared_overall(100).unwrap(), 6),
                "8.37521"
            );
            assert_eq!(
                to_decimal_string(&mean_squared_overall_closed(1000).unwrap(), 5),
                "83.375"
            );
        },
    );
}

#[test]
fn criterion_6_link_census() {
    run_criterion(
        "three-cycle link census: exact probabilities and expected counts",
        None,
        || {
            let census = k6_census();
            assert_eq!(census.trivial, rat(151, 200));
            assert_eq!(census.hopf, rat(73, 300));
            assert_eq!(census.solomon, rat(1, 600));
            assert!(census.probability_sum().is_one());
            assert_eq!(census.expected_trivial, rat(151, 20));
            assert_eq!(census.expected_hopf, rat(73, 30));
            assert_eq!(census.expected_solomon, rat(1, 60));
            assert_eq!(census.nontrivial(), rat(49, 200));
            assert_eq!(census.expected_nontrivial, rat(49, 20));
            // Every embedding of the six-vertex complete graph contains a
            // non-trivial link, so the expectation must be at least 1.
            assert!(census.expected_nontrivial >= Rational::one());
        },
    );
}

#[test]
fn criterion_7_worked_configuration() {
    run_criterion(
        "worked configuration: geometric signs give linking number -2",
        None,
        || {
            let d = Diagram::new(6).unwrap();
            let p = Cycle::parse("1,3,5").unwrap();
            let q = Cycle::parse("2,4,6").unwrap();
            let chords: Vec<(usize, usize)> =
                (1..=6).map(|j| (j, if j + 2 <= 6 { j + 2 } else { j - 4 })).collect();
            let sigma = [5usize, 4, 3, 2, 1, 6];
            let h = HeightAssignment::new(&d, chords.iter().copied().zip(sigma)).unwrap();
            let crossings = d.crossings_between(&p, &q, &h).unwrap();
            assert_eq!(crossings.len(), 6);
            let signs: Vec<i8> = crossings.iter().map(|c| c.sign).collect();
            assert_eq!(signs.iter().filter(|&&s| s == -1).count(), 5);
            assert_eq!(signs.iter().filter(|&&s| s == 1).count(), 1);
            let positive = crossings.iter().find(|c| c.sign == 1).unwrap();
            // The lone positive crossing is where the heights ascend: between
            // the chords ranked 1 and 6.
            assert_eq!(positive.over, (6, 2));
            assert_eq!(positive.under, (5, 1));
            assert_eq!(crossings.iter().map(|c| c.sign as i64).sum::<i64>(), -4);
            assert_eq!(d.linking_number(&p, &q, &h).unwrap(), -2);
            assert_eq!(d.linking_number(&p.reversed(), &q, &h).unwrap(), 2);
            assert_eq!(d.linking_number(&p, &q.reversed(), &h).unwrap(), 2);
        },
    );
}

#[test]
fn criterion_8_monte_carlo() {
    run_criterion(
        "monte carlo: seeded reproducibility and closeness to exact distribution",
        Some(Duration::from_secs(60)),
        || {
            use booklink::{tv_distance, PmfScope};
            let cfg = SamplerConfig::new(7, 1_000_000, 4).unwrap();
            let emp = empirical_overall(3, &cfg).unwrap();
            assert_eq!(emp.total(), 1_000_000);
            let exact = overall_pmf(3).unwrap();
            let tv = tv_distance(&emp.to_pmf(PmfScope::Overall(3)), &exact);
            assert!(tv < rat(1, 200), "tv = {tv}");
            let moment_gap = (emp.second_moment() - rat(1, 4)).abs();
            assert!(moment_gap <= rat(1, 200), "gap = {moment_gap}");
            let rerun = empirical_overall(3, &cfg).unwrap();
            assert_eq!(emp, rerun);
            let two_workers = SamplerConfig::new(7, 1_000_000, 2).unwrap();
            assert_eq!(emp, empirical_overall(3, &two_workers).unwrap());
        },
    );
}

#[test]
fn criterion_9_property_bundle() {
    run_criterion(
        "property bundle: ascent rule, orientation flips, symmetry, crossing counts",
        None,
        || {
            // Heights ascending at a crossing of the alternating spanning
            // pair make it positive; the linking number is half the cyclic
            // ascent-descent balance.
            for n in 3..=5usize {
                let nv = 2 * n;
                let d = Diagram::new(nv).unwrap();
                let p = Cycle::new((1..=nv).step_by(2).collect()).unwrap();
                let q = Cycle::new((2..=nv).step_by(2).collect()).unwrap();
                let chords: Vec<(usize, usize)> = (1..=nv)
                    .map(|j| (j, if j + 2 <= nv { j + 2 } else { j + 2 - nv }))
                    .collect();
                let mut rng = SplitMix64::new(50 + n as u64);
                for _ in 0..10 {
                    let mut sigma: Vec<usize> = (1..=nv).collect();
                    rng.shuffle(&mut sigma);
                    let h = HeightAssignment::new(
                        &d,
                        chords.iter().copied().zip(sigma.iter().copied()),
                    )
                    .unwrap();
                    let ascents = (0..nv)
                        .filter(|&j| sigma[j] < sigma[(j + 1) % nv])
                        .count() as i64;
                    let descents = nv as i64 - ascents;
                    let l = d.linking_number(&p, &q, &h).unwrap();
                    assert_eq!(l, (ascents - descents) / 2);
                    assert_eq!(d.linking_number(&p.reversed(), &q, &h).unwrap(), -l);
                }
            }
            for i in 1..=30usize {
                let pmf = linking_pmf(i).unwrap();
                assert!(pmf.total().is_one());
                assert!(pmf.is_symmetric());
            }
            // Spanning pairs cross twice per interior chord, except the
            // crossing-free single-chord pairs.
            for nv in [6usize, 7, 8, 9, 10] {
                let d = Diagram::new(nv).unwrap();
                for (p, q) in disjoint_monotonic_pairs(nv) {
                    if p.len() + q.len() != nv {
                        continue;
                    }
                    let i = d.interior_edges_of(&p).unwrap().len();
                    assert_eq!(i, d.interior_edges_of(&q).unwrap().len());
                    let crossings = d.inter_component_crossing_count(&p, &q).unwrap();
                    assert_eq!(crossings, if i == 1 { 0 } else { 2 * i });
                }
            }
            // Pinned generator values guard seeded reproducibility.
            let mut rng = SplitMix64::new(1234567);
            assert_eq!(rng.next_u64(), 6457827717110365317);
            assert_eq!(rng.next_u64(), 3203168211198807973);
            let mut xs: Vec<u32> = (0..8).collect();
            SplitMix64::new(99).shuffle(&mut xs);
            assert_eq!(xs, vec![6, 4, 5, 0, 2, 1, 7, 3]);
        },
    );
}
