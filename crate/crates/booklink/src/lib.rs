//! Exact linking-number statistics for cycle pairs in randomly stacked
//! chord diagrams of complete graphs.
//!
//! The model: the vertices `1..=N` of the complete graph sit clockwise on a
//! circle. Edges between circle-adjacent vertices stay on the boundary;
//! every other edge is a chord drawn straight through the disk, and the
//! chords are stacked at distinct heights given by a uniformly random total
//! order. Two vertex-disjoint cycles then form a two-component link whose
//! crossings are resolved by the height order.
//!
//! For a pair of monotonic cycles (vertex labels increasing or decreasing
//! around the cycle) whose components each contribute `i` interior edges,
//! the linking number `l` is distributed as `A(2i-1, i+l-1) / (2i-1)!`,
//! where `A(n, m)` are the Eulerian numbers. This crate computes those
//! distributions three independent ways and cross-checks them:
//!
//! * [`eulerian`] builds Eulerian rows by recurrence and by the explicit
//!   alternating sum;
//! * [`diagram`] evaluates linking numbers geometrically from crossing
//!   signs of stacked chords;
//! * [`dist`] assembles the exact formula-based distributions, moments, and
//!   the two-component link census of the six-vertex complete graph;
//! * [`montecarlo`] provides brute-force enumeration over all height
//!   orders and seeded, reproducible sampling.
//!
//! All exact quantities use arbitrary-precision integers and rationals;
//! floating point appears only in crossing-sign geometry (where signs are
//! guarded by a determinant tolerance) and in statistical test helpers.

pub mod comb;
pub mod diagram;
pub mod dist;
pub mod eulerian;
pub mod montecarlo;

/// Exact integer used for all counts and numerators.
pub type Int = num_bigint::BigInt;

/// Exact rational: always lowest terms, positive denominator.
pub type Rational = num_rational::BigRational;

pub use diagram::{Crossing, Cycle, Diagram, DiagramError, HeightAssignment, Monotonicity};
pub use dist::{
    k6_census, linking_pmf, mean_squared_linking, mean_squared_overall,
    mean_squared_overall_closed, mean_squared_overall_summation, normalized_pmf, overall_pmf,
    pair_count, theta_bounds, to_decimal_string, total_pairs, CensusReport, DistError,
    LinkingPmf, PmfScope, Provenance,
};
pub use dist::density_pmf;
pub use eulerian::{eulerian_explicit, eulerian_number, eulerian_row, EulerianRow, RowIter};
pub use montecarlo::{
    empirical_overall, empirical_pmf_for_pair, enumerate_monotonic_pairs, oracle_pmf_for_pair,
    sample_heights, tv_distance, EmpiricalPmf, SampleError, SamplerConfig, SplitMix64,
};
