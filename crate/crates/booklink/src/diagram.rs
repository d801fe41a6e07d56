//! Stacked-chord diagrams of complete graphs.
//!
//! Vertices `1..=N` sit clockwise on a circle. An edge between
//! circle-adjacent vertices runs along the boundary; every other edge is an
//! interior chord drawn straight across the disk. Distinct integer heights
//! (ranks) on the chords resolve every chord crossing into an over/under
//! pair, turning two vertex-disjoint cycles into a two-component link
//! diagram.

use std::collections::{HashMap, HashSet};
use std::f64::consts::TAU;
use std::fmt;

use thiserror::Error;

/// Crossing chords at desk scales are far from parallel; the direction
/// determinant is asserted to clear this bound before its sign is read.
const DET_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("diagram needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} out of range 1..={max}")]
    VertexOutOfRange { vertex: usize, max: usize },
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("duplicate vertex {0} in cycle")]
    DuplicateVertex(usize),
    #[error("edge endpoints must differ, got ({0},{0})")]
    DegenerateEdge(usize),
    #[error("edge ({0},{1}) is not an interior chord")]
    NotInterior(usize, usize),
    #[error("edges ({0},{1}) and ({2},{3}) share a vertex")]
    SharedVertex(usize, usize, usize, usize),
    #[error("chords ({0},{1}) and ({2},{3}) do not cross")]
    NotCrossing(usize, usize, usize, usize),
    #[error("cycles are not disjoint: both contain vertex {0}")]
    NonDisjointCycles(usize),
    #[error("duplicate edge ({0},{1}) in height assignment")]
    DuplicateEdge(usize, usize),
    #[error("heights must be a bijection onto 1..={expected}: {detail}")]
    InvalidHeights { expected: usize, detail: String },
    #[error("incomplete heights: no rank for interior edge ({0},{1})")]
    IncompleteHeights(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Unordered edge key: endpoints sorted ascending.
fn canonical(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The ambient complete graph on a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
}

impl Diagram {
    pub fn new(n: usize) -> Result<Self, DiagramError> {
        if n < 3 {
            return Err(DiagramError::TooFewVertices(n));
        }
        Ok(Diagram { n })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of interior chords: all edges minus the N boundary edges.
    pub fn interior_edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2 - self.n
    }

    fn check_vertex(&self, v: usize) -> Result<(), DiagramError> {
        if v == 0 || v > self.n {
            return Err(DiagramError::VertexOutOfRange {
                vertex: v,
                max: self.n,
            });
        }
        Ok(())
    }

    fn check_edge(&self, (a, b): (usize, usize)) -> Result<(), DiagramError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(DiagramError::DegenerateEdge(a));
        }
        Ok(())
    }

    fn check_cycle(&self, c: &Cycle) -> Result<(), DiagramError> {
        for &v in c.vertices() {
            self.check_vertex(v)?;
        }
        Ok(())
    }

    /// Planar position of a vertex on the unit circle. Vertex 1 sits at
    /// angle 0 and labels increase clockwise.
    pub fn position(&self, v: usize) -> Result<(f64, f64), DiagramError> {
        self.check_vertex(v)?;
        let theta = -TAU * (v - 1) as f64 / self.n as f64;
        Ok((theta.cos(), theta.sin()))
    }

    /// True when `{a, b}` is an interior chord rather than a boundary edge.
    pub fn is_interior(&self, a: usize, b: usize) -> Result<bool, DiagramError> {
        self.check_edge((a, b))?;
        let (lo, hi) = canonical(a, b);
        let gap = hi - lo;
        Ok(gap != 1 && gap != self.n - 1)
    }

    /// All interior chords as canonical unordered pairs, lexicographic.
    pub fn interior_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.interior_edge_count());
        for a in 1..=self.n {
            for b in (a + 1)..=self.n {
                if self.is_interior(a, b).unwrap() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// True when `v` lies strictly inside the clockwise arc from `a` to `b`.
    fn in_open_arc(&self, a: usize, b: usize, v: usize) -> bool {
        let forward = |from: usize, to: usize| (to + self.n - from) % self.n;
        let d = forward(a, v);
        d != 0 && d < forward(a, b)
    }

    /// Whether two chords with distinct endpoints cross inside the disk:
    /// exactly one endpoint of `e2` lies on each side of `e1`.
    pub fn chords_interleave(
        &self,
        e1: (usize, usize),
        e2: (usize, usize),
    ) -> Result<bool, DiagramError> {
        self.check_edge(e1)?;
        self.check_edge(e2)?;
        if !self.is_interior(e1.0, e1.1)? {
            return Err(DiagramError::NotInterior(e1.0, e1.1));
        }
        if !self.is_interior(e2.0, e2.1)? {
            return Err(DiagramError::NotInterior(e2.0, e2.1));
        }
        if e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1 {
            return Err(DiagramError::SharedVertex(e1.0, e1.1, e2.0, e2.1));
        }
        let c_inside = self.in_open_arc(e1.0, e1.1, e2.0);
        let d_inside = self.in_open_arc(e1.0, e1.1, e2.1);
        Ok(c_inside != d_inside)
    }

    /// Sign of the crossing where directed chord `over` passes above
    /// directed chord `under`: +1 when the frame (over-direction,
    /// under-direction) is positively oriented in the plane.
    pub fn crossing_sign(
        &self,
        over: (usize, usize),
        under: (usize, usize),
    ) -> Result<i8, DiagramError> {
        if !self.chords_interleave(over, under)? {
            return Err(DiagramError::NotCrossing(over.0, over.1, under.0, under.1));
        }
        let (ox0, oy0) = self.position(over.0)?;
        let (ox1, oy1) = self.position(over.1)?;
        let (ux0, uy0) = self.position(under.0)?;
        let (ux1, uy1) = self.position(under.1)?;
        let od = (ox1 - ox0, oy1 - oy0);
        let ud = (ux1 - ux0, uy1 - uy0);
        let det = od.0 * ud.1 - od.1 * ud.0;
        assert!(
            det.abs() > DET_TOLERANCE,
            "crossing chords produced a near-zero determinant"
        );
        Ok(if det > 0.0 { 1 } else { -1 })
    }

    /// Label-order class of a cycle read cyclically.
    pub fn monotonicity_class(&self, c: &Cycle) -> Result<Monotonicity, DiagramError> {
        self.check_cycle(c)?;
        let ascents = c
            .directed_edges()
            .filter(|&(a, b)| a < b)
            .count();
        let descents = c.len() - ascents;
        Ok(if descents == 1 {
            Monotonicity::Increasing
        } else if ascents == 1 {
            Monotonicity::Decreasing
        } else {
            Monotonicity::NonMonotonic
        })
    }

    /// The cycle's interior edges, directed along the cycle's orientation.
    pub fn interior_edges_of(&self, c: &Cycle) -> Result<Vec<(usize, usize)>, DiagramError> {
        self.check_cycle(c)?;
        let mut out = Vec::new();
        for (a, b) in c.directed_edges() {
            if self.is_interior(a, b)? {
                out.push((a, b));
            }
        }
        Ok(out)
    }

    fn check_disjoint(&self, p: &Cycle, q: &Cycle) -> Result<(), DiagramError> {
        self.check_cycle(p)?;
        self.check_cycle(q)?;
        let pset: HashSet<usize> = p.vertices().iter().copied().collect();
        if let Some(&v) = q.vertices().iter().find(|v| pset.contains(v)) {
            return Err(DiagramError::NonDisjointCycles(v));
        }
        Ok(())
    }

    /// Every resolved crossing between the two components, given chord
    /// heights covering all interior edges of both cycles.
    pub fn crossings_between(
        &self,
        p: &Cycle,
        q: &Cycle,
        h: &HeightAssignment,
    ) -> Result<Vec<Crossing>, DiagramError> {
        self.check_disjoint(p, q)?;
        let pe = self.interior_edges_of(p)?;
        let qe = self.interior_edges_of(q)?;
        for &(a, b) in pe.iter().chain(qe.iter()) {
            if h.rank(a, b).is_none() {
                let (a, b) = canonical(a, b);
                return Err(DiagramError::IncompleteHeights(a, b));
            }
        }
        let mut out = Vec::new();
        for &ep in &pe {
            for &eq in &qe {
                if !self.chords_interleave(ep, eq)? {
                    continue;
                }
                let rp = h.rank(ep.0, ep.1).unwrap();
                let rq = h.rank(eq.0, eq.1).unwrap();
                let (over, under) = if rp > rq { (ep, eq) } else { (eq, ep) };
                let sign = self.crossing_sign(over, under)?;
                out.push(Crossing { over, under, sign });
            }
        }
        Ok(out)
    }

    /// Linking number of the two-component link: half the signed sum over
    /// all inter-component crossings.
    pub fn linking_number(
        &self,
        p: &Cycle,
        q: &Cycle,
        h: &HeightAssignment,
    ) -> Result<i64, DiagramError> {
        let crossings = self.crossings_between(p, q, h)?;
        // Two closed curves in the plane cross an even number of times.
        debug_assert!(crossings.len() % 2 == 0);
        let total: i64 = crossings.iter().map(|c| c.sign as i64).sum();
        Ok(total / 2)
    }

    /// Number of chord crossings between the two components, independent of
    /// heights. For a disjoint monotonic pair whose components each have
    /// `i >= 2` interior edges this equals `2i`; pairs with `i = 1` are
    /// crossing-free (their two chords close off complementary arcs).
    pub fn inter_component_crossing_count(
        &self,
        p: &Cycle,
        q: &Cycle,
    ) -> Result<usize, DiagramError> {
        self.check_disjoint(p, q)?;
        let pe = self.interior_edges_of(p)?;
        let qe = self.interior_edges_of(q)?;
        let mut count = 0;
        for &ep in &pe {
            for &eq in &qe {
                if self.chords_interleave(ep, eq)? {
                    count += 1;
                }
            }
        }
        Ok(count)
    }
}

/// Label-order class of a cycle: monotonic cycles read increasing or
/// decreasing around the circle (exactly one cyclic descent, respectively
/// ascent).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    NonMonotonic,
}

/// A cycle through distinct vertices, in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    pub fn new(vertices: Vec<usize>) -> Result<Self, DiagramError> {
        if vertices.len() < 3 {
            return Err(DiagramError::CycleTooShort(vertices.len()));
        }
        let mut seen = HashSet::new();
        for &v in &vertices {
            if v == 0 {
                return Err(DiagramError::VertexOutOfRange {
                    vertex: 0,
                    max: usize::MAX,
                });
            }
            if !seen.insert(v) {
                return Err(DiagramError::DuplicateVertex(v));
            }
        }
        Ok(Cycle { vertices })
    }

    /// Parses `"1,3,5"`.
    pub fn parse(s: &str) -> Result<Self, DiagramError> {
        let vertices = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| DiagramError::Parse(format!("bad vertex label {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Cycle::new(vertices)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Edges in traversal order, including the closing edge.
    pub fn directed_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |j| (self.vertices[j], self.vertices[(j + 1) % k]))
    }

    /// The same cycle traversed in the opposite direction.
    pub fn reversed(&self) -> Cycle {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Cycle { vertices }
    }

    pub fn is_disjoint(&self, other: &Cycle) -> bool {
        let mine: HashSet<usize> = self.vertices.iter().copied().collect();
        !other.vertices.iter().any(|v| mine.contains(v))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Distinct integer heights (ranks `1..=K`) on a set of interior chords.
/// Edges are unordered: both directions look up the same rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightAssignment {
    ranks: HashMap<(usize, usize), usize>,
}

impl HeightAssignment {
    /// Builds from `(edge, rank)` pairs; the ranks must form a bijection
    /// onto `1..=K` and every edge must be an interior chord.
    pub fn new<I>(d: &Diagram, pairs: I) -> Result<Self, DiagramError>
    where
        I: IntoIterator<Item = ((usize, usize), usize)>,
    {
        let mut ranks = HashMap::new();
        for ((a, b), r) in pairs {
            if !d.is_interior(a, b)? {
                return Err(DiagramError::NotInterior(a, b));
            }
            let key = canonical(a, b);
            if ranks.insert(key, r).is_some() {
                return Err(DiagramError::DuplicateEdge(key.0, key.1));
            }
        }
        let k = ranks.len();
        let mut seen = vec![false; k + 1];
        for (&(a, b), &r) in &ranks {
            if r == 0 || r > k {
                return Err(DiagramError::InvalidHeights {
                    expected: k,
                    detail: format!("edge ({a},{b}) has rank {r}"),
                });
            }
            if seen[r] {
                return Err(DiagramError::InvalidHeights {
                    expected: k,
                    detail: format!("rank {r} assigned twice"),
                });
            }
            seen[r] = true;
        }
        Ok(HeightAssignment { ranks })
    }

    /// Parses `"1,3:5;2,4:4"` (edge `a,b` gets rank `r` in each `a,b:r`).
    pub fn parse(d: &Diagram, s: &str) -> Result<Self, DiagramError> {
        let mut pairs = Vec::new();
        for item in s.split(';').filter(|t| !t.trim().is_empty()) {
            let (edge, rank) = item
                .split_once(':')
                .ok_or_else(|| DiagramError::Parse(format!("missing ':' in {item:?}")))?;
            let (a, b) = edge
                .split_once(',')
                .ok_or_else(|| DiagramError::Parse(format!("missing ',' in edge {edge:?}")))?;
            let parse_num = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| DiagramError::Parse(format!("bad number {t:?}")))
            };
            pairs.push(((parse_num(a)?, parse_num(b)?), parse_num(rank)?));
        }
        HeightAssignment::new(d, pairs)
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Rank of the chord `{a, b}` in either orientation, if assigned.
    pub fn rank(&self, a: usize, b: usize) -> Option<usize> {
        self.ranks.get(&canonical(a, b)).copied()
    }

    /// Assigned edges with their ranks, sorted by edge.
    pub fn entries(&self) -> Vec<((usize, usize), usize)> {
        let mut out: Vec<_> = self.ranks.iter().map(|(&e, &r)| (e, r)).collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for HeightAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .iter()
            .map(|((a, b), r)| format!("{a},{b}:{r}"))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// One resolved crossing between two stacked chords.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    /// The higher chord, directed along its cycle.
    pub over: (usize, usize),
    /// The lower chord, directed along its cycle.
    pub under: (usize, usize),
    /// +1 or -1 under the right-handed frame convention.
    pub sign: i8,
}
