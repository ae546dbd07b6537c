//! Planar primitives: the square domain, points, enclosing circles and
//! lattice-based coverage estimation.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Relative slack used by every distance threshold test.
///
/// Lattice constructions put points at exactly `2r` (or exactly `r` from a
/// circumcenter); rounding must not flip those cases.
pub const THRESHOLD_SLACK: f64 = 1e-9;

/// `value <= limit` up to [`THRESHOLD_SLACK`].
#[inline]
pub fn within(value: f64, limit: f64) -> bool {
    value <= limit + THRESHOLD_SLACK * limit.abs().max(1.0)
}

/// The square `[0, a]^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    side: f64,
}

impl Domain {
    pub fn new(side: f64) -> Result<Self> {
        if !(side.is_finite() && side > 0.0) {
            return Err(invalid("side", format!("must be finite and > 0, got {side}")));
        }
        Ok(Domain { side })
    }

    /// Unit square, the default simulation domain.
    pub fn unit() -> Self {
        Domain { side: 1.0 }
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn area(&self) -> f64 {
        self.side * self.side
    }

    pub fn center(&self) -> Point2 {
        Point2::new(self.side / 2.0, self.side / 2.0)
    }

    /// Radius of the circle through the four corners.
    pub fn circumradius(&self) -> f64 {
        self.side * std::f64::consts::SQRT_2 / 2.0
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= 0.0 && p.y >= 0.0 && p.x <= self.side && p.y <= self.side
    }
}

impl Default for Domain {
    fn default() -> Self {
        Domain::unit()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn distance_sq(&self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn distance(&self, other: Point2) -> f64 {
        distance(*self, other)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2::new(x, y)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Point2::new(x, y)
    }
}

/// Role of a vertex in the repaired network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tag {
    /// Surviving node of the damaged network.
    Existing,
    /// Candidate node proposed by an addition strategy.
    Added,
    /// Fictional node on the perimeter marking the area to cover.
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaggedPoint {
    position: Point2,
    tag: Tag,
}

impl TaggedPoint {
    pub fn new(position: Point2, tag: Tag) -> Self {
        TaggedPoint { position, tag }
    }

    pub fn existing(position: Point2) -> Self {
        Self::new(position, Tag::Existing)
    }

    pub fn added(position: Point2) -> Self {
        Self::new(position, Tag::Added)
    }

    pub fn boundary(position: Point2) -> Self {
        Self::new(position, Tag::Boundary)
    }

    pub fn position(&self) -> Point2 {
        self.position
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }
}

/// Euclidean distance.
#[inline]
pub fn distance(p: Point2, q: Point2) -> f64 {
    (p.x - q.x).hypot(p.y - q.y)
}

/// Radius of the smallest circle containing `p`, `q` and `s`.
///
/// Three radius-`r` balls share a point iff this radius is at most `r`.
pub fn min_enclosing_radius(p: Point2, q: Point2, s: Point2) -> f64 {
    // squared side lengths, sorted so that `c2` is the longest
    let mut sides = [q.distance_sq(s), p.distance_sq(s), p.distance_sq(q)];
    sides.sort_by(|a, b| a.total_cmp(b));
    let [a2, b2, c2] = sides;
    let longest_half = c2.sqrt() / 2.0;

    // twice the signed area
    let cross = (q.x - p.x) * (s.y - p.y) - (q.y - p.y) * (s.x - p.x);
    let degenerate = cross.abs() <= 1e-12 * c2.max(f64::MIN_POSITIVE);
    if degenerate || a2 + b2 <= c2 {
        return longest_half;
    }
    // circumradius abc / (4 * area) with area = |cross| / 2
    let circum = (a2 * b2 * c2).sqrt() / (2.0 * cross.abs());
    circum.max(longest_half)
}

/// Fraction of a cell-centred `resolution x resolution` sample lattice over
/// the domain lying within distance `r` of some point.
pub fn coverage_fraction(points: &[Point2], r: f64, domain: Domain, resolution: usize) -> Result<f64> {
    if resolution < 2 {
        return Err(invalid("resolution", format!("must be >= 2, got {resolution}")));
    }
    if !(r.is_finite() && r >= 0.0) {
        return Err(invalid("r", format!("must be finite and >= 0, got {r}")));
    }
    if points.is_empty() {
        return Ok(0.0);
    }
    let step = domain.side() / resolution as f64;
    let r2 = r * r;
    let mut covered = 0usize;
    for i in 0..resolution {
        let y = (i as f64 + 0.5) * step;
        // only points whose disk meets this row matter
        let row: Vec<Point2> = points.iter().copied().filter(|p| (p.y - y).abs() <= r).collect();
        if row.is_empty() {
            continue;
        }
        for j in 0..resolution {
            let sample = Point2::new((j as f64 + 0.5) * step, y);
            if row.iter().any(|p| within(p.distance_sq(sample), r2)) {
                covered += 1;
            }
        }
    }
    Ok(covered as f64 / (resolution * resolution) as f64)
}

/// Default lattice resolution for [`coverage_fraction`].
pub const DEFAULT_COVERAGE_RESOLUTION: usize = 200;
