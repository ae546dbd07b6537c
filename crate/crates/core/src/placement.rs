//! Vertex-addition strategies and the initial addition budget.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::ComplexKind;
use crate::dpp;
use crate::error::{invalid, Error, Result};
use crate::geometry::{Domain, Point2, TaggedPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdditionKind {
    Grid,
    Uniform,
    #[serde(rename = "dpp")]
    Determinantal,
}

impl AdditionKind {
    pub fn label(&self) -> &'static str {
        match self {
            AdditionKind::Grid => "grid",
            AdditionKind::Uniform => "uniform",
            AdditionKind::Determinantal => "dpp",
        }
    }

    /// Whether the strategy's output depends on its seed and budget.
    pub fn is_random(&self) -> bool {
        !matches!(self, AdditionKind::Grid)
    }
}

impl std::fmt::Display for AdditionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for AdditionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grid" => Ok(AdditionKind::Grid),
            "uniform" => Ok(AdditionKind::Uniform),
            "dpp" | "determinantal" | "ginibre" => Ok(AdditionKind::Determinantal),
            other => Err(invalid("strategy", format!("unknown addition strategy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditionStrategy {
    pub kind: AdditionKind,
    pub complex: ComplexKind,
}

impl AdditionStrategy {
    pub fn new(kind: AdditionKind, complex: ComplexKind) -> Self {
        AdditionStrategy { kind, complex }
    }
}

/// Vertices still needed to cover the area by disk count alone:
/// `max(0, ceil(a^2 / (pi r^2)) - existing)`.
pub fn required_additions(a: f64, r: f64, existing: usize) -> usize {
    let needed = (a * a / (std::f64::consts::PI * r * r)).ceil() as usize;
    needed.saturating_sub(existing)
}

/// Lattice spacing and points per axis for a complex kind.
pub fn lattice_shape(side: f64, r: f64, kind: ComplexKind) -> (f64, usize) {
    let spacing = match kind {
        ComplexKind::Cech => std::f64::consts::SQRT_2 * r,
        ComplexKind::Rips => 2.0 * r,
    };
    // a hair of slack so that a/spacing landing on an integer is not rounded down
    let per_axis = (side / spacing * (1.0 + 1e-12)).floor() as usize + 1;
    (spacing, per_axis)
}

/// Square lattice centred in the domain with equal margins.
pub fn grid_positions(domain: Domain, r: f64, kind: ComplexKind) -> Vec<Point2> {
    let (spacing, m) = lattice_shape(domain.side(), r, kind);
    let margin = ((domain.side() - (m - 1) as f64 * spacing) / 2.0).max(0.0);
    let axis: Vec<f64> = (0..m).map(|i| margin + i as f64 * spacing).collect();
    let mut out = Vec::with_capacity(m * m);
    for &y in &axis {
        for &x in &axis {
            out.push(Point2::new(x, y));
        }
    }
    out
}

/// The `sqrt(2) r` lattice: every point of the square lies within `r` of a
/// lattice point, and lattice neighbours along a cell diagonal are exactly
/// `2r` apart, so the lattice fills both the Čech and the Rips complex.
/// The grid strategy always places this lattice.
pub fn covering_lattice(domain: Domain, r: f64) -> Vec<Point2> {
    grid_positions(domain, r, ComplexKind::Cech)
}

/// `n` independent uniform points in the open square.
pub fn uniform_positions(n: usize, domain: Domain, seed: u64) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coord = || loop {
        let c = rng.random::<f64>();
        if c > 0.0 {
            return c * domain.side();
        }
    };
    (0..n).map(|_| Point2::new(coord(), coord())).collect()
}

/// Candidate vertices for one addition round, tagged [`Tag::Added`](crate::geometry::Tag::Added).
pub fn place(
    strategy: AdditionStrategy,
    n: usize,
    existing: &[TaggedPoint],
    domain: Domain,
    r: f64,
    seed: u64,
) -> Result<Vec<TaggedPoint>> {
    if !(r.is_finite() && r > 0.0) {
        return Err(invalid("r", format!("must be finite and > 0, got {r}")));
    }
    let positions = match strategy.kind {
        AdditionKind::Grid => covering_lattice(domain, r),
        AdditionKind::Uniform => uniform_positions(n, domain, seed),
        AdditionKind::Determinantal => {
            let placed: Vec<Point2> = existing.iter().map(|p| p.position()).collect();
            dpp::sample_conditioned(n, &placed, domain, seed)?
        }
    };
    Ok(positions.into_iter().map(TaggedPoint::added).collect())
}
