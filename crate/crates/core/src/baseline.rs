//! Greedy furthest-candidate set cover over a lattice of potential sites.

use serde::{Deserialize, Serialize};

use crate::complex::ComplexKind;
use crate::error::{invalid, Result};
use crate::geometry::{within, Domain, Point2};
use crate::placement::grid_positions;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreedyConfig {
    pub domain: Domain,
    pub radius: f64,
    /// A candidate this close to a vertex counts as covered.
    pub stop_radius: f64,
    /// Lattice of candidate sites; [`ComplexKind::Cech`] is the `sqrt(2) r` lattice.
    pub lattice: ComplexKind,
}

impl GreedyConfig {
    /// Stop radius `r`, `sqrt(2) r` candidate lattice.
    pub fn new(domain: Domain, radius: f64) -> Self {
        GreedyConfig {
            domain,
            radius,
            stop_radius: radius,
            lattice: ComplexKind::Cech,
        }
    }

    pub fn with_stop_radius(mut self, stop_radius: f64) -> Self {
        self.stop_radius = stop_radius;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("r", self.radius), ("stop_radius", self.stop_radius)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(name, format!("must be finite and > 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// One greedy selection: the chosen candidate and its distance to the
/// nearest vertex at the time it was chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub candidate: usize,
    pub position: Point2,
    pub distance: f64,
}

/// Repeatedly adds the candidate furthest from every vertex (existing and
/// added) until the furthest one is within the stop radius.
pub fn greedy_cover(existing: &[Point2], cfg: &GreedyConfig) -> Result<Vec<Point2>> {
    Ok(greedy_selections(existing, cfg)?.into_iter().map(|s| s.position).collect())
}

/// [`greedy_cover`] with the selection order and distances.
pub fn greedy_selections(existing: &[Point2], cfg: &GreedyConfig) -> Result<Vec<Selection>> {
    cfg.validate()?;
    let candidates = grid_positions(cfg.domain, cfg.radius, cfg.lattice);
    let mut nearest: Vec<f64> = candidates
        .iter()
        .map(|c| existing.iter().map(|p| c.distance(*p)).fold(f64::INFINITY, f64::min))
        .collect();
    let mut chosen = vec![false; candidates.len()];
    let mut out = Vec::new();
    loop {
        // strict comparison keeps the lowest index among ties
        let mut best: Option<(usize, f64)> = None;
        for (i, &d) in nearest.iter().enumerate() {
            if !chosen[i] && best.is_none_or(|(_, bd)| d > bd) {
                best = Some((i, d));
            }
        }
        let Some((pick, dist)) = best else { break };
        if within(dist, cfg.stop_radius) {
            break;
        }
        chosen[pick] = true;
        let p = candidates[pick];
        out.push(Selection {
            candidate: pick,
            position: p,
            distance: dist,
        });
        for (i, c) in candidates.iter().enumerate() {
            nearest[i] = nearest[i].min(c.distance(p));
        }
    }
    Ok(out)
}
