//! Helpers for the acceptance suite: a pass/fail ledger that prints one
//! line per criterion, tolerance checks, and random fixtures.

use std::time::{Duration, Instant};

use coverage_repair::complex::SimplicialComplex2;
use coverage_repair::geometry::{Point2, TaggedPoint};
use rand::Rng;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub details: Vec<String>,
    pub elapsed: Duration,
}

#[derive(Debug, Default)]
pub struct Suite {
    outcomes: Vec<Outcome>,
}

/// Collects the individual checks of one criterion.
#[derive(Debug, Default)]
pub struct Checks {
    details: Vec<String>,
    failed: bool,
}

impl Checks {
    pub fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.details.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        self.failed |= !ok;
    }

    pub fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("     {}", what.into()));
    }

    pub fn passed(&self) -> bool {
        !self.failed
    }
}

impl Suite {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs one criterion, prints its result line and details, and records it.
    pub fn run(&mut self, id: usize, title: &str, f: impl FnOnce(&mut Checks)) {
        let start = Instant::now();
        let mut checks = Checks::default();
        f(&mut checks);
        let outcome = Outcome {
            id,
            title: title.to_string(),
            passed: checks.passed(),
            details: checks.details,
            elapsed: start.elapsed(),
        };
        println!(
            "criterion {}: {} - {} ({:.1} s)",
            outcome.id,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.title,
            outcome.elapsed.as_secs_f64()
        );
        for d in &outcome.details {
            println!("    {d}");
        }
        self.outcomes.push(outcome);
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn summary(&self) -> String {
        let passed = self.outcomes.iter().filter(|o| o.passed).count();
        let failed: Vec<String> = self.outcomes.iter().filter(|o| !o.passed).map(|o| o.id.to_string()).collect();
        if failed.is_empty() {
            format!("acceptance: {passed}/{} criteria passed", self.outcomes.len())
        } else {
            format!(
                "acceptance: {passed}/{} criteria passed; failed: {}",
                self.outcomes.len(),
                failed.join(", ")
            )
        }
    }
}

/// `|measured - reference| <= tolerance * reference`.
pub fn within_relative(measured: f64, reference: f64, tolerance: f64) -> bool {
    (measured - reference).abs() <= tolerance * reference.abs()
}

pub fn relative_error(measured: f64, reference: f64) -> f64 {
    (measured - reference) / reference
}

/// Random closed 2-complex on at most `max_vertices` abstract vertices: a
/// random graph plus a random subset of its triangles.
pub fn random_complex<R: Rng>(rng: &mut R, max_vertices: usize) -> SimplicialComplex2 {
    let n = rng.random_range(1..=max_vertices);
    let density: f64 = rng.random();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random::<f64>() < density {
                edges.push([a, b]);
            }
        }
    }
    let fill: f64 = rng.random();
    let mut triangles = Vec::new();
    for &[a, b] in &edges {
        for c in b + 1..n {
            if edges.contains(&[a, c]) && edges.contains(&[b, c]) && rng.random::<f64>() < fill {
                triangles.push([a, b, c]);
            }
        }
    }
    let points = (0..n).map(|i| TaggedPoint::existing(Point2::new(i as f64, 0.0))).collect();
    SimplicialComplex2::from_simplices(points, &edges, &triangles).expect("closed by construction")
}

/// `n` uniform points in the unit square.
pub fn random_cloud<R: Rng>(rng: &mut R, n: usize) -> Vec<TaggedPoint> {
    (0..n)
        .map(|_| TaggedPoint::existing(Point2::new(rng.random(), rng.random())))
        .collect()
}
