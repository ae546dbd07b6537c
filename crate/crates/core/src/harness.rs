//! Scenario generation and Monte Carlo benchmarking of the repair strategies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baseline::{greedy_cover, GreedyConfig};
use crate::complex::ComplexKind;
use crate::error::{invalid, Result};
use crate::geometry::{coverage_fraction, Domain, Point2, TaggedPoint, DEFAULT_COVERAGE_RESOLUTION};
use crate::placement::{AdditionKind, AdditionStrategy};
use crate::recovery::{run_recovery, RecoveryConfig};
use crate::seeding;

pub const DEFAULT_BAND: f64 = 0.025;
pub const DEFAULT_REPLICATIONS: usize = 200;
/// Replications for publication-grade means.
pub const FULL_REPLICATIONS: usize = 1000;
/// Rejected draws after which the coverage band is doubled.
pub const REJECTIONS_BEFORE_WIDENING: usize = 1000;
pub const DEFAULT_TARGETS: [f64; 4] = [0.2, 0.4, 0.6, 0.8];

/// A family of damaged networks with a given mean initial coverage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub target: f64,
    pub band: f64,
    pub domain: Domain,
    pub radius: f64,
    pub replications: usize,
    pub base_seed: u64,
}

impl Scenario {
    pub fn new(target: f64, radius: f64, replications: usize, base_seed: u64) -> Self {
        Scenario {
            target,
            band: DEFAULT_BAND,
            domain: Domain::unit(),
            radius,
            replications,
            base_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target > 0.0 && self.target < 1.0) {
            return Err(invalid("target", format!("must lie in (0, 1), got {}", self.target)));
        }
        if self.band.is_nan() || self.band <= 0.0 {
            return Err(invalid("band", format!("must be > 0, got {}", self.band)));
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(invalid("r", format!("must be finite and > 0, got {}", self.radius)));
        }
        Ok(())
    }

    /// `"20%"` for a 0.2 target.
    pub fn label(&self) -> String {
        format!("{}%", (self.target * 100.0).round() as i64)
    }

    /// Expected point count of a Boolean model with this mean coverage.
    pub fn boolean_model_count(&self) -> f64 {
        -(1.0 - self.target).ln() * self.domain.area() / (std::f64::consts::PI * self.radius * self.radius)
    }

    fn stream(&self) -> u64 {
        seeding::split(self.base_seed, (self.target * 1e6).round() as u64)
    }

    /// Seed shared by every strategy run on replication `replication`.
    pub fn replication_seed(&self, replication: usize) -> u64 {
        seeding::split(self.stream(), replication as u64)
    }
}

/// Uniform existing vertices whose coverage lies within `target ± band`.
///
/// Point counts are Poisson with the Boolean-model mean; draws outside the
/// band are rejected, which shifts the accepted counts to make up for disks
/// cut by the border. The band doubles every
/// [`REJECTIONS_BEFORE_WIDENING`] rejections.
pub fn generate_scenario(s: &Scenario, replication: usize) -> Result<Vec<TaggedPoint>> {
    s.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.replication_seed(replication));
    let counts = Poisson::new(s.boolean_model_count()).map_err(|e| invalid("target", e.to_string()))?;
    let side = s.domain.side();
    let mut band = s.band;
    let mut rejected = 0usize;
    loop {
        let n = counts.sample(&mut rng) as usize;
        let pts: Vec<Point2> = (0..n)
            .map(|_| Point2::new(rng.random::<f64>() * side, rng.random::<f64>() * side))
            .collect();
        let cov = coverage_fraction(&pts, s.radius, s.domain, DEFAULT_COVERAGE_RESOLUTION)?;
        if (cov - s.target).abs() <= band {
            return Ok(pts.into_iter().map(TaggedPoint::existing).collect());
        }
        rejected += 1;
        if rejected.is_multiple_of(REJECTIONS_BEFORE_WIDENING) {
            band *= 2.0;
            log::warn!(
                "scenario {} replication {replication}: {rejected} rejections, widening band to {band}",
                s.label()
            );
        }
    }
}

/// A strategy compared by the benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BenchStrategy {
    /// Addition followed by the homology-preserving reduction.
    Homology(AdditionKind),
    /// Greedy lattice set cover.
    Greedy,
}

impl BenchStrategy {
    pub fn label(&self) -> &'static str {
        match self {
            BenchStrategy::Homology(k) => k.label(),
            BenchStrategy::Greedy => "greedy",
        }
    }

    fn stream(&self) -> u64 {
        match self {
            BenchStrategy::Homology(AdditionKind::Grid) => 1,
            BenchStrategy::Homology(AdditionKind::Uniform) => 2,
            BenchStrategy::Homology(AdditionKind::Determinantal) => 3,
            BenchStrategy::Greedy => 4,
        }
    }
}

impl std::fmt::Display for BenchStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for BenchStrategy {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("greedy") {
            Ok(BenchStrategy::Greedy)
        } else {
            s.parse().map(BenchStrategy::Homology)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchOptions {
    pub complex: ComplexKind,
    /// Stop radius of the greedy baseline, in units of the coverage radius.
    pub greedy_stop_factor: f64,
    pub max_iterations: usize,
    pub rounds: crate::recovery::AdditionRounds,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            complex: ComplexKind::Rips,
            greedy_stop_factor: 2.0,
            max_iterations: crate::recovery::DEFAULT_MAX_ITERATIONS,
            rounds: crate::recovery::AdditionRounds::Redraw,
            jobs: 0,
        }
    }
}

/// Outcome of one (scenario, strategy, replication) run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub scenario: String,
    pub strategy: String,
    pub replication: usize,
    pub existing: usize,
    pub initial_coverage: f64,
    /// Vertices placed before the reduction (greedy: its output size).
    pub added: Option<usize>,
    /// Vertices kept after the reduction.
    pub kept: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub scenario: String,
    pub target: f64,
    pub strategy: String,
    /// Successful runs the means are taken over.
    pub reps: usize,
    pub failures: usize,
    pub mean_added: f64,
    pub mean_final: f64,
    pub stderr_added: f64,
    pub stderr_final: f64,
}

pub const CSV_HEADER: &str = "scenario,strategy,reps,mean_added,mean_final,stderr";

impl BenchRow {
    /// One CSV line; `stderr` is the standard error of `mean_added`.
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{:.3},{:.3},{:.3}",
            self.scenario, self.strategy, self.reps, self.mean_added, self.mean_final, self.stderr_added
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub runs: Vec<RunRecord>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }

    /// Whitespace-separated `coverage mean_added mean_final` lines for one strategy.
    pub fn plot_data(&self, strategy: &str) -> String {
        let mut out = String::from("# coverage mean_added mean_final\n");
        for row in self.rows.iter().filter(|r| r.strategy == strategy) {
            out.push_str(&format!("{:.2} {:.3} {:.3}\n", row.target, row.mean_added, row.mean_final));
        }
        out
    }

    pub fn row(&self, scenario: &str, strategy: &str) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.scenario == scenario && r.strategy == strategy)
    }
}

fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

fn run_one(s: &Scenario, strategy: BenchStrategy, replication: usize, opts: &BenchOptions) -> RunRecord {
    let mut record = RunRecord {
        scenario: s.label(),
        strategy: strategy.label().to_string(),
        replication,
        existing: 0,
        initial_coverage: 0.0,
        added: None,
        kept: None,
        error: None,
    };
    let existing = match generate_scenario(s, replication) {
        Ok(e) => e,
        Err(e) => {
            record.error = Some(e.to_string());
            return record;
        }
    };
    let positions: Vec<Point2> = existing.iter().map(|p| p.position()).collect();
    record.existing = existing.len();
    record.initial_coverage =
        coverage_fraction(&positions, s.radius, s.domain, DEFAULT_COVERAGE_RESOLUTION).unwrap_or(f64::NAN);
    let seed = seeding::split(s.replication_seed(replication), strategy.stream());
    match strategy {
        BenchStrategy::Greedy => {
            let cfg = GreedyConfig::new(s.domain, s.radius).with_stop_radius(opts.greedy_stop_factor * s.radius);
            match greedy_cover(&positions, &cfg) {
                Ok(out) => {
                    record.added = Some(out.len());
                    record.kept = Some(out.len());
                }
                Err(e) => record.error = Some(e.to_string()),
            }
        }
        BenchStrategy::Homology(kind) => {
            let mut cfg = RecoveryConfig::new(s.radius, s.domain, AdditionStrategy::new(kind, opts.complex), seed);
            cfg.max_iterations = opts.max_iterations;
            cfg.rounds = opts.rounds;
            match run_recovery(&existing, &cfg) {
                Ok(res) => {
                    record.added = Some(res.added);
                    record.kept = Some(res.final_count());
                }
                Err(e) => record.error = Some(e.to_string()),
            }
        }
    }
    record
}

/// Runs every strategy on `replications` draws of every scenario.
///
/// All strategies see the same existing networks for a given replication.
/// Rows come out scenario-major in input order, whatever the thread count.
pub fn run_benchmark(scenarios: &[Scenario], strategies: &[BenchStrategy], opts: &BenchOptions) -> Result<BenchReport> {
    for s in scenarios {
        s.validate()?;
        if s.replications == 0 {
            return Err(invalid("replications", "must be >= 1"));
        }
    }
    let jobs: Vec<(usize, BenchStrategy, usize)> = scenarios
        .iter()
        .enumerate()
        .flat_map(|(si, s)| strategies.iter().flat_map(move |&st| (0..s.replications).map(move |rep| (si, st, rep))))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| invalid("jobs", e.to_string()))?;
    let runs: Vec<RunRecord> =
        pool.install(|| jobs.par_iter().map(|&(si, st, rep)| run_one(&scenarios[si], st, rep, opts)).collect());

    let mut rows = Vec::new();
    for (si, s) in scenarios.iter().enumerate() {
        for st in strategies {
            let mine: Vec<&RunRecord> = jobs
                .iter()
                .zip(&runs)
                .filter(|((jsi, jst, _), _)| *jsi == si && jst == st)
                .map(|(_, r)| r)
                .collect();
            let ok: Vec<&RunRecord> = mine.iter().copied().filter(|r| r.error.is_none()).collect();
            let failures = mine.len() - ok.len();
            if failures > 0 {
                log::warn!("{} / {}: {failures} failed runs excluded", s.label(), st.label());
            }
            let added: Vec<f64> = ok.iter().filter_map(|r| r.added).map(|v| v as f64).collect();
            let kept: Vec<f64> = ok.iter().filter_map(|r| r.kept).map(|v| v as f64).collect();
            let (mean_added, stderr_added) = mean_and_stderr(&added);
            let (mean_final, stderr_final) = mean_and_stderr(&kept);
            rows.push(BenchRow {
                scenario: s.label(),
                target: s.target,
                strategy: st.label().to_string(),
                reps: ok.len(),
                failures,
                mean_added,
                mean_final,
                stderr_added,
                stderr_final,
            });
        }
    }
    Ok(BenchReport { rows, runs })
}

/// The 20/40/60/80% scenarios at `a = 1`, `r = 0.25`.
pub fn standard_scenarios(replications: usize, base_seed: u64) -> Vec<Scenario> {
    DEFAULT_TARGETS
        .iter()
        .map(|&t| Scenario::new(t, 0.25, replications, base_seed))
        .collect()
}
