//! End-to-end repair: add candidate vertices until the complex is connected
//! and hole-free, then remove superfluous candidates without changing the
//! homology.
//!
//! Removal order comes from two quantities. The *degree* of a triangle is
//! the dimension of the largest simplex containing it; in a flag complex
//! that is two plus the clique number of the triangle's common
//! neighbourhood. The *index* of a vertex is the smallest degree among its
//! triangles. High-index vertices sit in redundantly covered areas and are
//! tried first. A negative index marks a vertex as unremovable.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clique::SmallGraph;
use crate::complex::{BettiPair, ComplexKind, SimplicialComplex2};
use crate::error::{invalid, Error, Result};
use crate::geometry::{Domain, Point2, Tag, TaggedPoint};
use crate::placement::{place, required_additions, AdditionKind, AdditionStrategy};
use crate::seeding;

pub const DEFAULT_MAX_ITERATIONS: usize = 30;
pub const UNREMOVABLE: i64 = -1;

/// Fictional perimeter vertices: `ceil(a / r)` equal steps per side,
/// corners included, so consecutive points are at most `r` apart.
pub fn boundary_points(domain: Domain, r: f64) -> Result<Vec<TaggedPoint>> {
    if !(r.is_finite() && r > 0.0) {
        return Err(invalid("r", format!("must be finite and > 0, got {r}")));
    }
    let a = domain.side();
    let steps = ((a / r) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    let mut out = Vec::with_capacity(4 * steps);
    // counter-clockwise from the origin
    for side in 0..4 {
        for i in 0..steps {
            let t = a * i as f64 / steps as f64;
            let p = match side {
                0 => Point2::new(t, 0.0),
                1 => Point2::new(a, t),
                2 => Point2::new(a - t, a),
                _ => Point2::new(0.0, a - t),
            };
            out.push(TaggedPoint::boundary(p));
        }
    }
    Ok(out)
}

/// Per-vertex removal index; negative values mark unremovable vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexIndex {
    values: Vec<i64>,
}

impl VertexIndex {
    /// Nothing flagged yet; every value starts at 0.
    pub fn unflagged(n: usize) -> Self {
        VertexIndex { values: vec![0; n] }
    }

    /// Flags every Existing and Boundary vertex of `x`.
    pub fn protecting_fixed(x: &SimplicialComplex2) -> Self {
        let mut idx = Self::unflagged(x.points().len());
        for (v, p) in x.points().iter().enumerate() {
            if p.tag() != Tag::Added {
                idx.flag(v);
            }
        }
        idx
    }

    pub fn flag(&mut self, v: usize) {
        self.values[v] = UNREMOVABLE;
    }

    pub fn is_flagged(&self, v: usize) -> bool {
        self.values[v] < 0
    }

    pub fn get(&self, v: usize) -> i64 {
        self.values[v]
    }

    fn set(&mut self, v: usize, value: i64) {
        self.values[v] = value;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Dimension of the largest simplex of the flag complex containing `t`.
pub fn triangle_degree(x: &SimplicialComplex2, t: [usize; 3]) -> Result<usize> {
    if !x.contains_triangle(t) {
        return Err(Error::UnknownTriangle(t[0], t[1], t[2]));
    }
    let graph = adjacency_graph(x);
    Ok(degree_in(&graph, t, usize::MAX))
}

/// Min over incident triangles of [`triangle_degree`], 0 when `v` is in no
/// triangle, and the stored negative value for flagged vertices.
pub fn vertex_index(x: &SimplicialComplex2, v: usize, flags: &VertexIndex) -> Result<i64> {
    if !x.contains_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    if flags.is_flagged(v) {
        return Ok(flags.get(v));
    }
    Ok(index_in(x, &adjacency_graph(x), v))
}

fn adjacency_graph(x: &SimplicialComplex2) -> SmallGraph {
    let mut g = SmallGraph::new(x.points().len());
    for &[a, b] in x.edges() {
        g.add_edge(a, b);
    }
    g
}

/// Degree capped at `cap`: exact whenever the true degree is below `cap`.
fn degree_in(graph: &SmallGraph, t: [usize; 3], cap: usize) -> usize {
    let common: Vec<u64> = graph
        .row(t[0])
        .iter()
        .zip(graph.row(t[1]))
        .zip(graph.row(t[2]))
        .map(|((a, b), c)| a & b & c)
        .collect();
    2 + graph.max_clique_within(&common, cap.saturating_sub(2))
}

fn index_in(x: &SimplicialComplex2, graph: &SmallGraph, v: usize) -> i64 {
    let mut best: Option<usize> = None;
    for t in x.triangles_of(v) {
        let cap = best.unwrap_or(usize::MAX);
        if cap <= 2 {
            break;
        }
        let d = degree_in(graph, t, cap);
        if d < cap {
            best = Some(d);
        }
    }
    best.map_or(0, |d| d as i64)
}

/// One tentative removal during the reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub vertex: usize,
    pub index: i64,
    pub accepted: bool,
    /// Betti numbers of the complex with the vertex removed.
    pub betti_without: BettiPair,
    /// Vertex count after the step.
    pub vertices: usize,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub complex: SimplicialComplex2,
    pub removed: Vec<usize>,
    pub flags: VertexIndex,
    pub trace: Vec<ReductionStep>,
}

/// Removes vertices of highest index while the Betti numbers stay (1, 0).
///
/// Ties are broken with an RNG seeded by `seed`. A vertex whose removal
/// changes the homology is flagged. When every vertex is flagged, kept
/// vertices are re-tested against the final complex; if any became
/// removable the loop resumes, so no removable vertex remains on return.
pub fn reduce(x: &SimplicialComplex2, flags: &VertexIndex, seed: u64) -> Result<Reduction> {
    let start = x.betti();
    if !start.is_covered() {
        return Err(Error::NotCovered {
            beta0: start.beta0,
            beta1: start.beta1,
        });
    }
    if flags.len() != x.points().len() {
        return Err(invalid("flags", "one entry per vertex id is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut complex = x.clone();
    let mut graph = adjacency_graph(&complex);
    let mut index = flags.clone();
    let mut rejected: BTreeSet<usize> = BTreeSet::new();
    let mut removed = Vec::new();
    let mut trace = Vec::new();

    let candidates: Vec<usize> = complex.vertex_ids().filter(|&v| !flags.is_flagged(v)).collect();
    for &v in &candidates {
        index.set(v, index_in(&complex, &graph, v));
    }

    loop {
        let open: Vec<usize> = complex.vertex_ids().filter(|&v| !index.is_flagged(v)).collect();
        if open.is_empty() {
            // final sweep against the current complex
            let revived: Vec<usize> = rejected
                .iter()
                .copied()
                .filter(|&v| complex.remove_vertex(v).map(|c| c.betti().is_covered()).unwrap_or(false))
                .collect();
            if revived.is_empty() {
                break;
            }
            log::debug!("reduction sweep revived {} vertices", revived.len());
            for v in std::mem::take(&mut rejected) {
                index.set(v, index_in(&complex, &graph, v));
            }
            continue;
        }
        let top = open.iter().map(|&v| index.get(v)).max().expect("non-empty");
        let ties: Vec<usize> = open.into_iter().filter(|&v| index.get(v) == top).collect();
        let pick = ties[rng.random_range(0..ties.len())];

        let trial = complex.remove_vertex(pick)?;
        let betti = trial.betti();
        let accepted = betti.is_covered();
        if accepted {
            let mut affected: BTreeSet<usize> = BTreeSet::new();
            for &u in complex.neighbors(pick) {
                affected.insert(u);
                affected.extend(complex.neighbors(u).iter().copied());
            }
            affected.remove(&pick);
            complex = trial;
            graph.isolate(pick);
            removed.push(pick);
            for u in affected {
                if !index.is_flagged(u) {
                    index.set(u, index_in(&complex, &graph, u));
                }
            }
        } else {
            index.flag(pick);
            rejected.insert(pick);
        }
        trace.push(ReductionStep {
            vertex: pick,
            index: top,
            accepted,
            betti_without: betti,
            vertices: complex.num_vertices(),
        });
    }

    Ok(Reduction {
        complex,
        removed,
        flags: index,
        trace,
    })
}

/// Which perimeter vertices take part in the complex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BoundarySpec {
    /// [`boundary_points`] at the run's radius.
    Auto,
    /// Caller-supplied perimeter vertices.
    Custom(Vec<Point2>),
    /// No boundary: only connectivity and holes among real vertices count.
    Disabled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryConfig {
    pub radius: f64,
    pub domain: Domain,
    pub strategy: AdditionStrategy,
    pub seed: u64,
    pub max_iterations: usize,
    pub boundary: BoundarySpec,
    pub rounds: AdditionRounds,
}

/// What a new addition round does with the previous round's vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdditionRounds {
    /// Discard them and draw the whole new budget afresh.
    Redraw,
    /// Keep them and draw the new budget on top.
    Accumulate,
}

impl RecoveryConfig {
    pub fn new(radius: f64, domain: Domain, strategy: AdditionStrategy, seed: u64) -> Self {
        RecoveryConfig {
            radius,
            domain,
            strategy,
            seed,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            boundary: BoundarySpec::Auto,
            rounds: AdditionRounds::Redraw,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(invalid("r", format!("must be finite and > 0, got {}", self.radius)));
        }
        if self.max_iterations == 0 {
            return Err(invalid("max_iterations", "must be >= 1"));
        }
        Ok(())
    }

    pub fn boundary_points(&self) -> Result<Vec<TaggedPoint>> {
        match &self.boundary {
            BoundarySpec::Auto => boundary_points(self.domain, self.radius),
            BoundarySpec::Custom(pts) => Ok(pts.iter().copied().map(TaggedPoint::boundary).collect()),
            BoundarySpec::Disabled => Ok(Vec::new()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryResult {
    /// Added vertices that survived the reduction.
    pub kept: Vec<Point2>,
    /// Added vertices removed by the reduction.
    pub removed: Vec<Point2>,
    pub betti: BettiPair,
    /// Addition budget of every round, the last one being the one kept.
    pub budgets: Vec<usize>,
    /// Added vertices in the complex when the addition loop stopped.
    pub added: usize,
    pub reduction: Vec<ReductionStep>,
    pub seed: u64,
}

impl RecoveryResult {
    pub fn final_count(&self) -> usize {
        self.kept.len()
    }
}

/// Adds vertices until the complex on existing, boundary and added points
/// has Betti numbers (1, 0), then reduces the added set.
///
/// Random strategies start from [`required_additions`] and place again with
/// a budget grown by `1, 2, 4, ...` while the complex is not covered; see
/// [`AdditionRounds`]. The grid
/// strategy places its lattice once.
pub fn run_recovery(existing: &[TaggedPoint], cfg: &RecoveryConfig) -> Result<RecoveryResult> {
    cfg.validate()?;
    let (existing, boundary) = split_inputs(existing, cfg)?;
    let r = cfg.radius;
    let d = cfg.domain;
    let kind = cfg.strategy.complex;

    let mut base = existing.clone();
    base.extend(boundary);

    let mut budget = required_additions(d.side(), r, existing.len());
    let mut step = 1usize;
    let mut budgets = Vec::new();
    let mut round = 0u64;
    let mut added: Vec<TaggedPoint> = Vec::new();
    let (complex, added) = loop {
        let fresh = match cfg.rounds {
            AdditionRounds::Redraw => {
                added.clear();
                place(cfg.strategy, budget, &existing, d, r, seeding::split(cfg.seed, round))?
            }
            AdditionRounds::Accumulate => {
                let mut placed = existing.clone();
                placed.extend(added.iter().copied());
                place(cfg.strategy, budget, &placed, d, r, seeding::split(cfg.seed, round))?
            }
        };
        budgets.push(fresh.len());
        added.extend(fresh);
        let mut all = base.clone();
        all.extend(added.iter().copied());
        let complex = SimplicialComplex2::build(&all, r, kind)?;
        let betti = complex.betti();
        if betti.is_covered() {
            break (complex, added.len());
        }
        if !cfg.strategy.kind.is_random() {
            return Err(Error::StrategyExhausted {
                strategy: cfg.strategy.kind.label(),
                beta0: betti.beta0,
                beta1: betti.beta1,
            });
        }
        round += 1;
        if round as usize > cfg.max_iterations {
            return Err(Error::LoopCapExceeded {
                iterations: cfg.max_iterations,
            });
        }
        budget += step;
        step *= 2;
    };

    let flags = VertexIndex::protecting_fixed(&complex);
    let reduction = reduce(&complex, &flags, seeding::split(cfg.seed, u64::MAX))?;
    let removed_set: BTreeSet<usize> = reduction.removed.iter().copied().collect();
    let point = |v: usize| complex.point(v).expect("vertex id").position();
    let kept: Vec<Point2> = reduction
        .complex
        .vertex_ids()
        .filter(|&v| complex.point(v).map(|p| p.tag()) == Some(Tag::Added))
        .map(point)
        .collect();
    let removed = reduction.removed.iter().map(|&v| point(v)).collect();
    debug_assert!(kept.len() + removed_set.len() == added);

    Ok(RecoveryResult {
        kept,
        removed,
        betti: reduction.complex.betti(),
        budgets,
        added,
        reduction: reduction.trace,
        seed: cfg.seed,
    })
}

/// Splits caller points into existing and boundary vertices, applying the
/// configured boundary when the caller supplied none.
fn split_inputs(points: &[TaggedPoint], cfg: &RecoveryConfig) -> Result<(Vec<TaggedPoint>, Vec<TaggedPoint>)> {
    let mut existing = Vec::new();
    let mut boundary = Vec::new();
    for p in points {
        let pos = p.position();
        if !pos.is_finite() || !cfg.domain.contains(pos) {
            return Err(invalid("existing", format!("point ({}, {}) lies outside the domain", pos.x, pos.y)));
        }
        match p.tag() {
            Tag::Existing => existing.push(*p),
            Tag::Boundary => boundary.push(*p),
            Tag::Added => return Err(invalid("existing", "input points must not be tagged Added")),
        }
    }
    if boundary.is_empty() {
        boundary = cfg.boundary_points()?;
    }
    Ok((existing, boundary))
}

/// Builds the complex on existing, boundary and kept points of a result.
pub fn final_complex(
    existing: &[TaggedPoint],
    cfg: &RecoveryConfig,
    result: &RecoveryResult,
) -> Result<SimplicialComplex2> {
    let (mut all, boundary) = split_inputs(existing, cfg)?;
    all.extend(boundary);
    all.extend(result.kept.iter().copied().map(TaggedPoint::added));
    SimplicialComplex2::build(&all, cfg.radius, cfg.strategy.complex)
}

/// Checks a recovery result against the input it came from and returns a
/// description of every violated post-condition: the final complex must be
/// covered, kept and removed vertices must be disjoint added vertices, and
/// every kept vertex must be needed.
pub fn audit(existing: &[TaggedPoint], cfg: &RecoveryConfig, result: &RecoveryResult) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let x = final_complex(existing, cfg, result)?;
    let betti = x.betti();
    if !betti.is_covered() || betti != result.betti {
        problems.push(format!("final complex has Betti {betti:?}, result reports {:?}", result.betti));
    }
    // existing and boundary vertices come first in the recovery complex
    let (ex, bd) = split_inputs(existing, cfg)?;
    let fixed = ex.len() + bd.len();
    for step in result.reduction.iter().filter(|s| s.vertex < fixed) {
        problems.push(format!("fixed vertex {} was a removal candidate (accepted: {})", step.vertex, step.accepted));
    }
    for p in &result.kept {
        if result.removed.contains(p) {
            problems.push(format!("({}, {}) is both kept and removed", p.x, p.y));
        }
    }
    for v in x.vertex_ids().filter(|&v| x.points()[v].tag() == Tag::Added) {
        if x.remove_vertex(v)?.betti().is_covered() {
            let p = x.points()[v].position();
            problems.push(format!("kept vertex ({}, {}) is removable", p.x, p.y));
        }
    }
    Ok(problems)
}

/// Convenience: the Rips strategy configuration used by the benchmarks.
pub fn rips_config(kind: AdditionKind, radius: f64, domain: Domain, seed: u64) -> RecoveryConfig {
    RecoveryConfig::new(radius, domain, AdditionStrategy::new(kind, ComplexKind::Rips), seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::placement::covering_lattice;

    fn abstract_points(n: usize) -> Vec<TaggedPoint> {
        (0..n).map(|i| TaggedPoint::added(Point2::new(i as f64, 0.0))).collect()
    }

    /// Flag complex on `n` abstract vertices with the given cliques filled in.
    fn flag_complex(n: usize, cliques: &[&[usize]]) -> SimplicialComplex2 {
        let mut edges = BTreeSet::new();
        let mut triangles = BTreeSet::new();
        for c in cliques {
            for (i, &a) in c.iter().enumerate() {
                for (j, &b) in c.iter().enumerate().skip(i + 1) {
                    edges.insert([a.min(b), a.max(b)]);
                    for &d in &c[j + 1..] {
                        let mut t = [a, b, d];
                        t.sort_unstable();
                        triangles.insert(t);
                    }
                }
            }
        }
        let edges: Vec<_> = edges.into_iter().collect();
        let triangles: Vec<_> = triangles.into_iter().collect();
        SimplicialComplex2::from_simplices(abstract_points(n), &edges, &triangles).unwrap()
    }

    #[test]
    fn degree_examples() {
        let x = flag_complex(3, &[&[0, 1, 2]]);
        assert_eq!(triangle_degree(&x, [0, 1, 2]).unwrap(), 2);
        let x = flag_complex(4, &[&[0, 1, 2, 3]]);
        assert_eq!(triangle_degree(&x, [0, 1, 2]).unwrap(), 3);
        let x = flag_complex(5, &[&[0, 1, 2, 3, 4]]);
        assert_eq!(triangle_degree(&x, [1, 2, 4]).unwrap(), 4);
        assert!(triangle_degree(&x, [0, 1, 9]).is_err());
    }

    #[test]
    fn index_examples() {
        let flags = VertexIndex::unflagged(6);
        let x = flag_complex(6, &[&[0, 1, 2]]);
        assert_eq!(vertex_index(&x, 2, &flags).unwrap(), 2);
        let x = flag_complex(6, &[&[0, 1, 2, 3], &[0, 4, 5]]);
        assert_eq!(vertex_index(&x, 0, &flags).unwrap(), 2);
        assert_eq!(vertex_index(&x, 1, &flags).unwrap(), 3);
        let x = flag_complex(6, &[&[0, 1, 2]]);
        assert_eq!(vertex_index(&x, 5, &flags).unwrap(), 0);
        let mut flagged = VertexIndex::unflagged(6);
        flagged.flag(1);
        assert_eq!(vertex_index(&x, 1, &flagged).unwrap(), UNREMOVABLE);
    }

    #[test]
    fn boundary_examples() {
        let d = Domain::unit();
        assert_eq!(boundary_points(d, 0.25).unwrap().len(), 16);
        assert_eq!(boundary_points(d, 0.5).unwrap().len(), 8);
        for (a, r) in [(1.0, 0.25), (1.0, 0.3), (2.5, 0.4), (1.0, 1.5), (3.0, 0.07)] {
            let pts = boundary_points(Domain::new(a).unwrap(), r).unwrap();
            assert!(pts.iter().all(|p| p.tag() == Tag::Boundary));
            for (i, p) in pts.iter().enumerate() {
                let q = pts[(i + 1) % pts.len()];
                assert!(p.position().distance(q.position()) <= r + 1e-12, "a={a} r={r}");
            }
            for corner in [(0.0, 0.0), (a, 0.0), (a, a), (0.0, a)] {
                assert!(pts.iter().any(|p| p.position() == Point2::from(corner)));
            }
        }
    }

    #[test]
    fn reduce_with_everything_flagged_removes_nothing() {
        let d = Domain::unit();
        let mut all = boundary_points(d, 0.25).unwrap();
        all.extend(covering_lattice(d, 0.25).into_iter().map(TaggedPoint::existing));
        let x = SimplicialComplex2::build(&all, 0.25, ComplexKind::Rips).unwrap();
        let mut flags = VertexIndex::unflagged(all.len());
        for v in 0..all.len() {
            flags.flag(v);
        }
        let red = reduce(&x, &flags, 1).unwrap();
        assert!(red.removed.is_empty());
        assert_eq!(red.complex.edges(), x.edges());
        assert_eq!(red.complex.triangles(), x.triangles());
    }

    #[test]
    fn duplicate_of_an_existing_vertex_is_removed() {
        let d = Domain::unit();
        let mut all = boundary_points(d, 0.25).unwrap();
        all.extend(covering_lattice(d, 0.25).into_iter().map(TaggedPoint::existing));
        all.push(TaggedPoint::added(Point2::new(0.5, 0.5)));
        let dup = all.len() - 1;
        let x = SimplicialComplex2::build(&all, 0.25, ComplexKind::Rips).unwrap();
        assert!(x.betti().is_covered());
        let red = reduce(&x, &VertexIndex::protecting_fixed(&x), 4).unwrap();
        assert_eq!(red.removed, vec![dup]);
        assert!(red.complex.betti().is_covered());
    }

    #[test]
    fn grid_reduction_trace_stays_covered() {
        let d = Domain::unit();
        let mut all = boundary_points(d, 0.25).unwrap();
        all.extend(covering_lattice(d, 0.25).into_iter().map(TaggedPoint::added));
        let x = SimplicialComplex2::build(&all, 0.25, ComplexKind::Rips).unwrap();
        let red = reduce(&x, &VertexIndex::protecting_fixed(&x), 9).unwrap();
        let mut last = x.num_vertices();
        for step in &red.trace {
            assert_eq!(step.accepted, step.betti_without.is_covered());
            assert!(step.vertices <= last);
            last = step.vertices;
            assert_eq!(all[step.vertex].tag(), Tag::Added);
        }
        assert!(red.complex.betti().is_covered());
    }

    #[test]
    fn reduce_rejects_uncovered_input() {
        let x = flag_complex(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        assert!(matches!(
            reduce(&x, &VertexIndex::unflagged(4), 0),
            Err(Error::NotCovered { beta0: 1, beta1: 1 })
        ));
    }

    #[test]
    fn dense_network_needs_nothing() {
        let d = Domain::unit();
        let existing: Vec<TaggedPoint> = crate::placement::grid_positions(d, 0.2, ComplexKind::Cech)
            .into_iter()
            .map(TaggedPoint::existing)
            .collect();
        for kind in [AdditionKind::Grid, AdditionKind::Uniform, AdditionKind::Determinantal] {
            let res = run_recovery(&existing, &rips_config(kind, 0.25, d, 3)).unwrap();
            assert!(res.kept.is_empty(), "{kind}");
            assert!(res.betti.is_covered());
        }
    }

    #[test]
    fn grid_on_an_empty_network() {
        let d = Domain::unit();
        let res = run_recovery(&[], &rips_config(AdditionKind::Grid, 0.25, d, 7)).unwrap();
        assert_eq!(res.added, 9);
        assert!(res.kept.len() <= 9);
        assert_eq!(res.kept.len() + res.removed.len(), 9);
        assert!(res.betti.is_covered());
    }

    #[test]
    fn recovery_is_deterministic() {
        let d = Domain::unit();
        let existing = vec![
            TaggedPoint::existing(Point2::new(0.2, 0.7)),
            TaggedPoint::existing(Point2::new(0.8, 0.3)),
        ];
        for kind in [AdditionKind::Uniform, AdditionKind::Determinantal] {
            let cfg = rips_config(kind, 0.25, d, 42);
            let a = run_recovery(&existing, &cfg).unwrap();
            assert_eq!(a, run_recovery(&existing, &cfg).unwrap());
            let x = final_complex(&existing, &cfg, &a).unwrap();
            assert!(x.betti().is_covered());
        }
    }

    #[test]
    fn accumulated_rounds_keep_earlier_vertices() {
        let d = Domain::unit();
        let mut cfg = rips_config(AdditionKind::Uniform, 0.25, d, 8);
        cfg.rounds = AdditionRounds::Accumulate;
        let res = run_recovery(&[], &cfg).unwrap();
        assert_eq!(res.added, res.budgets.iter().sum::<usize>());
        cfg.rounds = AdditionRounds::Redraw;
        let res = run_recovery(&[], &cfg).unwrap();
        assert_eq!(res.added, *res.budgets.last().unwrap());
    }

    #[test]
    fn invalid_inputs() {
        let d = Domain::unit();
        let cfg = rips_config(AdditionKind::Uniform, 0.25, d, 1);
        let outside = [TaggedPoint::existing(Point2::new(1.5, 0.5))];
        assert!(matches!(run_recovery(&outside, &cfg), Err(Error::InvalidParameter { .. })));
        let added = [TaggedPoint::added(Point2::new(0.5, 0.5))];
        assert!(run_recovery(&added, &cfg).is_err());
        let mut bad = cfg.clone();
        bad.radius = 0.0;
        assert!(run_recovery(&[], &bad).is_err());
        bad = cfg;
        bad.max_iterations = 0;
        assert!(run_recovery(&[], &bad).is_err());
    }
}
