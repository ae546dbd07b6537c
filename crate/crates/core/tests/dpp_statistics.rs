use coverage_repair::dpp::{sample_conditioned, GinibreKernel, SamplerState, Window, ORTHONORMALITY_TOLERANCE};
use coverage_repair::geometry::{Domain, Point2};
use coverage_repair::placement::uniform_positions;

const POINTS: usize = 20;

fn mean_nn(pts: &[Point2]) -> f64 {
    let total: f64 = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            pts.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| p.distance(*q))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    total / pts.len() as f64
}

fn close_pairs(pts: &[Point2], radius: f64) -> usize {
    let mut n = 0;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            if p.distance(*q) < radius {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn determinantal_samples_repel() {
    let d = Domain::unit();
    let seeds = 500u64;
    let radius = 0.3 / (POINTS as f64).sqrt();
    let (mut nn_dpp, mut nn_uni) = (0.0, 0.0);
    let (mut pairs_dpp, mut pairs_uni) = (0usize, 0usize);
    for seed in 0..seeds {
        let dpp = sample_conditioned(POINTS, &[], d, seed).unwrap();
        let uni = uniform_positions(POINTS, d, seed);
        assert_eq!(dpp.len(), POINTS);
        assert!(dpp.iter().all(|p| d.contains(*p)));
        nn_dpp += mean_nn(&dpp);
        nn_uni += mean_nn(&uni);
        pairs_dpp += close_pairs(&dpp, radius);
        pairs_uni += close_pairs(&uni, radius);
    }
    assert!(nn_dpp >= 1.1 * nn_uni, "nearest neighbour {nn_dpp} vs {nn_uni}");
    let ratio = pairs_dpp as f64 / pairs_uni as f64;
    assert!(ratio < 0.7, "pair correlation ratio {ratio} ({pairs_dpp} / {pairs_uni})");
}

#[test]
fn first_point_has_no_preferred_direction() {
    let d = Domain::unit();
    let bins = 16;
    let seeds = 2000;
    let mut counts = vec![0usize; bins];
    for seed in 0..seeds {
        let kernel = GinibreKernel::for_counts(0, POINTS, d);
        let mut state = SamplerState::with_window(kernel, Window::Disk, seed);
        let p = state.draw().unwrap();
        let theta = (p.y - d.center().y).atan2(p.x - d.center().x) + std::f64::consts::PI;
        let bin = ((theta / std::f64::consts::TAU * bins as f64) as usize).min(bins - 1);
        counts[bin] += 1;
    }
    let expected = seeds as f64 / bins as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 99th percentile of chi-square with 15 degrees of freedom
    assert!(chi2 < 30.578, "chi-square {chi2}, counts {counts:?}");
}

#[test]
fn basis_stays_orthonormal_through_a_long_run() {
    let d = Domain::unit();
    let existing: Vec<Point2> = uniform_positions(15, d, 77);
    let kernel = GinibreKernel::for_counts(existing.len(), 30, d);
    let mut state = SamplerState::new(kernel, 3);
    for p in &existing {
        assert!(state.condition_on(*p));
        assert!(state.orthonormality_error() < ORTHONORMALITY_TOLERANCE);
    }
    for _ in 0..30 {
        let p = state.draw().unwrap();
        assert!(d.contains(p));
        assert!(state.orthonormality_error() < ORTHONORMALITY_TOLERANCE);
        assert!(state.conditional_density(p) < 1e-8);
    }
    assert_eq!(state.rank(), 45);
}
