//! Truncated Ginibre determinantal point process restricted to the domain
//! square, sampled sequentially and conditioned on already-placed points.
//!
//! A point `p` of the domain maps to `z = (p - centre) / scale` in the
//! sampling plane, where `scale` sends the disk of radius `sqrt(N)` onto the
//! circle through the corners of the square. The kernel is the rank-`N`
//! projection `K(z, w) = sum_{k < N} phi_k(z) conj(phi_k(w))`. Each draw
//! samples from `|P_perp Phi(z)|^2`, the squared norm of the feature vector
//! projected off the span of the features of every placed point.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::geometry::{Domain, Point2};

/// Extra basis functions beyond the number of points to place.
pub const TRUNCATION_MARGIN: f64 = 0.25;
/// Probe lattice used to bound the conditional density.
pub const PROBE_RESOLUTION: usize = 64;
pub const ENVELOPE_SAFETY: f64 = 1.5;
pub const MAX_PROPOSALS: usize = 200_000;
pub const ORTHONORMALITY_TOLERANCE: f64 = 1e-9;

/// `phi_k(z) = exp(-|z|^2 / 2) z^k / sqrt(pi k!)`, evaluated in log space.
pub fn basis_eval(k: usize, z: Complex64) -> Complex64 {
    let modulus = z.norm();
    if modulus == 0.0 {
        return if k == 0 {
            Complex64::new(std::f64::consts::PI.sqrt().recip(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let log_mag = -modulus * modulus / 2.0 + k as f64 * modulus.ln()
        - 0.5 * (std::f64::consts::PI.ln() + ln_factorial(k));
    Complex64::from_polar(log_mag.exp(), k as f64 * z.arg())
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// Ginibre kernel truncated to `N` basis functions and scaled onto a domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GinibreKernel {
    truncation: usize,
    scale: f64,
    domain: Domain,
}

impl GinibreKernel {
    pub fn new(truncation: usize, domain: Domain) -> Result<Self> {
        if truncation == 0 {
            return Err(invalid("truncation", "must be >= 1"));
        }
        Ok(GinibreKernel {
            truncation,
            scale: domain.circumradius() / (truncation as f64).sqrt(),
            domain,
        })
    }

    /// Kernel sized for `placed` conditioning points plus `new` draws.
    pub fn for_counts(placed: usize, new: usize, domain: Domain) -> Self {
        let n = ((placed + new) as f64 * (1.0 + TRUNCATION_MARGIN)).ceil() as usize;
        Self::new(n.max(1), domain).expect("truncation is positive")
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn to_sampling_plane(&self, p: Point2) -> Complex64 {
        let c = self.domain.center();
        Complex64::new((p.x - c.x) / self.scale, (p.y - c.y) / self.scale)
    }

    pub fn from_sampling_plane(&self, z: Complex64) -> Point2 {
        let c = self.domain.center();
        Point2::new(c.x + z.re * self.scale, c.y + z.im * self.scale)
    }

    /// `(phi_0(z), ..., phi_{N-1}(z))` via the ratio recurrence.
    pub fn features(&self, z: Complex64) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.truncation);
        let mut phi = Complex64::new((-z.norm_sqr() / 2.0).exp() / std::f64::consts::PI.sqrt(), 0.0);
        out.push(phi);
        for k in 1..self.truncation {
            phi = phi * z / (k as f64).sqrt();
            out.push(phi);
        }
        out
    }

    /// `K(z, z)`, the one-point intensity in the sampling plane.
    pub fn kernel_diag(&self, z: Complex64) -> f64 {
        self.features(z).iter().map(|f| f.norm_sqr()).sum()
    }
}

/// Region the sampler proposes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    /// The domain square (the restriction used for placement).
    Square,
    /// The whole circumscribed disk, i.e. no restriction to the square.
    Disk,
}

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// Sequential sampler state: an orthonormal basis of the span of placed
/// feature vectors, the probe-lattice residual densities, and the RNG.
#[derive(Debug, Clone)]
pub struct SamplerState {
    kernel: GinibreKernel,
    window: Window,
    basis: Vec<Vec<Complex64>>,
    probe_features: Vec<Vec<Complex64>>,
    probe_density: Vec<f64>,
    rng: ChaCha8Rng,
}

impl SamplerState {
    pub fn new(kernel: GinibreKernel, seed: u64) -> Self {
        Self::with_window(kernel, Window::Square, seed)
    }

    pub fn with_window(kernel: GinibreKernel, window: Window, seed: u64) -> Self {
        let d = kernel.domain();
        let step = d.side() / PROBE_RESOLUTION as f64;
        let mut probes = Vec::with_capacity(PROBE_RESOLUTION * PROBE_RESOLUTION);
        for i in 0..PROBE_RESOLUTION {
            for j in 0..PROBE_RESOLUTION {
                let p = Point2::new((j as f64 + 0.5) * step, (i as f64 + 0.5) * step);
                probes.push(p);
            }
        }
        if window == Window::Disk {
            // the square's lattice misses the disk caps; add a polar ring set
            let rings = PROBE_RESOLUTION / 2;
            for i in 1..=rings {
                let rad = d.circumradius() * i as f64 / rings as f64;
                for j in 0..4 * PROBE_RESOLUTION {
                    let theta = std::f64::consts::TAU * j as f64 / (4 * PROBE_RESOLUTION) as f64;
                    probes.push(Point2::new(d.center().x + rad * theta.cos(), d.center().y + rad * theta.sin()));
                }
            }
        }
        let probe_features: Vec<Vec<Complex64>> = probes
            .iter()
            .map(|p| kernel.features(kernel.to_sampling_plane(*p)))
            .collect();
        let probe_density = probe_features
            .iter()
            .map(|f| f.iter().map(|c| c.norm_sqr()).sum())
            .collect();
        SamplerState {
            kernel,
            window,
            basis: Vec::new(),
            probe_features,
            probe_density,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn kernel(&self) -> &GinibreKernel {
        &self.kernel
    }

    /// Number of independent placed points spanning the conditioning subspace.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Conditional intensity at `p` given every placed point.
    pub fn conditional_density(&self, p: Point2) -> f64 {
        let phi = self.kernel.features(self.kernel.to_sampling_plane(p));
        let total: f64 = phi.iter().map(|c| c.norm_sqr()).sum();
        let explained: f64 = self.basis.iter().map(|e| dot(&phi, e).norm_sqr()).sum();
        (total - explained).max(0.0)
    }

    /// Adds `p` to the conditioning set. Returns `false` when its feature
    /// vector is already (numerically) in the span, e.g. a duplicate point.
    pub fn condition_on(&mut self, p: Point2) -> bool {
        let mut v = self.kernel.features(self.kernel.to_sampling_plane(p));
        let norm0: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm0 < 1e-150 || self.basis.len() >= self.kernel.truncation() {
            return false;
        }
        // classical Gram-Schmidt, applied twice
        for _ in 0..2 {
            for e in &self.basis {
                let c = dot(&v, e);
                for (vi, ei) in v.iter_mut().zip(e) {
                    *vi -= c * ei;
                }
            }
        }
        let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-7 * norm0 {
            return false;
        }
        for vi in &mut v {
            *vi /= norm;
        }
        for (dens, f) in self.probe_density.iter_mut().zip(&self.probe_features) {
            *dens = (*dens - dot(f, &v).norm_sqr()).max(0.0);
        }
        self.basis.push(v);
        if self.orthonormality_error() > ORTHONORMALITY_TOLERANCE {
            self.reorthonormalize();
        }
        true
    }

    /// `max |<e_i, e_j> - delta_ij|` over the stored basis.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(a, b) - target).norm());
            }
        }
        worst
    }

    fn reorthonormalize(&mut self) {
        let old = std::mem::take(&mut self.basis);
        for mut v in old {
            for _ in 0..2 {
                for e in &self.basis {
                    let c = dot(&v, e);
                    for (vi, ei) in v.iter_mut().zip(e) {
                        *vi -= c * ei;
                    }
                }
            }
            let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for vi in &mut v {
                *vi /= norm;
            }
            self.basis.push(v);
        }
        for (dens, f) in self.probe_density.iter_mut().zip(&self.probe_features) {
            let total: f64 = f.iter().map(|c| c.norm_sqr()).sum();
            let explained: f64 = self.basis.iter().map(|e| dot(f, e).norm_sqr()).sum();
            *dens = (total - explained).max(0.0);
        }
    }

    fn propose(&mut self) -> Point2 {
        let d = self.kernel.domain();
        match self.window {
            Window::Square => Point2::new(self.rng.random::<f64>() * d.side(), self.rng.random::<f64>() * d.side()),
            Window::Disk => {
                let rad = d.circumradius() * self.rng.random::<f64>().sqrt();
                let theta = std::f64::consts::TAU * self.rng.random::<f64>();
                Point2::new(d.center().x + rad * theta.cos(), d.center().y + rad * theta.sin())
            }
        }
    }

    /// Draws one point by rejection from the conditional density and
    /// conditions on it.
    pub fn draw(&mut self) -> Result<Point2> {
        let peak = self.probe_density.iter().copied().fold(0.0, f64::max);
        if peak <= 0.0 || self.basis.len() >= self.kernel.truncation() {
            return Err(Error::OverConstrained { proposals: 0 });
        }
        let envelope = ENVELOPE_SAFETY * peak;
        for _ in 0..MAX_PROPOSALS {
            let p = self.propose();
            let density = self.conditional_density(p);
            if self.rng.random::<f64>() * envelope < density {
                if density > envelope {
                    log::debug!("conditional density {density} exceeded envelope {envelope}");
                }
                self.condition_on(p);
                return Ok(p);
            }
        }
        Err(Error::OverConstrained {
            proposals: MAX_PROPOSALS,
        })
    }
}

/// `n_new` points from the truncated Ginibre process on the domain square,
/// conditioned on `existing` as its first points.
pub fn sample_conditioned(n_new: usize, existing: &[Point2], domain: Domain, seed: u64) -> Result<Vec<Point2>> {
    if n_new == 0 {
        return Ok(Vec::new());
    }
    if let Some(p) = existing.iter().find(|p| !p.is_finite() || !domain.contains(**p)) {
        return Err(invalid("existing", format!("point ({}, {}) lies outside the domain", p.x, p.y)));
    }
    let kernel = GinibreKernel::for_counts(existing.len(), n_new, domain);
    let mut state = SamplerState::new(kernel, seed);
    for p in existing {
        state.condition_on(*p);
    }
    (0..n_new).map(|_| state.draw()).collect()
}
