use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sphere::SpherePoint;

/// Gauss–Legendre colatitudes × uniform longitudes.
///
/// With `L` colatitude nodes and `n_phi >= 2L - 1` longitudes the rule
/// integrates the product of any two bandlimit-`L` signals exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereGrid {
    bandlimit: usize,
    thetas: Vec<f64>,
    weights: Vec<f64>,
    n_phi: usize,
}

impl SphereGrid {
    /// The standard grid for bandlimit `L`: `L` nodes, `2L - 1` longitudes from `φ = 0`.
    pub fn new(bandlimit: usize) -> Result<Self> {
        if bandlimit == 0 {
            return Err(Error::domain("bandlimit must be at least 1"));
        }
        Self::with_longitudes(bandlimit, 2 * bandlimit - 1)
    }

    /// Same colatitudes as [`SphereGrid::new`] but a caller-chosen longitude count.
    pub fn with_longitudes(bandlimit: usize, n_phi: usize) -> Result<Self> {
        if bandlimit == 0 {
            return Err(Error::domain("bandlimit must be at least 1"));
        }
        if n_phi < 2 * bandlimit - 1 {
            return Err(Error::domain(format!(
                "{n_phi} longitudes cannot resolve bandlimit {bandlimit} (need {})",
                2 * bandlimit - 1
            )));
        }
        let (nodes, weights) = gauss_legendre(bandlimit);
        // nodes come out in descending x, i.e. ascending colatitude
        let thetas = nodes.iter().map(|x| x.clamp(-1.0, 1.0).acos()).collect();
        Ok(Self {
            bandlimit,
            thetas,
            weights,
            n_phi,
        })
    }

    pub fn bandlimit(&self) -> usize {
        self.bandlimit
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n_theta(&self) -> usize {
        self.thetas.len()
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn len(&self) -> usize {
        self.thetas.len() * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn phi(&self, k: usize) -> f64 {
        TAU * k as f64 / self.n_phi as f64
    }

    pub fn phis(&self) -> Vec<f64> {
        (0..self.n_phi).map(|k| self.phi(k)).collect()
    }

    pub fn point(&self, j: usize, k: usize) -> SpherePoint {
        SpherePoint::new(self.thetas[j], self.phi(k)).expect("grid nodes lie on the sphere")
    }

    /// Quadrature weight of sample `(j, k)`, including the longitude spacing.
    pub fn sample_weight(&self, j: usize) -> f64 {
        self.weights[j] * TAU / self.n_phi as f64
    }

    /// Iterates `(j, k, point)` in row-major order.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize, SpherePoint)> + '_ {
        (0..self.n_theta()).flat_map(move |j| (0..self.n_phi).map(move |k| (j, k, self.point(j, k))))
    }
}

/// Gauss–Legendre nodes (descending) and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        // one more derivative evaluation at the converged node
        let (_, d) = legendre_and_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Complex samples on a [`SphereGrid`], row-major over `(theta, phi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSignal {
    grid: SphereGrid,
    samples: Vec<Complex64>,
}

impl GridSignal {
    pub fn new(grid: SphereGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::dimension(format!(
                "grid has {}x{} samples, got {}",
                grid.n_theta(),
                grid.n_phi(),
                samples.len()
            )));
        }
        Ok(Self { grid, samples })
    }

    pub fn zeros(grid: SphereGrid) -> Self {
        let n = grid.len();
        Self {
            grid,
            samples: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_fn(grid: SphereGrid, mut f: impl FnMut(SpherePoint) -> Complex64) -> Self {
        let samples = grid.points().map(|(_, _, p)| f(p)).collect();
        Self { grid, samples }
    }

    pub fn grid(&self) -> &SphereGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.samples[j * self.grid.n_phi() + k]
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        let n = self.grid.n_phi();
        &self.samples[j * n..(j + 1) * n]
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.samples.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Quadrature value of `∫ f dΩ`.
    pub fn integrate(&self) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for j in 0..self.grid.n_theta() {
            let row: Complex64 = self.row(j).iter().sum();
            total += row * self.grid.sample_weight(j);
        }
        total
    }
}
