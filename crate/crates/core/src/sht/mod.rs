//! Spherical harmonics, quadrature grids and exact transforms for bandlimited signals.
//!
//! Synthesis evaluates `f(θ_j, φ_k) = Σ_lm f_lm Y_lm(θ_j, φ_k)` row by row: the
//! degree sum is collapsed per order with the Legendre recurrence and the order
//! sum is an inverse DFT in longitude. Analysis runs the same steps backwards
//! under the Gauss–Legendre rule, which is exact for bandlimited input.
//!
//! Work is split across rayon threads per colatitude row (synthesis) or per
//! order (analysis). Every reduction runs in a fixed order, so results are
//! bit-identical whatever the thread count.

mod grid;
mod legendre;

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

pub use grid::{gauss_legendre, GridSignal, SphereGrid};
pub use legendre::{legendre, legendre_order};

use crate::coefficients::HarmonicCoefficients;
use crate::error::{Error, Result};
use crate::sphere::SpherePoint;

#[inline]
fn parity(m: i64) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Orthonormal spherical harmonic `Y_lm(θ, φ)` with Condon–Shortley phase.
///
/// Negative orders follow `Y*_lm = (-1)^m Y_l(-m)`.
pub fn ylm(ell: usize, m: i64, p: SpherePoint) -> Result<Complex64> {
    let am = m.unsigned_abs() as usize;
    if am > ell {
        return Err(Error::domain(format!("|m|={am} exceeds degree {ell}")));
    }
    let mut buf = vec![0.0; ell - am + 1];
    let (s, c) = p.theta().sin_cos();
    legendre_order(ell + 1, am, c, s, &mut buf);
    let y = Complex64::from_polar(buf[ell - am], am as f64 * p.phi());
    Ok(if m < 0 { parity(m) * y.conj() } else { y })
}

/// All `Y_lm(p)` for `l < L`, in flat coefficient order.
pub fn ylm_all(bandlimit: usize, p: SpherePoint) -> Result<HarmonicCoefficients> {
    let mut out = HarmonicCoefficients::zeros(bandlimit)?;
    let (s, c) = p.theta().sin_cos();
    let mut buf = vec![0.0; bandlimit];
    for m in 0..bandlimit {
        legendre_order(bandlimit, m, c, s, &mut buf);
        let mi = m as i64;
        let e = Complex64::from_polar(1.0, m as f64 * p.phi());
        for ell in m..bandlimit {
            let y = e * buf[ell - m];
            out.set(ell, mi, y);
            if m > 0 {
                out.set(ell, -mi, parity(mi) * y.conj());
            }
        }
    }
    Ok(out)
}

/// Evaluates the expansion `Σ_lm f_lm Y_lm(p)` at a single point.
pub fn synthesize_at(f: &HarmonicCoefficients, p: SpherePoint) -> Complex64 {
    let y = ylm_all(f.bandlimit(), p).expect("bandlimit is positive");
    f.values().iter().zip(y.values()).map(|(a, b)| a * b).sum()
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut planner = FftPlanner::new();
    if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    }
}

/// Synthesizes `f` on `grid`. The grid bandlimit must be at least `f`'s.
pub fn inverse_sht(f: &HarmonicCoefficients, grid: &SphereGrid) -> Result<GridSignal> {
    let lf = f.bandlimit();
    if grid.bandlimit() < lf {
        return Err(Error::dimension(format!(
            "grid bandlimit {} below coefficient bandlimit {lf}",
            grid.bandlimit()
        )));
    }
    let n_phi = grid.n_phi();
    let fft = plan(n_phi, true);
    let mut samples = vec![Complex64::new(0.0, 0.0); grid.len()];

    samples
        .par_chunks_mut(n_phi)
        .zip(grid.thetas().par_iter())
        .for_each(|(row, &theta)| {
            let (s, c) = theta.sin_cos();
            let mut pl = vec![0.0; lf];
            row.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            for m in 0..lf {
                legendre_order(lf, m, c, s, &mut pl);
                let mi = m as i64;
                let mut pos = Complex64::new(0.0, 0.0);
                let mut neg = Complex64::new(0.0, 0.0);
                for ell in m..lf {
                    let p = pl[ell - m];
                    pos += f.get(ell, mi) * p;
                    if m > 0 {
                        neg += f.get(ell, -mi) * p;
                    }
                }
                row[m] = pos;
                if m > 0 {
                    row[n_phi - m] = neg * parity(mi);
                }
            }
            fft.process(row);
        });

    GridSignal::new(grid.clone(), samples)
}

/// Analyzes a signal sampled on a standard grid into `L²` coefficients, `L` the grid bandlimit.
pub fn forward_sht(signal: &GridSignal) -> Result<HarmonicCoefficients> {
    let grid = signal.grid();
    let lg = grid.bandlimit();
    let n_phi = grid.n_phi();
    if grid.n_theta() != lg || n_phi < 2 * lg - 1 {
        return Err(Error::dimension(format!(
            "grid with {} colatitudes and {n_phi} longitudes cannot carry bandlimit {lg}",
            grid.n_theta()
        )));
    }
    let fft = plan(n_phi, false);

    // longitude DFT of every row
    let mut spectra = signal.samples().to_vec();
    spectra.par_chunks_mut(n_phi).for_each(|row| fft.process(row));

    // one independent colatitude quadrature per order; rows are summed in order
    let per_order: Vec<Vec<(Complex64, Complex64)>> = (0..lg)
        .into_par_iter()
        .map(|m| {
            let mut acc = vec![(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); lg - m];
            let mut pl = vec![0.0; lg];
            for (j, &theta) in grid.thetas().iter().enumerate() {
                let (s, c) = theta.sin_cos();
                legendre_order(lg, m, c, s, &mut pl);
                let w = grid.sample_weight(j);
                let pos = spectra[j * n_phi + m] * w;
                let neg = if m > 0 {
                    spectra[j * n_phi + n_phi - m] * w
                } else {
                    Complex64::new(0.0, 0.0)
                };
                for (i, a) in acc.iter_mut().enumerate() {
                    let p = pl[i];
                    a.0 += pos * p;
                    a.1 += neg * p;
                }
            }
            acc
        })
        .collect();

    let mut out = HarmonicCoefficients::zeros(lg)?;
    for (m, acc) in per_order.into_iter().enumerate() {
        let mi = m as i64;
        for (i, (pos, neg)) in acc.into_iter().enumerate() {
            let ell = m + i;
            out.set(ell, mi, pos);
            if m > 0 {
                out.set(ell, -mi, neg * parity(mi));
            }
        }
    }
    Ok(out)
}

/// Quadrature value of `⟨f, g⟩ = ∫ f g* dΩ`.
pub fn inner_product(f: &GridSignal, g: &GridSignal) -> Result<Complex64> {
    if f.grid() != g.grid() {
        return Err(Error::dimension("inner product of signals on different grids"));
    }
    let grid = f.grid();
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..grid.n_theta() {
        let row: Complex64 = f.row(j).iter().zip(g.row(j)).map(|(a, b)| a * b.conj()).sum();
        total += row * grid.sample_weight(j);
    }
    Ok(total)
}

/// Harmonic-space inner product `Σ_lm f_lm g*_lm` over the common bandlimit.
pub fn coefficient_inner_product(f: &HarmonicCoefficients, g: &HarmonicCoefficients) -> Complex64 {
    f.values().iter().zip(g.values()).map(|(a, b)| a * b.conj()).sum()
}
