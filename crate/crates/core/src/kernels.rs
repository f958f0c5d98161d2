//! Harmonic-space kernels: the harmonic Gaussian and the bandlimited Dirac delta.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::coefficients::HarmonicCoefficients;
use crate::error::{Error, Result};
use crate::sht::{ylm_all, GridSignal};
use crate::sphere::SpherePoint;

/// Widths of a harmonic Gaussian `f_lm = exp(-(l²/2σ_l² + m²/2σ_m²))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmonicGaussianSpec {
    sigma_ell: f64,
    sigma_m: f64,
    bandlimit: usize,
}

impl HarmonicGaussianSpec {
    pub fn new(sigma_ell: f64, sigma_m: f64, bandlimit: usize) -> Result<Self> {
        for (name, s) in [("sigma_ell", sigma_ell), ("sigma_m", sigma_m)] {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive and finite, got {s}")));
            }
        }
        if bandlimit == 0 {
            return Err(Error::domain("bandlimit must be at least 1"));
        }
        Ok(Self {
            sigma_ell,
            sigma_m,
            bandlimit,
        })
    }

    pub fn sigma_ell(&self) -> f64 {
        self.sigma_ell
    }

    pub fn sigma_m(&self) -> f64 {
        self.sigma_m
    }

    pub fn bandlimit(&self) -> usize {
        self.bandlimit
    }
}

/// Real, positive spectrum that is Gaussian in degree and in order.
///
/// The coefficients are even in `m`, so the field on the sphere is complex
/// (odd orders break conjugate symmetry). Use [`enforce_reality`] for a real field.
pub fn harmonic_gaussian(spec: &HarmonicGaussianSpec) -> HarmonicCoefficients {
    let two_sl2 = 2.0 * spec.sigma_ell * spec.sigma_ell;
    let two_sm2 = 2.0 * spec.sigma_m * spec.sigma_m;
    HarmonicCoefficients::from_fn(spec.bandlimit, |l, m| {
        let (lf, mf) = (l as f64, m as f64);
        Complex64::new((-(lf * lf / two_sl2 + mf * mf / two_sm2)).exp(), 0.0)
    })
    .expect("spec bandlimit is positive")
}

/// Bandlimited delta centred on `p`: `δ_lm = Y*_lm(p)` for `l < L`.
pub fn dirac_delta(bandlimit: usize, p: SpherePoint) -> Result<HarmonicCoefficients> {
    Ok(ylm_all(bandlimit, p)?.conj())
}

/// Rebuilds the negative orders from the non-negative ones so the spectrum
/// describes a real field: `f_l(-m) = (-1)^m f*_lm`. Each `f_l0` keeps only its real part.
pub fn enforce_reality(f: &HarmonicCoefficients) -> HarmonicCoefficients {
    let mut out = f.clone();
    for ell in 0..f.bandlimit() {
        let v0 = out.get(ell, 0);
        out.set(ell, 0, Complex64::new(v0.re, 0.0));
        for m in 1..=ell as i64 {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            out.set(ell, -m, sign * out.get(ell, m).conj());
        }
    }
    out
}

/// Intensity-weighted azimuthal second moment of `|s|` about its peak:
/// `Σ w |s| Δφ² / Σ w |s|`, with `Δφ` the longitude offset from the peak
/// sample wrapped to `(-π, π]` and `w` the colatitude quadrature weights.
///
/// Larger values mean the field is spread further along the azimuth.
pub fn azimuthal_second_moment(s: &GridSignal) -> f64 {
    let grid = s.grid();
    let (mut peak_k, mut peak) = (0, f64::NEG_INFINITY);
    for j in 0..grid.n_theta() {
        for (k, v) in s.row(j).iter().enumerate() {
            if v.norm() > peak {
                peak = v.norm();
                peak_k = k;
            }
        }
    }
    let phi0 = grid.phi(peak_k);
    let (mut num, mut den) = (0.0, 0.0);
    for j in 0..grid.n_theta() {
        let w = grid.weights()[j];
        for (k, v) in s.row(j).iter().enumerate() {
            let d = PI - (phi0 - grid.phi(k) + PI).rem_euclid(TAU);
            let i = v.norm() * w;
            num += i * d * d;
            den += i;
        }
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}
