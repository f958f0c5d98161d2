//! Orthonormalized associated Legendre functions.
//!
//! Values returned here are the colatitude part of `Y_lm`, i.e.
//!
//! ```text
//! Pbar_l^m(x) = sqrt((2l+1)/(4π) · (l-m)!/(l+m)!) · P_l^m(x)
//! ```
//!
//! including the Condon–Shortley phase `(-1)^m`. The normalization is carried
//! through the recurrence so nothing overflows at high degree.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `Pbar_l^m(x)` for `0 <= m <= l`, `|x| <= 1`.
pub fn legendre(ell: usize, m: usize, x: f64) -> Result<f64> {
    if m > ell {
        return Err(Error::domain(format!("order {m} exceeds degree {ell}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("argument {x} outside [-1, 1]")));
    }
    let mut out = vec![0.0; ell - m + 1];
    legendre_order(ell + 1, m, x, (1.0 - x * x).sqrt(), &mut out);
    Ok(out[ell - m])
}

/// Fills `out[l - m] = Pbar_l^m(x)` for `l = m..bandlimit`.
///
/// `sin_theta` is passed separately so callers holding `θ` avoid the
/// cancellation in `sqrt(1 - x²)` near the poles. `out` must hold at least
/// `bandlimit - m` entries.
pub fn legendre_order(bandlimit: usize, m: usize, x: f64, sin_theta: f64, out: &mut [f64]) {
    debug_assert!(m < bandlimit);
    debug_assert!(out.len() >= bandlimit - m);

    // diagonal: Pbar_m^m = (-1)^m sqrt((2m+1)!! / (4π (2m)!!)) sin^m θ
    let mut diag = 1.0 / (4.0 * PI).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        diag *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * sin_theta;
    }
    out[0] = diag;
    if m + 1 >= bandlimit {
        return;
    }
    out[1] = x * (2.0 * m as f64 + 3.0).sqrt() * diag;

    let mf = m as f64;
    for ell in m + 2..bandlimit {
        let lf = ell as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let lp = lf - 1.0;
        let b = ((lp * lp - mf * mf) / (4.0 * lp * lp - 1.0)).sqrt();
        let i = ell - m;
        out[i] = a * (x * out[i - 1] - b * out[i - 2]);
    }
}
