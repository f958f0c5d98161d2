//! Dense storage for bandlimited spherical harmonic spectra.
//!
//! Mode `(l, m)` with `0 <= l < L` and `-l <= m <= l` lives at flat index
//! `l * (l + 1) + m`, so a spectrum of bandlimit `L` holds exactly `L²`
//! values in degree-major order.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Flat index of mode `(l, m)`.
#[inline]
pub fn flat_index(ell: usize, m: i64) -> usize {
    debug_assert!(m.unsigned_abs() as usize <= ell);
    ((ell * (ell + 1)) as i64 + m) as usize
}

/// Inverse of [`flat_index`].
#[inline]
pub fn unflatten(index: usize) -> (usize, i64) {
    let mut ell = (index as f64).sqrt() as usize;
    // the float square root can land one off for large indices
    while ell * ell > index {
        ell -= 1;
    }
    while (ell + 1) * (ell + 1) <= index {
        ell += 1;
    }
    (ell, index as i64 - (ell * (ell + 1)) as i64)
}

/// A complex spectrum `f_lm` with bandlimit `L` (all modes with `l >= L` vanish).
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicCoefficients {
    bandlimit: usize,
    values: Vec<Complex64>,
}

impl HarmonicCoefficients {
    pub fn zeros(bandlimit: usize) -> Result<Self> {
        if bandlimit == 0 {
            return Err(Error::domain("bandlimit must be at least 1"));
        }
        Ok(Self {
            bandlimit,
            values: vec![Complex64::new(0.0, 0.0); bandlimit * bandlimit],
        })
    }

    /// Wraps a flat value array; its length must be exactly `L²`.
    pub fn from_values(bandlimit: usize, values: Vec<Complex64>) -> Result<Self> {
        if bandlimit == 0 {
            return Err(Error::domain("bandlimit must be at least 1"));
        }
        if values.len() != bandlimit * bandlimit {
            return Err(Error::dimension(format!(
                "bandlimit {bandlimit} needs {} values, got {}",
                bandlimit * bandlimit,
                values.len()
            )));
        }
        Ok(Self { bandlimit, values })
    }

    /// Builds a spectrum by evaluating `f(l, m)` for every mode.
    pub fn from_fn(bandlimit: usize, mut f: impl FnMut(usize, i64) -> Complex64) -> Result<Self> {
        let mut out = Self::zeros(bandlimit)?;
        for (i, v) in out.values.iter_mut().enumerate() {
            let (ell, m) = unflatten(i);
            *v = f(ell, m);
        }
        Ok(out)
    }

    pub fn bandlimit(&self) -> usize {
        self.bandlimit
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    fn check_mode(&self, ell: usize, m: i64) -> Result<()> {
        if ell >= self.bandlimit || m.unsigned_abs() as usize > ell {
            return Err(Error::domain(format!(
                "mode (l={ell}, m={m}) outside bandlimit {}",
                self.bandlimit
            )));
        }
        Ok(())
    }

    /// Value of mode `(l, m)`.
    ///
    /// Panics if the mode is outside the bandlimit; see [`HarmonicCoefficients::try_get`].
    #[inline]
    pub fn get(&self, ell: usize, m: i64) -> Complex64 {
        self.values[flat_index(ell, m)]
    }

    pub fn try_get(&self, ell: usize, m: i64) -> Result<Complex64> {
        self.check_mode(ell, m)?;
        Ok(self.get(ell, m))
    }

    #[inline]
    pub fn set(&mut self, ell: usize, m: i64, value: Complex64) {
        self.values[flat_index(ell, m)] = value;
    }

    pub fn try_set(&mut self, ell: usize, m: i64, value: Complex64) -> Result<()> {
        self.check_mode(ell, m)?;
        self.set(ell, m, value);
        Ok(())
    }

    /// Iterates `(l, m, value)` in flat-index order.
    pub fn modes(&self) -> impl Iterator<Item = (usize, i64, Complex64)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| {
            let (ell, m) = unflatten(i);
            (ell, m, *v)
        })
    }

    /// The `2l + 1` values of degree `l`, ordered `m = -l..=l`.
    pub fn degree(&self, ell: usize) -> &[Complex64] {
        &self.values[ell * ell..(ell + 1) * (ell + 1)]
    }

    pub fn degree_mut(&mut self, ell: usize) -> &mut [Complex64] {
        &mut self.values[ell * ell..(ell + 1) * (ell + 1)]
    }

    /// `Σ_m |f_lm|²` for one degree.
    pub fn degree_power(&self, ell: usize) -> f64 {
        self.degree(ell).iter().map(|v| v.norm_sqr()).sum()
    }

    /// Copy with a different bandlimit: modes are truncated or zero-filled.
    pub fn resized(&self, bandlimit: usize) -> Result<Self> {
        let mut out = Self::zeros(bandlimit)?;
        let n = bandlimit.min(self.bandlimit);
        out.values[..n * n].copy_from_slice(&self.values[..n * n]);
        Ok(out)
    }

    /// Largest componentwise `|a - b|`; spectra of different bandlimits are
    /// compared as if zero-padded.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.values.len().max(other.values.len());
        let zero = Complex64::new(0.0, 0.0);
        (0..n)
            .map(|i| {
                let a = self.values.get(i).copied().unwrap_or(zero);
                let b = other.values.get(i).copied().unwrap_or(zero);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn conj(&self) -> Self {
        Self {
            bandlimit: self.bandlimit,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Largest deviation from the real-field relation `f*_lm = (-1)^m f_l(-m)`.
    pub fn conjugate_symmetry_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for ell in 0..self.bandlimit {
            for m in 0..=ell as i64 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let d = (self.get(ell, m).conj() - sign * self.get(ell, -m)).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_conjugate_symmetric(&self, tol: f64) -> bool {
        self.conjugate_symmetry_error() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_wrong_length() {
        assert!(HarmonicCoefficients::from_values(3, vec![Complex64::default(); 8]).is_err());
        assert!(HarmonicCoefficients::zeros(0).is_err());
        assert_eq!(HarmonicCoefficients::zeros(5).unwrap().values().len(), 25);
    }

    #[test]
    fn out_of_band_access_is_an_error() {
        let f = HarmonicCoefficients::zeros(4).unwrap();
        assert!(f.try_get(4, 0).is_err());
        assert!(f.try_get(2, -3).is_err());
        assert!(f.try_get(3, -3).is_ok());
    }

    #[test]
    fn resize_pads_and_truncates() {
        let f = HarmonicCoefficients::from_fn(3, |l, m| Complex64::new(l as f64, m as f64)).unwrap();
        let g = f.resized(5).unwrap();
        assert_eq!(g.get(2, -1), f.get(2, -1));
        assert_eq!(g.get(4, 0), Complex64::default());
        let h = g.resized(2).unwrap();
        assert_eq!(h.values(), &f.values()[..4]);
    }

    proptest! {
        #[test]
        fn flat_index_round_trips(ell in 0usize..2000, frac in 0.0f64..1.0) {
            let m = ((2 * ell) as f64 * frac).round() as i64 - ell as i64;
            prop_assert_eq!(unflatten(flat_index(ell, m)), (ell, m));
        }

        #[test]
        fn unflatten_covers_every_index(index in 0usize..4_000_000) {
            let (ell, m) = unflatten(index);
            prop_assert!(m.unsigned_abs() as usize <= ell);
            prop_assert_eq!(flat_index(ell, m), index);
        }
    }
}
