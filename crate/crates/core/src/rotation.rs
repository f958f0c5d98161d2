//! Wigner matrices and rotation of harmonic coefficients.
//!
//! Rotations are active zyz Euler rotations: `γ` about z, then `β` about y,
//! then `α` about z, with matrix `R = Rz(α) Ry(β) Rz(γ)`. A rotated signal is
//! `(R f)(ω) = f(R⁻¹ ω)` and its coefficients are
//!
//! ```text
//! (R f)_lm = Σ_m' D^l_mm'(α, β, γ) f_lm',   D^l_mm' = e^{-imα} d^l_mm'(β) e^{-im'γ}
//! ```
//!
//! Small-d blocks come from the three-term recursion in degree
//!
//! ```text
//! d^{l+1}_mm' = (l+1)(2l+1) / sqrt(((l+1)²-m²)((l+1)²-m'²))
//!             · [ (cos β - m m'/(l(l+1))) d^l_mm' - sqrt((l²-m²)(l²-m'²))/(l(2l+1)) d^{l-1}_mm' ]
//! ```
//!
//! seeded with the closed form on the boundary `l = max(|m|, |m'|)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coefficients::HarmonicCoefficients;
use crate::error::{Error, Result};
use crate::sphere::wrap_angle;

/// Row-major 3×3 rotation matrix.
pub type Matrix3 = [[f64; 3]; 3];

/// zyz Euler angles `(α, β, γ)` with `α, γ ∈ [0, 2π)` and `β ∈ [0, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerAngles {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl EulerAngles {
    /// Builds canonical angles. A `β` outside `[0, π]` is folded back using
    /// `(α, -β, γ) ≡ (α + π, β, γ + π)`.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(Error::domain("Euler angles must be finite"));
        }
        let mut b = wrap_angle(beta);
        let (mut a, mut g) = (alpha, gamma);
        if b > PI {
            b = 2.0 * PI - b;
            a += PI;
            g += PI;
        }
        Ok(Self {
            alpha: wrap_angle(a),
            beta: b,
            gamma: wrap_angle(g),
        })
    }

    pub fn identity() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn to_matrix(&self) -> Matrix3 {
        matmul(
            &matmul(&rot_z(self.alpha), &rot_y(self.beta)),
            &rot_z(self.gamma),
        )
    }

    /// Recovers zyz angles from a proper rotation matrix. At the gimbal-lock
    /// poles `β ∈ {0, π}` the whole azimuthal part is assigned to `α`.
    pub fn from_matrix(r: &Matrix3) -> Self {
        let sin_beta = r[2][0].hypot(r[2][1]);
        let beta = sin_beta.atan2(r[2][2]);
        let (alpha, gamma) = if sin_beta > 1e-12 {
            (r[1][2].atan2(r[0][2]), r[2][1].atan2(-r[2][0]))
        } else if r[2][2] > 0.0 {
            (r[1][0].atan2(r[0][0]), 0.0)
        } else {
            ((-r[1][0]).atan2(r[1][1]), 0.0)
        };
        Self::new(alpha, beta, gamma).expect("matrix entries are finite")
    }

    /// The rotation `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &EulerAngles) -> Self {
        Self::from_matrix(&matmul(&self.to_matrix(), &first.to_matrix()))
    }

    /// `(α, β, γ)⁻¹ = (π - γ, β, π - α)`.
    pub fn inverse(&self) -> Self {
        if self.beta == 0.0 {
            return Self::new(-self.alpha - self.gamma, 0.0, 0.0).expect("finite");
        }
        Self::new(PI - self.gamma, self.beta, PI - self.alpha).expect("finite")
    }

    /// Applies the rotation matrix to a vector.
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let r = self.to_matrix();
        [
            r[0][0] * v[0] + r[0][1] * v[1] + r[0][2] * v[2],
            r[1][0] * v[0] + r[1][1] * v[1] + r[1][2] * v[2],
            r[2][0] * v[0] + r[2][1] * v[1] + r[2][2] * v[2],
        ]
    }
}

fn rot_z(a: f64) -> Matrix3 {
    let (s, c) = a.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

fn rot_y(b: f64) -> Matrix3 {
    let (s, c) = b.sin_cos();
    [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
}

fn matmul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// The `(2l+1) × (2l+1)` small-d matrix `d^l_mm'(β)` of one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerBlock {
    degree: usize,
    entries: Vec<f64>,
}

impl WignerBlock {
    fn zeros(degree: usize) -> Self {
        let n = 2 * degree + 1;
        Self {
            degree,
            entries: vec![0.0; n * n],
        }
    }

    fn identity(degree: usize) -> Self {
        let mut b = Self::zeros(degree);
        let n = 2 * degree + 1;
        for i in 0..n {
            b.entries[i * n + i] = 1.0;
        }
        b
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        2 * self.degree + 1
    }

    #[inline]
    fn offset(&self, m: i64, mp: i64) -> usize {
        let l = self.degree as i64;
        ((m + l) * (2 * l + 1) + (mp + l)) as usize
    }

    /// `d^l_mm'`.
    #[inline]
    pub fn get(&self, m: i64, mp: i64) -> f64 {
        self.entries[self.offset(m, mp)]
    }

    /// Row-major entries, rows indexed by `m = -l..=l`.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `max |d dᵀ - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n)
                    .map(|k| self.entries[i * n + k] * self.entries[j * n + k])
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..=PI).contains(&beta) {
        return Err(Error::domain(format!("beta {beta} outside [0, pi]")));
    }
    Ok(())
}

/// Small-d block of degree `l` at angle `β ∈ [0, π]`.
pub fn wigner_d(ell: usize, beta: f64) -> Result<WignerBlock> {
    let mut all = wigner_d_all(ell + 1, beta)?;
    Ok(all.pop().expect("at least one block"))
}

/// Small-d blocks for every degree `l < bandlimit`.
pub fn wigner_d_all(bandlimit: usize, beta: f64) -> Result<Vec<WignerBlock>> {
    check_beta(beta)?;
    if beta == 0.0 {
        return Ok((0..bandlimit).map(WignerBlock::identity).collect());
    }
    let mut blocks: Vec<WignerBlock> = (0..bandlimit).map(WignerBlock::zeros).collect();
    if bandlimit == 0 {
        return Ok(blocks);
    }
    let ln_fact = ln_factorials(2 * bandlimit);
    let (half_s, half_c) = (0.5 * beta).sin_cos();
    let cb = beta.cos();
    let top = bandlimit as i64 - 1;

    for m in -top..=top {
        for mp in -top..=top {
            let start = m.abs().max(mp.abs()) as usize;
            let (mf, mpf) = (m as f64, mp as f64);
            let mut prev = 0.0;
            let mut cur = boundary_value(start, m, mp, half_c, half_s, &ln_fact);
            let b = &mut blocks[start];
            let off = b.offset(m, mp);
            b.entries[off] = cur;
            for ell in start..bandlimit - 1 {
                let l = ell as f64;
                let l1 = l + 1.0;
                let cross = if ell == 0 { 0.0 } else { mf * mpf / (l * l1) };
                let back = if ell == 0 {
                    0.0
                } else {
                    ((l * l - mf * mf) * (l * l - mpf * mpf)).sqrt() / (l * (2.0 * l + 1.0))
                };
                let scale = l1 * (2.0 * l + 1.0) / ((l1 * l1 - mf * mf) * (l1 * l1 - mpf * mpf)).sqrt();
                let next = scale * ((cb - cross) * cur - back * prev);
                prev = cur;
                cur = next;
                let b = &mut blocks[ell + 1];
                let off = b.offset(m, mp);
                b.entries[off] = cur;
            }
        }
    }
    Ok(blocks)
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// `d^j_mm'` on the boundary `j = max(|m|, |m'|)`, reduced by symmetry to
/// `d^j_{j,k} = (-1)^{j-k} sqrt(C(2j, j+k)) cos^{j+k}(β/2) sin^{j-k}(β/2)`.
fn boundary_value(j: usize, m: i64, mp: i64, half_c: f64, half_s: f64, ln_fact: &[f64]) -> f64 {
    let ji = j as i64;
    let top_row = |k: i64| -> f64 {
        let a = (ji + k) as usize;
        let b = (ji - k) as usize;
        let ln_binom = 0.5 * (ln_fact[2 * j] - ln_fact[a] - ln_fact[b]);
        let mut ln_mag = ln_binom;
        for (base, exp) in [(half_c, a), (half_s, b)] {
            if exp > 0 {
                if base <= 0.0 {
                    return 0.0;
                }
                ln_mag += exp as f64 * base.ln();
            }
        }
        let sign = if (ji - k).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign * ln_mag.exp()
    };
    let sign = |p: i64| if p.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    // d_{m,m'} = (-1)^{m-m'} d_{m',m} = (-1)^{m-m'} d_{-m,-m'}
    if m.abs() >= mp.abs() {
        if m >= 0 {
            top_row(mp)
        } else {
            sign(m - mp) * top_row(-mp)
        }
    } else if mp >= 0 {
        sign(m - mp) * top_row(m)
    } else {
        top_row(-m)
    }
}

/// Applies the rotation `ρ` to a spectrum. The bandlimit is preserved.
pub fn rotate(f: &HarmonicCoefficients, rho: &EulerAngles) -> HarmonicCoefficients {
    let blocks = wigner_d_all(f.bandlimit(), rho.beta()).expect("canonical beta lies in [0, pi]");
    rotate_with_blocks(f, rho.alpha(), &blocks, rho.gamma())
}

/// [`rotate`] with precomputed small-d blocks for `β`.
pub fn rotate_with_blocks(
    f: &HarmonicCoefficients,
    alpha: f64,
    blocks: &[WignerBlock],
    gamma: f64,
) -> HarmonicCoefficients {
    let bandlimit = f.bandlimit();
    assert!(blocks.len() >= bandlimit, "need a small-d block per degree");
    let mut out = HarmonicCoefficients::zeros(bandlimit).expect("positive bandlimit");
    let top = bandlimit as i64 - 1;
    let alpha_phase: Vec<Complex64> = (-top..=top)
        .map(|m| Complex64::from_polar(1.0, -(m as f64) * alpha))
        .collect();
    let gamma_phase: Vec<Complex64> = (-top..=top)
        .map(|m| Complex64::from_polar(1.0, -(m as f64) * gamma))
        .collect();
    let mut twisted = Vec::with_capacity(2 * bandlimit);
    for ell in 0..bandlimit {
        let l = ell as i64;
        let block = &blocks[ell];
        let src = f.degree(ell);
        twisted.clear();
        twisted.extend((-l..=l).map(|mp| gamma_phase[(mp + top) as usize] * src[(mp + l) as usize]));
        let dst = out.degree_mut(ell);
        let n = 2 * ell + 1;
        for (row, m) in (-l..=l).enumerate() {
            let d = &block.entries[row * n..(row + 1) * n];
            let acc: Complex64 = d.iter().zip(&twisted).map(|(w, v)| v * *w).sum();
            dst[row] = alpha_phase[(m + top) as usize] * acc;
        }
    }
    out
}
