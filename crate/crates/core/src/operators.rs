//! Translation and convolution operators on the sphere.
//!
//! | operator                 | directional kernels | output on S² | cost         |
//! |--------------------------|---------------------|--------------|--------------|
//! | sifting                  | yes                 | yes          | O(L²) modes  |
//! | isotropic                | no                  | yes          | O(L²) modes  |
//! | left                     | no                  | yes          | O(L²) modes  |
//! | directional              | yes                 | no (SO(3))   | direct sum   |
//! | commutative anisotropic  | yes                 | yes          | direct sum   |
//!
//! All binary operators expect operands of equal bandlimit. Call
//! [`pad_to_common`] first to zero-pad the smaller one explicitly.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coefficients::HarmonicCoefficients;
use crate::error::{Error, Result};
use crate::rotation::wigner_d_all;
use crate::sht::{gauss_legendre, ylm_all, GridSignal, SphereGrid};
use crate::sphere::SpherePoint;

/// Kernel modes with `m != 0` below this magnitude count as axisymmetric.
pub const AXISYMMETRY_TOLERANCE: f64 = 1e-12;

fn same_bandlimit(f: &HarmonicCoefficients, g: &HarmonicCoefficients) -> Result<()> {
    if f.bandlimit() != g.bandlimit() {
        return Err(Error::dimension(format!(
            "bandlimit mismatch: {} vs {} (zero-pad explicitly to combine)",
            f.bandlimit(),
            g.bandlimit()
        )));
    }
    Ok(())
}

/// Zero-pads the operand with the smaller bandlimit so both share the larger one.
pub fn pad_to_common(
    f: &HarmonicCoefficients,
    g: &HarmonicCoefficients,
) -> (HarmonicCoefficients, HarmonicCoefficients) {
    let l = f.bandlimit().max(g.bandlimit());
    (
        f.resized(l).expect("positive bandlimit"),
        g.resized(l).expect("positive bandlimit"),
    )
}

/// Translation to `p`: `(T_p f)_lm = f_lm Y_lm(p)`.
pub fn translate(f: &HarmonicCoefficients, p: SpherePoint) -> HarmonicCoefficients {
    let y = ylm_all(f.bandlimit(), p).expect("positive bandlimit");
    let values = f.values().iter().zip(y.values()).map(|(a, b)| a * b).collect();
    HarmonicCoefficients::from_values(f.bandlimit(), values).expect("same length")
}

/// Sifting convolution `(f ⊚ g)_lm = f_lm g*_lm`, the harmonic form of `⟨T_ω f, g⟩`.
pub fn sift_convolve(f: &HarmonicCoefficients, g: &HarmonicCoefficients) -> Result<HarmonicCoefficients> {
    same_bandlimit(f, g)?;
    let values = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| a * b.conj())
        .collect();
    HarmonicCoefficients::from_values(f.bandlimit(), values)
}

/// Fails with the largest `m != 0` mode of `g` if it exceeds [`AXISYMMETRY_TOLERANCE`].
pub fn check_axisymmetric(g: &HarmonicCoefficients) -> Result<()> {
    let worst = g
        .modes()
        .filter(|&(_, m, _)| m != 0)
        .map(|(l, m, v)| (l, m, v.norm()))
        .fold(None, |acc: Option<(usize, i64, f64)>, cur| match acc {
            Some(a) if a.2 >= cur.2 => Some(a),
            _ => Some(cur),
        });
    match worst {
        Some((degree, order, magnitude)) if magnitude >= AXISYMMETRY_TOLERANCE => {
            Err(Error::NotAxisymmetric {
                degree,
                order,
                magnitude,
            })
        }
        _ => Ok(()),
    }
}

fn axisymmetric_product(
    f: &HarmonicCoefficients,
    g: &HarmonicCoefficients,
    scale: f64,
    conjugate: bool,
) -> Result<HarmonicCoefficients> {
    same_bandlimit(f, g)?;
    check_axisymmetric(g)?;
    let mut out = f.clone();
    for ell in 0..f.bandlimit() {
        let g0 = if conjugate { g.get(ell, 0).conj() } else { g.get(ell, 0) };
        let factor = g0 * scale * (4.0 * PI / (2 * ell + 1) as f64).sqrt();
        out.degree_mut(ell).iter_mut().for_each(|v| *v *= factor);
    }
    Ok(out)
}

/// Isotropic convolution `(f ⊙ g)_lm = sqrt(4π/(2l+1)) f_lm g*_l0`; `g` must be axisymmetric.
pub fn isotropic_convolve(f: &HarmonicCoefficients, g: &HarmonicCoefficients) -> Result<HarmonicCoefficients> {
    axisymmetric_product(f, g, 1.0, true)
}

/// Left convolution `(f ⊖ g)_lm = 2π sqrt(4π/(2l+1)) f_lm g_l0`; `g` must be axisymmetric.
///
/// Unlike the isotropic convolution the kernel coefficient is not conjugated.
pub fn left_convolve(f: &HarmonicCoefficients, g: &HarmonicCoefficients) -> Result<HarmonicCoefficients> {
    axisymmetric_product(f, g, 2.0 * PI, false)
}

/// Euler-angle sample positions for a signal on SO(3).
#[derive(Clone, Debug, PartialEq)]
pub struct So3Angles {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
}

impl So3Angles {
    /// `2L - 1` uniform `α`, the `L` Gauss–Legendre colatitudes as `β`, `2L - 1` uniform `γ`.
    ///
    /// The `(α, β)` pairs coincide with the points of [`SphereGrid::new`].
    pub fn default_for(bandlimit: usize) -> Result<Self> {
        if bandlimit == 0 {
            return Err(Error::domain("bandlimit must be at least 1"));
        }
        let n = 2 * bandlimit - 1;
        let uniform: Vec<f64> = (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect();
        let (nodes, _) = gauss_legendre(bandlimit);
        Ok(Self {
            alphas: uniform.clone(),
            betas: nodes.iter().map(|x| x.clamp(-1.0, 1.0).acos()).collect(),
            gammas: uniform,
        })
    }

    pub fn len(&self) -> usize {
        self.alphas.len() * self.betas.len() * self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Complex samples over an `α × β × γ` grid, row-major with `γ` fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct So3Signal {
    angles: So3Angles,
    values: Vec<Complex64>,
}

impl So3Signal {
    pub fn new(angles: So3Angles, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != angles.len() {
            return Err(Error::dimension(format!(
                "{}x{}x{} Euler samples need {} values, got {}",
                angles.alphas.len(),
                angles.betas.len(),
                angles.gammas.len(),
                angles.len(),
                values.len()
            )));
        }
        Ok(Self { angles, values })
    }

    pub fn angles(&self) -> &So3Angles {
        &self.angles
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (
            self.angles.alphas.len(),
            self.angles.betas.len(),
            self.angles.gammas.len(),
        )
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        let (_, nb, ng) = self.shape();
        self.values[(i * nb + j) * ng + k]
    }

    /// Iterates `(α, β, γ, value)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, f64, Complex64)> + '_ {
        let (na, nb, ng) = self.shape();
        (0..na).flat_map(move |i| {
            (0..nb).flat_map(move |j| {
                (0..ng).map(move |k| {
                    (
                        self.angles.alphas[i],
                        self.angles.betas[j],
                        self.angles.gammas[k],
                        self.get(i, j, k),
                    )
                })
            })
        })
    }
}

/// Directional convolution `(f ⊛ g)(ρ) = ⟨f, R_ρ g⟩` evaluated directly at every sampled `ρ`.
///
/// Expanded, `Σ_lm f_lm e^{imα} Σ_m' d^l_mm'(β) e^{im'γ} g*_lm'`.
pub fn directional_convolve(
    f: &HarmonicCoefficients,
    g: &HarmonicCoefficients,
    angles: &So3Angles,
) -> Result<So3Signal> {
    same_bandlimit(f, g)?;
    if angles.is_empty() {
        return Err(Error::dimension("directional convolution needs non-empty angle arrays"));
    }
    if let Some(b) = angles.betas.iter().find(|b| !(0.0..=PI).contains(*b)) {
        return Err(Error::domain(format!("beta sample {b} outside [0, pi]")));
    }
    let bandlimit = f.bandlimit();
    let top = bandlimit as i64 - 1;
    let phases = |angle: f64| -> Vec<Complex64> {
        (-top..=top)
            .map(|m| Complex64::from_polar(1.0, m as f64 * angle))
            .collect()
    };
    let alpha_phases: Vec<Vec<Complex64>> = angles.alphas.iter().map(|&a| phases(a)).collect();
    let gamma_phases: Vec<Vec<Complex64>> = angles.gammas.iter().map(|&c| phases(c)).collect();
    let g_conj = g.conj();

    // per β: [α][γ] slab
    let slabs: Vec<Vec<Complex64>> = angles
        .betas
        .par_iter()
        .map(|&beta| {
            let blocks = wigner_d_all(bandlimit, beta).expect("beta validated");
            let ng = angles.gammas.len();
            let mut slab = vec![Complex64::new(0.0, 0.0); angles.alphas.len() * ng];
            let mut h = HarmonicCoefficients::zeros(bandlimit).expect("positive bandlimit");
            for (k, gp) in gamma_phases.iter().enumerate() {
                for ell in 0..bandlimit {
                    let l = ell as i64;
                    let n = 2 * ell + 1;
                    let block = &blocks[ell];
                    let src = g_conj.degree(ell);
                    let twisted: Vec<Complex64> = (-l..=l)
                        .map(|mp| gp[(mp + top) as usize] * src[(mp + l) as usize])
                        .collect();
                    let dst = h.degree_mut(ell);
                    for row in 0..n {
                        let d = &block.entries()[row * n..(row + 1) * n];
                        dst[row] = d.iter().zip(&twisted).map(|(w, v)| v * *w).sum();
                    }
                }
                for (i, ap) in alpha_phases.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for ell in 0..bandlimit {
                        let l = ell as i64;
                        for ((m, fv), hv) in (-l..=l).zip(f.degree(ell)).zip(h.degree(ell)) {
                            acc += fv * ap[(m + top) as usize] * hv;
                        }
                    }
                    slab[i * ng + k] = acc;
                }
            }
            slab
        })
        .collect();

    let (na, nb, ng) = (angles.alphas.len(), angles.betas.len(), angles.gammas.len());
    let mut values = vec![Complex64::new(0.0, 0.0); na * nb * ng];
    for (j, slab) in slabs.iter().enumerate() {
        for i in 0..na {
            for k in 0..ng {
                values[(i * nb + j) * ng + k] = slab[i * ng + k];
            }
        }
    }
    So3Signal::new(angles.clone(), values)
}

/// Commutative anisotropic convolution evaluated on every point of `grid`:
///
/// ```text
/// (f ⊕ g)(θ, φ) = Σ_lm (R_(φ, θ, π-φ) f)_lm g*_lm
/// ```
///
/// The rotation `(φ, θ, π - φ)` is a half-turn, hence its own inverse, which
/// makes the operator symmetric for real fields. For complex fields swapping
/// the operands conjugates the result.
pub fn commutative_anisotropic_convolve(
    f: &HarmonicCoefficients,
    g: &HarmonicCoefficients,
    grid: &SphereGrid,
) -> Result<GridSignal> {
    same_bandlimit(f, g)?;
    let bandlimit = f.bandlimit();
    let top = bandlimit as i64 - 1;
    let span = 2 * top as usize + 1;
    let n_phi = grid.n_phi();
    let phis = grid.phis();

    // e^{-imφ} d_mm'(θ) (-1)^{m'} e^{im'φ}: gather by frequency k = m - m'
    let rows: Vec<Vec<Complex64>> = grid
        .thetas()
        .par_iter()
        .map(|&theta| {
            let blocks = wigner_d_all(bandlimit, theta).expect("grid colatitudes lie in [0, pi]");
            let mut by_freq = vec![Complex64::new(0.0, 0.0); 2 * span - 1];
            for ell in 0..bandlimit {
                let l = ell as i64;
                let block = &blocks[ell];
                for m in -l..=l {
                    let gm = g.get(ell, m).conj();
                    for mp in -l..=l {
                        let sign = if mp % 2 == 0 { 1.0 } else { -1.0 };
                        let k = (m - mp + 2 * top) as usize;
                        by_freq[k] += gm * f.get(ell, mp) * (sign * block.get(m, mp));
                    }
                }
            }
            (0..n_phi)
                .map(|c| {
                    let phi = phis[c];
                    by_freq
                        .iter()
                        .enumerate()
                        .map(|(k, v)| v * Complex64::from_polar(1.0, -((k as i64 - 2 * top) as f64) * phi))
                        .sum()
                })
                .collect()
        })
        .collect();

    GridSignal::new(grid.clone(), rows.concat())
}

/// `max_lm |(g ⊚ f)_lm - ((f ⊚ g)_lm)*|`.
pub fn conj_commutativity_check(f: &HarmonicCoefficients, g: &HarmonicCoefficients) -> Result<f64> {
    let fg = sift_convolve(f, g)?;
    let gf = sift_convolve(g, f)?;
    Ok(gf.max_abs_diff(&fg.conj()))
}
