#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use siftsphere::{Complex64, HarmonicCoefficients, SpherePoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coeffs(rng: &mut ChaCha8Rng, bandlimit: usize) -> HarmonicCoefficients {
    HarmonicCoefficients::from_fn(bandlimit, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
    .unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    SpherePoint::new(z.acos(), phi).unwrap()
}

/// Legendre polynomial `P_l(x)` by the Bonnet recurrence.
pub fn legendre_p(l: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if l == 0 {
        return 1.0;
    }
    for n in 1..l {
        let p2 = ((2 * n + 1) as f64 * x * p1 - n as f64 * p0) / (n + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

use siftsphere::operators::So3Angles;
use siftsphere::sht::ylm_all;
use siftsphere::{EulerAngles, SphereGrid};

/// Pointwise values of every harmonic at every grid point, `[point][mode]`.
pub fn harmonic_table(grid: &SphereGrid) -> Vec<HarmonicCoefficients> {
    grid.points().map(|(_, _, p)| ylm_all(grid.bandlimit(), p).unwrap()).collect()
}

fn eval(f: &HarmonicCoefficients, y: &HarmonicCoefficients) -> Complex64 {
    f.values().iter().zip(y.values()).map(|(a, b)| a * b).sum()
}

fn weights(grid: &SphereGrid) -> Vec<f64> {
    grid.points().map(|(j, _, _)| grid.sample_weight(j)).collect()
}

/// `∫ (T_ω f)(ω') g*(ω') dΩ'` by quadrature at every grid point `ω`.
pub fn sifting_quadrature(f: &HarmonicCoefficients, g: &HarmonicCoefficients, grid: &SphereGrid) -> Vec<Complex64> {
    let table = harmonic_table(grid);
    let w = weights(grid);
    let g_conj: Vec<Complex64> = table.iter().map(|y| eval(g, y).conj()).collect();
    table
        .iter()
        .map(|y_out| {
            // T_ω f has coefficients f_lm Y_lm(ω)
            let shifted: Vec<Complex64> = f.values().iter().zip(y_out.values()).map(|(a, b)| a * b).collect();
            table
                .iter()
                .enumerate()
                .map(|(q, y)| {
                    let t: Complex64 = shifted.iter().zip(y.values()).map(|(a, b)| a * b).sum();
                    t * g_conj[q] * w[q]
                })
                .sum()
        })
        .collect()
}

/// `∫ f(ω') (R_ω g)*(ω') dΩ'` for axisymmetric `g`, with `R_ω g` written as a
/// zonal series in `ω·ω'`.
pub fn isotropic_quadrature(f: &HarmonicCoefficients, g: &HarmonicCoefficients, grid: &SphereGrid) -> Vec<Complex64> {
    let table = harmonic_table(grid);
    let w = weights(grid);
    let fv: Vec<Complex64> = table.iter().map(|y| eval(f, y)).collect();
    let xyz: Vec<[f64; 3]> = grid.points().map(|(_, _, p)| p.to_cartesian()).collect();
    let four_pi = 4.0 * std::f64::consts::PI;
    xyz.iter()
        .map(|out| {
            xyz.iter()
                .enumerate()
                .map(|(q, pt)| {
                    let c = dot(*out, *pt).clamp(-1.0, 1.0);
                    let rg: Complex64 = (0..g.bandlimit())
                        .map(|l| g.get(l, 0) * (((2 * l + 1) as f64 / four_pi).sqrt() * legendre_p(l, c)))
                        .sum();
                    fv[q] * rg.conj() * w[q]
                })
                .sum()
        })
        .collect()
}

/// `∫ f(ω) (R_ρ g)*(ω) dΩ` with `(R_ρ g)(ω) = g(R_ρ⁻¹ ω)`, γ fastest.
pub fn directional_quadrature(
    f: &HarmonicCoefficients,
    g: &HarmonicCoefficients,
    grid: &SphereGrid,
    angles: &So3Angles,
) -> Vec<Complex64> {
    let table = harmonic_table(grid);
    let w = weights(grid);
    let fv: Vec<Complex64> = table.iter().map(|y| eval(f, y)).collect();
    let pts: Vec<SpherePoint> = grid.points().map(|(_, _, p)| p).collect();
    let mut out = Vec::new();
    for &a in &angles.alphas {
        for &b in &angles.betas {
            for &c in &angles.gammas {
                let inv = EulerAngles::new(a, b, c).unwrap().inverse();
                let v: Complex64 = pts
                    .iter()
                    .enumerate()
                    .map(|(q, p)| {
                        let back = SpherePoint::from_cartesian(inv.apply(p.to_cartesian())).unwrap();
                        let gv = eval(g, &ylm_all(g.bandlimit(), back).unwrap());
                        fv[q] * gv.conj() * w[q]
                    })
                    .sum();
                out.push(v);
            }
        }
    }
    out
}

/// `∫ (R_(φ,θ,π-φ) f)(ω') g*(ω') dΩ'` at every grid point `(θ, φ)`.
pub fn commutative_anisotropic_quadrature(
    f: &HarmonicCoefficients,
    g: &HarmonicCoefficients,
    grid: &SphereGrid,
) -> Vec<Complex64> {
    let table = harmonic_table(grid);
    let w = weights(grid);
    let g_conj: Vec<Complex64> = table.iter().map(|y| eval(g, y).conj()).collect();
    let pts: Vec<SpherePoint> = grid.points().map(|(_, _, p)| p).collect();
    pts.iter()
        .map(|out| {
            let rho = EulerAngles::new(out.phi(), out.theta(), std::f64::consts::PI - out.phi()).unwrap();
            let inv = rho.inverse();
            pts.iter()
                .enumerate()
                .map(|(q, p)| {
                    let back = SpherePoint::from_cartesian(inv.apply(p.to_cartesian())).unwrap();
                    eval(f, &ylm_all(f.bandlimit(), back).unwrap()) * g_conj[q] * w[q]
                })
                .sum()
        })
        .collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Random spectrum with only `m = 0` modes.
pub fn random_axisymmetric(rng: &mut ChaCha8Rng, bandlimit: usize) -> HarmonicCoefficients {
    HarmonicCoefficients::from_fn(bandlimit, |_, m| {
        if m == 0 {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
    .unwrap()
}
