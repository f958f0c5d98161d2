mod common;

use common::{random_coeffs, rng};
use siftsphere::kernels::enforce_reality;
use siftsphere::sht::coefficient_inner_product;
use siftsphere::{forward_sht, inner_product, inverse_sht, ylm, Complex64, HarmonicCoefficients, SphereGrid};

#[test]
fn round_trip_is_identity() {
    let mut r = rng(1);
    for l in [1, 8, 32, 128] {
        let f = random_coeffs(&mut r, l);
        let grid = SphereGrid::new(l).unwrap();
        let back = forward_sht(&inverse_sht(&f, &grid).unwrap()).unwrap();
        let err = back.max_abs_diff(&f);
        assert!(err < 1e-12, "L={l}: {err:e}");
    }
}

#[test]
fn oversampled_grid_still_round_trips() {
    let mut r = rng(2);
    let f = random_coeffs(&mut r, 10);
    let grid = SphereGrid::new(16).unwrap();
    let back = forward_sht(&inverse_sht(&f, &grid).unwrap()).unwrap();
    assert_eq!(back.bandlimit(), 16);
    assert!(back.max_abs_diff(&f) < 1e-12);
}

#[test]
fn parseval_on_random_signals() {
    let mut r = rng(3);
    for l in [4, 16, 32] {
        let f = random_coeffs(&mut r, l);
        let g = random_coeffs(&mut r, l);
        let grid = SphereGrid::new(l).unwrap();
        let fs = inverse_sht(&f, &grid).unwrap();
        let gs = inverse_sht(&g, &grid).unwrap();
        let direct = inner_product(&fs, &gs).unwrap();
        let want = coefficient_inner_product(&f, &g);
        assert!((direct - want).norm() < 1e-11, "L={l}");
        let norm = inner_product(&fs, &fs).unwrap();
        assert!(norm.re >= 0.0 && norm.im.abs() < 1e-14 * norm.re.max(1.0));
    }
}

#[test]
fn conjugate_symmetric_spectra_synthesize_real_fields() {
    let mut r = rng(4);
    for l in [2, 9, 32] {
        let f = enforce_reality(&random_coeffs(&mut r, l));
        let s = inverse_sht(&f, &SphereGrid::new(l).unwrap()).unwrap();
        assert!(s.max_imag() < 1e-12, "L={l}: {}", s.max_imag());
    }
}

#[test]
fn harmonics_are_orthonormal_under_quadrature() {
    let l = 12;
    let grid = SphereGrid::new(l).unwrap();
    let basis: Vec<_> = (0..l)
        .flat_map(|ell| (-(ell as i64)..=ell as i64).map(move |m| (ell, m)))
        .map(|(ell, m)| {
            let mut c = HarmonicCoefficients::zeros(l).unwrap();
            c.set(ell, m, Complex64::new(1.0, 0.0));
            inverse_sht(&c, &grid).unwrap()
        })
        .collect();
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner_product(a, b).unwrap() - want).norm());
        }
    }
    assert!(worst < 1e-12, "{worst:e}");
}

#[test]
fn synthesis_matches_pointwise_harmonics() {
    let mut r = rng(5);
    let f = random_coeffs(&mut r, 7);
    let grid = SphereGrid::new(7).unwrap();
    let s = inverse_sht(&f, &grid).unwrap();
    for (j, k, p) in grid.points() {
        let want: Complex64 = f.modes().map(|(l, m, v)| v * ylm(l, m, p).unwrap()).sum();
        assert!((s.get(j, k) - want).norm() < 1e-12);
    }
}

#[test]
fn transforms_are_deterministic() {
    let mut r = rng(6);
    let f = random_coeffs(&mut r, 40);
    let grid = SphereGrid::new(40).unwrap();
    let a = forward_sht(&inverse_sht(&f, &grid).unwrap()).unwrap();
    let b = forward_sht(&inverse_sht(&f, &grid).unwrap()).unwrap();
    assert_eq!(a, b);
}
