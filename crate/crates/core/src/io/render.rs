//! Equirectangular rendering of grid signals to 8-bit RGB images.
//!
//! Pixel `(row, col)` of a `W × H` image (`W = 2H`) samples colatitude
//! `(row + ½) π / H` and longitude `(col + ½) 2π / W`, so north is up,
//! longitude grows to the right and the image centre is `(π/2, π)`.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use log::warn;
use num_complex::Complex64;

use crate::coefficients::HarmonicCoefficients;
use crate::error::{Error, Result};
use crate::rotation::{rotate, EulerAngles};
use crate::sht::GridSignal;
use crate::sphere::SpherePoint;

/// Which scalar is drawn from a complex field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Real,
    Imag,
    Abs,
}

impl Part {
    pub fn select(&self, v: Complex64) -> f64 {
        match self {
            Part::Real => v.re,
            Part::Imag => v.im,
            Part::Abs => v.norm(),
        }
    }
}

impl FromStr for Part {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Part::Real),
            "imag" => Ok(Part::Imag),
            "abs" => Ok(Part::Abs),
            other => Err(Error::domain(format!("unknown part '{other}' (real, imag, abs)"))),
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::Real => "real",
            Part::Imag => "imag",
            Part::Abs => "abs",
        })
    }
}

// viridis sampled at 17 evenly spaced stops
const VIRIDIS: [[u8; 3]; 17] = [
    [68, 1, 84],
    [72, 24, 106],
    [71, 45, 123],
    [66, 64, 134],
    [59, 82, 139],
    [51, 99, 141],
    [44, 114, 142],
    [38, 130, 142],
    [33, 145, 140],
    [31, 160, 136],
    [40, 174, 128],
    [63, 188, 115],
    [94, 201, 98],
    [132, 212, 75],
    [173, 220, 48],
    [216, 226, 25],
    [253, 231, 37],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Colormap {
    Viridis,
    Grayscale,
}

impl Colormap {
    /// Colour of a value in `[0, 1]` (clamped).
    pub fn map(&self, t: f64) -> [u8; 3] {
        let t = if t.is_nan() { 0.0 } else { t.clamp(0.0, 1.0) };
        match self {
            Colormap::Grayscale => {
                let v = (t * 255.0).round() as u8;
                [v, v, v]
            }
            Colormap::Viridis => {
                let x = t * (VIRIDIS.len() - 1) as f64;
                let i = (x.floor() as usize).min(VIRIDIS.len() - 2);
                let w = x - i as f64;
                let (a, b) = (VIRIDIS[i], VIRIDIS[i + 1]);
                let mut out = [0u8; 3];
                for c in 0..3 {
                    out[c] = (a[c] as f64 * (1.0 - w) + b[c] as f64 * w).round() as u8;
                }
                out
            }
        }
    }
}

impl FromStr for Colormap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "viridis" => Ok(Colormap::Viridis),
            "grayscale" | "greyscale" | "gray" => Ok(Colormap::Grayscale),
            other => Err(Error::domain(format!("unknown colormap '{other}' (viridis, grayscale)"))),
        }
    }
}

impl fmt::Display for Colormap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colormap::Viridis => "viridis",
            Colormap::Grayscale => "grayscale",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RasterImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
    colormap: Colormap,
    scale_min: f64,
    scale_max: f64,
    degenerate: bool,
}

impl RasterImage {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        self.pixels[row * self.width + col]
    }

    pub fn colormap(&self) -> Colormap {
        self.colormap
    }

    /// Field values mapped to 0 and 1.
    pub fn scale(&self) -> (f64, f64) {
        (self.scale_min, self.scale_max)
    }

    /// True when the field was flat and the image was filled with the mid colour.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn to_png(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut out, self.width as u32, self.height as u32);
            enc.set_color(png::ColorType::Rgb);
            enc.set_depth(png::BitDepth::Eight);
            let mut writer = enc
                .write_header()
                .map_err(|e| Error::Format(format!("png encoding failed: {e}")))?;
            let data: Vec<u8> = self.pixels.iter().flatten().copied().collect();
            writer
                .write_image_data(&data)
                .map_err(|e| Error::Format(format!("png encoding failed: {e}")))?;
        }
        Ok(out)
    }

    pub fn write_png(&self, path: &Path) -> Result<()> {
        let bytes = self.to_png()?;
        std::fs::write(path, bytes).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

/// Bilinear value of the grid signal at an arbitrary point.
fn interpolate(s: &GridSignal, theta: f64, phi: f64) -> Complex64 {
    let grid = s.grid();
    let thetas = grid.thetas();
    let n_phi = grid.n_phi();
    let u = phi / (2.0 * PI) * n_phi as f64;
    let k0 = (u.floor() as i64).rem_euclid(n_phi as i64) as usize;
    let k1 = (k0 + 1) % n_phi;
    let wu = u - u.floor();
    let along = |j: usize| s.get(j, k0) * (1.0 - wu) + s.get(j, k1) * wu;

    let upper = thetas.partition_point(|&t| t <= theta);
    if upper == 0 {
        along(0)
    } else if upper == thetas.len() {
        along(thetas.len() - 1)
    } else {
        let (t0, t1) = (thetas[upper - 1], thetas[upper]);
        let w = (theta - t0) / (t1 - t0);
        along(upper - 1) * (1.0 - w) + along(upper) * w
    }
}

/// Flat fields (spread below this, relative to the magnitude) render as a uniform mid colour.
const FLAT_FIELD_TOLERANCE: f64 = 1e-10;

/// Renders `part` of `s` as a `width × width/2` image rescaled to `[0, 1]` over the image.
pub fn render(s: &GridSignal, part: Part, colormap: Colormap, width: usize) -> Result<RasterImage> {
    if width < 2 || !width.is_multiple_of(2) {
        return Err(Error::domain(format!("image width must be even and at least 2, got {width}")));
    }
    let height = width / 2;
    let mut values = Vec::with_capacity(width * height);
    for row in 0..height {
        let theta = (row as f64 + 0.5) * PI / height as f64;
        for col in 0..width {
            let phi = (col as f64 + 0.5) * 2.0 * PI / width as f64;
            values.push(part.select(interpolate(s, theta, phi)));
        }
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let magnitude = lo.abs().max(hi.abs()).max(1.0);
    let spread = hi - lo;
    let degenerate = spread.is_nan() || spread <= FLAT_FIELD_TOLERANCE * magnitude;
    if degenerate {
        warn!("field is flat (min {lo:e}, max {hi:e}); rendering a uniform image");
    }
    let pixels = values
        .iter()
        .map(|&v| {
            let t = if degenerate { 0.5 } else { (v - lo) / (hi - lo) };
            colormap.map(t)
        })
        .collect();
    Ok(RasterImage {
        width,
        height,
        pixels,
        colormap,
        scale_min: lo,
        scale_max: hi,
        degenerate,
    })
}

/// Rotation carrying `center` to the image centre `(π/2, π)`: a longitude
/// shift by `π - φ_c` followed by a tilt along the central meridian.
/// The meridian through `center` stays vertical in the image.
pub fn centering_rotation(center: SpherePoint) -> EulerAngles {
    let shift = EulerAngles::new(PI - center.phi(), 0.0, 0.0).expect("finite");
    let tilt = center.theta() - PI / 2.0;
    let tilt = EulerAngles::new(0.0, tilt, 0.0).expect("finite");
    tilt.compose(&shift)
}

/// Rotates `f` so that `center` appears in the middle of a rendered image.
pub fn recenter_view(f: &HarmonicCoefficients, center: SpherePoint) -> HarmonicCoefficients {
    rotate(f, &centering_rotation(center))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::dirac_delta;
    use crate::sht::{inverse_sht, SphereGrid};

    fn argmax(img: &RasterImage, part: impl Fn([u8; 3]) -> u32) -> (usize, usize) {
        let mut best = (0, 0, 0);
        for r in 0..img.height() {
            for c in 0..img.width() {
                let v = part(img.pixel(r, c));
                if v > best.2 {
                    best = (r, c, v);
                }
            }
        }
        (best.0, best.1)
    }

    #[test]
    fn constant_field_is_uniform_and_flagged() {
        let g = SphereGrid::new(4).unwrap();
        let s = GridSignal::from_fn(g, |_| Complex64::new(3.0, 0.0));
        let img = render(&s, Part::Real, Colormap::Viridis, 16).unwrap();
        assert!(img.is_degenerate());
        assert!(img.pixels().iter().all(|p| *p == img.pixel(0, 0)));
        assert_eq!(img.pixel(0, 0), Colormap::Viridis.map(0.5));
    }

    #[test]
    fn monopole_field_renders_identical_pixels() {
        let mut f = HarmonicCoefficients::zeros(8).unwrap();
        f.set(0, 0, Complex64::new(2.0, 0.0));
        let s = inverse_sht(&f, &SphereGrid::new(8).unwrap()).unwrap();
        let img = render(&s, Part::Real, Colormap::Grayscale, 64).unwrap();
        assert_eq!((img.width(), img.height()), (64, 32));
        assert!(img.pixels().iter().all(|p| *p == img.pixel(0, 0)));
    }

    #[test]
    fn delta_peak_lands_at_image_centre() {
        let p = SpherePoint::new(PI / 2.0, PI).unwrap();
        let d = dirac_delta(24, p).unwrap();
        let s = inverse_sht(&d, &SphereGrid::new(24).unwrap()).unwrap();
        let img = render(&s, Part::Real, Colormap::Grayscale, 128).unwrap();
        let (r, c) = argmax(&img, |p| p[0] as u32);
        // pixel centres straddle the image centre at (31.5, 63.5)
        assert!((r as f64 - 31.5).abs() <= 1.5 && (c as f64 - 63.5).abs() <= 1.5, "({r}, {c})");
    }

    #[test]
    fn recentering_moves_a_delta_to_the_centre() {
        let p = SpherePoint::new(1.2, 0.7).unwrap();
        let d = dirac_delta(24, p).unwrap();
        let moved = recenter_view(&d, p);
        let s = inverse_sht(&moved, &SphereGrid::new(24).unwrap()).unwrap();
        let img = render(&s, Part::Real, Colormap::Grayscale, 128).unwrap();
        let (r, c) = argmax(&img, |p| p[0] as u32);
        assert!((r as f64 - 31.5).abs() <= 1.5 && (c as f64 - 63.5).abs() <= 1.5, "({r}, {c})");
    }

    #[test]
    fn equatorial_centering_is_a_longitude_shift() {
        let rho = centering_rotation(SpherePoint::new(PI / 2.0, 1.0).unwrap());
        assert!(rho.beta().abs() < 1e-12);
        assert!(((rho.alpha() + rho.gamma()).rem_euclid(2.0 * PI) - (PI - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_widths_and_names() {
        let s = GridSignal::zeros(SphereGrid::new(2).unwrap());
        assert!(render(&s, Part::Abs, Colormap::Viridis, 7).is_err());
        assert!(render(&s, Part::Abs, Colormap::Viridis, 0).is_err());
        assert!("phase".parse::<Part>().is_err());
        assert!("jet".parse::<Colormap>().is_err());
    }

    #[test]
    fn png_output_is_deterministic() {
        let d = dirac_delta(8, SpherePoint::new(0.5, 2.0).unwrap()).unwrap();
        let s = inverse_sht(&d, &SphereGrid::new(8).unwrap()).unwrap();
        let a = render(&s, Part::Abs, Colormap::Viridis, 32).unwrap().to_png().unwrap();
        let b = render(&s, Part::Abs, Colormap::Viridis, 32).unwrap().to_png().unwrap();
        assert_eq!(a, b);
        assert_eq!(&a[1..4], b"PNG");
    }

    #[test]
    fn colormap_endpoints() {
        assert_eq!(Colormap::Viridis.map(0.0), [68, 1, 84]);
        assert_eq!(Colormap::Viridis.map(1.0), [253, 231, 37]);
        assert_eq!(Colormap::Grayscale.map(2.0), [255, 255, 255]);
    }
}
