//! The Earth smoothing demo: two translated harmonic Gaussians, the topography
//! map, and the topography sifting-convolved with each kernel.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use log::info;
use siftsphere::io::{ingest_gfc, recenter_view, render, Colormap, Part, RasterImage, SYNTHETIC_TOPOGRAPHY};
use siftsphere::kernels::{azimuthal_second_moment, harmonic_gaussian, HarmonicGaussianSpec};
use siftsphere::operators::{sift_convolve, translate};
use siftsphere::{inverse_sht, Complex64, Error, HarmonicCoefficients, Result, SphereGrid, SpherePoint};

/// `(σ_ℓ, σ_m)` of the elongated kernel.
pub const ELONGATED: (f64, f64) = (100.0, 10.0);
/// `(σ_ℓ, σ_m)` of the symmetric kernel.
pub const SYMMETRIC: (f64, f64) = (10.0, 10.0);

/// Images written by the demo, in order.
pub const DEMO_FILES: [&str; 5] = [
    "kernel_elongated.png",
    "kernel_symmetric.png",
    "earth.png",
    "convolved_elongated.png",
    "convolved_symmetric.png",
];

#[derive(Clone, Debug)]
pub struct DemoOptions {
    pub bandlimit: usize,
    pub gfc: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub width: usize,
    pub colormap: Colormap,
    /// Where the kernels are translated to.
    pub translation: SpherePoint,
    /// Map point shown in the middle of the topography images.
    pub center: SpherePoint,
}

impl DemoOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        Self {
            bandlimit: 128,
            gfc: None,
            out_dir: out_dir.into(),
            width: 1024,
            colormap: Colormap::Viridis,
            translation: SpherePoint::new(PI / 8.0, 3.0 * PI / 4.0).expect("valid point"),
            center: SpherePoint::new(7.0 * PI / 12.0, 5.0 * PI / 3.0).expect("valid point"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DemoReport {
    pub files: Vec<PathBuf>,
    /// Azimuthal second moment of `|T f|` for the elongated kernel.
    pub moment_elongated: f64,
    /// Azimuthal second moment of `|T f|` for the symmetric kernel.
    pub moment_symmetric: f64,
    /// Largest per-channel difference between the two convolved images.
    pub convolved_pixel_difference: u8,
    pub elapsed: Duration,
}

fn write(img: &RasterImage, dir: &Path, name: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    let path = dir.join(name);
    img.write_png(&path)?;
    info!("wrote {}", path.display());
    files.push(path);
    Ok(())
}

fn max_pixel_difference(a: &RasterImage, b: &RasterImage) -> u8 {
    a.pixels()
        .iter()
        .zip(b.pixels())
        .flat_map(|(p, q)| (0..3).map(move |c| p[c].abs_diff(q[c])))
        .max()
        .unwrap_or(0)
}

fn load_earth(opts: &DemoOptions) -> Result<HarmonicCoefficients> {
    match &opts.gfc {
        None => ingest_gfc(SYNTHETIC_TOPOGRAPHY, opts.bandlimit),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
            ingest_gfc(&text, opts.bandlimit)
        }
    }
}

pub fn run_demo(opts: &DemoOptions) -> Result<DemoReport> {
    let start = Instant::now();
    let l = opts.bandlimit;
    std::fs::create_dir_all(&opts.out_dir).map_err(|source| Error::Io {
        path: opts.out_dir.display().to_string(),
        source,
    })?;
    let earth = load_earth(opts)?;
    let grid = SphereGrid::new(l)?;
    let kernels = [ELONGATED, SYMMETRIC]
        .map(|(a, b)| HarmonicGaussianSpec::new(a, b, l).map(|s| harmonic_gaussian(&s)));
    let [elongated, symmetric] = kernels;
    let (elongated, symmetric) = (elongated?, symmetric?);

    let mut files = Vec::with_capacity(DEMO_FILES.len());
    let mut moments = [0.0; 2];
    for (i, k) in [&elongated, &symmetric].into_iter().enumerate() {
        let t = inverse_sht(&translate(k, opts.translation), &grid)?;
        moments[i] = azimuthal_second_moment(&t.map(|v| Complex64::new(v.norm(), 0.0)));
        let img = render(&t, Part::Real, opts.colormap, opts.width)?;
        write(&img, &opts.out_dir, DEMO_FILES[i], &mut files)?;
    }

    let earth_view = inverse_sht(&recenter_view(&earth, opts.center), &grid)?;
    write(&render(&earth_view, Part::Real, opts.colormap, opts.width)?, &opts.out_dir, DEMO_FILES[2], &mut files)?;

    // kernel ⊚ earth is the smoothed map reflected in longitude
    let mirrored = SpherePoint::new(opts.center.theta(), -opts.center.phi())?;
    let mut convolved = Vec::with_capacity(2);
    for (i, k) in [&elongated, &symmetric].into_iter().enumerate() {
        let c = recenter_view(&sift_convolve(k, &earth)?, mirrored);
        let img = render(&inverse_sht(&c, &grid)?, Part::Real, opts.colormap, opts.width)?;
        write(&img, &opts.out_dir, DEMO_FILES[3 + i], &mut files)?;
        convolved.push(img);
    }

    Ok(DemoReport {
        files,
        moment_elongated: moments[0],
        moment_symmetric: moments[1],
        convolved_pixel_difference: max_pixel_difference(&convolved[0], &convolved[1]),
        elapsed: start.elapsed(),
    })
}
