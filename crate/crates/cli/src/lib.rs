//! Command-line front end: argument definitions, dispatch and exit codes.

pub mod angle;
pub mod demo;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use siftsphere::io::{
    ingest_gfc, read_coeffs, recenter_view, render, write_coeffs, write_grid_table, write_so3_table, CoefficientKind,
    Colormap, Part,
};
use siftsphere::kernels::{dirac_delta, enforce_reality, harmonic_gaussian, HarmonicGaussianSpec};
use siftsphere::operators::{
    commutative_anisotropic_convolve, conj_commutativity_check, directional_convolve, isotropic_convolve,
    left_convolve, pad_to_common, sift_convolve, translate, So3Angles,
};
use siftsphere::{inverse_sht, Error, HarmonicCoefficients, SphereGrid, SpherePoint};

use angle::parse_angle;
use demo::{run_demo, DemoOptions, DEMO_FILES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "SIFTSPHERE_THREADS";

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => EXIT_USAGE,
            Error::Io { .. } => EXIT_IO,
            _ => EXIT_VALIDATION,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "siftsphere", version, about = "Spherical harmonic transforms and convolutions on the sphere")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the coefficients of a kernel.
    Kernel {
        #[command(subcommand)]
        kernel: KernelCommand,
    },
    /// Translate a coefficient file to a point on the sphere.
    Translate {
        input: PathBuf,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        phi: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Convolve two coefficient files.
    ///
    /// Sphere methods write a coefficient file, `directional` writes an
    /// `alpha beta gamma re im` table and `commutative-anisotropic` writes a
    /// `theta phi re im` table on the Gauss–Legendre grid.
    Convolve {
        #[arg(long, value_enum)]
        method: Method,
        f: PathBuf,
        g: PathBuf,
        /// Zero-pad the operand with the smaller bandlimit.
        #[arg(long)]
        pad: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Report max |(g ⊚ f)_lm - ((f ⊚ g)_lm)*|; fails above the tolerance.
    VerifyConjugate {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
        #[arg(long)]
        pad: bool,
    },
    /// Synthesize a coefficient file and render it as an equirectangular PNG.
    Render {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = PartArg::Real)]
        part: PartArg,
        /// Image width in pixels; the height is half of it.
        #[arg(long, default_value_t = 1024)]
        width: usize,
        #[arg(long, value_enum, default_value_t = ColormapArg::Viridis)]
        colormap: ColormapArg,
        /// Colatitude placed at the image centre.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, requires = "center_phi")]
        center_theta: Option<f64>,
        /// Longitude placed at the image centre.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, requires = "center_theta")]
        center_phi: Option<f64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Reproduce the Earth smoothing figures as five PNGs.
    DemoEarth {
        #[arg(long = "L", value_name = "L", default_value_t = 128)]
        bandlimit: usize,
        /// ICGEM coefficient file to use instead of the bundled synthetic topography.
        #[arg(long)]
        gfc: Option<PathBuf>,
        #[arg(long, default_value = "demo-output")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 1024)]
        width: usize,
        #[arg(long, value_enum, default_value_t = ColormapArg::Viridis)]
        colormap: ColormapArg,
        /// Translation colatitude of the kernels.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "pi/8")]
        theta: f64,
        /// Translation longitude of the kernels.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "3pi/4")]
        phi: f64,
        /// Colatitude of the topography view centre.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "7pi/12")]
        center_theta: f64,
        /// Longitude of the topography view centre.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "5pi/3")]
        center_phi: f64,
    },
    /// Convert an ICGEM coefficient file to the native coefficient format.
    Ingest {
        gfc: PathBuf,
        #[arg(long = "L", value_name = "L")]
        bandlimit: usize,
        #[arg(long, value_enum, default_value_t = KindArg::RealSymmetric)]
        kind: KindArg,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum KernelCommand {
    /// f_lm = exp(-(l²/2σ_l² + m²/2σ_m²)).
    HarmonicGaussian {
        #[arg(long = "L", value_name = "L")]
        bandlimit: usize,
        #[arg(long)]
        sigma_l: f64,
        #[arg(long)]
        sigma_m: f64,
        /// Keep m >= 0 and rebuild m < 0 by conjugate symmetry (a real field).
        #[arg(long)]
        real: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Bandlimited Dirac delta at (theta, phi).
    DiracDelta {
        #[arg(long = "L", value_name = "L")]
        bandlimit: usize,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        phi: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Sifting,
    Isotropic,
    Left,
    Directional,
    CommutativeAnisotropic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PartArg {
    Real,
    Imag,
    Abs,
}

impl From<PartArg> for Part {
    fn from(p: PartArg) -> Self {
        match p {
            PartArg::Real => Part::Real,
            PartArg::Imag => Part::Imag,
            PartArg::Abs => Part::Abs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColormapArg {
    Viridis,
    Grayscale,
}

impl From<ColormapArg> for Colormap {
    fn from(c: ColormapArg) -> Self {
        match c {
            ColormapArg::Viridis => Colormap::Viridis,
            ColormapArg::Grayscale => Colormap::Grayscale,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Complex,
    RealSymmetric,
}

impl From<KindArg> for CoefficientKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Complex => CoefficientKind::Complex,
            KindArg::RealSymmetric => CoefficientKind::RealSymmetric,
        }
    }
}

fn io_error(path: &Path, source: std::io::Error) -> CliError {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
    .into()
}

fn load(path: &Path) -> CliResult<HarmonicCoefficients> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    read_coeffs(&text).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> CliError {
    let mut err = CliError::from(e);
    err.message = format!("{}: {}", path.display(), err.message);
    err
}

fn save_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}

fn save_coeffs(path: &Path, f: &HarmonicCoefficients, kind: CoefficientKind) -> CliResult<()> {
    save_text(path, &write_coeffs(f, kind)?)
}

fn point(theta: f64, phi: f64) -> CliResult<SpherePoint> {
    SpherePoint::new(theta, phi).map_err(|e| CliError::usage(e.to_string()))
}

fn operands(f: &Path, g: &Path, pad: bool) -> CliResult<(HarmonicCoefficients, HarmonicCoefficients)> {
    let (f, g) = (load(f)?, load(g)?);
    if pad {
        Ok(pad_to_common(&f, &g))
    } else {
        Ok((f, g))
    }
}

fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Kernel { kernel } => match kernel {
            KernelCommand::HarmonicGaussian {
                bandlimit,
                sigma_l,
                sigma_m,
                real,
                output,
            } => {
                let spec = HarmonicGaussianSpec::new(sigma_l, sigma_m, bandlimit)
                    .map_err(|e| CliError::usage(e.to_string()))?;
                let k = harmonic_gaussian(&spec);
                if real {
                    save_coeffs(&output, &enforce_reality(&k), CoefficientKind::RealSymmetric)
                } else {
                    save_coeffs(&output, &k, CoefficientKind::Complex)
                }
            }
            KernelCommand::DiracDelta {
                bandlimit,
                theta,
                phi,
                output,
            } => {
                let d = dirac_delta(bandlimit, point(theta, phi)?).map_err(|e| CliError::usage(e.to_string()))?;
                save_coeffs(&output, &d, CoefficientKind::Complex)
            }
        },
        Command::Translate {
            input,
            theta,
            phi,
            output,
        } => {
            let p = point(theta, phi)?;
            let f = load(&input)?;
            save_coeffs(&output, &translate(&f, p), CoefficientKind::Complex)
        }
        Command::Convolve {
            method,
            f,
            g,
            pad,
            output,
        } => {
            let (f, g) = operands(&f, &g, pad)?;
            match method {
                Method::Sifting => save_coeffs(&output, &sift_convolve(&f, &g)?, CoefficientKind::Complex),
                Method::Isotropic => save_coeffs(&output, &isotropic_convolve(&f, &g)?, CoefficientKind::Complex),
                Method::Left => save_coeffs(&output, &left_convolve(&f, &g)?, CoefficientKind::Complex),
                Method::Directional => {
                    let angles = So3Angles::default_for(f.bandlimit())?;
                    save_text(&output, &write_so3_table(&directional_convolve(&f, &g, &angles)?))
                }
                Method::CommutativeAnisotropic => {
                    let grid = SphereGrid::new(f.bandlimit())?;
                    save_text(&output, &write_grid_table(&commutative_anisotropic_convolve(&f, &g, &grid)?))
                }
            }
        }
        Command::VerifyConjugate { f, g, tol, pad } => {
            let (f, g) = operands(&f, &g, pad)?;
            let dev = conj_commutativity_check(&f, &g)?;
            println!("max deviation {dev:e} (tolerance {tol:e})");
            if dev > tol {
                return Err(CliError {
                    code: EXIT_VALIDATION,
                    message: format!("conjugate commutativity violated: {dev:e} > {tol:e}"),
                });
            }
            Ok(())
        }
        Command::Render {
            input,
            part,
            width,
            colormap,
            center_theta,
            center_phi,
            output,
        } => {
            let mut f = load(&input)?;
            if let (Some(t), Some(p)) = (center_theta, center_phi) {
                f = recenter_view(&f, point(t, p)?);
            }
            let s = inverse_sht(&f, &SphereGrid::new(f.bandlimit())?)?;
            let img = render(&s, part.into(), colormap.into(), width)?;
            img.write_png(&output)?;
            Ok(())
        }
        Command::DemoEarth {
            bandlimit,
            gfc,
            out_dir,
            width,
            colormap,
            theta,
            phi,
            center_theta,
            center_phi,
        } => {
            let opts = DemoOptions {
                bandlimit,
                gfc: gfc.clone(),
                out_dir,
                width,
                colormap: colormap.into(),
                translation: point(theta, phi)?,
                center: point(center_theta, center_phi)?,
            };
            let report = run_demo(&opts).map_err(|e| match (&gfc, &e) {
                (Some(path), Error::Parse { .. } | Error::Format(_)) => with_path(path, e),
                _ => e.into(),
            })?;
            for path in &report.files {
                println!("{}", path.display());
            }
            println!(
                "azimuthal second moment: elongated {:.6}, symmetric {:.6}",
                report.moment_elongated, report.moment_symmetric
            );
            println!(
                "max pixel difference between convolved maps: {}",
                report.convolved_pixel_difference
            );
            debug_assert_eq!(report.files.len(), DEMO_FILES.len());
            Ok(())
        }
        Command::Ingest {
            gfc,
            bandlimit,
            kind,
            output,
        } => {
            let text = std::fs::read_to_string(&gfc).map_err(|e| io_error(&gfc, e))?;
            let f = ingest_gfc(&text, bandlimit).map_err(|e| with_path(&gfc, e))?;
            save_coeffs(&output, &f, kind.into())
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::usage(format!("{THREADS_ENV} must be a positive integer, got '{value}'")))?;
    // a pool set up by an earlier call stays in place
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match configure_threads().and_then(|_| execute(cli)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
