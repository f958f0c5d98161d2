//! `SIFTSPHERE-COEFF v1` text format.
//!
//! ```text
//! SIFTSPHERE-COEFF v1 L=<L> kind=<complex|real-symmetric>
//! <l> <m> <re> <im>
//! ...
//! ```
//!
//! Records are degree-major with ascending order. Values are written with 17
//! significant digits, which round-trips every finite `f64` exactly. A
//! `real-symmetric` file stores only `m >= 0`; the negative orders are rebuilt
//! from `f_l(-m) = (-1)^m f*_lm` on read.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_complex::Complex64;

use crate::coefficients::HarmonicCoefficients;
use crate::error::{Error, Result};

pub const COEFF_MAGIC: &str = "SIFTSPHERE-COEFF";
pub const COEFF_VERSION: &str = "v1";

/// Largest conjugate-symmetry violation accepted for `real-symmetric` output.
pub const REAL_SYMMETRY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientKind {
    Complex,
    RealSymmetric,
}

impl fmt::Display for CoefficientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientKind::Complex => "complex",
            CoefficientKind::RealSymmetric => "real-symmetric",
        })
    }
}

impl FromStr for CoefficientKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" => Ok(CoefficientKind::Complex),
            "real-symmetric" => Ok(CoefficientKind::RealSymmetric),
            other => Err(Error::Format(format!("unknown coefficient kind '{other}'"))),
        }
    }
}

/// Serializes `f` in the requested kind.
pub fn write_coeffs(f: &HarmonicCoefficients, kind: CoefficientKind) -> Result<String> {
    if kind == CoefficientKind::RealSymmetric {
        let err = f.conjugate_symmetry_error();
        if err > REAL_SYMMETRY_TOLERANCE {
            return Err(Error::Validation(format!(
                "spectrum violates conjugate symmetry by {err:e}; cannot store as real-symmetric"
            )));
        }
    }
    if let Some((l, m, _)) = f.modes().find(|(_, _, v)| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Validation(format!("mode (l={l}, m={m}) is not finite")));
    }
    let mut out = String::with_capacity(48 * f.values().len() + 64);
    writeln!(out, "{COEFF_MAGIC} {COEFF_VERSION} L={} kind={kind}", f.bandlimit()).unwrap();
    for (l, m, v) in f.modes() {
        if kind == CoefficientKind::RealSymmetric && m < 0 {
            continue;
        }
        writeln!(out, "{l} {m} {:.16e} {:.16e}", v.re, v.im).unwrap();
    }
    Ok(out)
}

fn parse_header(line: &str) -> Result<(usize, CoefficientKind)> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(COEFF_MAGIC) {
        return Err(Error::Format(format!("missing '{COEFF_MAGIC}' header")));
    }
    match parts.next() {
        Some(COEFF_VERSION) => {}
        Some(v) => return Err(Error::Format(format!("unsupported version '{v}'"))),
        None => return Err(Error::Format("header lacks a version".into())),
    }
    let mut bandlimit = None;
    let mut kind = None;
    for field in parts {
        if let Some(v) = field.strip_prefix("L=") {
            bandlimit = Some(
                v.parse::<usize>()
                    .map_err(|_| Error::Format(format!("bad bandlimit '{v}'")))?,
            );
        } else if let Some(v) = field.strip_prefix("kind=") {
            kind = Some(v.parse()?);
        } else {
            return Err(Error::Format(format!("unexpected header field '{field}'")));
        }
    }
    match (bandlimit, kind) {
        (Some(0), _) => Err(Error::Format("bandlimit must be at least 1".into())),
        (Some(l), Some(k)) => Ok((l, k)),
        _ => Err(Error::Format("header needs both L= and kind=".into())),
    }
}

/// Parses a file produced by [`write_coeffs`].
pub fn read_coeffs(text: &str) -> Result<HarmonicCoefficients> {
    let mut lines = text.lines().enumerate();
    let (bandlimit, kind) = match lines.next() {
        Some((_, h)) => parse_header(h)?,
        None => return Err(Error::Format("empty coefficient file".into())),
    };
    let mut out = HarmonicCoefficients::zeros(bandlimit)?;
    let mut seen = vec![false; bandlimit * bandlimit];

    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::parse(lineno, format!("expected 4 fields, found {}", fields.len())));
        }
        let l: usize = fields[0]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad degree '{}'", fields[0])))?;
        let m: i64 = fields[1]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad order '{}'", fields[1])))?;
        let re: f64 = fields[2]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad real part '{}'", fields[2])))?;
        let im: f64 = fields[3]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad imaginary part '{}'", fields[3])))?;
        if l >= bandlimit || m.unsigned_abs() as usize > l {
            return Err(Error::parse(lineno, format!("mode (l={l}, m={m}) outside bandlimit {bandlimit}")));
        }
        if kind == CoefficientKind::RealSymmetric && m < 0 {
            return Err(Error::parse(lineno, format!("real-symmetric file holds negative order (l={l}, m={m})")));
        }
        let i = crate::coefficients::flat_index(l, m);
        if seen[i] {
            return Err(Error::parse(lineno, format!("duplicate mode (l={l}, m={m})")));
        }
        seen[i] = true;
        out.set(l, m, Complex64::new(re, im));
    }

    let end = text.lines().count();
    for l in 0..bandlimit {
        let lo = if kind == CoefficientKind::RealSymmetric { 0 } else { -(l as i64) };
        for m in lo..=l as i64 {
            if !seen[crate::coefficients::flat_index(l, m)] {
                return Err(Error::parse(end, format!("missing mode (l={l}, m={m})")));
            }
        }
    }

    if kind == CoefficientKind::RealSymmetric {
        for l in 0..bandlimit {
            for m in 1..=l as i64 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                out.set(l, -m, sign * out.get(l, m).conj());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{enforce_reality, harmonic_gaussian, HarmonicGaussianSpec};
    use proptest::prelude::*;

    fn spectrum(l: usize) -> HarmonicCoefficients {
        HarmonicCoefficients::from_fn(l, |d, m| Complex64::new((d as f64 + 0.1).ln() / 3.0, -(m as f64).sqrt().max(0.0) * 1e-7))
            .unwrap()
    }

    #[test]
    fn monopole_file_has_two_lines() {
        let mut f = HarmonicCoefficients::zeros(1).unwrap();
        f.set(0, 0, Complex64::new(1.5, -0.0));
        let text = write_coeffs(&f, CoefficientKind::Complex).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("SIFTSPHERE-COEFF v1 L=1 kind=complex\n"));
        let back = read_coeffs(&text).unwrap();
        assert_eq!(back.get(0, 0).im.to_bits(), (-0.0f64).to_bits());
    }

    #[test]
    fn real_symmetric_record_count() {
        let g = harmonic_gaussian(&HarmonicGaussianSpec::new(4.0, 2.0, 9).unwrap());
        let real = enforce_reality(&g);
        let text = write_coeffs(&real, CoefficientKind::RealSymmetric).unwrap();
        assert_eq!(text.lines().count() - 1, 9 * 10 / 2);
        let back = read_coeffs(&text).unwrap();
        assert_eq!(back.conjugate_symmetry_error(), 0.0);
        assert_eq!(back, real);
    }

    #[test]
    fn real_symmetric_requires_symmetry() {
        // odd orders of the raw harmonic Gaussian break conjugate symmetry
        let g = harmonic_gaussian(&HarmonicGaussianSpec::new(4.0, 2.0, 5).unwrap());
        assert!(matches!(write_coeffs(&g, CoefficientKind::RealSymmetric), Err(Error::Validation(_))));
    }

    #[test]
    fn missing_mode_is_named() {
        let text = write_coeffs(&spectrum(4), CoefficientKind::Complex).unwrap();
        let pruned: String = text
            .lines()
            .filter(|l| !l.starts_with("2 -1 "))
            .map(|l| format!("{l}\n"))
            .collect();
        let err = read_coeffs(&pruned).unwrap_err().to_string();
        assert!(err.contains("missing mode (l=2, m=-1)"), "{err}");
    }

    #[test]
    fn duplicate_mode_reports_line() {
        let mut text = write_coeffs(&spectrum(3), CoefficientKind::Complex).unwrap();
        text.push_str("1 0 0 0\n");
        match read_coeffs(&text) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 11);
                assert!(message.contains("duplicate"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn header_errors() {
        assert!(matches!(read_coeffs(""), Err(Error::Format(_))));
        assert!(matches!(read_coeffs("SIFTSPHERE-COEFF v2 L=1 kind=complex\n0 0 1 0\n"), Err(Error::Format(_))));
        assert!(matches!(read_coeffs("COEFF v1 L=1 kind=complex\n"), Err(Error::Format(_))));
        assert!(matches!(read_coeffs("SIFTSPHERE-COEFF v1 L=1\n"), Err(Error::Format(_))));
        assert!(matches!(read_coeffs("SIFTSPHERE-COEFF v1 L=1 kind=fancy\n"), Err(Error::Format(_))));
    }

    #[test]
    fn out_of_range_records() {
        let bad = "SIFTSPHERE-COEFF v1 L=2 kind=complex\n0 0 1 0\n1 2 0 0\n";
        assert!(matches!(read_coeffs(bad), Err(Error::Parse { line: 3, .. })));
        let neg = "SIFTSPHERE-COEFF v1 L=2 kind=real-symmetric\n0 0 1 0\n1 -1 0 0\n";
        assert!(matches!(read_coeffs(neg), Err(Error::Parse { line: 3, .. })));
    }

    proptest! {
        #[test]
        fn complex_files_round_trip_bit_for_bit(
            bandlimit in 1usize..7,
            seed in proptest::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 98),
        ) {
            let f = HarmonicCoefficients::from_fn(bandlimit, |l, m| {
                let i = crate::coefficients::flat_index(l, m);
                Complex64::new(seed[2 * i], seed[2 * i + 1])
            }).unwrap();
            let back = read_coeffs(&write_coeffs(&f, CoefficientKind::Complex).unwrap()).unwrap();
            for (a, b) in f.values().iter().zip(back.values()) {
                prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
                prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
        }
    }
}
