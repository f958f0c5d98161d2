//! Ingestion of ICGEM-style gravity-field / topography coefficient files.
//!
//! Data lines look like
//!
//! ```text
//! gfc   <l>   <m>   <C_lm>   <S_lm>   [sigma_C   sigma_S]
//! ```
//!
//! Everything up to an `end_of_head` line is header. Files without that
//! marker are scanned for `gfc`/`gfct` lines and anything else is skipped.
//! Fortran `D` exponents are accepted.
//!
//! The source coefficients are 4π-normalized real harmonics without the
//! Condon–Shortley phase,
//! `f = Σ C_lm Pgeo_lm(cos θ) cos mφ + S_lm Pgeo_lm(cos θ) sin mφ`.
//! With `Pgeo_lm = sqrt(4π(2 - δ_m0)) (-1)^m Pbar_lm` the complex orthonormal
//! coefficients are
//!
//! ```text
//! f_l0 = sqrt(4π) C_l0,    f_lm = (-1)^m sqrt(4π) (C_lm - i S_lm) / sqrt(2)   (m > 0)
//! ```
//!
//! and negative orders follow from conjugate symmetry.

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;

use crate::coefficients::HarmonicCoefficients;
use crate::error::{Error, Result};

/// A low-degree synthetic topography in ICGEM layout (degree 31, i.e. `L = 32`).
pub const SYNTHETIC_TOPOGRAPHY: &str = include_str!("../../data/synthetic_topography.gfc");

/// Orthonormal conversion factor `N(l, m)` applied to `C_l0` and `(C_lm - i S_lm)/√2`.
pub fn conversion_factor(m: usize) -> f64 {
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * (4.0 * PI).sqrt()
}

/// Real cosine/sine coefficient pair of one mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GfcRecord {
    pub degree: usize,
    pub order: usize,
    pub c: f64,
    pub s: f64,
}

fn parse_number(token: &str, lineno: usize) -> Result<f64> {
    token
        .replace(['D', 'd'], "E")
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::parse(lineno, format!("bad number '{token}'")))
}

/// Parses every data record, checking that `(l, m)` strictly increases degree-major.
pub fn parse_gfc(text: &str) -> Result<Vec<GfcRecord>> {
    let has_head = text.lines().any(|l| l.trim_start().starts_with("end_of_head"));
    let mut in_data = !has_head;
    let mut records: Vec<GfcRecord> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if !in_data {
            if line.starts_with("norm") {
                let norm = line.split_whitespace().nth(1).unwrap_or("");
                if norm != "fully_normalized" {
                    return Err(Error::Format(format!(
                        "unsupported normalization '{norm}' (only fully_normalized)"
                    )));
                }
            }
            if line.starts_with("end_of_head") {
                in_data = true;
            }
            continue;
        }
        let mut tokens = line.split_whitespace();
        let key = match tokens.next() {
            Some(k) => k,
            None => continue,
        };
        if key != "gfc" && key != "gfct" {
            if has_head {
                return Err(Error::parse(lineno, format!("unknown record key '{key}'")));
            }
            continue;
        }
        let fields: Vec<&str> = tokens.collect();
        if fields.len() < 4 {
            return Err(Error::parse(lineno, "record needs degree, order, C and S"));
        }
        let degree: usize = fields[0]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad degree '{}'", fields[0])))?;
        let order: usize = fields[1]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad order '{}'", fields[1])))?;
        if order > degree {
            return Err(Error::parse(lineno, format!("order {order} exceeds degree {degree}")));
        }
        if let Some(prev) = records.last() {
            if (degree, order) <= (prev.degree, prev.order) {
                return Err(Error::parse(
                    lineno,
                    format!(
                        "mode (l={degree}, m={order}) does not follow (l={}, m={})",
                        prev.degree, prev.order
                    ),
                ));
            }
        }
        records.push(GfcRecord {
            degree,
            order,
            c: parse_number(fields[2], lineno)?,
            s: parse_number(fields[3], lineno)?,
        });
    }
    Ok(records)
}

/// Converts an ICGEM coefficient file into an orthonormal complex spectrum of bandlimit `l_max`.
///
/// Degrees `>= l_max` are dropped. Modes the file does not provide stay zero;
/// if the file stops short of `l_max - 1` a warning is logged.
pub fn ingest_gfc(text: &str, l_max: usize) -> Result<HarmonicCoefficients> {
    let records = parse_gfc(text)?;
    let mut out = HarmonicCoefficients::zeros(l_max)?;
    let top = records.iter().map(|r| r.degree).max();
    match top {
        None => warn!("coefficient file has no data records; spectrum is zero"),
        Some(t) if t + 1 < l_max => warn!(
            "coefficient file stops at degree {t}; degrees {}..{} are zero-filled",
            t + 1,
            l_max - 1
        ),
        _ => {}
    }
    for r in records.iter().filter(|r| r.degree < l_max) {
        let n = conversion_factor(r.order);
        let m = r.order as i64;
        if r.order == 0 {
            out.set(r.degree, 0, Complex64::new(n * r.c, 0.0));
        } else {
            let v = Complex64::new(r.c, -r.s) * (n / 2f64.sqrt());
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            out.set(r.degree, m, v);
            out.set(r.degree, -m, sign * v.conj());
        }
    }
    Ok(out)
}
