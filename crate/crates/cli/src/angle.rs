//! Angle arguments: plain decimals (`0.3927`) or multiples of π (`pi/8`, `3pi/4`, `-pi/2`, `0.5*pi`).

use std::f64::consts::PI;

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let text = s.trim().to_ascii_lowercase();
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, text.strip_prefix('+').unwrap_or(&text)),
    };
    let bad = || format!("invalid angle '{s}' (use a number or a pi fraction such as 3pi/4)");
    let value = match body.find("pi") {
        None => body.parse::<f64>().map_err(|_| bad())?,
        Some(at) => {
            let coef = body[..at].trim_end_matches('*');
            let coef = if coef.is_empty() { 1.0 } else { coef.parse::<f64>().map_err(|_| bad())? };
            let rest = &body[at + 2..];
            let denom = match rest.strip_prefix('/') {
                Some(d) => d.parse::<f64>().map_err(|_| bad())?,
                None if rest.is_empty() => 1.0,
                None => return Err(bad()),
            };
            if denom == 0.0 {
                return Err(bad());
            }
            coef * PI / denom
        }
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(sign * value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_of_pi() {
        assert_eq!(parse_angle("pi/8").unwrap(), PI / 8.0);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("PI").unwrap(), PI);
        assert_eq!(parse_angle("0.5pi").unwrap(), 0.5 * PI);
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_angle("0").unwrap(), 0.0);
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
        assert_eq!(parse_angle("-0.5").unwrap(), -0.5);
        assert_eq!(parse_angle("1e-3").unwrap(), 1e-3);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "pie", "pi/", "pi/0", "3pi4", "x", "inf", "pi/abc"] {
            assert!(parse_angle(s).is_err(), "{s}");
        }
    }
}
