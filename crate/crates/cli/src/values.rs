//! Parsing of numeric command-line values.

use num_complex::Complex64;
use spectra_core::exact::ring::parse_q;
use spectra_core::exact::Q;
use spectra_core::{Error, Result};

pub fn rational(s: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| Error::Domain(format!("not a rational number: {s:?}")))
}

fn real(s: &str, whole: &str) -> Result<f64> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => s.parse().map_err(|_| Error::Domain(format!("not a complex number: {whole:?}"))),
    }
}

/// Reads `a`, `bi`, `a+bi` or `a-bi` (exponents like `1e-3` allowed).
pub fn complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(real(&t, s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = body[..i].parse().map_err(|_| Error::Domain(format!("not a complex number: {s:?}")))?;
            Ok(Complex64::new(re, real(&body[i..], s)?))
        }
        None => Ok(Complex64::new(0.0, real(body, s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex("0.3-0.1i").unwrap(), Complex64::new(0.3, -0.1));
        assert_eq!(complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(complex("1e-3+2e-4i").unwrap(), Complex64::new(1e-3, 2e-4));
        assert_eq!(complex("3i").unwrap(), Complex64::new(0.0, 3.0));
        assert!(complex("x+1i").is_err());
    }
}
