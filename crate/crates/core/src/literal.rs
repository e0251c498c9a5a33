//! Complex literals of the form `a+bi`, `a-bi`, `bi` or `a`, without spaces.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralError(pub String);

impl std::fmt::Display for LiteralError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid complex literal `{}`", self.0)
    }
}

impl std::error::Error for LiteralError {}

fn parse_real(s: &str, whole: &str) -> Result<f64, LiteralError> {
    let v: f64 = s.parse().map_err(|_| LiteralError(whole.to_string()))?;
    if !v.is_finite() {
        return Err(LiteralError(whole.to_string()));
    }
    Ok(v)
}

fn parse_imag(s: &str, whole: &str) -> Result<f64, LiteralError> {
    // `s` still carries the trailing `i`
    let body = &s[..s.len() - 1];
    match body {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(body, whole),
    }
}

pub fn parse_complex(text: &str) -> Result<Complex64, LiteralError> {
    let s = text.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(LiteralError(text.to_string()));
    }
    if !s.ends_with('i') {
        return Ok(Complex64::new(parse_real(s, text)?, 0.0));
    }
    // split at the last sign that is neither leading nor an exponent sign
    let bytes = s.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = parse_real(&s[..i], text)?;
            let im = parse_imag(&s[i..], text)?;
            Ok(Complex64::new(re, im))
        }
        None => Ok(Complex64::new(0.0, parse_imag(s, text)?)),
    }
}

/// Renders a complex number in the literal grammar accepted by [`parse_complex`].
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return format!("{}", z.re);
    }
    let sign = if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        '-'
    } else {
        '+'
    };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}
