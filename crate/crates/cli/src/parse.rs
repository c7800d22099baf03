//! Argument value parsers.

use anglat_core::Complex64;

/// Parses `a`, `bi`, `a+bi` or `a-bi` with decimal reals (`i` alone is ±1).
pub fn complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse '{text}' as a complex number (expected a+bi)");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return match s.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(Complex64::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // the sign that starts the imaginary part: last +/- not opening the
    // string and not inside an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| bad())? };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Parses `lo:hi` with `lo < hi`.
pub fn range(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got '{text}'"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad lower bound in '{text}'"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad upper bound in '{text}'"))?;
    if !(lo < hi) {
        return Err(format!("empty range '{text}'"));
    }
    Ok((lo, hi))
}
