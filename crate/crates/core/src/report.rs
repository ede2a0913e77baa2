//! Number rendering shared by every report.
//!
//! Computation stays in full precision; rounding only happens here.

use alloc::format;
use alloc::string::String;

/// Renders `x` with `decimals` fractional digits, rounding halves away from zero.
///
/// Rust's `{:.N}` is correctly rounded on the exact binary value but resolves
/// exact ties to even. Ties only exist when `x * 2 * 10^N` is an odd integer
/// computed without rounding error; those are detected and bumped.
pub fn fixed(x: f64, decimals: usize) -> String {
    if !x.is_finite() || decimals > 15 {
        return format!("{:.*}", decimals, x);
    }
    let scale = libm::pow(10.0, decimals as f64);
    let doubled = x * 2.0 * scale;
    let exact = libm::fma(x, 2.0 * scale, -doubled) == 0.0;
    if exact && doubled.abs() < 9.0e15 && libm::trunc(doubled) == doubled {
        let d = doubled.abs() as u64;
        if d % 2 == 1 {
            let k = d.div_ceil(2);
            let magnitude = k as f64 / scale;
            let signed = if x < 0.0 { -magnitude } else { magnitude };
            return format!("{:.*}", decimals, signed);
        }
    }
    let out = format!("{:.*}", decimals, x);
    // "-0.00" reads badly in reports
    if out.starts_with('-') && out[1..].bytes().all(|b| b == b'0' || b == b'.') {
        return String::from(&out[1..]);
    }
    out
}

/// Two-decimal rendering used for every percentage and distance.
pub fn two_decimals(x: f64) -> String {
    fixed(x, 2)
}

/// Renders `x` with six significant digits, switching to scientific notation
/// below 1e-6.
pub fn significant6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", x);
    }
    let exponent = libm::floor(libm::log10(x.abs())) as i32;
    if exponent < -6 {
        return format!("{:.5e}", x);
    }
    let decimals = (5 - exponent).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// `1250923836` → `1,250,923,836`.
pub fn group_digits(n: u64) -> String {
    let raw = format!("{}", n);
    let mut out = String::with_capacity(raw.len() + raw.len() / 3);
    for (i, ch) in raw.chars().enumerate() {
        if i > 0 && (raw.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(ch);
    }
    out
}
