//! Exact decimal rendering of rationals for traces and goldens.
//!
//! All digits come from integer arithmetic on the exact value, so rendered
//! output is identical across platforms.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Renders `r` with exactly `decimals` digits after the point,
/// rounding half away from zero.
pub fn decimal_fixed(r: &BigRational, decimals: u32) -> String {
    let neg = r.is_negative();
    let mag = r.abs();
    let scale = BigUint::from(10u32).pow(decimals);
    let scaled_num = mag.numer().magnitude() * &scale;
    let den = mag.denom().magnitude();
    // round half up on the magnitude = half away from zero overall
    let q = (scaled_num * 2u32 + den) / (den * 2u32);
    let (int_part, frac_part) = q.div_rem(&scale);
    let mut out = String::new();
    if neg && !q.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if decimals > 0 {
        let frac = frac_part.to_string();
        out.push('.');
        for _ in 0..(decimals as usize - frac.len()) {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

/// Renders `r` to `sig` significant digits as a plain decimal
/// (no exponent notation).
pub fn decimal_significant(r: &BigRational, sig: u32) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let e = floor_log10(&r.abs());
    if e >= sig as i64 {
        // Coarser than the unit grid: round to 10^(e+1-sig) and pad zeros.
        let g = (e + 1 - sig as i64) as u32;
        let scaled = r * pow10(-(g as i64));
        let mut s = decimal_fixed(&scaled, 0);
        s.extend(std::iter::repeat('0').take(g as usize));
        return s;
    }
    let decimals = (sig as i64 - 1 - e) as u32;
    let first = decimal_fixed(r, decimals);
    // Rounding may push the value to the next decade (0.9996 -> 1.000 at
    // three digits); re-render once at the corrected width.
    let parsed_e = rendered_log10(&first);
    if parsed_e > e {
        let decimals = (sig as i64 - 1 - parsed_e).max(0) as u32;
        decimal_fixed(r, decimals)
    } else {
        first
    }
}

/// Parses a plain decimal string ("-0.0164", "12", "0.004630") into the
/// exact rational it denotes.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let num: BigInt = joined.parse().ok()?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = BigRational::new(num, den);
    Some(if neg { -r } else { r })
}

/// floor(log10(|r|)) for nonzero `r`, by exact comparison.
fn floor_log10(mag: &BigRational) -> i64 {
    let digits_num = mag.numer().magnitude().to_string().len() as i64;
    let digits_den = mag.denom().magnitude().to_string().len() as i64;
    let mut e = digits_num - digits_den;
    // candidate within +-1; fix up exactly
    while pow10(e + 1) <= *mag {
        e += 1;
    }
    while pow10(e) > *mag {
        e -= 1;
    }
    e
}

fn pow10(e: i64) -> BigRational {
    let p = BigInt::from(10u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::from(1), p)
    }
}

/// Decimal exponent of an already-rendered magnitude.
fn rendered_log10(s: &str) -> i64 {
    let s = s.trim_start_matches('-');
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part != "0" {
        int_part.len() as i64 - 1
    } else {
        match frac_part.find(|c| c != '0') {
            Some(idx) => -(idx as i64) - 1,
            None => 0,
        }
    }
}
