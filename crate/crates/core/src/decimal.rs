//! Decimal rendering and parsing of exact rationals.
//!
//! Rounding is half away from zero throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::series::BigRational;

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), e as usize)
}

/// Round `|q| * 10^places` to the nearest integer, ties away from zero.
fn scaled_round(q: &BigRational, places: u32) -> BigInt {
    let scaled = q.abs() * BigRational::from_integer(pow10(places));
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    if rem * 2 >= *scaled.denom() {
        quot + 1
    } else {
        quot
    }
}

/// `q` rounded to `places` digits after the decimal point.
pub fn to_fixed(q: &BigRational, places: u32) -> String {
    let digits = scaled_round(q, places).to_string();
    let neg = q.is_negative() && digits.chars().any(|c| c != '0');
    let body = if places == 0 {
        digits
    } else {
        let width = places as usize + 1;
        let padded = format!("{digits:0>width$}");
        let (int, frac) = padded.split_at(padded.len() - places as usize);
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Position of the leading significant digit: the `e` with
/// `10^e <= |q| < 10^(e+1)`.
fn decimal_exponent(q: &BigRational) -> i64 {
    let a = q.abs();
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    loop {
        let lo = pow10_rat(e);
        if a < lo {
            e -= 1;
        } else if a >= pow10_rat(e + 1) {
            e += 1;
        } else {
            return e;
        }
    }
}

fn pow10_rat(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow10(e as u32))
    } else {
        BigRational::new(BigInt::one(), pow10((-e) as u32))
    }
}

/// `q` rounded to `sig` significant digits, rendered in plain positional
/// notation (`0.0453983`, `1.62564`).
pub fn to_significant(q: &BigRational, sig: u32) -> String {
    assert!(sig > 0);
    if q.is_zero() {
        return "0".to_string();
    }
    let mut e = decimal_exponent(q);
    // Rounding can carry into a new leading digit (9.99 -> 10.0).
    let places = sig as i64 - 1 - e;
    let rounded = round_to_places(q, places);
    if decimal_exponent(&rounded) != e {
        e += 1;
    }
    let places = sig as i64 - 1 - e;
    if places >= 0 {
        to_fixed(q, places as u32)
    } else {
        let r = round_to_places(q, places);
        r.to_integer().to_string()
    }
}

fn round_to_places(q: &BigRational, places: i64) -> BigRational {
    let scale = pow10_rat(places);
    let scaled = q * &scale;
    let (quot, rem) = scaled.numer().abs().div_rem(scaled.denom());
    let mag = if rem * 2 >= *scaled.denom() { quot + 1 } else { quot };
    let signed = if q.is_negative() { -mag } else { mag };
    BigRational::from_integer(signed) / scale
}

/// Parse a decimal literal such as `42`, `-0.125`, `1e-6` or `2.5E3` into an
/// exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let value = BigRational::from_integer(digits) * pow10_rat(exp - frac.len() as i64);
    Some(if neg { -value } else { value })
}

/// Parse either `p/q` or a decimal literal.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => parse_decimal(s),
    }
}

/// Smallest `places` with `10^-places <= tol`, so that rounding to that many
/// places is meaningful for a value known to within `tol`.
pub fn places_for_tolerance(tol: &BigRational) -> u32 {
    let mut places = 0;
    while pow10_rat(-(places as i64)) > *tol {
        places += 1;
    }
    places
}
