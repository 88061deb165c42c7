//! Exact rational helpers shared by the polynomial and density code.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, an integer, or a plain decimal such as `0.05` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::invalid("empty rational"));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if s.contains('/') {
            return Err(Error::invalid(format!("malformed rational `{s}`")));
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let digits = format!("{whole_digits}{frac}");
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::invalid(format!("malformed decimal `{s}`")));
        }
        let mut num = BigInt::from_str(&digits).map_err(|e| Error::invalid(e.to_string()))?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(num, den));
    }
    Rational::from_str(s).map_err(|_| Error::invalid(format!("malformed rational `{s}`")))
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// computed from the continued fraction expansion (including semiconvergents).
pub fn best_rational(x: f64, max_den: u64) -> Option<(i64, u64)> {
    if !x.is_finite() || max_den == 0 {
        return None;
    }
    let negative = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let max_den = max_den as u128;
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e15 {
            break;
        }
        let a_int = a as u128;
        let p2 = a_int * p1 + p0;
        let q2 = a_int * q1 + q0;
        if q2 > max_den {
            // largest semiconvergent that still fits
            let k = (max_den - q0) / q1.max(1);
            let ps = k * p1 + p0;
            let qs = k * q1 + q0;
            if q1 > 0 && k > 0 {
                let err_semi = (ps as f64 / qs as f64 - x.abs()).abs();
                let err_conv = (p1 as f64 / q1 as f64 - x.abs()).abs();
                if err_semi < err_conv {
                    p1 = ps;
                    q1 = qs;
                }
            }
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let p = i64::try_from(p1).ok()?;
    Some((if negative { -p } else { p }, q1 as u64))
}

/// Simplest rational (first continued-fraction convergent) within `tol` of `x`
/// whose denominator does not exceed `max_den`.
pub fn snap_rational(x: f64, tol: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let target = x.abs();
    let mut v = target;
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e15 {
            return None;
        }
        let p2 = a as u128 * p1 + p0;
        let q2 = a as u128 * q1 + q0;
        if q2 > max_den as u128 {
            return None;
        }
        if (p2 as f64 / q2 as f64 - target).abs() <= tol {
            let num = BigInt::from(p2);
            let num = if negative { -num } else { num };
            return Some(Rational::new(num, BigInt::from(q2)));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a;
        if frac <= 0.0 {
            return None;
        }
        v = 1.0 / frac;
    }
    None
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Number of weak compositions of `total` into `parts` nonnegative parts.
pub fn compositions(total: u64, parts: u64) -> u128 {
    if parts == 0 {
        return u128::from(total == 0);
    }
    binomial(total + parts - 1, parts - 1)
        .to_u128()
        .unwrap_or(u128::MAX)
}

/// Renders `x` as a decimal with `digits` significant digits, rounding half away from zero.
pub fn format_significant(x: &Rational, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let a = x.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let ten = int(10);
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < Rational::one() {
        scaled *= &ten;
        e -= 1;
    }
    let decimals = (digits as i64 - 1 - e).max(0) as usize;
    let factor = num_traits::pow(BigInt::from(10), decimals);
    let shifted = a * Rational::from_integer(factor.clone());
    let rounded = (shifted + rat(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&factor);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if decimals > 0 {
        out.push('.');
        let f = frac.to_string();
        out.extend(std::iter::repeat_n('0', decimals - f.len()));
        out.push_str(&f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("3/12").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("0.05").unwrap(), rat(1, 20));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn best_rational_recovers_small_fractions() {
        assert_eq!(best_rational(4.0 / 81.0, 10_000), Some((4, 81)));
        assert_eq!(best_rational(1.0 / 16.0, 10_000), Some((1, 16)));
        assert_eq!(best_rational(0.0, 10), Some((0, 1)));
        assert_eq!(best_rational(std::f64::consts::PI, 7), Some((22, 7)));
        assert_eq!(best_rational(std::f64::consts::PI, 200), Some((355, 113)));
    }

    #[test]
    fn snapping_prefers_small_denominators() {
        assert_eq!(
            snap_rational(1.0 / 9.0 + 1e-10, 1e-7, 10_000),
            Some(rat(1, 9))
        );
        assert_eq!(snap_rational(0.04 - 3e-9, 1e-7, 10_000), Some(rat(1, 25)));
        assert_eq!(snap_rational(-0.5, 1e-12, 10), Some(rat(-1, 2)));
        assert_eq!(snap_rational(1e-12, 1e-9, 10), Some(rat(0, 1)));
        assert_eq!(snap_rational(std::f64::consts::PI, 1e-9, 10_000), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 3), BigInt::from(220));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(compositions(8, 4), 165);
        assert_eq!(compositions(0, 0), 1);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(&rat(3, 4), 12), "0.750000000000");
        assert_eq!(format_significant(&rat(13, 16), 12), "0.812500000000");
        assert_eq!(format_significant(&rat(1, 3), 4), "0.3333");
        assert_eq!(format_significant(&rat(2, 3), 4), "0.6667");
        assert_eq!(format_significant(&rat(25, 2), 3), "12.5");
        assert_eq!(format_significant(&rat(0, 1), 12), "0");
        assert_eq!(format_significant(&rat(-1, 8), 2), "-0.13");
    }
}
