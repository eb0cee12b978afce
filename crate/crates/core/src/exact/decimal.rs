use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};

use super::{Interval, Rational};

/// Renders `I` as a pair of fixed-point strings with `digits` fractional
/// digits, `lo` rounded toward −∞ and `hi` toward +∞.
pub fn to_decimal(interval: &Interval, digits: u32) -> (String, String) {
    let scale: BigInt = Pow::pow(BigInt::from(10), digits);
    let lo = interval.lo().floor_scaled(&scale);
    let hi = interval.hi().ceil_scaled(&scale);
    (format_fixed(&lo, digits), format_fixed(&hi, digits))
}

/// Decimal string for `value · 10^-digits`.
pub fn format_fixed(value: &BigInt, digits: u32) -> String {
    let negative = value.is_negative();
    let mut s = value.abs().to_string();
    let digits = digits as usize;
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let split = s.len() - digits;
    let mut out = String::with_capacity(s.len() + 2);
    if negative && !value.is_zero() {
        out.push('-');
    }
    out.push_str(&s[..split]);
    if digits > 0 {
        out.push('.');
        out.push_str(&s[split..]);
    }
    out
}

/// Number of fractional digits at which a width of `eps` is visible,
/// `ceil(log10(1/eps))`, at least 1.
pub fn digits_for(eps: &Rational) -> u32 {
    let mut d = 0u32;
    let mut scale = Rational::one();
    while &scale > eps && d < 10_000 {
        scale = &scale / &Rational::from(10);
        d += 1;
    }
    d.max(1)
}
