use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number in canonical form: positive denominator, numerator
/// and denominator coprime.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

/// Binary operations accepted by [`Rational::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
    Cmp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatOutcome {
    Value(Rational),
    Ordering(Ordering),
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Builds `numer/denom` without a gcd pass. The caller guarantees the
    /// pair is already coprime with `denom > 0`.
    fn from_coprime(numer: BigInt, denom: BigInt) -> Self {
        debug_assert!(denom.is_positive());
        Rational(BigRational::new_raw(numer, denom))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `m · 2^exp`.
    pub fn dyadic(m: impl Into<BigInt>, exp: i64) -> Self {
        let m = m.into();
        if exp >= 0 {
            Rational::from_integer(m << exp as u64)
        } else {
            Rational(BigRational::new(m, BigInt::one() << exp.unsigned_abs()))
        }
    }

    pub fn pow2(exp: i64) -> Self {
        Rational::dyadic(1, exp)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> Ordering {
        self.numer().sign().cmp(&Sign::NoSign)
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn apply(&self, op: RatOp, rhs: &Rational) -> Result<RatOutcome> {
        Ok(match op {
            RatOp::Add => RatOutcome::Value(self + rhs),
            RatOp::Sub => RatOutcome::Value(self - rhs),
            RatOp::Mul => RatOutcome::Value(self * rhs),
            RatOp::Div => RatOutcome::Value(self.checked_div(rhs)?),
            RatOp::Cmp => RatOutcome::Ordering(self.cmp(rhs)),
        })
    }

    /// Exact integer power; negative exponents go through the reciprocal.
    pub fn pow_i64(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.recip().map_err(|_| Error::ZeroToNegativePower)? } else { self.clone() };
        Ok(base.pow_u64(n.unsigned_abs()))
    }

    /// Exact power by binary exponentiation. Powers of a coprime pair stay
    /// coprime, so no reduction is needed on the (possibly enormous) result.
    pub fn pow_u64(&self, n: u64) -> Self {
        if n == 0 {
            return Rational::one();
        }
        let numer: BigInt = Pow::pow(self.numer(), n);
        let denom: BigInt = Pow::pow(self.denom(), n);
        Rational::from_coprime(numer, denom)
    }

    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.numer()).div_floor(self.denom()))
    }

    /// `floor(self · scale)` for a positive integer scale, without reducing
    /// the intermediate fraction.
    pub fn floor_scaled(&self, scale: &BigInt) -> BigInt {
        (self.numer() * scale).div_floor(self.denom())
    }

    pub fn ceil_scaled(&self, scale: &BigInt) -> BigInt {
        -((-(self.numer() * scale)).div_floor(self.denom()))
    }

    /// Largest multiple of `2^-bits` that is `<= self`.
    pub fn floor_dyadic(&self, bits: u64) -> Self {
        if self.denom().bits() <= 1 {
            return self.clone();
        }
        let m = (self.numer() << bits).div_floor(self.denom());
        Rational::dyadic(m, -(bits as i64))
    }

    /// Smallest multiple of `2^-bits` that is `>= self`.
    pub fn ceil_dyadic(&self, bits: u64) -> Self {
        if self.denom().bits() <= 1 {
            return self.clone();
        }
        let m = -((-(self.numer() << bits)).div_floor(self.denom()));
        Rational::dyadic(m, -(bits as i64))
    }

    pub fn midpoint(&self, other: &Rational) -> Self {
        Rational((&self.0 + &other.0) / BigInt::from(2))
    }

    /// Combined bit length of numerator and denominator.
    pub fn size_bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    /// Integer `b` with `2^(b-1) <= |self| < 2^(b+1)`, roughly `log2 |self|`.
    /// Zero maps to 0.
    pub fn log2_estimate(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.numer().bits() as i64 - self.denom().bits() as i64
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_err(input: &str, reason: &str) -> Error {
    Error::Parse { input: input.to_string(), reason: reason.to_string() }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(whole, "expected an integer"));
    }
    s.parse::<BigInt>().map_err(|e| parse_err(whole, &e.to_string()))
}

/// Accepts `p/q`, integers, and terminating decimals with an optional
/// exponent (`0.125`, `-2.5`, `1e-6`).
impl FromStr for Rational {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s = input.trim();
        if s.is_empty() {
            return Err(parse_err(input, "empty input"));
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_int(p.trim(), input)?;
            let q = parse_int(q.trim(), input)?;
            return Rational::new(p, q).map_err(|_| parse_err(input, "zero denominator"));
        }

        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = s[i + 1..].parse().map_err(|_| parse_err(input, "bad exponent"))?;
                (&s[..i], e)
            }
            None => (s, 0),
        };
        let (negative, unsigned) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(parse_err(input, "no digits"));
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(parse_err(input, "unexpected character"));
        }
        let digits = format!("{int_part}{frac_part}");
        let mut value = Rational::from_integer(digits.parse::<BigInt>().map_err(|e| parse_err(input, &e.to_string()))?);
        let scale = exp - frac_part.len() as i64;
        let ten = Rational::from_integer(10);
        if scale >= 0 {
            value = &value * &ten.pow_u64(scale as u64);
        } else {
            value = &value / &ten.pow_u64(scale.unsigned_abs());
        }
        Ok(if negative { -value } else { value })
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the underlying ratio type. Fallible callers
// go through `checked_div`.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&r("1/2") + &r("1/3"), r("5/6"));
        assert_eq!(Rational::new(2, 4).unwrap().to_string(), "1/2");
        assert_eq!(&r("1/3") * &r("3"), Rational::one());
        assert_eq!(r("1/2").apply(RatOp::Cmp, &r("1/3")).unwrap(), RatOutcome::Ordering(Ordering::Greater));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(r("1").checked_div(&Rational::zero()), Err(Error::DivisionByZero));
        assert_eq!(r("1").apply(RatOp::Div, &Rational::zero()), Err(Error::DivisionByZero));
        assert!(Rational::new(1, 0).is_err());
        assert!(Rational::zero().recip().is_err());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(r("3/2").pow_i64(2).unwrap(), r("9/4"));
        assert_eq!(r("-7/5").pow_i64(0).unwrap(), Rational::one());
        assert_eq!(r("2").pow_i64(-3).unwrap(), r("1/8"));
        assert_eq!(r("-2/3").pow_i64(3).unwrap(), r("-8/27"));
        assert_eq!(Rational::zero().pow_i64(-1), Err(Error::ZeroToNegativePower));
        assert_eq!(Rational::zero().pow_i64(0).unwrap(), Rational::one());
    }

    #[test]
    fn parsing() {
        assert_eq!(r("3/7"), Rational::new(3, 7).unwrap());
        assert_eq!(r("-6/4"), Rational::new(-3, 2).unwrap());
        assert_eq!(r("0.125"), Rational::new(1, 8).unwrap());
        assert_eq!(r("-2.5"), Rational::new(-5, 2).unwrap());
        assert_eq!(r(".5"), Rational::new(1, 2).unwrap());
        assert_eq!(r("1e-6"), Rational::new(1, 1_000_000).unwrap());
        assert_eq!(r("2.5E3"), Rational::from(2500));
        assert_eq!(r("42"), Rational::from(42));
        for bad in ["", "abc", "1/0", "1.2.3", "0.3...", "1/2/3", "--1", "1e", "e5"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn dyadic_rounding() {
        let third = r("1/3");
        let lo = third.floor_dyadic(4);
        let hi = third.ceil_dyadic(4);
        assert_eq!(lo, r("5/16"));
        assert_eq!(hi, r("6/16"));
        assert_eq!(r("-1/3").floor_dyadic(4), r("-6/16"));
        assert_eq!(r("3/8").floor_dyadic(2), r("1/4"));
        assert_eq!(r("3/8").ceil_dyadic(3), r("3/8"));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(r("7/2").floor(), BigInt::from(3));
        assert_eq!(r("7/2").ceil(), BigInt::from(4));
        assert_eq!(r("-7/2").floor(), BigInt::from(-4));
        assert_eq!(r("-7/2").ceil(), BigInt::from(-3));
        assert_eq!(r("4").ceil(), BigInt::from(4));
    }
}
