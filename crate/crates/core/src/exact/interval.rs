use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::Rational;
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with exact rational endpoints, `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(Interval { lo, hi })
    }

    /// Caller guarantees `lo <= hi`.
    pub(crate) fn new_unchecked(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn one() -> Self {
        Interval::point(Rational::one())
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn into_bounds(self) -> (Rational, Rational) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        self.lo.midpoint(&self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// `lo > 0`.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Common subinterval, or `None` when the intervals are disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = std::cmp::max(&self.lo, &other.lo);
        let hi = std::cmp::min(&self.hi, &other.hi);
        (lo <= hi).then(|| Interval::new_unchecked(lo.clone(), hi.clone()))
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new_unchecked(std::cmp::min(&self.lo, &other.lo).clone(), std::cmp::max(&self.hi, &other.hi).clone())
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn strictly_below(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Interval::new_unchecked(b, a)
        } else {
            Interval::new_unchecked(a, b)
        }
    }

    pub fn shift(&self, k: &Rational) -> Interval {
        Interval::new_unchecked(&self.lo + k, &self.hi + k)
    }

    /// Product of arbitrary intervals.
    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        Interval::new_unchecked(lo, hi)
    }

    /// Product of two strictly positive intervals.
    pub fn mul_pos(&self, other: &Interval) -> Result<Interval> {
        self.require_positive()?;
        other.require_positive()?;
        Ok(Interval::new_unchecked(&self.lo * &other.lo, &self.hi * &other.hi))
    }

    /// Reciprocal of a strictly positive interval.
    pub fn recip_pos(&self) -> Result<Interval> {
        self.require_positive()?;
        Ok(Interval::new_unchecked(self.hi.recip().expect("positive"), self.lo.recip().expect("positive")))
    }

    fn require_positive(&self) -> Result<()> {
        if self.lo.is_positive() {
            Ok(())
        } else {
            Err(Error::NotPositiveInterval { lo: self.lo.to_string(), hi: self.hi.to_string() })
        }
    }

    /// Replaces the endpoints by multiples of `2^-bits`, lo down and hi up.
    pub fn round_outward(&self, bits: u64) -> Interval {
        Interval::new_unchecked(self.lo.floor_dyadic(bits), self.hi.ceil_dyadic(bits))
    }

    /// `self^n` for a strictly positive interval by binary exponentiation,
    /// rounding outward to `2^-bits` after every multiplication.
    pub fn pow_rounded(&self, n: u64, bits: u64) -> Result<Interval> {
        self.require_positive()?;
        let mut result = Interval::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_pos_rounded(&base, bits);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_pos_rounded(&base, bits);
            }
        }
        Ok(result)
    }

    /// Product of positive intervals, rounded outward to `2^-bits`.
    pub(crate) fn mul_pos_rounded(&self, other: &Interval, bits: u64) -> Interval {
        Interval::new_unchecked(&self.lo * &other.lo, &self.hi * &other.hi).round_outward_positive(bits)
    }

    /// Like [`Interval::round_outward`], but a positive lower end that would
    /// round down to zero is kept exact so the interval stays positive.
    pub(crate) fn round_outward_positive(&self, bits: u64) -> Interval {
        let rounded = self.lo.floor_dyadic(bits);
        let lo = if rounded.is_positive() || !self.lo.is_positive() { rounded } else { self.lo.clone() };
        Interval::new_unchecked(lo, self.hi.ceil_dyadic(bits))
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new_unchecked(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new_unchecked(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new_unchecked(-&self.hi, -&self.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new_unchecked(-self.hi, -self.lo)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
