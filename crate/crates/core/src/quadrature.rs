//! `ln x` as `∫₁ˣ dt/t`, enclosed between right- and left-endpoint Riemann
//! sums on a uniform partition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{Interval, Precision, Rational};
use crate::powers::PosRational;

/// Exact lower and upper Riemann sums of `1/t` over `[1, x]`, `x > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiemannEnclosure {
    pub x: PosRational,
    pub subintervals: u64,
    /// Right-endpoint sum.
    pub lower_sum: Rational,
    /// Left-endpoint sum.
    pub upper_sum: Rational,
}

impl RiemannEnclosure {
    pub fn gap(&self) -> Rational {
        &self.upper_sum - &self.lower_sum
    }

    pub fn interval(&self) -> Interval {
        Interval::new_unchecked(self.lower_sum.clone(), self.upper_sum.clone())
    }
}

/// `(x - 1)(1 - 1/x)`: the gap of the one-interval partition. The gap for
/// `N` subintervals is this divided by `N`.
pub fn unit_gap(x: &Rational) -> Rational {
    let one = Rational::one();
    (x - &one) * (&one - &x.recip().expect("x > 0"))
}

fn check_above_one(x: &PosRational) -> Result<()> {
    if x.get() <= &Rational::one() {
        return Err(Error::NotGreaterThanOne(x.to_string()));
    }
    Ok(())
}

/// Exact sums with `n` subintervals. Cost grows with `n` through the
/// denominators, so this is meant for moderate `n`.
pub fn riemann_sums(x: &PosRational, n: u64) -> Result<RiemannEnclosure> {
    check_above_one(x)?;
    if n == 0 {
        return Err(Error::NotPositive("0".into()));
    }
    let x_val = x.get();
    let step = (x_val - &Rational::one()) / Rational::from_integer(n);
    let mut inner = Rational::zero();
    for i in 1..n {
        let t = Rational::one() + &step * &Rational::from_integer(i);
        inner += &(&step / &t);
    }
    let first = step.clone();
    let last = &step / x_val;
    Ok(RiemannEnclosure { x: x.clone(), subintervals: n, lower_sum: &inner + &last, upper_sum: inner + first })
}

/// Fractional bits for rounding each term so the total rounding error stays
/// below an eighth of the exact gap: `2^W >= 16 N^2 / unit_gap`.
fn term_bits(x: &Rational, n: u64) -> u64 {
    let n = Rational::from_integer(n);
    let need = Rational::from(16) * &n * &n / unit_gap(x);
    // ceil(log2 need), +1 to absorb the estimate's slack
    (need.log2_estimate() + 2).max(1) as u64
}

/// Outward-rounded Riemann enclosure with `n` subintervals. Each term
/// `Δ/t_i = (p - q)/(qN + i(p - q))`, for `x = p/q`, is rounded down in the
/// lower sum and up in the upper sum on a grid of `2^-W`. The width is at
/// most `9/8` of the exact gap, so doubling `n` always narrows it.
pub fn riemann_interval(x: &PosRational, n: u64) -> Result<Interval> {
    check_above_one(x)?;
    if n == 0 {
        return Err(Error::NotPositive("0".into()));
    }
    let bits = term_bits(x.get(), n);
    let p = x.get().numer().clone();
    let q = x.get().denom().clone();
    let diff = &p - &q;
    let (lower, upper) = match fixed_point_sums_u64(&diff, &q, n, bits) {
        Some(sums) => sums,
        None => fixed_point_sums_big(&diff, &q, n, bits),
    };
    Ok(Interval::new_unchecked(Rational::dyadic(lower, -(bits as i64)), Rational::dyadic(upper, -(bits as i64))))
}

fn fixed_point_sums_u64(diff: &BigInt, q: &BigInt, n: u64, bits: u64) -> Option<(BigInt, BigInt)> {
    if bits >= 64 {
        return None;
    }
    let diff = diff.to_u64()?;
    let num = diff.checked_mul(1u64.checked_shl(bits as u32)?)?;
    let q = q.to_u64()?;
    let base = q.checked_mul(n)?;
    // largest denominator: qN + N(p - q) = pN
    base.checked_add(diff.checked_mul(n)?)?;
    let mut floor_sum: u128 = 0;
    let mut ceil_sum: u128 = 0;
    let mut first_ceil = 0u64;
    let mut last_floor = 0u64;
    for i in 0..=n {
        let den = base + i * diff;
        let quot = num / den;
        let ceil = quot + u64::from(num % den != 0);
        if i == 0 {
            first_ceil = ceil;
        } else if i == n {
            last_floor = quot;
        } else {
            floor_sum += u128::from(quot);
            ceil_sum += u128::from(ceil);
        }
    }
    Some((BigInt::from(floor_sum + u128::from(last_floor)), BigInt::from(ceil_sum + u128::from(first_ceil))))
}

fn fixed_point_sums_big(diff: &BigInt, q: &BigInt, n: u64, bits: u64) -> (BigInt, BigInt) {
    let num: BigInt = diff << bits;
    let base = q * BigInt::from(n);
    let mut lower = BigInt::zero();
    let mut upper = BigInt::zero();
    let mut den = base;
    for i in 0..=n {
        let (quot, rem) = num.div_rem(&den);
        let ceil = if rem.is_zero() { quot.clone() } else { &quot + BigInt::one() };
        if i > 0 {
            lower += quot;
        }
        if i < n {
            upper += ceil;
        }
        den += diff;
    }
    (lower, upper)
}

/// Beyond this, `ln x` is reduced to `ln(x / 2^k) + k ln 2`.
const REDUCTION_THRESHOLD: i64 = 4;

/// Enclosure of `∫₁ˣ dt/t` with width at most `eps`.
pub fn ln_integral(x: &PosRational, prec: &Precision) -> Result<Interval> {
    let one = Rational::one();
    let value = x.get();
    if value.is_one() {
        return Ok(Interval::zero());
    }
    if value < &one {
        return Ok(-ln_integral(&x.recip(), prec)?);
    }
    if value > &Rational::from(REDUCTION_THRESHOLD) {
        return reduced(x, prec);
    }
    Ok(direct(x, prec))
}

fn direct(x: &PosRational, prec: &Precision) -> Interval {
    // width <= 9/8 gap <= eps
    let target = unit_gap(x.get()) * Rational::new(9, 8).expect("nonzero") / prec.eps();
    let n = target.ceil().to_u64().expect("partition count fits u64").max(1);
    riemann_interval(x, n).expect("x > 1 and n >= 1")
}

fn reduced(x: &PosRational, prec: &Precision) -> Result<Interval> {
    let value = x.get();
    let mut k = value.log2_estimate().max(0);
    while &Rational::pow2(k) > value {
        k -= 1;
    }
    while &Rational::pow2(k + 1) <= value {
        k += 1;
    }
    let k_rat = Rational::from(k);
    let half = prec.tightened(1);
    let ln2 = direct(&PosRational::new(Rational::from(2))?, &half.scaled(&k_rat.recip()?));
    let rest = PosRational::new(value * &Rational::pow2(-k))?;
    let tail = if rest.get().is_one() { Interval::zero() } else { direct(&rest, &half) };
    Ok(&ln2.scale(&k_rat) + &tail)
}
