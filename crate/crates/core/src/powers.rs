//! Enclosures of `a^q` for rational exponents, over point or interval bases.
//!
//! Irrational powers are never computed directly: `a^x` for real `x` is the
//! supremum of `a^q` over rationals `q < x`, and every consumer in this crate
//! only needs rational exponents over bases that may themselves be
//! enclosures (the `e` bracket, for instance).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{exact_root, nth_root, Interval, Precision, Rational};

/// A strictly positive rational.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosRational(Rational);

impl PosRational {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_positive() {
            Ok(PosRational(value))
        } else {
            Err(Error::NotPositive(value.to_string()))
        }
    }

    pub fn one() -> Self {
        PosRational(Rational::one())
    }

    pub fn get(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    pub fn recip(&self) -> PosRational {
        PosRational(self.0.recip().expect("positive"))
    }
}

impl FromStr for PosRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PosRational::new(s.parse()?)
    }
}

impl From<PosRational> for Rational {
    fn from(p: PosRational) -> Rational {
        p.0
    }
}

impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Above this many bits, `a^p` is no longer formed exactly before rooting.
const EXACT_POWER_BITS: u64 = 1 << 16;

/// Above this many bits, `a^p` is not formed before taking the root: the
/// root comes first and the power is formed with outward rounding.
const ROOT_AFTER_POWER_BITS: u64 = 512;

fn small_exponent(n: &BigInt, what: &str) -> u64 {
    n.magnitude().to_u64().unwrap_or_else(|| panic!("{what} {n} does not fit in 64 bits"))
}

fn sqrt_interval(x: &Interval, prec: &Precision) -> Interval {
    let lo = nth_root(x.lo(), 2, prec).expect("nonnegative");
    let hi = nth_root(x.hi(), 2, prec).expect("nonnegative");
    Interval::new_unchecked(lo.lo().clone(), hi.hi().clone())
}

/// Enclosure of `a^q` with width at most `eps`.
///
/// `q = p/n` in lowest terms. Writing `n = 2^j · m` with `m` odd, the
/// result is the `m`-th root of `a^p` followed by `j` square roots. For
/// large `|p|` the root is taken first and the power is formed with outward
/// rounding. The result is an exact point whenever `a^q` is rational.
pub fn pow_rat(a: &PosRational, q: &Rational, prec: &Precision) -> Interval {
    let a = a.get();
    if q.is_zero() || a.is_one() {
        return Interval::one();
    }
    let p = q.numer();
    let p_abs = small_exponent(p, "exponent numerator");
    let n = small_exponent(q.denom(), "exponent denominator");
    let exact_small = p_abs.saturating_mul(a.size_bits()) <= EXACT_POWER_BITS;

    if n == 1 && exact_small {
        return Interval::point(a.pow_i64(p.to_i64().expect("fits")).expect("a > 0"));
    }
    if let Ok(n32) = u32::try_from(n) {
        if let Some(root) = exact_root(a, n32) {
            if p_abs.saturating_mul(root.size_bits()) <= EXACT_POWER_BITS {
                return Interval::point(root.pow_i64(p.to_i64().expect("fits")).expect("a > 0"));
            }
        }
    }

    // |q| > 1: a^q = a^k · a^f with k = floor(q), 0 < f < 1, so the root
    // never sees an extreme intermediate power.
    if n > 1 && p_abs > n {
        let k = q.floor();
        if k.magnitude().to_u64().map_or(false, |m| m.saturating_mul(a.size_bits()) <= EXACT_POWER_BITS) {
            let k = k.to_i64().expect("bounded above");
            let whole = a.pow_i64(k).expect("a > 0");
            let frac = q - &Rational::from(k);
            let part = pow_rat(&PosRational(a.clone()), &frac, &prec.scaled(&whole.recip().expect("a > 0")));
            return part.scale(&whole);
        }
    }

    let j = n.trailing_zeros();
    let m = u32::try_from(n >> j).expect("odd part of the exponent denominator fits in 32 bits");
    let mut extra = 8 + 64 - p_abs.leading_zeros() as u64 + a.log2_estimate().unsigned_abs();
    loop {
        let stage = prec.tightened(extra);
        let bits = stage.bits();
        let enclosure = if p_abs.saturating_mul(a.size_bits()) <= ROOT_AFTER_POWER_BITS {
            let base = a.pow_i64(p.to_i64().expect("fits")).expect("a > 0");
            let mut r = nth_root(&base, m, &stage).expect("positive base");
            for _ in 0..j {
                r = sqrt_interval(&r, &stage);
            }
            r
        } else {
            let mut r = nth_root(a, m, &stage).expect("positive base");
            for _ in 0..j {
                r = sqrt_interval(&r, &stage);
            }
            let r = keep_positive(r, a);
            let mut powered = r.pow_rounded(p_abs, bits).expect("positive");
            if p.is_negative() {
                powered = powered.recip_pos().expect("positive").round_outward_positive(bits);
            }
            powered
        };
        if enclosure.width() <= *prec.eps() || extra > 1 << 14 {
            return enclosure;
        }
        extra *= 2;
    }
}

/// Root enclosures of tiny bases can touch zero on a coarse grid; a zero
/// lower end is replaced by a positive lower bound of the root.
fn keep_positive(r: Interval, a: &Rational) -> Interval {
    if r.is_positive() {
        return r;
    }
    // a^(1/n) >= min(a, 1) for n >= 1.
    let floor = std::cmp::min(a.clone(), Rational::one());
    Interval::new_unchecked(floor, r.hi().clone())
}

/// Enclosure of `{ x^q : x in base }` for a strictly positive interval base.
///
/// `x ↦ x^q` is increasing for `q > 0` and decreasing for `q < 0`, so the
/// endpoints map to the endpoints. Each endpoint is evaluated at `eps/2`.
pub fn pow_interval_base(base: &Interval, q: &Rational, prec: &Precision) -> Result<Interval> {
    if !base.is_positive() {
        return Err(Error::NotPositiveInterval { lo: base.lo().to_string(), hi: base.hi().to_string() });
    }
    if base.is_point() {
        return Ok(pow_rat(&PosRational(base.lo().clone()), q, prec));
    }
    let half = prec.tightened(1);
    let at_lo = pow_rat(&PosRational(base.lo().clone()), q, &half);
    let at_hi = pow_rat(&PosRational(base.hi().clone()), q, &half);
    Ok(if q.is_negative() {
        Interval::new_unchecked(at_hi.lo().clone(), at_lo.hi().clone())
    } else {
        Interval::new_unchecked(at_lo.lo().clone(), at_hi.hi().clone())
    })
}

/// Lower bounds for `a^(q_i)` along `q_i = x - 2^-i`, `i = 1..=count`.
///
/// These are the members of the set whose supremum defines `a^x`. The list
/// is nondecreasing: each entry is the larger of its own certified lower
/// bound and the previous entry, which is valid because `a^q` increases
/// with `q` for `a > 1`.
pub fn def1_lower_samples(a: &PosRational, x: &Rational, count: u32) -> Result<Vec<Rational>> {
    if a.get() <= &Rational::one() {
        return Err(Error::NotGreaterThanOne(a.to_string()));
    }
    let mut out: Vec<Rational> = Vec::with_capacity(count as usize);
    for i in 1..=count {
        let q = x - &Rational::pow2(-(i as i64));
        let prec = Precision::from_bits(i as u64 + 16);
        let lo = pow_rat(a, &q, &prec).lo().clone();
        let lo = match out.last() {
            Some(prev) if prev > &lo => prev.clone(),
            _ => lo,
        };
        out.push(lo);
    }
    Ok(out)
}

/// `1 + n(a - 1)`, a lower bound for `a^n` when `a > 0` and `n >= 1`.
pub fn bernoulli_lower_bound(a: &Rational, n: u64) -> Rational {
    Rational::one() + Rational::from_integer(n) * (a - &Rational::one())
}

/// Smallest `n >= 1` with `1 + n(a - 1) > bound`, so that `a^n > bound`.
pub fn bernoulli_exponent_exceeding(a: &Rational, bound: &Rational) -> Result<u64> {
    if a <= &Rational::one() {
        return Err(Error::NotGreaterThanOne(a.to_string()));
    }
    let excess = (bound - &Rational::one()) / (a - &Rational::one());
    let n = if excess.is_negative() { BigInt::from(0) } else { excess.floor() + 1 };
    Ok(n.to_u64().unwrap_or(u64::MAX).max(1))
}

/// Enclosures of `base^(2^-k)` for `k = 0, 1, 2, …`, built lazily by
/// repeated outward-rounded square roots on a fixed dyadic grid.
pub(crate) struct RootChain {
    prec: Precision,
    roots: Vec<Interval>,
}

impl RootChain {
    pub(crate) fn new(base: Interval, bits: u64) -> Self {
        debug_assert!(base.is_positive());
        RootChain { prec: Precision::from_bits(bits), roots: vec![base] }
    }

    pub(crate) fn bits(&self) -> u64 {
        self.prec.bits()
    }

    pub(crate) fn root(&mut self, k: usize) -> &Interval {
        while self.roots.len() <= k {
            let last = self.roots.last().expect("chain starts with the base");
            let next = sqrt_interval(last, &self.prec);
            self.roots.push(next);
        }
        &self.roots[k]
    }

    /// `base^y` for a dyadic rational `y`.
    pub(crate) fn pow_dyadic(&mut self, y: &Rational) -> Interval {
        let bits = self.bits();
        let magnitude = y.abs();
        let whole = small_exponent(&magnitude.floor(), "integer part of exponent");
        let frac = &magnitude - &Rational::from_integer(whole as i64);
        let depth = y.denom().bits().saturating_sub(1) as usize;
        debug_assert!(y.denom() == &(BigInt::from(1) << depth), "exponent must be dyadic");

        let mut acc = self.root(0).pow_rounded(whole, bits).expect("positive");
        let frac_bits = frac.numer().magnitude().clone();
        for i in 1..=depth {
            if frac_bits.bit((depth - i) as u64) {
                let factor = self.root(i).clone();
                acc = acc.mul_pos_rounded(&factor, bits);
            }
        }
        if y.is_negative() {
            acc = acc.recip_pos().expect("positive").round_outward_positive(bits);
        }
        acc
    }
}
