use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::{Interval, Precision, Rational};
use crate::error::{Error, Result};

/// Enclosure of the real `n`-th root of `x >= 0`.
///
/// The result satisfies `lo^n <= x <= hi^n` and `hi - lo <= eps`. When `x`
/// is the `n`-th power of a rational the result collapses to that point.
///
/// The search is bisection on the exact predicate `mid^n <= x`. Before
/// bisecting, an integer root of `x · 2^(n·b)` proposes the dyadic cell of
/// width `2^-b <= eps/4` holding the root; the proposal is accepted only after the
/// predicate confirms both ends, otherwise plain bisection runs from
/// `[x, 1]` or `[1, x]`.
pub fn nth_root(x: &Rational, n: u32, prec: &Precision) -> Result<Interval> {
    if n == 0 {
        return Err(Error::ZeroRootDegree);
    }
    if x.is_negative() {
        return Err(Error::NegativeRadicand(x.to_string()));
    }
    if n == 1 || x.is_zero() || x.is_one() {
        return Ok(Interval::point(x.clone()));
    }
    if let Some(root) = exact_root(x, n) {
        return Ok(Interval::point(root));
    }
    let (lo, hi) = match dyadic_cell(x, n, prec.bits() + 2) {
        Some(cell) => cell,
        None => initial_bracket(x),
    };
    let root = bisect(x, n, lo, hi, prec.eps());
    if root.lo().is_positive() {
        return Ok(root);
    }
    // A grid cell next to zero; x^(1/n) > x for 0 < x < 1.
    let (_, hi) = root.into_bounds();
    Ok(Interval::new_unchecked(x.clone(), hi))
}

/// The bracket `[x, 1]` for `x <= 1` and `[1, x]` otherwise; both satisfy
/// `lo^n <= x <= hi^n` for every `n >= 1`.
fn initial_bracket(x: &Rational) -> (Rational, Rational) {
    if x <= &Rational::one() {
        (x.clone(), Rational::one())
    } else {
        (Rational::one(), x.clone())
    }
}

/// `x^(1/n)` when it is rational.
pub fn exact_root(x: &Rational, n: u32) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let rn = num.nth_root(n);
    if Pow::pow(&rn, n) != *num {
        return None;
    }
    let rd = den.nth_root(n);
    if Pow::pow(&rd, n) != *den {
        return None;
    }
    Some(Rational::new(BigInt::from(rn), BigInt::from(rd)).expect("nonzero denominator"))
}

/// `mid^n <= x`, exactly.
fn below(mid: &Rational, n: u32, x: &Rational) -> bool {
    &mid.pow_u64(n as u64) <= x
}

fn bisect(x: &Rational, n: u32, mut lo: Rational, mut hi: Rational, eps: &Rational) -> Interval {
    while &(&hi - &lo) > eps {
        let mid = lo.midpoint(&hi);
        if below(&mid, n, x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval::new_unchecked(lo, hi)
}

fn dyadic_cell(x: &Rational, n: u32, bits: u64) -> Option<(Rational, Rational)> {
    let shift = bits.checked_mul(n as u64)?;
    let scaled = (x.numer() << shift) / x.denom();
    let r = scaled.magnitude().nth_root(n);
    let exp = -(bits as i64);
    let lo = Rational::dyadic(BigInt::from(r.clone()), exp);
    let hi = Rational::dyadic(BigInt::from(r) + BigInt::one(), exp);
    (below(&lo, n, x) && !below(&hi, n, x)).then_some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn eps(s: &str) -> Precision {
        Precision::new(r(s)).unwrap()
    }

    /// Reference: plain bisection on `[1, 2]` for `y^2 = 2`, independent of
    /// the seeded search.
    fn sqrt2_by_bisection(width: &Rational) -> (Rational, Rational) {
        let (mut lo, mut hi) = (Rational::one(), Rational::from(2));
        while &(&hi - &lo) > width {
            let mid = lo.midpoint(&hi);
            if &mid * &mid <= Rational::from(2) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    #[test]
    fn sqrt_two_to_three_places() {
        let got = nth_root(&r("2"), 2, &eps("1/1000")).unwrap();
        assert!(got.lo() >= &r("1.414") && got.hi() <= &r("1.415"), "{got}");
        assert!(got.width() <= r("1/1000"));
        let (olo, ohi) = sqrt2_by_bisection(&r("1/1000"));
        assert!(got.intersects(&Interval::new(olo, ohi).unwrap()));
    }

    #[test]
    fn identity_and_perfect_powers() {
        for k in 1..8 {
            assert_eq!(nth_root(&Rational::one(), k, &eps("1/10")).unwrap(), Interval::one());
        }
        assert_eq!(nth_root(&r("9/4"), 2, &eps("1/10")).unwrap(), Interval::point(r("3/2")));
        assert_eq!(nth_root(&r("8/27"), 3, &eps("1/10")).unwrap(), Interval::point(r("2/3")));
        assert_eq!(nth_root(&Rational::zero(), 5, &eps("1/10")).unwrap(), Interval::zero());
    }

    #[test]
    fn tiny_radicands_keep_a_positive_lower_end() {
        let x = Rational::pow2(-200) / Rational::from(3);
        let got = nth_root(&x, 2, &eps("1e-6")).unwrap();
        assert!(got.lo().is_positive());
        assert!(got.lo().pow_u64(2) <= x && x <= got.hi().pow_u64(2));
        assert!(got.width() <= r("1e-6"));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(nth_root(&r("-2"), 2, &eps("1/10")), Err(Error::NegativeRadicand(_))));
        assert_eq!(nth_root(&r("2"), 0, &eps("1/10")), Err(Error::ZeroRootDegree));
    }

    #[test]
    fn unseeded_bisection_also_satisfies_contract() {
        let x = r("5/7");
        let (lo, hi) = initial_bracket(&x);
        let got = bisect(&x, 3, lo, hi, &r("1/100000"));
        assert!(got.lo().pow_u64(3) <= x && x <= got.hi().pow_u64(3));
    }
}
