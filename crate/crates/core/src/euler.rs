//! `e` as the unique base whose logarithm is 1, and three independent routes
//! to `e^x`: powers of the `e` bracket, the Taylor series with a Lagrange
//! remainder bound, and the compound-interest limit `(1 + x/n)^n`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exact::{Interval, Precision, Rational};
use crate::inequalities::diff_quotient;
use crate::logarithm::ln_enclosure;
use crate::powers::{pow_interval_base, PosRational};

/// Enclosure of `e` certified by `ln(lo) < 1 < ln(hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerEnclosure {
    pub bracket: Interval,
    /// Bisection steps taken from `[2, 3]`.
    pub iterations: u32,
    /// Encloses `ln(bracket.lo)`; lies strictly below 1.
    pub ln_at_lo: Interval,
    /// Encloses `ln(bracket.hi)`; lies strictly above 1.
    pub ln_at_hi: Interval,
}

impl EulerEnclosure {
    pub fn is_certified(&self) -> bool {
        let one = Rational::one();
        self.ln_at_lo.hi() < &one && self.ln_at_hi.lo() > &one
    }
}

/// The two quotients that certify `2 < e < 3` before any bisection:
/// `ln 2 <= (2^(1/2) - 1)/(1/2) = 2(√2 - 1) < 1` and
/// `ln 3 >= (3^(-1/6) - 1)/(-1/6) = 6(1 - 3^(-1/6)) > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialCertificate {
    pub ln2_upper: Interval,
    pub ln3_lower: Interval,
}

impl InitialCertificate {
    pub fn holds(&self) -> bool {
        let one = Rational::one();
        self.ln2_upper.hi() < &one && self.ln3_lower.lo() > &one
    }
}

pub fn initial_certificate(prec: &Precision) -> Result<InitialCertificate> {
    let two = PosRational::new(Rational::from(2))?;
    let three = PosRational::new(Rational::from(3))?;
    let half = Rational::new(1, 2)?;
    let minus_sixth = Rational::new(-1, 6)?;
    Ok(InitialCertificate {
        ln2_upper: diff_quotient(&two, &half, prec)?.quotient,
        ln3_lower: diff_quotient(&three, &minus_sixth, prec)?.quotient,
    })
}

/// Refinements of the ln precision at a single bisection midpoint.
const MIDPOINT_REFINEMENTS: u32 = 12;

fn e_memo() -> &'static Mutex<HashMap<Rational, EulerEnclosure>> {
    static MEMO: OnceLock<Mutex<HashMap<Rational, EulerEnclosure>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Enclosure of `e` with width at most `eps`, by bisection of `[2, 3]` on
/// the sign of `ln(mid) - 1`. Results are memoized per precision.
pub fn compute_e(prec: &Precision) -> Result<EulerEnclosure> {
    if let Some(hit) = e_memo().lock().unwrap_or_else(|poisoned| poisoned.into_inner()).get(prec.eps()) {
        return Ok(hit.clone());
    }
    let result = bisect_for_e(prec)?;
    e_memo().lock().unwrap_or_else(|poisoned| poisoned.into_inner()).insert(prec.eps().clone(), result.clone());
    Ok(result)
}

fn bisect_for_e(prec: &Precision) -> Result<EulerEnclosure> {
    let coarse = Precision::from_bits(20);
    if !initial_certificate(&coarse)?.holds() {
        return Err(Error::Inconsistent("compute_e initial bracket"));
    }
    let one = Rational::one();
    let mut lo = Rational::from(2);
    let mut hi = Rational::from(3);
    let mut ln_lo: Option<Interval> = None;
    let mut ln_hi: Option<Interval> = None;
    let mut iterations = 0;
    let first_delta = prec.tightened(3);

    while &(&hi - &lo) > prec.eps() {
        let mid = lo.midpoint(&hi);
        let mid_pos = PosRational::new(mid.clone())?;
        let mut delta = first_delta.clone();
        let mut decided = false;
        for _ in 0..MIDPOINT_REFINEMENTS {
            let ln_mid = ln_enclosure(&mid_pos, &delta)?.bracket;
            if ln_mid.hi() < &one {
                lo = mid.clone();
                ln_lo = Some(ln_mid);
                decided = true;
                break;
            }
            if ln_mid.lo() > &one {
                hi = mid.clone();
                ln_hi = Some(ln_mid);
                decided = true;
                break;
            }
            delta = delta.tightened(4);
        }
        if !decided {
            return Err(Error::IterationCap { what: "compute_e", iterations, best: Interval::new_unchecked(lo, hi) });
        }
        iterations += 1;
    }

    let ln_at_lo = match ln_lo {
        Some(l) => l,
        None => ln_enclosure(&PosRational::new(lo.clone())?, &coarse)?.bracket,
    };
    let ln_at_hi = match ln_hi {
        Some(l) => l,
        None => ln_enclosure(&PosRational::new(hi.clone())?, &coarse)?.bracket,
    };
    Ok(EulerEnclosure { bracket: Interval::new_unchecked(lo, hi), iterations, ln_at_lo, ln_at_hi })
}

/// Partial sum of the exponential series and its remainder bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesState {
    pub x: Rational,
    /// `Σ_{k=0}^{n} x^k / k!`, exact.
    pub partial_sum: Rational,
    /// Highest term index `n` included.
    pub terms_used: u32,
    /// `M·|x|^(n+1)/(n+1)!` with `M` from [`remainder_majorant`].
    pub remainder_bound: Rational,
}

impl SeriesState {
    pub fn enclosure(&self) -> Interval {
        Interval::new_unchecked(&self.partial_sum - &self.remainder_bound, &self.partial_sum + &self.remainder_bound)
    }
}

/// Computable replacement for `max(1, e^x)` in the Lagrange remainder:
/// 1 for `x <= 0`, `3^⌈x⌉` for `x > 0` (uses `e < 3`).
pub fn remainder_majorant(x: &Rational) -> Rational {
    if x.is_positive() {
        let up = x.ceil();
        let up = u64::try_from(up).expect("exponent too large for the series route");
        Rational::from(3).pow_u64(up)
    } else {
        Rational::one()
    }
}

/// Series state after terms `0..=n`.
pub fn series_state(x: &Rational, n: u32) -> SeriesState {
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 1..=n {
        term = &term * x / Rational::from(k as i64);
        sum += &term;
    }
    let next = &term * x / Rational::from(n as i64 + 1);
    SeriesState { x: x.clone(), partial_sum: sum, terms_used: n, remainder_bound: remainder_majorant(x) * next.abs() }
}

/// Enclosure of `e^x` with width at most `eps` from the Taylor series,
/// adding terms until the remainder bound is below `3·eps/8`.
pub fn exp_series(x: &Rational, prec: &Precision) -> Interval {
    if x.is_zero() {
        return Interval::one();
    }
    let majorant = remainder_majorant(x);
    let budget = prec.eps() * &Rational::new(3, 8).expect("nonzero");
    let magnitude = x.abs();
    let mut term = Rational::one();
    let mut sum = Rational::one();
    let mut n: u32 = 0;
    loop {
        let next = &term * x / Rational::from(n as i64 + 1);
        let remainder = &majorant * &next.abs();
        if Rational::from(n as i64 + 1) > magnitude && remainder <= budget {
            let bits = prec.bits() + 3;
            return Interval::new_unchecked(
                (&sum - &remainder).floor_dyadic(bits),
                (&sum + &remainder).ceil_dyadic(bits),
            );
        }
        term = next;
        sum += &term;
        n += 1;
    }
}

/// `e^x` as a power of the `e` bracket, together with the `e` enclosure used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPow {
    pub value: Interval,
    pub e: EulerEnclosure,
}

/// Enclosure of `e^x` with width at most `eps`, as `pow_interval_base` of a
/// `compute_e` bracket.
pub fn exp_pow(x: &Rational, prec: &Precision) -> Result<Interval> {
    Ok(exp_pow_detailed(x, prec)?.value)
}

pub fn exp_pow_detailed(x: &Rational, prec: &Precision) -> Result<ExpPow> {
    // d/db b^x = x b^(x-1); bound it on [2, 3] to size the e budget.
    let slope = if x.is_positive() { x * &remainder_majorant(&(x - &Rational::one())) } else { x.abs() };
    let budget = prec.scaled(&(Rational::one() / (Rational::from(4) * (Rational::one() + slope))));
    // a power of two, so calls at nearby x share one memoized e bracket
    let mut delta = Precision::from_bits(budget.bits());
    let mut last = None;
    for _ in 0..8 {
        let e = compute_e(&delta)?;
        let value = pow_interval_base(&e.bracket, x, &delta)?;
        if &value.width() <= prec.eps() {
            return Ok(ExpPow { value, e });
        }
        last = Some(value);
        delta = delta.tightened(8);
    }
    Err(Error::IterationCap { what: "exp_pow", iterations: 8, best: last.expect("loop ran") })
}

/// `(1 + x/n)^n`, exact.
pub fn compound_value(x: &Rational, n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::NotPositive("0".into()));
    }
    let base = Rational::one() + x / &Rational::from_integer(n);
    if !base.is_positive() {
        return Err(Error::CompoundBaseNotPositive(base.to_string()));
    }
    Ok(base.pow_u64(n))
}

/// Secant slopes of `e^x` around `x0` with step `h = 2^-k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpDerivativeBracket {
    /// Encloses `e^x0 · (e^-h - 1)/(-h)`.
    pub lower: Interval,
    /// Encloses `e^x0`.
    pub value: Interval,
    /// Encloses `e^x0 · (e^h - 1)/h`.
    pub upper: Interval,
}

impl ExpDerivativeBracket {
    pub fn bracket(&self) -> Interval {
        Interval::new_unchecked(self.lower.lo().clone(), self.upper.hi().clone())
    }

    /// `lower <= e^x0 <= upper` at enclosure-intersection level.
    pub fn is_consistent(&self) -> bool {
        self.lower.lo() <= self.value.hi() && self.value.lo() <= self.upper.hi()
    }
}

/// `(b^s - 1)/s` over every base `b` in a positive interval; the quotient
/// increases with the base.
fn quotient_over_base(base: &Interval, s: &Rational, prec: &Precision) -> Result<Interval> {
    let lo = diff_quotient(&PosRational::new(base.lo().clone())?, s, prec)?.quotient;
    let hi = diff_quotient(&PosRational::new(base.hi().clone())?, s, prec)?.quotient;
    Ok(Interval::new_unchecked(lo.lo().clone(), hi.hi().clone()))
}

pub fn exp_derivative_bracket(x0: &Rational, k: u32, prec: &Precision) -> Result<ExpDerivativeBracket> {
    let h = Rational::pow2(-(k as i64));
    let detailed = exp_pow_detailed(x0, prec)?;
    let e = &detailed.e.bracket;
    let back = quotient_over_base(e, &-&h, prec)?;
    let fwd = quotient_over_base(e, &h, prec)?;
    Ok(ExpDerivativeBracket {
        lower: detailed.value.mul(&back),
        upper: detailed.value.mul(&fwd),
        value: detailed.value,
    })
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

    fn iv(lo: &str, hi: &str) -> Interval {
        Interval::new(r(lo), r(hi)).unwrap()
    }

    /// Reference enclosure of e from Σ 1/k! with the tail bounded by the
    /// geometric series 1/(n+1)! · (1 + 1/(n+2) + ...) <= 2/(n+1)!.
    fn e_reference(n: u32) -> Interval {
        let mut term = Rational::one();
        let mut sum = Rational::one();
        for k in 1..=n {
            term = term / Rational::from(k as i64);
            sum += &term;
        }
        let tail = Rational::from(2) * term / Rational::from(n as i64 + 1);
        Interval::new(sum.clone(), sum + tail).unwrap()
    }

    #[test]
    fn initial_bracket_is_certified() {
        let c = initial_certificate(&eps("1e-4")).unwrap();
        assert!(c.holds());
        // 2(√2 - 1) = 0.828427..., 6(1 - 3^(-1/6)) = 1.003900...
        assert!(c.ln2_upper.intersects(&iv("0.828427", "0.828428")), "{}", c.ln2_upper);
        assert!(c.ln3_lower.intersects(&iv("1.003900", "1.003901")), "{}", c.ln3_lower);
    }

    #[test]
    fn e_at_coarse_precision() {
        let e = compute_e(&eps("1/2")).unwrap();
        assert!(e.bracket.width() <= r("1/2"));
        assert!(Interval::new(r("2"), r("3")).unwrap().contains_interval(&e.bracket));
        assert!(e.bracket.intersects(&e_reference(12)));
        assert!(e.is_certified());
    }

    #[test]
    fn e_to_six_places() {
        let e = compute_e(&eps("1e-6")).unwrap();
        assert!(e.bracket.lo() >= &r("2.718281") && e.bracket.hi() <= &r("2.718283"), "{}", e.bracket);
        assert!(e.bracket.intersects(&e_reference(15)));
        assert!(e.is_certified());
        // memoized
        assert_eq!(compute_e(&eps("1e-6")).unwrap(), e);
    }

    #[test]
    fn series_examples() {
        assert!(exp_series(&Rational::zero(), &eps("1e-9")).contains(&Rational::one()));
        let s = series_state(&Rational::one(), 10);
        // 3/11! = 3/39916800
        assert_eq!(s.remainder_bound, r("3/39916800"));
        assert!(s.remainder_bound < r("1e-7"));
        assert!(s.enclosure().intersects(&e_reference(14)));
    }

    #[test]
    fn series_width_and_negative_arguments() {
        for x in ["-3", "-1/2", "5/2", "7"] {
            let got = exp_series(&r(x), &eps("1e-10"));
            assert!(got.width() <= r("1e-10"), "x = {x}: {got}");
        }
        let inv_e = exp_series(&r("-1"), &eps("1e-9"));
        assert!(inv_e.intersects(&iv("0.3678794411", "0.3678794412")), "{inv_e}");
    }

    #[test]
    fn power_route_examples() {
        assert_eq!(exp_pow(&Rational::zero(), &eps("1e-6")).unwrap(), Interval::one());
        let d = exp_pow_detailed(&Rational::one(), &eps("1e-6")).unwrap();
        assert_eq!(d.value, d.e.bracket);
        let via_pow = exp_pow(&r("-1"), &eps("1e-6")).unwrap();
        assert!(via_pow.width() <= r("1e-6"));
        assert!(via_pow.intersects(&exp_series(&r("-1"), &eps("1e-6"))));
    }

    #[test]
    fn compound_examples() {
        assert_eq!(compound_value(&r("1"), 1).unwrap(), r("2"));
        assert_eq!(compound_value(&r("1"), 2).unwrap(), r("9/4"));
        assert_eq!(compound_value(&r("-2"), 4).unwrap(), r("1/16"));
        assert!(matches!(compound_value(&r("-3"), 3), Err(Error::CompoundBaseNotPositive(_))));
        assert!(compound_value(&r("1"), 0).is_err());
    }

    #[test]
    fn derivative_bracket_at_zero_with_unit_step() {
        let b = exp_derivative_bracket(&Rational::zero(), 0, &eps("1e-8")).unwrap();
        // 1 - 1/e ≈ 0.63212, e - 1 ≈ 1.71828
        assert!(b.lower.intersects(&iv("0.6321205588", "0.6321205589")), "{}", b.lower);
        assert!(b.upper.intersects(&iv("1.7182818284", "1.7182818285")), "{}", b.upper);
        assert!(b.bracket().contains(&Rational::one()));
        assert!(b.is_consistent());
    }

    #[test]
    fn derivative_bracket_tightens() {
        let coarse = exp_derivative_bracket(&Rational::zero(), 4, &eps("1e-10")).unwrap();
        let fine = exp_derivative_bracket(&Rational::zero(), 16, &eps("1e-10")).unwrap();
        assert!(fine.bracket().width() < coarse.bracket().width());
        assert!(fine.bracket().width() < r("1e-4"));
        let at_one = exp_derivative_bracket(&Rational::one(), 12, &eps("1e-10")).unwrap();
        assert!(at_one.bracket().contains_interval(&at_one.value));
    }
}
