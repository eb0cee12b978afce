//! Natural logarithm as the slope of `a^x` at `x = 0`, and logarithms to an
//! arbitrary base by inverting `y ↦ base^y`.
//!
//! For `h > 0` the secant slopes of `a^x` through `x = 0` satisfy
//!
//! ```text
//! (a^-h - 1)/(-h)  <=  ln a  <=  (a^h - 1)/h
//! ```
//!
//! and both sides converge to `ln a` as `h → 0`. [`ln_enclosure`] walks
//! `h = 2^-k`, where `a^h` is a chain of square roots, until the bracket is
//! narrow enough.

use crate::error::{Error, Result};
use crate::exact::{Interval, Precision, Rational};
use crate::inequalities::diff_quotient;
use crate::powers::{bernoulli_lower_bound, pow_rat, PosRational, RootChain};
use crate::verdict::{check_le, check_lt, Verdict};

/// Halvings of `h` before `ln_enclosure` gives up.
pub const DEFAULT_HALVING_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LnEnclosure {
    pub a: PosRational,
    pub bracket: Interval,
    /// Step `h = 2^-iterations` of the last stage.
    pub h_final: Rational,
    pub iterations: u32,
}

/// One refinement stage of the ln bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LnStage {
    pub h: Rational,
    /// Encloses `(a^-h - 1)/(-h)`.
    pub lower_quotient: Interval,
    /// Encloses `(a^h - 1)/h`.
    pub upper_quotient: Interval,
    /// Running intersection of all stage brackets so far.
    pub bracket: Interval,
}

/// Quotient enclosures at `h = 2^-k` from `r ⊇ a^h`.
fn stage_quotients(r: &Interval, k: u32) -> (Interval, Interval) {
    let scale = Rational::pow2(k as i64);
    let one = Rational::one();
    let upper = Interval::new_unchecked((r.lo() - &one) * &scale, (r.hi() - &one) * &scale);
    // (1 - 1/r)·2^k is increasing in r.
    let lower = Interval::new_unchecked(
        (&one - &r.lo().recip().expect("positive")) * &scale,
        (&one - &r.hi().recip().expect("positive")) * &scale,
    );
    (lower, upper)
}

fn working_bits(a: &Rational, prec: &Precision) -> u64 {
    let magnitude = a.log2_estimate().unsigned_abs() + 1;
    2 * prec.bits() + 2 * (64 - magnitude.leading_zeros() as u64) + 40
}

/// Stages `k = 1..=count` of the ln bracket, at a working precision suited
/// to `prec`.
pub fn ln_stages(a: &PosRational, prec: &Precision, count: u32) -> Result<Vec<LnStage>> {
    let mut chain = RootChain::new(Interval::point(a.get().clone()), working_bits(a.get(), prec));
    let mut bracket: Option<Interval> = None;
    let mut out = Vec::with_capacity(count as usize);
    for k in 1..=count {
        let (lower, upper) = stage_quotients(chain.root(k as usize), k);
        let stage = Interval::new_unchecked(lower.lo().clone(), upper.hi().clone());
        let next = match bracket {
            None => stage,
            Some(b) => b.intersect(&stage).ok_or(Error::Inconsistent("ln_stages"))?,
        };
        out.push(LnStage {
            h: Rational::pow2(-(k as i64)),
            lower_quotient: lower,
            upper_quotient: upper,
            bracket: next.clone(),
        });
        bracket = Some(next);
    }
    Ok(out)
}

pub fn ln_enclosure(a: &PosRational, prec: &Precision) -> Result<LnEnclosure> {
    ln_enclosure_with_cap(a, prec, DEFAULT_HALVING_CAP)
}

/// Enclosure of `ln a` with width at most `eps`, halving `h` at most `cap`
/// times.
///
/// Every stage bracket is valid, so they are intersected as `h` shrinks and
/// the returned bracket is nested inside all earlier ones. When square-root
/// rounding noise dominates a stage, the chain is rebuilt on a finer grid.
pub fn ln_enclosure_with_cap(a: &PosRational, prec: &Precision, cap: u32) -> Result<LnEnclosure> {
    if a.get().is_one() {
        return Ok(LnEnclosure { a: a.clone(), bracket: Interval::zero(), h_final: Rational::one(), iterations: 0 });
    }
    let eps = prec.eps();
    let noise_limit = eps / &Rational::from(8);
    let out_bits = prec.bits() + 4;
    let mut work = working_bits(a.get(), prec);
    let mut best: Option<Interval> = None;
    let mut k = 0;

    for _ in 0..8 {
        let mut chain = RootChain::new(Interval::point(a.get().clone()), work);
        k = 1;
        let mut noisy = false;
        while k <= cap {
            let (lower, upper) = stage_quotients(chain.root(k as usize), k);
            let stage = Interval::new_unchecked(lower.lo().clone(), upper.hi().clone()).round_outward(out_bits);
            let bracket = match &best {
                None => stage,
                Some(b) => b.intersect(&stage).ok_or(Error::Inconsistent("ln_enclosure"))?,
            };
            if &bracket.width() <= eps {
                return Ok(LnEnclosure { a: a.clone(), bracket, h_final: Rational::pow2(-(k as i64)), iterations: k });
            }
            best = Some(bracket);
            if upper.width() > noise_limit {
                noisy = true;
                break;
            }
            k += 1;
        }
        if !noisy {
            break;
        }
        work += work / 2 + 32;
    }
    Err(Error::IterationCap {
        what: "ln_enclosure",
        iterations: k.min(cap),
        best: best.expect("at least one stage ran"),
    })
}

/// `{ ln x : x in A }` for a strictly positive interval, as the hull of the
/// endpoint enclosures (`ln` is increasing).
pub fn ln_interval(arg: &Interval, prec: &Precision) -> Result<Interval> {
    let lo = PosRational::new(arg.lo().clone())?;
    let hi = PosRational::new(arg.hi().clone())?;
    let at_lo = ln_enclosure(&lo, prec)?;
    if arg.is_point() {
        return Ok(at_lo.bracket);
    }
    let at_hi = ln_enclosure(&hi, prec)?;
    Ok(Interval::new_unchecked(at_lo.bracket.lo().clone(), at_hi.bracket.hi().clone()))
}

/// `{ log_b x : b in base }`, as an interval `[y_lo, y_hi]` with
/// `base^y_lo` entirely `<= x` and `base^y_hi` entirely `>= x` (reversed
/// for bases below 1), of width at most `eps`.
///
/// The initial exponent bracket `[-n, n]` comes from Bernoulli's bound
/// `b^n >= 1 + n(b - 1)`, growing `n` through powers of two. Each end is
/// then located by bisection on a certified comparison of `base^y` with `x`.
pub fn log_enclosure(base: &Interval, x: &PosRational, prec: &Precision) -> Result<Interval> {
    if !base.is_positive() {
        return Err(Error::NotPositiveInterval { lo: base.lo().to_string(), hi: base.hi().to_string() });
    }
    if base.contains(&Rational::one()) {
        return Err(Error::BaseContainsOne { lo: base.lo().to_string(), hi: base.hi().to_string() });
    }
    if base.hi() < &Rational::one() {
        return Ok(-log_enclosure(&base.recip_pos()?, x, prec)?);
    }
    let x = x.get();
    if x.is_one() {
        return Ok(Interval::zero());
    }

    let bound = std::cmp::max(x.clone(), x.recip().expect("positive"));
    let mut n: u64 = 1;
    while bernoulli_lower_bound(base.lo(), n) <= bound {
        n = n.checked_mul(2).expect("Bernoulli bracket overflow");
    }
    let n_bits = 64 - n.leading_zeros() as u64;

    let target = prec.eps() / &Rational::from(4);
    let mut work = prec.bits() + 2 * n_bits + x.log2_estimate().unsigned_abs() + 40;
    let mut best = Interval::new_unchecked(-Rational::from(n as i64), Rational::from(n as i64));
    for attempt in 0..8u32 {
        let mut lo_chain = RootChain::new(Interval::point(base.lo().clone()), work);
        let mut hi_chain = RootChain::new(Interval::point(base.hi().clone()), work);
        let mut power = |y: &Rational| -> Interval {
            let at_lo = lo_chain.pow_dyadic(y);
            let at_hi = hi_chain.pow_dyadic(y);
            if y.is_negative() {
                Interval::new_unchecked(at_hi.lo().clone(), at_lo.hi().clone())
            } else {
                Interval::new_unchecked(at_lo.lo().clone(), at_hi.hi().clone())
            }
        };
        let start = (-Rational::from(n as i64), Rational::from(n as i64));

        let (mut l, mut u) = start.clone();
        while &(&u - &l) > &target {
            let mid = l.midpoint(&u);
            if power(&mid).hi() <= x {
                l = mid;
            } else {
                u = mid;
            }
        }
        let y_lo = l;

        let (mut l, mut u) = start;
        while &(&u - &l) > &target {
            let mid = l.midpoint(&u);
            if power(&mid).lo() >= x {
                u = mid;
            } else {
                l = mid;
            }
        }
        let y_hi = u;

        let found = Interval::new(y_lo, y_hi).map_err(|_| Error::Inconsistent("log_enclosure"))?;
        if &found.width() <= prec.eps() {
            return Ok(found);
        }
        best = best.intersect(&found).unwrap_or(found);
        if attempt >= 2 && base.width() > *prec.eps() {
            // The base alone is too wide for the requested width.
            break;
        }
        work += work / 2 + 32;
    }
    Err(Error::IterationCap { what: "log_enclosure", iterations: 8, best })
}

/// Checks that `(a^h - 1)/h < (b^h - 1)/h` for `0 < a < b`.
pub fn quotient_strictly_increasing_in_base(
    a: &PosRational,
    b: &PosRational,
    h: &Rational,
    prec: &Precision,
) -> Result<Verdict> {
    if a >= b {
        return Err(Error::OutOfOrder(format!("need a < b, got a = {a}, b = {b}")));
    }
    let qa = diff_quotient(a, h, prec)?;
    let qb = diff_quotient(b, h, prec)?;
    Ok(check_lt(&qa.quotient, &qb.quotient))
}

/// Secant bracket for the derivative of `a^x` at `x0` with step `h > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeBracket {
    /// Encloses `a^x0 · (a^-h - 1)/(-h)`, the backward secant slope.
    pub lower: Interval,
    /// Encloses `a^x0 · (a^h - 1)/h`, the forward secant slope.
    pub upper: Interval,
    /// Encloses `(a^(x0+h) - a^x0)/h`, computed from the two powers directly.
    pub secant: Interval,
}

impl SlopeBracket {
    /// `[lower.lo, upper.hi]`, which contains `(ln a)·a^x0`.
    pub fn bracket(&self) -> Interval {
        Interval::new_unchecked(self.lower.lo().clone(), self.upper.hi().clone())
    }

    /// `lower <= secant <= upper` at enclosure-intersection level: only an
    /// enclosure lying entirely on the wrong side falsifies.
    pub fn verdict(&self) -> Verdict {
        if self.lower.lo() > self.secant.hi() || self.secant.lo() > self.upper.hi() {
            Verdict::Falsified
        } else {
            Verdict::Verified
        }
    }
}

pub fn slope_bracket(a: &PosRational, x0: &Rational, h: &Rational, prec: &Precision) -> Result<SlopeBracket> {
    if !h.is_positive() {
        return Err(Error::NotPositive(h.to_string()));
    }
    let at_x0 = pow_rat(a, x0, prec);
    let back = diff_quotient(a, &-h, prec)?.quotient;
    let fwd = diff_quotient(a, h, prec)?.quotient;
    let at_x0_h = pow_rat(a, &(x0 + h), prec);
    let secant = (&at_x0_h - &at_x0).scale(&h.recip().expect("positive"));
    Ok(SlopeBracket { lower: at_x0.mul(&back), upper: at_x0.mul(&fwd), secant })
}

/// Checks `1/((x+δ) ln b) <= (log_b(x+δ) - log_b x)/δ <= 1/(x ln b)` for a
/// base interval entirely above 1.
///
/// `ln_base` must enclose `ln b` over the whole base interval and be
/// strictly positive.
pub fn check_log_derivative(
    base: &Interval,
    ln_base: &Interval,
    x: &PosRational,
    delta: &PosRational,
    prec: &Precision,
) -> Result<Verdict> {
    if base.lo() <= &Rational::one() {
        return Err(Error::NotGreaterThanOne(base.lo().to_string()));
    }
    let x_next = PosRational::new(x.get() + delta.get())?;
    let fine = prec.scaled(delta.get());
    let at_x = log_enclosure(base, x, &fine)?;
    let at_next = log_enclosure(base, &x_next, &fine)?;
    let forward = (&at_next - &at_x).scale(&delta.get().recip().expect("positive"));
    let lower = ln_base.scale(x_next.get()).recip_pos()?;
    let upper = ln_base.scale(x.get()).recip_pos()?;
    Ok(check_le(&lower, &forward).and(check_le(&forward, &upper)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pos(s: &str) -> PosRational {
        s.parse().unwrap()
    }

    fn eps(s: &str) -> Precision {
        Precision::new(r(s)).unwrap()
    }

    /// Independent reference for ln x on x > 1: midpoint-free Riemann sums
    /// of 1/t with exact rationals on a uniform partition.
    fn riemann_ln(x: &Rational, n: u32) -> (Rational, Rational) {
        let step = (x - &Rational::one()) / Rational::from(n as i64);
        let mut lower = Rational::zero();
        let mut upper = Rational::zero();
        for i in 0..n {
            let left = Rational::one() + &step * Rational::from(i as i64);
            let right = &left + &step;
            upper += &(&step / &left);
            lower += &(&step / &right);
        }
        (lower, upper)
    }

    #[test]
    fn ln_of_one_is_zero() {
        let e = ln_enclosure(&pos("1"), &eps("1e-9")).unwrap();
        assert_eq!(e.bracket, Interval::zero());
    }

    #[test]
    fn ln_two_matches_riemann_reference() {
        let got = ln_enclosure(&pos("2"), &eps("1e-3")).unwrap();
        assert!(got.bracket.lo() >= &r("0.6926") && got.bracket.hi() <= &r("0.6936"), "{}", got.bracket);
        let (lo, hi) = riemann_ln(&r("2"), 400);
        assert!(got.bracket.intersects(&Interval::new(lo, hi).unwrap()));
        assert_eq!(got.h_final, Rational::pow2(-(got.iterations as i64)));
    }

    #[test]
    fn upper_quotient_at_half_for_two() {
        // (2^(1/2) - 1)/(1/2) = 2(sqrt 2 - 1) < 1
        let q = diff_quotient(&pos("2"), &r("1/2"), &eps("1e-6")).unwrap().quotient;
        assert!(q.hi() < &Rational::one());
        let stages = ln_stages(&pos("2"), &eps("1e-6"), 1).unwrap();
        assert!(stages[0].upper_quotient.intersects(&q));
    }

    #[test]
    fn stages_are_valid_and_nested() {
        for a in ["2", "1/3", "10"] {
            let stages = ln_stages(&pos(a), &eps("1e-10"), 25).unwrap();
            for s in &stages {
                assert!(s.lower_quotient.lo() <= s.upper_quotient.hi());
            }
            for w in stages.windows(2) {
                assert!(w[0].bracket.contains_interval(&w[1].bracket));
            }
        }
    }

    #[test]
    fn sign_of_ln() {
        let p = eps("1e-4");
        assert!(ln_enclosure(&pos("3/2"), &p).unwrap().bracket.lo().is_positive());
        assert!(ln_enclosure(&pos("2/3"), &p).unwrap().bracket.hi().is_negative());
    }

    #[test]
    fn iteration_cap_reports_best_bracket() {
        match ln_enclosure_with_cap(&pos("2"), &eps("1e-12"), 5) {
            Err(Error::IterationCap { what, best, .. }) => {
                assert_eq!(what, "ln_enclosure");
                assert!(best.contains(&r("0.6931")));
            }
            other => panic!("expected an iteration cap, got {other:?}"),
        }
    }

    #[test]
    fn log_base_examples() {
        let p = eps("1e-6");
        let two = Interval::point(r("2"));
        assert!(log_enclosure(&two, &pos("8"), &p).unwrap().contains(&r("3")));
        assert!(log_enclosure(&two, &pos("1"), &p).unwrap().contains(&Rational::zero()));
        assert!(log_enclosure(&two, &pos("1/4"), &p).unwrap().contains(&r("-2")));
        let half = Interval::point(r("1/2"));
        assert!(log_enclosure(&half, &pos("8"), &p).unwrap().contains(&r("-3")));
        let w = log_enclosure(&Interval::point(r("10")), &pos("2"), &p).unwrap();
        assert!(w.width() <= r("1e-6"));
        assert!(w.contains(&r("0.30103")));
    }

    #[test]
    fn log_base_domain_errors() {
        let p = eps("1e-3");
        let straddle = Interval::new(r("1/2"), r("2")).unwrap();
        assert!(matches!(log_enclosure(&straddle, &pos("3"), &p), Err(Error::BaseContainsOne { .. })));
        assert!(matches!(log_enclosure(&Interval::one(), &pos("3"), &p), Err(Error::BaseContainsOne { .. })));
    }

    #[test]
    fn quotient_increasing_in_base_examples() {
        let p = eps("1e-6");
        assert_eq!(quotient_strictly_increasing_in_base(&pos("1"), &pos("2"), &r("1"), &p).unwrap(), Verdict::Verified);
        assert_eq!(
            quotient_strictly_increasing_in_base(&pos("2"), &pos("4"), &r("1/2"), &p).unwrap(),
            Verdict::Verified
        );
        assert_eq!(
            quotient_strictly_increasing_in_base(&pos("1/2"), &pos("1"), &r("-1"), &p).unwrap(),
            Verdict::Verified
        );
        assert!(quotient_strictly_increasing_in_base(&pos("2"), &pos("2"), &r("1"), &p).is_err());
    }

    #[test]
    fn slope_bracket_sandwiches_secant() {
        let b = slope_bracket(&pos("3"), &r("1/2"), &r("1/64"), &eps("1e-12")).unwrap();
        assert_eq!(b.verdict(), Verdict::Verified);
        let ln3 = ln_enclosure(&pos("3"), &eps("1e-12")).unwrap().bracket;
        let exact = ln3.mul(&pow_rat(&pos("3"), &r("1/2"), &eps("1e-12")));
        assert!(b.bracket().contains_interval(&exact));
    }

    #[test]
    fn log_derivative_bracket() {
        let base = Interval::point(r("2"));
        let ln2 = ln_enclosure(&pos("2"), &eps("1e-10")).unwrap().bracket;
        let v = check_log_derivative(&base, &ln2, &pos("3"), &pos("1/8"), &eps("1e-8")).unwrap();
        assert_eq!(v, Verdict::Verified);
    }
}
