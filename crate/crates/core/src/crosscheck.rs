//! Randomized and fixed-point sweeps that evaluate each identity and
//! inequality of the construction on enclosures and tally the verdicts.
//!
//! Every sweep draws from its own [`Lcg`] stream seeded with
//! `seed + stream`, where `stream` is the sweep's fixed index below, so a
//! sweep's trial set does not depend on which other sweeps ran.

use std::time::{Duration, Instant};

use crate::error::Result;
use crate::euler::{compound_value, compute_e, exp_derivative_bracket, exp_pow, exp_series};
use crate::exact::{Interval, Precision, Rational};
use crate::inequalities::{amgm_check, check_midpoint_convexity, check_quotient_monotone, diff_quotient};
use crate::lcg::Lcg;
use crate::logarithm::{check_log_derivative, ln_enclosure, log_enclosure, slope_bracket};
use crate::powers::{pow_interval_base, pow_rat, PosRational};
use crate::quadrature::ln_integral;
use crate::verdict::{check_agree, check_le, check_lt, Verdict};

/// Falsification messages kept per check.
const MAX_FINDINGS: usize = 5;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub verified: u64,
    pub inconclusive: u64,
    pub falsified: u64,
}

impl Tally {
    pub fn total(&self) -> u64 {
        self.verified + self.inconclusive + self.falsified
    }
}

/// Outcome of one named check over many trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub tally: Tally,
    /// Descriptions of the first few falsified trials.
    pub findings: Vec<String>,
}

impl CheckResult {
    pub fn new(name: &'static str) -> Self {
        CheckResult { name, tally: Tally::default(), findings: Vec::new() }
    }

    pub fn record(&mut self, verdict: Verdict, describe: impl FnOnce() -> String) {
        match verdict {
            Verdict::Verified => self.tally.verified += 1,
            Verdict::Inconclusive => self.tally.inconclusive += 1,
            Verdict::Falsified => {
                self.tally.falsified += 1;
                if self.findings.len() < MAX_FINDINGS {
                    self.findings.push(describe());
                }
            }
        }
    }

    /// Records a computation error as a falsification: every input drawn by
    /// the sweeps lies inside the documented domain.
    pub fn record_result(&mut self, outcome: Result<Verdict>, describe: impl FnOnce() -> String) {
        match outcome {
            Ok(v) => self.record(v, describe),
            Err(e) => self.record(Verdict::Falsified, || format!("{}: error {e}", describe())),
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.tally.falsified > 0 {
            Verdict::Falsified
        } else if self.tally.inconclusive > 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Verified
        }
    }
}

fn base(g: &mut Lcg) -> PosRational {
    PosRational::new(g.positive(40, 8)).expect("positive")
}

fn exponent(g: &mut Lcg) -> Rational {
    g.rational(-18, 18, 6)
}

fn nonzero_exponent(g: &mut Lcg, sign: i64) -> Rational {
    Rational::from(sign) * g.positive(24, 8)
}

/// `x <= y` checked once, then again at a precision below a quarter of the
/// observed midpoint gap when the first attempt overlaps.
fn refine_lt(eval: impl Fn(&Precision) -> Result<(Interval, Interval)>, prec: &Precision) -> Result<Verdict> {
    let (x, y) = eval(prec)?;
    let first = check_lt(&x, &y);
    if first != Verdict::Inconclusive {
        return Ok(first);
    }
    let gap = y.midpoint() - x.midpoint();
    if !gap.is_positive() {
        return Ok(first);
    }
    let fine = Precision::new(gap / Rational::from(4))?.min(prec);
    let (x, y) = eval(&fine)?;
    Ok(check_lt(&x, &y))
}

/// Seven parts of the exponent laws, one result per part, on `trials`
/// random `(a, b, x, y)` draws.
pub fn exponent_laws(trials: u32, seed: u64, prec: &Precision) -> Vec<CheckResult> {
    let mut g = Lcg::new(seed.wrapping_add(1));
    let mut sum = CheckResult::new("a^(x+y) = a^x a^y");
    let mut nested = CheckResult::new("(a^x)^y = a^(xy)");
    let mut monotone = CheckResult::new("a^x strictly monotone in x");
    let mut unit = CheckResult::new("a^1 = a");
    let mut zero = CheckResult::new("a^0 = 1");
    let mut positive = CheckResult::new("a^x > 0");
    let mut product = CheckResult::new("a^x b^x = (ab)^x");

    for _ in 0..trials {
        let a = base(&mut g);
        let b = base(&mut g);
        let x = exponent(&mut g);
        let y = exponent(&mut g);
        let ax = pow_rat(&a, &x, prec);
        let ay = pow_rat(&a, &y, prec);
        let tag = || format!("a = {a}, b = {b}, x = {x}, y = {y}");

        let lhs = pow_rat(&a, &(&x + &y), prec);
        sum.record_result(ax.mul_pos(&ay).map(|rhs| check_agree(&lhs, &rhs)), tag);

        let xy = &x * &y;
        let rhs = pow_rat(&a, &xy, prec);
        nested.record_result(pow_interval_base(&ax, &y, prec).map(|lhs| check_agree(&lhs, &rhs)), tag);

        if x != y && !a.get().is_one() {
            let (lo, hi) = if x < y { (&x, &y) } else { (&y, &x) };
            let increasing = a.get() > &Rational::one();
            let outcome = refine_lt(
                |p| {
                    let (u, v) = (pow_rat(&a, lo, p), pow_rat(&a, hi, p));
                    Ok(if increasing { (u, v) } else { (v, u) })
                },
                prec,
            );
            monotone.record_result(outcome, tag);
        }

        let one = pow_rat(&a, &Rational::one(), prec);
        unit.record(check_agree(&one, &Interval::point(a.get().clone())), tag);
        let z = pow_rat(&a, &Rational::zero(), prec);
        zero.record(if z == Interval::one() { Verdict::Verified } else { Verdict::Falsified }, tag);
        positive.record(
            if ax.lo().is_positive() && ay.lo().is_positive() { Verdict::Verified } else { Verdict::Falsified },
            tag,
        );

        let bx = pow_rat(&b, &x, prec);
        let ab = PosRational::new(a.get() * b.get()).expect("positive");
        let abx = pow_rat(&ab, &x, prec);
        product.record_result(ax.mul_pos(&bx).map(|lhs| check_agree(&lhs, &abx)), tag);
    }
    vec![sum, nested, monotone, unit, zero, positive, product]
}

/// `(a^h - 1)/h <= (a^k - 1)/k` for `h < k`, cycling through the regimes
/// `0 < h < k`, `h < k < 0` and `h < 0 < k`.
pub fn quotient_monotonicity(trials: u32, seed: u64, prec: &Precision) -> CheckResult {
    let mut g = Lcg::new(seed.wrapping_add(2));
    let mut result = CheckResult::new("difference quotient nondecreasing in h");
    for i in 0..trials {
        let a = base(&mut g);
        let (mut h, mut k) = match i % 3 {
            0 => (nonzero_exponent(&mut g, 1), nonzero_exponent(&mut g, 1)),
            1 => (nonzero_exponent(&mut g, -1), nonzero_exponent(&mut g, -1)),
            _ => (nonzero_exponent(&mut g, -1), nonzero_exponent(&mut g, 1)),
        };
        if h == k {
            k = &k + &Rational::new(1, 8).expect("nonzero");
            if k.is_zero() {
                k = Rational::new(1, 16).expect("nonzero");
            }
        }
        if h > k {
            std::mem::swap(&mut h, &mut k);
        }
        result.record_result(check_quotient_monotone(&a, &h, &k, prec), || format!("a = {a}, h = {h}, k = {k}"));
    }
    result
}

/// `(a^-h - 1)/(-h) <= (a^h - 1)/h` for `h > 0`.
pub fn quotient_symmetry(trials: u32, seed: u64, prec: &Precision) -> CheckResult {
    let mut g = Lcg::new(seed.wrapping_add(3));
    let mut result = CheckResult::new("backward quotient <= forward quotient");
    for _ in 0..trials {
        let a = base(&mut g);
        let h = nonzero_exponent(&mut g, 1);
        let outcome = diff_quotient(&a, &-&h, prec)
            .and_then(|back| diff_quotient(&a, &h, prec).map(|fwd| check_le(&back.quotient, &fwd.quotient)));
        result.record_result(outcome, || format!("a = {a}, h = {h}"));
    }
    result
}

pub fn midpoint_convexity(trials: u32, seed: u64, prec: &Precision) -> CheckResult {
    let mut g = Lcg::new(seed.wrapping_add(4));
    let mut result = CheckResult::new("a^x midpoint convex");
    for _ in 0..trials {
        let a = base(&mut g);
        let x1 = exponent(&mut g);
        let x2 = exponent(&mut g);
        result.record(check_midpoint_convexity(&a, &x1, &x2, prec), || format!("a = {a}, x1 = {x1}, x2 = {x2}"));
    }
    result
}

/// AM-GM over random nonnegative vectors of length 1 to 8. Roughly one in
/// ten vectors repeats a single value to exercise the equality case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmgmSweep {
    pub result: CheckResult,
    /// Vectors with at least two distinct entries.
    pub unequal: u64,
    /// Unequal vectors whose strict inequality was certified.
    pub strict_certified: u64,
    /// Vectors where `geometric.lo <= arithmetic` held.
    pub lower_bound_held: u64,
}

pub fn amgm_sweep(trials: u32, seed: u64, prec: &Precision) -> AmgmSweep {
    let mut g = Lcg::new(seed.wrapping_add(5));
    let mut result = CheckResult::new("geometric mean <= arithmetic mean");
    let (mut unequal, mut strict_certified, mut lower_bound_held) = (0, 0, 0);
    for _ in 0..trials {
        let n = g.range(1, 8) as usize;
        let values: Vec<Rational> = if g.below(10) == 0 {
            vec![g.rational(0, 30, 4); n]
        } else {
            (0..n).map(|_| g.rational(0, 30, 4)).collect()
        };
        let distinct = values.windows(2).any(|w| w[0] != w[1]);
        let describe = || format!("values = {values:?}");
        match amgm_check(&values, prec) {
            Ok((pair, verdict)) => {
                if pair.geometric.lo() <= &pair.arithmetic {
                    lower_bound_held += 1;
                }
                if distinct {
                    unequal += 1;
                    if pair.geometric.hi() < &pair.arithmetic {
                        strict_certified += 1;
                    }
                }
                result.record(verdict, describe);
            }
            Err(e) => result.record(Verdict::Falsified, || format!("{}: error {e}", describe())),
        }
    }
    AmgmSweep { result, unequal, strict_certified, lower_bound_held }
}

/// `(a^h - 1)/h < (b^h - 1)/h` for `a < b`.
pub fn quotient_in_base(trials: u32, seed: u64, prec: &Precision) -> CheckResult {
    let mut g = Lcg::new(seed.wrapping_add(6));
    let mut result = CheckResult::new("difference quotient increasing in the base");
    for _ in 0..trials {
        let mut a = base(&mut g);
        let mut b = base(&mut g);
        if a == b {
            continue;
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let h = g.rational(-12, 12, 4);
        if h.is_zero() {
            continue;
        }
        let outcome = refine_lt(|p| Ok((diff_quotient(&a, &h, p)?.quotient, diff_quotient(&b, &h, p)?.quotient)), prec);
        result.record_result(outcome, || format!("a = {a}, b = {b}, h = {h}"));
    }
    result
}

/// `ln(ab)` against `ln a + ln b` through the integral route.
pub fn integral_additivity(trials: u32, seed: u64, prec: &Precision) -> CheckResult {
    let mut g = Lcg::new(seed.wrapping_add(7));
    let mut result = CheckResult::new("integral of 1/t additive");
    for _ in 0..trials {
        let a = PosRational::new(g.positive(24, 6)).expect("positive");
        let b = PosRational::new(g.positive(24, 6)).expect("positive");
        let ab = PosRational::new(a.get() * b.get()).expect("positive");
        let outcome = (|| {
            let lhs = ln_integral(&ab, prec)?;
            let rhs = &ln_integral(&a, prec)? + &ln_integral(&b, prec)?;
            Ok(check_agree(&lhs, &rhs))
        })();
        result.record_result(outcome, || format!("a = {a}, b = {b}"));
    }
    result
}

fn fixed(values: &[&str]) -> Vec<PosRational> {
    values.iter().map(|v| v.parse().expect("valid literal")).collect()
}

/// `ln x` from the quotient bracket, the integral and the logarithm to base
/// `e`, pairwise.
pub fn ln_routes(prec: &Precision) -> CheckResult {
    let mut result = CheckResult::new("ln agrees across three routes");
    let e = compute_e(&prec.tightened(4));
    for x in fixed(&["1/2", "2", "3", "10"]) {
        let outcome = (|| {
            let e = e.clone()?;
            let quotient = ln_enclosure(&x, prec)?.bracket;
            let integral = ln_integral(&x, prec)?;
            let log_e = log_enclosure(&e.bracket, &x, prec)?;
            Ok(check_agree(&quotient, &integral)
                .and(check_agree(&quotient, &log_e))
                .and(check_agree(&integral, &log_e)))
        })();
        result.record_result(outcome, || format!("x = {x}"));
    }
    result
}

/// `e^x` from powers of the `e` bracket against the series, and the
/// compound-interest values below both.
pub fn exp_routes(prec: &Precision) -> CheckResult {
    let mut result = CheckResult::new("exp agrees across three routes");
    for x in ["-2", "-1", "-1/2", "1/3", "1", "2", "5/2"] {
        let x: Rational = x.parse().expect("valid literal");
        let outcome = (|| {
            let by_pow = exp_pow(&x, prec)?;
            let by_series = exp_series(&x, prec);
            let mut v = check_agree(&by_pow, &by_series);
            // (1 + x/n)^n <= e^x whenever the base is positive.
            for n in [10u64, 100, 1000] {
                let c = compound_value(&x, n)?;
                v = v.and(match check_le(&Interval::point(c), &by_series) {
                    Verdict::Falsified => Verdict::Falsified,
                    _ => Verdict::Verified,
                });
            }
            Ok(v)
        })();
        result.record_result(outcome, || format!("x = {x}"));
    }
    result
}

/// Secant brackets around `x0` contain `(ln a)·a^x0` and shrink with `h`.
pub fn derivative_brackets(prec: &Precision) -> CheckResult {
    let mut result = CheckResult::new("secant brackets enclose the derivative");
    for a in fixed(&["1/2", "2", "5"]) {
        for x0 in ["-1", "0", "1"] {
            let x0: Rational = x0.parse().expect("valid literal");
            let outcome = (|| {
                let target = ln_enclosure(&a, prec)?.bracket.mul(&pow_rat(&a, &x0, prec));
                let mut prev: Option<Interval> = None;
                let mut v = Verdict::Verified;
                for k in [1i64, 4, 8, 12] {
                    let b = slope_bracket(&a, &x0, &Rational::pow2(-k), prec)?;
                    v = v.and(b.verdict()).and(check_agree(&b.bracket(), &target));
                    if let Some(p) = &prev {
                        if !p.intersects(&b.bracket()) {
                            v = Verdict::Falsified;
                        }
                    }
                    prev = Some(b.bracket());
                }
                Ok(v)
            })();
            result.record_result(outcome, || format!("a = {a}, x0 = {x0}"));
        }
    }
    for x0 in ["-1", "0", "1"] {
        let x0: Rational = x0.parse().expect("valid literal");
        let outcome = exp_derivative_bracket(&x0, 10, prec).map(|b| {
            if b.is_consistent() && b.bracket().intersects(&b.value) {
                Verdict::Verified
            } else {
                Verdict::Falsified
            }
        });
        result.record_result(outcome, || format!("e^x at x0 = {x0}"));
    }
    result
}

/// Forward quotients of `log_b` between `1/((x+δ) ln b)` and `1/(x ln b)`.
pub fn log_derivative(prec: &Precision) -> CheckResult {
    let mut result = CheckResult::new("log derivative bracket");
    let coarse = prec.min(&Precision::from_bits(20));
    let cases = [("2", "1", "1/4"), ("2", "3", "1/2"), ("10", "7/2", "1"), ("3", "1/2", "1/8")];
    for (b, x, d) in cases {
        let outcome = (|| {
            let base: PosRational = b.parse()?;
            let base_iv = Interval::point(base.get().clone());
            let ln_b = ln_enclosure(&base, &coarse)?.bracket;
            check_log_derivative(&base_iv, &ln_b, &x.parse()?, &d.parse()?, &coarse)
        })();
        result.record_result(outcome, || format!("b = {b}, x = {x}, delta = {d}"));
    }
    let outcome = (|| {
        let e = compute_e(&coarse)?;
        let ln_e = Interval::new(e.ln_at_lo.lo().clone(), e.ln_at_hi.hi().clone())?;
        check_log_derivative(&e.bracket, &ln_e, &"2".parse()?, &"1/2".parse()?, &coarse)
    })();
    result.record_result(outcome, || "b = e, x = 2, delta = 1/2".into());
    result
}

/// Every sweep in declaration order.
pub fn run_all(prec: &Precision, trials: u32, seed: u64) -> Vec<CheckResult> {
    run_all_observed(prec, trials, seed, |_, _| {})
}

/// [`run_all`], reporting each sweep's name and elapsed time as it finishes.
pub fn run_all_observed(
    prec: &Precision,
    trials: u32,
    seed: u64,
    mut observe: impl FnMut(&str, Duration),
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut step = |name: &str, sweep: &dyn Fn() -> Vec<CheckResult>| {
        let start = Instant::now();
        out.extend(sweep());
        observe(name, start.elapsed());
    };
    step("exponent laws", &|| exponent_laws(trials, seed, prec));
    step("quotient monotonicity", &|| vec![quotient_monotonicity(trials, seed, prec)]);
    step("quotient symmetry", &|| vec![quotient_symmetry(trials, seed, prec)]);
    step("midpoint convexity", &|| vec![midpoint_convexity(trials, seed, prec)]);
    step("AM-GM", &|| vec![amgm_sweep(trials, seed, prec).result]);
    step("quotient in base", &|| vec![quotient_in_base(trials, seed, prec)]);
    step("integral additivity", &|| vec![integral_additivity(trials.min(50), seed, prec)]);
    step("ln routes", &|| vec![ln_routes(prec)]);
    step("exp routes", &|| vec![exp_routes(prec)]);
    step("derivative brackets", &|| vec![derivative_brackets(prec)]);
    step("log derivative", &|| vec![log_derivative(prec)]);
    out
}
