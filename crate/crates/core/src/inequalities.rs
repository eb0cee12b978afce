//! The AM-GM inequality and the monotone difference quotient of `a^x`,
//! evaluated on enclosures.

use crate::error::{Error, Result};
use crate::exact::{nth_root, Interval, Precision, Rational};
use crate::powers::{pow_rat, PosRational};
use crate::verdict::{check_le, Verdict};

/// Geometric and arithmetic means of a list of nonnegative rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanPair {
    pub inputs: Vec<Rational>,
    pub geometric: Interval,
    pub arithmetic: Rational,
}

impl MeanPair {
    pub fn all_equal(&self) -> bool {
        self.inputs.windows(2).all(|w| w[0] == w[1])
    }

    /// Verdict for `geometric <= arithmetic` at the precision this pair was
    /// computed with. Equal inputs are verified when the geometric enclosure
    /// contains the arithmetic mean; otherwise the strict inequality must be
    /// certified.
    pub fn verdict(&self) -> Verdict {
        if self.geometric.lo() > &self.arithmetic {
            Verdict::Falsified
        } else if self.all_equal() {
            if self.geometric.contains(&self.arithmetic) {
                Verdict::Verified
            } else {
                Verdict::Falsified
            }
        } else if self.geometric.hi() < &self.arithmetic {
            Verdict::Verified
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Geometric mean enclosure (one root of the exact product) and exact
/// arithmetic mean.
pub fn amgm(values: &[Rational], prec: &Precision) -> Result<MeanPair> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(neg) = values.iter().find(|v| v.is_negative()) {
        return Err(Error::NegativeInput(neg.to_string()));
    }
    let n = values.len();
    let product: Rational = values.iter().cloned().product();
    let geometric = nth_root(&product, n as u32, prec)?;
    let sum: Rational = values.iter().cloned().sum();
    let arithmetic = sum / Rational::from(n as i64);
    Ok(MeanPair { inputs: values.to_vec(), geometric, arithmetic })
}

/// AM-GM check with one refinement: when the first evaluation cannot
/// separate unequal inputs, the precision is tightened below half the
/// observed gap between the arithmetic mean and the geometric midpoint.
pub fn amgm_check(values: &[Rational], prec: &Precision) -> Result<(MeanPair, Verdict)> {
    let first = amgm(values, prec)?;
    let verdict = first.verdict();
    if verdict != Verdict::Inconclusive {
        return Ok((first, verdict));
    }
    let gap = &first.arithmetic - &first.geometric.midpoint();
    if !gap.is_positive() {
        return Ok((first, verdict));
    }
    let refined = Precision::new(gap / Rational::from(4))?.min(prec);
    let second = amgm(values, &refined)?;
    let verdict = second.verdict();
    Ok((second, verdict))
}

/// Enclosure of `(a^h - 1)/h` for a nonzero step `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBracket {
    pub a: PosRational,
    pub h: Rational,
    pub quotient: Interval,
}

/// `(a^h - 1)/h` with width at most `eps`. The power is computed to
/// `eps·|h|`, so the division leaves width `<= eps`. Exact when `a^h` is
/// rational.
pub fn diff_quotient(a: &PosRational, h: &Rational, prec: &Precision) -> Result<QuotientBracket> {
    if h.is_zero() {
        return Err(Error::ZeroStep);
    }
    let power = pow_rat(a, h, &prec.scaled(&h.abs()));
    let quotient = power.shift(&-Rational::one()).scale(&h.recip().expect("nonzero"));
    Ok(QuotientBracket { a: a.clone(), h: h.clone(), quotient })
}

/// Checks `(a^h - 1)/h <= (a^k - 1)/k` for `h < k`, both nonzero.
pub fn check_quotient_monotone(a: &PosRational, h: &Rational, k: &Rational, prec: &Precision) -> Result<Verdict> {
    if h.is_zero() || k.is_zero() {
        return Err(Error::ZeroStep);
    }
    if h >= k {
        return Err(Error::OutOfOrder(format!("need h < k, got h = {h}, k = {k}")));
    }
    let at_h = diff_quotient(a, h, prec)?;
    let at_k = diff_quotient(a, k, prec)?;
    Ok(check_le(&at_h.quotient, &at_k.quotient))
}

/// Midpoint convexity of `x ↦ a^x`: `a^((x1+x2)/2) <= (a^x1 + a^x2)/2`.
pub fn check_midpoint_convexity(a: &PosRational, x1: &Rational, x2: &Rational, prec: &Precision) -> Verdict {
    let mid = x1.midpoint(x2);
    let at_mid = pow_rat(a, &mid, prec);
    let chord = (&pow_rat(a, x1, prec) + &pow_rat(a, x2, prec)).scale(&Rational::new(1, 2).expect("nonzero"));
    check_le(&at_mid, &chord)
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

    fn rs(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|s| r(s)).collect()
    }

    #[test]
    fn amgm_examples() {
        let m = amgm(&rs(&["1", "1", "1"]), &eps("1e-6")).unwrap();
        assert_eq!(m.geometric, Interval::one());
        assert_eq!(m.arithmetic, Rational::one());
        assert_eq!(m.verdict(), Verdict::Verified);

        let m = amgm(&rs(&["2", "8"]), &eps("1e-6")).unwrap();
        assert!(m.geometric.contains(&r("4")));
        assert_eq!(m.arithmetic, r("5"));
        assert_eq!(m.verdict(), Verdict::Verified);

        let m = amgm(&rs(&["0", "5"]), &eps("1e-6")).unwrap();
        assert_eq!(m.geometric, Interval::zero());
        assert_eq!(m.arithmetic, r("5/2"));
    }

    #[test]
    fn amgm_domain_errors() {
        assert_eq!(amgm(&[], &eps("1/2")), Err(Error::EmptyInput));
        assert!(matches!(amgm(&rs(&["1", "-1"]), &eps("1/2")), Err(Error::NegativeInput(_))));
    }

    #[test]
    fn amgm_refinement_separates_close_values() {
        // sqrt(1 · (1 + 10^-4)) is within 10^-9 of the mean.
        let values = rs(&["1", "10001/10000"]);
        assert_eq!(amgm(&values, &eps("1e-6")).unwrap().verdict(), Verdict::Inconclusive);
        let (_, v) = amgm_check(&values, &eps("1e-6")).unwrap();
        assert_eq!(v, Verdict::Verified);
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(diff_quotient(&pos("4"), &r("1/2"), &eps("1e-6")).unwrap().quotient, Interval::point(r("2")));
        for h in ["1", "-1/3", "5/2"] {
            assert_eq!(diff_quotient(&pos("1"), &r(h), &eps("1e-6")).unwrap().quotient, Interval::zero());
        }
        assert_eq!(diff_quotient(&pos("2"), &r("1"), &eps("1e-6")).unwrap().quotient, Interval::one());
        assert_eq!(diff_quotient(&pos("2"), &Rational::zero(), &eps("1e-6")), Err(Error::ZeroStep));
    }

    #[test]
    fn quotient_width_budget() {
        for h in ["1/1024", "-1/3", "7/2"] {
            let q = diff_quotient(&pos("3"), &r(h), &eps("1e-9")).unwrap();
            assert!(q.quotient.width() <= r("1e-9"), "h = {h}: {}", q.quotient);
        }
    }

    #[test]
    fn monotone_quotient_examples() {
        let p = eps("1e-6");
        assert_eq!(check_quotient_monotone(&pos("2"), &r("-1/2"), &r("1/2"), &p).unwrap(), Verdict::Verified);
        assert_eq!(check_quotient_monotone(&pos("1"), &r("-1"), &r("2"), &p).unwrap(), Verdict::Verified);
        assert_eq!(check_quotient_monotone(&pos("3"), &r("1"), &r("2"), &p).unwrap(), Verdict::Verified);
        assert!(matches!(check_quotient_monotone(&pos("3"), &r("2"), &r("1"), &p), Err(Error::OutOfOrder(_))));
        assert_eq!(check_quotient_monotone(&pos("3"), &r("0"), &r("1"), &p), Err(Error::ZeroStep));
    }

    #[test]
    fn convexity_at_midpoint() {
        assert_eq!(check_midpoint_convexity(&pos("3"), &r("-1"), &r("2"), &eps("1e-6")), Verdict::Verified);
        assert_eq!(check_midpoint_convexity(&pos("1/5"), &r("1/3"), &r("1/2"), &eps("1e-9")), Verdict::Verified);
    }
}
