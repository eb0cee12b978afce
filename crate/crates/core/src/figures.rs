//! Plot data for `y = a^x`: exact lattice points, enclosed curve samples and
//! the tangent line at `(0, 1)` whose slope is `ln a`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::euler::{compute_e, exp_pow};
use crate::exact::{Interval, Precision, Rational};
use crate::logarithm::{ln_enclosure, ln_interval};
use crate::powers::{pow_rat, PosRational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FigureBase {
    Rational(PosRational),
    E,
}

impl fmt::Display for FigureBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FigureBase::Rational(a) => write!(f, "{a}"),
            FigureBase::E => f.write_str("e"),
        }
    }
}

impl FromStr for FigureBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "e" {
            Ok(FigureBase::E)
        } else {
            Ok(FigureBase::Rational(s.parse()?))
        }
    }
}

/// Tangent line `y = slope·x + intercept` at `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tangent {
    /// Encloses `ln a`.
    pub slope: Interval,
    pub intercept: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureSeries {
    pub base: FigureBase,
    /// `(n, a^n)` for every integer `n` in range. Points for rational bases;
    /// enclosures for `e`.
    pub lattice: Vec<(i64, Interval)>,
    pub curve: Vec<(Rational, Interval)>,
    pub tangent: Tangent,
}

pub fn default_bases() -> Vec<FigureBase> {
    ["1/2", "2", "5", "e"].iter().map(|s| s.parse().expect("valid base")).collect()
}

fn power(base: &FigureBase, x: &Rational, prec: &Precision) -> Result<Interval> {
    match base {
        FigureBase::Rational(a) => Ok(pow_rat(a, x, prec)),
        FigureBase::E => exp_pow(x, prec),
    }
}

/// Evenly spaced abscissae covering `[lo, hi]`, endpoints included.
pub fn sample_points(lo: &Rational, hi: &Rational, samples: u32) -> Vec<Rational> {
    if samples <= 1 || lo == hi {
        return vec![lo.clone()];
    }
    let step = (hi - lo) / Rational::from(samples as i64 - 1);
    (0..samples).map(|i| lo + &(&step * &Rational::from(i as i64))).collect()
}

pub fn figure_series(
    base: &FigureBase,
    lo: &Rational,
    hi: &Rational,
    samples: u32,
    prec: &Precision,
) -> Result<FigureSeries> {
    if lo > hi {
        return Err(Error::OutOfOrder(format!("empty range [{lo}, {hi}]")));
    }
    let first = lo.ceil();
    let last = hi.floor();
    let too_wide = || Error::OutOfOrder(format!("range [{lo}, {hi}] too wide for lattice points"));
    let first = i64::try_from(&first).map_err(|_| too_wide())?;
    let last = i64::try_from(&last).map_err(|_| too_wide())?;
    let mut lattice = Vec::new();
    for n in first..=last {
        let point = match base {
            FigureBase::Rational(a) => Interval::point(a.get().pow_i64(n)?),
            FigureBase::E => exp_pow(&Rational::from(n), prec)?,
        };
        lattice.push((n, point));
    }
    let curve = sample_points(lo, hi, samples)
        .into_iter()
        .map(|x| power(base, &x, prec).map(|y| (x, y)))
        .collect::<Result<Vec<_>>>()?;
    let slope = match base {
        FigureBase::Rational(a) => ln_enclosure(a, prec)?.bracket,
        FigureBase::E => ln_interval(&compute_e(prec)?.bracket, prec)?,
    };
    Ok(FigureSeries { base: base.clone(), lattice, curve, tangent: Tangent { slope, intercept: Rational::one() } })
}
