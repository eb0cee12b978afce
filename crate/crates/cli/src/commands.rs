use std::fs;
use std::path::Path;

use num_traits::Zero;
use ratexp::crosscheck::run_all_observed;
use ratexp::euler::{compound_value, compute_e, exp_pow, exp_series};
use ratexp::exact::{digits_for, format_fixed};
use ratexp::figures::{figure_series, FigureBase};
use ratexp::logarithm::{ln_enclosure, log_enclosure};
use ratexp::quadrature::ln_integral;
use ratexp::verdict::check_agree;
use ratexp::{pow_rat, Interval, PosRational, Precision, Rational, Verdict};

use crate::args::{EvalKind, Format};
use crate::error::CliError;
use crate::figure_io::{to_csv, to_json};
use crate::report::RunReport;

/// Precision and printing settings resolved from `--prec` and `--digits`.
#[derive(Debug, Clone)]
pub struct Settings {
    pub prec: Precision,
    pub digits: u32,
    /// Set by `--digits`: also establish that many certified digits.
    pub certify: bool,
}

impl Settings {
    pub fn resolve(prec: Option<&str>, digits: Option<u32>) -> Result<Self, CliError> {
        let parsed = match prec {
            Some(p) => Some(Precision::new(p.parse::<Rational>()?)?),
            None => None,
        };
        Ok(match (parsed, digits) {
            (Some(p), Some(d)) => Settings { prec: p, digits: d, certify: true },
            (Some(p), None) => {
                let digits = digits_for(p.eps()) + 1;
                Settings { prec: p, digits, certify: false }
            }
            (None, Some(d)) => Settings { prec: Precision::from_digits(d), digits: d, certify: true },
            (None, None) => Settings { prec: Precision::from_digits(6), digits: 7, certify: false },
        })
    }
}

/// `value` truncated toward zero to `digits` places, for each endpoint.
fn truncated(value: &Rational, digits: u32) -> String {
    let scale = num_traits::Pow::pow(num_bigint::BigInt::from(10), digits);
    let scaled = if value.is_negative() { value.ceil_scaled(&scale) } else { value.floor_scaled(&scale) };
    let s = format_fixed(&scaled, digits);
    if scaled.is_zero() && value.is_negative() {
        format!("-{s}")
    } else {
        s
    }
}

/// Tightens the precision until both endpoints truncate to the same
/// `digits`-place string, which is then a certified truncation of the
/// enclosed value.
pub fn certify_digits(
    digits: u32,
    start: &Precision,
    eval: impl Fn(&Precision) -> ratexp::Result<Interval>,
) -> ratexp::Result<(Interval, Option<String>)> {
    let mut prec = start.min(&Precision::from_digits(digits + 2));
    let mut last = None;
    for _ in 0..4 {
        let iv = eval(&prec)?;
        let lo = truncated(iv.lo(), digits);
        if lo == truncated(iv.hi(), digits) {
            return Ok((iv, Some(lo)));
        }
        last = Some(iv);
        prec = prec.tightened(10);
    }
    Ok((last.expect("loop ran"), None))
}

fn pos(s: &str) -> Result<PosRational, CliError> {
    Ok(s.parse::<PosRational>()?)
}

fn rat(s: &str) -> Result<Rational, CliError> {
    Ok(s.parse::<Rational>()?)
}

/// Evaluates at the requested precision, or certifies digits when asked.
fn evaluate(
    report: &mut RunReport,
    settings: &Settings,
    label: &str,
    eval: impl Fn(&Precision) -> ratexp::Result<Interval>,
) -> Result<Interval, CliError> {
    if settings.certify {
        let (iv, digits) = report.timed(label, || certify_digits(settings.digits, &settings.prec, &eval))?;
        report.enclosure(label, &iv, settings.digits + 2);
        match digits {
            Some(d) => report.line(format!("{label} certified digits: {d}")),
            None => report.line(format!("{label} certified digits: not established")),
        }
        Ok(iv)
    } else {
        let iv = report.timed(label, || eval(&settings.prec))?;
        report.enclosure(label, &iv, settings.digits);
        Ok(iv)
    }
}

/// Width budget for `e` when it feeds `log_e x`.
fn e_precision_for_log(prec: &Precision, x: &Rational) -> Precision {
    let spread = Rational::from(8 * (1 + x.log2_estimate().abs()));
    prec.scaled(&spread.recip().expect("nonzero"))
}

pub fn eval(kind: &EvalKind, settings: &Settings) -> Result<RunReport, CliError> {
    let mut report;
    match kind {
        EvalKind::Pow { a, q } => {
            report = RunReport::new(&format!("eval pow {a} {q}"));
            let (a, q) = (pos(a)?, rat(q)?);
            evaluate(&mut report, settings, "a^q", |p| Ok(pow_rat(&a, &q, p)))?;
        }
        EvalKind::Ln { x } => {
            report = RunReport::new(&format!("eval ln {x}"));
            let x = pos(x)?;
            evaluate(&mut report, settings, "ln", |p| Ok(ln_enclosure(&x, p)?.bracket))?;
        }
        EvalKind::Log { base, x } => {
            report = RunReport::new(&format!("eval log {base} {x}"));
            let base: FigureBase = base.parse()?;
            let x = pos(x)?;
            evaluate(&mut report, settings, "log", |p| {
                let b = match &base {
                    FigureBase::E => compute_e(&e_precision_for_log(p, x.get()))?.bracket,
                    FigureBase::Rational(b) => Interval::point(b.get().clone()),
                };
                log_enclosure(&b, &x, p)
            })?;
        }
        EvalKind::Exp { x } => {
            report = RunReport::new(&format!("eval exp {x}"));
            let x = rat(x)?;
            let series = evaluate(&mut report, settings, "series", |p| Ok(exp_series(&x, p)))?;
            let power = evaluate(&mut report, settings, "power of e", |p| exp_pow(&x, p))?;
            report.verdict("routes agree", check_agree(&series, &power));
        }
        EvalKind::IntegralLn { x } => {
            report = RunReport::new(&format!("eval integral-ln {x}"));
            let x = pos(x)?;
            evaluate(&mut report, settings, "integral", |p| ln_integral(&x, p))?;
        }
        EvalKind::Compound { x, n } => {
            report = RunReport::new(&format!("eval compound {x} {n}"));
            let x = rat(x)?;
            let value = report.timed("compound", || compound_value(&x, *n))?;
            if value.size_bits() <= 400 {
                report.line(format!("exact: {value}"));
            } else {
                report.line(format!(
                    "exact: rational with {}-bit numerator and {}-bit denominator",
                    value.numer().bits(),
                    value.denom().bits()
                ));
            }
            let (lo, hi) = ratexp::to_decimal(&Interval::point(value), settings.digits);
            report.line(format!("decimal: [{lo}, {hi}]"));
        }
    }
    Ok(report)
}

pub fn e(digits: u32) -> Result<RunReport, CliError> {
    if digits == 0 {
        return Err(CliError::Usage("e needs --digits of at least 1".into()));
    }
    let mut report = RunReport::new(&format!("e --digits {digits}"));
    let start = Precision::from_digits(digits + 2);
    let (bisected, by_bisection) =
        report.timed("bisection", || certify_digits(digits, &start, |p| Ok(compute_e(p)?.bracket)))?;
    let (summed, by_series) =
        report.timed("series", || certify_digits(digits, &start, |p| Ok(exp_series(&Rational::one(), p))))?;
    let digits_line = match (&by_bisection, &by_series) {
        (Some(d), _) | (None, Some(d)) => format!("e = {d} (certified to {digits} digits)"),
        (None, None) => format!("e: {digits} digits not established"),
    };
    report.line(digits_line);
    report.enclosure("bisection", &bisected, digits + 2);
    report.enclosure("series", &summed, digits + 2);
    report.verdict("routes agree", check_agree(&bisected, &summed));
    let two_three = Interval::new(Rational::from(2), Rational::from(3))?;
    let inside =
        two_three.contains_interval(&bisected) && bisected.lo() > two_three.lo() && bisected.hi() < two_three.hi();
    report.verdict("2 < e < 3", if inside { Verdict::Verified } else { Verdict::Falsified });
    let faster = if report.timings[0].1 <= report.timings[1].1 { "bisection" } else { "series" };
    report.line(format!("faster route: {faster}"));
    Ok(report)
}

fn parse_range(range: &str) -> Result<(Rational, Rational), CliError> {
    let (lo, hi) =
        range.split_once(',').ok_or_else(|| CliError::Usage(format!("range must be LO,HI, got {range:?}")))?;
    let (lo, hi) = (rat(lo.trim())?, rat(hi.trim())?);
    if lo > hi {
        return Err(CliError::Usage(format!("empty range {range:?}")));
    }
    Ok((lo, hi))
}

pub fn figures(
    bases: &[String],
    range: &str,
    samples: u32,
    format: Format,
    out: Option<&Path>,
    settings: &Settings,
) -> Result<RunReport, CliError> {
    if bases.is_empty() {
        return Err(CliError::Usage("no bases given".into()));
    }
    let (lo, hi) = parse_range(range)?;
    let bases = bases.iter().map(|b| b.parse::<FigureBase>()).collect::<ratexp::Result<Vec<_>>>()?;
    let mut report = RunReport::new(&format!(
        "figures --bases {} --range {range} --samples {samples}",
        bases.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    ));
    let mut series = Vec::new();
    for b in &bases {
        let s = report.timed(&format!("base {b}"), || figure_series(b, &lo, &hi, samples, &settings.prec))?;
        series.push(s);
    }
    let body = match format {
        Format::Json => to_json(&series),
        Format::Csv => to_csv(&series)?,
    };
    match out {
        Some(path) => {
            fs::write(path, &body).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            for s in &series {
                let (slo, shi) = ratexp::to_decimal(&s.tangent.slope, settings.digits);
                report.line(format!(
                    "base {}: {} lattice points, {} samples, tangent slope [{slo}, {shi}]",
                    s.base,
                    s.lattice.len(),
                    s.curve.len()
                ));
            }
            report.line(format!("wrote {}", path.display()));
        }
        None => {
            report.text.clear();
            report.text.push_str(&body);
            if !body.ends_with('\n') {
                report.text.push('\n');
            }
        }
    }
    Ok(report)
}

pub fn crosscheck(trials: u32, seed: u64, settings: &Settings) -> Result<RunReport, CliError> {
    if trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    let mut report =
        RunReport::new(&format!("crosscheck --prec {} --trials {trials} --seed {seed}", settings.prec.eps()));
    let mut timings = Vec::new();
    let results = run_all_observed(&settings.prec, trials, seed, |name, d| timings.push((name.to_string(), d)));
    report.timings.extend(timings);
    let (mut verified, mut inconclusive, mut falsified) = (0, 0, 0);
    for r in &results {
        report.verdicts.push(r.verdict());
        report.line(format!(
            "{:<46} {:<14} verified {:>5}  inconclusive {:>5}  falsified {:>3}",
            r.name,
            format!("[{}]", r.verdict()),
            r.tally.verified,
            r.tally.inconclusive,
            r.tally.falsified
        ));
        for f in &r.findings {
            report.line(format!("  falsified: {f}"));
        }
        verified += r.tally.verified;
        inconclusive += r.tally.inconclusive;
        falsified += r.tally.falsified;
    }
    report.line(format!("total: verified {verified}, inconclusive {inconclusive}, falsified {falsified}"));
    if inconclusive > 0 {
        report.line(format!("warnings: {inconclusive} inconclusive"));
    }
    Ok(report)
}
