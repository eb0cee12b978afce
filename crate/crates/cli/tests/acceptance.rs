//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every criterion reports even when an earlier one fails; the
//! process exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use ratexp::crosscheck::{amgm_sweep, exponent_laws, quotient_monotonicity};
use ratexp::euler::{compound_value, compute_e, exp_series, initial_certificate};
use ratexp::figures::FigureBase;
use ratexp::logarithm::{ln_enclosure, log_enclosure, slope_bracket};
use ratexp::quadrature::ln_integral;
use ratexp::{pow_rat, Interval, PosRational, Precision, Rational};
use ratexp_cli::figure_io::{from_json, to_json};
use ratexp_cli::run_args;

const SEED: u64 = 20240601;

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn pos(s: &str) -> PosRational {
    s.parse().unwrap()
}

fn eps(s: &str) -> Precision {
    Precision::new(r(s)).unwrap()
}

/// e from Σ_{k<=n} 1/k! plus the tail bound 2/(n+1)!, written out
/// independently of the library's series routine.
fn e_oracle(n: u32) -> Interval {
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 1..=n {
        term = term / Rational::from(k as i64);
        sum += &term;
    }
    let tail = Rational::from(2) * term / Rational::from(n as i64 + 1);
    Interval::new(sum.clone(), sum + tail).unwrap()
}

/// ln 2 = Σ 1/(k·2^k), tail after n terms at most 1/((n+1)·2^n).
fn ln2_oracle(n: u32) -> Interval {
    let mut sum = Rational::zero();
    for k in 1..=n {
        sum += &(Rational::one() / (Rational::from(k as i64) * Rational::pow2(k as i64)));
    }
    let tail = Rational::one() / (Rational::from(n as i64 + 1) * Rational::pow2(n as i64));
    Interval::new(sum.clone(), sum + tail).unwrap()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Outcome {
    let out = run_args(["ratexp", "e", "--digits", "12"]);
    ensure(out.code == 0, format!("exit code {}", out.code))?;
    ensure(
        out.stdout.contains("e = 2.718281828459 (certified to 12 digits)"),
        format!("unexpected output:\n{}", out.stdout),
    )?;
    let p = eps("1e-12");
    let bisected = compute_e(&p).map_err(|e| e.to_string())?.bracket;
    let summed = exp_series(&Rational::one(), &p);
    let open = |x: &Interval| x.lo() > &r("2") && x.hi() < &r("3");
    ensure(bisected.intersects(&summed), format!("{bisected} and {summed} disjoint"))?;
    ensure(open(&bisected) && open(&summed), "not inside (2, 3)")?;
    ensure(bisected.intersects(&e_oracle(20)), "bisection misses the series oracle")?;
    Ok(format!("bisection {bisected}"))
}

fn criterion_2() -> Outcome {
    let c = initial_certificate(&eps("1e-4")).map_err(|e| e.to_string())?;
    ensure(c.ln2_upper.hi() < &Rational::one(), format!("2(√2 - 1) enclosure {}", c.ln2_upper))?;
    ensure(c.ln3_lower.lo() > &Rational::one(), format!("6(1 - 3^(-1/6)) enclosure {}", c.ln3_lower))?;
    Ok(format!("2(√2 - 1) ⊂ {}, 6(1 - 3^(-1/6)) ⊂ {}", c.ln2_upper, c.ln3_lower))
}

fn criterion_3() -> Outcome {
    let p = eps("1e-8");
    let two = pos("2");
    let quotient = ln_enclosure(&two, &p).map_err(|e| e.to_string())?.bracket;
    let integral = ln_integral(&two, &p).map_err(|e| e.to_string())?;
    let e = compute_e(&p.tightened(4)).map_err(|e| e.to_string())?.bracket;
    let log_e = log_enclosure(&e, &two, &p).map_err(|e| e.to_string())?;
    let routes = [("quotient", &quotient), ("integral", &integral), ("log_e", &log_e)];
    for (name, x) in routes {
        ensure(x.width() <= *p.eps(), format!("{name} width {}", x.width()))?;
        ensure(x.intersects(&ln2_oracle(40)), format!("{name} {x} misses the series oracle"))?;
        ensure((x.midpoint() - r("0.69314718")).abs() < r("1e-8"), format!("{name} midpoint far from 0.69314718"))?;
    }
    for (i, (a, x)) in routes.iter().enumerate() {
        for (b, y) in &routes[i + 1..] {
            ensure(x.intersects(y), format!("{a} and {b} disjoint"))?;
        }
    }
    Ok("pairwise intersecting, widths <= 1e-8".into())
}

fn criterion_4() -> Outcome {
    let res = quotient_monotonicity(1000, SEED, &eps("1e-6"));
    ensure(res.tally.total() == 1000, format!("{} trials ran", res.tally.total()))?;
    ensure(res.tally.falsified == 0, format!("falsified: {:?}", res.findings))?;
    Ok(format!("verified {}, inconclusive {}, falsified 0", res.tally.verified, res.tally.inconclusive))
}

fn criterion_5() -> Outcome {
    let sweep = amgm_sweep(1000, SEED, &eps("1e-6"));
    ensure(sweep.lower_bound_held == 1000, format!("lower bound held {} / 1000", sweep.lower_bound_held))?;
    ensure(sweep.result.tally.falsified == 0, format!("falsified: {:?}", sweep.result.findings))?;
    let ratio = sweep.strict_certified as f64 / sweep.unequal as f64;
    ensure(ratio >= 0.95, format!("strict certified {} / {}", sweep.strict_certified, sweep.unequal))?;
    Ok(format!("strict certified {} / {} unequal", sweep.strict_certified, sweep.unequal))
}

fn criterion_6() -> Outcome {
    let results = exponent_laws(500, SEED, &eps("1e-6"));
    ensure(results.len() == 7, "seven parts expected")?;
    for res in &results {
        ensure(res.tally.falsified == 0, format!("{}: {:?}", res.name, res.findings))?;
        ensure(res.tally.verified > 0, format!("{}: nothing verified", res.name))?;
    }
    let verified: u64 = results.iter().map(|r| r.tally.verified).sum();
    Ok(format!("{verified} verified across 7 parts"))
}

fn criterion_7() -> Outcome {
    let p = eps("1e-12");
    let mut last_width = Rational::zero();
    for a in ["1/2", "2", "5"] {
        let a = pos(a);
        for x0 in ["-1", "0", "1"] {
            let x0 = r(x0);
            let ln_a = ln_enclosure(&a, &p).map_err(|e| e.to_string())?.bracket;
            let target = ln_a.mul(&pow_rat(&a, &x0, &p));
            let mut prev: Option<Interval> = None;
            for k in 1..=20i64 {
                let b = slope_bracket(&a, &x0, &Rational::pow2(-k), &p).map_err(|e| e.to_string())?.bracket();
                ensure(b.contains_interval(&target), format!("a = {a}, x0 = {x0}, k = {k}: {b} misses {target}"))?;
                if let Some(prev) = &prev {
                    ensure(prev.contains_interval(&b), format!("a = {a}, x0 = {x0}, k = {k}: not nested"))?;
                }
                prev = Some(b);
            }
            let w = prev.expect("k ran").width();
            ensure(w < r("1e-4"), format!("a = {a}, x0 = {x0}: k = 20 width {w}"))?;
            last_width = last_width.max(w);
        }
    }
    Ok(format!("largest k = 20 width {}", ratexp::to_decimal(&Interval::point(last_width), 8).1))
}

fn criterion_8() -> Outcome {
    let e = compute_e(&eps("1e-12")).map_err(|e| e.to_string())?.bracket;
    let mut errors = Vec::new();
    for k in 1..=6u32 {
        let n = 10u64.pow(k);
        let c = compound_value(&Rational::one(), n).map_err(|e| e.to_string())?;
        let c = Interval::point(c).round_outward(80);
        errors.push((n, &e - &c));
    }
    let (_, last) = errors.last().expect("six values");
    let mid_gap = last.midpoint().abs();
    ensure(last.hi() < &r("2e-6"), format!("error at 10^6 is {last}"))?;
    ensure(mid_gap < r("2e-6"), "midpoint gap too large")?;
    for w in errors.windows(2) {
        let ((n0, e0), (n1, e1)) = (&w[0], &w[1]);
        ensure(e1.hi() < e0.lo(), format!("error not strictly decreasing from n = {n0} to n = {n1}"))?;
    }
    let (lo, hi) = ratexp::to_decimal(last, 9);
    Ok(format!("e - (1 + 1/10^6)^(10^6) ∈ [{lo}, {hi}]"))
}

fn criterion_9() -> Outcome {
    let path = std::env::temp_dir().join(format!("ratexp-acceptance-{}.json", std::process::id()));
    let out = run_args(["ratexp", "figures", "--out", path.to_str().unwrap()]);
    ensure(out.code == 0, format!("exit code {}: {}", out.code, out.stderr))?;
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let _ = std::fs::remove_file(&path);
    let series = from_json(&text).map_err(|e| e.to_string())?;
    ensure(to_json(&series) == text, "JSON does not round-trip")?;
    let tables = [
        ("1/2", ["8", "4", "2", "1", "1/2", "1/4", "1/8"]),
        ("2", ["1/8", "1/4", "1/2", "1", "2", "4", "8"]),
        ("5", ["1/125", "1/25", "1/5", "1", "5", "25", "125"]),
    ];
    for (base, table) in tables {
        let s = series.iter().find(|s| s.base.to_string() == base).ok_or(format!("no series for base {base}"))?;
        let want: Vec<(i64, Interval)> =
            table.iter().enumerate().map(|(i, v)| (i as i64 - 3, Interval::point(r(v)))).collect();
        ensure(s.lattice == want, format!("base {base} lattice differs"))?;
    }
    let e = series.iter().find(|s| s.base == FigureBase::E).ok_or("no series for base e")?;
    ensure(e.tangent.slope.contains(&Rational::one()), format!("base-e slope {}", e.tangent.slope))?;
    ensure(e.tangent.intercept == Rational::one(), "intercept is not 1")?;
    Ok(format!("lattices exact, base-e slope {}", e.tangent.slope))
}

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { number: 1, title: "e to 12 digits", budget: Some(Duration::from_secs(10)), run: criterion_1 },
        Criterion {
            number: 2,
            title: "explicit bounds for 2 < e < 3",
            budget: Some(Duration::from_secs(1)),
            run: criterion_2,
        },
        Criterion {
            number: 3,
            title: "ln 2 three-route agreement",
            budget: Some(Duration::from_secs(30)),
            run: criterion_3,
        },
        Criterion {
            number: 4,
            title: "difference-quotient sweep",
            budget: Some(Duration::from_secs(60)),
            run: criterion_4,
        },
        Criterion { number: 5, title: "AM-GM sweep", budget: Some(Duration::from_secs(60)), run: criterion_5 },
        Criterion { number: 6, title: "exponent-law suite", budget: None, run: criterion_6 },
        Criterion { number: 7, title: "derivative brackets", budget: None, run: criterion_7 },
        Criterion { number: 8, title: "compound-interest limit", budget: None, run: criterion_8 },
        Criterion { number: 9, title: "figure reproduction", budget: None, run: criterion_9 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(budget)) if elapsed > budget => {
                Err(format!("took {:.2} s, budget {} s", elapsed.as_secs_f64(), budget.as_secs()))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => {
                println!("criterion {}: PASS  {} ({:.2} s) {detail}", c.number, c.title, elapsed.as_secs_f64())
            }
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {} ({:.2} s) {why}", c.number, c.title, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
