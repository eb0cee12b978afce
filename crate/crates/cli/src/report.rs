use std::fmt::Write as _;
use std::time::{Duration, Instant};

use ratexp::{to_decimal, Interval, Verdict};

/// What a command printed, the verdicts it reached and how long each step
/// took. Timings are kept apart from the text so the text stays
/// reproducible.
#[derive(Debug, Default)]
pub struct RunReport {
    pub text: String,
    pub verdicts: Vec<Verdict>,
    pub timings: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        let mut r = RunReport::default();
        r.line(format!("$ {command}"));
        r
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn enclosure(&mut self, label: &str, iv: &Interval, digits: u32) {
        if iv.is_point() {
            self.line(format!("{label}: {} (exact)", iv.lo()));
        } else {
            let (lo, hi) = to_decimal(iv, digits);
            self.line(format!("{label}: [{lo}, {hi}]"));
            self.line(format!("{label} width: {}", iv.width()));
        }
    }

    pub fn verdict(&mut self, label: &str, v: Verdict) {
        self.verdicts.push(v);
        self.line(format!("{label}: {v}"));
    }

    pub fn timed<T>(&mut self, step: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push((step.to_string(), start.elapsed()));
        out
    }

    pub fn falsified(&self) -> bool {
        self.verdicts.contains(&Verdict::Falsified)
    }

    pub fn exit_code(&self) -> i32 {
        if self.falsified() {
            1
        } else {
            0
        }
    }

    pub fn timing_text(&self) -> String {
        let mut s = String::new();
        for (step, d) in &self.timings {
            let _ = writeln!(s, "time {step}: {:.3} s", d.as_secs_f64());
        }
        s
    }
}
