use std::fmt;

/// Outcome of checking an inequality between enclosures.
///
/// `Inconclusive` means the enclosures overlap at the working precision,
/// which is consistent with the statement. Only `Falsified` signals a defect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Verified,
    Inconclusive,
    Falsified,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Falsified => "falsified",
        }
    }

    /// Keeps the worse of two verdicts.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Checks the claim `x <= y` for enclosed values.
pub fn check_le(x: &crate::Interval, y: &crate::Interval) -> Verdict {
    if x.hi() <= y.lo() {
        Verdict::Verified
    } else if x.lo() > y.hi() {
        Verdict::Falsified
    } else {
        Verdict::Inconclusive
    }
}

/// Checks the claim `x < y` for enclosed values.
pub fn check_lt(x: &crate::Interval, y: &crate::Interval) -> Verdict {
    if x.hi() < y.lo() {
        Verdict::Verified
    } else if x.lo() >= y.hi() {
        Verdict::Falsified
    } else {
        Verdict::Inconclusive
    }
}

/// Checks that two enclosures of the same quantity are consistent.
pub fn check_agree(x: &crate::Interval, y: &crate::Interval) -> Verdict {
    if x.intersects(y) {
        Verdict::Verified
    } else {
        Verdict::Falsified
    }
}
