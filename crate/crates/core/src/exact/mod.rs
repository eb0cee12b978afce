//! Exact rationals, rational intervals, n-th root enclosures and outward
//! decimal rendering.

mod decimal;
mod interval;
mod precision;
mod rational;
mod root;

pub use decimal::{digits_for, format_fixed, to_decimal};
pub use interval::Interval;
pub use precision::Precision;
pub use rational::{RatOp, RatOutcome, Rational};
pub use root::{exact_root, nth_root};
